"""Holonomic quantum gates on decoherence-free encoded qubits.

Simulation and certification toolkit: spin-chain gate Hamiltonians, exact
propagators, subspace diagnostics, frame-free holonomy reconstruction,
collective-dephasing noise ensembles, and a JSON-reporting command line.
"""

from .errors import (
    ContractViolation,
    DimensionCapError,
    PreconditionError,
    SingularChainError,
)
from .gates import (
    GateRealization,
    NoGoReport,
    compose_realized,
    compose_targets,
    euler_angles,
    euler_compose,
    no_go_certificate,
    realize,
    realized_logical,
    rotation_sequence,
    target_cnot,
    target_for,
    target_uxz,
    target_uzx,
)
from .holonomy import (
    HolonomyReport,
    certify,
    cyclicity_defect,
    projector_chain_holonomy,
    transport_defect,
)
from .model import (
    CouplingConfig,
    GateRecipe,
    assemble_four_body,
    assemble_two_body,
    collective_z,
    detune,
    r_op,
    recipe_coupling_config,
    recipe_hamiltonian,
    universal_recipes,
)
from .noise import (
    KickDistribution,
    NoiseEnsemble,
    NoisyGateResult,
    bare_baseline,
    collective_kick,
    noisy_realize,
)
from .operators import (
    evolve,
    pauli_on,
    phase_aligned_distance,
    polar_unitary,
    tensor_product,
)
from .subspace import (
    BasisSet,
    LogicalBlock,
    bit_state,
    dfs_basis,
    dfs_product_basis,
    invariance_defect,
    invariant_check_basis,
    leakage_profile,
    logical_basis,
    restrict,
)

__version__ = "0.1.0"

__all__ = [
    "BasisSet",
    "ContractViolation",
    "CouplingConfig",
    "DimensionCapError",
    "GateRealization",
    "GateRecipe",
    "HolonomyReport",
    "KickDistribution",
    "LogicalBlock",
    "NoGoReport",
    "NoiseEnsemble",
    "NoisyGateResult",
    "PreconditionError",
    "SingularChainError",
    "assemble_four_body",
    "assemble_two_body",
    "bare_baseline",
    "bit_state",
    "certify",
    "collective_kick",
    "collective_z",
    "compose_realized",
    "compose_targets",
    "cyclicity_defect",
    "detune",
    "dfs_basis",
    "dfs_product_basis",
    "euler_angles",
    "euler_compose",
    "evolve",
    "invariance_defect",
    "invariant_check_basis",
    "leakage_profile",
    "logical_basis",
    "no_go_certificate",
    "noisy_realize",
    "pauli_on",
    "phase_aligned_distance",
    "polar_unitary",
    "projector_chain_holonomy",
    "r_op",
    "realize",
    "realized_logical",
    "recipe_coupling_config",
    "recipe_hamiltonian",
    "restrict",
    "rotation_sequence",
    "target_cnot",
    "target_for",
    "target_uxz",
    "target_uzx",
    "tensor_product",
    "transport_defect",
    "universal_recipes",
]
