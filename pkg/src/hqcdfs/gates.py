"""Target gates, end-to-end realizations, and composition tools.

``realize`` runs the full pipeline for one recipe: assemble the Hamiltonian,
exponentiate, restrict to the logical basis, certify the holonomic
character, and compare against the target both phase-aligned on the logical
subspace and entrywise on the ancilla-completed basis (where the ancilla
picks up a physical -1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .holonomy import HolonomyReport, certify, defects_only_report
from .model import CouplingConfig, GateRecipe, assemble_two_body, recipe_hamiltonian
from .operators import (
    SIGMA_X,
    dagger,
    evolve,
    phase_aligned_distance,
    require_unitary,
)
from .serialize import matrix_to_json, round_sig
from .subspace import (
    BasisSet,
    LogicalBlock,
    bit_state,
    dfs_product_basis,
    invariance_defect,
    invariant_check_basis,
    logical_basis,
    restrict,
)

DEFAULT_CHAIN_STEPS = 4096


def target_uxz(phi: float) -> np.ndarray:
    """Bit-flip gate with phase: [[0, e^{-i phi}], [e^{i phi}, 0]]."""
    return np.array(
        [[0, np.exp(-1j * phi)], [np.exp(1j * phi), 0]], dtype=np.complex128
    )


def target_uzx(phi: float) -> np.ndarray:
    """Phase-flip gate with rotation: [[cos, i sin], [-i sin, -cos]]."""
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, 1j * s], [-1j * s, -c]], dtype=np.complex128)


def target_cnot() -> np.ndarray:
    """First logical qubit controls: |10> <-> |11>, identity elsewhere."""
    m = np.eye(4, dtype=np.complex128)
    m[2, 2] = m[3, 3] = 0.0
    m[2, 3] = m[3, 2] = 1.0
    return m


def target_for(recipe: GateRecipe) -> np.ndarray:
    if recipe.kind == "XZ":
        return target_uxz(recipe.phase)
    if recipe.kind == "ZX":
        return target_uzx(recipe.phase)
    return target_cnot()


def ancilla_completed_target(recipe: GateRecipe) -> np.ndarray:
    """The quoted gate matrix on the ancilla-completed basis.

    Single-qubit gates: 3 x 3 with the -1 ancilla entry. CNOT: the 5 x 5
    matrix diag(-1, 1, 1) + trailing swap block.
    """
    logical = target_for(recipe)
    full = np.zeros(
        (logical.shape[0] + 1, logical.shape[1] + 1), dtype=np.complex128
    )
    full[0, 0] = -1.0
    full[1:, 1:] = logical
    return full


@dataclass(frozen=True)
class GateRealization:
    """Everything measured about one realized gate."""

    recipe: GateRecipe
    n_blocks: int
    propagator: np.ndarray
    restricted: np.ndarray
    target: np.ndarray
    distance: float
    holonomy: HolonomyReport
    invariance: float
    dfs_restricted: np.ndarray
    dfs_target: np.ndarray
    dfs_error: float
    spectator: str = "0L"

    def to_json_dict(self) -> dict:
        return {
            "recipe": self.recipe.to_json_dict(),
            "n_blocks": self.n_blocks,
            "spectator": self.spectator,
            "distance": round_sig(self.distance),
            "invariance_defect": round_sig(self.invariance),
            "dfs_error": round_sig(self.dfs_error),
            "restricted": matrix_to_json(self.restricted),
            "target": matrix_to_json(self.target),
            "dfs_restricted": matrix_to_json(self.dfs_restricted),
            "dfs_target": matrix_to_json(self.dfs_target),
            "propagator": matrix_to_json(self.propagator),
            "holonomy": self.holonomy.to_json_dict(),
        }


def _blocks_of(recipe: GateRecipe) -> list[LogicalBlock]:
    return [LogicalBlock(b) for b in recipe.blocks]


def realized_logical(recipe: GateRecipe, n_blocks: int | None = None) -> np.ndarray:
    """Fast path: the propagator restricted to the logical basis only."""
    if n_blocks is None:
        n_blocks = max(recipe.blocks)
    h = recipe_hamiltonian(recipe, n_blocks)
    basis = logical_basis(_blocks_of(recipe), 3 * n_blocks)
    return restrict(evolve(h, recipe.duration), basis)


def realize(
    recipe: GateRecipe,
    n_blocks: int | None = None,
    steps: int = DEFAULT_CHAIN_STEPS,
    spectator: str = "0L",
) -> GateRealization:
    """Recipe -> propagator -> restriction -> certification -> comparison.

    Spectator blocks (present when n_blocks exceeds the recipe's span) sit
    in the ``spectator`` reference state; the logical action must not depend
    on that choice. Detuned recipes are reported, not rejected: the holonomy
    preconditions genuinely fail off the pulse-area condition, so their
    report carries the condition defects without a reconstruction.
    """
    if n_blocks is None:
        n_blocks = max(recipe.blocks)
    n_total = 3 * n_blocks
    blocks = _blocks_of(recipe)
    h = recipe_hamiltonian(recipe, n_blocks)
    propagator = evolve(h, recipe.duration)

    logical = logical_basis(blocks, n_total, spectator)
    restricted = restrict(propagator, logical)
    target = target_for(recipe)
    distance = phase_aligned_distance(restricted, target)

    check_basis = invariant_check_basis(blocks, n_total, spectator)
    dfs_restricted = restrict(propagator, check_basis)
    dfs_target = ancilla_completed_target(recipe)
    dfs_error = float(np.abs(dfs_restricted - dfs_target).max())

    protected = dfs_product_basis(blocks, n_total, spectator)
    invariance = invariance_defect(propagator, protected)

    if recipe.detuned:
        holonomy = defects_only_report(h, logical, recipe.duration, steps)
    else:
        holonomy = certify(h, logical, recipe.duration, steps)

    return GateRealization(
        recipe=recipe,
        n_blocks=n_blocks,
        propagator=propagator,
        restricted=restricted,
        target=target,
        distance=distance,
        holonomy=holonomy,
        invariance=invariance,
        dfs_restricted=dfs_restricted,
        dfs_target=dfs_target,
        dfs_error=dfs_error,
        spectator=spectator,
    )


def rotation_sequence(axis: str, angle: float) -> list[GateRecipe]:
    """Two-pulse sequence composing to a rotation about z or x.

    The list is in application (chronological) order; composing the
    corresponding gate matrices right-to-left yields exp(-i angle/2 Z_L) for
    axis 'z' and exp(-i angle/2 X_L) for axis 'x'.
    """
    if axis == "z":
        return [GateRecipe.xz(-angle / 2.0), GateRecipe.xz(0.0)]
    if axis == "x":
        return [GateRecipe.zx(-angle / 2.0), GateRecipe.zx(0.0)]
    raise ValueError(f"axis must be 'z' or 'x', got {axis!r}")


def compose_targets(recipes: Sequence[GateRecipe]) -> np.ndarray:
    """Product of target matrices, recipes given in application order."""
    out = np.eye(2, dtype=np.complex128)
    for recipe in recipes:
        out = target_for(recipe) @ out
    return out


def compose_realized(
    recipes: Sequence[GateRecipe], n_blocks: int | None = None
) -> np.ndarray:
    """Product of realized logical gates, recipes in application order."""
    out = realized_logical(recipes[0], n_blocks)
    for recipe in recipes[1:]:
        out = realized_logical(recipe, n_blocks) @ out
    return out


def rz_matrix(theta: float) -> np.ndarray:
    return np.array(
        [[np.exp(-1j * theta / 2), 0], [0, np.exp(1j * theta / 2)]],
        dtype=np.complex128,
    )


def rx_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)


def _wrap_angle(x: float) -> float:
    """Wrap to the canonical branch (-pi, pi]."""
    w = math.remainder(x, 2.0 * math.pi)
    return math.pi if w <= -math.pi else w


_AXIS_TOL = 1e-12


def euler_angles(target: np.ndarray) -> tuple[float, float, float, float]:
    """(alpha, beta, gamma, delta) with target = e^{i delta} Rz(a) Rx(b) Rz(g).

    Canonical branch: beta in [0, pi], alpha and gamma in (-pi, pi], and
    gamma = 0 whenever beta is 0 or pi (where only alpha + gamma or
    alpha - gamma is defined).
    """
    u = require_unitary(target)
    if u.shape != (2, 2):
        raise ValueError(f"expected a 2x2 unitary, got {u.shape}")
    v = np.exp(-0.5j * np.angle(np.linalg.det(u))) * u
    beta = 2.0 * math.atan2(abs(v[0, 1]), abs(v[0, 0]))
    if abs(v[0, 1]) <= _AXIS_TOL:
        alpha, beta, gamma = _wrap_angle(-2.0 * np.angle(v[0, 0])), 0.0, 0.0
    elif abs(v[0, 0]) <= _AXIS_TOL:
        alpha = _wrap_angle(-2.0 * (np.angle(v[0, 1]) + math.pi / 2.0))
        beta, gamma = math.pi, 0.0
    else:
        total = -2.0 * np.angle(v[0, 0])
        diff = -2.0 * (np.angle(v[0, 1]) + math.pi / 2.0)
        alpha = _wrap_angle(0.5 * (total + diff))
        gamma = _wrap_angle(0.5 * (total - diff))
    # Wrapping alpha and gamma independently can move the rotation product
    # to the other sheet of the SU(2) double cover; the sign belongs to the
    # discarded global phase, so read delta off the finished product.
    rebuilt = rz_matrix(alpha) @ rx_matrix(beta) @ rz_matrix(gamma)
    delta = float(np.angle(np.trace(dagger(rebuilt) @ u)))
    return alpha, beta, gamma, delta


def euler_compose(target: np.ndarray) -> list[GateRecipe]:
    """Recipes whose composed gates reproduce ``target`` up to global phase.

    Axis-aligned targets collapse to a single two-pulse sequence; the
    general case emits the six-pulse z-x-z chain. The returned list is in
    application order.
    """
    alpha, beta, gamma, _ = euler_angles(target)
    if beta <= _AXIS_TOL:
        return rotation_sequence("z", _wrap_angle(alpha + gamma))
    if abs(alpha) <= _AXIS_TOL and abs(gamma) <= _AXIS_TOL:
        return rotation_sequence("x", beta)
    return (
        rotation_sequence("z", gamma)
        + rotation_sequence("x", beta)
        + rotation_sequence("z", alpha)
    )


@dataclass(frozen=True)
class NoGoReport:
    """Randomized evidence that two physical qubits cannot host a holonomic
    gate under this interaction family: on their protected two-state space,
    transporting without dynamical phase forces a trivial evolution."""

    trials: int
    seed: int
    trivial_count: int
    nontrivial_count: int
    counterexamples: int
    max_dfs_invariance_defect: float
    max_trivial_transport_defect: float
    min_nontrivial_transport_defect: float
    witness_error: float

    def to_json_dict(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "trivial_count": self.trivial_count,
            "nontrivial_count": self.nontrivial_count,
            "counterexamples": self.counterexamples,
            "max_dfs_invariance_defect": round_sig(self.max_dfs_invariance_defect),
            "max_trivial_transport_defect": round_sig(self.max_trivial_transport_defect),
            "min_nontrivial_transport_defect": round_sig(
                self.min_nontrivial_transport_defect
            ),
            "witness_error": round_sig(self.witness_error),
        }


def two_qubit_dfs() -> BasisSet:
    """The protected two-state space of two collectively dephasing qubits."""
    return BasisSet(
        np.column_stack([bit_state("01"), bit_state("10")]), ("01", "10")
    )


NO_GO_TOL = 1e-10


def no_go_certificate(trials: int, seed: int) -> NoGoReport:
    """Check, over random two-qubit couplings, the equivalence

        vanishing transport defect on the protected space
            <=> restricted Hamiltonian is zero
            <=> restricted propagator is the identity at all sampled times,

    and that the protected space stays invariant under the evolution. Counts
    configurations and counterexamples; also evaluates the explicit witness
    with unit XY coupling, whose restricted Hamiltonian is exactly sigma_x.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    rng = np.random.default_rng(seed)
    dfs = two_qubit_dfs()
    eye = np.eye(2)

    trivial = nontrivial = counterexamples = 0
    max_invariance = 0.0
    max_trivial_transport = 0.0
    min_nontrivial_transport = math.inf

    for _ in range(trials):
        if rng.random() < 0.25:
            jx = jy = 0.0
        else:
            jx = 0.0 if rng.random() < 0.2 else rng.uniform(0.1, 2.0) * rng.choice([-1, 1])
            jy = 0.0 if rng.random() < 0.2 else rng.uniform(0.1, 2.0) * rng.choice([-1, 1])
        config = CouplingConfig(2, two_body={(1, 2, "x"): jx, (1, 2, "y"): jy})
        h = assemble_two_body(config)

        restricted_h = restrict(h, dfs)
        h_norm = float(np.abs(restricted_h).max())

        times = rng.uniform(0.25, 3.0, size=4)
        transport = 0.0
        identity_dist = 0.0
        for t in times:
            u = evolve(h, t)
            max_invariance = max(max_invariance, invariance_defect(u, dfs))
            frame = u @ dfs.vectors
            transport = max(transport, float(np.abs(dagger(frame) @ h @ frame).max()))
            identity_dist = max(
                identity_dist, float(np.linalg.norm(restrict(u, dfs) - eye))
            )

        flags = (transport <= NO_GO_TOL, h_norm <= NO_GO_TOL, identity_dist <= NO_GO_TOL)
        if len(set(flags)) != 1:
            counterexamples += 1
        if h_norm <= NO_GO_TOL:
            trivial += 1
            max_trivial_transport = max(max_trivial_transport, transport)
        else:
            nontrivial += 1
            min_nontrivial_transport = min(min_nontrivial_transport, transport)

    witness = restrict(
        assemble_two_body(CouplingConfig(2, two_body={(1, 2, "x"): 1.0})), dfs
    )
    witness_error = float(np.abs(witness - SIGMA_X).max())

    return NoGoReport(
        trials=trials,
        seed=seed,
        trivial_count=trivial,
        nontrivial_count=nontrivial,
        counterexamples=counterexamples,
        max_dfs_invariance_defect=max_invariance,
        max_trivial_transport_defect=max_trivial_transport,
        min_nontrivial_transport_defect=min_nontrivial_transport
        if nontrivial
        else 0.0,
        witness_error=witness_error,
    )
