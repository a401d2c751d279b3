"""Decoherence-free and logical subspaces of the single-excitation encoding.

One logical qubit lives on three physical qubits. The single-excitation
states |100>, |010>, |001> share the collective-dephasing eigenvalue +1 and
span the protected space; the logical basis is |0>_L = |010>, |1>_L = |001>
with |a> = |100> as the ancilla through which gate evolution transits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ContractViolation
from .operators import as_complex_matrix, dagger, evolve

ORTHONORMALITY_TOL = 1e-12

# Bit patterns of the protected-space basis on one block, qubit 1 = MSB.
_BLOCK_PATTERNS = {"a": "100", "0L": "010", "1L": "001"}


@dataclass(frozen=True)
class LogicalBlock:
    """Logical qubit ``index`` on physical qubits (3n-2, 3n-1, 3n)."""

    index: int

    def __post_init__(self):
        if self.index < 1:
            raise IndexError(f"block index must be >= 1, got {self.index}")

    @property
    def physical_qubits(self) -> tuple[int, int, int]:
        return (3 * self.index - 2, 3 * self.index - 1, 3 * self.index)


def bit_state(bits: str) -> np.ndarray:
    """Computational basis vector for a bitstring, qubit 1 = most significant."""
    if not bits or any(c not in "01" for c in bits):
        raise ValueError(f"expected a nonempty bitstring, got {bits!r}")
    vec = np.zeros(2 ** len(bits), dtype=np.complex128)
    vec[int(bits, 2)] = 1.0
    return vec


@dataclass(frozen=True)
class BasisSet:
    """Ordered orthonormal vectors spanning a subspace, with unique labels.

    ``vectors`` holds the basis as columns of a (dim_ambient, size) array.
    """

    vectors: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self):
        v = as_complex_matrix(self.vectors)
        object.__setattr__(self, "vectors", v)
        object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))
        if len(self.labels) != v.shape[1]:
            raise ValueError(
                f"{v.shape[1]} vectors but {len(self.labels)} labels"
            )
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"labels must be unique, got {self.labels}")
        if v.shape[1] > v.shape[0]:
            raise ValueError("more basis vectors than ambient dimensions")
        gram = dagger(v) @ v
        defect = np.linalg.norm(gram - np.eye(v.shape[1]))
        if defect > ORTHONORMALITY_TOL * max(v.shape[1], 1):
            raise ContractViolation(
                f"basis is not orthonormal: ||G - I||_F = {defect:.3e}"
            )

    @property
    def dim_ambient(self) -> int:
        return self.vectors.shape[0]

    @property
    def size(self) -> int:
        return self.vectors.shape[1]

    def projector(self) -> np.ndarray:
        """P = sum |b_i><b_i| built from the stored vectors."""
        return self.vectors @ dagger(self.vectors)

    def transformed(self, gauge: np.ndarray) -> "BasisSet":
        """Same span with columns mixed by a size x size unitary."""
        return BasisSet(self.vectors @ gauge, self.labels)

    def to_json_dict(self) -> dict:
        return {
            "dim_ambient": self.dim_ambient,
            "labels": list(self.labels),
            "vectors": [
                [[float(z.real), float(z.imag)] for z in self.vectors[:, j]]
                for j in range(self.size)
            ],
        }

    @classmethod
    def from_json_dict(cls, data) -> "BasisSet":
        cols = [
            np.array([complex(re, im) for re, im in column], dtype=np.complex128)
            for column in data["vectors"]
        ]
        return cls(np.column_stack(cols), tuple(data["labels"]))


def _register_pattern(n_total: int, assignments: dict[int, str]) -> str:
    """Bit pattern of a 3-qubit-per-block register with every block assigned
    one of the named single-block states."""
    if n_total % 3 != 0:
        raise ValueError(f"register size must be a multiple of 3, got {n_total}")
    n_blocks = n_total // 3
    parts = []
    for b in range(1, n_blocks + 1):
        name = assignments.get(b)
        if name is None:
            raise ValueError(f"no state assigned to block {b}")
        parts.append(_BLOCK_PATTERNS[name])
    return "".join(parts)


def _check_block_fits(block: LogicalBlock, n_total: int) -> None:
    if 3 * block.index > n_total:
        raise IndexError(
            f"block {block.index} needs qubits up to {3 * block.index}, register has {n_total}"
        )


def dfs_basis(block: LogicalBlock, n_total: int, spectator: str = "0L") -> BasisSet:
    """Protected-space basis (|a>, |0>_L, |1>_L) of one block.

    Other blocks are held in the ``spectator`` reference state (one of
    'a', '0L', '1L'); the default is every other block in |0>_L.
    """
    _check_block_fits(block, n_total)
    if spectator not in _BLOCK_PATTERNS:
        raise ValueError(f"spectator must be one of {sorted(_BLOCK_PATTERNS)}")
    n_blocks = n_total // 3
    columns = []
    for name in ("a", "0L", "1L"):
        assignments = {b: spectator for b in range(1, n_blocks + 1)}
        assignments[block.index] = name
        columns.append(bit_state(_register_pattern(n_total, assignments)))
    return BasisSet(np.column_stack(columns), ("a", "0L", "1L"))


def logical_basis(
    blocks: Sequence[LogicalBlock], n_total: int, spectator: str = "0L"
) -> BasisSet:
    """Computational basis of the logical register spanned by ``blocks``.

    Lexicographic ordering with the first listed block as the most
    significant logical qubit: one block gives (|0>_L, |1>_L), two give
    (|00>_L, |01>_L, |10>_L, |11>_L).
    """
    if len(set(b.index for b in blocks)) != len(blocks):
        raise ValueError("duplicate logical blocks")
    if not blocks:
        raise ValueError("need at least one logical block")
    for block in blocks:
        _check_block_fits(block, n_total)
    n_blocks = n_total // 3
    columns, labels = [], []
    for bits in range(2 ** len(blocks)):
        word = format(bits, f"0{len(blocks)}b")
        assignments = {b: spectator for b in range(1, n_blocks + 1)}
        for block, bit in zip(blocks, word):
            assignments[block.index] = "0L" if bit == "0" else "1L"
        columns.append(bit_state(_register_pattern(n_total, assignments)))
        labels.append(word)
    return BasisSet(np.column_stack(columns), tuple(labels))


def invariant_check_basis(
    blocks: Sequence[LogicalBlock], n_total: int, spectator: str = "0L"
) -> BasisSet:
    """Ancilla-completed basis on which the gate matrices are quoted.

    One block: (|a>, |0>_L, |1>_L). Two blocks: the five-state invariant
    family (|aa>, |00>_L, |01>_L, |10>_L, |11>_L).
    """
    if len(blocks) == 1:
        return dfs_basis(blocks[0], n_total, spectator)
    if len(blocks) != 2:
        raise ValueError("invariant check basis is defined for 1 or 2 blocks")
    logical = logical_basis(blocks, n_total, spectator)
    n_blocks = n_total // 3
    assignments = {b: spectator for b in range(1, n_blocks + 1)}
    for block in blocks:
        assignments[block.index] = "a"
    ancilla = bit_state(_register_pattern(n_total, assignments))
    return BasisSet(
        np.column_stack([ancilla, logical.vectors]),
        ("aa",) + logical.labels,
    )


def dfs_product_basis(
    blocks: Sequence[LogicalBlock], n_total: int, spectator: str = "0L"
) -> BasisSet:
    """Full protected space of several blocks (3^len(blocks) states)."""
    if len(set(b.index for b in blocks)) != len(blocks) or not blocks:
        raise ValueError("blocks must be nonempty and distinct")
    for block in blocks:
        _check_block_fits(block, n_total)
    n_blocks = n_total // 3
    names = ("a", "0L", "1L")
    columns, labels = [], []

    def build(prefix: list[str]):
        if len(prefix) == len(blocks):
            assignments = {b: spectator for b in range(1, n_blocks + 1)}
            for block, name in zip(blocks, prefix):
                assignments[block.index] = name
            columns.append(bit_state(_register_pattern(n_total, assignments)))
            labels.append("".join(prefix))
            return
        for name in names:
            build(prefix + [name])

    build([])
    return BasisSet(np.column_stack(columns), tuple(labels))


def restrict(op: np.ndarray, basis: BasisSet) -> np.ndarray:
    """Matrix of entries <b_i| op |b_j> in basis order.

    The restriction of a unitary is unitary exactly when the span is
    invariant; see :func:`invariance_defect`.
    """
    op = as_complex_matrix(op)
    if op.shape != (basis.dim_ambient, basis.dim_ambient):
        raise ValueError(
            f"operator shape {op.shape} does not match ambient dimension {basis.dim_ambient}"
        )
    return dagger(basis.vectors) @ op @ basis.vectors


def invariance_defect(u: np.ndarray, basis: BasisSet) -> float:
    """|| (I - P) u P ||_F; zero iff span(basis) is invariant under u."""
    u = as_complex_matrix(u)
    if u.shape != (basis.dim_ambient, basis.dim_ambient):
        raise ValueError(
            f"operator shape {u.shape} does not match ambient dimension {basis.dim_ambient}"
        )
    mapped = u @ basis.vectors                      # u P, column form
    outside = mapped - basis.vectors @ (dagger(basis.vectors) @ mapped)
    return float(np.linalg.norm(outside))


def leakage_profile(
    h: np.ndarray,
    basis_inner: BasisSet,
    basis_outer: BasisSet,
    tau: float,
    steps: int,
) -> list[tuple[float, float, float]]:
    """Worst-case populations leaving the nested subspaces during evolution.

    Returns (t, outer_leakage, inner_leakage) on a uniform grid of
    ``steps + 1`` times in [0, tau]: for each time the max over initial
    inner-basis states of the population outside span(basis_outer) and
    outside span(basis_inner). Requires span(inner) within span(outer).
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    inside = basis_outer.projector() @ basis_inner.vectors
    nesting = np.linalg.norm(basis_inner.vectors - inside)
    if nesting > ORTHONORMALITY_TOL * basis_inner.dim_ambient:
        raise ValueError(
            f"inner basis is not contained in outer span (defect {nesting:.3e})"
        )
    profile = []
    for j in range(steps + 1):
        t = tau * j / steps
        evolved = evolve(h, t) @ basis_inner.vectors
        pop_outer = 1.0 - np.sum(np.abs(dagger(basis_outer.vectors) @ evolved) ** 2, axis=0)
        pop_inner = 1.0 - np.sum(np.abs(dagger(basis_inner.vectors) @ evolved) ** 2, axis=0)
        profile.append((t, float(pop_outer.max()), float(pop_inner.max())))
    return profile
