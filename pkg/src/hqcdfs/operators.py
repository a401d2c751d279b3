"""Dense complex operator algebra for multi-qubit systems.

All operators are plain ``numpy.ndarray`` values of dtype complex128;
constructors and propagators validate their algebraic contracts and raise
:class:`~hqcdfs.errors.ContractViolation` on failure. Basis-state indexing
convention, fixed package-wide: qubit 1 is the most significant bit of the
computational-basis index, so for three qubits ``|100>`` is index 4.
"""

from __future__ import annotations

import numpy as np

from .errors import ContractViolation, DimensionCapError, SingularChainError

# Design envelope: at most two logical qubits (64-dim) plus headroom.
DIMENSION_CAP = 2 ** 14

# Per-dimension tolerance scales for double-precision spectral methods.
ALGEBRA_TOL = 1e-12
UNITARITY_TOL = 1e-10

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
IDENTITY_2 = np.eye(2, dtype=np.complex128)

_PAULI = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def as_complex_matrix(m) -> np.ndarray:
    """Coerce to a finite 2-d complex matrix; reject NaN/Inf entries."""
    out = np.asarray(m, dtype=np.complex128)
    if out.ndim != 2 or out.shape[0] < 1 or out.shape[1] < 1:
        raise ValueError(f"expected a 2-d matrix, got shape {out.shape}")
    if not np.all(np.isfinite(out.real)) or not np.all(np.isfinite(out.imag)):
        raise ContractViolation("matrix contains non-finite entries")
    return out


def require_hermitian(m, tol: float | None = None) -> np.ndarray:
    """Validate ``||m - m^dag||_F <= tol`` (default ALGEBRA_TOL * dim)."""
    h = as_complex_matrix(m)
    if h.shape[0] != h.shape[1]:
        raise ValueError(f"Hermitian operator must be square, got {h.shape}")
    if tol is None:
        tol = ALGEBRA_TOL * h.shape[0]
    defect = np.linalg.norm(h - dagger(h))
    if defect > tol:
        raise ContractViolation(
            f"operator is not Hermitian: ||A - A^dag||_F = {defect:.3e} > {tol:.3e}"
        )
    return h


def require_unitary(m, tol: float | None = None) -> np.ndarray:
    """Validate ``||U^dag U - I||_F <= tol`` (default UNITARITY_TOL * dim)."""
    u = as_complex_matrix(m)
    if u.shape[0] != u.shape[1]:
        raise ValueError(f"unitary operator must be square, got {u.shape}")
    if tol is None:
        tol = UNITARITY_TOL * u.shape[0]
    defect = np.linalg.norm(dagger(u) @ u - np.eye(u.shape[0]))
    if defect > tol:
        raise ContractViolation(
            f"operator is not unitary: ||U^dag U - I||_F = {defect:.3e} > {tol:.3e}"
        )
    return u


def tensor_product(a, b, *, max_dim: int = DIMENSION_CAP) -> np.ndarray:
    """Kronecker product with an explicit dimension cap.

    Fails loudly (DimensionCapError) instead of allocating matrices beyond
    the design envelope.
    """
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if rows > max_dim or cols > max_dim:
        raise DimensionCapError(
            f"tensor product of {a.shape} and {b.shape} exceeds dimension cap {max_dim}"
        )
    return np.kron(a, b)


def pauli_on(axis: str, k: int, n: int) -> np.ndarray:
    """Pauli operator on qubit ``k`` (1-based) of an ``n``-qubit register."""
    if axis not in _PAULI:
        raise ValueError(f"axis must be one of 'x', 'y', 'z', got {axis!r}")
    if n < 1:
        raise ValueError(f"qubit count must be >= 1, got {n}")
    if not 1 <= k <= n:
        raise IndexError(f"qubit index {k} out of range 1..{n}")
    if 2 ** n > DIMENSION_CAP:
        raise DimensionCapError(f"2^{n} exceeds dimension cap {DIMENSION_CAP}")
    op = np.ones((1, 1), dtype=np.complex128)
    for slot in range(1, n + 1):
        op = np.kron(op, _PAULI[axis] if slot == k else IDENTITY_2)
    return op


def evolve(h, t: float, tol: float | None = None) -> np.ndarray:
    """Propagator exp(-i h t) of a constant Hermitian generator (hbar = 1).

    Computed by spectral decomposition, exact to roundoff for constant
    generators. The result is checked unitary before being returned.
    """
    h = require_hermitian(h, tol)
    eigvals, eigvecs = np.linalg.eigh(h)
    u = (eigvecs * np.exp(-1j * eigvals * t)) @ dagger(eigvecs)
    return require_unitary(u)


def polar_unitary(m, *, min_singular: float = 1e-12) -> np.ndarray:
    """Unitary factor of the polar decomposition m = U P, P positive.

    U is the Frobenius-closest unitary to m. Raises SingularChainError when
    m is (numerically) rank-deficient, in which case no meaningful unitary
    factor exists.
    """
    m = as_complex_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"polar decomposition needs a square matrix, got {m.shape}")
    u, s, vh = np.linalg.svd(m)
    if s.min() <= min_singular:
        raise SingularChainError(
            f"matrix is rank-deficient (smallest singular value {s.min():.3e})"
        )
    return u @ vh


def phase_aligned_distance(u, v) -> float:
    """min over phi of ||u - e^{i phi} v||_F for equal-dimension unitaries.

    Zero iff u and v agree up to a global phase. The minimizing phase is
    phi* = arg Tr(v^dag u) in closed form; evaluating the norm at phi*
    directly is algebraically the same as sqrt(2 d - 2 |Tr(v^dag u)|) but
    avoids the cancellation that caps that expression near sqrt(eps).
    """
    u = as_complex_matrix(u)
    v = as_complex_matrix(v)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    phase = np.angle(np.trace(dagger(v) @ u))
    return float(np.linalg.norm(u - np.exp(1j * phase) * v))
