"""Exception types shared across the package."""

from __future__ import annotations


class ContractViolation(ValueError):
    """An algebraic contract failed: non-Hermitian generator, non-unitary
    propagator, non-orthonormal basis, or similar."""


class DimensionCapError(ValueError):
    """A requested operator dimension exceeds the configured cap."""


class SingularChainError(RuntimeError):
    """A chained overlap matrix became (numerically) rank-deficient, so no
    unitary factor can be extracted. Signals too-coarse discretization or a
    genuinely degenerate subspace overlap; never regularized silently."""


class PreconditionError(ContractViolation):
    """A certified operation was invoked on inputs that fail its
    preconditions (e.g. holonomy reconstruction without cyclic evolution)."""
