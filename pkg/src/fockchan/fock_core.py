"""Truncated Fock-space linear algebra.

Dense real matrices over the number basis |0>, ..., |cutoff>, plus the
tensor / partial-transpose operations and the symmetric eigenvalue helper
used by the channel and witness layers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "FockOperator",
    "TwoModeFockOperator",
    "log_binomial",
    "tensor_dyad",
    "partial_transpose",
    "min_eigenvalue_symmetric",
    "validate_density",
]


def log_binomial(n: int, k: int) -> float:
    """ln C(n, k) by log-gamma accumulation; relative error ~1e-15 for moderate n."""
    if n < 0 or k < 0 or k > n:
        raise ValueError(f"binomial coefficient C({n}, {k}) is undefined")
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def _square_real(entries, what: str) -> np.ndarray:
    arr = np.array(entries, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise ValueError(f"{what} must be a square matrix, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValueError(f"{what} has non-finite entries")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class FockOperator:
    """Single-mode operator in the number basis; entries[r, c] = <r|O|c>."""

    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "entries", _square_real(self.entries, "operator"))

    @property
    def cutoff(self) -> int:
        return self.entries.shape[0] - 1

    def trace(self) -> float:
        return float(np.trace(self.entries))

    @classmethod
    def identity(cls, cutoff: int) -> "FockOperator":
        return cls(np.eye(cutoff + 1))

    @classmethod
    def dyad(cls, m: int, n: int, cutoff: int) -> "FockOperator":
        """|m><n| on the truncated space."""
        if not (0 <= m <= cutoff and 0 <= n <= cutoff):
            raise ValueError(f"dyad indices ({m}, {n}) exceed cutoff {cutoff}")
        e = np.zeros((cutoff + 1, cutoff + 1))
        e[m, n] = 1.0
        return cls(e)


@dataclass(frozen=True)
class TwoModeFockOperator:
    """Two-mode operator; row index m*(cutoff+1) + p encodes |m, p>."""

    entries: np.ndarray

    def __post_init__(self):
        arr = _square_real(self.entries, "two-mode operator")
        side = math.isqrt(arr.shape[0])
        if side * side != arr.shape[0]:
            raise ValueError(
                f"two-mode dimension {arr.shape[0]} is not a perfect square"
            )
        object.__setattr__(self, "entries", arr)

    @property
    def cutoff(self) -> int:
        return math.isqrt(self.entries.shape[0]) - 1

    def trace(self) -> float:
        return float(np.trace(self.entries))

    def element(self, m: int, p: int, n: int, q: int) -> float:
        """<m, p| O |n, q>."""
        d = self.cutoff + 1
        if not all(0 <= i <= self.cutoff for i in (m, p, n, q)):
            raise ValueError("mode index exceeds cutoff")
        return float(self.entries[m * d + p, n * d + q])


def validate_density(
    op: FockOperator | TwoModeFockOperator,
    *,
    symmetry_tol: float = 1e-12,
    trace_tol: float = 1e-9,
    eig_tol: float = 1e-9,
) -> None:
    """Check the density-operator contract: symmetric, trace <= 1 + tol, eigenvalues >= -tol.

    Raises ValueError with the violated condition spelled out.
    """
    a = op.entries
    asym = float(np.abs(a - a.T).max())
    if asym > symmetry_tol:
        raise ValueError(f"density operator is asymmetric by {asym:.3e}")
    tr = float(np.trace(a))
    if tr > 1.0 + trace_tol:
        raise ValueError(f"density operator trace {tr!r} exceeds 1")
    lo = min_eigenvalue_symmetric(a)
    if lo < -eig_tol:
        raise ValueError(f"density operator has negative eigenvalue {lo:.3e}")


def tensor_dyad(a: FockOperator, b: FockOperator) -> TwoModeFockOperator:
    """Kronecker product A (x) B with mode-1-major index m*(cutoff+1) + p."""
    if a.cutoff != b.cutoff:
        raise ValueError(
            f"tensor factors must share a cutoff, got {a.cutoff} and {b.cutoff}"
        )
    return TwoModeFockOperator(np.kron(a.entries, b.entries))


def partial_transpose(rho: TwoModeFockOperator) -> TwoModeFockOperator:
    """Transpose the second mode: entry [(m, q), (n, p)] <- [(m, p), (n, q)]."""
    d = rho.cutoff + 1
    blocks = rho.entries.reshape(d, d, d, d)
    return TwoModeFockOperator(blocks.transpose(0, 3, 2, 1).reshape(d * d, d * d))


def min_eigenvalue_symmetric(matrix: np.ndarray) -> float:
    """Smallest eigenvalue of a real symmetric matrix (symmetrized before solving)."""
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise ValueError("matrix has non-finite entries")
    sym = 0.5 * (m + m.T)
    return float(np.linalg.eigvalsh(sym)[0])
