"""Two-mode Gaussian sector: variance matrices, physicality, PPT separability.

Convention: quadrature order (q1, p1, q2, p2), vacuum variance = identity.
A channel acts affinely, V -> kappa^2 V + (|1 - kappa^2| + a) I.  Squeezed
two-mode states, their PPT separability threshold in the added noise a, and
the entanglement-entropy inverse used to pin the one-ebit benchmark all live
here, each with an analytic closed form and a numeric cross-check path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import ChannelKind, ChannelParams
from .fock_core import min_eigenvalue_symmetric

__all__ = [
    "VarianceMatrix",
    "OMEGA",
    "tmsv_variance",
    "evolve_variance",
    "ppt_separable",
    "attenuator_gaussian_threshold",
    "amplifier_gaussian_threshold",
    "breaking_line",
    "tmsv_entanglement_entropy",
    "ebits_to_mu",
    "numeric_ppt_threshold",
]

# symplectic form for (q1, p1, q2, p2)
OMEGA = np.array(
    [
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ]
)

_PT_FLIP = np.diag([1.0, 1.0, 1.0, -1.0])  # momentum reversal on mode 2


def _uncertainty_embedding(v: np.ndarray) -> np.ndarray:
    # real 8x8 stand-in for the Hermitian V + i*Omega
    top = np.hstack([v, -OMEGA])
    bot = np.hstack([OMEGA, v])
    return np.vstack([top, bot])


@dataclass(frozen=True)
class VarianceMatrix:
    """4x4 real symmetric variance matrix in (q1, p1, q2, p2) order."""

    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=float)
        if arr.shape != (4, 4):
            raise ValueError(f"variance matrix must be 4x4, got shape {arr.shape}")
        if not np.isfinite(arr).all():
            raise ValueError("variance matrix has non-finite entries")
        asym = float(np.abs(arr - arr.T).max())
        if asym > 1e-12:
            raise ValueError(f"variance matrix is asymmetric by {asym:.3e}")
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)

    def uncertainty_min_eigenvalue(self) -> float:
        """Smallest eigenvalue of the embedded V + i*Omega; >= 0 iff physical."""
        return min_eigenvalue_symmetric(_uncertainty_embedding(self.entries))

    def is_physical(self, tol: float = 1e-9) -> bool:
        return self.uncertainty_min_eigenvalue() >= -tol


def tmsv_variance(mu: float) -> VarianceMatrix:
    """Two-mode squeezed vacuum: cosh(2 mu) on the diagonal, sinh(2 mu) sigma_z off-diagonal."""
    if not math.isfinite(mu) or mu < 0.0:
        raise ValueError(f"squeeze parameter must be >= 0, got {mu!r}")
    c, s = math.cosh(2.0 * mu), math.sinh(2.0 * mu)
    v = np.array(
        [
            [c, 0.0, s, 0.0],
            [0.0, c, 0.0, -s],
            [s, 0.0, c, 0.0],
            [0.0, -s, 0.0, c],
        ]
    )
    return VarianceMatrix(v)


def evolve_variance(v: VarianceMatrix, params: ChannelParams) -> VarianceMatrix:
    """Affine channel action kappa^2 V + (|1 - kappa^2| + a) I on both modes."""
    if not v.is_physical():
        raise ValueError("input variance matrix is unphysical")
    k2 = params.kappa ** 2
    shift = abs(1.0 - k2) + params.noise
    return VarianceMatrix(k2 * v.entries + shift * np.eye(4))


def ppt_separable(v: VarianceMatrix, tol: float = 1e-9) -> bool:
    """True iff the momentum-flipped variance matrix is still physical.

    For two-mode Gaussian states PPT is necessary and sufficient, so this is
    a separability decision, with an eigenvalue slack of tol.
    """
    if not v.is_physical(tol):
        raise ValueError("variance matrix is unphysical")
    flipped = _PT_FLIP @ v.entries @ _PT_FLIP
    return min_eigenvalue_symmetric(_uncertainty_embedding(flipped)) >= -tol


def attenuator_gaussian_threshold(mu: float, kappa: float) -> float:
    """Added noise at which the attenuated squeezed state turns PPT separable:
    a = kappa^2 (1 - e^(-2 mu)), clamped at 0."""
    if not math.isfinite(mu) or mu < 0.0:
        raise ValueError(f"squeeze parameter must be >= 0, got {mu!r}")
    if not 0.0 < kappa <= 1.0:
        raise ValueError(f"attenuator requires 0 < kappa <= 1, got {kappa!r}")
    return max(0.0, kappa ** 2 * (1.0 - math.exp(-2.0 * mu)))


def amplifier_gaussian_threshold(mu: float, kappa: float) -> float:
    """Added noise at which the amplified squeezed state turns PPT separable:
    a = 2 - kappa^2 (1 + e^(-2 mu)), clamped at 0."""
    if not math.isfinite(mu) or mu < 0.0:
        raise ValueError(f"squeeze parameter must be >= 0, got {mu!r}")
    if not kappa >= 1.0:
        raise ValueError(f"amplifier requires kappa >= 1, got {kappa!r}")
    return max(0.0, 2.0 - kappa ** 2 * (1.0 + math.exp(-2.0 * mu)))


def breaking_line(kind: ChannelKind, kappa: float) -> float:
    """Infinite-squeezing limit of the Gaussian threshold: kappa^2 for the
    attenuator, 2 - kappa^2 for the amplifier (raw line value, unclamped)."""
    kind = ChannelKind(kind)
    if kind is ChannelKind.ATTENUATOR:
        if not 0.0 < kappa <= 1.0:
            raise ValueError(f"attenuator requires 0 < kappa <= 1, got {kappa!r}")
        return kappa ** 2
    if not kappa >= 1.0:
        raise ValueError(f"amplifier requires kappa >= 1, got {kappa!r}")
    return 2.0 - kappa ** 2


def tmsv_entanglement_entropy(mu: float) -> float:
    """Entanglement entropy of the two-mode squeezed vacuum, in ebits.

    E = cosh^2(mu) log2 cosh^2(mu) - sinh^2(mu) log2 sinh^2(mu), written with
    log1p so the near-cancellation at large mu stays accurate.
    """
    if not math.isfinite(mu) or mu < 0.0:
        raise ValueError(f"squeeze parameter must be >= 0, got {mu!r}")
    if mu == 0.0:
        return 0.0
    s2 = math.sinh(mu) ** 2
    return (math.log1p(s2) + s2 * math.log1p(1.0 / s2)) / math.log(2.0)


def ebits_to_mu(ebits: float, tol: float = 1e-10) -> float:
    """Invert the squeezed-vacuum entropy: smallest mu with E(mu) = ebits.

    Bisection on [0, 20]; E is strictly increasing there.
    """
    if not math.isfinite(ebits) or ebits < 0.0:
        raise ValueError(f"entanglement must be >= 0, got {ebits!r}")
    if ebits == 0.0:
        return 0.0
    lo, hi = 0.0, 20.0
    if ebits > tmsv_entanglement_entropy(hi):
        raise ValueError(f"entanglement {ebits!r} exceeds the solver range")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if tmsv_entanglement_entropy(mid) < ebits:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def numeric_ppt_threshold(
    mu: float, kind: ChannelKind, kappa: float, tol: float = 1e-9
) -> float:
    """Added noise at the PPT separability flip, found by bisection.

    Independent numeric route behind the two closed-form thresholds: evolves
    the squeezed-vacuum variance matrix and bisects on ppt_separable.
    """
    v0 = tmsv_variance(mu)

    def separable(a: float) -> bool:
        return ppt_separable(evolve_variance(v0, ChannelParams(kind, kappa, a)))

    if separable(0.0):
        return 0.0
    lo, hi = 0.0, 1.0
    while not separable(hi):
        lo, hi = hi, 2.0 * hi
        if hi > 1e6:
            raise RuntimeError("no separability flip found below a = 1e6")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if separable(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
