"""Noisy bosonic attenuator and amplifier channels in the number basis.

A channel is (kind, kappa, noise): an attenuator with 0 < kappa <= 1 or an
amplifier with kappa >= 1, plus additional Gaussian noise a >= 0 (a = 0 is
the quantum-limited channel).  Every noisy channel factors into a
quantum-limited attenuator followed by a quantum-limited amplifier, and all
number-basis evolution here runs through that decomposition: a closed-form
double sum for dyads |m><n|, a brute-force Kraus-product oracle to check it
against, and closed forms x1..x5 for the few matrix elements the witness
layer consumes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .fock_core import FockOperator, log_binomial, validate_density

__all__ = [
    "ChannelKind",
    "ChannelParams",
    "QuantumLimitedPair",
    "SingleModeElements",
    "EvolvedOperator",
    "attenuator",
    "amplifier",
    "decompose",
    "compose_quantum_limited",
    "kraus_attenuator",
    "kraus_amplifier",
    "kraus_sum_dyad",
    "evolve_dyad",
    "evolve_density",
    "x_elements",
    "auto_cutoff",
]


class ChannelKind(str, Enum):
    ATTENUATOR = "attenuator"
    AMPLIFIER = "amplifier"


@dataclass(frozen=True)
class ChannelParams:
    """Channel label (kind, kappa, noise); validates the kind's kappa domain."""

    kind: ChannelKind
    kappa: float
    noise: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", ChannelKind(self.kind))
        object.__setattr__(self, "kappa", float(self.kappa))
        object.__setattr__(self, "noise", float(self.noise))
        if not math.isfinite(self.kappa) or not math.isfinite(self.noise):
            raise ValueError("channel parameters must be finite")
        if self.kind is ChannelKind.ATTENUATOR and not 0.0 < self.kappa <= 1.0:
            raise ValueError(f"attenuator requires 0 < kappa <= 1, got {self.kappa!r}")
        if self.kind is ChannelKind.AMPLIFIER and not self.kappa >= 1.0:
            raise ValueError(f"amplifier requires kappa >= 1, got {self.kappa!r}")
        if self.noise < 0.0:
            raise ValueError(f"additional noise must be >= 0, got {self.noise!r}")


def attenuator(kappa: float, noise: float = 0.0) -> ChannelParams:
    return ChannelParams(ChannelKind.ATTENUATOR, kappa, noise)


def amplifier(kappa: float, noise: float = 0.0) -> ChannelParams:
    return ChannelParams(ChannelKind.AMPLIFIER, kappa, noise)


class QuantumLimitedPair(NamedTuple):
    """Quantum-limited factors: attenuator kappa1 <= 1 applied first, then amplifier kappa2 >= 1."""

    kappa1: float
    kappa2: float


class EvolvedOperator(NamedTuple):
    """Evolution output plus the weight lost to truncation and tail cuts."""

    operator: FockOperator
    dropped_weight: float


def decompose(params: ChannelParams) -> QuantumLimitedPair:
    """Split a noisy channel into its quantum-limited attenuator/amplifier pair.

    Attenuators give kappa2 = sqrt(1 + a/2); amplifiers kappa2 = sqrt(kappa^2 + a/2);
    in both cases kappa1 = kappa / kappa2, so kappa1 <= 1 <= kappa2.
    """
    if params.kind is ChannelKind.ATTENUATOR:
        kappa2 = math.sqrt(1.0 + 0.5 * params.noise)
    else:
        kappa2 = math.sqrt(params.kappa ** 2 + 0.5 * params.noise)
    # clamp fp noise at the quantum-limited edge (kappa2 == kappa exactly)
    kappa1 = min(1.0, params.kappa / kappa2)
    return QuantumLimitedPair(kappa1, kappa2)


def compose_quantum_limited(kappa1: float, kappa2: float) -> ChannelParams:
    """Fuse quantum-limited attenuator kappa1 then amplifier kappa2 into one noisy channel.

    The product kappa2*kappa1 fixes the kind: <= 1 gives an attenuator with
    noise 2(kappa2^2 - 1), > 1 an amplifier with noise 2 kappa2^2 (1 - kappa1^2).
    """
    if not 0.0 < kappa1 <= 1.0:
        raise ValueError(f"attenuator factor requires 0 < kappa1 <= 1, got {kappa1!r}")
    if not kappa2 >= 1.0:
        raise ValueError(f"amplifier factor requires kappa2 >= 1, got {kappa2!r}")
    kappa = kappa2 * kappa1
    if kappa <= 1.0:
        return ChannelParams(ChannelKind.ATTENUATOR, kappa, 2.0 * (kappa2 ** 2 - 1.0))
    return ChannelParams(
        ChannelKind.AMPLIFIER, kappa, 2.0 * kappa2 ** 2 * (1.0 - kappa1 ** 2)
    )


def kraus_attenuator(kappa: float, ell: int, cutoff: int) -> FockOperator:
    """Kraus operator B_ell of the quantum-limited attenuator.

    <m| B_ell |m + ell> = sqrt(C(m + ell, ell)) (1 - kappa^2)^(ell/2) kappa^m.
    """
    if not 0.0 < kappa <= 1.0:
        raise ValueError(f"attenuator requires 0 < kappa <= 1, got {kappa!r}")
    if not 0 <= ell <= cutoff:
        raise ValueError(f"kraus index ell={ell} outside [0, cutoff={cutoff}]")
    dim = cutoff + 1
    out = np.zeros((dim, dim))
    one_minus = 1.0 - kappa * kappa
    if one_minus <= 0.0 and ell > 0:
        return FockOperator(out)
    log_k = math.log(kappa)
    log_loss = 0.5 * ell * math.log(one_minus) if ell > 0 else 0.0
    for m in range(dim - ell):
        out[m, m + ell] = math.exp(
            0.5 * log_binomial(m + ell, ell) + log_loss + m * log_k
        )
    return FockOperator(out)


def kraus_amplifier(kappa: float, ell: int, cutoff: int) -> FockOperator:
    """Kraus operator A_ell of the quantum-limited amplifier.

    <m + ell| A_ell |m> = kappa^-1 sqrt(C(m + ell, ell)) (1 - kappa^-2)^(ell/2) kappa^-m.
    """
    if not kappa >= 1.0:
        raise ValueError(f"amplifier requires kappa >= 1, got {kappa!r}")
    if not 0 <= ell <= cutoff:
        raise ValueError(f"kraus index ell={ell} outside [0, cutoff={cutoff}]")
    dim = cutoff + 1
    out = np.zeros((dim, dim))
    one_minus = 1.0 - 1.0 / (kappa * kappa)
    if one_minus <= 0.0 and ell > 0:
        return FockOperator(out)
    log_k = math.log(kappa)
    log_gain = 0.5 * ell * math.log(one_minus) if ell > 0 else 0.0
    for m in range(dim - ell):
        out[m + ell, m] = math.exp(
            0.5 * log_binomial(m + ell, ell) + log_gain - (m + 1) * log_k
        )
    return FockOperator(out)


def kraus_sum_dyad(m: int, n: int, params: ChannelParams, cutoff: int) -> FockOperator:
    """Brute-force reference evolution of |m><n|: explicit Kraus matrix products.

    Applies every B_ell of the kappa1 attenuator, then every A_ell of the
    kappa2 amplifier.  Slow by construction; exists to check evolve_dyad.
    """
    if not (0 <= m <= cutoff and 0 <= n <= cutoff):
        raise ValueError(f"dyad indices ({m}, {n}) exceed cutoff {cutoff}")
    kappa1, kappa2 = decompose(params)
    dim = cutoff + 1
    e = np.zeros((dim, dim))
    e[m, n] = 1.0
    mid = np.zeros_like(e)
    for ell in range(dim):
        b = kraus_attenuator(kappa1, ell, cutoff).entries
        mid += b @ e @ b.T
    out = np.zeros_like(e)
    for ell in range(dim):
        a = kraus_amplifier(kappa2, ell, cutoff).entries
        out += a @ mid @ a.T
    return FockOperator(out)


def evolve_dyad(
    m: int,
    n: int,
    params: ChannelParams,
    cutoff: int,
    tail_tol: float = 1e-12,
) -> EvolvedOperator:
    """Closed-form channel action on the dyad |m><n|.

    Output entries sit at [m - ell + j, n - ell + j]: ell counts photons lost
    in the attenuator stage (ell <= min(m, n)), j photons added by the
    amplifier stage.  Each coefficient is a product of four square-rooted
    binomials and three geometric weights, accumulated in log domain.  The
    j-sum stops at the hard cap cutoff - max(m, n) + min(m, n) (no later term
    lands inside the cutoff) or earlier once the geometric tail bound drops
    below tail_tol; everything not placed in the output, tail bound included,
    is returned as dropped_weight.
    """
    if not (0 <= m <= cutoff and 0 <= n <= cutoff):
        raise ValueError(f"dyad indices ({m}, {n}) exceed cutoff {cutoff}")
    if not tail_tol > 0.0:
        raise ValueError(f"tail_tol must be positive, got {tail_tol!r}")
    kappa1, kappa2 = decompose(params)
    dim = cutoff + 1
    out = np.zeros((dim, dim))
    log_pref = -2.0 * math.log(kappa2)
    log_ratio = math.log(kappa1) - math.log(kappa2)
    y = 1.0 - 1.0 / (kappa2 * kappa2)  # amplifier branching weight, 0 iff kappa2 == 1
    z = 1.0 - kappa1 * kappa1          # attenuator branching weight, 0 iff kappa1 == 1
    log_y = math.log(y) if y > 0.0 else 0.0
    log_z = math.log(z) if z > 0.0 else 0.0
    lmax = min(m, n)
    hi = max(m, n)
    j_cap = cutoff - hi + lmax  # beyond this every term is out of cutoff
    dropped = 0.0
    j = 0
    while True:
        level = 0.0
        for ell in range(lmax + 1):
            if ell > 0 and z == 0.0:
                break
            lg = log_pref + 0.5 * (
                log_binomial(m - ell + j, j)
                + log_binomial(n - ell + j, j)
                + log_binomial(m, ell)
                + log_binomial(n, ell)
            )
            lg += (m + n - 2 * ell) * log_ratio + j * log_y + ell * log_z
            c = math.exp(lg)
            level += c
            r, s = m - ell + j, n - ell + j
            if r <= cutoff and s <= cutoff:
                out[r, s] += c
            else:
                dropped += c
        if y == 0.0:
            break
        # worst-case ratio of level j+1 to level j terms, decreasing in j
        q = y * math.sqrt((m + j + 1) * (n + j + 1)) / (j + 1)
        if q < 1.0:
            tail = level * q / (1.0 - q)
            if j >= j_cap or (tail < tail_tol and j > cutoff - hi):
                dropped += tail
                break
        j += 1
    return EvolvedOperator(FockOperator(out), dropped)


def evolve_density(
    rho: FockOperator,
    params: ChannelParams,
    cutoff: int,
    tail_tol: float = 1e-12,
) -> EvolvedOperator:
    """Channel action on a density operator, dyad by dyad.

    rho must satisfy the density contract (validate_density).  Dyad
    evolutions are cached and transposed for the symmetric partner, and the
    dropped weight is the |rho[m, n]|-weighted sum of the per-dyad drops.
    """
    validate_density(rho)
    if rho.cutoff > cutoff:
        raise ValueError(
            f"input cutoff {rho.cutoff} exceeds evolution cutoff {cutoff}"
        )
    dim = cutoff + 1
    out = np.zeros((dim, dim))
    dropped = 0.0
    cache: dict[tuple[int, int], EvolvedOperator] = {}
    src = rho.entries
    for m in range(rho.cutoff + 1):
        for n in range(rho.cutoff + 1):
            w = src[m, n]
            if w == 0.0:
                continue
            key = (m, n)
            if key not in cache:
                if (n, m) in cache:
                    prev = cache[(n, m)]
                    cache[key] = EvolvedOperator(
                        FockOperator(prev.operator.entries.T), prev.dropped_weight
                    )
                else:
                    cache[key] = evolve_dyad(m, n, params, cutoff, tail_tol)
            ev = cache[key]
            out += w * ev.operator.entries
            dropped += abs(w) * ev.dropped_weight
    return EvolvedOperator(FockOperator(out), dropped)


@dataclass(frozen=True)
class SingleModeElements:
    """The five single-mode output matrix elements driving the witnesses.

    With t = 1 + a/2 (attenuator) or kappa^2 + a/2 (amplifier):
      x1 = <n| C(|n><n|) |n>,  x2 = <0| C(|n><n|) |0>,
      x3 = <0| C(|0><0|) |0>,  x4 = <n| C(|0><0|) |n>,
      x5 = <n| C(|n><0|) |0>.
    All lie in [0, 1], x3 in (0, 1].
    """

    x1: float
    x2: float
    x3: float
    x4: float
    x5: float
    n: int
    channel: ChannelParams

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.x1, self.x2, self.x3, self.x4, self.x5)


def x_elements(n: int, params: ChannelParams) -> SingleModeElements:
    """Closed forms for x1..x5; one code path for both kinds via t.

    t is written directly from the channel parameters (not via decompose)
    so the quantum-limited edges stay exact: a = 0 makes x4 (attenuator)
    and x2 (amplifier) exact zeros.
    """
    if n < 1:
        raise ValueError(f"photon number n must be >= 1, got {n!r}")
    kappa = params.kappa
    if params.kind is ChannelKind.ATTENUATOR:
        t = 1.0 + 0.5 * params.noise
    else:
        t = kappa * kappa + 0.5 * params.noise
    u = 1.0 / t
    r = kappa * kappa * u      # in (0, 1]
    w = (1.0 - r) * (1.0 - u)  # joint loss weight, 0 at the quantum-limited edge
    g = r * u
    if w > 0.0:
        lw = math.log(w)
        lg = math.log(g)
        x1 = u * math.fsum(
            math.exp(2.0 * log_binomial(n, ell) + ell * lg + (n - ell) * lw)
            for ell in range(n + 1)
        )
    else:
        x1 = u * g ** n
    x2 = u * (1.0 - r) ** n
    x3 = u
    x4 = u * (1.0 - u) ** n
    x5 = kappa ** n * u ** (n + 1)
    return SingleModeElements(x1, x2, x3, x4, x5, n, params)


def auto_cutoff(
    m: int,
    n: int,
    params: ChannelParams,
    tail_tol: float = 1e-12,
    trace_tol: float = 1e-9,
) -> int:
    """Smallest doubling cutoff at which evolving |k><k| (k = max(m, n)) keeps its trace."""
    k = max(m, n)
    if k < 0:
        raise ValueError("photon numbers must be >= 0")
    cutoff = k + 20
    while cutoff <= 4096:
        ev = evolve_dyad(k, k, params, cutoff, tail_tol)
        if ev.operator.trace() >= 1.0 - trace_tol:
            return cutoff
        cutoff *= 2
    raise RuntimeError(
        f"no cutoff up to 4096 retains the trace for {params} at k={k}"
    )
