"""NPT entanglement witnesses for NOON and photon-number entangled states.

Both families are four-dyad superpositions over {|0>, |n>} x {|0>, |n>}.
Sending each mode through the same noisy channel keeps the output inside a
small algebra whose relevant matrix elements are the closed forms x1..x5,
and the partial transpose restricted to the {|00>, |0n>, |n0>, |nn>} block
yields a scalar witness: delta < 0 certifies an NPT (hence entangled)
output.  Four witnesses arise from family x channel kind; indices follow
that order (1 = NOON/attenuator, 2 = PNES/attenuator, 3 = NOON/amplifier,
4 = PNES/amplifier).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .channels import (
    ChannelKind,
    ChannelParams,
    SingleModeElements,
    evolve_dyad,
    x_elements,
)
from .fock_core import (
    FockOperator,
    TwoModeFockOperator,
    min_eigenvalue_symmetric,
    partial_transpose,
)

__all__ = [
    "StateFamily",
    "NonGaussianState",
    "WitnessResult",
    "EvolvedTwoMode",
    "make_state",
    "assemble",
    "evolve_two_sided",
    "project_subspace",
    "delta",
    "full_ppt_min_eigenvalue",
    "state_variance_matrix",
]


class StateFamily(str, Enum):
    NOON = "noon"
    PNES = "pnes"


@dataclass(frozen=True)
class NonGaussianState:
    """Four-dyad decomposition: entries (m, n, p, q, coeff) meaning coeff |m><n| (x) |p><q|."""

    family: StateFamily
    n: int
    dyads: tuple[tuple[int, int, int, int, float], ...]


class EvolvedTwoMode(NamedTuple):
    operator: TwoModeFockOperator
    dropped_weight: float


@dataclass(frozen=True)
class WitnessResult:
    """Witness value and the ingredients it was built from; delta < 0 flags NPT."""

    delta: float
    index: int
    entangled: bool
    elements: SingleModeElements


def make_state(family: StateFamily, n: int) -> NonGaussianState:
    """(|n0> + |0n>)/sqrt(2) for NOON, (|00> + |nn>)/sqrt(2) for the PNES family."""
    family = StateFamily(family)
    if n < 1:
        raise ValueError(f"photon number n must be >= 1, got {n!r}")
    if family is StateFamily.NOON:
        dyads = (
            (n, n, 0, 0, 0.5),
            (n, 0, 0, n, 0.5),
            (0, n, n, 0, 0.5),
            (0, 0, n, n, 0.5),
        )
    else:
        dyads = (
            (0, 0, 0, 0, 0.5),
            (0, n, 0, n, 0.5),
            (n, 0, n, 0, 0.5),
            (n, n, n, n, 0.5),
        )
    return NonGaussianState(family, n, dyads)


def assemble(state: NonGaussianState, cutoff: int) -> TwoModeFockOperator:
    """Dense density matrix of the state on the truncated two-mode space."""
    if cutoff < state.n:
        raise ValueError(f"cutoff {cutoff} cannot hold photon number {state.n}")
    dim = cutoff + 1
    out = np.zeros((dim * dim, dim * dim))
    for m, n, p, q, coeff in state.dyads:
        out[m * dim + p, n * dim + q] += coeff
    return TwoModeFockOperator(out)


def evolve_two_sided(
    state: NonGaussianState,
    params: ChannelParams,
    cutoff: int,
    tail_tol: float = 1e-12,
) -> EvolvedTwoMode:
    """Send both modes through the same channel.

    Only four distinct single-mode dyads occur; each is evolved once (the
    transpose is reused for the mirrored dyad) and the outputs combined as
    Kronecker products.
    """
    if cutoff < state.n:
        raise ValueError(f"cutoff {cutoff} cannot hold photon number {state.n}")
    cache: dict[tuple[int, int], tuple[FockOperator, float]] = {}

    def evolved(a: int, b: int) -> tuple[FockOperator, float]:
        if (a, b) not in cache:
            if (b, a) in cache:
                op, d = cache[(b, a)]
                cache[(a, b)] = (FockOperator(op.entries.T), d)
            else:
                ev = evolve_dyad(a, b, params, cutoff, tail_tol)
                cache[(a, b)] = (ev.operator, ev.dropped_weight)
        return cache[(a, b)]

    dim = cutoff + 1
    out = np.zeros((dim * dim, dim * dim))
    dropped = 0.0
    for m, n, p, q, coeff in state.dyads:
        op1, d1 = evolved(m, n)
        op2, d2 = evolved(p, q)
        out += coeff * np.kron(op1.entries, op2.entries)
        dropped += abs(coeff) * (d1 + d2 + d1 * d2)
    return EvolvedTwoMode(TwoModeFockOperator(out), dropped)


def project_subspace(rho: TwoModeFockOperator, n: int) -> np.ndarray:
    """4x4 block of rho over the ordered basis |00>, |0n>, |n0>, |nn> (not renormalized)."""
    if n < 1:
        raise ValueError(f"photon number n must be >= 1, got {n!r}")
    if rho.cutoff < n:
        raise ValueError(f"operator cutoff {rho.cutoff} cannot hold photon number {n}")
    dim = rho.cutoff + 1
    idx = [0, n, n * dim, n * dim + n]
    return rho.entries[np.ix_(idx, idx)].copy()


def delta(
    family: StateFamily,
    kind: ChannelKind,
    n: int,
    kappa: float,
    a: float,
) -> WitnessResult:
    """Scalar NPT witness for the family/kind pairing at channel (kappa, a).

    NOON:  delta = x1 x2 x3 x4 - (x5^2 / 2)^2
    PNES:  delta = ((x1 x2 + x3 x4) / 2)^2 - (x5^2 / 2)^2
    delta < 0 certifies an NPT two-mode output.  Index 1..4 enumerates
    (NOON, PNES) x (attenuator, amplifier).
    """
    family = StateFamily(family)
    params = ChannelParams(kind, kappa, a)
    el = x_elements(n, params)
    if family is StateFamily.NOON:
        value = el.x1 * el.x2 * el.x3 * el.x4 - (el.x5 ** 2 / 2.0) ** 2
        index = 1 if params.kind is ChannelKind.ATTENUATOR else 3
    else:
        value = ((el.x1 * el.x2 + el.x3 * el.x4) / 2.0) ** 2 - (el.x5 ** 2 / 2.0) ** 2
        index = 2 if params.kind is ChannelKind.ATTENUATOR else 4
    return WitnessResult(delta=value, index=index, entangled=value < 0.0, elements=el)


def full_ppt_min_eigenvalue(rho: TwoModeFockOperator) -> float:
    """Smallest eigenvalue of the full partial transpose; < 0 means NPT."""
    return min_eigenvalue_symmetric(partial_transpose(rho).entries)


def _lowering(dim: int) -> np.ndarray:
    a = np.zeros((dim, dim))
    idx = np.arange(dim - 1)
    a[idx, idx + 1] = np.sqrt(idx + 1.0)
    return a


def state_variance_matrix(rho: TwoModeFockOperator) -> np.ndarray:
    """4x4 quadrature variance matrix of a two-mode state, vacuum = identity.

    Exact when the state's support stays at least two levels below the
    cutoff.  Real symmetric density matrices carry no q-p correlations, so
    those entries vanish identically and only real arithmetic is needed.
    """
    r = rho.entries
    dim = rho.cutoff + 1
    low = _lowering(dim)
    eye = np.eye(dim)
    ops = [np.kron(low, eye), np.kron(eye, low)]
    qs = [op + op.T for op in ops]
    ds = [op - op.T for op in ops]  # p_i = -i * ds[i]
    mean_q = [float(np.trace(r @ q)) for q in qs]
    v = np.zeros((4, 4))
    for i in range(2):
        for j in range(2):
            qq = 0.5 * float(np.trace(r @ (qs[i] @ qs[j] + qs[j] @ qs[i])))
            pp = -0.5 * float(np.trace(r @ (ds[i] @ ds[j] + ds[j] @ ds[i])))
            v[2 * i, 2 * j] = qq - mean_q[i] * mean_q[j]
            v[2 * i + 1, 2 * j + 1] = pp
    return v
