"""Noise-threshold solver: the added noise a* at which a witness loses its sign.

For each (family, kind, n, kappa) the witness delta(a) starts negative at
a = 0 and the solver finds the first sign change: a coarse upward scan at
0.25 resolution brackets the earliest flip, a 0.01 sweep below the bracket
guards against a missed earlier one, and bisection tightens the bracket to
tol.  Curve sweeps attach the two Gaussian benchmarks to every point: g_inf,
the infinite-squeezing breaking line, and g_1, the one-ebit squeezed-state
threshold.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channels import ChannelKind
from .gaussian import (
    amplifier_gaussian_threshold,
    attenuator_gaussian_threshold,
    breaking_line,
    ebits_to_mu,
)
from .witness import StateFamily, delta

__all__ = [
    "ThresholdError",
    "BracketError",
    "ThresholdDiagnostics",
    "ThresholdPoint",
    "ThresholdCurve",
    "RegionPoint",
    "RegionReport",
    "bracket",
    "solve_threshold",
    "sweep_curve",
    "region_r",
    "DEFAULT_GRIDS",
]

SCAN_STEP = 0.25
VERIFY_STEP = 0.01
BRACKET_CEILING = 64.0

# default kappa grids per channel kind: (min, max, steps)
DEFAULT_GRIDS = {
    ChannelKind.ATTENUATOR: (0.05, 1.0, 40),
    ChannelKind.AMPLIFIER: (1.0, 1.6, 40),
}


class ThresholdError(RuntimeError):
    """Threshold solver failure."""


class BracketError(ThresholdError):
    """No valid sign-change bracket exists for this witness."""


@dataclass(frozen=True)
class ThresholdDiagnostics:
    iterations: int
    bracket_width: float
    evaluations: int
    lower_scan_clear: bool  # no sign change below the bisection bracket at 0.01 resolution


@dataclass(frozen=True)
class ThresholdPoint:
    kappa: float
    a_threshold: float
    bracket_width: float
    iterations: int
    g_inf: float
    g_1: float

    @property
    def margin(self) -> float:
        return self.a_threshold - self.g_inf


@dataclass(frozen=True)
class ThresholdCurve:
    family: StateFamily
    kind: ChannelKind
    n: int
    tol: float
    points: tuple[ThresholdPoint, ...]
    failures: tuple[tuple[float, str], ...]

    @property
    def label(self) -> str:
        return ("N" if self.family is StateFamily.NOON else "P") + str(self.n)


@dataclass(frozen=True)
class RegionPoint:
    kappa: float
    a_threshold: float
    g_inf: float
    margin: float


@dataclass(frozen=True)
class RegionReport:
    """Where the witness threshold sits above the Gaussian breaking line."""

    points: tuple[RegionPoint, ...]
    positive_kappas: tuple[float, ...]


def bracket(delta_of_a, ceiling: float = BRACKET_CEILING) -> tuple[float, float]:
    """Sign-change bracket (0, a_hi) with delta(0) < 0 < delta(a_hi), a_hi doubling up to ceiling.

    Raises BracketError if the witness is already nonnegative at a = 0 (no
    root exists: the quantum-limited channel never breaks these states when
    the witness applies) or if no sign change appears below the ceiling.
    """
    d0 = delta_of_a(0.0)
    if not d0 < 0.0:
        raise BracketError(
            f"witness value {d0!r} at zero added noise is nonnegative; no threshold exists"
        )
    hi = 1.0
    while hi <= ceiling:
        if delta_of_a(hi) > 0.0:
            return (0.0, hi)
        hi *= 2.0
    raise BracketError(f"no witness sign change found up to a = {ceiling}")


def solve_threshold(
    family: StateFamily,
    kind: ChannelKind,
    n: int,
    kappa: float,
    tol: float = 1e-9,
) -> tuple[float, ThresholdDiagnostics]:
    """First zero crossing of a -> delta(family, kind, n, kappa, a), to within tol."""
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    evaluations = 0

    def fn(a: float) -> float:
        nonlocal evaluations
        evaluations += 1
        return delta(family, kind, n, kappa, a).delta

    lo, hi = bracket(fn)

    # earliest flip at coarse resolution
    b_lo, b_hi = lo, hi
    steps = int(math.floor(hi / SCAN_STEP))
    for k in range(1, steps + 1):
        a = k * SCAN_STEP
        if a >= hi:
            break
        if fn(a) > 0.0:
            b_hi = a
            break
        b_lo = a

    # fine sweep below the bracket: catch a sign change the coarse scan stepped over
    lower_scan_clear = True
    fine_steps = int(math.floor(b_lo / VERIFY_STEP))
    for k in range(1, fine_steps + 1):
        a = k * VERIFY_STEP
        if a >= b_lo:
            break
        if fn(a) > 0.0:
            lower_scan_clear = False
            b_lo, b_hi = (k - 1) * VERIFY_STEP, a
            break

    iterations = 0
    while b_hi - b_lo > tol:
        mid = 0.5 * (b_lo + b_hi)
        if fn(mid) > 0.0:
            b_hi = mid
        else:
            b_lo = mid
        iterations += 1
    a_threshold = 0.5 * (b_lo + b_hi)

    # post-hoc straddle check
    below = fn(max(0.0, a_threshold - 2.0 * tol))
    above = fn(a_threshold + 2.0 * tol)
    if not (below < 0.0 and above > 0.0):
        raise ThresholdError(
            f"threshold verification failed at kappa={kappa!r}: "
            f"delta({a_threshold - 2 * tol!r}) = {below!r}, "
            f"delta({a_threshold + 2 * tol!r}) = {above!r}"
        )
    diag = ThresholdDiagnostics(
        iterations=iterations,
        bracket_width=b_hi - b_lo,
        evaluations=evaluations,
        lower_scan_clear=lower_scan_clear,
    )
    return a_threshold, diag


def _gaussian_one_ebit(kind: ChannelKind, kappa: float, mu_one: float) -> float:
    if kind is ChannelKind.ATTENUATOR:
        return attenuator_gaussian_threshold(mu_one, kappa)
    return amplifier_gaussian_threshold(mu_one, kappa)


def sweep_curve(
    family: StateFamily,
    kind: ChannelKind,
    n: int,
    kappa_min: float,
    kappa_max: float,
    steps: int,
    tol: float = 1e-9,
    workers: int = 1,
) -> ThresholdCurve:
    """Threshold curve over a uniform kappa grid, with Gaussian benchmarks attached.

    Points where no threshold exists (bracket failure) are recorded in
    .failures and the curve is still returned.  Results are deterministic
    and independent of the worker count: each grid point is solved on its
    own and reassembled in grid order.
    """
    family = StateFamily(family)
    kind = ChannelKind(kind)
    if steps < 2:
        raise ValueError(f"grid needs at least 2 steps, got {steps!r}")
    if not kappa_min < kappa_max:
        raise ValueError(f"need kappa_min < kappa_max, got {kappa_min!r}, {kappa_max!r}")
    grid = np.linspace(kappa_min, kappa_max, steps)
    mu_one = ebits_to_mu(1.0)

    def solve_one(kappa: float):
        kappa = float(kappa)
        try:
            a_thr, diag = solve_threshold(family, kind, n, kappa, tol)
        except BracketError as exc:
            return kappa, None, str(exc)
        point = ThresholdPoint(
            kappa=kappa,
            a_threshold=a_thr,
            bracket_width=diag.bracket_width,
            iterations=diag.iterations,
            g_inf=breaking_line(kind, kappa),
            g_1=_gaussian_one_ebit(kind, kappa, mu_one),
        )
        return kappa, point, None

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(solve_one, grid))
    else:
        results = [solve_one(k) for k in grid]

    points = tuple(p for _, p, _ in results if p is not None)
    failures = tuple((k, reason) for k, _, reason in results if reason is not None)
    return ThresholdCurve(family, kind, n, tol, points, failures)


def region_r(curve: ThresholdCurve) -> RegionReport:
    """Margins of the witness threshold over the breaking line, per grid point."""
    pts = tuple(
        RegionPoint(p.kappa, p.a_threshold, p.g_inf, p.a_threshold - p.g_inf)
        for p in curve.points
    )
    return RegionReport(
        points=pts,
        positive_kappas=tuple(p.kappa for p in pts if p.margin > 0.0),
    )
