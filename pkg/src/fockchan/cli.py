"""Command-line front end: witness evaluation, figure data, self-validation.

Exit codes: 0 success, 1 validation or solver failure, 2 usage/domain error.
Every error path prints a single line "error: <category>: <reason>" to
stderr.  FOCKCHAN_THREADS caps sweep parallelism (default 1); results do
not depend on it.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from .channels import (
    ChannelKind,
    ChannelParams,
    evolve_dyad,
    kraus_sum_dyad,
    x_elements,
)
from .gaussian import (
    amplifier_gaussian_threshold,
    attenuator_gaussian_threshold,
    numeric_ppt_threshold,
)
from .thresholds import (
    DEFAULT_GRIDS,
    ThresholdError,
    region_r,
    sweep_curve,
)
from .witness import StateFamily, delta

__all__ = ["main", "run_validation", "figure_csv_bytes", "FIGURE_PRESETS"]

# preset id -> (state family, channel kind); n defaults to 5
FIGURE_PRESETS = {
    1: (StateFamily.NOON, ChannelKind.ATTENUATOR),
    2: (StateFamily.PNES, ChannelKind.ATTENUATOR),
    3: (StateFamily.NOON, ChannelKind.AMPLIFIER),
    4: (StateFamily.PNES, ChannelKind.AMPLIFIER),
}

_CHANNEL_NAMES = {"att": ChannelKind.ATTENUATOR, "amp": ChannelKind.AMPLIFIER}

_VALIDATION_SEED = 20230816


def _threads_from_env() -> int:
    raw = os.environ.get("FOCKCHAN_THREADS", "1")
    try:
        workers = int(raw)
    except ValueError:
        raise ValueError(f"FOCKCHAN_THREADS must be an integer, got {raw!r}") from None
    if workers < 1:
        raise ValueError(f"FOCKCHAN_THREADS must be >= 1, got {workers}")
    return workers


def _parse_cutoff(raw: str) -> int | None:
    if raw == "auto":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"--cutoff must be 'auto' or an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"--cutoff must be >= 1, got {value}")
    return value


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


# ---------------------------------------------------------------- witness

def cmd_witness(args: argparse.Namespace) -> int:
    family = StateFamily(args.state)
    kind = _CHANNEL_NAMES[args.channel]
    result = delta(family, kind, args.n, args.kappa, args.a)
    el = result.elements
    record = {
        "family": family.value,
        "n": args.n,
        "kind": kind.value,
        "kappa": args.kappa,
        "a": args.a,
        "delta": result.delta,
        "entangled": result.entangled,
        "x1": el.x1,
        "x2": el.x2,
        "x3": el.x3,
        "x4": el.x4,
        "x5": el.x5,
    }
    if args.format == "json":
        text = json.dumps(record, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(record.keys())
        writer.writerow(
            "true" if v is True else "false" if v is False else v
            for v in record.values()
        )
        text = buf.getvalue()
    _write_text(args.out, text)
    return 0


# ---------------------------------------------------------------- figure

def figure_csv_bytes(curve) -> bytes:
    """Deterministic CSV payload for a threshold curve (one row per solved point)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["kappa", "a_curve", "g_inf", "g_1", "margin"])
    for p in curve.points:
        writer.writerow([p.kappa, p.a_threshold, p.g_inf, p.g_1, p.margin])
    return buf.getvalue().encode("utf-8")


def _figure_meta(curve, args, grid, workers: int, files: dict[str, str]) -> str:
    meta = {
        "figure": args.id,
        "label": curve.label,
        "family": curve.family.value,
        "channel": curve.kind.value,
        "n": curve.n,
        "kappa_grid": {"min": grid[0], "max": grid[1], "steps": grid[2]},
        "tol": curve.tol,
        "workers": workers,
        "columns": ["kappa", "a_curve", "g_inf", "g_1", "margin"],
        "points": len(curve.points),
        "failures": [
            {"kappa": kappa, "reason": reason} for kappa, reason in curve.failures
        ],
        "files": files,
    }
    return json.dumps(meta, indent=2) + "\n"


def cmd_figure(args: argparse.Namespace) -> int:
    family, kind = FIGURE_PRESETS[args.id]
    lo, hi, steps = DEFAULT_GRIDS[kind]
    if args.kappa_min is not None:
        lo = args.kappa_min
    if args.kappa_max is not None:
        hi = args.kappa_max
    if args.steps is not None:
        steps = args.steps
    workers = _threads_from_env()
    curve = sweep_curve(
        family, kind, args.n, lo, hi, steps, tol=args.tol, workers=workers
    )
    if not curve.points:
        raise ThresholdError(
            f"no threshold exists anywhere on the grid [{lo}, {hi}] "
            f"({curve.failures[0][1]})"
        )
    csv_path = args.out if args.out is not None else f"figure{args.id}.csv"
    base = csv_path[:-4] if csv_path.endswith(".csv") else csv_path
    meta_path = base + ".meta.json"
    png_path = base + ".png"

    with open(csv_path, "wb") as fh:
        fh.write(figure_csv_bytes(curve))
    files = {"csv": csv_path, "meta": meta_path}
    if not args.no_plot:
        files["png"] = png_path
    with open(meta_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(_figure_meta(curve, args, (lo, hi, steps), workers, files))
    if not args.no_plot:
        from .plotting import render_threshold_figure

        render_threshold_figure(curve, png_path)

    region = region_r(curve)
    print(f"wrote {', '.join(files.values())}")
    print(
        f"{curve.label} {kind.value}: {len(curve.points)} points, "
        f"{len(curve.failures)} failures, margin > 0 at "
        f"{len(region.positive_kappas)}/{len(curve.points)} grid points"
    )
    return 0


# ---------------------------------------------------------------- validate

def _validation_channels() -> list[ChannelParams]:
    noises = (0.0, 0.5, 2.0)
    grid = [
        ChannelParams(ChannelKind.ATTENUATOR, k, a)
        for k in (0.3, 0.7, 0.95, 1.0)
        for a in noises
    ]
    grid += [
        ChannelParams(ChannelKind.AMPLIFIER, k, a)
        for k in (1.0, 1.2, 1.5)
        for a in noises
    ]
    return grid


def run_validation(
    quick: bool = False,
    perturb: float = 0.0,
    cutoff: int | None = None,
    tail_tol: float = 1e-12,
) -> dict:
    """Oracle equivalence suite; returns the machine-readable report dict.

    Checks: closed-form dyad evolution against brute-force Kraus products,
    the x1..x5 closed forms against evolution bra-kets (perturb shifts x5 to
    prove the check can fail), and the analytic Gaussian thresholds against
    numeric PPT-flip bisection.
    """
    n_max = 3 if quick else 6
    cut = cutoff if cutoff is not None else (16 if quick else 40)
    if cut < n_max:
        raise ValueError(f"cutoff {cut} is too small for photon numbers up to {n_max}")
    channels_grid = _validation_channels()

    err_dyad = 0.0
    cases_dyad = 0
    for params in channels_grid:
        for m in range(n_max + 1):
            for n in range(n_max + 1):
                fast = evolve_dyad(m, n, params, cut, tail_tol).operator.entries
                slow = kraus_sum_dyad(m, n, params, cut).entries
                err_dyad = max(err_dyad, float(np.abs(fast - slow).max()))
                cases_dyad += 1

    err_x = 0.0
    cases_x = 0
    for params in channels_grid:
        for n in range(1, n_max + 1):
            el = x_elements(n, params)
            ev_nn = evolve_dyad(n, n, params, cut, tail_tol).operator.entries
            ev_00 = evolve_dyad(0, 0, params, cut, tail_tol).operator.entries
            ev_n0 = evolve_dyad(n, 0, params, cut, tail_tol).operator.entries
            diffs = (
                el.x1 - ev_nn[n, n],
                el.x2 - ev_nn[0, 0],
                el.x3 - ev_00[0, 0],
                el.x4 - ev_00[n, n],
                (el.x5 + perturb) - ev_n0[n, 0],
            )
            err_x = max(err_x, max(float(abs(d)) for d in diffs))
            cases_x += 5

    rng = np.random.default_rng(_VALIDATION_SEED)
    pairs = 10 if quick else 50
    err_gauss = 0.0
    for _ in range(pairs):
        mu = float(rng.uniform(0.0, 3.0))
        kappa = float(rng.uniform(0.05, 1.0))
        analytic = attenuator_gaussian_threshold(mu, kappa)
        numeric = numeric_ppt_threshold(mu, ChannelKind.ATTENUATOR, kappa)
        err_gauss = max(err_gauss, abs(analytic - numeric))
    for _ in range(pairs):
        mu = float(rng.uniform(0.0, 3.0))
        kappa = float(rng.uniform(1.0, 1.5))
        analytic = amplifier_gaussian_threshold(mu, kappa)
        numeric = numeric_ppt_threshold(mu, ChannelKind.AMPLIFIER, kappa)
        err_gauss = max(err_gauss, abs(analytic - numeric))

    checks = [
        {
            "name": "dyad_evolution_vs_kraus_sum",
            "cases": cases_dyad,
            "tolerance": 1e-10,
            "observed_error": err_dyad,
            "passed": err_dyad <= 1e-10,
        },
        {
            "name": "x_elements_vs_evolution",
            "cases": cases_x,
            "tolerance": 1e-10,
            "observed_error": err_x,
            "passed": err_x <= 1e-10,
        },
        {
            "name": "gaussian_analytic_vs_numeric_ppt",
            "cases": 2 * pairs,
            "tolerance": 1e-6,
            "observed_error": err_gauss,
            "passed": err_gauss <= 1e-6,
        },
    ]
    return {
        "suite": "validate",
        "quick": quick,
        "perturb": perturb,
        "cutoff": cut,
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }


def cmd_validate(args: argparse.Namespace) -> int:
    cutoff = _parse_cutoff(args.cutoff)
    report = run_validation(
        quick=args.quick,
        perturb=args.perturb,
        cutoff=cutoff,
        tail_tol=args.tail_tol,
    )
    _write_text(args.out, json.dumps(report, indent=2) + "\n")
    return 0 if report["passed"] else 1


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fockchan",
        description=(
            "Noisy bosonic attenuator/amplifier channels: NPT witnesses for "
            "NOON and photon-number entangled states, and noise-threshold curves."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    w = sub.add_parser("witness", help="evaluate one witness point")
    w.add_argument("--state", choices=["noon", "pnes"], required=True)
    w.add_argument("--n", type=int, default=5, help="photon number (default 5)")
    w.add_argument("--channel", choices=["att", "amp"], required=True)
    w.add_argument("--kappa", type=float, required=True)
    w.add_argument("--a", type=float, default=0.0, help="additional noise (default 0)")
    w.add_argument("--format", choices=["csv", "json"], default="csv")
    w.add_argument("--out", default=None, help="write to file instead of stdout")
    w.set_defaults(func=cmd_witness)

    f = sub.add_parser("figure", help="threshold-curve data for a figure preset")
    f.add_argument(
        "--id",
        type=int,
        choices=[1, 2, 3, 4],
        required=True,
        help="1 NOON/att, 2 PNES/att, 3 NOON/amp, 4 PNES/amp",
    )
    f.add_argument("--n", type=int, default=5, help="photon number (default 5)")
    f.add_argument("--kappa-min", type=float, default=None)
    f.add_argument("--kappa-max", type=float, default=None)
    f.add_argument("--steps", type=int, default=None, help="grid points (default 40)")
    f.add_argument("--tol", type=float, default=1e-9, help="bisection tolerance")
    f.add_argument("--out", default=None, help="CSV path (default figure<id>.csv)")
    f.add_argument("--no-plot", action="store_true", help="skip the PNG rendering")
    f.set_defaults(func=cmd_figure)

    v = sub.add_parser("validate", help="run the oracle equivalence suite")
    v.add_argument("--quick", action="store_true", help="small grid, under 5 s")
    v.add_argument(
        "--perturb",
        type=float,
        default=0.0,
        help="shift x5 by this amount (sensitivity self-test; nonzero must fail)",
    )
    v.add_argument("--cutoff", default="auto", help="'auto' or an integer cutoff")
    v.add_argument("--tail-tol", type=float, default=1e-12)
    v.add_argument("--out", default=None, help="write the JSON report to a file")
    v.set_defaults(func=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ThresholdError as exc:
        print(f"error: solver: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: domain: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
