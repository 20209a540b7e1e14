"""Matplotlib rendering of threshold curves to figure files."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .channels import ChannelKind
from .thresholds import ThresholdCurve

__all__ = ["render_threshold_figure"]


def render_threshold_figure(curve: ThresholdCurve, path: str, dpi: int = 150) -> None:
    """Threshold curve vs the two Gaussian benchmarks, margin region shaded."""
    kappas = [p.kappa for p in curve.points]
    a_curve = [p.a_threshold for p in curve.points]
    g_inf = [p.g_inf for p in curve.points]
    g_1 = [p.g_1 for p in curve.points]

    fig, ax = plt.subplots(figsize=(4.8, 3.6))
    ax.plot(kappas, a_curve, color="tab:blue", lw=1.8, label=curve.label)
    ax.plot(kappas, g_inf, color="tab:red", ls="--", lw=1.2,
            label=r"$g_\infty$")
    ax.plot(kappas, g_1, color="tab:green", ls=":", lw=1.2, label=r"$g_1$")
    ax.fill_between(
        kappas, g_inf, a_curve,
        where=[a > g for a, g in zip(a_curve, g_inf)],
        color="tab:blue", alpha=0.15, linewidth=0,
    )
    kind_name = (
        "attenuator" if curve.kind is ChannelKind.ATTENUATOR else "amplifier"
    )
    ax.set_xlabel(r"$\kappa$")
    ax.set_ylabel(r"additional noise $a$")
    ax.set_title(f"{curve.label} vs Gaussian benchmarks ({kind_name})")
    ax.set_ylim(bottom=0.0)
    ax.grid(alpha=0.3)
    ax.legend(frameon=False, fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
