"""Matplotlib renderings of the seven scatter figures for a report directory."""
from __future__ import annotations

from pathlib import Path
from typing import Sequence

from .ensemble import EnsembleRecord, column
from .svg import FAMILY_STYLE, SAMPLE_COLOR, overlay_points
from .xstates import FamilyKind

_FAMILIES = (FamilyKind.MNMS, FamilyKind.MEMS, FamilyKind.WERNER)

# (x column, y column, overlays); fig1 and fig2 also show the rho_L line
SCATTER_FIGURES = {
    "fig1": ("c_rel", "c_l1", _FAMILIES + (FamilyKind.RHO_L,)),
    "fig2": ("c_skew", "c_l1", _FAMILIES + (FamilyKind.RHO_L,)),
    "fig3": ("c_skew", "c_rel", _FAMILIES),
    "fig4": ("concurrence", "c_l1", _FAMILIES),
    "fig5": ("c_rel", "d2", _FAMILIES),
    "fig6": ("c_rel", "d2max", _FAMILIES),
    "fig7": ("concurrence", "d2max", _FAMILIES),
}

AXIS_LABELS = {
    "c_rel": r"$C_{\rm rel}$",
    "c_l1": r"$C_{l_1}$",
    "c_skew": r"$C_{\rm skew}$",
    "concurrence": "Concurrence",
    "d2": r"$D^2$",
    "d2max": r"$D^2_{\max}$",
}

MARKERS = {FamilyKind.MNMS: "s", FamilyKind.MEMS: "o", FamilyKind.WERNER: "^"}


def render_figures(records: Sequence[EnsembleRecord], out_dir, fmt: str = "png",
                   names: Sequence[str] | None = None, grid: int = 51) -> list[Path]:
    """Write one file per figure into ``out_dir`` and return their paths."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for name in names or SCATTER_FIGURES:
        xcol, ycol, overlays = SCATTER_FIGURES[name]
        fig, ax = plt.subplots(figsize=(4.5, 3.6))
        ax.scatter(column(records, xcol), column(records, ycol), s=2, c=SAMPLE_COLOR,
                   alpha=0.4, linewidths=0, rasterized=True, label="X states")
        for kind in overlays:
            color, label = FAMILY_STYLE[kind]
            pts = overlay_points(kind, xcol, ycol, grid)
            xs, ys = zip(*pts)
            if kind is FamilyKind.RHO_L:
                ax.plot(xs, ys, "--", color=color, lw=1.2, label=label)
            else:
                ax.plot(xs, ys, MARKERS[kind], color=color, ms=3, mfc="none", label=label)
        ax.set_xlabel(AXIS_LABELS.get(xcol, xcol))
        ax.set_ylabel(AXIS_LABELS.get(ycol, ycol))
        ax.legend(fontsize=7, loc="best", frameon=False)
        fig.tight_layout()
        path = out_dir / f"{name}.{fmt}"
        fig.savefig(path, dpi=150)
        plt.close(fig)
        paths.append(path)
    return paths
