"""SVG figures for PL maps and stage realizations."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from biorder.homeo import RationalPLMap  # noqa: E402

_STYLE = {
    "figure.figsize": (4.5, 4.5),
    "axes.spines.top": False,
    "axes.spines.right": False,
    "font.size": 9,
    "svg.hashsalt": "biorder",  # stable element ids across runs
}


def plot_map(f: RationalPLMap, path, title: str = "", marks=None):
    """Draw ``f`` against the diagonal; ``marks`` are extra points to highlight."""
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        ax.plot([0, 1], [0, 1], color="0.6", lw=0.8, ls="--", label="identity")
        xs = [float(x) for x, _ in f.points]
        ys = [float(y) for _, y in f.points]
        ax.plot(xs, ys, color="C0", lw=1.2, label="map")
        ax.plot(xs, ys, "o", color="C0", ms=2.5)
        if marks:
            ax.plot([float(x) for x, _ in marks], [float(y) for _, y in marks],
                    "s", color="C3", ms=3, label="control points")
        ax.set_xlim(0, 1)
        ax.set_ylim(0, 1)
        ax.set_aspect("equal")
        ax.set_xlabel("x")
        ax.set_ylabel("f(x)")
        if title:
            ax.set_title(title)
        ax.legend(loc="upper left", frameon=False)
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)


def plot_realization(stage, g: str, path):
    from biorder.dynreal import control_points, realize

    f = realize(g, stage)
    lo, hi = stage.bounds
    span = hi - lo
    marks = [((x - lo) / span, (y - lo) / span) for x, y in control_points(g, stage)]
    label = g if g else "e"
    plot_map(f, path, title=f"rho({label}), N={stage.N}", marks=marks)
