"""Deterministic figure rendering.

All figures use the Agg backend with pinned rc settings and strip the
file metadata that varies between runs, so the same CSV input yields
byte-identical PNG output.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .figspec import FigureSpec, SchemaError, load_for  # noqa: E402

_RC = {
    "figure.figsize": (6.4, 4.8),
    "figure.dpi": 100,
    "savefig.dpi": 100,
    "font.family": "DejaVu Sans",
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "svg.hashsalt": "talbot-plots",
}

_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]


def _save(fig, out_path: str):
    fig.savefig(out_path, format="png", metadata={"Software": None})
    plt.close(fig)


def _floats(cols, name):
    return np.array([float(v) for v in cols[name]])


def _draw_sobolev_curve(ax, cols, label, color):
    alpha = _floats(cols, "alpha")
    s = _floats(cols, "s")
    bp = _floats(cols, "is_breakpoint").astype(bool)
    ax.plot(alpha, s, color=color, label=label)
    ax.plot(alpha[bp], s[bp], "o", color=color, markersize=5)
    ax.set_xlabel("alpha")
    ax.set_ylabel("s")


def _draw_param_region(ax, cols, label, color):
    u1 = _floats(cols, "u1")
    u2 = _floats(cols, "u2")
    closed1 = np.append(u1, u1[0])
    closed2 = np.append(u2, u2[0])
    ax.fill(closed1, closed2, alpha=0.25, color=color, label=label)
    ax.plot(closed1, closed2, color=color)
    # label each polygon edge at its midpoint with its vertex pair
    for i in range(len(u1)):
        mx = 0.5 * (closed1[i] + closed1[i + 1])
        my = 0.5 * (closed2[i] + closed2[i + 1])
        ax.annotate(f"e{i}", (mx, my), fontsize=8, color=color)
    ax.set_xlabel("u1")
    ax.set_ylabel("u2")


def _draw_slope_fit(ax, cols, label, color):
    radius = _floats(cols, "radius")
    count = _floats(cols, "count")
    x = np.log(1.0 / radius)
    y = np.log(count)
    slope, intercept = np.polyfit(x, y, 1)
    ax.plot(x, y, "o", color=color,
            label=f"{label} (slope {slope:.3f})" if label else
                  f"slope {slope:.3f}")
    ax.plot(x, slope * x + intercept, "-", color=color, alpha=0.7)
    ax.set_xlabel("log 1/radius")
    ax.set_ylabel("log count")


def _draw_amplitude_heatmap(ax, cols, label, color):
    p0 = _floats(cols, "p0").astype(int)
    p1 = _floats(cols, "p1").astype(int)
    mag = _floats(cols, "abs")
    q = max(p0.max(), p1.max()) + 1
    grid = np.zeros((q, q))
    grid[p0, p1] = mag
    im = ax.imshow(grid, origin="lower", cmap="viridis")
    ax.figure.colorbar(im, ax=ax, label="|S(p)|")
    ax.set_xlabel("p1")
    ax.set_ylabel("p0")


_DRAWERS = {
    "sobolev-curve": _draw_sobolev_curve,
    "param-region": _draw_param_region,
    "slope-fit": _draw_slope_fit,
    "amplitude-heatmap": _draw_amplitude_heatmap,
}


def render(spec: FigureSpec, out_path: str) -> str:
    """Draw one figure from the spec's CSVs and write it to out_path."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        draw = _DRAWERS[spec.kind]
        for i, path in enumerate(spec.csv_paths):
            cols = load_for(spec, path)
            label = spec.style.get("labels", [None] * len(spec.csv_paths))[i]
            draw(ax, cols, label, _COLORS[i % len(_COLORS)])
        if spec.title:
            ax.set_title(spec.title)
        if ax.get_legend_handles_labels()[1]:
            ax.legend()
        _save(fig, out_path)
    return out_path


def compare(specs: list[FigureSpec], out_path: str) -> str:
    """Overlay several same-kind figures; one spec degenerates to render."""
    if not specs:
        raise SchemaError("compare needs at least one spec")
    kinds = {s.kind for s in specs}
    if len(kinds) > 1:
        raise SchemaError(f"compare needs one figure kind, got {sorted(kinds)}")
    merged = FigureSpec(
        csv_paths=[p for s in specs for p in s.csv_paths],
        kind=specs[0].kind,
        title=specs[0].title,
        style={"labels": [lab for s in specs
                          for lab in s.style.get(
                              "labels", [s.title or None] * len(s.csv_paths))]})
    return render(merged, out_path)
