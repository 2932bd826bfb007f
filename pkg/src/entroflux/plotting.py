"""Matplotlib rendering for the report path.

This is the presentation-grade sibling of the hand-rolled SVG writer: same
row data, but PNG/PDF output via the Agg backend for inclusion in notes and
reports.  No byte-level determinism is promised here; that contract lives
with emit_csv/emit_svg.
"""
from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

from .errors import InsufficientData  # noqa: E402


def _numeric(value):
    if value is None:
        return math.nan
    if isinstance(value, bool):
        return 1.0 if value else 0.0
    return float(value)


def render_figure(rows, dest, columns=None, title=None, logy=False):
    """Render one sweep as a line figure and write it to dest.

    dest's extension picks the format (png, pdf, svg, ...).  Gap values
    (None / non-finite) break the lines, matching the SVG writer's reading
    of unstable points.
    """
    if not rows:
        raise InsufficientData("no rows to plot")
    columns = list(columns) if columns is not None else list(rows[0].data.keys())
    if not columns:
        raise InsufficientData("no columns to plot")
    xs = [row.value for row in rows]

    fig, ax = plt.subplots(figsize=(8.0, 5.0), dpi=120)
    try:
        plotted = 0
        for name in columns:
            ys = [_numeric(row.data.get(name)) for row in rows]
            if sum(1 for y in ys if math.isfinite(y)) < 2:
                continue
            ax.plot(xs, ys, linewidth=1.4, label=name)
            plotted += 1
        if plotted == 0:
            raise InsufficientData("every requested column has fewer than 2 finite points")
        if logy:
            ax.set_yscale("log")
        ax.set_xlabel(rows[0].variable)
        ax.grid(alpha=0.3)
        ax.legend(frameon=False, fontsize=9)
        if title:
            ax.set_title(title, fontsize=11)
        fig.tight_layout()
        fig.savefig(dest)
    finally:
        plt.close(fig)
