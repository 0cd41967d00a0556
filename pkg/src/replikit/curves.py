"""Density curves for plotting.

``figure=1`` overlays the distribution of individual paired differences
(scale ``sd``) and the distribution of possible means (scale ``sem``).
``figure=2`` adds the predictive distribution of a replicating study's
mean, widened to ``sem * sqrt(k)``.
"""

import csv
import io
import math

from ._checks import DomainError, finite, integer, positive
from .gaussian import normal_pdf

__all__ = ["DEFAULT_MARKERS", "PLOT_COLUMNS", "plot_rows", "rows_to_csv", "trapezoid_area"]

# arrows A-D: null, 1 unit, the k=2 significance cut-off for sem 1, and 1 beyond it
DEFAULT_MARKERS = (("A", 0.0), ("B", 1.0), ("C", 2.77), ("D", 3.77))
PLOT_COLUMNS = ("x", "individuals", "means", "predictive", "marker")


def plot_rows(mean, sd, n, figure=1, points=801, k=2.0, markers=DEFAULT_MARKERS, span=4.0):
    """Rows of ``x`` against each curve's density, sorted by ``x``.

    The grid covers ``mean +/- span * sd`` with ``points`` evenly spaced
    values.  Marker positions are merged into the grid and carry their label
    in the ``marker`` column; ``predictive`` is ``None`` for figure 1.
    """
    mean = finite("mean", mean)
    sd = positive("sd", sd)
    n = integer("n", n, 2)
    points = integer("points", points, 2)
    if figure not in (1, 2):
        raise DomainError(f"figure must be 1 or 2, got {figure!r}")
    k = finite("k", k)
    if k < 1.0:
        raise DomainError(f"k must be >= 1, got {k!r}")

    sem = sd / math.sqrt(n)
    wide = sem * math.sqrt(k)
    lo, hi = mean - span * sd, mean + span * sd
    step = (hi - lo) / (points - 1)
    xs = {lo + i * step: "" for i in range(points)}
    xs[hi] = ""
    for label, x in markers:
        xs[finite("marker", x)] = label

    rows = []
    for x in sorted(xs):
        rows.append(
            {
                "x": x,
                "individuals": normal_pdf((x - mean) / sd) / sd,
                "means": normal_pdf((x - mean) / sem) / sem,
                "predictive": normal_pdf((x - mean) / wide) / wide if figure == 2 else None,
                "marker": xs[x],
            }
        )
    return rows


def trapezoid_area(rows, column, lower=-math.inf, upper=math.inf):
    """Trapezoid-rule area under ``column`` between emitted grid points."""
    pts = [(r["x"], r[column]) for r in rows if lower <= r["x"] <= upper]
    return sum((x1 - x0) * (y0 + y1) / 2.0 for (x0, y0), (x1, y1) in zip(pts, pts[1:]))


def rows_to_csv(rows, fmt=repr):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(PLOT_COLUMNS)
    for r in rows:
        writer.writerow(
            [
                fmt(r["x"]),
                fmt(r["individuals"]),
                fmt(r["means"]),
                "" if r["predictive"] is None else fmt(r["predictive"]),
                r["marker"],
            ]
        )
    return buf.getvalue()
