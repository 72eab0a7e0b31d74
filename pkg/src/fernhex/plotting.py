"""Matplotlib figures for the ``report`` output of the CLI."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Polygon  # noqa: E402

from .lattice import Region, vertices  # noqa: E402
from .render import LOZENGE_FILLS, lozenge_corners, lozenge_kind  # noqa: E402

_SQ3 = math.sqrt(3) / 2


def _xy(p):
    X, h = p
    return (X / 2, h * _SQ3)


def plot_region(r: Region, tiling=None, ax=None, title=None):
    """Draw a region (and optionally a tiling) on a matplotlib axis."""
    if ax is None:
        _, ax = plt.subplots(figsize=(5, 5))
    for c in r.cells:
        ax.add_patch(Polygon([_xy(v) for v in vertices(c)], closed=True,
                             facecolor="white", edgecolor="#cccccc", lw=0.4))
    for c in r.removed:
        ax.add_patch(Polygon([_xy(v) for v in vertices(c)], closed=True,
                             facecolor="black", edgecolor="black", lw=0.4))
    if tiling is not None:
        for loz in tiling:
            ax.add_patch(Polygon([_xy(v) for v in lozenge_corners(loz)], closed=True,
                                 facecolor=LOZENGE_FILLS[lozenge_kind(loz)],
                                 edgecolor="black", lw=0.6))
    if r.outline:
        ax.add_patch(Polygon([_xy(v) for v in r.outline], closed=True,
                             fill=False, edgecolor="black", lw=1.2))
    pts = [_xy(v) for c in set(r.cells) | set(r.removed) for v in vertices(c)]
    if pts:
        xs, ys = zip(*pts)
        ax.set_xlim(min(xs) - 0.5, max(xs) + 0.5)
        ax.set_ylim(min(ys) - 0.5, max(ys) + 0.5)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title, fontsize=9)
    return ax


def plot_dual_convergence(rows, ax=None, title=None):
    """Ratio against N with the limit as a dashed line.

    ``rows`` are the tuples returned by ``verify.check_dual_convergence``.
    """
    if ax is None:
        _, ax = plt.subplots(figsize=(5, 3.5))
    Ns = [r[0] for r in rows]
    ax.plot(Ns, [r[1] for r in rows], "o-", label="finite-N ratio")
    ax.axhline(rows[0][2], ls="--", color="grey", label="limit")
    ax.set_xlabel("N")
    ax.set_ylabel("ratio")
    ax.legend(frameon=False)
    if title:
        ax.set_title(title, fontsize=9)
    return ax


def plot_report_summary(reports: dict, ax=None):
    """Horizontal bars: instances checked per report, failures in red."""
    if ax is None:
        _, ax = plt.subplots(figsize=(6, 0.3 * len(reports) + 1.2))
    names = list(reports)
    ok = [reports[n].instances_checked - len(reports[n].failures) for n in names]
    bad = [len(reports[n].failures) for n in names]
    ax.barh(names, ok, color="#6b9bd1", label="pass")
    ax.barh(names, bad, left=ok, color="#d9534f", label="fail")
    ax.set_xlabel("instances")
    ax.invert_yaxis()
    ax.legend(frameon=False, loc="lower right")
    return ax


def save(ax, path):
    fig = ax.get_figure()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
