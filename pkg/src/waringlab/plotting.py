"""Figures for the ``report`` command."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.ticker import MaxNLocator  # noqa: E402

plt.rcParams["font.family"] = "serif"
plt.rcParams["legend.framealpha"] = 0.0
plt.rcParams["axes.spines.top"] = False
plt.rcParams["axes.spines.right"] = False


def new_fig(width=5.0, height=3.5):
    fig, ax = plt.subplots(figsize=(width, height))
    return fig, ax


def save_fig(fig, path, **kwargs) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=150, bbox_inches="tight", **kwargs)
    plt.close(fig)
    return path


def plot_rank_profile(ranks_by_name: dict, path) -> Path:
    """Catalecticant ranks against contraction degree, one curve per form."""
    fig, ax = new_fig()
    for name, ranks in ranks_by_name.items():
        ks = sorted(ranks)
        ax.plot(ks, [ranks[k] for k in ks], marker="o", label=name)
    ax.xaxis.set_major_locator(MaxNLocator(integer=True))
    ax.set_xlabel("contraction degree k")
    ax.set_ylabel("catalecticant rank")
    if len(ranks_by_name) <= 8:
        ax.legend(fontsize=7)
    return save_fig(fig, path)


def _affine(points) -> list[complex]:
    """Coordinate beta/alpha of points (alpha : beta) of the binary line."""
    out = []
    for a, b in points:
        a, b = complex(a), complex(b)
        out.append(b / a if abs(a) > 1e-12 else complex("inf"))
    return [z for z in out if abs(z) != float("inf")]


def plot_binary_roots(z1_roots, s1_roots, path, title: str = "") -> Path:
    """Kernel roots of the binary part: border rank support against rank support."""
    fig, ax = new_fig(4.5, 4.5)
    z1, s1 = _affine(z1_roots), _affine(s1_roots)
    ax.scatter([z.real for z in s1], [z.imag for z in s1], marker="o", facecolors="none",
               edgecolors="C0", label="rank points")
    ax.scatter([z.real for z in z1], [z.imag for z in z1], marker="x", color="C3", s=60,
               label="border rank support")
    ax.axhline(0, color="0.8", lw=0.5)
    ax.axvline(0, color="0.8", lw=0.5)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_aspect("equal", adjustable="datalim")
    if title:
        ax.set_title(title, fontsize=9)
    ax.legend(fontsize=7)
    return save_fig(fig, path)


def plot_regime(rows, path) -> Path:
    """sbr + sr against the bound 2d + 1, one marker per decomposed form."""
    fig, ax = new_fig()
    ds = [r["d"] for r in rows]
    ax.scatter(ds, [r["sbr"] + r["sr"] for r in rows], label="sbr + sr", color="C0")
    ax.scatter(ds, [r["sbr"] for r in rows], label="sbr", marker="s", color="C2")
    if ds:
        lo, hi = min(ds), max(ds)
        xs = list(range(lo, hi + 1))
        ax.plot(xs, [2 * d + 1 for d in xs], ls="--", color="0.4", label="2d + 1")
    ax.xaxis.set_major_locator(MaxNLocator(integer=True))
    ax.set_xlabel("degree d")
    ax.set_ylabel("rank")
    ax.legend(fontsize=7)
    return save_fig(fig, path)
