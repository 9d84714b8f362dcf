"""Matplotlib rendering of the four report figures.

Each renderer consumes the same table its CSV/JSON twin serializes, so
the picture and the data are guaranteed to agree.  Rendering is opt-out
on the CLI (``--no-plot``); matplotlib is imported lazily with the Agg
backend so library users without a display never pay for it.
"""

from __future__ import annotations

from collections import defaultdict
from pathlib import Path

import numpy as np

from .report import Table

__all__ = ["render_figure"]

_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    return plt


def _grouped(table: Table, keys=("space", "n", "gamma_a")):
    """Group rows into {key_tuple: {column: array}} preserving row order."""
    header, rows = table
    idx = {name: i for i, name in enumerate(header)}
    groups: dict[tuple, dict[str, list]] = defaultdict(lambda: defaultdict(list))
    for row in rows:
        key = tuple(row[idx[k]] for k in keys)
        for name, i in idx.items():
            groups[key][name].append(row[i])
    return {
        key: {name: np.array([np.nan if v is None else v for v in col], dtype=float)
              if name not in ("space",) else col
              for name, col in cols.items()}
        for key, cols in groups.items()
    }


def _fig_eigenstates(table: Table, plt):
    groups = _grouped(table)
    ns = sorted({key[1] for key in groups})
    gas = sorted({key[2] for key in groups})
    fig, axes = plt.subplots(3, len(ns), figsize=(3.6 * len(ns), 8.5), squeeze=False)
    for col, n in enumerate(ns):
        for gi, ga in enumerate(gas):
            color = _COLORS[gi % len(_COLORS)]
            label = f"$\\gamma a={ga:g}$"
            gx = groups.get(("x", n, ga))
            if gx is not None:
                axes[0][col].plot(gx["z"], gx["psi_real"], color=color, label=label)
                axes[1][col].plot(gx["z"], gx["rho"], color=color, label=label)
            gk = groups.get(("k", n, ga))
            if gk is not None:
                axes[2][col].plot(gk["z"], gk["rho"], color=color, label=label)
        axes[0][col].set_title(f"$n={n}$")
        axes[0][col].set_xlabel("$x/a$")
        axes[0][col].set_ylabel(r"$\psi_n(x)$")
        axes[1][col].set_xlabel("$x/a$")
        axes[1][col].set_ylabel(r"$\rho_n(x)$")
        axes[2][col].set_xlabel("$k a$")
        axes[2][col].set_ylabel(r"$\tilde\rho_n(k)$")
    axes[0][0].legend(fontsize=8)
    return fig


def _fig_classical(table: Table, plt):
    groups = _grouped(table)
    fig, axes = plt.subplots(1, 2, figsize=(9.2, 3.6))
    for key, g in sorted(groups.items(), key=lambda kv: -kv[0][2]):
        space, n, ga = key
        ax = axes[0] if space == "x" else axes[1]
        style = "-" if ga else "--"
        ax.plot(g["z"], g["rho"], style, label=f"$\\gamma a={ga:g}$")
        if space == "x" and ga:
            ax.plot(g["z"], g["rho_classical"], "-.", label="classical")
            ax.plot(g["z"], g["two_rho_classical"], ":", label="2 classical")
    axes[0].set_xlabel("$x/a$")
    axes[0].set_ylabel(r"$\rho_n(x)$")
    axes[1].set_xlabel("$k a$")
    axes[1].set_ylabel(r"$\tilde\rho_n(k)$")
    for ax in axes:
        ax.legend(fontsize=8)
    return fig


def _fig_entropy_density(table: Table, plt):
    groups = _grouped(table)
    ns = sorted({key[1] for key in groups})
    gas = sorted({key[2] for key in groups})
    fig, axes = plt.subplots(2, len(ns), figsize=(3.6 * len(ns), 6.2), squeeze=False)
    for col, n in enumerate(ns):
        for gi, ga in enumerate(gas):
            color = _COLORS[gi % len(_COLORS)]
            label = f"$\\gamma a={ga:g}$"
            gx = groups.get(("x", n, ga))
            if gx is not None:
                axes[0][col].plot(gx["z"], gx["entropy_density"], color=color, label=label)
            gk = groups.get(("k", n, ga))
            if gk is not None:
                axes[1][col].plot(gk["z"], gk["entropy_density"], color=color, label=label)
        axes[0][col].set_title(f"$n={n}$")
        axes[0][col].set_xlabel("$x/a$")
        axes[0][col].set_ylabel(r"$\rho_S(x)$")
        axes[1][col].set_xlabel("$k a$")
        axes[1][col].set_ylabel(r"$\rho_S(k)$")
        axes[0][col].axhline(0.0, lw=0.6, color="0.6")
    axes[0][0].legend(fontsize=8)
    return fig


def _fig_complexities(table: Table, plt):
    groups = _grouped(table, keys=("space", "n"))
    ns = sorted({key[1] for key in groups})
    fig, axes = plt.subplots(4, 2, figsize=(9.2, 12.5))
    quantities = ("c_cr", "c_fs", "c_lmc")
    labels = (r"$C_{CR}$", r"$C_{FS}$", r"$C_{LMC}$")
    for row, (q, ql) in enumerate(zip(quantities, labels)):
        for col, space in enumerate(("x", "k")):
            ax = axes[row][col]
            for ni, n in enumerate(ns):
                g = groups.get((space, n))
                if g is None:
                    continue
                ax.plot(g["gamma_a"], g[q], color=_COLORS[ni % len(_COLORS)],
                        label=f"$n={n}$")
            ax.set_xlabel(r"$\gamma a$")
            ax.set_ylabel(ql + (" (x)" if space == "x" else " (k)"))
    # bottom row: the three ground-state complexities side by side
    for col, space in enumerate(("x", "k")):
        ax = axes[3][col]
        n0 = ns[0]
        g = groups.get((space, n0))
        if g is not None:
            for qi, (q, ql) in enumerate(zip(quantities, labels)):
                ax.plot(g["gamma_a"], g[q], color=_COLORS[qi % len(_COLORS)], label=ql)
        ax.set_xlabel(r"$\gamma a$")
        ax.set_ylabel(f"$n={ns[0]}$ " + ("(x)" if space == "x" else "(k)"))
        ax.legend(fontsize=8)
    axes[0][0].legend(fontsize=8)
    return fig


def render_figure(fig_id: int, table: Table, path: Path) -> Path:
    """Render the figure for ``fig_id`` from its table and save a PNG."""
    plt = _pyplot()
    if fig_id == 1:
        fig = _fig_eigenstates(table, plt)
    elif fig_id == 2:
        fig = _fig_classical(table, plt)
    elif fig_id == 3:
        fig = _fig_entropy_density(table, plt)
    else:
        fig = _fig_complexities(table, plt)
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
