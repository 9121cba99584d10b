"""Matplotlib figures written next to the tabular output."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .emit import Table  # noqa: E402
from .force import casimir_ideal  # noqa: E402

_STYLE = {
    "font.size": 11,
    "axes.labelsize": 12,
    "legend.frameon": False,
    "savefig.dpi": 150,
    "figure.figsize": (6.0, 4.0),
}


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)


def plot_compare(table: Table, path) -> None:
    """Percent difference against ``L/lambda_p``, one curve per material, 1 % guide line."""
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        x = np.array([row[0] for row in table.rows], dtype=float)
        for j, name in enumerate(table.columns[1:], start=1):
            y = np.array([row[j] for row in table.rows], dtype=float)
            ax.loglog(x, y, marker="o", ms=3, label=name.replace("delta_percent_", ""))
        ax.axhline(1.0, color="0.5", lw=0.8, ls="--")
        ax.set_xlabel(r"$L/\lambda_p$")
        ax.set_ylabel(r"$\Delta\%$")
        ax.legend()
        _save(fig, path)


def plot_sweep(table: Table, path) -> None:
    """Pressure normalised to the ideal-mirror value against ``L/lambda_p``."""
    cols = table.columns
    x = np.array([row[0] for row in table.rows], dtype=float)
    L = np.array([row[cols.index("L_m")] for row in table.rows], dtype=float)
    ideal = casimir_ideal(L)
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        for name in cols:
            if name.endswith("_Pa") and not name.startswith("abs_error"):
                y = np.array([row[cols.index(name)] for row in table.rows], dtype=float)
                ax.semilogx(x, y / ideal, marker="o", ms=3, label=name.replace("_Pa", ""))
        ax.set_xlabel(r"$L/\lambda_p$")
        ax.set_ylabel(r"$F/F_{\mathrm{Casimir}}$")
        ax.legend()
        _save(fig, path)
