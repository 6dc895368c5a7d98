"""Sweep figure rendering (optional companion to the CSV output)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def render_sweep_figure(params, values, errors, param_path, unit,
                        out_path, log_axes=False):
    """Plot |value| vs the swept parameter and save to out_path.

    Log-log axes when `log_axes` (set for log-spaced sweeps); error bars are
    the quadrature estimates.
    """
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    abs_vals = [abs(v) for v in values]
    ax.errorbar(params, abs_vals, yerr=errors, marker="o", markersize=3,
                linewidth=1.0, capsize=2)
    if log_axes and all(p > 0 for p in params) and all(v > 0 for v in abs_vals):
        ax.set_xscale("log")
        ax.set_yscale("log")
    ax.set_xlabel(param_path)
    ax.set_ylabel(f"|value| [{unit}]")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
