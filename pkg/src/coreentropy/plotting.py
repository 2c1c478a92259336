"""Figure rendering for sweep output (entropy against the external angle)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def render_sweep(rows, path: str, title: str = "Core entropy of the quadratic family"):
    """Scatter log rho against theta and write the figure to *path*.

    The file format follows the extension (png, pdf, svg, ...).
    """
    thetas = [r.theta_num / r.theta_den for r in rows]
    values = [r.log_rho for r in rows]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.plot(thetas, values, ".", markersize=1.5, color="tab:blue")
    ax.set_xlabel(r"external angle $\theta$")
    ax.set_ylabel(r"$h(\theta) = \log \rho$")
    ax.set_xlim(0, 1)
    ax.set_ylim(bottom=0)
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=200)
    plt.close(fig)
