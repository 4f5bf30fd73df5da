"""Figures for a propagated bound table."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .bounds import BoundTable, ceil_sqrt, ub_cop3, ub_thm5  # noqa: E402

STATUS_COLORS = {"exact": "black", "range": "tab:orange", "hi-only": "tab:blue", "lo-only": "tab:green"}


def plot_bounds(table: BoundTable, path, title: str | None = None) -> None:
    """Plot f(n) - n bounds against n, with the generic sqrt-type caps for reference.

    Subtracting n keeps the whole range on one readable scale.
    """
    ns = sorted(table.intervals)
    fig, ax = plt.subplots(figsize=(10, 4.5))

    xs = [n for n in ns if n >= 2]
    ax.plot(xs, [ub_cop3(n) - n for n in xs], color="0.6", lw=1, label="n + ceil(sqrt(n-1)) + 1")
    ax.plot(xs, [ceil_sqrt(n) for n in xs], color="0.6", lw=1, ls=":", label="n + ceil(sqrt(n))")
    t5 = [(n, ub_thm5(n)) for n in xs if ub_thm5(n) is not None]
    if t5:
        ax.scatter([n for n, _ in t5], [b - n for n, b in t5], marker="_", s=40, color="tab:red",
                   label="even-n refinement", zorder=3)

    for status, color in STATUS_COLORS.items():
        pts = [table[n] for n in ns if table[n].status == status]
        if not pts:
            continue
        lo = [iv for iv in pts if iv.lo is not None]
        hi = [iv for iv in pts if iv.hi is not None]
        if status == "exact":
            ax.scatter([iv.n for iv in lo], [iv.lo - iv.n for iv in lo], s=10, color=color, label=status, zorder=4)
            continue
        if status == "range":
            ax.vlines([iv.n for iv in pts], [iv.lo - iv.n for iv in pts], [iv.hi - iv.n for iv in pts],
                      color=color, lw=2.5, label=status, zorder=4)
        else:
            ax.scatter([iv.n for iv in lo], [iv.lo - iv.n for iv in lo], marker="^", s=14, color=color, zorder=4)
            ax.scatter([iv.n for iv in hi], [iv.hi - iv.n for iv in hi], marker="v", s=14, color=color,
                       label=status, zorder=4)

    ax.set_xlabel("n")
    ax.set_ylabel("bound on f(n) - n")
    ax.set_title(title or f"f(n) = R(C4, K1,n) bounds, {table.seed_mode} seeds, n <= {table.n_max}")
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8, loc="upper left")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
