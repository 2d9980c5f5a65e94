"""Impermanent loss of power-law pools, two models side by side.

The factor model divides the classic constant-product IL by
g(n) = (n+1)^2/(4n); the exact model evaluates 1 - (1+eps)^(-1/(n+1))
directly. They agree for small moves and split apart for large ones, so both
are printed. Saves impermanent_loss_curves.png if matplotlib is available.
"""

import numpy as np

from powerlaw_amm import (
    il_improvement_factor,
    il_powerlaw_exact,
    il_proposed_scaled,
    il_traditional,
    sweep_il,
)

print("Impermanent loss at a 100x price move:")
trad = il_traditional(100)
print(f"  constant product (n=1):   {trad:.1%}")
for n in (2, 4, 5):
    print(
        f"  n={n}: factor model {il_proposed_scaled(100, n):.1%}"
        f"  /  exact model {il_powerlaw_exact(99, n):.1%}"
        f"  (g({n}) = {il_improvement_factor(n):.4f})"
    )
improvement = (trad - il_proposed_scaled(100, 4)) / trad
print(f"\nAt n=4 the factor model cuts IL from {trad:.1%} to "
      f"{il_proposed_scaled(100, 4):.1%}, a {improvement:.1%} relative improvement.")

rows = sweep_il(m_grid=np.logspace(0, 3, 200), n_values=[1, 2, 3, 4, 5])
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 2, figsize=(11, 4.5), sharey=True)
    for n in (1, 2, 3, 4, 5):
        pts = [(r["m"], r["il_scaled"]) for r in rows if r["n"] == n]
        axes[0].plot(*zip(*pts), label=f"n={n}")
        pts = [(r["m"], r["il_exact"]) for r in rows if r["n"] == n]
        axes[1].plot(*zip(*pts), label=f"n={n}")
    for ax, title in zip(axes, ("factor model", "exact model")):
        ax.set_xscale("log")
        ax.set_xlabel("price multiplier m")
        ax.set_title(title)
        ax.legend()
    axes[0].set_ylabel("impermanent loss")
    fig.tight_layout()
    fig.savefig("impermanent_loss_curves.png", dpi=120)
    print("saved impermanent_loss_curves.png")
except ImportError:
    print("matplotlib not installed; skipping the plot")
