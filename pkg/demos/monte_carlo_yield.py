"""
Monte Carlo yield across input angles
=====================================

Sample the protocol the way an experiment would see it: for each input
angle, evolve to the per-angle optimal time, roll the Born rule once
per pair, and count survivors. The simulated yield lands on the
closed form 2 sin^2(theta), always below the input concurrence
sin(2 theta) -- distillation trades pairs for quality.
"""

import math
import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from pulsedistill import default_params, sweep_theta

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

grid = np.linspace(math.pi / 100, math.pi / 4, 40)
points = sweep_theta(grid, default_params(), n_pairs=20_000, seed=42)

x = grid / math.pi
c_in = [pt.c_initial for pt in points]
c_bar = [pt.c_bar_analytic for pt in points]
mc = [pt.c_bar_mc for pt in points]
se = [pt.std_error for pt in points]

fig, ax = plt.subplots(figsize=(6.0, 4.2))
ax.plot(x, c_in, "-", label=r"input concurrence $\sin 2\theta$")
ax.plot(x, c_bar, "--", label=r"average yield $2\sin^2\theta$")
ax.errorbar(x, mc, yerr=4 * np.asarray(se), fmt=".", ms=4, lw=0.8,
            label=r"Monte Carlo, $2\times10^4$ pairs ($4\sigma$ bars)")
ax.plot(x, [pt.efficiency for pt in points], ":", color="gray",
        label=r"efficiency $\tan\theta$")
ax.set_xlabel(r"$\theta/\pi$")
ax.set_ylabel("concurrence")
ax.legend(fontsize=8)
fig.tight_layout()
fig.savefig(OUT / "monte_carlo_yield.png", dpi=150)
print("wrote", OUT / "monte_carlo_yield.png")

worst = max(abs(m - a) / s for m, a, s in zip(mc, c_bar, se) if s > 0)
print(f"largest deviation of the sampled yield from the closed form: "
      f"{worst:.2f} standard errors over {len(points)} angles")
