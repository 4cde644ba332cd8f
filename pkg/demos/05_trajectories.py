"""Pole trajectories as gamma grows: crossings of the real axis and a collision.

Run: python3 demos/05_trajectories.py
"""

import warnings

import numpy as np

from ptfabry import LatticeParams, MatchingAmbiguity, sweep_trajectories

warnings.simplefilter("ignore", MatchingAmbiguity)
grid = np.linspace(0.05, 4.0, 400)

for L in (7, 6):
    tr = sweep_trajectories(LatticeParams(-1.0, 1.0, L), grid)
    print(f"L={L}: {tr.n_paths} right-half paths on {tr.gamma_grid.size} gamma values")
    for e in tr.events:
        print(f"    {e.kind:20s} gamma={e.gamma:.6f} k={e.k:.5f}")

# For odd L the middle pole keeps climbing up the line Re k = pi/2.
tr = sweep_trajectories(LatticeParams(-1.0, 1.0, 7), grid)
mid = np.argmin(np.abs(tr.paths[:, -1].real - np.pi / 2))
print("middle path Im k at gamma = 1.5, 2.5, 4:",
      [round(tr.paths[mid, np.argmin(np.abs(tr.gamma_grid - g))].imag, 4) for g in (1.5, 2.5, 4)])
