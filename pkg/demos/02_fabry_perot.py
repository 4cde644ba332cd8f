"""Two scatterers +i gamma (site 0) and -i gamma (site L): spectra in both regimes.

Run: python3 demos/02_fabry_perot.py
"""

import math

import numpy as np

from ptfabry import LatticeParams, pt_amplitudes, pt_grid, special_points

L = 7
ks = np.linspace(1e-3, math.pi - 1e-3, 4001)

# Weak coupling: transmission can exceed one and diverges on a ladder of
# (k_n, gamma_n) points.
sp = special_points(LatticeParams(-1.0, 1.0, L))
for n, k_n, g_n in sp.divergence:
    print(f"divergence n={n}: k={k_n:.4f}, gamma={g_n:.4f}")

# At gamma = 1 and k = pi/2 the midpoint value is T = 2 (amplitude).
amp = pt_amplitudes(LatticeParams(-1.0, 1.0, L), math.pi / 2)
print(f"gamma=1, k=pi/2: T={amp.t_amp.real:.6f}, R={amp.r_amp.real:.6f}")

# Strong coupling (gamma > sqrt(2)|t| for odd L): Fabry-Perot peaks bounded by one
# at k = n pi / L, with left and right unitarity defects of opposite sign.
for g in (2.5, 4.0):
    grid = pt_grid(LatticeParams(-1.0, g, L), ks)
    print(f"gamma={g}: max T = {grid['T'].max():.12f}, "
          f"min defect_left = {grid['defect_left'].min():.3e}, "
          f"max defect_right = {grid['defect_right'].max():.3e}")
    for n in range(1, L):
        a = pt_amplitudes(LatticeParams(-1.0, g, L), n * math.pi / L)
        print(f"    k = {n}pi/{L}: T = {a.t_prob:.15f}, R = {a.r_prob:.2e}")

# Even L: the last pair of divergences appears together at k = pi/2 +/- pi/(2L).
print(special_points(LatticeParams(-1.0, 1.0, 6)).last_divergence)
