"""A single imaginary potential i*gamma and its exceptional point.

Run: python3 demos/01_single_scatterer.py
"""

import math

import numpy as np

from ptfabry import single_amplitudes, single_eigenvalues, two_site_spectrum
from ptfabry.errors import DivergentAmplitude

t = -1.0

# Two sites +i gamma / -i gamma: real spectrum until gamma = |t|, then a complex pair.
for g in (0.5, 1.0, 1.5):
    print(f"two-site pair, gamma={g}: E = {two_site_spectrum(t, g)}")

# One site in an infinite chain. The Siegert eigenvalues are +/- sqrt(4t^2 - gamma^2),
# so the exceptional point moves to gamma = 2|t|.
for g in (1.9, 2.0, 2.1):
    print(f"single site, gamma={g}: E = {single_eigenvalues(t, g)}")

# T(E) across the band. Below the exceptional point the transmission diverges
# at the two real eigenvalues; above it there is a single finite peak at E = 0.
E = np.linspace(-1.99, 1.99, 2001)
for g in (1.9, 2.1):
    T = []
    for e in E:
        try:
            T.append(single_amplitudes(t, g, math.acos(e / (2 * t))).t_prob)
        except DivergentAmplitude:
            T.append(np.inf)
    T = np.array(T)
    top = np.argsort(T)[-2:]
    print(f"gamma={g}: largest T = {T[top]} at E = {E[top]}")

# T - R = 1 holds for the amplitudes, so T + R - 1 is not zero: a source adds flux.
res = single_amplitudes(t, 1.0, math.pi / 2)
print(f"k=pi/2, gamma=1: T={res.t_amp}, R={res.r_amp}, T+R-1={res.sum_defect}")
