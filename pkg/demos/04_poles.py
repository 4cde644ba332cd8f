"""S-matrix poles: polynomial roots, pencil eigenvalues and their labels.

Run: python3 demos/04_poles.py
"""

import math

import numpy as np

from ptfabry import LatticeParams, find_poles, pencil_eigenvalues

for g in (0.5, 4.0, 1e3):
    p = LatticeParams(-1.0, g, 7)
    poles = find_poles(p)
    print(f"gamma={g}: {len(poles)} poles, max |D| = {poles.residuals.max():.1e}")
    for k, lab in zip(poles.k, poles.labels):
        if k.real > 0:
            print(f"    k = {k.real:+.5f} {k.imag:+.3e}i  {lab.value}")

# Both routes give the same set.
p = LatticeParams(-1.0, 1.7, 6)
a = np.exp(1j * find_poles(p).k)
b = np.exp(1j * pencil_eigenvalues(p))
print("pencil vs polynomial:", max(np.min(np.abs(b - z)) for z in a))

# At a divergence point a pole sits on the real axis.
kn = 3 * math.pi / 14
poles = find_poles(LatticeParams(-1.0, math.sqrt(2) * math.sin(kn), 7))
print("pole nearest k_2:", poles.k[np.argmin(np.abs(poles.k - kn))], "vs", kn)
