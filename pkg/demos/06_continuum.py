"""The delta-potential limit: lattice results converge as the spacing shrinks.

Run: python3 demos/06_continuum.py
"""

import math

from ptfabry import ContinuumParams, continuum_amplitudes, continuum_poles, lattice_continuum_check
from ptfabry.continuum import divergence_offsets

rep = lattice_continuum_check(1.0, 3.0, [0.1, 0.05, 0.025, 0.0125], 0.5)
for a, L, eT, eR in zip(rep.a, rep.L, rep.err_T, rep.err_R):
    print(f"a={a:<7} L={L:<4} |dT|={eT:.2e} |dR|={eR:.2e}")

# Divergence at k = pi/6 for L~ = 3 when gamma~ = sqrt(2) pi / 6.
g = math.sqrt(2) * math.pi / 6
poles = continuum_poles(ContinuumParams(g, 3.0))
print("continuum poles:", poles.k)
k_c, off = divergence_offsets(g, 3.0, [0.1, 0.05, 0.025], math.pi / 6)
print("lattice pole offsets:", off)

# Strong coupling: Fabry-Perot peaks at k = n pi / L~, poles just above the axis.
print(continuum_amplitudes(ContinuumParams(20.0, 3.0), math.pi / 3).t_prob)
print(continuum_poles(ContinuumParams(20.0, 3.0)).k[:3])
