"""Scattering by a PT-symmetric pair of imaginary potentials on a tight-binding chain.

Closed forms, a direct matrix solve and a multiple-bounce series give the
transmission and reflection amplitudes; a polynomial root finder and a
linearised eigenvalue pencil give the S-matrix poles; a delta-potential
model gives the continuum limit.
"""

__version__ = "0.1.0"

from .continuum import (ContinuumParams, continuum_amplitudes, continuum_poles,
                        lattice_continuum_check)
from .direct import direct_amplitudes, build_matrix, solve_scattering
from .errors import (BandEdge, DegenerateSpectrum, DivergentAmplitude, FitRejected,
                     MatchingAmbiguity, PoleOfAlpha, PTScatteringError, RootFindingFailure,
                     SeriesDivergent, SingularMatrix)
from .fabry_perot import (ScatteringAmplitudes, fp_series_sum, pt_amplitudes, pt_grid,
                          special_points, transmission_deficit, unitarity_defects)
from .model import ComplexWaveNumber, LatticeParams, dispersion, two_site_spectrum
from .siegert import PoleLabel, PoleSet, find_poles, pencil_eigenvalues
from .single import single_amplitudes, single_eigenvalues
from .trajectory import Trajectory, sweep_trajectories
