"""Shared parameter records, the lattice dispersion and the two-site toy model.

The lattice constant is fixed to 1 everywhere in the lattice code, so wave
numbers are dimensionless and live on the strip Re k in (-pi, pi].
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class LatticeParams:
    """Tight-binding chain with on-site potentials at sites 0 and L.

    Parameters
    ----------
    t_h : float
        Hopping amplitude. The usual crystal convention is ``t_h < 0``.
    gamma : float
        Gain/loss strength. Used to build the PT preset when ``v0``/``vL``
        are not given.
    L : int
        Separation between the two scatterers (``L >= 1``).
    v0, vL : complex, optional
        On-site potentials. Default to ``+1j*gamma`` and ``-1j*gamma``.

    Notes
    -----
    With ``t_h > 0`` (or ``gamma < 0``) the source and sink swap roles.
    Such inputs are evaluated verbatim; ``off_convention`` is set so callers
    can tell.
    """

    t_h: float
    gamma: float
    L: int
    v0: complex = None
    vL: complex = None
    off_convention: bool = field(init=False)

    def __post_init__(self):
        if int(self.L) != self.L or self.L < 1:
            raise ValueError(f"L must be an integer >= 1, got {self.L!r}")
        if self.t_h == 0:
            raise ValueError("t_h must be nonzero")
        object.__setattr__(self, "L", int(self.L))
        object.__setattr__(self, "t_h", float(self.t_h))
        object.__setattr__(self, "gamma", float(self.gamma))
        if self.v0 is None:
            object.__setattr__(self, "v0", 1j * self.gamma)
        if self.vL is None:
            object.__setattr__(self, "vL", -1j * self.gamma)
        object.__setattr__(self, "v0", complex(self.v0))
        object.__setattr__(self, "vL", complex(self.vL))
        object.__setattr__(self, "off_convention", self.t_h > 0 or self.gamma < 0)

    @classmethod
    def pt(cls, t_h, gamma, L):
        return cls(t_h, gamma, L)

    @property
    def is_pt(self):
        """True when (v0, vL) is the +i gamma / -i gamma pair."""
        return self.v0 == 1j * self.gamma and self.vL == -1j * self.gamma

    def mirrored(self):
        """The same chain seen from the right: v0 and vL swap places."""
        return LatticeParams(self.t_h, -self.gamma, self.L, v0=self.vL, vL=self.v0)

    def with_gamma(self, gamma):
        """PT preset with a different strength (keeps t_h and L)."""
        return LatticeParams(self.t_h, gamma, self.L)


@dataclass(frozen=True)
class ComplexWaveNumber:
    """A complex wave number folded onto Re k in (-pi, pi], with beta = e^{ik}."""

    k: complex
    beta: complex = field(init=False)

    def __post_init__(self):
        k = complex(self.k)
        re = math.remainder(k.real, 2 * math.pi)
        if re <= -math.pi:
            re += 2 * math.pi
        k = complex(re, k.imag)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "beta", cmath.exp(1j * k))

    @classmethod
    def from_beta(cls, beta):
        return cls(-1j * cmath.log(beta))

    def __complex__(self):
        return self.k


def _as_k(k):
    if isinstance(k, ComplexWaveNumber):
        return k.k
    return k


def dispersion(params, k):
    """Band energy E(k) = 2 t_h cos k.

    ``params`` may be a :class:`LatticeParams` or a bare hopping value.
    Accepts real or complex ``k``, scalars or arrays.
    """
    t_h = params.t_h if isinstance(params, LatticeParams) else params
    return 2 * t_h * np.cos(_as_k(k))


def two_site_spectrum(t_h, gamma):
    """Eigenvalues of the 2x2 matrix [[i gamma, t_h], [t_h, -i gamma]].

    Returns ``(+root, -root)`` with the principal branch of
    ``sqrt(t_h**2 - gamma**2)``. Real for ``|gamma| < |t_h|``, imaginary
    beyond, coalescing at the exceptional point ``|gamma| = |t_h|``.
    """
    root = cmath.sqrt(complex(t_h * t_h - gamma * gamma))
    return root, -root
