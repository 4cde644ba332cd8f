"""A single on-site scatterer i*gamma in an infinite chain."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DivergentAmplitude

EPS_DIV = 1e-12


@dataclass(frozen=True)
class SingleScatterResult:
    t_amp: complex
    r_amp: complex
    t_prob: float
    r_prob: float
    sum_defect: float


def _check_k(k):
    if not 0.0 < k < math.pi:
        raise ValueError(f"k must lie in (0, pi) for a propagating wave, got {k!r}")


def single_amplitudes(t_h, gamma, k, eps_div=EPS_DIV):
    """Transmission and reflection amplitudes of one on-site potential i*gamma.

    T = 2 t sin k / (2 t sin k + gamma), R = -gamma / (2 t sin k + gamma),
    so that T - R = 1 identically.

    Raises
    ------
    DivergentAmplitude
        If ``|2 t_h sin k + gamma| < eps_div``. For ``t_h < 0`` and
        ``0 < gamma < 2|t_h|`` this happens at ``sin k = gamma / (2|t_h|)``.
    """
    _check_k(k)
    num = 2 * t_h * math.sin(k)
    den = num + gamma
    if abs(den) < eps_div:
        raise DivergentAmplitude(
            f"single-scatterer amplitude diverges at k={k!r} (|den|={abs(den):.3g})",
            k=k, denominator=den)
    t_amp = complex(num / den)
    r_amp = complex(-gamma / den)
    t_prob = abs(t_amp) ** 2
    r_prob = abs(r_amp) ** 2
    return SingleScatterResult(t_amp, r_amp, t_prob, r_prob, t_prob + r_prob - 1.0)


def single_eigenvalues(t_h, gamma):
    """The two Siegert eigen-energies E = +/- sqrt(4 t_h^2 - gamma^2).

    Real below the exceptional point ``gamma = 2|t_h|``, purely imaginary
    above it. The first entry has non-negative real part (non-negative
    imaginary part when the real part is zero).
    """
    root = cmath.sqrt(complex(4 * t_h * t_h - gamma * gamma))
    if root.real < 0 or (root.real == 0 and root.imag < 0):
        root = -root
    return root, -root


def single_sum_rule(t_h, gamma, k, eps_div=EPS_DIV):
    """Closed form of T + R for the single scatterer."""
    _check_k(k)
    s = math.sin(k)
    if abs(2 * t_h * s + gamma) < eps_div:
        raise DivergentAmplitude(f"T + R diverges at k={k!r}", k=k)
    a = 4 * t_h * t_h * s * s + gamma * gamma
    return a / (a + 4 * t_h * gamma * s)
