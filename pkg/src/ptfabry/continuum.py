"""The delta-potential limit a -> 0 at fixed length L~ = L a.

Units are hbar^2 / 2m = 1, so E = k^2 and the strength gamma~ has units of
inverse length. The lattice counterpart has t_h = -1/a^2, on-site strengths
+/- i gamma~/a (a delta function of weight gamma~ spread over one cell) and
lattice wave number k a.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergentAmplitude
from .fabry_perot import ScatteringAmplitudes, pt_amplitudes
from .model import LatticeParams
from .siegert import PoleSet, classify_pole, find_poles
from .single import EPS_DIV


@dataclass(frozen=True)
class ContinuumParams:
    gamma_tilde: float
    L_tilde: float

    def __post_init__(self):
        if not self.gamma_tilde >= 0:
            raise ValueError("gamma_tilde must be >= 0")
        if not self.L_tilde > 0:
            raise ValueError("L_tilde must be > 0")

    def lattice(self, a):
        """Lattice parameters approximating this model at spacing ``a``."""
        L = max(1, int(round(self.L_tilde / a)))
        return LatticeParams(t_h=-1.0 / a**2, gamma=self.gamma_tilde / a, L=L)


def continuum_denominator(p, k):
    """D(k) = 4k^2 + gamma~^2 (e^{2ikL~} - 1); complex k allowed."""
    return 4 * k * k + p.gamma_tilde**2 * np.expm1(2j * k * p.L_tilde)


def _d_prime(p, k):
    return 8 * k + 2j * p.L_tilde * p.gamma_tilde**2 * np.exp(2j * k * p.L_tilde)


def _scale(p, k):
    return 4 * abs(k) ** 2 + p.gamma_tilde**2


def continuum_amplitudes(p, k, eps_div=EPS_DIV):
    """Transmission and reflection amplitudes of the continuum PT pair.

    Raises
    ------
    DivergentAmplitude
        ``|D(k)| <= eps_div * (4k^2 + gamma~^2)``.
    """
    if not k > 0:
        raise ValueError("k must be positive")
    g = p.gamma_tilde
    ph = cmath.exp(2j * k * p.L_tilde) - 1.0
    den = 4 * k * k + g * g * ph
    if abs(den) <= eps_div * _scale(p, k):
        raise DivergentAmplitude(f"continuum amplitudes diverge at k={k!r}", k=k, denominator=den)
    t_amp = 4 * k * k / den
    r_amp = -g * (2 * k + g) * ph / den
    r_rev = g * (2 * k - g) * ph / den
    return ScatteringAmplitudes(t_amp, r_amp, t_amp, r_rev)


def divergence_points(p, n_max=6):
    """Wave numbers k_n = (2n-1) pi / (2 L~) and the strengths sqrt(2) k_n that diverge there."""
    n = np.arange(1, n_max + 1)
    k = (2 * n - 1) * math.pi / (2 * p.L_tilde)
    return k, math.sqrt(2) * k


def _newton(p, k0, maxiter=60):
    k = complex(k0)
    for _ in range(maxiter):
        dp = _d_prime(p, k)
        if dp == 0:
            return k, False
        step = continuum_denominator(p, k) / dp
        k -= step
        if not cmath.isfinite(k):
            return k, False
        if abs(step) <= 1e-15 * max(1.0, abs(k)):
            return k, True
    return k, False


def continuum_poles(p, k_window=None, seeds=None, tol=1e-10):
    """Poles of the continuum model seeded inside a window of Re k.

    Parameters
    ----------
    p : ContinuumParams
    k_window : (float, float), optional
        ``0 < k_min < k_max``; defaults to ``(0, 6 pi / L~]`` (with k_min a
        tiny positive number).
    seeds : array_like, optional
        Starting points. Defaults to ``n pi / L~`` and ``(2n-1) pi / (2 L~)``
        inside the window.
    tol : float
        A root is accepted when ``|D| < tol * (4|k|^2 + gamma~^2)``.

    Returns
    -------
    PoleSet
        Roots with Re k inside the window, deduplicated at 1e-8. Seeds that
        fail or leave the window are listed in ``failures``; they are not
        fatal since the equation has infinitely many roots.
    """
    L = p.L_tilde
    k_min, k_max = k_window if k_window is not None else (1e-12, 6 * math.pi / L)
    if not 0 < k_min < k_max:
        raise ValueError("window must satisfy 0 < k_min < k_max")
    if seeds is None:
        n = np.arange(0, int(k_max * L / math.pi) + 2)
        cand = np.concatenate([n * math.pi / L, (2 * n + 1) * math.pi / (2 * L)])
        seeds = np.sort(cand[(cand >= k_min) & (cand <= k_max)])
    roots, failures = [], []
    if p.gamma_tilde > 0:
        for s in np.asarray(seeds, dtype=complex):
            k, ok = _newton(p, s)
            res = abs(continuum_denominator(p, k)) if cmath.isfinite(k) else math.inf
            if not ok and not res < tol * _scale(p, k):
                failures.append((complex(s), complex(k), float(res)))
                continue
            if not res < tol * _scale(p, k) or not k_min <= k.real <= k_max:
                failures.append((complex(s), complex(k), float(res)))
                continue
            if all(abs(k - r) > 1e-8 for r in roots):
                roots.append(k)
    k = np.array(roots, dtype=complex)
    order = np.lexsort((k.imag, k.real))
    k = k[order]
    classes = [classify_pole(z) for z in k]
    return PoleSet(
        params=p,
        k=k,
        energies=k * k,
        labels=tuple(c.label for c in classes),
        on_axis=np.array([c.on_axis for c in classes], dtype=bool),
        residuals=np.abs(continuum_denominator(p, k)),
        failures=tuple(failures),
    )


@dataclass(frozen=True)
class ConvergenceReport:
    a: np.ndarray
    L: np.ndarray
    err_T: np.ndarray
    err_R: np.ndarray
    T_cont: float
    R_cont: float

    @property
    def monotone(self):
        return bool(np.all(np.diff(self.err_T) < 0) and np.all(np.diff(self.err_R) <= 0))


def lattice_continuum_check(gamma_tilde, L_tilde, a_list, k):
    """Compare lattice and continuum transmission/reflection probabilities.

    Each lattice uses ``t_h = -1/a^2``, strength ``gamma~/a``,
    ``L = round(L~/a)`` and wave number ``k a``. Errors are absolute
    differences of T and R.
    """
    p = ContinuumParams(gamma_tilde, L_tilde)
    cont = continuum_amplitudes(p, k)
    a_arr = np.asarray(a_list, dtype=float)
    Ls, eT, eR = [], [], []
    for a in a_arr:
        lat = p.lattice(a)
        amp = pt_amplitudes(lat, k * a)
        Ls.append(lat.L)
        eT.append(abs(amp.t_prob - cont.t_prob))
        eR.append(abs(amp.r_prob - cont.r_prob))
    return ConvergenceReport(a_arr, np.array(Ls), np.array(eT), np.array(eR),
                             cont.t_prob, cont.r_prob)


def divergence_offsets(gamma_tilde, L_tilde, a_list, k_target):
    """Distance between the continuum pole near ``k_target`` and the nearest lattice pole.

    Lattice poles are rescaled by 1/a before comparison. Returns
    ``(continuum_pole, offsets)``.
    """
    p = ContinuumParams(gamma_tilde, L_tilde)
    k_c, ok = _newton(p, k_target)
    if not ok:
        raise ValueError(f"no continuum pole found near {k_target!r}")
    offsets = []
    for a in a_list:
        poles = find_poles(p.lattice(a))
        offsets.append(float(np.min(np.abs(poles.k / a - k_c))))
    return k_c, np.array(offsets)
