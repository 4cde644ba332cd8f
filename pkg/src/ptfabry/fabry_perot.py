"""Closed forms for the PT pair +i*gamma (site 0) / -i*gamma (site L).

Everything here assumes the PT preset. Arbitrary on-site potentials go
through :mod:`ptfabry.direct` instead.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DivergentAmplitude, PoleOfAlpha, SeriesDivergent
from .single import EPS_DIV

PROB_CAP = 1e12


@dataclass(frozen=True)
class ScatteringAmplitudes:
    """Amplitudes for incidence from the left (plain) and from the right (``_rev``)."""

    t_amp: complex
    r_amp: complex
    t_amp_rev: complex
    r_amp_rev: complex
    t_prob: float = field(init=False)
    r_prob: float = field(init=False)
    t_prob_rev: float = field(init=False)
    r_prob_rev: float = field(init=False)
    defect_left: float = field(init=False)
    defect_right: float = field(init=False)
    band_edge: bool = False

    def __post_init__(self):
        tp, rp = abs(self.t_amp) ** 2, abs(self.r_amp) ** 2
        tpr, rpr = abs(self.t_amp_rev) ** 2, abs(self.r_amp_rev) ** 2
        object.__setattr__(self, "t_prob", tp)
        object.__setattr__(self, "r_prob", rp)
        object.__setattr__(self, "t_prob_rev", tpr)
        object.__setattr__(self, "r_prob_rev", rpr)
        object.__setattr__(self, "defect_left", tp + rp - 1.0)
        object.__setattr__(self, "defect_right", tpr + rpr - 1.0)


@dataclass(frozen=True)
class SingleBarrierSMatrix:
    r: complex
    t: complex
    r_tilde: complex
    t_tilde: complex

    def as_matrix(self):
        """[[R, T~], [T, R~]] in the column convention (left in, right in)."""
        return np.array([[self.r, self.t_tilde], [self.t, self.r_tilde]])


def _require_pt(params):
    if not params.is_pt:
        raise ValueError("closed forms need the PT preset v0=+i*gamma, vL=-i*gamma; "
                         "use ptfabry.direct for general potentials")


def siegert_denominator(params, k):
    """D(k) = 4 t^2 sin^2 k + gamma^2 (e^{2ikL} - 1), complex k allowed.

    Its zeros are the S-matrix poles.
    """
    t, g, L = params.t_h, params.gamma, params.L
    s = np.sin(k)
    return 4 * t * t * s * s + g * g * np.expm1(2j * k * L)


def _pt_closed(t, g, L, k):
    s = math.sin(k)
    ph = cmath.exp(2j * k * L) - 1.0
    den = 4 * t * t * s * s + g * g * ph
    t_amp = 4 * t * t * s * s / den
    r_amp = g * (2 * t * s - g) * ph / den
    r_rev = -g * (2 * t * s + g) * ph / den
    return t_amp, r_amp, r_rev, den


def pt_amplitudes(params, k, eps_div=EPS_DIV):
    """Closed-form amplitudes of the PT pair at a real wave number.

    Parameters
    ----------
    params : LatticeParams
        Must be the PT preset.
    k : float
        Wave number in ``(0, pi)``. The band edges ``0`` and ``pi`` are
        accepted and return the continuous limit (T -> 0, R -> -1 for
        ``gamma != 0``) with ``band_edge=True``.
    eps_div : float
        Threshold on ``|D(k)|`` below which the amplitude is reported as divergent.

    Returns
    -------
    ScatteringAmplitudes

    Raises
    ------
    DivergentAmplitude
        When a pole sits on the real axis at ``k``.
    """
    _require_pt(params)
    t, g, L = params.t_h, params.gamma, params.L
    if not 0.0 <= k <= math.pi:
        raise ValueError(f"k must lie in [0, pi], got {k!r}")
    if k == 0.0 or k == math.pi:
        if g == 0:
            return ScatteringAmplitudes(1, 0, 1, 0, band_edge=True)
        return ScatteringAmplitudes(0, -1, 0, -1, band_edge=True)
    t_amp, r_amp, r_rev, den = _pt_closed(t, g, L, k)
    if abs(den) < eps_div:
        raise DivergentAmplitude(
            f"PT-pair amplitude diverges at k={k!r}, gamma={g!r} (|D|={abs(den):.3g})",
            k=k, denominator=den)
    return ScatteringAmplitudes(t_amp, r_amp, t_amp, r_rev)


def pt_grid(params, ks, cap=PROB_CAP, eps_div=EPS_DIV):
    """Vectorised probabilities on a k grid with divergent samples capped.

    Returns a dict of arrays ``T, R, T_rev, R_rev, defect_left,
    defect_right`` plus a boolean ``divergent`` mask. Divergent samples
    are set to ``cap``; every value is clipped to ``[-cap, cap]``.
    """
    _require_pt(params)
    t, g, L = params.t_h, params.gamma, params.L
    ks = np.asarray(ks, dtype=float)
    s = np.sin(ks)
    ph = np.expm1(2j * ks * L)
    den = 4 * t * t * s * s + g * g * ph
    div = np.abs(den) < eps_div
    safe = np.where(div, 1.0, den)
    # complex division does not return exactly 1 for x / (x + 0j)
    t_amp = np.ones_like(safe) if g == 0 else 4 * t * t * s * s / safe
    r_amp = g * (2 * t * s - g) * ph / safe
    r_rev = -g * (2 * t * s + g) * ph / safe
    out = {
        "T": np.abs(t_amp) ** 2,
        "R": np.abs(r_amp) ** 2,
        "T_rev": np.abs(t_amp) ** 2,
        "R_rev": np.abs(r_rev) ** 2,
    }
    out["defect_left"] = out["T"] + out["R"] - 1.0
    out["defect_right"] = out["T_rev"] + out["R_rev"] - 1.0
    for key in list(out):
        out[key] = np.clip(np.where(div, cap, out[key]), -cap, cap)
    out["divergent"] = div
    return out


def single_barrier_smatrix(t_h, gamma_signed, k, eps_div=EPS_DIV):
    """S-matrix entries of one on-site potential ``+1j*gamma_signed``.

    A single site is left/right symmetric, so ``r_tilde == r`` and
    ``t_tilde == t``.
    """
    if not 0.0 < k < math.pi:
        raise ValueError(f"k must lie in (0, pi), got {k!r}")
    num = 2 * t_h * math.sin(k)
    den = num + gamma_signed
    if abs(den) < eps_div:
        raise DivergentAmplitude(f"single barrier diverges at k={k!r}", k=k, denominator=den)
    t = complex(num / den)
    r = complex(-gamma_signed / den)
    return SingleBarrierSMatrix(r=r, t=t, r_tilde=r, t_tilde=t)


def fp_series_sum(params, k, max_terms=100_000, rtol=1e-12):
    """Sum the multiple-bounce expansion term by term.

    Each bounce multiplies the running term by q = R_L * R~_0 * e^{2ikL}.
    The geometric closed form is deliberately not used. Summation goes on
    until the terms drop below machine precision (or ``max_terms``).

    Returns
    -------
    t_partial, r_partial : complex
    converged : bool
        True when ``|q| < 1`` and the last term added is below
        ``rtol * |partial sum|`` for both series.

    Raises
    ------
    SeriesDivergent
        If ``|q| >= 1``; the partial sums are attached to the exception.
    """
    _require_pt(params)
    t, g, L = params.t_h, params.gamma, params.L
    s0 = single_barrier_smatrix(t, g, k)
    sL = single_barrier_smatrix(t, -g, k)
    phase = cmath.exp(1j * k * L)
    q = sL.r * s0.r_tilde * phase * phase

    term_t = s0.t * sL.t
    term_r = s0.t * sL.r * s0.t_tilde * phase * phase
    t_sum = 0j
    bounce_sum = 0j
    tiny = np.finfo(float).eps / 4
    for _ in range(max_terms):
        t_sum += term_t
        bounce_sum += term_r
        last_t, last_r = abs(term_t), abs(term_r)
        if not (cmath.isfinite(t_sum) and cmath.isfinite(bounce_sum)):
            break
        if last_t <= tiny * abs(t_sum) and last_r <= tiny * abs(bounce_sum):
            break
        term_t *= q
        term_r *= q
    r_sum = s0.r + bounce_sum
    if abs(q) >= 1:
        raise SeriesDivergent(f"bounce ratio |q|={abs(q):.6g} >= 1 at k={k!r}",
                              t_partial=t_sum, r_partial=r_sum, ratio=q)
    converged = last_t <= rtol * abs(t_sum) and last_r <= rtol * abs(bounce_sum)
    return t_sum, r_sum, converged


def bounce_ratio(params, k):
    """q = R_L * R~_0 * e^{2ikL}, the ratio of the bounce series."""
    s0 = single_barrier_smatrix(params.t_h, params.gamma, k)
    sL = single_barrier_smatrix(params.t_h, -params.gamma, k)
    return sL.r * s0.r_tilde * cmath.exp(2j * k * params.L)


def alpha_modulation(t_h, gamma, k, eps_div=EPS_DIV):
    """alpha = (gamma - 2 t_h sin k) / (gamma + 2 t_h sin k).

    Links R = alpha (1 - T) and R~ = (1 - T) / alpha.
    """
    s2 = 2 * t_h * math.sin(k)
    den = gamma + s2
    if abs(den) < eps_div:
        raise PoleOfAlpha(f"alpha has a pole at k={k!r}", k=k, denominator=den)
    return (gamma - s2) / den


def _prob_denominator(t, g, L, k):
    s = math.sin(k)
    return 4 * t**4 * s**4 + g * g * (g * g - 4 * t * t * s * s) * math.sin(k * L) ** 2


def transmission_probability(params, k, eps_div=EPS_DIV):
    """T(k) written directly in terms of sines (no complex arithmetic)."""
    _require_pt(params)
    t, g, L = params.t_h, params.gamma, params.L
    den = _prob_denominator(t, g, L, k)
    if abs(den) < eps_div**2:
        raise DivergentAmplitude(f"T diverges at k={k!r}", k=k, denominator=den)
    return 4 * t**4 * math.sin(k) ** 4 / den


def transmission_deficit(params, k, eps_div=EPS_DIV):
    """1 - T(k) without cancellation: gamma^2 (gamma^2 - 4 t^2 sin^2 k) sin^2 kL / P.

    Subtracting T from 1 loses relative accuracy wherever T is close to 1
    (weak coupling, or near a Fabry-Perot resonance).
    """
    _require_pt(params)
    t, g, L = params.t_h, params.gamma, params.L
    den = _prob_denominator(t, g, L, k)
    if abs(den) < eps_div**2:
        raise DivergentAmplitude(f"T diverges at k={k!r}", k=k, denominator=den)
    s = math.sin(k)
    return g * g * (g * g - 4 * t * t * s * s) * math.sin(k * L) ** 2 / den


def reflection_probability(params, k, reverse=False, eps_div=EPS_DIV):
    """R(k), or R~(k) for incidence from the right when ``reverse``."""
    _require_pt(params)
    t, g, L = params.t_h, params.gamma, params.L
    den = _prob_denominator(t, g, L, k)
    if abs(den) < eps_div**2:
        raise DivergentAmplitude(f"R diverges at k={k!r}", k=k, denominator=den)
    sg = -g if reverse else g
    return g * g * (sg - 2 * t * math.sin(k)) ** 2 * math.sin(k * L) ** 2 / den


def unitarity_defects(params, k, eps_div=EPS_DIV):
    """(T + R - 1, T~ + R~ - 1) from the sine closed forms."""
    _require_pt(params)
    t, g, L = params.t_h, params.gamma, params.L
    if abs(siegert_denominator(params, k)) < eps_div:
        raise DivergentAmplitude(f"defects diverge at k={k!r}", k=k)
    den = _prob_denominator(t, g, L, k)
    s = math.sin(k)
    common = -4 * t * g * g * s * math.sin(k * L) ** 2
    return common * (g - 2 * t * s) / den, common * (-g - 2 * t * s) / den


def midpoint_transmission(t_h, gamma):
    """T amplitude at k = pi/2 for odd L: 2 t^2 / (2 t^2 - gamma^2)."""
    return 2 * t_h * t_h / (2 * t_h * t_h - gamma * gamma)


def last_pair_transmission(t_h, gamma, L):
    """T amplitude at k = pi/2 +/- pi/(2L) for even L."""
    c = t_h * t_h * (1 + math.cos(math.pi / L))
    return c / (c - gamma * gamma)


@dataclass(frozen=True)
class SpecialPoints:
    """Resonance and divergence loci of the PT pair.

    ``fp_resonances``: k = n pi / L, n = 1..L-1 (perfect transmission).
    ``divergence``: (n, k_n, gamma_n) with k_n = (2n-1) pi / (2L) and
    gamma_n = sqrt(2) |t_h| sin k_n.
    ``last_divergence``: the (k, gamma) entries reached last as gamma grows.
    ``bounded_from``: for even L, the strength sqrt(2 (1 + cos(pi/L))) |t_h|
    beyond which the last-pair transmission is bounded by one again.
    """

    L: int
    fp_resonances: tuple
    divergence: tuple
    last_divergence: tuple
    bounded_from: float = None
    notes: tuple = ()


def special_points(params):
    _require_pt(params)
    t, L = abs(params.t_h), params.L
    fp = tuple(n * math.pi / L for n in range(1, L))
    div = []
    for n in range(1, L + 1):
        kn = (2 * n - 1) * math.pi / (2 * L)
        div.append((n, kn, math.sqrt(2) * t * math.sin(kn)))
    notes = []
    bounded = None
    if L % 2:
        last = ((math.pi / 2, math.sqrt(2) * t),)
    else:
        gc = t * math.sqrt(1 + math.cos(math.pi / L))
        last = ((math.pi / 2 - math.pi / (2 * L), gc), (math.pi / 2 + math.pi / (2 * L), gc))
        bounded = math.sqrt(2) * gc
        notes.append(
            f"last pair diverges at gamma = {gc:.12g}; there T = c / (c - gamma^2) with "
            f"c = t_h^2 (1 + cos(pi/L)), so T <= 1 only from gamma = sqrt(2 c) = "
            f"{math.sqrt(2) * gc:.12g} on")
    return SpecialPoints(L, fp, tuple(div), last, bounded, tuple(notes))
