"""Discrete eigenvalues (S-matrix poles) under outgoing-wave boundary conditions.

With beta = e^{ik}, the pole condition D(k) = 4 t^2 sin^2 k + gamma^2 (e^{2ikL} - 1) = 0
becomes beta^2 D = (beta^2 - 1) Q(beta) with

    Q(beta) = -t^2 (beta^2 - 1) + gamma^2 beta^2 (1 + beta^2 + ... + beta^{2L-2}),

a polynomial of degree 2L. The factor beta^2 - 1 only carries the band-edge
points beta = +/-1 and is removed exactly. Q is even in beta, so poles come in
pairs k, k - pi; Q has real coefficients, so they also come in pairs k, -conj(k).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.linalg
import scipy.optimize

from .errors import DegenerateSpectrum, FitRejected, RootFindingFailure
from .fabry_perot import _require_pt, siegert_denominator
from .roots import aberth


class PoleLabel(str, enum.Enum):
    BOUND = "bound"
    ANTI_BOUND = "anti-bound"
    RESONANT = "resonant"
    ANTI_RESONANT = "anti-resonant"
    GAIN = "gain"


class PoleClass(NamedTuple):
    label: PoleLabel
    on_axis: bool


@dataclass(frozen=True)
class PoleSet:
    """Poles sorted by (Re k, Im k).

    ``residuals`` are ``|D(k)|`` at each pole. ``failures`` lists seeds whose
    iteration did not converge (windowed searches only).
    """

    params: object
    k: np.ndarray
    energies: np.ndarray
    labels: tuple
    on_axis: np.ndarray
    residuals: np.ndarray
    failures: tuple = ()

    def __len__(self):
        return self.k.size

    @property
    def beta(self):
        return np.exp(1j * self.k)

    def right_half(self):
        """Mask of poles with Re k in (0, pi]."""
        return self.k.real > 0


def siegert_polynomial(params):
    """Ascending coefficients of Q(beta), degree 2L.

    Raises
    ------
    DegenerateSpectrum
        For ``gamma == 0``: Q collapses to -t^2 (beta^2 - 1), whose roots are
        the band edges, so there are no genuine poles.
    """
    _require_pt(params)
    t2, g2, L = params.t_h**2, params.gamma**2, params.L
    if g2 == 0:
        raise DegenerateSpectrum("gamma = 0: the clean chain has no discrete poles")
    c = np.zeros(2 * L + 1)
    c[0] = t2
    c[2] -= t2
    c[2:2 * L + 1:2] += g2
    return c


def _d_prime(params, k):
    t, g, L = params.t_h, params.gamma, params.L
    return 4 * t * t * np.sin(2 * k) + 2j * L * g * g * np.exp(2j * k * L)


def _newton_polish(params, k, maxiter=30):
    """Polish each pole with Newton on D(k) without letting two poles merge."""
    k = np.array(k, dtype=complex)
    n = k.size
    if n > 1:
        sep = np.abs(k[:, None] - k[None, :]) + np.diag(np.full(n, np.inf))
        limit = 0.25 * sep.min(axis=1)
    else:
        limit = np.full(n, np.inf)
    out = k.copy()
    for i in range(n):
        ki = k[i]
        best, best_res = ki, abs(siegert_denominator(params, ki))
        for _ in range(maxiter):
            d = siegert_denominator(params, ki)
            dp = _d_prime(params, ki)
            if dp == 0:
                break
            step = d / dp
            ki = ki - step
            if abs(ki - k[i]) > limit[i]:
                break
            res = abs(siegert_denominator(params, ki))
            if res < best_res:
                best, best_res = ki, res
            if abs(step) <= 1e-16 * max(1.0, abs(ki)):
                break
        out[i] = best
    return out


def fold_strip(k):
    """Map Re k onto (-pi, pi]."""
    k = np.asarray(k, dtype=complex)
    re = np.remainder(k.real + np.pi, 2 * np.pi) - np.pi
    re = np.where(re <= -np.pi, re + 2 * np.pi, re)
    return re + 1j * k.imag


def classify_pole(k, axis_tol=1e-9, on_axis_tol=1e-10):
    """Label a pole by its position in the complex k plane.

    The lattice has two "imaginary axes", Re k = 0 and Re k = pi, on which
    beta is real; both count as bound (Im k > 0) or anti-bound (Im k < 0).
    Elsewhere: Im k < 0 is resonant for Re k > 0 and anti-resonant for
    Re k < 0; Im k >= 0 is a gain state, which only a non-Hermitian
    potential can produce. ``on_axis`` is set for ``|Im k| < on_axis_tol``;
    such real-axis poles (spectral singularities) are labelled gain
    regardless of the sign of the round-off in Im k.
    """
    k = complex(fold_strip(k))
    re, im = k.real, k.imag
    on_axis = abs(im) < on_axis_tol
    if abs(re) < axis_tol or abs(abs(re) - math.pi) < axis_tol:
        label = PoleLabel.BOUND if im >= 0 else PoleLabel.ANTI_BOUND
    elif im >= 0 or on_axis:
        label = PoleLabel.GAIN
    elif re > 0:
        label = PoleLabel.RESONANT
    else:
        label = PoleLabel.ANTI_RESONANT
    return PoleClass(label, on_axis)


def _residual_scale(params):
    return 4 * params.t_h**2 + params.gamma**2


def _make_poleset(params, k, residuals):
    order = np.lexsort((k.imag, k.real))
    k = k[order]
    residuals = residuals[order]
    classes = [classify_pole(z) for z in k]
    return PoleSet(
        params=params,
        k=k,
        energies=2 * params.t_h * np.cos(k),
        labels=tuple(c.label for c in classes),
        on_axis=np.array([c.on_axis for c in classes], dtype=bool),
        residuals=residuals,
    )


def find_poles(params, rtol=1e-9, maxiter=200):
    """All 2L poles of the PT pair.

    Aberth-Ehrlich iteration on Q(beta), then Newton polishing on D(k)
    itself, then mapping to the strip Re k in (-pi, pi].

    Raises
    ------
    DegenerateSpectrum
        ``gamma == 0``, or ``L == 1`` with ``gamma == |t_h|`` where the pole
        escapes to infinity.
    RootFindingFailure
        If some ``|D(k)|`` exceeds ``rtol * (4 t^2 + gamma^2)``. The partial
        PoleSet is attached as ``exc.partial``.
    """
    if not params.gamma > 0:
        if params.gamma == 0:
            raise DegenerateSpectrum("gamma = 0: the clean chain has no discrete poles")
        raise ValueError("find_poles expects gamma > 0")
    c = siegert_polynomial(params)
    if abs(c[-1]) <= 1e-14 * np.max(np.abs(c)):
        raise DegenerateSpectrum("leading coefficient of Q vanishes: a pole sits at infinity")
    beta, _, _ = aberth(c, maxiter=maxiter, tol=1e-13)
    k = fold_strip(-1j * np.log(beta))
    k = fold_strip(_newton_polish(params, k))
    residuals = np.abs(siegert_denominator(params, k))
    poles = _make_poleset(params, k, residuals)
    bad = poles.residuals > rtol * _residual_scale(params)
    if np.any(bad):
        raise RootFindingFailure(
            f"{int(bad.sum())} pole(s) above residual tolerance, worst k={poles.k[bad][0]!r}",
            roots=poles.k[bad], residuals=poles.residuals[bad], partial=poles)
    return poles


def pencil_matrices(params):
    """U, V, W of (beta^2 U + beta V + W) psi = 0 for arbitrary on-site potentials.

    The corner entries of U vanish, so the doubled pencil has two infinite
    eigenvalues.
    """
    t, L = params.t_h, params.L
    n = L + 1
    u = -t * np.eye(n, dtype=complex)
    u[0, 0] += t
    u[L, L] += t
    v = t * (np.eye(n, k=1) + np.eye(n, k=-1)).astype(complex)
    v[0, 0] += params.v0
    v[L, L] += params.vL
    w = -t * np.eye(n, dtype=complex)
    return u, v, w


def pencil_eigenvalues(params):
    """The 2L finite poles from the 2(L+1)-dimensional linear pencil.

    Solves [[0, I], [-W, -V]] x = beta [[I, 0], [0, U]] x and drops the two
    eigenvalues at infinity. Works for any on-site potentials.
    """
    u, v, w = pencil_matrices(params)
    n = u.shape[0]
    eye, zero = np.eye(n), np.zeros((n, n))
    a = np.block([[zero, eye], [-w, -v]])
    b = np.block([[eye, zero], [zero, u]])
    alpha, beta_h = scipy.linalg.eig(a, b, right=False, homogeneous_eigvals=True)
    weight = np.abs(beta_h) / (np.abs(alpha) + np.abs(beta_h))
    keep = np.argsort(weight)[::-1][: 2 * params.L]
    beta = alpha[keep] / beta_h[keep]
    k = fold_strip(-1j * np.log(beta))
    return k[np.lexsort((k.imag, k.real))]


def lorentzian_fit(pole, ks, T, neighbors=(), cap=1e12, min_spacing=5.0):
    """Fit A / ((k - c)^2 + w^2) to a sampled transmission peak near ``Re pole``.

    Parameters
    ----------
    pole : complex
    ks, T : array_like
        Sampled transmission probability.
    neighbors : iterable of complex
        Other poles; the fit is refused when one lies closer than
        ``min_spacing`` half-widths in Re k.

    Returns
    -------
    center, half_width, peak_height : float
    """
    pole = complex(pole)
    ks = np.asarray(ks, dtype=float)
    T = np.asarray(T, dtype=float)
    hw = abs(pole.imag)
    if hw < 1e-9 or not np.all(np.isfinite(T)) or T.max() >= cap:
        raise FitRejected(f"pole {pole!r} is on the real axis: peak is unbounded")
    others = [complex(z) for z in neighbors if abs(complex(z) - pole) > 1e-12]
    spacing = min((abs(z.real - pole.real) for z in others), default=math.inf)
    if spacing < min_spacing * hw:
        raise FitRejected(f"neighbouring pole within {spacing:.3g} < {min_spacing} half-widths")
    half = min(4 * hw, spacing / 2)
    sel = np.abs(ks - pole.real) <= half
    if np.count_nonzero(sel) < 5:
        raise FitRejected("fewer than 5 samples inside the fit window")
    x, y = ks[sel], T[sel]

    def model(k, amp, center, width):
        return amp / ((k - center) ** 2 + width**2)

    i_max = int(np.argmax(y))
    p0 = (y[i_max] * hw * hw, x[i_max], hw)
    try:
        popt, _ = scipy.optimize.curve_fit(model, x, y, p0=p0, maxfev=20000)
    except RuntimeError as exc:
        raise FitRejected(f"least-squares fit did not converge: {exc}") from exc
    amp, center, width = popt
    width = abs(width)
    return float(center), float(width), float(amp / (width * width))


def pole_in_window(params, k_guess, maxiter=50):
    """Newton on D(k) from a single seed; returns the converged pole."""
    k = complex(k_guess)
    for _ in range(maxiter):
        step = siegert_denominator(params, k) / _d_prime(params, k)
        k -= step
        if abs(step) < 1e-15 * max(1.0, abs(k)):
            break
    return k
