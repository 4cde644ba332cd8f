"""Cross-route oracle suites behind ``ptfabry verify``.

Every check compares two independent computations of the same quantity.
Levels: ``quick`` (well under a second), ``default`` and ``full`` (more
samples, larger L). Random samples are drawn from a seeded generator, so a
given (level, seed) pair always produces the same report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .continuum import ContinuumParams, continuum_denominator, lattice_continuum_check
from .direct import (amplitudes_from_cofactors, build_matrix, cofactors, d_n_recursion,
                     det_closed_form, direct_amplitudes, numeric_det, numeric_minor,
                     solve_scattering)
from .errors import SeriesDivergent
from .fabry_perot import (alpha_modulation, bounce_ratio, fp_series_sum, pt_amplitudes,
                          siegert_denominator, transmission_deficit, unitarity_defects)
from .model import LatticeParams
from .siegert import find_poles, fold_strip, pencil_eigenvalues
from .single import single_eigenvalues

LEVELS = {
    "quick": dict(samples=100, det_L=6, det_k=10, pole_L=5, alpha=100, continuum=False),
    "default": dict(samples=1000, det_L=20, det_k=50, pole_L=10, alpha=1000, continuum=True),
    "full": dict(samples=5000, det_L=30, det_k=100, pole_L=14, alpha=5000, continuum=True),
}


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    worst: float
    tol: float
    count: int

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: worst={self.worst:.3e} tol={self.tol:.0e} n={self.count}"


def _check(name, errors, tol):
    errors = np.asarray(errors, dtype=float)
    worst = float(errors.max()) if errors.size else 0.0
    return Check(name, bool(errors.size and worst < tol), worst, tol, int(errors.size))


def random_samples(rng, n, gamma_max=4.0, L_max=12, k_margin=0.05, min_den=1e-6):
    """Random PT-pair samples (t_h = -1) away from real-axis poles.

    Returns a list of ``(LatticeParams, k)``.
    """
    out = []
    while len(out) < n:
        g = gamma_max * (1.0 - rng.random())
        L = int(rng.integers(1, L_max + 1))
        k = rng.uniform(k_margin, math.pi - k_margin)
        p = LatticeParams(-1.0, g, L)
        if abs(siegert_denominator(p, k)) < min_den:
            continue
        out.append((p, k))
    return out


def route_checks(samples):
    e_band, e_dense, e_cof, e_series, e_rev = [], [], [], [], []
    for p, k in samples:
        ref = pt_amplitudes(p, k)
        m = build_matrix(p, k)
        for method, bucket in (("banded", e_band), ("dense", e_dense)):
            sol = solve_scattering(m, p, method=method)
            bucket.append(max(abs(sol.t_amp - ref.t_amp), abs(sol.r_amp - ref.r_amp)))
        rev = direct_amplitudes(p, k)
        e_rev.append(max(abs(rev.t_amp_rev - ref.t_amp_rev), abs(rev.r_amp_rev - ref.r_amp_rev)))
        t_c, r_c = amplitudes_from_cofactors(p, k)
        e_cof.append(max(abs(t_c - ref.t_amp), abs(r_c - ref.r_amp)))
        if abs(bounce_ratio(p, k)) < 0.95:
            try:
                t_s, r_s, _ = fp_series_sum(p, k)
            except SeriesDivergent:
                continue
            e_series.append(max(abs(t_s - ref.t_amp), abs(r_s - ref.r_amp)))
    return [
        _check("closed form vs banded solve", e_band, 1e-10),
        _check("closed form vs dense LU solve", e_dense, 1e-10),
        _check("closed form vs cofactor assembly", e_cof, 1e-10),
        _check("right incidence: closed form vs mirrored-chain solve", e_rev, 1e-10),
        _check("closed form vs bounce series (|q|<0.95)", e_series, 1e-9),
    ]


def determinant_checks(L_max, n_k):
    ks = np.linspace(0.05, math.pi - 0.05, n_k)
    e_det, e_minor = [], []
    for L in range(1, L_max + 1):
        p = LatticeParams(-1.0, 0.7, L)
        for k in ks:
            m = build_matrix(p, k)
            ref = det_closed_form(p, k)
            e_det.append(abs(numeric_det(m) - ref) / abs(ref))
            c_corner, c_diag = cofactors(p, k)
            e_minor.append(abs(numeric_minor(m, 0, L) - c_corner) / abs(c_corner))
            e_minor.append(abs(numeric_minor(m, 0, 0) - c_diag) / max(abs(c_diag), 1e-300))
    e_dn = []
    for k in ks[:: max(1, n_k // 10)]:
        for n in range(1, 51):
            closed, it = d_n_recursion(-1.0, k, n)
            e_dn.append(abs(closed - it) / max(1.0, abs(closed)))
    return [
        _check("det M_L: LU vs closed form (relative)", e_det, 1e-9),
        _check("d_n: recurrence vs closed form", e_dn, 1e-10),
        _check("cofactors: numeric minors vs closed form (relative)", e_minor, 1e-9),
    ]


def pole_checks(L_max, gammas=(0.3, 1.0, 2.5, 4.0)):
    e_count, e_res, e_close, e_pencil = [], [], [], []
    for L in range(1, L_max + 1):
        for g in gammas:
            p = LatticeParams(-1.0, g, L)
            if L == 1 and g == 1.0:
                continue
            poles = find_poles(p)
            e_count.append(abs(len(poles) - 2 * L))
            e_res.append(float(poles.residuals.max()) / (4 + g * g))
            beta = poles.beta
            mirror = np.exp(1j * fold_strip(-np.conj(poles.k)))
            e_close.append(max(np.min(np.abs(beta - b)) for b in mirror))
            pen = np.exp(1j * pencil_eigenvalues(p))
            e_pencil.append(max(np.min(np.abs(pen - b)) for b in beta))
    return [
        _check("pole count equals 2L", e_count, 0.5),
        _check("pole residual |D| / (4t^2 + gamma^2)", e_res, 1e-9),
        _check("pole set closed under k -> -conj(k)", e_close, 1e-8),
        _check("pencil route vs polynomial route", e_pencil, 1e-7),
    ]


def identity_checks(samples):
    e_alpha, e_alpha_rev, e_trev, e_defect = [], [], [], []
    for p, k in samples:
        amp = pt_amplitudes(p, k)
        a = alpha_modulation(p.t_h, p.gamma, k)
        one_t = transmission_deficit(p, k)
        e_alpha.append(abs(amp.r_prob - a * one_t) / max(abs(amp.r_prob), abs(a * one_t)))
        e_alpha_rev.append(abs(amp.r_prob_rev - one_t / a)
                           / max(abs(amp.r_prob_rev), abs(one_t / a)))
        e_trev.append(abs(amp.t_amp_rev - amp.t_amp))
        dl, dr = unitarity_defects(p, k)
        e_defect.append(max(abs(dl - amp.defect_left), abs(dr - amp.defect_right))
                        / max(1.0, abs(dl), abs(dr)))
    return [
        _check("R = alpha (1 - T) (relative)", e_alpha, 1e-10),
        _check("R~ = (1 - T) / alpha (relative)", e_alpha_rev, 1e-10),
        _check("T~ = T", e_trev, 1e-300),
        _check("unitarity defects: closed form vs amplitudes", e_defect, 1e-10),
    ]


def defect_sign_checks():
    bad = []
    for L in (6, 7):
        for g in (2.5, 3.0, 3.5, 4.0):
            p = LatticeParams(-1.0, g, L)
            ks = np.linspace(0.01, math.pi - 0.01, 997)
            ks = ks[np.abs(np.sin(ks * L)) > 1e-6]
            for k in ks:
                dl, dr = unitarity_defects(p, k)
                bad.append(float(not (dl > 0 and dr < 0)))
    return [_check("defect signs in the Fabry-Perot regime", bad, 0.5)]


def single_checks():
    errs = []
    for g in (1.9, 2.1):
        e1, e2 = single_eigenvalues(-1.0, g)
        poly = np.poly([e1, e2])
        errs.append(float(np.max(np.abs(poly - [1, 0, -(4 - g * g)]))))
    errs.append(abs(single_eigenvalues(-1.0, 2.0)[0]))
    return [_check("single scatterer eigenvalues", errs, 1e-10)]


def continuum_checks():
    rep = lattice_continuum_check(1.0, 3.0, [0.1, 0.05, 0.025], 0.5)
    rel = max(rep.err_T[-1] / rep.T_cont, rep.err_R[-1] / rep.R_cont)
    p = ContinuumParams(math.sqrt(2) * math.pi / 6, 3.0)
    res = abs(continuum_denominator(p, math.pi / 6))
    return [
        _check("lattice -> continuum: final relative error", [rel], 1e-2),
        _check("lattice -> continuum: monotone decrease", [float(not rep.monotone)], 0.5),
        _check("continuum divergence residual", [res], 1e-12),
    ]


def run(level="default", seed=0):
    """Run every suite for ``level``; returns a list of :class:`Check`."""
    if level not in LEVELS:
        raise ValueError(f"unknown level {level!r}; choose from {sorted(LEVELS)}")
    cfg = LEVELS[level]
    rng = np.random.default_rng(seed)
    samples = random_samples(rng, cfg["samples"])
    checks = route_checks(samples)
    checks += determinant_checks(cfg["det_L"], cfg["det_k"])
    checks += pole_checks(cfg["pole_L"])
    checks += identity_checks(random_samples(rng, cfg["alpha"]))
    checks += single_checks()
    if level != "quick":
        checks += defect_sign_checks()
    if cfg["continuum"]:
        checks += continuum_checks()
    return checks
