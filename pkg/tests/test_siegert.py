import math

import numpy as np
import pytest

from oracles import polyroots_z, siegert_residual
from ptfabry.errors import DegenerateSpectrum, FitRejected, RootFindingFailure
from ptfabry.fabry_perot import pt_grid
from ptfabry.model import LatticeParams
from ptfabry.siegert import (PoleLabel, classify_pole, find_poles, fold_strip, lorentzian_fit,
                             pencil_eigenvalues, pencil_matrices, pole_in_window,
                             siegert_polynomial)


def test_polynomial_coefficients():
    c = siegert_polynomial(LatticeParams(-1.0, 2.0, 3))
    assert list(c) == [1, 0, 3, 0, 4, 0, 4]
    with pytest.raises(DegenerateSpectrum):
        siegert_polynomial(LatticeParams(-1.0, 0.0, 3))


@pytest.mark.parametrize("g,L", [(0.3, 4), (1.0, 7), (2.5, 6), (4.0, 10), (0.05, 12)])
def test_poles_against_multiprecision_roots(g, L):
    poles = find_poles(LatticeParams(-1.0, g, L))
    assert len(poles) == 2 * L
    z = np.exp(2j * poles.k)
    for zr in polyroots_z(-1.0, g, L):
        # each root in z appears twice (k and k - pi)
        assert np.sum(np.abs(z - zr) < 1e-9 * max(1, abs(zr))) == 2
    for k in poles.k:
        assert abs(complex(siegert_residual(-1.0, g, L, k))) < 1e-10 * (4 + g * g)


def test_l1_quadratic_oracle():
    # L = 1: beta^2 = t^2 / (t^2 - gamma^2)
    g = 1.9
    beta = np.sqrt(complex(1 / (1 - g * g)))
    expect = fold_strip(-1j * np.log(np.array([beta, -beta])))
    got = find_poles(LatticeParams(-1.0, g, 1)).k
    assert np.allclose(np.sort_complex(got), np.sort_complex(expect), atol=1e-12)


def test_l1_pole_at_infinity():
    with pytest.raises(DegenerateSpectrum):
        find_poles(LatticeParams(-1.0, 1.0, 1))


def test_zero_and_negative_gamma():
    with pytest.raises(DegenerateSpectrum):
        find_poles(LatticeParams(-1.0, 0.0, 3))
    with pytest.raises(ValueError):
        find_poles(LatticeParams(-1.0, -1.0, 3))


def test_residual_failure_reports_partial():
    with pytest.raises(RootFindingFailure) as exc:
        find_poles(LatticeParams(-1.0, 1.0, 4), rtol=1e-30)
    assert exc.value.partial is not None and len(exc.value.partial) == 8


@pytest.mark.parametrize("L", [1, 2, 5, 10])
def test_pencil_agrees(L):
    p = LatticeParams(-1.0, 1.7, L)
    a = np.exp(1j * find_poles(p).k)
    b = np.exp(1j * pencil_eigenvalues(p))
    assert b.size == 2 * L
    for x in a:
        assert np.min(np.abs(b - x)) < 1e-9


def test_pencil_determinant_identity():
    # det(beta^2 U + beta V + W) = (-t)^{L-1} Q(beta)
    p = LatticeParams(-1.0, 0.8, 4)
    u, v, w = pencil_matrices(p)
    c = siegert_polynomial(p)
    for beta in (0.3 + 0.2j, -1.1 + 0.5j, 2j):
        lhs = np.linalg.det(beta**2 * u + beta * v + w)
        rhs = (-p.t_h) ** (p.L - 1) * np.polyval(c[::-1], beta)
        assert lhs == pytest.approx(rhs, rel=1e-12)


def test_closure_and_energies():
    p = LatticeParams(-1.0, 2.2, 7)
    poles = find_poles(p)
    beta = poles.beta
    for k in poles.k:
        mirror = np.exp(1j * fold_strip(-np.conj(k)))
        assert np.min(np.abs(beta - mirror)) < 1e-10
        assert np.min(np.abs(beta + np.exp(1j * k))) < 1e-10  # k - pi
    assert np.allclose(poles.energies, -2 * np.cos(poles.k))
    order = np.lexsort((poles.k.imag, poles.k.real))
    assert np.all(order == np.arange(len(poles)))


def test_strong_coupling_poles_approach_from_above():
    L = 7
    poles = find_poles(LatticeParams(-1.0, 1e3, L))
    for n in range(1, L):
        k_n = n * math.pi / L
        i = np.argmin(np.abs(poles.k - k_n))
        assert abs(poles.k[i].real - k_n) < 1e-2
        assert 0 < poles.k[i].imag < 1e-2


@pytest.mark.parametrize("k,label", [
    (0.5 - 0.1j, PoleLabel.RESONANT), (-0.5 - 0.1j, PoleLabel.ANTI_RESONANT),
    (0.5 + 0.1j, PoleLabel.GAIN), (-0.5 + 0.1j, PoleLabel.GAIN),
    (0.3j, PoleLabel.BOUND), (-0.3j, PoleLabel.ANTI_BOUND),
    (math.pi + 0.2j, PoleLabel.BOUND), (math.pi - 0.2j, PoleLabel.ANTI_BOUND),
    (0.7 - 1e-13j, PoleLabel.GAIN),
])
def test_classification(k, label):
    assert classify_pole(k).label == label


def test_on_axis_flag():
    assert classify_pole(0.7 + 1e-12j).on_axis
    assert not classify_pole(0.7 - 1e-3j).on_axis


def test_lorentzian_fit_recovers_pole():
    p = LatticeParams(-1.0, 40.0, 7)
    poles = find_poles(p)
    pole = poles.k[np.argmin(np.abs(poles.k - 3 * math.pi / 7))]
    hw = abs(pole.imag)
    ks = np.linspace(pole.real - 6 * hw, pole.real + 6 * hw, 801)
    T = pt_grid(p, ks)["T"]
    center, width, height = lorentzian_fit(pole, ks, T, neighbors=poles.k)
    assert center == pytest.approx(pole.real, abs=0.05 * hw)
    assert width == pytest.approx(hw, rel=0.1)
    assert height == pytest.approx(T.max(), rel=0.05)


def test_lorentzian_fit_rejections():
    ks = np.linspace(0, 1, 50)
    with pytest.raises(FitRejected):
        lorentzian_fit(0.5 + 0j, ks, np.ones(50))
    with pytest.raises(FitRejected):
        lorentzian_fit(0.5 - 0.01j, ks, np.ones(50), neighbors=[0.52 - 0.01j])


def test_newton_from_seed():
    p = LatticeParams(-1.0, 2.5, 6)
    poles = find_poles(p)
    k = pole_in_window(p, poles.k[-1] + 0.01)
    assert abs(k - poles.k[-1]) < 1e-10
