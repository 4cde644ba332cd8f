import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import transfer_amplitudes
from ptfabry.errors import DivergentAmplitude
from ptfabry.single import single_amplitudes, single_eigenvalues, single_sum_rule


def test_against_transfer_matrix():
    for g, k in [(0.5, 0.4), (1.9, 2.2), (2.1, 1.3), (-0.7, 2.9)]:
        res = single_amplitudes(-1.0, g, k)
        tau, r = _one_site(g, k)
        assert res.t_amp == pytest.approx(tau, abs=1e-13)
        assert res.r_amp == pytest.approx(r, abs=1e-13)


def _one_site(g, k):
    # a chain with v0 = i g and a zero potential at site L = 1 is a single scatterer
    return transfer_amplitudes(-1.0, 1j * g, 0.0, 1, k)


def test_frozen_midband():
    res = single_amplitudes(-1.0, 1.0, math.pi / 2)
    assert res.t_amp == pytest.approx(2.0)
    assert res.r_amp == pytest.approx(1.0)
    assert res.sum_defect == pytest.approx(4.0)


def test_divergence_condition():
    k = math.asin(0.95)
    with pytest.raises(DivergentAmplitude) as exc:
        single_amplitudes(-1.0, 1.9, k)
    assert abs(exc.value.denominator) < 1e-12


@given(st.floats(0.01, 5.0), st.floats(0.01, math.pi - 0.01))
def test_t_minus_r_is_one(g, k):
    if abs(-2 * math.sin(k) + g) < 1e-6:
        return
    res = single_amplitudes(-1.0, g, k)
    assert abs(res.t_amp - res.r_amp - 1) < 1e-9 * max(1, abs(res.t_amp))
    assert res.t_prob + res.r_prob == pytest.approx(single_sum_rule(-1.0, g, k), rel=1e-10)


def test_eigenvalues_across_exceptional_point():
    a, b = single_eigenvalues(-1.0, 1.9)
    assert a.imag == 0 and a.real == pytest.approx(math.sqrt(0.39)) and b == -a
    a, b = single_eigenvalues(-1.0, 2.1)
    assert a.real == 0 and a.imag == pytest.approx(math.sqrt(0.41))
    assert abs(single_eigenvalues(-1.0, 2.0)[0]) < 1e-10


def test_band_edges_rejected():
    for k in (0.0, math.pi, -0.1):
        with pytest.raises(ValueError):
            single_amplitudes(-1.0, 1.0, k)


def test_eigenvalues_match_divergence_energies():
    # the divergent energies of T(E) are the Siegert eigenvalues
    E = np.array(single_eigenvalues(-1.0, 1.5)).real
    k = np.arccos(E / -2.0)
    assert np.allclose(-2 * np.sin(k) + 1.5, 0, atol=1e-12)


@given(st.floats(0.01, 5.0), st.floats(0.01, math.pi - 0.01))
def test_gain_site_adds_flux(g, k):
    if abs(-2 * math.sin(k) + g) < 1e-6:
        return
    assert single_sum_rule(-1.0, g, k) > 1
