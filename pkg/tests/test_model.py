import cmath
import math

import numpy as np
import pytest

from ptfabry.model import ComplexWaveNumber, LatticeParams, dispersion, two_site_spectrum


def test_pt_preset_and_flags():
    p = LatticeParams(-1.0, 0.8, 5)
    assert p.v0 == 0.8j and p.vL == -0.8j
    assert p.is_pt and not p.off_convention
    assert LatticeParams(1.0, 0.8, 5).off_convention
    assert LatticeParams(-1.0, -0.8, 5).off_convention


def test_mirrored_swaps_potentials():
    p = LatticeParams(-1.0, 0.3, 4, v0=0.1 + 1j, vL=-0.5)
    m = p.mirrored()
    assert m.v0 == p.vL and m.vL == p.v0


@pytest.mark.parametrize("kwargs", [dict(t_h=-1, gamma=1, L=0), dict(t_h=0, gamma=1, L=3),
                                    dict(t_h=-1, gamma=1, L=2.5)])
def test_invalid_params(kwargs):
    with pytest.raises(ValueError):
        LatticeParams(**kwargs)


def test_dispersion_band():
    ks = np.linspace(-math.pi, math.pi, 101)
    E = dispersion(LatticeParams(-1.0, 0.0, 1), ks)
    assert np.all(np.abs(E) <= 2 + 1e-15)
    assert dispersion(-1.0, 0.0) == -2.0


def test_wave_number_folding():
    w = ComplexWaveNumber(3 * math.pi / 2 - 0.2j)
    assert w.k == pytest.approx(-math.pi / 2 - 0.2j)
    assert ComplexWaveNumber(-math.pi).k.real == pytest.approx(math.pi)
    assert w.beta == pytest.approx(cmath.exp(1j * w.k))
    assert ComplexWaveNumber.from_beta(w.beta).k == pytest.approx(w.k)


def test_two_site_spectrum_against_eigvals():
    for g in (0.3, 1.0, 1.7):
        m = np.array([[1j * g, -1.0], [-1.0, -1j * g]])
        ev = np.sort_complex(np.linalg.eigvals(m))
        got = np.sort_complex(np.array(two_site_spectrum(-1.0, g)))
        assert np.allclose(ev, got, atol=1e-7)
    # exceptional point
    assert two_site_spectrum(-1.0, 1.0) == (0, 0)
    a, b = two_site_spectrum(-1.0, 0.6)
    assert a == pytest.approx(0.8) and b == pytest.approx(-0.8)
