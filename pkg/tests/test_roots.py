import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ptfabry.roots import aberth


def test_known_roots():
    # (z - 1)(z + 2)(z - 3j)
    coeffs = np.poly([1, -2, 3j])[::-1]
    roots, ok, _ = aberth(coeffs)
    assert ok
    assert np.allclose(np.sort_complex(roots), np.sort_complex([1, -2, 3j]), atol=1e-12)


def test_even_polynomial_does_not_stall():
    # z^4 - 1: symmetric starting points would be a fixed point without the offset
    roots, ok, _ = aberth([-1, 0, 0, 0, 1])
    assert ok
    assert np.allclose(np.sort_complex(roots), np.sort_complex([1, -1, 1j, -1j]), atol=1e-12)


def test_linear_and_errors():
    roots, ok, _ = aberth([2, -4])
    assert ok and roots[0] == pytest.approx(0.5)
    with pytest.raises(ValueError):
        aberth([1, 2, 0])


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 16), st.integers(0, 2**31))
def test_random_polynomials_against_companion(n, seed):
    rng = np.random.default_rng(seed)
    true = rng.normal(size=n) + 1j * rng.normal(size=n)
    coeffs = np.poly(true)[::-1]
    roots, ok, _ = aberth(coeffs)
    assert ok
    for r in true:
        assert np.min(np.abs(roots - r)) < 1e-7 * max(1, abs(r))
