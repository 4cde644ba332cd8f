"""Simultaneous polynomial root finding (Aberth-Ehrlich)."""

from __future__ import annotations

import numpy as np


def aberth(coeffs, z0=None, maxiter=200, tol=1e-13, offset=0.25):
    """All roots of ``sum(coeffs[j] * z**j)`` by Aberth-Ehrlich iteration.

    Parameters
    ----------
    coeffs : array_like
        Coefficients in ascending order; the last one must be nonzero.
    z0 : array_like, optional
        Starting points. By default, roots of unity scaled to the geometric
        mean root modulus ``|c_0 / c_n|**(1/n)`` and rotated by ``offset``
        radians so that symmetric polynomials do not stall.
    maxiter : int
    tol : float
        Stop once every correction satisfies ``|dz| <= tol * |z|``.

    Returns
    -------
    roots : ndarray
    converged : bool
    iterations : int
    """
    c = np.asarray(coeffs, dtype=complex)
    if c[-1] == 0:
        raise ValueError("leading coefficient vanishes")
    n = c.size - 1
    if n < 1:
        return np.empty(0, dtype=complex), True, 0
    desc = c[::-1]
    ddesc = np.polyder(desc)
    if z0 is None:
        radius = abs(c[0] / c[-1]) ** (1.0 / n) if c[0] != 0 else 1.0
        z = radius * np.exp(1j * (2 * np.pi * np.arange(n) / n + offset))
    else:
        z = np.array(z0, dtype=complex)
    if n == 1:
        return np.array([-c[0] / c[1]]), True, 0
    mask = ~np.eye(n, dtype=bool)
    converged = False
    it = 0
    for it in range(1, maxiter + 1):
        p = np.polyval(desc, z)
        dp = np.polyval(ddesc, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = p / dp
            diff = z[:, None] - z[None, :]
            inv = np.where(mask, 1.0 / np.where(mask, diff, 1.0), 0.0)
            w = ratio / (1.0 - ratio * inv.sum(axis=1))
        w = np.where(np.isfinite(w), w, 0.0)
        z = z - w
        if np.all(np.abs(w) <= tol * np.maximum(np.abs(z), np.finfo(float).tiny)):
            converged = True
            break
    return z, converged, it
