"""Direct solution of the scattering problem on the finite window [0, L].

Eliminating the lead amplitudes just outside the window closes the lattice
equations into an (L+1)x(L+1) system M_L psi = (2i t_h sin k, 0, ..., 0)^T
with M_L = H_L - E(k) I. M_L is tridiagonal: the leads only modify the two
corner diagonal entries to v - t_h e^{-ik}.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import BandEdge, SingularMatrix
from .fabry_perot import ScatteringAmplitudes, _require_pt
from .single import EPS_DIV


@dataclass(frozen=True)
class BoundaryMatrix:
    """M_L at one wave number, kept both as bands and as a dense array."""

    k: complex
    lower: np.ndarray
    diag: np.ndarray
    upper: np.ndarray

    @property
    def dim(self):
        return self.diag.size

    @property
    def entries(self):
        m = np.diag(self.diag)
        if self.dim > 1:
            m += np.diag(self.lower, -1) + np.diag(self.upper, 1)
        return m

    def row_norms(self):
        norms = np.abs(self.diag).astype(float)
        norms[1:] += np.abs(self.lower)
        norms[:-1] += np.abs(self.upper)
        return norms


@dataclass(frozen=True)
class InteriorSolution:
    psi: np.ndarray
    t_amp: complex
    r_amp: complex
    det: complex
    residual: float


def build_matrix(params, k):
    """Assemble M_L for arbitrary on-site potentials ``params.v0``, ``params.vL``."""
    t, L = params.t_h, params.L
    energy = 2 * t * np.cos(k)
    diag = np.full(L + 1, -energy, dtype=complex)
    lead = t * np.exp(1j * k)
    diag[0] += params.v0 + lead
    diag[L] += params.vL + lead
    off = np.full(L, t, dtype=complex)
    return BoundaryMatrix(k=k, lower=off.copy(), diag=diag, upper=off.copy())


def banded_solve(lower, diag, upper, rhs):
    """Tridiagonal solve with partial pivoting (the LAPACK ``gtsv`` scheme).

    Row interchanges fill a second superdiagonal, so the work stays O(n)
    even when a leading pivot vanishes.

    Returns
    -------
    x : ndarray
    log_abs_det : float
    det : complex
        Product of the pivots with the interchange sign applied.
    """
    n = diag.size
    d = np.array(diag, dtype=complex)
    dl = np.array(lower, dtype=complex)
    du = np.array(upper, dtype=complex)
    b = np.array(rhs, dtype=complex)
    du2 = np.zeros(max(n - 2, 0), dtype=complex)
    sign = 1.0
    for i in range(n - 1):
        if abs(d[i]) >= abs(dl[i]):
            if d[i] == 0:
                raise SingularMatrix("zero pivot in tridiagonal elimination", det=0j)
            fact = dl[i] / d[i]
            d[i + 1] -= fact * du[i]
            b[i + 1] -= fact * b[i]
        else:
            sign = -sign
            fact = d[i] / dl[i]
            d[i] = dl[i]
            temp = d[i + 1]
            d[i + 1] = du[i] - fact * temp
            if i < n - 2:
                du2[i] = du[i + 1]
                du[i + 1] = -fact * du2[i]
            du[i] = temp
            b[i], b[i + 1] = b[i + 1], b[i] - fact * b[i + 1]
    if d[n - 1] == 0:
        raise SingularMatrix("zero pivot in tridiagonal elimination", det=0j)
    x = np.empty(n, dtype=complex)
    x[n - 1] = b[n - 1] / d[n - 1]
    if n > 1:
        x[n - 2] = (b[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2]
    for i in range(n - 3, -1, -1):
        x[i] = (b[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i]
    log_abs_det = float(np.sum(np.log(np.abs(d))))
    det = sign * np.prod(d)
    return x, log_abs_det, det


def numeric_det(m):
    """Determinant of ``m.entries`` by dense LU with partial pivoting."""
    lu, piv = scipy.linalg.lu_factor(m.entries)
    swaps = np.count_nonzero(piv != np.arange(piv.size))
    return (-1) ** swaps * np.prod(np.diag(lu))


def numeric_minor(m, row, col):
    """Determinant of ``m.entries`` with one row and one column removed (0-based)."""
    a = np.delete(np.delete(m.entries, row, axis=0), col, axis=1)
    if a.size == 0:
        return 1.0 + 0j
    lu, piv = scipy.linalg.lu_factor(a)
    swaps = np.count_nonzero(piv != np.arange(piv.size))
    return (-1) ** swaps * np.prod(np.diag(lu))


def solve_scattering(m, params, method="banded", eps_div=EPS_DIV, refine=2):
    """Solve M_L psi = (A~, 0, ..., 0)^T for unit incident amplitude.

    Parameters
    ----------
    m : BoundaryMatrix
        Built with :func:`build_matrix` for the same ``params``.
    params : LatticeParams
    method : {"banded", "dense"}
        ``"dense"`` uses scipy's LU and serves as an independent check.
    eps_div : float
        Singularity threshold relative to the product of row infinity-norms.
    refine : int
        Maximum number of iterative-refinement sweeps applied when the
        residual exceeds ``1e-10 |A~|``.

    Raises
    ------
    SingularMatrix
        ``|det M_L| < eps_div * prod(row norms)``; ``k`` is then an S-matrix pole.
    """
    k = m.k
    t, L = params.t_h, params.L
    src = 2j * t * np.sin(k)
    rhs = np.zeros(m.dim, dtype=complex)
    rhs[0] = src
    log_scale = float(np.sum(np.log(m.row_norms())))

    if method == "banded":
        try:
            psi, log_det, det = banded_solve(m.lower, m.diag, m.upper, rhs)
        except SingularMatrix as exc:
            raise SingularMatrix(f"M_L is singular at k={k!r}", det=0j,
                                 scale=math.exp(log_scale)) from exc

        def solve(r):
            return banded_solve(m.lower, m.diag, m.upper, r)[0]
    elif method == "dense":
        lu, piv = scipy.linalg.lu_factor(m.entries)
        swaps = np.count_nonzero(piv != np.arange(piv.size))
        pivots = np.diag(lu)
        det = (-1) ** swaps * np.prod(pivots)
        log_det = float(np.sum(np.log(np.abs(pivots)))) if np.all(pivots) else -math.inf
        if log_det == -math.inf:
            raise SingularMatrix(f"M_L is singular at k={k!r}", det=0j, scale=math.exp(log_scale))
        psi = scipy.linalg.lu_solve((lu, piv), rhs)

        def solve(r):
            return scipy.linalg.lu_solve((lu, piv), r)
    else:
        raise ValueError(f"unknown method {method!r}")

    if log_det < math.log(eps_div) + log_scale:
        raise SingularMatrix(
            f"M_L is singular at k={k!r}: |det|={math.exp(log_det):.3g}",
            det=det, scale=math.exp(log_scale))

    dense = m.entries
    resid = np.max(np.abs(dense @ psi - rhs))
    for _ in range(refine):
        if resid < 1e-10 * abs(src):
            break
        psi = psi + solve(rhs - dense @ psi)
        resid = np.max(np.abs(dense @ psi - rhs))

    r_amp = psi[0] - 1.0
    t_amp = psi[L] * np.exp(-1j * k * L)
    return InteriorSolution(psi=psi, t_amp=complex(t_amp), r_amp=complex(r_amp),
                            det=complex(det), residual=float(resid))


def direct_amplitudes(params, k, method="banded", eps_div=EPS_DIV):
    """Left and right incidence amplitudes for any on-site potentials.

    Incidence from the right is the left problem of the mirrored chain.
    """
    left = solve_scattering(build_matrix(params, k), params, method, eps_div)
    mirror = params.mirrored()
    right = solve_scattering(build_matrix(mirror, k), mirror, method, eps_div)
    return ScatteringAmplitudes(left.t_amp, left.r_amp, right.t_amp, right.r_amp)


def _sin_checked(k):
    s = cmath.sin(k)
    if abs(s) < 1e-12:
        raise BandEdge(f"sin k vanishes at k={k!r}")
    return s


def det_closed_form(params, k):
    """det M_L = (-t_h)^{L+1} [g^2 sin(kL)/sin k - 2i e^{-ikL} sin k], g = gamma/t_h.

    ``k`` may be complex, which is how pole candidates are checked.
    """
    _require_pt(params)
    t, L = params.t_h, params.L
    s = _sin_checked(k)
    g = params.gamma / t
    return (-t) ** (L + 1) * (g * g * cmath.sin(k * L) / s - 2j * cmath.exp(-1j * k * L) * s)


def d_n_recursion(t_h, k, n):
    """Determinant d_n of the n x n tridiagonal block (diag -E(k), off-diag t_h).

    Returns ``(closed, iterated)``: the closed form
    ``(-t_h)^n sin((n+1)k) / sin k`` and the value from iterating
    ``d_n = -t_h (e^{ik} + e^{-ik}) d_{n-1} - t_h^2 d_{n-2}`` from d_1, d_2.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    s = _sin_checked(k)
    closed = (-t_h) ** n * cmath.sin((n + 1) * k) / s
    two_cos = cmath.exp(1j * k) + cmath.exp(-1j * k)
    d1 = -t_h * two_cos
    d2 = d1 * d1 - t_h * t_h
    if n == 1:
        return closed, d1
    prev, cur = d1, d2
    for _ in range(n - 2):
        prev, cur = cur, -t_h * two_cos * cur - t_h * t_h * prev
    return closed, cur


def cofactors(params, k):
    """Closed-form minors needed for the two inverse elements.

    Returns
    -------
    c_corner : complex
        Minor with row 1 and column L+1 removed: ``t_h**L``.
    c_diag : complex
        Minor with row 1 and column 1 removed:
        ``(-t_h)^L [i g sin(kL)/sin k + e^{-ikL}]``, g = gamma/t_h.
    """
    _require_pt(params)
    t, L = params.t_h, params.L
    s = _sin_checked(k)
    g = params.gamma / t
    c_corner = complex(t**L)
    c_diag = (-t) ** L * (1j * g * cmath.sin(k * L) / s + cmath.exp(-1j * k * L))
    return c_corner, c_diag


def amplitudes_from_cofactors(params, k):
    """T and R assembled from det M_L and its two minors via the adjugate."""
    t, L = params.t_h, params.L
    det = det_closed_form(params, k)
    c_corner, c_diag = cofactors(params, k)
    inv_last_first = (-1) ** (L + 2) * c_corner / det
    inv_first_first = c_diag / det
    src = 2j * t * cmath.sin(k)
    t_amp = src * inv_last_first * cmath.exp(-1j * k * L)
    r_amp = src * inv_first_first - 1.0
    return t_amp, r_amp
