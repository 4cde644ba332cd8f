"""Pole trajectories under a gamma sweep, with axis crossings and collisions.

The 2L poles come in pairs (k, k - pi) that share z = e^{2ik} = beta^2, so the
sweep tracks the L distinct values of z. Each z corresponds to exactly one pole
with Re k in [0, pi); those are the "right-half" paths. Matching in the z plane
avoids the wrap-around of Re k at 0 and pi.

Collisions on the positive real z axis (Re k = 0 or pi, the band-edge lines)
join a pole with its own mirror image -conj(k). They are kept apart from
collisions inside the strip, in ``Trajectory.boundary_events``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.optimize

from .errors import DegenerateSpectrum, MatchingAmbiguity
from .siegert import find_poles

CROSSING = "real-axis-crossing"
COLLISION = "collision"


@dataclass(frozen=True)
class TrajectoryEvent:
    """``gamma`` is the bracket midpoint; ``gamma_lo``/``gamma_hi`` bracket it."""

    gamma: float
    gamma_lo: float
    gamma_hi: float
    k: complex
    kind: str
    paths: tuple


@dataclass
class Trajectory:
    gamma_grid: np.ndarray
    paths: np.ndarray
    events: list = field(default_factory=list)
    boundary_events: list = field(default_factory=list)
    ambiguous: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    @property
    def n_paths(self):
        return self.paths.shape[0]

    def crossings(self):
        return [e for e in self.events if e.kind == CROSSING]

    def collisions(self):
        return [e for e in self.events if e.kind == COLLISION]

    def full_paths(self):
        """All 2L paths: each right-half path and its partner shifted by -pi."""
        mirror = self.paths - np.pi
        return np.concatenate([self.paths, mirror])


def z_to_k(z):
    """The pole with Re k in [0, pi) belonging to z = e^{2ik}."""
    z = np.asarray(z, dtype=complex)
    ang = np.angle(z)
    on_pos_axis = (np.abs(z.imag) <= 1e-12 * np.abs(z)) & (z.real > 0)
    ang = np.where(on_pos_axis, 0.0, np.mod(ang, 2 * np.pi))
    return 0.5 * ang - 0.5j * np.log(np.abs(z))


def folded_roots(params):
    """The L distinct values z = e^{2ik} over the 2L poles at ``params``."""
    poles = find_poles(params)
    z = np.exp(2j * poles.k)
    n = z.size
    dist = np.abs(z[:, None] - z[None, :])
    iu = np.triu_indices(n, 1)
    order = np.argsort(dist[iu])
    used = np.zeros(n, dtype=bool)
    keep = []
    for idx in order:
        i, j = iu[0][idx], iu[1][idx]
        if used[i] or used[j]:
            continue
        used[i] = used[j] = True
        keep.append(0.5 * (z[i] + z[j]))
        if len(keep) == n // 2:
            break
    return np.array(keep)


def _match(prev, new):
    cost = np.abs(prev[:, None] - new[None, :])
    rows, cols = scipy.optimize.linear_sum_assignment(cost)
    perm = cols[np.argsort(rows)]
    jumps = cost[np.arange(prev.size), perm]
    total = jumps.sum()
    ambiguous = False
    n = prev.size
    for a in range(n):
        for b in range(a + 1, n):
            swapped = cost[a, perm[b]] + cost[b, perm[a]]
            if swapped - (jumps[a] + jumps[b]) <= 1e-12 + 1e-9 * total and jumps[a] + jumps[b] > 0:
                ambiguous = True
    return new[perm], jumps, ambiguous


def _nearest(zs, target, count=1):
    order = np.argsort(np.abs(zs - target))
    return zs[order[:count]]


def sweep_trajectories(params_base, gamma_grid, eps_ep=1e-4, jump_factor=10.0,
                       max_refine=8, coarse_collision=0.5):
    """Track the poles of the PT pair along an ascending gamma grid.

    Parameters
    ----------
    params_base : LatticeParams
        Supplies t_h and L; gamma is replaced by the grid values.
    gamma_grid : array_like
        Strictly ascending, positive.
    eps_ep : float
        Two paths closer than this (in z = e^{2ik}) count as colliding.
    jump_factor : float
        A step is halved locally when its largest matched jump exceeds
        ``jump_factor`` times the median jump of that step.
    max_refine : int
        Maximum number of halvings of one grid interval.

    Returns
    -------
    Trajectory
        ``paths`` has shape (L, n) and holds right-half wave numbers
        (Re k in [0, pi)) on the refined grid.
    """
    grid = np.asarray(gamma_grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2 or np.any(np.diff(grid) <= 0) or grid[0] <= 0:
        raise ValueError("gamma_grid must be strictly ascending and positive")

    def roots_at(g):
        return folded_roots(params_base.with_gamma(g))

    gammas, zs, skipped, ambiguous = [], [], [], []
    for g in grid:
        try:
            z = roots_at(g)
        except DegenerateSpectrum:
            skipped.append(float(g))
            continue
        if not zs:
            gammas.append(float(g))
            zs.append(z)
            continue
        _extend(gammas, zs, float(g), z, roots_at, jump_factor, max_refine, ambiguous)
    if len(zs) < 2:
        raise ValueError("fewer than two usable grid points")

    gam = np.array(gammas)
    zarr = np.array(zs).T  # (L, n)
    if ambiguous:
        warnings.warn(f"pole matching was ambiguous at gamma={ambiguous[:3]}", MatchingAmbiguity,
                      stacklevel=2)
    traj = Trajectory(gamma_grid=gam, paths=z_to_k(zarr), ambiguous=ambiguous, skipped=skipped)
    _find_crossings(traj, gam, zarr, roots_at)
    _find_collisions(traj, gam, zarr, roots_at, eps_ep, coarse_collision)
    traj.events.sort(key=lambda e: e.gamma)
    traj.boundary_events.sort(key=lambda e: e.gamma)
    return traj


def _extend(gammas, zs, g, z, roots_at, jump_factor, max_refine, ambiguous, depth=0):
    prev = zs[-1]
    matched, jumps, amb = _match(prev, z)
    med = float(np.median(jumps))
    if depth < max_refine and jumps.max() > max(jump_factor * med, 1e-8):
        g_mid = 0.5 * (gammas[-1] + g)
        try:
            z_mid = roots_at(g_mid)
        except DegenerateSpectrum:
            z_mid = None
        if z_mid is not None:
            _extend(gammas, zs, g_mid, z_mid, roots_at, jump_factor, max_refine, ambiguous, depth + 1)
            _extend(gammas, zs, g, z, roots_at, jump_factor, max_refine, ambiguous, depth + 1)
            return
    if amb:
        ambiguous.append(g)
    gammas.append(g)
    zs.append(matched)


def _track(roots_at, g, anchor):
    return _nearest(roots_at(g), anchor)[0]


def _find_crossings(traj, gam, zarr, roots_at, iters=60):
    logmod = np.log(np.abs(zarr))
    for p in range(zarr.shape[0]):
        sign = np.sign(logmod[p])
        for i in np.nonzero(sign[:-1] * sign[1:] < 0)[0]:
            g_lo, g_hi = gam[i], gam[i + 1]
            z_lo, z_hi = zarr[p, i], zarr[p, i + 1]
            s_lo = sign[i]
            for _ in range(iters):
                g_mid = 0.5 * (g_lo + g_hi)
                if g_mid in (g_lo, g_hi):
                    break
                z_mid = _track(roots_at, g_mid, 0.5 * (z_lo + z_hi))
                if np.sign(np.log(abs(z_mid))) == s_lo:
                    g_lo, z_lo = g_mid, z_mid
                else:
                    g_hi, z_hi = g_mid, z_mid
            k_star = complex(z_to_k(0.5 * (z_lo + z_hi)))
            event = TrajectoryEvent(0.5 * (g_lo + g_hi), g_lo, g_hi, k_star, CROSSING, (p,))
            if _interior(k_star):
                traj.events.append(event)
            else:
                traj.boundary_events.append(event)


def _interior(k, tol=1e-6):
    return tol < k.real < math.pi - tol


def _pair_distance(roots_at, g, centre):
    a, b = _nearest(roots_at(g), centre, 2)
    return abs(a - b), 0.5 * (a + b)


def _find_collisions(traj, gam, zarr, roots_at, eps_ep, coarse):
    n_paths, n = zarr.shape
    found = []
    for p in range(n_paths):
        for q in range(p + 1, n_paths):
            d = np.abs(zarr[p] - zarr[q])
            for i in range(n):
                left = d[i - 1] if i > 0 else np.inf
                right = d[i + 1] if i < n - 1 else np.inf
                if not (d[i] <= left and d[i] <= right and d[i] < coarse):
                    continue
                lo, hi = gam[max(i - 1, 0)], gam[min(i + 1, n - 1)]
                centre = 0.5 * (zarr[p, i] + zarr[q, i])
                g_star, d_star, lo, hi, centre = _golden_min(roots_at, lo, hi, centre)
                if d_star >= eps_ep:
                    continue
                if any(abs(g_star - f[0]) < 1e-6 and abs(centre - f[1]) < 1e-3 for f in found):
                    continue
                found.append((g_star, centre))
                k_star = complex(z_to_k(centre))
                event = TrajectoryEvent(g_star, lo, hi, k_star, COLLISION, (p, q))
                if _interior(k_star, 1e-3):
                    traj.events.append(event)
                else:
                    traj.boundary_events.append(event)


def _golden_min(roots_at, lo, hi, centre, xtol=1e-13):
    """Minimise the distance of the two roots nearest ``centre`` over [lo, hi]."""
    invphi = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, cc = _pair_distance(roots_at, c, centre)
    fd, cd = _pair_distance(roots_at, d, centre)
    while b - a > xtol * max(1.0, abs(b)):
        if fc < fd:
            b, d, fd, cd = d, c, fc, cc
            c = b - invphi * (b - a)
            fc, cc = _pair_distance(roots_at, c, cc)
        else:
            a, c, fc, cc = c, d, fd, cd
            d = a + invphi * (b - a)
            fd, cd = _pair_distance(roots_at, d, cd)
    if fc < fd:
        return c, fc, a, b, cc
    return d, fd, a, b, cd
