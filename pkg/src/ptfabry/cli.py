"""Command-line front end: spectra, pole sets, trajectories and self-checks.

Output is deterministic: floats use 17 significant digits and rows come in a
fixed order, so identical invocations give byte-identical output.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import math
import sys
import warnings

import numpy as np

from . import __version__
from .continuum import ContinuumParams, continuum_amplitudes, continuum_poles
from .direct import build_matrix, direct_amplitudes
from .errors import (DegenerateSpectrum, DivergentAmplitude, MatchingAmbiguity,
                     PTScatteringError, RootFindingFailure, SingularMatrix)
from .fabry_perot import PROB_CAP, pt_grid
from .model import LatticeParams
from .siegert import _make_poleset, find_poles, pencil_eigenvalues
from .trajectory import sweep_trajectories
from .verify import LEVELS, run

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
BAND_TRIM = 1e-6
COLUMNS = ("k", "T", "R", "T_rev", "R_rev", "defect_left", "defect_right", "flags")


class UsageError(Exception):
    pass


def fmt(x):
    return format(float(x), ".17g")


def parse_grid(text, name="grid"):
    """``min:max:count`` with inclusive endpoints and count >= 2."""
    try:
        lo, hi, n = text.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError:
        raise UsageError(f"{name} must look like min:max:count, got {text!r}") from None
    if n < 2:
        raise UsageError(f"{name} count must be >= 2")
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo:
        raise UsageError(f"{name} needs min < max")
    return lo, hi, n


def parse_complex(text):
    """Complex literal such as ``0+1i``, ``-2.5i`` or ``3`` (``j`` also accepted)."""
    s = text.strip().replace(" ", "").replace("i", "j")
    if s in ("j", "+j", "-j"):
        s = s.replace("j", "1j")
    try:
        return complex(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex literal: {text!r}") from None


def _require(args, *names):
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + n for n in missing))


def lattice_params(args, need_gamma=True):
    _require(args, "t", "L")
    if args.gamma is None and need_gamma and (args.v0 is None or args.vL is None):
        raise UsageError("missing --gamma (or both --v0 and --vL)")
    gamma = args.gamma if args.gamma is not None else 0.0
    try:
        return LatticeParams(args.t, gamma, args.L, v0=args.v0, vL=args.vL)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def continuum_params(args):
    _require(args, "gamma-tilde", "L-tilde")
    try:
        return ContinuumParams(args.gamma_tilde, args.L_tilde)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _cap(x):
    return min(max(x, -PROB_CAP), PROB_CAP)


def lattice_rows(params, ks):
    if params.is_pt:
        g = pt_grid(params, ks)
        for i, k in enumerate(ks):
            vals = [g[c][i] for c in COLUMNS[1:-1]]
            yield k, vals, "DIV" if g["divergent"][i] else ""
        return
    for k in ks:
        try:
            a = direct_amplitudes(params, k)
        except SingularMatrix:
            yield k, [PROB_CAP] * 6, "DIV"
            continue
        vals = [a.t_prob, a.r_prob, a.t_prob_rev, a.r_prob_rev, a.defect_left, a.defect_right]
        yield k, [_cap(v) for v in vals], ""


def continuum_rows(p, ks):
    for k in ks:
        try:
            a = continuum_amplitudes(p, k)
        except DivergentAmplitude:
            yield k, [PROB_CAP] * 6, "DIV"
            continue
        vals = [a.t_prob, a.r_prob, a.t_prob_rev, a.r_prob_rev, a.defect_left, a.defect_right]
        yield k, [_cap(v) for v in vals], ""


def cmd_spectrum(args, out):
    if args.k is None:
        raise UsageError("missing --k min:max:count")
    lo, hi, n = parse_grid(args.k, "--k")
    if args.model == "lattice":
        if lo < 0 or hi > math.pi:
            raise UsageError("lattice --k range must lie within [0, pi]")
        lo, hi = max(lo, BAND_TRIM), min(hi, math.pi - BAND_TRIM)
    elif lo <= 0:
        raise UsageError("continuum --k range must be positive")
    ks = np.linspace(lo, hi, n)

    gammas = [None]
    if args.gamma_range is not None:
        g_lo, g_hi, g_n = parse_grid(args.gamma_range, "--gamma-range")
        gammas = list(np.linspace(g_lo, g_hi, g_n))
    cols = COLUMNS if gammas == [None] else ("gamma",) + COLUMNS
    if args.header:
        out.write(f"# ptfabry {__version__} spectrum model={args.model}\n")
    out.write(",".join(cols) + "\n")
    for gval in gammas:
        if args.model == "lattice":
            p = lattice_params(args, need_gamma=gval is None)
            if gval is not None:
                p = p.with_gamma(gval)
            rows = lattice_rows(p, ks)
        else:
            p = continuum_params(args) if gval is None else ContinuumParams(
                gval, continuum_params(args).L_tilde)
            rows = continuum_rows(p, ks)
        prefix = [] if gval is None else [fmt(gval)]
        for k, vals, flag in rows:
            out.write(",".join(prefix + [fmt(k)] + [fmt(v) for v in vals] + [flag]) + "\n")
    return EXIT_OK


def _pole_doc(poles, failures=(), message=None):
    doc = {
        "poles": [
            {"re": fmt(k.real), "im": fmt(k.imag), "label": str(lab.value),
             "residual": fmt(res), "energy": {"re": fmt(e.real), "im": fmt(e.imag)}}
            for k, lab, res, e in zip(poles.k, poles.labels, poles.residuals, poles.energies)
        ] if poles is not None else [],
        "count": 0 if poles is None else len(poles),
    }
    if failures:
        doc["failures"] = [{"seed": {"re": fmt(s.real), "im": fmt(s.imag)},
                            "reached": {"re": fmt(z.real), "im": fmt(z.imag)},
                            "residual": fmt(r) if math.isfinite(r) else "inf"}
                           for s, z, r in failures]
    if message:
        doc["message"] = message
    return doc


def _general_poles(params):
    """Pencil poles for arbitrary potentials; residual = smallest singular value of M_L."""
    k = pencil_eigenvalues(params)
    res = [np.linalg.svd(build_matrix(params, z).entries, compute_uv=False)[-1] for z in k]
    return _make_poleset(params, k, np.array(res))


def cmd_poles(args, out):
    status = EXIT_OK
    if args.model == "lattice":
        p = lattice_params(args)
        try:
            doc = _pole_doc(find_poles(p) if p.is_pt else _general_poles(p))
        except DegenerateSpectrum as exc:
            doc = _pole_doc(None, message=f"degenerate spectrum: {exc}")
        except RootFindingFailure as exc:
            doc = _pole_doc(exc.partial)
            doc["failures"] = [{"re": fmt(k.real), "im": fmt(k.imag), "residual": fmt(r)}
                               for k, r in zip(exc.roots, exc.residuals)]
            status = EXIT_NUMERIC
    else:
        p = continuum_params(args)
        window = None
        if args.k is not None:
            lo, hi, _ = parse_grid(args.k, "--k")
            if lo <= 0:
                raise UsageError("continuum pole window must be positive")
            window = (lo, hi)
        poles = continuum_poles(p, window)
        msg = "degenerate spectrum: gamma_tilde = 0 has no poles" if p.gamma_tilde == 0 else None
        doc = _pole_doc(poles, poles.failures, msg)
    out.write(json.dumps(doc, indent=2, sort_keys=False) + "\n")
    return status


def cmd_trajectory(args, out):
    if args.model != "lattice":
        raise UsageError("trajectory sweeps are available for the lattice model only")
    if args.gamma_range is None:
        raise UsageError("missing --gamma-range min:max:count")
    lo, hi, n = parse_grid(args.gamma_range, "--gamma-range")
    if lo <= 0:
        raise UsageError("--gamma-range must be positive")
    p = lattice_params(args, need_gamma=False)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", MatchingAmbiguity)
        traj = sweep_trajectories(p, np.linspace(lo, hi, n))
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    if args.header:
        out.write(f"# ptfabry {__version__} trajectory L={p.L} t={fmt(p.t_h)}\n")
    out.write("gamma,path_id,k_re,k_im,event\n")
    for j, g in enumerate(traj.gamma_grid):
        for i in range(traj.n_paths):
            k = traj.paths[i, j]
            out.write(f"{fmt(g)},{i},{fmt(k.real)},{fmt(k.imag)},\n")
    events = [(e, e.kind) for e in traj.events]
    events += [(e, "boundary-" + e.kind) for e in traj.boundary_events]
    for e, kind in sorted(events, key=lambda x: (x[0].gamma, x[1])):
        ids = "+".join(str(i) for i in e.paths)
        out.write(f"{fmt(e.gamma)},{ids},{fmt(e.k.real)},{fmt(e.k.imag)},{kind}\n")
    return EXIT_OK


def cmd_verify(args, out):
    checks = run(args.level, seed=args.seed)
    failed = [c for c in checks if not c.passed]
    for c in checks:
        out.write(c.line() + "\n")
    out.write(f"{len(checks) - len(failed)} passed, {len(failed)} failed\n")
    return EXIT_VERIFY if failed else EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(
        prog="ptfabry",
        description="Scattering spectra and poles of a PT-symmetric +/-i gamma pair "
                    "on a tight-binding chain.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--model", choices=("lattice", "continuum"), default="lattice")
        p.add_argument("--t", type=float, help="hopping t_h (lattice)")
        p.add_argument("--gamma", type=float, help="gain/loss strength (lattice)")
        p.add_argument("--gamma-tilde", type=float, help="rescaled strength (continuum)")
        p.add_argument("--L", type=int, help="separation in sites (lattice)")
        p.add_argument("--L-tilde", type=float, help="separation (continuum)")
        p.add_argument("--k", help="wave-number grid min:max:count")
        p.add_argument("--gamma-range", help="strength grid min:max:count")
        p.add_argument("--v0", type=parse_complex, help="on-site potential at site 0, e.g. 0+1i")
        p.add_argument("--vL", type=parse_complex, help="on-site potential at site L")
        p.add_argument("--out", help="write to this file instead of stdout")
        p.add_argument("--header", action="store_true", help="prepend a '#' comment line")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--level", choices=sorted(LEVELS), default="default")

    for name, func, helptext in (
            ("spectrum", cmd_spectrum, "CSV of T, R and unitarity defects over a k grid"),
            ("poles", cmd_poles, "JSON list of S-matrix poles"),
            ("trajectory", cmd_trajectory, "CSV of pole paths over a gamma sweep"),
            ("verify", cmd_verify, "run the cross-route self-checks")):
        p = sub.add_parser(name, help=helptext)
        common(p)
        p.set_defaults(func=func)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        with contextlib.ExitStack() as stack:
            out = sys.stdout
            if args.out:
                out = stack.enter_context(open(args.out, "w", newline="\n"))
            return args.func(args, out)
    except UsageError as exc:
        print(f"ptfabry: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PTScatteringError, ArithmeticError) as exc:
        print(f"ptfabry: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
