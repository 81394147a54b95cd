"""Command-line front end.

Window specifications (``--window``):

  indicator:<start>,<len>   indicator of [start*dt, (start+len)*dt); both
                            fields accept integers or multiples of L such as
                            ``L``, ``L/2``, ``3*L/4``
  gaussian:c=<c>,hw=<hw>    exp(-c t^2) sampled on [-hw, hw)
  file:<path>               a signal JSON file

Exit status: 0 on success, 1 when ``--strict`` is given and the verdict is
negative (not a frame, or incomplete), 2 on input errors.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import re
import sys
import time
from fractions import Fraction
from typing import Optional

import numpy as np

from . import io as bio
from .bracket import bracket, ess_range
from .errors import BadParameter, BracketFrameError, NotRealValued, UnknownWindow
from .gabor import (
    WHSystem,
    completeness_check,
    frame_operator_compressed,
    frame_operator_naive,
    frame_reconstruct,
)
from .ortho import gram_schmidt, project_multi
from .report import Tolerances, analyze
from .signal import LatticeGrid, SampledSignal

THREADS_ENV = "BRACKETFRAME_THREADS"

_L_EXPR = re.compile(r"^\s*(?:(\d+)\s*\*\s*)?L\s*(?:/\s*(\d+))?\s*$")


def _steps(expr: str, L: int) -> int:
    """Evaluate ``17``, ``L``, ``L/2`` or ``3*L/4`` to an integer step count."""
    expr = expr.strip()
    if re.fullmatch(r"[+-]?\d+", expr):
        return int(expr)
    neg = expr.startswith("-")
    m = _L_EXPR.match(expr[1:] if neg else expr)
    if not m:
        raise BadParameter(f"cannot parse step count {expr!r}")
    value = Fraction(int(m.group(1) or 1) * L, int(m.group(2) or 1))
    if value.denominator != 1:
        raise BadParameter(f"{expr!r} is not a whole number of steps at L={L}")
    return -int(value) if neg else int(value)


def _keyvals(body: str) -> dict:
    out = {}
    for part in filter(None, (s.strip() for s in body.split(","))):
        if "=" not in part:
            raise BadParameter(f"expected key=value, got {part!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def parse_window(spec: str, grid: LatticeGrid) -> SampledSignal:
    """Build a window from a ``kind:params`` specification (see module help)."""
    kind, _, body = spec.partition(":")
    kind = kind.strip().lower()
    if kind == "indicator":
        fields = [s for s in body.split(",")]
        if len(fields) != 2:
            raise BadParameter(f"indicator needs <start>,<len>, got {body!r}")
        start, length = (_steps(s, grid.L) for s in fields)
        if length <= 0:
            raise BadParameter("indicator length must be positive")
        return SampledSignal.indicator(grid, start, length)
    if kind == "gaussian":
        kv = _keyvals(body)
        unknown = set(kv) - {"c", "hw", "support_halfwidth"}
        if unknown:
            raise BadParameter(f"unknown gaussian parameter(s): {', '.join(sorted(unknown))}")
        try:
            c = float(kv.get("c", 1.0))
            hw = float(kv.get("hw", kv.get("support_halfwidth", 8.0)))
        except ValueError as exc:
            raise BadParameter(f"gaussian parameters must be numbers ({exc})") from None
        return SampledSignal.gaussian(grid, c, hw)
    if kind == "file":
        if not body:
            raise BadParameter("file: needs a path")
        return bio.load_signal(body, grid)
    raise UnknownWindow(f"unknown window kind {kind!r} (expected indicator, gaussian or file)")


def _grid(args, need_critical: bool = False) -> LatticeGrid:
    L = args.L
    p = args.p if args.p is not None else L
    q = args.q if args.q is not None else L
    if need_critical and p != q:
        raise BadParameter(f"completeness needs ab = 1 (p == q), got p={p}, q={q}")
    return LatticeGrid(L, p, q)


def _period(text: str):
    aliases = {"a": "shift_a", "shift_a": "shift_a", "inv_b": "inv_b", "1/b": "inv_b"}
    if text in aliases:
        return aliases[text]
    try:
        return int(text)
    except ValueError:
        raise BadParameter(f"period must be a, inv_b or a step count, got {text!r}") from None


def _emit(obj, path: Optional[str]) -> None:
    if path:
        bio.dump_json(obj, path)
    else:
        json.dump(obj, sys.stdout, indent=1)
        sys.stdout.write("\n")


def _threads() -> Optional[int]:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return None
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n < 1:
        raise BadParameter(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_bracket(args) -> int:
    grid = _grid(args)
    f = parse_window(args.f, grid)
    g = parse_window(args.g, grid) if args.g else f
    h = bracket(f, g, _period(args.period))
    integral = h.integral()
    try:
        lo, hi = ess_range(h)
        kind = "real"
    except NotRealValued:
        mod = np.abs(h.samples)
        lo, hi, kind = float(mod.min()), float(mod.max()), "modulus"
    print(f"period_steps={h.period_len} {kind} inf={lo!r} sup={hi!r} "
          f"integral={integral.real!r}{integral.imag:+.17g}j")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["t", "re", "im"])
            for t, z in zip(h.times(), h.samples):
                w.writerow([repr(float(t)), repr(float(z.real)), repr(float(z.imag))])
    if args.json:
        bio.dump_json(bio.periodic_to_dict(h), args.json)
    return 0


def cmd_gram_schmidt(args) -> int:
    signals = bio.load_signals(args.input)
    period = _period(args.period)
    system = gram_schmidt(signals, period, dep_tol=args.dep_tol)
    span = 0.0
    for g in signals:
        span = max(span, (g - project_multi(g, system)).norm() / max(g.norm(), 1e-300))
    out = {
        "period_steps": system.period_steps,
        "members": [bio.signal_to_dict(e) for e in system],
        "pairwise_residual": system.pairwise_residual(),
        "normalization_residual": system.normalization_residual(),
        "span_residual": span,
    }
    _emit(out, args.out)
    if args.out:
        print(f"members={len(system)} pairwise_residual={out['pairwise_residual']:.3e} "
              f"span_residual={span:.3e}")
    return 0


def cmd_frame_analyze(args) -> int:
    grid = _grid(args)
    g = parse_window(args.window, grid)
    tols = Tolerances(tol=args.tol, zero_tol=args.zero_tol)
    rep = analyze(g, tolerances=tols, n_probes=args.probes, seed=args.seed)
    d = rep.to_dict()
    d["window_spec"] = args.window
    _emit(d, args.report)
    if args.report:
        print(f"tight={rep.tight} normalized_tight={rep.normalized_tight} "
              f"orthonormal_basis={rep.orthonormal_basis} spectral_bounds={rep.spectral_bounds}")
    if args.strict and not rep.is_frame:
        return 1
    return 0


def cmd_complete(args) -> int:
    grid = _grid(args, need_critical=True)
    g = parse_window(args.window, grid)
    cv = completeness_check(g, zero_tol=args.zero_tol)
    d = {"lattice": {"L": grid.L, "p": grid.p, "q": grid.q}, "window_spec": args.window,
         "zero_tol": args.zero_tol, **cv.__dict__}
    print(f"verdict={cv.verdict} zero_fraction={cv.zero_fraction!r} "
          f"sup_complete={cv.sup_complete} agree={cv.verdicts_agree}")
    if args.report:
        bio.dump_json(d, args.report)
    if args.strict and cv.verdict != "complete":
        return 1
    return 0


def cmd_reconstruct(args) -> int:
    f = bio.load_signal(args.input)
    grid = LatticeGrid(f.grid.L, args.p or f.grid.p, args.q or f.grid.q)
    f = SampledSignal(grid, f.offset, f.samples)
    g = parse_window(args.window, grid)
    rec = frame_reconstruct(f, WHSystem(g), cg_tol=args.cg_tol)
    err = (rec.signal - f).norm() / max(f.norm(), 1e-300)
    print(f"cg_iterations={rec.cg_iterations} rel_error={err:.3e} spill={rec.spill:.3e}")
    if args.out:
        bio.save_signal(rec.signal, args.out)
    return 0


def _bench_lattices(args) -> list:
    if args.lattice:
        out = []
        for text in args.lattice:
            try:
                L, p, q = (int(x) for x in text.split(","))
            except ValueError:
                raise BadParameter(f"--lattice expects L,p,q, got {text!r}") from None
            out.append(LatticeGrid(L, p, q))
        return out
    return [_grid(args)]


def cmd_bench(args) -> int:
    """CSV columns: L, p, q, op, wall_time_ns (median over repeats),
    max_rel_err (sup-norm error against the naive operator, relative)."""
    if args.repeat < 1:
        raise BadParameter("--repeat must be at least 1")
    ops = ["naive", "compressed"] if args.op == "both" else [args.op]
    rng = np.random.default_rng(args.seed)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["L", "p", "q", "op", "wall_time_ns", "max_rel_err"])
        for grid in _bench_lattices(args):
            g = parse_window(args.window, grid)
            sysw = WHSystem(g)
            lo, hi = sysw.window
            f = SampledSignal(grid, lo, rng.standard_normal(hi - lo) + 1j * rng.standard_normal(hi - lo))
            ref = frame_operator_naive(f, sysw)
            scale = float(np.abs(ref.samples).max())
            for op in ops:
                fn = frame_operator_naive if op == "naive" else frame_operator_compressed
                times = []
                for _ in range(args.repeat):
                    t0 = time.perf_counter_ns()
                    res = fn(f, sysw)
                    times.append(time.perf_counter_ns() - t0)
                lo_, hi_ = min(res.start, ref.start), max(res.stop, ref.stop)
                err = float(np.abs(res.window(lo_, hi_) - ref.window(lo_, hi_)).max()) / scale
                w.writerow([grid.L, grid.p, grid.q, op, int(np.median(times)), repr(err)])
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_lattice(p: argparse.ArgumentParser, L_default: int = 64) -> None:
    p.add_argument("--L", type=int, default=L_default, help="grid density, dt = 1/L")
    p.add_argument("--p", type=int, default=None, help="a = p/L (default p = L)")
    p.add_argument("--q", type=int, default=None, help="1/b = q/L (default q = L)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bracketframe",
        description=__doc__.split("\n\n")[0],
        epilog=__doc__.split("\n\n", 1)[1],
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", help="bracket product of two windows")
    _add_lattice(p)
    p.add_argument("--f", required=True, help="first window spec")
    p.add_argument("--g", help="second window spec (default: same as --f)")
    p.add_argument("--period", default="a", help="a, inv_b, or a step count")
    p.add_argument("--csv", help="dump one period as CSV with columns t,re,im")
    p.add_argument("--json", help="dump the bracket as JSON")
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("gram-schmidt", help="orthonormalize signals in a bracket product")
    p.add_argument("--in", dest="input", required=True, help="JSON signal or list of signals")
    p.add_argument("--period", default="a")
    p.add_argument("--dep-tol", type=float, default=1e-10)
    p.add_argument("--out", help="output JSON (default stdout)")
    p.set_defaults(func=cmd_gram_schmidt)

    p = sub.add_parser("frame-analyze", help="full frame report for (g, a, b)")
    _add_lattice(p)
    p.add_argument("--window", required=True)
    p.add_argument("--report", help="output JSON (default stdout)")
    p.add_argument("--strict", action="store_true", help="exit 1 unless the system is a frame")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--probes", type=int, default=20)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--zero-tol", type=float, default=1e-6)
    p.set_defaults(func=cmd_frame_analyze)

    p = sub.add_parser("complete", help="completeness at ab = 1")
    _add_lattice(p)
    p.add_argument("--window", required=True)
    p.add_argument("--zero-tol", type=float, default=1e-6)
    p.add_argument("--report")
    p.add_argument("--strict", action="store_true", help="exit 1 unless complete")
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("reconstruct", help="reconstruct a signal from its frame coefficients")
    p.add_argument("--in", dest="input", required=True, help="signal JSON")
    p.add_argument("--window", required=True)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--cg-tol", type=float, default=1e-10)
    p.add_argument("--out")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser(
        "bench", help="time naive vs compressed frame operator",
        description="CSV columns: L,p,q,op,wall_time_ns,max_rel_err. wall_time_ns is the "
                    "median over --repeat runs; max_rel_err is the sup-norm difference from "
                    "the naive operator divided by the sup norm of the naive result.")
    _add_lattice(p)
    p.add_argument("--op", choices=["naive", "compressed", "both"], default="both")
    p.add_argument("--lattice", action="append", help="L,p,q (repeatable; overrides --L/--p/--q)")
    p.add_argument("--window", default="gaussian:c=1,hw=2")
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _threads()
        for name in ("tol", "zero_tol", "cg_tol"):
            v = getattr(args, name, None)
            if v is not None and not 0 < v < 1:
                raise BadParameter(f"--{name.replace('_', '-')} must lie in (0, 1), got {v}")
        return args.func(args)
    except (BracketFrameError, OSError) as exc:
        print(f"bracketframe: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
