"""Command-line interface: one executable, one subcommand per capability.

All numeric output is CSV (or JSON mirrors via --out json) so plotting
stays external.  Given identical argv, CSV bodies are byte-identical; the
run manifest (which carries a timestamp) goes to a sidecar file when
writing to a file, or to stderr when streaming to stdout.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
import time

import numpy as np

from . import __version__, analysis, eigensolve, matio, polyfam, region, walk_approx
from .errors import SpecmomError
from .prob import hypocycloid, parse_prob
from .walk_approx import alpha_coeffs, approximate_power, azuma_tail


def _apply_thread_cap():
    """Honor SPECMOM_THREADS by capping the BLAS thread pools (0 = auto)."""
    raw = os.environ.get("SPECMOM_THREADS", "")
    if not raw:
        return
    try:
        cap = int(raw)
    except ValueError:
        return
    if cap > 0:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, str(cap))


def _fmt(x) -> str:
    if isinstance(x, complex):
        return f"{x.real:.17g}{x.imag:+.17g}j" if x.imag else f"{x.real:.17g}"
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def _emit(args, header, rows, extra_manifest=None):
    """Write CSV (or JSON) plus the run manifest."""
    manifest = {
        "subcommand": args.command,
        "argv": args._argv,
        "seed": getattr(args, "seed", None),
        "version": __version__,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
    }
    if extra_manifest:
        manifest.update(extra_manifest)
    buf = io.StringIO()
    if getattr(args, "out", "csv") == "json":
        records = [dict(zip(header, row)) for row in rows]
        json.dump({"manifest": manifest, "records": records}, buf, default=_fmt)
        buf.write("\n")
    else:
        buf.write(",".join(header) + "\n")
        for row in rows:
            buf.write(",".join(_fmt(v) for v in row) + "\n")
    body = buf.getvalue()
    out_path = getattr(args, "output", None)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(body)
        with open(out_path + ".manifest.json", "w") as fh:
            json.dump(manifest, fh, indent=2)
            fh.write("\n")
    else:
        sys.stdout.write(body)
        if getattr(args, "out", "csv") != "json":
            print(json.dumps({"manifest": manifest}), file=sys.stderr)


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise argparse.ArgumentTypeError(f"cannot parse complex value {text!r}")


def _load_matrix(args):
    given = [bool(args.matrix), args.toy, bool(args.barbell)]
    if sum(given) != 1:
        raise SpecmomError("exactly one of --matrix, --toy, --barbell is required")
    if args.toy:
        return matio.toy_matrix()
    if args.matrix:
        return matio.parse_matrix_market(args.matrix)
    n_txt, p_txt, seed_txt = args.barbell.split(",")
    return matio.barbell(int(n_txt), float(p_txt), int(seed_txt))


def _load_truth(path):
    if path is None:
        return None
    data = np.loadtxt(path, dtype=complex)
    return data if np.iscomplexobj(data) and data.imag.any() else data.real


# --- subcommand handlers ---------------------------------------------------

def cmd_region(args):
    p = parse_prob(args.prob)
    if args.grid:
        n = args.grid
        axis = np.linspace(-1.2, 1.2, n)
        rows = []
        for im in axis:
            for re in axis:
                mem = region.contains(p, complex(re, im))
                rows.append((re, im, mem.value))
        _emit(args, ("re", "im", "membership"), rows)
        return 0
    curve = region.boundary(p, args.samples)
    cusp_set = region.cusps(p)
    rows = [(t, z.real, z.imag) for t, z in zip(curve.t, curve.z)]
    points = ", ".join(_fmt(complex(c)) for c in cusp_set.positions)
    _emit(args, ("t", "re", "im"), rows,
          extra_manifest={"cusps": cusp_set.count})
    print(f"cusps: {cusp_set.count} at {points}", file=sys.stderr)
    return 0


def cmd_poly_growth(args):
    p = parse_prob(args.prob)
    report = analysis.empirical_growth(p, args.eps, args.n_max)
    rows = list(zip(report.n.tolist(), report.value.tolist(),
                    report.predicted.tolist()))
    _emit(args, ("n", "value", "predicted_rate_pow_n"), rows,
          extra_manifest={"eps": args.eps, "truncated": report.truncated})
    return 0


def cmd_approx(args):
    p = parse_prob(args.prob)
    coeffs = alpha_coeffs(p, args.n)
    approx, degree, tail = approximate_power(p, args.z, args.n, args.t)
    err = abs(approx - args.z**args.n)
    bound = azuma_tail(p.order, args.t)
    rows = [(k, a) for k, a in enumerate(coeffs.alpha.tolist())]
    rows.append(("summary", ""))
    rows.append((f"n={args.n} t={args.t} degree={degree}",
                 f"error={err:.17g} tail={tail:.17g} azuma={bound:.17g}"))
    _emit(args, ("k", "alpha_k"), rows,
          extra_manifest={"n": args.n, "t": args.t, "degree": degree,
                          "error": err, "tail_mass": tail, "azuma_bound": bound})
    return 0


def cmd_bounds(args):
    p = parse_prob(args.prob)
    rows = []
    for n in range(0, args.n_max + 1, args.stride):
        lower = polyfam.growth_lower_bound(p, args.eps, n)
        ellipse = analysis.ellipse_upper_bound(args.delta, args.eps, n)
        rows.append((n, lower, ellipse))
    _emit(args, ("n", "cusp_rate_lower", "ellipse_upper"), rows,
          extra_manifest={"eps": args.eps, "delta": args.delta})
    return 0


def _emit_trace(args, trace):
    rows = []
    for k in range(trace.n_steps + 1):
        rows.append((
            k,
            trace.h[k],
            trace.nu[k].real if not np.isnan(trace.nu[k].real) else float("nan"),
            trace.d[k],
            trace.rho[k],
            trace.r[k],
            trace.relerr[k] if trace.relerr is not None else float("nan"),
        ))
    _emit(args, ("k", "h_k", "nu_k", "d_k", "rho_k", "r_k", "relerr"), rows,
          extra_manifest={"stalled": trace.stalled, "n_steps": trace.n_steps})


def cmd_power(args):
    A = _load_matrix(args)
    v0 = eigensolve.random_unit_vector(A.shape[0], args.seed)
    _, trace = eigensolve.power_iterate(A, v0, args.iters,
                                        x_true=_load_truth(args.truth))
    _emit_trace(args, trace)
    return 0


def cmd_momentum(args):
    A = _load_matrix(args)
    p = parse_prob(args.prob)
    v0 = eigensolve.random_unit_vector(A.shape[0], args.seed)
    _, trace = eigensolve.static_momentum(A, v0, p, args.lambda_star, args.iters,
                                          x_true=_load_truth(args.truth))
    _emit_trace(args, trace)
    return 0


def cmd_dynamic(args):
    A = _load_matrix(args)
    p = parse_prob(args.prob)
    v0 = eigensolve.random_unit_vector(A.shape[0], args.seed)
    _, trace = eigensolve.dynamic_momentum(A, v0, p, args.iters,
                                           x_true=_load_truth(args.truth))
    _emit_trace(args, trace)
    return 0


def cmd_barbell(args):
    A = matio.barbell(args.n, args.p, args.seed)
    text = matio.write_matrix_market(A, path=args.output)
    if not args.output:
        sys.stdout.write(text)
    return 0


def cmd_selfcheck(args):
    """Fast invariant sweep across the modules; exit 0 iff all pass."""
    failures = []

    def check(name, ok):
        print(f"{'ok  ' if ok else 'FAIL'} {name}")
        if not ok:
            failures.append(name)

    for m in range(2, 9):
        check(f"hypocycloid({m}) variance == m-1",
              abs(hypocycloid(m).variance - (m - 1)) < 1e-12)

    p = hypocycloid(3)
    fam = polyfam.eval_family(p, 1.0, 200)
    check("P_n(1) == 1", bool(np.allclose(fam.values, 1.0, atol=1e-10)))

    cheb = hypocycloid(2)
    theta = 0.7
    fam = polyfam.eval_family(cheb, np.cos(theta), 100)
    expected = np.cos(np.arange(101) * theta)
    check("Chebyshev closed form", bool(np.allclose(fam.values.real, expected, atol=1e-9)))

    alpha = alpha_coeffs(p, 30).alpha
    z = 0.3 + 0.2j
    total = complex(np.sum(alpha * polyfam.eval_family(p, z, 30).values))
    check("walk reconstructs z^n", abs(total - z**30) < 1e-10)

    for sigma2 in (0.5, 1.0, 2.0):
        r = 0.37
        rt = eigensolve.ratio_from_rate(sigma2, eigensolve.rate_from_ratio(sigma2, r))
        check(f"rate/ratio round trip sigma2={sigma2}", abs(rt - r) < 1e-12)

    A = matio.toy_matrix()
    truth = np.zeros(4)
    truth[0] = 1.0
    v0 = eigensolve.random_unit_vector(4, 1)
    _, trace = eigensolve.static_momentum(A, v0, hypocycloid(4), 1.0, 500, x_true=truth)
    check("toy static astroid converges", bool(trace.relerr[-1] < 1e-10))

    print(f"{len(failures)} failure(s)")
    return 1 if failures else 0


# --- parser ----------------------------------------------------------------

def _add_matrix_flags(sub):
    sub.add_argument("--matrix", help="path to a Matrix Market .mtx file")
    sub.add_argument("--toy", action="store_true", help="built-in 4x4 test matrix")
    sub.add_argument("--barbell", metavar="N,p,seed",
                     help="generate a random barbell adjacency matrix")
    sub.add_argument("--iters", type=int, default=100)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--truth", help="ground-truth eigenvector file for relerr")
    sub.add_argument("--out", choices=("csv", "json"), default="csv")
    sub.add_argument("--output", help="write CSV/JSON to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="specmom",
        description="Random-walk polynomial families and momentum power iterations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("region", help="boundary curve, cusps, membership grid")
    s.add_argument("--prob", required=True)
    s.add_argument("--samples", type=int, default=512)
    s.add_argument("--grid", type=int, default=0,
                   help="emit membership over an NxN lattice instead")
    s.add_argument("--out", choices=("csv", "json"), default="csv")
    s.add_argument("--output")
    s.set_defaults(func=cmd_region)

    s = sub.add_parser("poly-growth", help="|P_n(1+eps)| vs the predicted rate")
    s.add_argument("--prob", required=True)
    s.add_argument("--eps", type=float, required=True)
    s.add_argument("--n-max", type=int, default=1000)
    s.add_argument("--out", choices=("csv", "json"), default="csv")
    s.add_argument("--output")
    s.set_defaults(func=cmd_poly_growth)

    s = sub.add_parser("approx", help="degree-sqrt(n) approximation of z^n")
    s.add_argument("--prob", required=True)
    s.add_argument("--z", type=_parse_complex, required=True,
                   help="evaluation point, 're' or 're,im'")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--t", type=float, required=True)
    s.add_argument("--out", choices=("csv", "json"), default="csv")
    s.add_argument("--output")
    s.set_defaults(func=cmd_approx)

    s = sub.add_parser("bounds", help="cusp growth rate vs ellipse cap")
    s.add_argument("--prob", required=True)
    s.add_argument("--eps", type=float, required=True)
    s.add_argument("--delta", type=float, required=True)
    s.add_argument("--n-max", type=int, default=1000)
    s.add_argument("--stride", type=int, default=10)
    s.add_argument("--out", choices=("csv", "json"), default="csv")
    s.add_argument("--output")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("power", help="plain power iteration trace")
    _add_matrix_flags(s)
    s.set_defaults(func=cmd_power)

    s = sub.add_parser("momentum", help="static generalized momentum trace")
    _add_matrix_flags(s)
    s.add_argument("--prob", required=True)
    s.add_argument("--lambda-star", type=float, required=True, dest="lambda_star")
    s.set_defaults(func=cmd_momentum)

    s = sub.add_parser("dynamic", help="dynamic generalized momentum trace")
    _add_matrix_flags(s)
    s.add_argument("--prob", required=True)
    s.set_defaults(func=cmd_dynamic)

    s = sub.add_parser("barbell", help="write a barbell adjacency matrix as .mtx")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--output", help=".mtx output path (stdout if omitted)")
    s.set_defaults(func=cmd_barbell)

    s = sub.add_parser("selfcheck", help="run the fast invariant sweep")
    s.set_defaults(func=cmd_selfcheck)

    return parser


def main(argv=None) -> int:
    _apply_thread_cap()
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args._argv = argv
    try:
        return args.func(args)
    except SpecmomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
