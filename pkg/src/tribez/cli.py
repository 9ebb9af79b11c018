"""Command-line front end.

Subcommands::

    tribez approximate PATCH -o OUT --degree M [--constraints c1,c2,c3 --prescribed FILE]
    tribez error RATIONAL POLYNOMIAL [-o CSV] [--grid G]
    tribez constraints PATCH --mode {boundary,c1} [--degree M] [-o FILE]
    tribez selftest [--epsilon EPS] [--perturb CHECK]

Exit codes: 0 success, 1 failed self-test, 2 invalid input, 3 quadrature
did not converge.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import sys

from . import __version__
from .approximator import (
    DEFAULT_ALPHA,
    DEFAULT_GRID,
    ApproximationProblem,
    approximate,
    error_grid,
    error_l2,
    error_max,
)
from .constraints import boundary_constraints, c1_constraints
from .dualbernstein import E_table
from .patchfile import (
    as_polynomial,
    fmt,
    format_obj,
    read_constraints,
    read_patch,
    write_constraints,
    write_patch,
)
from .quadrature import DEFAULT_EPSILON, QuadratureError

log = logging.getLogger("tribez")

EXIT_OK = 0
EXIT_SELFTEST = 1
EXIT_INPUT = 2
EXIT_QUADRATURE = 3


class InputError(Exception):
    pass


def _triple(kind):
    def parse(text):
        parts = text.split(",")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError(f"expected three comma-separated values, got {text!r}")
        try:
            return tuple(kind(p) for p in parts)
        except ValueError:
            raise argparse.ArgumentTypeError(f"malformed value in {text!r}") from None
    return parse


def _positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return v


def _load(path, what):
    try:
        return read_patch(path)
    except OSError as exc:
        raise InputError(f"{what}: cannot read {path}: {exc.strerror}") from None
    except ValueError as exc:
        raise InputError(f"{what} {path}: {exc}") from None


def _open_out(path):
    if path in (None, "-"):
        return contextlib.nullcontext(sys.stdout)
    return open(path, "w", encoding="utf-8", newline="\n")


def cmd_approximate(args) -> int:
    src = _load(args.input, "input patch")
    c = args.constraints
    prescribed = {}
    if args.prescribed:
        try:
            prescribed = read_constraints(args.prescribed)
        except OSError as exc:
            raise InputError(f"prescribed: cannot read {args.prescribed}: {exc.strerror}") from None
        except ValueError as exc:
            raise InputError(f"prescribed {args.prescribed}: {exc}") from None
    elif sum(c) > 0:
        raise InputError("--prescribed is required when --constraints is not 0,0,0")
    try:
        problem = ApproximationProblem(src, args.degree, c, prescribed, args.alpha, args.epsilon)
    except ValueError as exc:
        raise InputError(str(exc)) from None

    result = approximate(problem)
    P = result.patch
    with _open_out(args.output) as fh:
        write_patch(fh, P)

    l2 = error_l2(src, P, problem.alpha)
    emax = error_max(src, P, args.grid)
    print(f"L2 error: {fmt(l2)}", file=sys.stderr)
    print(f"max error (grid {args.grid}): {fmt(emax)}", file=sys.stderr)
    summary = result.quadrature.summary()
    summary["wall_time_s"] = round(result.wall_time, 6)
    print(
        "quadrature: outer degree {outer_degree}, inner degrees {inner_degree_histogram}, "
        "doublings {outer_doublings}/{inner_doublings}, psi evaluations {psi_evaluations}".format(**summary),
        file=sys.stderr,
    )
    if args.dump_diagnostics:
        doc = dict(summary, l2_error=l2, max_error=emax, grid=args.grid)
        with open(args.dump_diagnostics, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
    if args.dump_etable:
        E = E_table(args.degree, problem.alpha, problem.constraints)
        with open(args.dump_etable, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("k\\l," + ",".join(f"{a}:{b}" for a, b in E.index) + "\n")
            for (a, b), row in zip(E.index, E.entries):
                fh.write(f"{a}:{b}," + ",".join(fmt(v) for v in row) + "\n")
    if args.mesh:
        with open(args.mesh, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(format_obj(P, args.mesh_grid))
    return EXIT_OK


def cmd_error(args) -> int:
    R = _load(args.rational, "first patch")
    P = _load(args.polynomial, "second patch")
    if R.dim != P.dim:
        raise InputError(f"dimension mismatch: {R.dim} vs {P.dim}")
    x, delta = error_grid(R, P, args.grid)
    to_stdout = args.output in (None, "-")
    with _open_out(args.output) as fh:
        fh.write("x1,x2,delta\n")
        for (a, b), d in zip(x, delta):
            fh.write(f"{fmt(a)},{fmt(b)},{fmt(d)}\n")
    print(f"max error: {fmt(delta.max())}", file=sys.stderr if to_stdout else sys.stdout)
    return EXIT_OK


def cmd_constraints(args) -> int:
    src = _load(args.input, "input patch")
    try:
        if args.mode == "c1":
            neighbor = as_polynomial(src)
            m = args.degree if args.degree is not None else neighbor.degree
            g = c1_constraints(neighbor, m)
        else:
            if args.degree is None:
                raise InputError("--degree is required in boundary mode")
            g = boundary_constraints(src, args.degree, args.alpha)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    with _open_out(args.output) as fh:
        write_constraints(fh, g)
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import run_checks

    try:
        results = run_checks(args.epsilon, args.perturb)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    for r in results:
        print(r.line())
    failed = [r.name for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_SELFTEST if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="tribez",
        description="Constrained polynomial approximation of rational triangular Bezier patches.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--alpha", type=_triple(float), default=DEFAULT_ALPHA,
                        help="Jacobi weight exponents a1,a2,a3 (default -0.5,-0.5,-0.5)")

    a = sub.add_parser("approximate", help="compute the approximating polynomial patch")
    a.add_argument("input", help="rational patch file (JSON)")
    a.add_argument("-o", "--output", default="-", help="output patch file (default stdout)")
    a.add_argument("--degree", type=int, required=True, help="target degree m")
    a.add_argument("--constraints", type=_triple(int), default=(0, 0, 0),
                   help="constraint vector c1,c2,c3 (default 0,0,0)")
    a.add_argument("--prescribed", help="constraint file with the points on Gamma^c_m")
    common(a)
    a.add_argument("--epsilon", type=_positive_float, default=DEFAULT_EPSILON,
                   help="quadrature tolerance (default 5e-16)")
    a.add_argument("--grid", type=int, default=DEFAULT_GRID, help="grid density for the max error")
    a.add_argument("--dump-diagnostics", metavar="FILE", help="write quadrature report as JSON")
    a.add_argument("--dump-etable", metavar="FILE", help="write the dual coefficient table as CSV")
    a.add_argument("--mesh", metavar="FILE", help="write the result as an OBJ mesh")
    a.add_argument("--mesh-grid", type=int, default=40, help="mesh resolution (default 40)")
    a.set_defaults(func=cmd_approximate)

    e = sub.add_parser("error", help="pointwise error between two patches")
    e.add_argument("rational", help="reference patch file")
    e.add_argument("polynomial", help="approximating patch file")
    e.add_argument("-o", "--output", default="-", help="CSV output (default stdout)")
    e.add_argument("--grid", type=int, default=DEFAULT_GRID)
    e.set_defaults(func=cmd_error)

    c = sub.add_parser("constraints", help="generate prescribed control points")
    c.add_argument("input", help="rational patch (boundary mode) or neighbour patch (c1 mode)")
    c.add_argument("--mode", choices=("boundary", "c1"), required=True)
    c.add_argument("--degree", type=int, help="target degree m")
    c.add_argument("-o", "--output", default="-", help="constraint file (default stdout)")
    common(c)
    c.set_defaults(func=cmd_constraints)

    s = sub.add_parser("selftest", help="run the embedded invariant checks")
    s.add_argument("--epsilon", type=_positive_float, default=DEFAULT_EPSILON)
    s.add_argument("--perturb", metavar="CHECK", help=argparse.SUPPRESS)
    s.set_defaults(func=cmd_selftest)
    return p


def _join_negative_values(argv):
    # argparse reads "--alpha -0.5,-0.5,-0.5" as two options; glue the value on
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--alpha":
            nxt = next(it, None)
            if nxt is not None and nxt[:1] == "-" and (nxt[1:2].isdigit() or nxt[1:2] == "."):
                out.append(f"--alpha={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _join_negative_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    if getattr(args, "grid", 2) < 2:
        print("error: --grid must be at least 2", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except QuadratureError as exc:
        print(f"error: quadrature did not converge: {exc}", file=sys.stderr)
        return EXIT_QUADRATURE


if __name__ == "__main__":
    sys.exit(main())
