"""Command-line interface: ``fredconv {conv,matrix,solve,eig,pseudospectra,bench}``.

Data (series JSON or CSV) goes to ``--out`` or stdout; reports go to stderr.
Exit status is 0 on success, 1 for bad input and 2 for numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import bench as bench_mod
from .builtins import (
    BUILTIN_NAMES,
    builtin_series,
    heat_kernel,
    huygens_fresnel_kernel,
    love_equation,
    love_kernel,
    love_rhs,
    weierstrass_pair,
)
from .exceptions import NumericalError
from .fredholm import convolution_matrix, fredholm_conv, kernel_ratio
from .legendre import Interval, LegendreSeries, load_series, series_to_dict
from .oracle import fredholm_integral, oracle_fredholm_matrix
from .solver import IntegralEquation, solve_second_kind
from .spectra import complex_grid, eigenvalues, operator_section, pseudospectra, sigma_min

EXIT_OK, EXIT_INPUT, EXIT_NUMERICAL = 0, 1, 2


class InputError(ValueError):
    pass


def _report(msg: str) -> None:
    print(msg, file=sys.stderr)


def _open_out(args):
    out = getattr(args, "out", None)
    if out is None or out == "-":
        return sys.stdout, False
    return open(out, "w", newline=""), True


def _write_text(args, text: str) -> None:
    fh, close = _open_out(args)
    try:
        fh.write(text)
    finally:
        if close:
            fh.close()


def _fmt(v) -> str:
    v = complex(v)
    return f"{v.real + 0.0:.17g}{v.imag + 0.0:+.17g}i"


def _fmt_entry(v, is_complex: bool) -> str:
    return _fmt(v) if is_complex else f"{float(v) + 0.0:.17g}"


def _parse_params(items) -> dict:
    params = {}
    for item in items or []:
        if "=" not in item:
            raise InputError(f"parameter {item!r} is not KEY=VALUE")
        key, value = item.split("=", 1)
        try:
            if "," in value:
                params[key] = tuple(float(v) for v in value.split(","))
            else:
                params[key] = float(value)
        except ValueError as exc:
            raise InputError(f"parameter {key}: {exc}") from exc
    return params


def _kernel_from_args(args) -> LegendreSeries:
    if args.builtin is not None:
        return builtin_series(args.builtin, tol=args.tol, **_parse_params(args.param))
    if args.kernel is None:
        raise InputError("give a kernel series file or --builtin NAME")
    return load_series(args.kernel)


def _add_kernel_args(p) -> None:
    p.add_argument("kernel", nargs="?", help="kernel series JSON file")
    p.add_argument("--builtin", choices=BUILTIN_NAMES, help="use a named kernel instead of a file")
    p.add_argument(
        "--param", action="append", metavar="KEY=VALUE",
        help="builtin parameter, e.g. F=201, t=1e-7, degree=39, r=2, interval=-2,2",
    )


# -- conv ------------------------------------------------------------------------


def cmd_conv(args) -> int:
    if args.weierstrass:
        f, g = weierstrass_pair()
    else:
        if args.f is None or args.g is None:
            raise InputError("conv needs two series files (or --weierstrass)")
        f, g = load_series(args.f), load_series(args.g)
    h = fredholm_conv(f, g)
    kernel, other = (f, g) if f.interval.length >= g.interval.length else (g, f)
    (a, b), (c, d) = kernel.interval, other.interval
    r = (b - a) / (d - c) - 1.0
    _report(f"M={kernel.degree} N={other.degree} r={r:.17g}")
    if args.weierstrass:
        x = np.linspace(h.interval.lo, h.interval.hi, 100)
        ref = fredholm_integral(kernel, other, x, other.interval, 1200)
        _report(f"max |h - quadrature| at 100 points = {np.max(np.abs(h(x) - ref)):.3e}")
    _write_text(args, json.dumps(series_to_dict(h)) + "\n")
    return EXIT_OK


# -- matrix ----------------------------------------------------------------------


def cmd_matrix(args) -> int:
    f = _kernel_from_args(args)
    r = kernel_ratio(f)
    N = f.degree if args.N is None else args.N
    if N < 0:
        raise InputError("N must be non-negative")
    rows = max(f.degree, N)
    stable = convolution_matrix(f.coeffs, r, N, M=rows).entries
    if args.naive:
        naive = convolution_matrix(f.coeffs, r, N, naive=True, M=rows).entries
    if args.oracle:
        oracle = oracle_fredholm_matrix(f, M=rows, N=N).entries
        scale = np.max(np.abs(oracle))
    if args.naive and args.oracle:
        out = np.abs(naive - oracle)
        m, n = np.unravel_index(np.argmax(out), out.shape)
        _report(f"max |R_naive - R_oracle| = {out[m, n]:.6e} at ({m}, {n})")
    elif args.oracle:
        out = oracle
        err = np.max(np.abs(stable - oracle))
        _report(f"max |R_stable - R_oracle| = {err:.3e} (relative {err / scale:.3e})")
    elif args.naive:
        out = naive
    else:
        out = stable
    is_complex = np.iscomplexobj(out)
    fh, close = _open_out(args)
    try:
        w = csv.writer(fh, lineterminator="\n")
        for row in out:
            w.writerow([_fmt_entry(v, is_complex) for v in row])
    finally:
        if close:
            fh.close()
    return EXIT_OK


# -- solve -----------------------------------------------------------------------


def _function_from(desc, base: Path, role: str):
    """A kernel or rhs description from an equation file."""
    if not isinstance(desc, dict) or len(desc) != 1:
        raise InputError(f"{role} must be an object with exactly one key")
    ((name, value),) = desc.items()
    if name == "series":
        return load_series(base / value)
    if name == "constant":
        return complex(*value) if isinstance(value, list) else float(value)
    params = value if isinstance(value, dict) else {}
    if role == "rhs":
        if name == "love":
            return love_rhs(**params)
        raise InputError(f"unknown rhs {name!r}")
    if name == "love":
        return love_kernel(**params)
    if name == "huygens-fresnel":
        return huygens_fresnel_kernel(**params)
    if name == "heat":
        return heat_kernel(**params)
    if name == "exp":
        return np.exp
    raise InputError(f"unknown kernel {name!r}")


def _load_equation(path) -> IntegralEquation:
    path = Path(path)
    try:
        d = json.loads(path.read_text())
        mu = d["mu"]
        mu = complex(*mu) if isinstance(mu, list) else float(mu)
        return IntegralEquation(
            kernel=_function_from(d["kernel"], path.parent, "kernel"),
            mu=mu,
            rhs=_function_from(d["rhs"], path.parent, "rhs"),
            integration_interval=Interval.coerce(d["integration_interval"]),
            output_interval=Interval.coerce(d["output_interval"]),
        )
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: malformed equation ({exc})") from exc


def cmd_solve(args) -> int:
    if args.builtin == "love":
        eq = love_equation(args.delta, output=tuple(args.output_interval))
    elif args.equation is not None:
        eq = _load_equation(args.equation)
    else:
        raise InputError("give an equation JSON file or --builtin love")
    sol = solve_second_kind(eq, tol=args.tol, full_output=True)
    y = sol.y
    _report(
        f"degree={y.degree} r={eq.ratio:.17g} residual={sol.residual:.3e} "
        f"condition={sol.condition:.3e} doublings={sol.iterations - 1}"
    )
    if args.builtin == "love":
        t = np.linspace(eq.output_interval.lo, eq.output_interval.hi, 200)
        _report(f"max |y - 1| on 200 points = {np.max(np.abs(y(t) - 1.0)):.3e}")
    _write_text(args, json.dumps(series_to_dict(y)) + "\n")
    return EXIT_OK


# -- eig / pseudospectra -----------------------------------------------------------


def cmd_eig(args) -> int:
    f = _kernel_from_args(args)
    lam = eigenvalues(operator_section(f, args.M))
    _write_text(args, "".join(_fmt(v) + "\n" for v in lam))
    return EXIT_OK


def cmd_pseudospectra(args) -> int:
    f = _kernel_from_args(args)
    if args.grid[0] < 1 or args.grid[1] < 1:
        raise InputError("grid must have at least one point per direction")
    A = operator_section(f, args.M)
    z = complex_grid(args.re, args.im, (args.grid[1], args.grid[0])).ravel()
    ps = pseudospectra(A, z, args.eps)
    status = EXIT_OK
    if args.certify:
        other = sigma_min(operator_section(f, A.size - 1 + args.delta), z)
        change = float(np.max(np.abs(ps.sigma_min - other) / np.maximum(other, 1e-300)))
        ok = change <= 0.01
        _report(
            f"certificate M={A.size - 1} vs M+{args.delta}: max relative change "
            f"{change:.3e} {'PASS' if ok else 'FAIL'}"
        )
        status = EXIT_OK if ok else EXIT_NUMERICAL
    fh, close = _open_out(args)
    try:
        w = csv.writer(fh, lineterminator="\n")
        for zi, s in zip(ps.z, ps.sigma_min):
            w.writerow([f"{zi.real:.17g}", f"{zi.imag:.17g}", f"{s:.17g}"])
    finally:
        if close:
            fh.close()
    return status


# -- bench -----------------------------------------------------------------------


def cmd_bench(args) -> int:
    timings = bench_mod.run_grid(args.M, args.N, args.r, repeats=args.repeats)
    fh, close = _open_out(args)
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["M", "N", "r", "seconds"])
        for t in timings:
            w.writerow([t.M, t.N, f"{t.r:g}", f"{t.seconds:.6e}"])
    finally:
        if close:
            fh.close()
    checks = bench_mod.summarize(timings)
    for c in checks:
        _report(f"{'PASS' if c.passed else 'FAIL'} {c.name}: ratio {c.ratio:.3f} (allowed [{c.lo}, {c.hi}])")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_NUMERICAL


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="tolerance (default 1e-14)")
    common.add_argument("--out", default=argparse.SUPPRESS, help="output file (default stdout)")

    p = argparse.ArgumentParser(prog="fredconv", parents=[common], description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("conv", parents=[common], help="Fredholm convolution of two series")
    s.add_argument("f", nargs="?")
    s.add_argument("g", nargs="?")
    s.add_argument("--weierstrass", action="store_true", help="use the built-in rough/heat pair")
    s.set_defaults(func=cmd_conv)

    s = sub.add_parser("matrix", parents=[common], help="dump the convolution matrix as CSV")
    _add_kernel_args(s)
    s.add_argument("--N", type=int, help="highest column index (default kernel degree)")
    s.add_argument("--naive", action="store_true", help="rightward-only (unstable) build")
    s.add_argument("--oracle", action="store_true", help="quadrature build; with --naive, dump |naive - oracle|")
    s.set_defaults(func=cmd_matrix)

    s = sub.add_parser("solve", parents=[common], help="solve a second-kind equation")
    s.add_argument("equation", nargs="?", help="equation JSON file")
    s.add_argument("--builtin", choices=["love"])
    s.add_argument("--delta", type=float, default=-1.0)
    s.add_argument("--output-interval", type=float, nargs=2, default=[0.0, 5.0], metavar=("LO", "HI"))
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("eig", parents=[common], help="eigenvalues of an operator section")
    _add_kernel_args(s)
    s.add_argument("--M", type=int, help="section size minus one (default kernel degree)")
    s.set_defaults(func=cmd_eig)

    s = sub.add_parser("pseudospectra", parents=[common], help="sigma_min(zI - A) on a grid")
    _add_kernel_args(s)
    s.add_argument("--M", type=int)
    s.add_argument("--re", type=float, nargs=2, default=[-1.2, 1.2], metavar=("LO", "HI"))
    s.add_argument("--im", type=float, nargs=2, default=[-1.2, 1.2], metavar=("LO", "HI"))
    s.add_argument("--grid", type=int, nargs=2, default=[41, 41], metavar=("NRE", "NIM"))
    s.add_argument("--eps", type=float, nargs="+", default=[10.0 ** -e for e in (1, 1.5, 2, 2.5, 3)])
    s.add_argument("--certify", action="store_true", help="recompute at M + delta and compare")
    s.add_argument("--delta", type=int, default=50)
    s.set_defaults(func=cmd_pseudospectra)

    s = sub.add_parser("bench", parents=[common], help="time the matrix build")
    s.add_argument("--M", type=int, nargs="+", default=[200, 400])
    s.add_argument("--N", type=int, nargs="+", default=[40, 400, 4000])
    s.add_argument("--r", type=float, nargs="+", default=[1.0, 2.0, 10.0, 100.0])
    s.add_argument("--repeats", type=int, default=9)
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "tol"):
        args.tol = 1e-14
    if not hasattr(args, "out"):
        args.out = None
    try:
        return args.func(args)
    except NumericalError as exc:
        _report(f"error: {exc}")
        return EXIT_NUMERICAL
    except (ValueError, OSError, KeyError, TypeError) as exc:
        _report(f"error: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
