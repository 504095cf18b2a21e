"""Command line front end: ``ordfact <subcommand> [flags]``.

Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction

from . import analytic, checks, counts, polyfit, summatory
from .arith import factorize, format_rat, parse_bignat
from .bench import ALGORITHMS, bench

COUNT_ALGORITHMS = ("separation", "separation-full", "recursive", "macmahon", "oracle",
                    "dk", "transform", "dirichlet")
SUMMATORY_ALGORITHMS = ("separation", "separation-full", "naive", "hyperbola", "doubling", "closed")

CSV_HELP = """CSV columns:
  count/summatory: n|x, k, l, algorithm, value
  poly:            field, value   (one row per report field, lists space separated)
  bounds:          bound, m, coefficient   (coefficient of t^m)
  scan:            x, F2, main_term, delta, row   (sampled rows, then the argmax row)
  bench:           algorithm, x, k, l, seconds, value
  constants:       name, value
"""


def _bignat(text: str) -> int:
    try:
        return parse_bignat(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or a^b, got {text!r}") from None


def _grid(text: str) -> list[int]:
    try:
        return [parse_bignat(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("plain", "json", "csv"), default="plain")

    p = argparse.ArgumentParser(prog="ordfact", description="Ordered factorization counting functions.",
                                epilog=CSV_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("count", parents=[common], help="f_k(n, l)")
    s.add_argument("--n", type=_bignat, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--l", type=int, default=2)
    s.add_argument("--algorithm", choices=COUNT_ALGORITHMS, default="separation")

    s = sub.add_parser("summatory", parents=[common], help="F_k(x, l)")
    s.add_argument("--x", type=_bignat, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--l", type=int, default=2)
    s.add_argument("--algorithm", choices=SUMMATORY_ALGORITHMS, default="separation")
    s.add_argument("--split", type=int, default=None, help="hyperbola split j")

    s = sub.add_parser("poly", parents=[common], help="F_{t-j}(x, l) as a polynomial in t")
    s.add_argument("--x", type=_bignat, required=True)
    s.add_argument("--l", type=int, default=2)
    s.add_argument("--j", type=int, required=True)
    s.add_argument("--algorithm", choices=("both", "stirling", "solve"), default="both")

    s = sub.add_parser("bounds", parents=[common], help="band bounds on F_{t-j}(n, l)")
    s.add_argument("--j", type=int, required=True)
    s.add_argument("--l", type=int, default=2)

    s = sub.add_parser("identity", parents=[common], help="Moebius/Mertens/Lambda/Pi identities")
    s.add_argument("--limit", type=_bignat, default=10**4)

    s = sub.add_parser("scan", parents=[common], help="max |F_2(x) - x (log x + 2 gamma - 3)|")
    s.add_argument("--limit", type=_bignat, required=True)

    s = sub.add_parser("constants", parents=[common], help="Kalmar constants and main terms")
    s.add_argument("--precision", type=int, default=20)

    s = sub.add_parser("bench", parents=[common], help="time the F_k algorithms")
    s.add_argument("--x", type=_grid, required=True, help="comma separated grid, e.g. 10^4,10^5")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--l", type=int, default=2)
    s.add_argument("--split", type=int, default=None)
    s.add_argument("--algorithm", action="append", choices=ALGORITHMS, default=None)

    sub.add_parser("selftest", parents=[common], help="run the cross-algorithm oracle sweeps")
    return p


def _emit(fmt: str, data: dict, plain: str, rows: list[list] | None = None) -> str:
    if fmt == "json":
        return json.dumps(data, sort_keys=True, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for r in rows or [list(data.keys()), [data[k] for k in data]]:
            w.writerow(r)
        return buf.getvalue().rstrip("\n")
    return plain


def _count(a) -> str:
    n, k, l = a.n, a.k, a.l
    alg = a.algorithm
    if alg == "separation":
        v = counts.f_separation(n, k, l, "single")
    elif alg == "separation-full":
        v = counts.f_separation(n, k, l, "full")
    elif alg == "recursive":
        v = counts.f_recursive(n, k, l)
    elif alg == "oracle":
        v = counts.oracle_count(n, k, l)
    elif alg == "dirichlet":
        v = counts.dirichlet_power_coefficients(k, l, n)[n]
    else:
        want_l = 1 if alg == "dk" else 2
        if l != want_l:
            raise ValueError(f"algorithm {alg} computes l = {want_l} only")
        v = counts.d_k(n, k) if alg == "dk" else (
            counts.f_macmahon(factorize(n), k) if alg == "macmahon" else counts.inverse_transform_f_from_d(n, k))
    data = {"n": str(n), "k": k, "l": l, "algorithm": alg, "value": str(v)}
    return _emit(a.format, data, str(v))


def _summatory(a) -> str:
    v = summatory.F_value(a.x, a.k, a.l, a.algorithm, a.split)
    data = {"x": str(a.x), "k": a.k, "l": a.l, "algorithm": a.algorithm, "value": str(v)}
    return _emit(a.format, data, str(v))


def _poly(a) -> str:
    if a.algorithm == "stirling":
        rep = polyfit.poly_via_stirling(a.x, a.l, a.j)
    elif a.algorithm == "solve":
        rep = polyfit.poly_via_solve(a.x, a.l, a.j)
    else:
        memo: dict = {}
        rep = polyfit.poly_via_solve(a.x, a.l, a.j, memo)
        other = polyfit.poly_via_stirling(a.x, a.l, a.j, memo)
        if other.poly_in_t != rep.poly_in_t or other.value != rep.value:
            raise ArithmeticError("Stirling and linear-solve routes disagree")
        rep.kappa = other.kappa
    d = rep.to_dict()
    lines = [
        f"x = {d['x']}", f"l = {rep.l}", f"t = {rep.t}", f"j = {rep.j}", f"k = {rep.t - rep.j}", f"tau = {rep.tau}",
        "nodes_x_i = " + " ".join(d["nodes_x_i"]),
        "kappa = " + " ".join(d["kappa"]),
        "lambda = " + " ".join(d["lambda"]),
        "poly_in_k = " + " ".join(d["poly_in_k"]),
        "poly_in_t = " + " ".join(d["poly_in_t"]),
        f"F_{{t-j}}(x) = {rep.poly_in_t}",
        f"value = {d['value']}",
    ]
    rows = [["field", "value"]] + [[key, " ".join(v) if isinstance(v, list) else v] for key, v in d.items()]
    return _emit(a.format, d, "\n".join(lines), rows)


def _bounds(a) -> str:
    lo, hi = polyfit.bounds_for_band(a.j, a.l)
    d = {"j": a.j, "l": a.l,
         "lower": [format_rat(c) for c in lo.coefficients],
         "upper": [format_rat(c) for c in hi.coefficients]}
    rows = [["bound", "m", "coefficient"]]
    rows += [["lower", m, format_rat(c)] for m, c in enumerate(lo.coefficients)]
    rows += [["upper", m, format_rat(c)] for m, c in enumerate(hi.coefficients)]
    plain = f"{lo}  <=  F_{{t-{a.j}}}(n, {a.l})  <=  {hi}"
    return _emit(a.format, d, plain, rows)


def _identity(a) -> tuple[str, int]:
    r = analytic.identity_suite(a.limit)
    d = {"limit": r.limit, "ok": r.ok, "checked": r.checked,
         "counterexample": None if r.counterexample is None else [str(v) for v in r.counterexample],
         "M(10)": r.mertens_10, "Pi(10)": None if r.pi_10 is None else format_rat(r.pi_10)}
    plain = "\n".join([
        f"identities hold for all arguments <= {r.limit}" if r.ok else f"counterexample: {r.counterexample}",
        *(f"  {k}: {v} checked" for k, v in r.checked.items()),
        *( [f"M(10) = {r.mertens_10}", f"Pi(10) = {format_rat(r.pi_10)}"] if r.pi_10 is not None else []),
    ])
    rows = [["identity", "checked"]] + [[k, v] for k, v in r.checked.items()]
    return _emit(a.format, d, plain, rows), 0 if r.ok else 1


def _scan(a) -> str:
    r = analytic.error_scan_F2(a.limit)
    d = {"limit": r.limit, "max_abs_delta_float": r.max_abs_error, "argmax_x": r.argmax_x,
         "F2_at_argmax": str(r.F_at_argmax), "D2_max_abs_delta_float": r.max_abs_error_D,
         "D2_argmax_x": r.argmax_x_D, "D2_at_argmax": str(r.D_at_argmax),
         "max_abs_delta_over_sqrt_x_float": r.max_ratio_sqrt}
    if a.format == "csv":
        buf = io.StringIO()
        analytic.write_scan_csv(r, buf)
        return buf.getvalue().rstrip("\n")
    plain = "\n".join([
        f"limit = {r.limit}",
        f"max |Delta_2^F(x)| (float) = {r.max_abs_error:.4f}",
        f"argmax x = {r.argmax_x}",
        f"F_2(argmax) = {r.F_at_argmax}",
        f"max |Delta_2^D(x)| (float) = {r.max_abs_error_D:.4f} at x = {r.argmax_x_D}, D_2 = {r.D_at_argmax}",
        f"max |Delta_2^F(x)| / sqrt(x), x >= 100 (float) = {r.max_ratio_sqrt:.4f}",
    ])
    return _emit(a.format, d, plain)


def _constants(a) -> str:
    c = analytic.kalmar_constants(a.precision)
    digits = a.precision
    d = {"precision": digits, "rho_float": str(c.rho)[: digits + 2], "K_float": str(c.K)[: digits + 2],
         "zeta_rho_minus_2_float": str(c.residual)}
    lines = [f"rho (float) = {d['rho_float']}", f"K   (float) = {d['K_float']}",
             f"|zeta(rho) - 2| (float) = {float(c.residual):.3e}"]
    for k in (1, 2, 3):
        m = analytic.f_main_term(k)
        a_ = [f"{float(v):.12g}" for v in m.a]
        b_ = [f"{float(v):.12g}" for v in m.b]
        d[f"a_{k}_float"] = a_
        d[f"b_{k}_float"] = b_
        lines.append(f"k={k}: a (float) = {' '.join(a_)};  b (float) = {' '.join(b_)}")
    rows = [["name", "value"]] + [[k, " ".join(v) if isinstance(v, list) else v] for k, v in d.items()]
    return _emit(a.format, d, "\n".join(lines), rows)


def _bench(a) -> str:
    records, notices = bench(a.x, a.k, a.l, a.split, tuple(a.algorithm or ALGORITHMS))
    d = {"records": [{"algorithm": r.algorithm, "x": str(r.x), "k": r.k, "l": r.l,
                      "seconds_float": r.seconds, "value": str(r.value)} for r in records],
         "skipped": notices}
    rows = [["algorithm", "x", "k", "l", "seconds", "value"]]
    rows += [[r.algorithm, r.x, r.k, r.l, f"{r.seconds:.6f}", r.value] for r in records]
    plain = "\n".join(
        [f"{'algorithm':<18} {'x':>14} {'seconds':>10}  value"]
        + [f"{r.algorithm:<18} {r.x:>14} {r.seconds:>10.4f}  {r.value}" for r in records]
        + notices)
    return _emit(a.format, d, plain, rows)


def _selftest(a) -> tuple[str, int]:
    results = {
        "counts": checks.count_grid(300, 5),
        "summatory": checks.summatory_grid(400, 4, splits="all"),
        "polyfit": checks.poly_grid(list(range(4, 2000, 37)) + [10**5, 10**6]),
    }
    ok = all(not v for v in results.values())
    d = {name: len(v) for name, v in results.items()}
    plain = "\n".join(f"{name}: {'ok' if not v else f'{len(v)} mismatches, first {v[0]}'}"
                      for name, v in results.items())
    return _emit(a.format, d, plain), 0 if ok else 1


HANDLERS = {"count": _count, "summatory": _summatory, "poly": _poly, "bounds": _bounds,
            "identity": _identity, "scan": _scan, "constants": _constants, "bench": _bench,
            "selftest": _selftest}


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = HANDLERS[args.command](args)
    except (ValueError, ArithmeticError, MemoryError, IndexError) as exc:
        print(f"ordfact {args.command}: error: {exc}", file=err)
        return 1
    code = 0
    if isinstance(result, tuple):
        result, code = result
    print(result, file=out)
    return code


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
