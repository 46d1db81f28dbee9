"""Command-line front end: coefficient tables, DT expansions and the
verification suites."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .series import scalar_display

SUITES = ("schur", "vertex", "dmvv", "ctable", "gv", "siegel")

GOLDEN_4N_MINUS_1 = [[1], [8, -6, 1], [39, -46, 17, -2], [152, -242, 139, -34, 3],
                     [513, -1024, 800, -304, 56, -4], [1560, -3730, 3683, -1912, 548, -82, 5]]
GOLDEN_4N = [[-2, 1], [-12, 10, -2], [-56, 72, -30, 4], [-208, 352, -220, 60, -6],
             [-684, 1434, -1194, 492, -100, 8], [-2032, 5056, -5252, 2908, -902, 148, -10]]


class UsageError(Exception):
    pass


def _s(x) -> str:
    return scalar_display(x)


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out") and v is not None}


def _emit(args, payload: dict, rows: list | None = None, header: list | None = None,
          text: str | None = None):
    """Write JSON (payload + config + version) or CSV/text with a comment preamble."""
    cfg = _config(args)
    if args.format == "json":
        doc = {"artifact": "bananadt", "version": __version__, "config": cfg}
        doc.update(payload)
        out = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        buf.write(f"# bananadt {__version__}\n")
        buf.write("# config " + json.dumps(cfg, sort_keys=True) + "\n")
        if text is not None:
            buf.write(text)
        else:
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
        out = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _require(cond: bool, msg: str):
    if not cond:
        raise UsageError(msg)


# -- commands ------------------------------------------------------------------

def cmd_c_table(args) -> int:
    from .banana_dt import c_table
    _require(args.amax >= -1, "--amax must be at least -1")
    _require(args.kwindow >= 1, "--kwindow must be positive (empty window)")
    table = c_table(max(args.amax, 0), args.kwindow)
    entries = [(a, k, v) for a, k, v in table.entries() if a <= args.amax]
    meta = table.metadata()
    meta["k_min"] = {str(a): v for a, v in meta["k_min"].items() if a <= args.amax}
    meta["amax"] = args.amax
    payload = {"metadata": meta,
               "rows": [{"a": a, "k": k, "c": _s(v)} for a, k, v in entries]}
    _emit(args, payload, [[a, k, _s(v)] for a, k, v in entries], ["a", "k", "c"])
    return 0


def cmd_gv_table(args) -> int:
    from .gv import gv_banana_table
    _require(args.amax >= -1, "--amax must be at least -1")
    table = gv_banana_table(args.amax, n_fibers=args.fibers)
    if args.layout:
        text = table.layout(gmax=args.gmax)
        _emit(args, {"layout": text.splitlines()}, text=text)
        return 0
    payload = table.to_json()
    rows = [[a, g, v, _s(Fraction(v, table.divisor))] for a, g, v in table.rows()]
    _emit(args, payload, rows, ["a", "g", "n", f"n/{table.divisor}"])
    return 0


def cmd_dt_expand(args) -> int:
    from .banana_dt import degree_vectors, known_p, q_slice, z_banana_product
    _require(args.dmax >= 0, "--dmax must be non-negative")
    _require(args.pmax >= 0, "--pmax must be non-negative")
    _require(args.fibers >= 1, "--fibers must be positive")
    z = z_banana_product(args.dmax, args.pmax, n_fibers=args.fibers)
    slices = []
    for d in degree_vectors(args.dmax):
        row = {int(e): c for e, c in q_slice(z, d).items()}
        top = int(known_p(z, d))
        slices.append((d, top, row))
    payload = {"slices": [{"d": list(d), "p_known_through": top,
                           "coeffs": {str(e): _s(c) for e, c in sorted(row.items())}}
                          for d, top, row in slices]}
    rows = [[*d, e, _s(c), top] for d, top, row in slices for e, c in sorted(row.items())]
    _emit(args, payload, rows, ["d1", "d2", "d3", "p", "c", "p_known_through"])
    return 0


# -- verification suites -----------------------------------------------------------

def _run_check(suite: str, name: str, fn) -> dict:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except ArithmeticError as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return {"suite": suite, "check": name, "passed": bool(ok), "detail": detail,
            "seconds": round(time.perf_counter() - t0, 3)}


def _suite_schur(args):
    from .partitions import (EMPTY, SpecList, hooks, involution_identity, partitions_of,
                             skew_schur_spec)

    def involution():
        ps = [p for n in range(4) for p in partitions_of(n)]
        for a in ps:
            for b in ps:
                if not a.contains(b):
                    continue
                for c in ps:
                    if not involution_identity(a, b, c):
                        return False, f"A={a.parts} B={b.parts} C={c.parts}"
        return True, "all |A|, |B|, |C| <= 3"

    def stabilization():
        ps = [p for n in range(4) for p in partitions_of(n)]
        cap = 6
        for a in ps:
            for c in ps:
                x = SpecList(c)
                n = x.default_cutoff(cap, a.size)
                s1 = skew_schur_spec(a, EMPTY, SpecList(c, length_cutoff=n), cap)
                s2 = skew_schur_spec(a, EMPTY, SpecList(c, length_cutoff=n + 5), cap)
                s3 = skew_schur_spec(a, EMPTY, x, cap)
                if not (s1 == s2 == s3):
                    return False, f"A={a.parts} C={c.parts}"
        return True, f"cutoff N vs N+5 vs certificate at p^{cap}"

    def hook_symmetry():
        for n in range(9):
            for r in partitions_of(n):
                if hooks(r).multiset() != hooks(r.conjugate()).multiset():
                    return False, f"R={r.parts}"
        return True, "|R| <= 8"

    return [("involution identity", involution),
            ("length cutoff stabilization", stabilization),
            ("hooks(R) = hooks(R')", hook_symmetry)]


def _suite_vertex(args):
    from .banana_dt import z_fiber_product
    from .gv import class_independence_check
    from .partitions import Partition, partitions_of
    from .vertex import (banana_fiber_sum, hook_lemma_check, vertex_bruteforce,
                         vertex_schur)
    dmax = 2 if args.dmax is None else args.dmax
    pmax = 8 if args.pmax is None else args.pmax

    def oracle():
        ps = [p for n in range(dmax + 1) for p in partitions_of(n)]
        for a in ps:
            for b in ps:
                for c in ps:
                    if vertex_schur(a, b, c, pmax).series != vertex_bruteforce(a, b, c, pmax).series:
                        return False, f"legs {a.parts} {b.parts} {c.parts}"
        return True, f"|Ri| <= {dmax}, p^{pmax}"

    def hook_lemma():
        for parts in ((), (1,), (2,), (1, 1), (2, 1), (3, 1)):
            r = hook_lemma_check(Partition(parts), 3, 8)
            if not r:
                return False, f"R={parts} mismatch {r.mismatch}"
        return True, "u^3, p window 8"

    def fiber():
        a, b = banana_fiber_sum(3, 4), z_fiber_product(3, 4)
        return a == b, "total Q-degree <= 3, p window 4"

    def classes():
        r = class_independence_check(3, 6)
        return r.passed, f"groups {sorted(r.groups)}" if r.passed else f"mismatch {r.mismatch}"

    return [("skew-Schur vertex = 3D partition count", oracle),
            ("hook-product identities", hook_lemma),
            ("fiber sum = DT product", fiber),
            ("exponents depend only on ||d||", classes)]


def _suite_dmvv(args):
    from .banana_dt import dmvv_check
    mmax = 3 if args.mmax is None else args.mmax
    qmax = 3 if args.qmax is None else args.qmax

    def run():
        r = dmvv_check(mmax, qmax, 4, 4)
        bad = [m for m, ok in r.items() if not ok]
        return not bad, f"m <= {mmax}, q^{qmax}" if not bad else f"failing m: {bad}"

    return [("DMVV localization = product", run)]


def _suite_ctable(args):
    from .banana_dt import c_table, cor24_check, three_route_check
    amax = 20 if args.amax is None else args.amax
    kw = 20 if args.kwindow is None else args.kwindow

    def closed():
        t = c_table(max(amax, 0), kw)
        for k in range(-kw, kw + 1):
            if t.c(-1, k) != (-k if k > 0 else 0):
                return False, f"c(-1,{k})"
            if t.c(0, k) != (1 if k == 0 else 2 * k if k > 0 else 0):
                return False, f"c(0,{k})"
        return True, "rows -1 and 0"

    def routes():
        r = three_route_check(min(amax, 12), 12)
        bad = [a for a, ok in r.items() if not ok]
        return not bad, "a <= 12" if not bad else f"failing rows {bad}"

    def cor24():
        r = cor24_check(12, 12)
        return r.passed, r.detail or "Q^12"

    return [("closed rows c(-1,k), c(0,k)", closed),
            ("three-route c(a,k)", routes),
            ("triple-product form", cor24)]


def _suite_gv(args):
    from .gv import gv_banana_table, gv_genfun_table
    amax = 20 if args.amax is None else args.amax
    t = gv_banana_table(max(amax, 20))

    def golden():
        for n in range(6):
            for a, want in ((4 * n - 1, GOLDEN_4N_MINUS_1[n]), (4 * n, GOLDEN_4N[n])):
                got = [t.scaled(a, g) for g in range(len(t.row(a)))]
                if got != want:
                    return False, f"a={a}: {[_s(x) for x in got]}"
        return True, "both tables, n <= 5"

    def routes():
        g = gv_genfun_table(amax)
        for a in range(-1, amax + 1):
            if g.row(a) != t.row(a):
                return False, f"a={a}"
        return True, f"a <= {amax}"

    def props():
        return t.divisible() and t.support_ok(), f"a <= {t.amax}"

    return [("golden tables", golden),
            ("product route = row route", routes),
            ("divisibility and support", props)]


def _suite_siegel(args):
    from .siegel import eq_a1_check, fg_constant, fg_route_dt, fg_route_lift
    gs = [args.g] if args.g is not None else [2, 3]
    mmax = 3 if args.mmax is None else args.mmax
    nmax = mmax if args.nmax is None else args.nmax
    order = 8 if args.lambda_order is None else args.lambda_order

    def a1():
        for d in (-1, 0, 3, 4, 7, 8):
            r = eq_a1_check(d, order)
            if not r:
                return False, f"d={d}, lambda^{r.mismatch}"
        return True, f"lambda order {order}"

    def routes():
        for g in gs:
            a, b = fg_route_lift(g, mmax, nmax), fg_route_dt(g, mmax, nmax)
            bad = a.first_mismatch(b)
            if bad is not None:
                return False, f"g={g} at (m,n,l)={bad}"
            if not a.exchange_symmetric():
                return False, f"g={g} exchange symmetry"
        return True, f"g in {gs}, m <= {mmax}, n <= {nmax}"

    def constants():
        for g in range(2, 6):
            if fg_route_lift(g, 0, 0).coeff(0, 0, 0) != fg_constant(g):
                return False, f"g={g}"
        return True, "g = 2..5"

    return [("lambda expansion of c(d, .) rows", a1),
            ("F_g lift route = DT route", routes),
            ("F_g(0,0,0)", constants)]


_SUITE_FUNCS = {"schur": _suite_schur, "vertex": _suite_vertex, "dmvv": _suite_dmvv,
                "ctable": _suite_ctable, "gv": _suite_gv, "siegel": _suite_siegel}


def cmd_verify(args) -> int:
    suites = SUITES if args.suite == "all" else (args.suite,)
    rep = [_run_check(name, check, fn)
           for name in suites for check, fn in _SUITE_FUNCS[name](args)]
    passed = all(r["passed"] for r in rep)
    payload = {"passed": passed, "checks": rep}
    rows = [[r["suite"], r["check"], "pass" if r["passed"] else "FAIL", r["detail"]] for r in rep]
    _emit(args, payload, rows, ["suite", "check", "result", "detail"])
    return 0 if passed else 1


# -- parser ------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, **defaults):
    def add(flag, dest, help_):
        p.add_argument(flag, dest=dest, type=int, default=defaults.get(dest), help=help_)
    add("--amax", "amax", "largest row a = ||d||")
    add("--gmax", "gmax", "largest genus shown")
    add("--dmax", "dmax", "total Q-degree cap")
    add("--pmax", "pmax", "p-order of every Q-slice")
    add("--qmax", "qmax", "q-order")
    add("--mmax", "mmax", "Q-order of Siegel expansions")
    add("--nmax", "nmax", "q-order of Siegel expansions")
    add("--kwindow", "kwindow", "t-window of c(a,k) rows")
    add("--lambda-order", "lambda_order", "lambda-order of the row expansion checks")
    p.add_argument("--fibers", type=int, default=12, help="number of singular fibers N")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None, help="output path (default: standard output)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bananadt", description=__doc__)
    parser.add_argument("--version", action="version", version=f"bananadt {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("c-table", help="c(a,k) coefficient table")
    _common(p, amax=20, kwindow=20)
    p.set_defaults(func=cmd_c_table)

    p = sub.add_parser("gv-table", help="banana GV invariants")
    _common(p, amax=20, gmax=6)
    p.add_argument("--paper-layout", dest="layout", action="store_true",
                   help="rows n, columns g, values n/12 for a = 4n-1 and a = 4n")
    p.set_defaults(func=cmd_gv_table)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES + ("all",))
    _common(p)
    p.add_argument("--g", type=int, default=None, help="genus for the siegel suite")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dt-expand", help="Q-slices of the DT partition function")
    _common(p, dmax=1, pmax=4)
    p.set_defaults(func=cmd_dt_expand)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (ArithmeticError, ValueError) as exc:
        print(f"bananadt: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
