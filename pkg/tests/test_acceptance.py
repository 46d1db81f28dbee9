"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
"""
import sys
import time
from fractions import Fraction
from math import factorial

import pytest

from bananadt.banana_dt import (c_table, dmvv_check, three_route_check, z_fiber_product)
from bananadt.cli import GOLDEN_4N, GOLDEN_4N_MINUS_1
from bananadt.gv import class_independence_check, gv_banana_table, gv_genfun_table
from bananadt.partitions import Partition, partitions_of
from bananadt.qforms import bernoulli
from bananadt.siegel import eq_a1_check, fg_route_dt, fg_route_lift, igusa_check
from bananadt.vertex import (banana_fiber_sum, hook_lemma_check, vertex_bruteforce,
                             vertex_schur)


# collected for the terminal summary (see conftest.py)
LINES: list[str] = []


def report(number: int, title: str, check, budget: float | None = None):
    """Run ``check`` (returns (ok, detail)), record one line and assert."""
    t0 = time.perf_counter()
    ok, detail = check()
    dt = time.perf_counter() - t0
    in_budget = budget is None or dt < budget
    status = "PASS" if ok and in_budget else "FAIL"
    limit = f" / budget {budget:g}s" if budget is not None else ""
    line = f"[{status}] criterion {number:>2}: {title} ({dt:.2f}s{limit}) {detail}"
    LINES.append(line)
    if __name__ == "__main__":
        print(line, flush=True)
    assert ok, detail
    assert in_budget, f"took {dt:.2f}s, budget {budget}s"


def crit1():
    t = c_table(20, 20)
    for k in range(-20, 21):
        if t.c(-1, k) != (-k if k > 0 else 0):
            return False, f"c(-1,{k}) = {t.c(-1, k)}"
        if t.c(0, k) != (1 if k == 0 else 2 * k if k > 0 else 0):
            return False, f"c(0,{k}) = {t.c(0, k)}"
    # the theta-ratio truncations themselves, not only the exact rows
    for a in (-1, 0):
        for k, v in t.truncations[a].items():
            if v != t.c(a, k):
                return False, f"truncation c({a},{k})"
    return True, "rows -1, 0 on k in [-20, 20]"


def crit2():
    for kw in (12, 16):
        res = three_route_check(12, kw)
        bad = [a for a, ok in res.items() if not ok]
        if bad:
            return False, f"rows {bad} at kwindow {kw}"
    return True, "-1 <= a <= 12, kwindow 12 and 16"


def crit3():
    for kw in (4, 6):
        res = dmvv_check(3, 3, 4, kw)
        if not all(res.values()):
            return False, f"{res} at t-window {kw}"
    return True, "m = 1, 2, 3, q^3, |l| <= 4, t-window 4 and 6"


def crit4():
    ps = [p for n in range(3) for p in partitions_of(n)]
    count = 0
    for a in ps:
        for b in ps:
            for c in ps:
                if vertex_schur(a, b, c, 8).series != vertex_bruteforce(a, b, c, 8).series:
                    return False, f"legs {a} {b} {c}"
                count += 1
    return True, f"{count} triples, p^8"


def crit5():
    for parts in ((), (1,), (2,), (1, 1), (2, 1), (3, 1)):
        rep = hook_lemma_check(Partition(parts), 3, 8)
        if not rep:
            return False, f"R={parts} mismatch {rep.mismatch}"
    return True, "6 partitions, u^3, p window 8"


def crit6():
    base = None
    for pw in (8, 12):
        a, b = banana_fiber_sum(3, pw), z_fiber_product(3, pw)
        if a != b:
            return False, f"differ at p window {pw}"
        if base is not None and a.truncate(base.window) != base:
            return False, "p window not stabilized"
        base = a
    return True, "total Q-degree <= 3, p window 8 re-run at 12"


def crit7():
    t = gv_banana_table(20)
    for n in range(6):
        for a, want in ((4 * n - 1, GOLDEN_4N_MINUS_1[n]), (4 * n, GOLDEN_4N[n])):
            got = [t.scaled(a, g) for g in range(7)]
            if got != want + [0] * (7 - len(want)):
                return False, f"a={a}: {got}"
    return True, "both tables, n <= 5, g <= 6"


def crit8():
    a_tab, b_tab = gv_genfun_table(20), gv_banana_table(20)
    for a in range(-1, 21):
        if a_tab.row(a) != b_tab.row(a):
            return False, f"a={a}: {a_tab.row(a)} vs {b_tab.row(a)}"
    return True, "-1 <= a <= 20 (product to Q^21)"


def crit9():
    for t in (gv_banana_table(21), gv_genfun_table(21)):
        if not t.entries:
            return False, "empty table"
        for (a, g), v in t.entries.items():
            if v % 12:
                return False, f"n^{g}_{a} = {v} not divisible by 12"
            if v and a % 4 not in (0, 3):
                return False, f"n^{g}_{a} = {v} off the support"
    return True, "a <= 21, both routes"


def crit10():
    rep = class_independence_check(3, 6, oracle="bruteforce")
    if not rep:
        return False, f"mismatch {rep.mismatch}, swap {rep.swap_equal}, integral {rep.integral}"
    return True, f"||d|| groups {sorted(rep.groups)}; (1,1,0) = (0,1,1)"


def crit11():
    for d in (-1, 0, 3, 4, 7, 8):
        rep = eq_a1_check(d, 8)
        if not rep:
            return False, f"d={d} first differs at lambda^{rep.mismatch}"
        if not (rep.rhs.even_only and rep.lhs.even_only):
            return False, f"d={d} evenness not asserted"
    return True, "d in {-1, 0, 3, 4, 7, 8}, lambda^8; reality and evenness asserted"


def crit12():
    for g in (2, 3):
        a, b = fg_route_lift(g, 3, 3), fg_route_dt(g, 3, 3)
        bad = a.first_mismatch(b)
        if bad is not None:
            return False, f"g={g} at {bad}"
    for g in range(2, 6):
        want = 12 * bernoulli(2 * g - 2) * abs(bernoulli(2 * g)) / (
            g * (4 * g - 4) * factorial(2 * g - 2))
        if fg_route_lift(g, 0, 0).coeff(0, 0, 0) != want:
            return False, f"F_{g}(0,0,0)"
        if fg_route_dt(g, 0, 0).coeff(0, 0, 0) != want:
            return False, f"F_{g}(0,0,0) by the DT route"
    if fg_route_lift(2, 0, 0).coeff(0, 0, 0) != Fraction(1, 240):
        return False, "F_2(0,0,0) != 1/240"
    return True, "g = 2, 3 on m, n <= 3; constants g = 2..5"


def crit13():
    rep = igusa_check(4, 4)
    return rep.passed, f"kappa = {rep.kappa}, holomorphic shape {rep.holomorphic_shape}"


CRITERIA = [
    (1, "closed rows c(-1,k), c(0,k)", crit1, 5),
    (2, "three-route c(a,k)", crit2, 30),
    (3, "DMVV localization = product", crit3, 60),
    (4, "skew-Schur vertex = 3D enumeration", crit4, 60),
    (5, "hook-product identities", crit5, None),
    (6, "fiber sum = DT product", crit6, 300),
    (7, "golden GV tables", crit7, 30),
    (8, "GV product route = row route", crit8, None),
    (9, "GV divisibility and support", crit9, None),
    (10, "exponents depend only on ||d||", crit10, None),
    (11, "lambda expansion identity", crit11, None),
    (12, "F_g two-route equality and constants", crit12, 300),
    (13, "optional: 240 F_2 chi_10 = kappa chi_12", crit13, None),
]


@pytest.mark.parametrize("number,title,check,budget", CRITERIA,
                         ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(number, title, check, budget):
    report(number, title, check, budget)


if __name__ == "__main__":
    failed = 0
    for number, title, check, budget in CRITERIA:
        try:
            report(number, title, check, budget)
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
