"""The topological vertex: the skew-Schur formula, a 3D-partition oracle,
the hook-product identities and the banana fiber sum."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .partitions import (EMPTY, Partition, SpecList, count_3d_asymptotic,
                         enumerate_partitions, hooks, min_tableau_weight,
                         minimal_volume, skew_schur_spec, subpartitions)
from .qforms import macmahon
from .series import TruncSeries, Window, exp_nilpotent


def _pwin(lo, hi) -> Window:
    return Window(("p",), (Fraction(lo),), (Fraction(hi),))


@dataclass(frozen=True)
class VertexSeries:
    legs: tuple
    normalized: bool
    series: TruncSeries

    def coeff(self, e):
        return self.series.coeff((e,))


def normalization_shift(r1: Partition, r2: Partition, r3: Partition) -> Fraction:
    """Exponent -(||R1||^2 + ||R2'||^2 + ||R3||^2)/2 relating V and the normalized vertex."""
    return -Fraction(r1.norm2 + r2.conjugate().norm2 + r3.norm2, 2)


def _intersection(a: Partition, b: Partition) -> Partition:
    return Partition(tuple(x for x in (min(a[i], b[i]) for i in range(min(len(a), len(b)))) if x))


def vertex_tilde_lower(r1: Partition, r2: Partition, r3: Partition) -> Fraction:
    """Lowest possible p-exponent of the normalized vertex (termwise bound)."""
    x0, xa, xb = SpecList(), SpecList(r3), SpecList(r3, conj=True)
    r1c = r1.conjugate()
    lo3 = min_tableau_weight(r3.conjugate(), EMPTY, x0)
    return lo3 + min(min_tableau_weight(r1c, a, xa) + min_tableau_weight(r2, a, xb)
                     for a in subpartitions(_intersection(r1c, r2)))


def vertex_tilde(r1: Partition, r2: Partition, r3: Partition, cap) -> TruncSeries:
    """s_{R3'}(p^-rho) sum_A s_{R1'/A}(p^{-R3-rho}) s_{R2/A}(p^{-R3'-rho}) up to p^cap."""
    cap = Fraction(cap)
    x0, xa, xb = SpecList(), SpecList(r3), SpecList(r3, conj=True)
    r1c = r1.conjugate()
    r3c = r3.conjugate()
    lo3 = min_tableau_weight(r3c, EMPTY, x0)
    pieces = []
    for a in subpartitions(_intersection(r1c, r2)):
        pieces.append((a, min_tableau_weight(r1c, a, xa), min_tableau_weight(r2, a, xb)))
    lo_all = lo3 + min(la + lb for _, la, lb in pieces)
    # pieces whose termwise bound already exceeds the cap contribute nothing
    pieces = [x for x in pieces if lo3 + x[1] + x[2] <= cap]
    if not pieces:
        return TruncSeries.zero(_pwin(min(lo_all, cap), cap))
    lo_sum = min(la + lb for _, la, lb in pieces)
    f3 = skew_schur_spec(r3c, EMPTY, x0, cap - lo_sum)
    total = None
    for a, la, lb in pieces:
        s1 = skew_schur_spec(r1c, a, xa, cap - lo3 - lb)
        s2 = skew_schur_spec(r2, a, xb, cap - lo3 - la)
        term = s1 * s2
        term = term.truncate(term.window.replace(lo={"p": lo_sum}))
        total = term if total is None else total + term
    out = f3 * total
    return out.truncate(out.window.replace(hi={"p": min(cap, out.window.hi[0])}))


def vertex_orv(r1: Partition, r2: Partition, r3: Partition, pmax) -> VertexSeries:
    """Normalized vertex from the skew-Schur formula, complete through p^pmax."""
    return VertexSeries((r1, r2, r3), True, vertex_tilde(r1, r2, r3, pmax))


def denormalize(v: VertexSeries, pmax) -> VertexSeries:
    """V = M(p) p^{-(||R1||^2+||R2'||^2+||R3||^2)/2} * normalized, through p^pmax."""
    if not v.normalized:
        return v
    shift = normalization_shift(*v.legs)
    s = v.series
    need = Fraction(pmax) - shift
    if s.window.hi[0] < need:
        raise ValueError("normalized vertex truncated too low")
    lo = s.window.lo[0]
    m = macmahon(_pwin(0, need - lo))
    out = (m * s).shift({"p": shift})
    return VertexSeries(v.legs, False,
                        out.truncate(out.window.replace(hi={"p": min(Fraction(pmax), out.window.hi[0])})))


def vertex_schur(r1: Partition, r2: Partition, r3: Partition, pmax) -> VertexSeries:
    """Unnormalized vertex from the skew-Schur formula, complete through p^pmax."""
    need = Fraction(pmax) - normalization_shift(r1, r2, r3)
    return denormalize(vertex_orv(r1, r2, r3, need), pmax)


def vertex_bruteforce(r1: Partition, r2: Partition, r3: Partition, pmax: int) -> VertexSeries:
    """Generating function of normalized volumes of asymptotic 3D partitions.

    The enumeration geometry (see ``partitions.Plane3D``) is matched to the
    skew-Schur formula by feeding leg 1 the conjugate of R1, leg 2 the
    conjugate of R2 and leg 3 the conjugate of R3 (found by checking all
    triples with |Ri| <= 2).
    """
    g = geometric_legs(r1, r2, r3)
    vmin = minimal_volume(*g)
    counts = count_3d_asymptotic(*g, pmax)
    win = _pwin(min(vmin, pmax), pmax)
    return VertexSeries((r1, r2, r3), False,
                        TruncSeries(win, {(vmin + i,): c for i, c in enumerate(counts)}))


LEG_TRANSPOSE = (True, True, True)


def geometric_legs(r1, r2, r3):
    return tuple(r.conjugate() if t else r for r, t in zip((r1, r2, r3), LEG_TRANSPOSE))


# -- hook-product identities -------------------------------------------------

@dataclass
class HookLemmaReport:
    partition: Partition
    passed: bool
    first: bool
    second: bool
    reference: bool
    mismatch: tuple | None = None
    kernel_first: dict | None = None
    kernel_second: dict | None = None

    def __bool__(self):
        return self.passed


def _kernel(r: Partition, n: int, second: bool) -> dict:
    """Sum over j, k <= n of x^{e_jk(R)} - x^{e_jk(empty)} as exponent -> count."""
    rc = r.conjugate()
    out: dict = {}
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            if second:
                e, e0 = -r[j - 1] + r[k - 1] + j - k, j - k
            else:
                e, e0 = r[j - 1] + rc[k - 1] - j - k + 1, 1 - j - k
            if e != e0:
                out[e] = out.get(e, 0) + 1
                out[e0] = out.get(e0, 0) - 1
    return {e: c for e, c in out.items() if c}


def regularized_kernel(r: Partition, second: bool = False) -> dict:
    """Exact Laurent polynomial left after subtracting the empty-partition index set.

    The double sum over the j, k range [1, N] leaves boundary terms near
    exponent -N (and +N for the second set).  The kernel is certified
    by agreement between N and N + 5 on |e| <= N/2 together with an empty
    band N/4 < |e| <= N/2.
    """
    n = 4 * (len(r) + r[0]) + 24
    a, b = _kernel(r, n, second), _kernel(r, n + 5, second)
    half, quarter = n // 2, n // 4
    ka = {e: c for e, c in a.items() if abs(e) <= half}
    kb = {e: c for e, c in b.items() if abs(e) <= half}
    if ka != kb:
        raise ArithmeticError("hook kernel did not stabilize")
    if any(abs(e) > quarter for e in ka):
        raise ArithmeticError("hook kernel is not a Laurent polynomial")
    return ka


def _up_window(height: int, ucap: int) -> Window:
    return Window(("u", "p"), (0, 0), (None, None), tilt={"p": {"u": height}},
                  graded=("u",), cap=ucap)


def _first_mismatch(a: TruncSeries, b: TruncSeries):
    ta, tb = a.natural_terms(), b.natural_terms()
    for e in sorted(set(ta) | set(tb)):
        if ta.get(e, 0) != tb.get(e, 0):
            return tuple(e)
    return None


def hook_lemma_check(r: Partition, ucap: int, pcap: int) -> HookLemmaReport:
    """Check both hook-product identities for ``r`` through u^ucap.

    Left sides are infinite double products; their logarithms are
    -sum u^n/n K(p^n) with K the index-set kernel.  Subtracting the kernel
    of the empty partition leaves an exact Laurent polynomial (see
    ``regularized_kernel``); the empty-partition product itself is
    checked against M(u, p)^-1 on the ascending window p <= pcap.
    Coefficients are compared exactly; u-coefficients are Laurent
    polynomials in p, so no p truncation is involved.
    """
    hk = hooks(r).multiset()
    height = max(hk + [1]) * ucap + 1
    w = _up_window(height, ucap)
    k1 = regularized_kernel(r, second=False)
    k2 = regularized_kernel(r, second=True)

    def exp_of(kernel, sign):
        logt = {}
        for n in range(1, ucap + 1):
            for e, c in kernel.items():
                key = (n, n * e)
                logt[key] = logt.get(key, 0) + Fraction(sign * c, n)
        return exp_nilpotent(TruncSeries(w, logt))

    def hook_product(power):
        out = TruncSeries.constant(w, 1)
        for h in hk:
            for s in (h, -h):
                f = TruncSeries(w, {(0, 0): 1, (1, s): -1})
                out = out * f if power > 0 else out / f
        return out

    lhs1, rhs1 = exp_of(k1, -1), hook_product(1)
    lhs2, rhs2 = exp_of(k2, -1), hook_product(-1)
    m1, m2 = _first_mismatch(lhs1, rhs1), _first_mismatch(lhs2, rhs2)

    # empty-partition reference: literal double product against M(u, p)^-1
    wr = Window(("u", "p"), (0, 0), (None, pcap), graded=("u",), cap=ucap)
    lit = TruncSeries.constant(wr, 1)
    for j in range(1, pcap + 1):
        for k in range(1, pcap + 2 - j):
            lit = lit * TruncSeries(wr, {(0, 0): 1, (1, j + k - 1): -1})
    ref = macmahon(wr, "p", u={"u": 1}, power=-1)
    m0 = _first_mismatch(lit, ref)

    return HookLemmaReport(r, m0 is None and m1 is None and m2 is None,
                           m1 is None, m2 is None, m0 is None,
                           m1 or m2 or m0, k1, k2)


# -- the banana fiber sum ----------------------------------------------------

QGENS = ("Q1", "Q2", "Q3", "p")


def fiber_window(dmax: int, pwin, tilt: int = 0, lo=0) -> Window:
    """(Q1, Q2, Q3, p) window: Q-degree <= dmax, p + tilt*deg(Q) in [lo, pwin + tilt*dmax]."""
    t = {"p": {"Q1": tilt, "Q2": tilt, "Q3": tilt}} if tilt else None
    return Window(QGENS, (0, 0, 0, lo), (None, None, None, Fraction(pwin) + tilt * dmax),
                  tilt=t, graded=QGENS[:3], cap=dmax)


def _triples(dmax: int):
    parts = enumerate_partitions(dmax)
    for a in parts:
        for b in parts:
            if a.size + b.size > dmax:
                continue
            for c in parts:
                if a.size + b.size + c.size <= dmax:
                    yield a, b, c


def _conj3(t):
    return tuple(r.conjugate() for r in t)


def fiber_sum_lower(dmax: int) -> dict:
    """Termwise lower p-bound per Q-degree vector d for the fiber sum."""
    out: dict = {}
    for t in _triples(dmax):
        d = tuple(r.size for r in t)
        lo = vertex_tilde_lower(*t) + vertex_tilde_lower(*_conj3(t))
        out[d] = min(out.get(d, lo), lo)
    return out


def fiber_tilt(dmax: int) -> int:
    """Smallest tilt making every Q-slice of the fiber sum start at p^>=0."""
    w = 0
    for d, lo in fiber_sum_lower(dmax).items():
        n = sum(d)
        if n:
            w = max(w, -((lo.numerator) // (lo.denominator * n)))
    return w


_VT_CACHE: dict = {}


def _vt(t, cap):
    key = (t, cap)
    got = _VT_CACHE.get(key)
    if got is None:
        got = _VT_CACHE[key] = vertex_tilde(*t, cap)
    return got


def _vt_brute(t, cap):
    """Normalized vertex p^-shift V / M(p) from 3D-partition counts, through p^cap."""
    key = ("brute", t, cap)
    got = _VT_CACHE.get(key)
    if got is not None:
        return got
    shift = normalization_shift(*t)
    top = math.floor(cap + shift)
    v = vertex_bruteforce(*t, top).series
    lo = v.window.lo[0]
    minv = macmahon(_pwin(0, top - lo), "p", power=-1)
    got = _VT_CACHE[key] = (v * minv).shift({"p": -shift})
    return got


def banana_fiber_sum(dmax: int, pwin, tilt: int | None = None,
                     oracle: str = "schur") -> TruncSeries:
    """M(p)^2 sum (-Q1)^|R1| (-Q2)^|R2| (-Q3)^|R3| V~_R V~_R' over |R| <= dmax.

    Every Q-slice is exact through p^pwin (lower Q-degrees further, by the
    tilt).  Half-integral p-powers must cancel in each product
    V~_R V~_R'; this is asserted.  ``oracle="bruteforce"`` takes every
    vertex from 3D-partition counting instead of the skew-Schur formula.
    """
    vt = {"schur": _vt, "bruteforce": _vt_brute}[oracle]
    if tilt is None:
        tilt = fiber_tilt(dmax)
    win = fiber_window(dmax, pwin, tilt)
    top = win.hi[3]
    terms: dict = {}
    for t in _triples(dmax):
        tc = _conj3(t)
        d = tuple(r.size for r in t)
        n = sum(d)
        target = top - tilt * n
        la, lb = vertex_tilde_lower(*t), vertex_tilde_lower(*tc)
        if la + lb > target:
            continue
        prod = vt(t, target - lb) * vt(tc, target - la)
        sign = -1 if n % 2 else 1
        for (e,), c in prod.natural_terms().items():
            if e > target:
                continue
            if e.denominator != 1:
                raise ArithmeticError(f"half-integral p-power survives for legs {t}")
            key = d + (int(e),)
            terms[key] = terms.get(key, 0) + sign * c
    s = TruncSeries(win, terms)
    return macmahon(win, "p", power=2) * s
