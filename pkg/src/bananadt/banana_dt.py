"""The coefficient table c(a, k), the equivariant elliptic genus of C^2 and
of Hilb^m(C^2), and the closed-form DT partition function of the banana
configuration."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .partitions import hooks, partitions_of
from .series import TruncSeries, Window, inverse, mul, product_expand, scalar_display

# real-normalized theta_1 sign: coefficient of z^k, k in Z + 1/2
def _s(k: Fraction) -> int:
    return -1 if (k + Fraction(1, 2)) % 2 else 1


def _half_integers(bound: Fraction):
    """Half-integers k with k^2 / 2 <= bound, i.e. theta_1 exponents in range."""
    m = 0
    out = []
    while True:
        k = Fraction(2 * m + 1, 2)
        if k * k / 2 > bound:
            return out
        out.extend((k, -k))
        m += 1


@dataclass(frozen=True)
class CurveClass:
    d: tuple

    def __post_init__(self):
        if len(self.d) != 3 or any(x < 0 for x in self.d):
            raise ValueError("curve classes are nonnegative triples")

    @property
    def norm(self) -> int:
        return curve_norm(self.d)

    @property
    def degree(self) -> int:
        return sum(self.d)


def curve_norm(d) -> int:
    """||d|| = 2 d1 d2 + 2 d2 d3 + 2 d3 d1 - d1^2 - d2^2 - d3^2."""
    d1, d2, d3 = d
    return 2 * (d1 * d2 + d2 * d3 + d3 * d1) - d1 * d1 - d2 * d2 - d3 * d3


# -- rows of the coefficient table -------------------------------------------

@dataclass(frozen=True)
class CRow:
    """Row a of c(a, k) as the rational function numerator * t/(1-t)^2."""

    a: int
    numerator: dict = field(hash=False)

    def c(self, k: int):
        """Ascending-t coefficient: sum_j N_j (k - j) over k - j >= 1."""
        return sum((c * (k - j) for j, c in self.numerator.items() if k - j >= 1), 0)

    @property
    def k_min(self):
        """Lowest k with c(a, k) != 0 (None for a zero row)."""
        if not self.numerator:
            return None
        return min(self.numerator) + 1

    def ascending(self, kmax: int) -> dict:
        if not self.numerator:
            return {}
        return {k: v for k in range(self.k_min, kmax + 1) if (v := self.c(k))}

    def ascending_truncation(self, kmax: int) -> TruncSeries:
        lo = self.k_min if self.numerator else 0
        w = Window(("t",), (min(lo, kmax),), (kmax,))
        return TruncSeries(w, {(k,): v for k, v in self.ascending(kmax).items()})

    def is_palindromic(self) -> bool:
        return all(self.numerator.get(-j, 0) == c for j, c in self.numerator.items())

    def cleared_symmetric(self) -> bool:
        """t <-> 1/t invariance of numerator * t/(1-t)^2 (the kernel is invariant)."""
        return self.is_palindromic()


@dataclass
class CoeffTable:
    """c(a, k) for -1 <= a <= amax, rows held as exact rational data.

    ``truncations`` holds the theta-ratio expansions, each known through
    ``known_k[a]``; ``rows`` are the exact rows, which agree with them.
    """

    amax: int
    kwin: int
    rows: dict
    truncations: dict = field(default_factory=dict)
    known_k: dict = field(default_factory=dict)

    def c(self, a: int, k: int):
        if a < -1:
            return 0
        if a > self.amax:
            raise ValueError(f"row {a} beyond the stored table (amax={self.amax})")
        return self.rows[a].c(k)

    def k_min(self, a: int):
        return self.rows[a].k_min if a in self.rows else None

    def metadata(self) -> dict:
        return {"amax": self.amax, "kwin": self.kwin,
                "k_min": {a: r.k_min for a, r in sorted(self.rows.items())
                          if r.k_min is not None}}

    def entries(self, kmin=None, kmax=None):
        """(a, k, c) with c != 0, rows in order, k ascending."""
        kmax = self.kwin if kmax is None else kmax
        for a in sorted(self.rows):
            row = self.rows[a]
            for k, v in row.ascending(kmax).items():
                if kmin is None or k >= kmin:
                    yield a, k, v

    def to_csv(self, **kw) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["a", "k", "c"])
        for a, k, v in self.entries(**kw):
            wr.writerow([a, k, scalar_display(v)])
        return buf.getvalue()

    def to_json(self, **kw) -> dict:
        return {"metadata": self.metadata(),
                "rows": [{"a": a, "k": k, "c": scalar_display(v)} for a, k, v in self.entries(**kw)]}


# -- route 1: the theta ratio -------------------------------------------------

def theta_ratio_series(amax: int, kwin: int) -> TruncSeries:
    """sum c(a,k) Q^{a+1} t^k = -Q theta4(Q,t) / theta1(Q^4,t)^2, ascending in t.

    t is tilted by Q with weight 1 (a Q^{a+1} slice starts at
    t^{-(a+1)/4} or above), so every row is known through t^kwin.
    The theta squares are formed as double sums; the denominator is
    shifted by Q^-1 t to constant term 1 before inversion.
    """
    qmax = amax + 1
    top = kwin + qmax
    w = Window(("Q", "t"), (0, 0), (qmax, top + 1), tilt={"t": {"Q": 1}})
    den = {}
    ks = _half_integers(Fraction(qmax + 1, 4))
    for k1 in ks:
        for k2 in ks:
            qe = 2 * (k1 * k1 + k2 * k2) - 1
            if qe > qmax:
                continue
            key = (int(qe), int(k1 + k2 + 1))
            den[key] = den.get(key, 0) + _s(k1) * _s(k2)
    f = TruncSeries(w, den)
    num = {}
    k = 0
    while k * k <= qmax:
        for kk in {k, -k}:
            num[(k * k, kk + 1)] = -((-1) ** k)
        k += 1
    # -theta4 * t, already shifted
    n = TruncSeries(w, num)
    out = mul(n, inverse(f))
    return out.truncate(out.window.replace(hi={"t": top}))


def theta_route_rows(amax: int, kwin: int) -> tuple[dict, dict]:
    s = theta_ratio_series(amax, kwin)
    top = s.window.hi[1]
    rows: dict = {a: {} for a in range(-1, amax + 1)}
    for (qe, te), c in s.natural_terms().items():
        a = int(qe) - 1
        rows[a][int(te)] = c
    known = {a: int(top) - (a + 1) for a in rows}
    return rows, known


# -- route 3: delta_i ----------------------------------------------------------

def _delta_product(imax: int) -> TruncSeries:
    w = Window(("q", "t"), (0, 0), (imax, None), tilt={"t": {"q": 1}})
    fac = []
    for n in range(1, imax + 1):
        fac += [({"q": n}, 2), ({"q": n, "t": 1}, 2), ({"q": n, "t": -1}, 2)]
    return product_expand(w, fac)


def _delta_from_inversion(imax: int, tcap: int) -> TruncSeries:
    """q^{1/4} t^-1 (1-t)^2 / theta1(q,t)^2 from the sum form, ascending in t."""
    top = tcap + imax
    w = Window(("q", "t"), (0, 0), (imax, top), tilt={"t": {"q": 1}})
    den = {}
    ks = _half_integers(Fraction(imax + 1))
    for k1 in ks:
        for k2 in ks:
            qe = (k1 * k1 + k2 * k2) / 2 - Fraction(1, 4)
            if qe > imax:
                continue
            key = (int(qe), int(k1 + k2 + 1))
            den[key] = den.get(key, 0) + _s(k1) * _s(k2)
    g = inverse(TruncSeries(w, den))
    kernel = TruncSeries(w, {(0, 0): 1, (0, 1): -2, (0, 2): 1})
    return g * kernel


def delta_i(imax: int, twin: int | None = None) -> list[dict]:
    """delta_0..delta_imax: q^{-1/4} t/(1-t)^2 sum delta_i q^i = theta1(q,t)^-2.

    Computed from the Jacobi product (exact Laurent polynomials) and
    checked against inversion of the theta sum with the kernel
    t/(1-t)^2 cleared: every known coefficient must match, so the
    extraction leaves nothing outside the Laurent polynomials.
    """
    prod = _delta_product(imax)
    out = []
    for i in range(imax + 1):
        out.append({int(e[0]): c for e, c in prod.slice("q", i).items()})
    if out[0] != {0: 1}:
        raise ArithmeticError("delta_0 must be 1")
    tcap = twin if twin is not None else 2 * imax + 4
    inv = _delta_from_inversion(imax, tcap)
    top = inv.window.hi[1]
    for i in range(imax + 1):
        got = {int(e[0]): c for e, c in inv.slice("q", i).items()}
        exp = {k: c for k, c in out[i].items() if k + i <= top}
        if got != exp:
            raise ArithmeticError(f"delta_{i} is not a Laurent polynomial after kernel extraction")
    return out


def rows_from_delta(amax: int, deltas: list[dict] | None = None) -> dict:
    """Exact rows: numerator_a = -sum_{4i + b^2 - 1 = a} delta_i(t) (-t)^b."""
    imax = max((amax + 1) // 4, 0)
    deltas = deltas if deltas is not None else delta_i(imax)
    rows = {}
    for a in range(-1, amax + 1):
        num: dict = {}
        r = isqrt(a + 1)
        for b in range(-r, r + 1):
            rest = a + 1 - b * b
            if rest % 4:
                continue
            sign = -1 if b % 2 else 1
            for j, c in deltas[rest // 4].items():
                num[j + b] = num.get(j + b, 0) - sign * c
        rows[a] = CRow(a, {k: v for k, v in sorted(num.items()) if v})
    return rows


_TABLES: dict = {}


def c_table(amax: int, kwin: int, check: bool = True) -> CoeffTable:
    """c(a, k) for -1 <= a <= amax from the theta ratio, with exact rows.

    With ``check`` the theta-ratio truncation must agree with the exact
    rows on every known coefficient and each row must be t <-> 1/t
    symmetric.
    """
    key = (amax, kwin, check)
    if key in _TABLES:
        return _TABLES[key]
    exact = rows_from_delta(amax)
    trunc, known = theta_route_rows(amax, kwin) if check else ({}, {})
    if check:
        for a, row in exact.items():
            if not row.is_palindromic():
                raise ArithmeticError(f"row {a} is not t <-> 1/t symmetric")
            lo = min(list(trunc[a]) + [row.k_min or 0])
            want = {k: v for k in range(lo, known[a] + 1) if (v := row.c(k))}
            if trunc[a] != want:
                raise ArithmeticError(f"theta ratio and delta rows disagree at a={a}")
    table = CoeffTable(amax, kwin, exact, trunc, known)
    _TABLES[key] = table
    return table


def exact_rows(amax: int) -> dict:
    """Exact rows only (no theta-ratio cross-check); cached."""
    key = ("rows", amax)
    if key not in _TABLES:
        _TABLES[key] = rows_from_delta(amax)
    return _TABLES[key]


# -- route 2: Ell(C^2) ---------------------------------------------------------

def ell_window(qmax: int, top: int, weight: int = 1, extra_gens=()) -> Window:
    """(q, y, t): y tilted by 2 per q; t tilted by ``weight`` per q, t <= top."""
    return Window(("q", "y", "t"), (0, -1, 0), (qmax, None, top),
                  tilt={"y": {"q": 2}, "t": {"q": weight}})


def ell_box(w: Window, h: int = 1) -> TruncSeries:
    """theta1(q,y t^h) theta1(q,y t^-h) / (theta1(q,t^h) theta1(q,t^-h)).

    Numerator and denominator are double theta sums multiplied by
    q^{-1/4} t^h; the denominator then has constant term -1 and is
    inverted ascending in t.  ``w`` must tilt t by at least h per q.
    """
    gens = w.gens
    qi, yi, ti = gens.index("q"), gens.index("y"), gens.index("t")
    qmax = w.hi[qi]
    ks = _half_integers(Fraction(qmax + 1))
    num, den = {}, {}
    n = len(gens)
    for k1 in ks:
        for k2 in ks:
            qe = (k1 * k1 + k2 * k2) / 2 - Fraction(1, 4)
            if qe > qmax:
                continue
            c = _s(k1) * _s(k2)
            e = [0] * n
            e[qi] = int(qe)
            e[ti] = int(h * (k1 - k2 + 1))
            kd = tuple(e)
            den[kd] = den.get(kd, 0) + c
            e[yi] = int(k1 + k2)
            kn = tuple(e)
            num[kn] = num.get(kn, 0) + c
    out = mul(TruncSeries(w, num), inverse(TruncSeries(w, den)))
    # the denominator carries no y, so the y-support is that of the numerator
    return out.assume_lower_bounds({"y": w.lo[yi]})


@dataclass
class EllCoeffs:
    """c(n, l, k) of Ell(C^2), known for k <= top - n."""

    qmax: int
    top: int
    coeffs: dict
    series: TruncSeries

    def known_k(self, n: int) -> int:
        return self.top - n

    def c(self, n: int, l: int, k: int):
        if n > self.qmax or k > self.known_k(n):
            raise ValueError(f"c({n},{l},{k}) outside the computed window")
        return self.coeffs.get((n, l, k), 0)

    def regroup(self) -> tuple[dict, dict]:
        """Rows by a = 4n - l^2, checking that c(n,l,k) depends on (a, k) only."""
        rows: dict = {}
        known: dict = {}
        byn: dict = {}
        for (n, l, k), c in self.coeffs.items():
            byn.setdefault((n, l), {})[k] = c
        for n in range(self.qmax + 1):
            r = isqrt(4 * n + 1)
            for l in range(-r - 1, r + 2):
                a = 4 * n - l * l
                row = byn.get((n, l), {})
                kk = self.known_k(n)
                if a < -1:
                    if row:
                        raise ArithmeticError(f"nonzero coefficients at 4n-l^2={a}")
                    continue
                if a not in rows:
                    rows[a], known[a] = dict(row), kk
                    continue
                common = min(kk, known[a])
                lhs = {k: v for k, v in rows[a].items() if k <= common}
                rhs = {k: v for k, v in row.items() if k <= common}
                if lhs != rhs:
                    raise ArithmeticError(f"c(n,l,k) depends on more than 4n-l^2={a}")
                if kk > known[a]:
                    rows[a], known[a] = dict(row), kk
        return rows, known


def ell_c2(qmax: int, ywin=None, kwin: int = 12) -> EllCoeffs:
    """Ell_{q,y}(C^2, t), every q^n slice known through t^kwin.

    ``ywin`` is accepted for interface symmetry; y is exact here.
    """
    top = kwin + qmax
    s = ell_box(ell_window(qmax, top), 1)
    co = {}
    for (n, l, k), c in s.natural_terms().items():
        co[(int(n), int(l), int(k))] = c
    return EllCoeffs(qmax, int(top), co, s)


def three_route_check(amax: int, kwin: int) -> dict:
    """Compare theta ratio, regrouped Ell(C^2) and delta rows for a <= amax.

    Returns {a: True/False}; every comparison is on the common known
    k-range.
    """
    exact = rows_from_delta(amax)
    trunc, known = theta_route_rows(amax, kwin)
    qmax = max((amax + 1) // 4, 0) + 1
    ell = ell_c2(qmax, kwin=kwin)
    erows, eknown = ell.regroup()
    out = {}
    for a in range(-1, amax + 1):
        row = exact[a]
        kk = min(known[a], eknown.get(a, known[a]))
        lo = min([row.k_min or 0] + list(trunc[a]) + list(erows.get(a, {})))
        r3 = {k: v for k in range(lo, kk + 1) if (v := row.c(k))}
        r1 = {k: v for k, v in trunc[a].items() if k <= kk}
        r2 = {k: v for k, v in erows.get(a, {}).items() if k <= kk}
        # 4n - l^2 is never 1 or 2 mod 4: such rows are empty in route 2
        reachable = a in eknown or a % 4 in (1, 2)
        out[a] = reachable and r1 == r2 == r3 and row.is_palindromic()
    return out


# -- triple-product form ---------------------------------------------------

@dataclass
class CheckReport:
    passed: bool
    mismatch: tuple | None = None
    detail: str = ""

    def __bool__(self):
        return self.passed


def cor24_product(amax: int, kwin: int) -> TruncSeries:
    """-t/(1-t)^2 prod (1-Q^2n)(1-tQ^{2n-1})(1-t^-1 Q^{2n-1}) / [(1-Q^4n)(1-tQ^4n)(1-t^-1 Q^4n)]^2."""
    qmax = amax + 1
    top = kwin + qmax
    w = Window(("Q", "t"), (0, 0), (qmax, top + 1), tilt={"t": {"Q": 1}})
    fac = [({"t": 1}, 2)]
    n = 1
    while 2 * n - 1 <= qmax:
        fac += [({"Q": 2 * n}, -1), ({"Q": 2 * n - 1, "t": 1}, -1),
                ({"Q": 2 * n - 1, "t": -1}, -1)]
        if 4 * n <= qmax:
            fac += [({"Q": 4 * n}, 2), ({"Q": 4 * n, "t": 1}, 2), ({"Q": 4 * n, "t": -1}, 2)]
        n += 1
    p = product_expand(w, fac).scale(-1)
    p = p.shift({"t": 1})
    return p.truncate(p.window.replace(hi={"t": top}))


def cor24_check(qcap: int, twin: int) -> CheckReport:
    """Theta-ratio expansion against the Jacobi-triple-product form through Q^qcap."""
    amax = qcap - 1
    a = theta_ratio_series(amax, twin)
    b = cor24_product(amax, twin)
    ta, tb = a.natural_terms(), b.natural_terms()
    for e in sorted(set(ta) | set(tb)):
        if ta.get(e, 0) != tb.get(e, 0):
            return CheckReport(False, tuple(e), "first differing (Q, t) exponent")
    return CheckReport(True)


# -- Hilbert schemes of points -------------------------------------------------

def hilb_window(mmax: int, qmax: int, top: int) -> Window:
    """(Q, q, y, t) window: t tilted by mmax per q, y by 2 per q and 1 per Q."""
    return Window(("Q", "q", "y", "t"), (0, 0, 0, 0), (None, qmax, None, top),
                  tilt={"y": {"q": 2, "Q": 1}, "t": {"q": mmax}},
                  graded=("Q",), cap=mmax)


def _box_window(weight: int, qmax: int, top: int) -> Window:
    return Window(("q", "y", "t"), (0, -1, 0), (qmax, None, top),
                  tilt={"y": {"q": 2}, "t": {"q": weight}})


def hilb_ell_localization(m: int, qmax: int, ywin=None, kwin: int = 8,
                          weight: int | None = None) -> TruncSeries:
    """Sum over partitions R of m of prod_boxes Ell(q, y, t^{hook}).

    Returned in (q, y, t) with t tilted by ``weight`` (default max(m, 1))
    per q and known through tilted degree ``kwin + weight*qmax``.
    """
    weight = max(m, 1) if weight is None else weight
    top = kwin + weight * qmax
    w = _box_window(weight, qmax, top)
    if m == 0:
        return TruncSeries.constant(w, 1)
    boxes = {}
    total = None
    for r in partitions_of(m):
        term = None
        for h in hooks(r).multiset():
            if h not in boxes:
                boxes[h] = ell_box(w, h)
            term = boxes[h] if term is None else mul(term, boxes[h])
        term = term.assume_lower_bounds({"y": -m})
        total = term if total is None else total + term
    return total


def hilb_ell_product(mmax: int, qmax: int, ywin=None, kwin: int = 8) -> TruncSeries:
    """prod_{m>=1, n>=0, l, k} (1 - t^k q^n y^l Q^m)^{-c(nm, l, k)}.

    Exponents are read from the Ell(C^2) expansion (route 2) at q-order
    qmax*mmax.  In the window t + mmax*n <= kwin + mmax*qmax, and
    c(nm, l, k) vanishes unless k >= -nm, so the factor list is finite.
    """
    top = kwin + mmax * qmax
    w = hilb_window(mmax, qmax, top)
    nq = qmax * mmax
    ell = ell_c2(max(nq, 1), kwin=top + 1)
    bylevel: dict = {}
    for (n, l, k), c in ell.coeffs.items():
        bylevel.setdefault(n, []).append((l, k, c))
    fac = []
    for m in range(1, mmax + 1):
        for n in range(qmax + 1):
            for l, k, c in bylevel.get(n * m, ()):
                if k + mmax * n > top:
                    continue
                if k > ell.known_k(n * m):
                    raise ArithmeticError("Ell(C^2) window too small for the DMVV product")
                fac.append(({"Q": m, "q": n, "y": l, "t": k}, c))
    return product_expand(w, fac)


def hilb_slice(prod: TruncSeries, m: int) -> dict:
    """Q^m coefficient of a (Q, q, y, t) series as {(n, l, k): c}."""
    return {tuple(int(x) for x in e): c for e, c in prod.slice("Q", m).items()}


def dmvv_check(mmax: int, qmax: int, ywin: int = 4, kwin: int = 6) -> dict:
    """{m: bool} comparing the localization sum with the DMVV product slice.

    Both sides are known on the same region t + mmax*n <= kwin +
    mmax*qmax; comparison is exact on |l| <= ywin and on all l.
    """
    prod = hilb_ell_product(mmax, qmax, ywin, kwin)
    out = {}
    for m in range(1, mmax + 1):
        loc = hilb_ell_localization(m, qmax, ywin, kwin, weight=mmax)
        a = {tuple(int(x) for x in e): c for e, c in loc.natural_terms().items()}
        b = hilb_slice(prod, m)
        out[m] = a == b
    return out


# -- the DT partition function -----------------------------------------------

QGENS = ("Q1", "Q2", "Q3", "p")


def degree_vectors(dmax: int):
    for d1 in range(dmax + 1):
        for d2 in range(dmax + 1 - d1):
            for d3 in range(dmax + 1 - d1 - d2):
                yield (d1, d2, d3)


def z_tilt(dmax: int) -> int:
    """Smallest tilt w with k_min(||d||) + w |d| >= 0 for all |d| <= dmax."""
    amax = max(curve_norm(d) for d in degree_vectors(dmax))
    rows = exact_rows(max(amax, 0))
    w = 0
    for d in degree_vectors(dmax):
        a = curve_norm(d)
        n = sum(d)
        if a < -1 or n == 0:
            continue
        km = rows[a].k_min
        if km is not None and km < 0:
            w = max(w, -(km // n))
    return w


def z_window(dmax: int, pwin, tilt: int) -> Window:
    t = {"p": {"Q1": tilt, "Q2": tilt, "Q3": tilt}} if tilt else None
    return Window(QGENS, (0, 0, 0, 0), (None, None, None, Fraction(pwin) + tilt * dmax),
                  tilt=t, graded=QGENS[:3], cap=dmax)


def z_factors(dmax: int, top, tilt: int, mult: int):
    """(monomial, exponent) pairs of prod (1 - p^k Q^d)^{-mult c(||d||, k)}."""
    amax = max(curve_norm(d) for d in degree_vectors(dmax))
    rows = exact_rows(max(amax, 0))
    fac = []
    for d in degree_vectors(dmax):
        a = curve_norm(d)
        if a < -1:
            continue
        row = rows[a]
        n = sum(d)
        kmax = int(top) - tilt * n
        for k, c in row.ascending(kmax).items():
            if n == 0 and k <= 0:
                continue
            fac.append(({"Q1": d[0], "Q2": d[1], "Q3": d[2], "p": k}, mult * c))
    return fac


def z_fiber_product(dmax: int, pwin, tilt: int | None = None) -> TruncSeries:
    """prod_{d, k} (1 - p^k Q^d)^{-c(||d||, k)} (k > 0 when d = 0).

    Every Q-slice is complete through p^pwin.
    """
    return z_banana_product(dmax, pwin, n_fibers=1, tilt=tilt)


def z_banana_product(dmax: int, pwin, n_fibers: int = 12,
                     tilt: int | None = None) -> TruncSeries:
    """prod_{d, k} (1 - p^k Q^d)^{-N c(||d||, k)} with N = n_fibers."""
    if tilt is None:
        tilt = z_tilt(dmax)
    w = z_window(dmax, pwin, tilt)
    out = product_expand(w, z_factors(dmax, w.hi[3], tilt, n_fibers))
    if any(Fraction(c).denominator != 1 for c in out.terms.values()):
        raise ArithmeticError("non-integral DT coefficient")
    return out


def q_slice(s: TruncSeries, d) -> dict:
    """Coefficient of Q^d in a (Q1, Q2, Q3, p) series as {p-exponent: c}."""
    out = {}
    for e, c in s.natural_terms().items():
        if tuple(int(x) for x in e[:3]) == tuple(d):
            out[e[3]] = c
    return out


def known_p(s: TruncSeries, d) -> Fraction:
    """Highest p-exponent known in the Q^d slice."""
    w = s.window
    tilt = w.tilt[3]
    return w.hi[3] - sum(tw * x for tw, x in zip(tilt, tuple(d) + (0,)))
