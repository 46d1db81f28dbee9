"""Gopakumar-Vafa invariants from product-form DT partition functions."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd

from .banana_dt import curve_norm, degree_vectors, exact_rows, known_p, q_slice
from .qforms import divisors, mobius
from .series import TruncSeries, Window, log_unit, product_expand, scalar_display


def basis_element(g: int) -> dict:
    """(y^{1/2} + y^{-1/2})^{2g} = y^{-g} (1+y)^{2g} for g >= 0, as exponent -> coeff."""
    return {j - g: comb(2 * g, j) for j in range(2 * g + 1)}


def _shifted_basis(g: int) -> dict:
    """y^{1-g} (1+y)^{2g-2} for g >= 1 (a Laurent polynomial)."""
    return {j + 1 - g: comb(2 * g - 2, j) for j in range(2 * g - 1)}


@dataclass
class PalindromicLaurent:
    """Laurent polynomial in y (``series=False``) or an ascending truncation
    known through ``y^known`` (``series=True``)."""

    coeffs: dict
    series: bool = False
    known: int | None = None

    def is_palindromic(self) -> bool:
        return all(self.coeffs.get(-e, 0) == c for e, c in self.coeffs.items())


class GVError(ArithmeticError):
    pass


def decompose_polynomial(p: dict) -> list:
    """Coefficients m_g with p = sum m_g (y^{1/2}+y^{-1/2})^{2g}, g >= 0.

    Peels the top exponent; p must be palindromic and the remainder must
    vanish exactly.
    """
    rest = {e: c for e, c in p.items() if c}
    if any(rest.get(-e, 0) != c for e, c in rest.items()):
        raise GVError("Laurent slice is not palindromic")
    if not rest:
        return []
    gmax = max(rest)
    if gmax < 0:
        raise GVError("palindromic polynomial with negative top degree")
    out = [0] * (gmax + 1)
    for g in range(gmax, -1, -1):
        m = rest.get(g, 0)
        out[g] = m
        if m:
            for e, c in basis_element(g).items():
                v = rest.get(e, 0) - m * c
                if v:
                    rest[e] = v
                else:
                    rest.pop(e, None)
    if rest:
        raise GVError(f"nonzero remainder {rest} after peeling")
    return _trim(out)


def _trim(v: list) -> list:
    while v and v[-1] == 0:
        v.pop()
    return v


def gv_from_rows(rows: dict, known: int, margin: int = 6) -> list:
    """GV invariants [n^0, n^1, ...] from a(beta, k) given for k <= known.

    S(y) = sum_k a(k) (-y)^k equals sum_g n^g y^{1-g} (1+y)^{2g-2}:
    g >= 1 terms are Laurent polynomials peeled from the lowest exponent
    upward; what remains must be n^0 y/(1+y)^2 = n^0 sum_{k>=1} (-1)^{k-1} k y^k
    on the whole known range, and at least ``margin`` coefficients must be
    known past the last peeled term.
    """
    s = {k: (c if k % 2 == 0 else -c) for k, c in rows.items() if c}
    if not s:
        return []
    out: dict = {}
    while s and min(s) <= 0:
        e = min(s)
        g = 1 - e
        m = s[e]
        out[g] = m
        for ee, c in _shifted_basis(g).items():
            if ee > known:
                continue
            v = s.get(ee, 0) - m * c
            if v:
                s[ee] = v
            else:
                s.pop(ee, None)
        if g - 1 + margin > known:
            raise GVError("window too small to certify the g >= 1 peel")
    n0 = s.get(1, 0)
    for k in range(1, known + 1):
        want = n0 * k * (1 if k % 2 else -1)
        if s.get(k, 0) != want:
            raise GVError(f"residual is not proportional to y/(1+y)^2 at y^{k}")
    if any(k > known for k in s):
        raise GVError("coefficients beyond the declared window")
    gmax = max(list(out) + [0])
    res = [0] * (gmax + 1)
    res[0] = n0
    for g, m in out.items():
        res[g] = m
    return _trim(res)


@dataclass
class GVTable:
    """n^g_a for a <= amax; ``divisor`` 12 gives the n/12 view."""

    entries: dict = field(default_factory=dict)
    amax: int = -1
    divisor: int = 12

    def n(self, a: int, g: int) -> int:
        return self.entries.get((a, g), 0)

    def row(self, a: int) -> list:
        gs = [g for (aa, g) in self.entries if aa == a]
        return [self.n(a, g) for g in range(max(gs) + 1)] if gs else []

    def scaled(self, a: int, g: int) -> Fraction:
        return Fraction(self.n(a, g), self.divisor)

    def divisible(self) -> bool:
        return all(v % self.divisor == 0 for v in self.entries.values())

    def support_ok(self) -> bool:
        """Nonzero entries only at a = 0 or -1 mod 4."""
        return all(a % 4 in (0, 3) for (a, g), v in self.entries.items() if v)

    def rows(self):
        for a in range(-1, self.amax + 1):
            for g, v in enumerate(self.row(a)):
                yield a, g, v

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["a", "g", "n", f"n/{self.divisor}"])
        for a, g, v in self.rows():
            w.writerow([a, g, v, scalar_display(Fraction(v, self.divisor))])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {"amax": self.amax, "divisor": self.divisor,
                "entries": [{"a": a, "g": g, "n": v, "n_scaled": scalar_display(Fraction(v, self.divisor))}
                            for a, g, v in self.rows()]}

    def layout(self, nmax: int | None = None, gmax: int = 6) -> str:
        """The two tables n^g_{4n-1}/12 and n^g_{4n}/12, rows n, columns g.

        Rows stop at ``nmax`` or at the last a <= amax.
        """
        lines = []
        for label, shift in (("4n-1", -1), ("4n", 0)):
            lines.append(f"n^g_{{{label}}}/{self.divisor}")
            lines.append("n," + ",".join(f"g={g}" for g in range(gmax + 1)))
            top = (self.amax - shift) // 4
            for n in range(top + 1 if nmax is None else min(nmax, top) + 1):
                a = 4 * n + shift
                vals = [scalar_display(self.scaled(a, g)) for g in range(gmax + 1)]
                lines.append(f"{n}," + ",".join(vals))
            lines.append("")
        return "\n".join(lines)


def gv_banana_table(amax: int, n_fibers: int = 12, margin: int = 6) -> GVTable:
    """n^g_a from a(beta_d, k) = 12 c(||d||, k), series-mode peeling.

    Each row is peeled on the window k <= K and again on K + margin; the
    two results must agree.
    """
    rows = exact_rows(max(amax, 0))
    table = GVTable(amax=amax, divisor=n_fibers)
    for a in range(-1, amax + 1):
        row = rows[a]
        if row.k_min is None:
            continue
        kk = -row.k_min + 2 + 2 * margin
        first = None
        for known in (kk, kk + margin):
            data = {k: n_fibers * v for k, v in row.ascending(known).items()}
            res = gv_from_rows(data, known, margin)
            if first is None:
                first = res
            elif res != first:
                raise GVError(f"GV row {a} not stable under window growth")
        for g, v in enumerate(first):
            if v:
                table.entries[(a, g)] = v
    return table


def _flip_y(s: TruncSeries, yi: int) -> dict:
    """Natural terms with y -> -y."""
    out = {}
    for e, c in s.natural_terms().items():
        out[e] = c if int(e[yi]) % 2 == 0 else -c
    return out


def _slices(terms: dict) -> dict:
    out: dict = {}
    for (qe, ye), c in terms.items():
        out.setdefault(int(qe), {})[int(ye)] = c
    return out


def thm18_product(amax: int) -> dict:
    """Q-slices of 12 prod (1+yQ^{2n-1})(1+y^-1Q^{2n-1})(1-Q^{2n}) / [(1+yQ^4n)(1+y^-1Q^4n)(1-Q^4n)]^2.

    Expanded in u = -y (so every factor is 1 - monomial), then u -> -y.
    """
    qmax = amax + 1
    w = Window(("Q", "y"), (0, 0), (qmax, None), tilt={"y": {"Q": 1}})
    fac = []
    n = 1
    while 2 * n - 1 <= qmax:
        fac += [({"Q": 2 * n - 1, "y": 1}, -1), ({"Q": 2 * n - 1, "y": -1}, -1),
                ({"Q": 2 * n}, -1)]
        if 4 * n <= qmax:
            fac += [({"Q": 4 * n, "y": 1}, 2), ({"Q": 4 * n, "y": -1}, 2), ({"Q": 4 * n}, 2)]
        n += 1
    s = product_expand(w, fac).scale(12)
    return _slices(_flip_y(s, 1))


def _table_from_slices(slc: dict, amax: int, divisor: int) -> GVTable:
    table = GVTable(amax=amax, divisor=divisor)
    for a in range(-1, amax + 1):
        for g, v in enumerate(decompose_polynomial(slc.get(a + 1, {}))):
            if v:
                table.entries[(a, g)] = v
    return table


def gv_genfun_expand(amax: int, ywin=None) -> dict:
    """a -> PalindromicLaurent Q^{a+1} slice of the generating product."""
    slc = thm18_product(amax)
    out = {}
    for a in range(-1, amax + 1):
        p = PalindromicLaurent(slc.get(a + 1, {}))
        if not p.is_palindromic():
            raise GVError(f"Q^{a + 1} slice is not palindromic")
        out[a] = p
    return out


def gv_genfun_table(amax: int) -> GVTable:
    """GV table from the generating product, polynomial-mode peeling."""
    return _table_from_slices(thm18_product(amax), amax, 12)


def kkv_product(amax: int) -> dict:
    """Q-slices of prod 1 / [(1+yQ^n)^2 (1+y^-1 Q^n)^2 (1-Q^n)^20]."""
    qmax = amax + 1
    w = Window(("Q", "y"), (0, 0), (qmax, None), tilt={"y": {"Q": 1}})
    fac = []
    for n in range(1, qmax + 1):
        fac += [({"Q": n, "y": 1}, 2), ({"Q": n, "y": -1}, 2), ({"Q": n}, 20)]
    return _slices(_flip_y(product_expand(w, fac), 1))


def kkv_k3_table(amax: int, ywin=None) -> GVTable:
    """K3 GV invariants from the KKV product (no divisibility by 12)."""
    return _table_from_slices(kkv_product(amax), amax, 1)



# -- class independence -----------------------------------------------------

def plethystic_exponents(z: TruncSeries, dmax: int):
    """Exponents a(d, k) with z = Z_0 prod (1 - p^k Q^d)^{-a(d, k)}, d != 0.

    log z on the Q^D slice is sum_{r | D} (1/r) A_{D/r}(p^r); Moebius
    inversion recovers A_D.  Returns ({d: {k: a}}, {d: highest known k}).
    """
    log = log_unit(z)
    slices, known = {}, {}
    for d in degree_vectors(dmax):
        if sum(d):
            slices[d] = q_slice(log, d)
            known[d] = int(known_p(log, d))
    out, top = {}, {}
    for d in slices:
        acc: dict = {}
        kd = known[d]
        for r in divisors(gcd(*d)):
            mu = mobius(r)
            if not mu:
                continue
            sub = tuple(x // r for x in d)
            kd = min(kd, r * known[sub])
            for e, c in slices[sub].items():
                k = r * int(e)
                acc[k] = acc.get(k, 0) + Fraction(mu, r) * c
        out[d] = {k: v for k, v in acc.items() if v and k <= kd}
        top[d] = kd
    return out, top


@dataclass
class ClassReport:
    passed: bool
    exponents: dict
    known: dict
    groups: dict
    swap_equal: bool
    integral: bool
    matches_rows: bool
    mismatch: tuple | None = None

    def __bool__(self):
        return self.passed


def class_independence_check(dmax: int = 3, pwin: int = 6,
                             oracle: str = "bruteforce") -> ClassReport:
    """Fiber-sum exponents a(d, k) depend on d only through ||d||.

    Also compares the raw Q^(1,1,0) and Q^(0,1,1) coefficients and records
    whether the exponents equal c(||d||, k).
    """
    from .vertex import banana_fiber_sum
    z = banana_fiber_sum(dmax, pwin, oracle=oracle)
    exps, known = plethystic_exponents(z, dmax)
    groups: dict = {}
    for d in exps:
        groups.setdefault(curve_norm(d), []).append(d)
    mismatch = None
    for a, ds in sorted(groups.items()):
        kk = min(known[d] for d in ds)
        ref = {k: v for k, v in exps[ds[0]].items() if k <= kk}
        for d in ds[1:]:
            got = {k: v for k, v in exps[d].items() if k <= kk}
            if got != ref and mismatch is None:
                mismatch = (a, ds[0], d)
    integral = all(Fraction(v).denominator == 1 for e in exps.values() for v in e.values())
    rows = exact_rows(max(max(groups), 0))
    matches = all(exps[d] == {k: v for k, v in rows[curve_norm(d)].ascending(known[d]).items()}
                  if curve_norm(d) >= -1 else not exps[d] for d in exps)
    swap = True
    if dmax >= 2:
        swap = q_slice(z, (1, 1, 0)) == q_slice(z, (0, 1, 1))
    return ClassReport(mismatch is None and swap and integral, exps, known,
                       {a: sorted(ds) for a, ds in groups.items()}, swap, integral,
                       matches, mismatch)
