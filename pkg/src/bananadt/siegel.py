"""Hecke operators, Maass lifts, the lambda expansion of the elliptic genus
and the two routes to the genus-g potentials of the banana manifold."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, gcd, isqrt

from .banana_dt import (curve_norm, degree_vectors, exact_rows, known_p, q_slice,
                        z_banana_product)
from .qforms import (JacobiCoeffs, bernoulli, divisors, eisenstein_in, mobius,
                     phi_01, phi_m21, promote_symmetric)
from .series import log_unit, mul, scalar_display


class RouteMismatch(ArithmeticError):
    pass


class RowRecognitionError(ArithmeticError):
    pass


# -- lambda series over Q(i) -------------------------------------------------

def _gmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


_ZERO = (Fraction(0), Fraction(0))
_ONE = (Fraction(1), Fraction(0))


def _ipow(j: int, c) -> tuple:
    """c * i^j as a Gaussian rational."""
    c = Fraction(c)
    return [(c, Fraction(0)), (Fraction(0), c), (-c, Fraction(0)), (Fraction(0), -c)][j % 4]


def _gseries_mul(a: list, b: list, n: int) -> list:
    out = [_ZERO] * n
    for i, x in enumerate(a[:n]):
        if x == _ZERO:
            continue
        for j in range(n - i):
            out[i + j] = _gadd(out[i + j], _gmul(x, b[j]))
    return out


def _gseries_inv(a: list, n: int) -> list:
    """Inverse of a power series with constant term 1."""
    if a[0] != _ONE:
        raise ValueError("series inverse needs constant term 1")
    out = [_ONE] + [_ZERO] * (n - 1)
    for k in range(1, n):
        acc = _ZERO
        for j in range(1, k + 1):
            if j < len(a):
                acc = _gadd(acc, _gmul(a[j], out[k - j]))
        out[k] = (-acc[0], -acc[1])
    return out


def _exp_i(k, n: int) -> list:
    """e^{ik lambda} = sum (ik)^j lambda^j / j!, j < n."""
    return [_ipow(j, Fraction(k) ** j / factorial(j)) for j in range(n)]


@dataclass
class LambdaSeries:
    """Truncated Laurent series in lambda, coefficients known for
    lambda^j with j <= order."""

    coeffs: dict
    order: int
    even_only: bool = False

    def __post_init__(self):
        self.coeffs = {j: Fraction(c) for j, c in self.coeffs.items() if c and j <= self.order}
        if any(j < -2 for j in self.coeffs):
            raise ValueError("lambda series support starts below lambda^-2")
        if self.even_only and any(j % 2 for j in self.coeffs):
            raise ArithmeticError("odd lambda power in an even series")

    @classmethod
    def from_gaussian(cls, coeffs: dict, order: int, even_only: bool = True):
        """Build from Q(i) coefficients, asserting reality."""
        for j, (re, im) in coeffs.items():
            if im:
                raise ArithmeticError(f"imaginary part at lambda^{j}")
        return cls({j: re for j, (re, im) in coeffs.items()}, order, even_only)

    def coeff(self, j: int) -> Fraction:
        if j > self.order:
            raise ValueError(f"lambda^{j} beyond known order {self.order}")
        return self.coeffs.get(j, Fraction(0))

    def rescaled(self, r: int) -> "LambdaSeries":
        """lambda -> r lambda."""
        return LambdaSeries({j: c * Fraction(r) ** j for j, c in self.coeffs.items()},
                            self.order, self.even_only)

    def __add__(self, other: "LambdaSeries") -> "LambdaSeries":
        order = min(self.order, other.order)
        out = dict(self.coeffs)
        for j, c in other.coeffs.items():
            out[j] = out.get(j, 0) + c
        return LambdaSeries(out, order, self.even_only and other.even_only)

    def scale(self, c) -> "LambdaSeries":
        return LambdaSeries({j: v * c for j, v in self.coeffs.items()}, self.order, self.even_only)

    def first_difference(self, other: "LambdaSeries"):
        for j in range(-2, min(self.order, other.order) + 1):
            if self.coeff(j) != other.coeff(j):
                return j
        return None


def lambda_expand_row(numerator: dict, order: int) -> LambdaSeries:
    """N(t) t / (1-t)^2 at t = e^{i lambda}, exactly over Q(i).

    1 - e^{i lambda} = -i lambda u(lambda) with u = sum (i lambda)^j / (j+1)!,
    so the row is -lambda^-2 N(e^{i lambda}) e^{i lambda} u^-2.
    """
    n = order + 3
    u = [_ipow(j, Fraction(1, factorial(j + 1))) for j in range(n)]
    uinv = _gseries_inv(u, n)
    body = _gseries_mul(uinv, uinv, n)
    num = [_ZERO] * n
    for j, c in numerator.items():
        for idx, v in enumerate(_exp_i(j + 1, n)):
            num[idx] = _gadd(num[idx], _gmul(v, (Fraction(c), Fraction(0))))
    prod = _gseries_mul(num, body, n)
    coeffs = {idx - 2: (-re, -im) for idx, (re, im) in enumerate(prod) if (re, im) != _ZERO}
    return LambdaSeries.from_gaussian(coeffs, order, even_only=True)


# -- Jacobi forms of index 1 and the psi family ----------------------------------

def psi(g: int, qmax: int) -> JacobiCoeffs:
    """Coefficient of lambda^{2g-2} in Ell(C^2, e^{i lambda}) via Zhou's formula.

    psi_{-2} = phi_{-2,1}, psi_0 = phi_{-2,1} wp and, for g > 1,
    psi_{2g-2} = phi_{-2,1} |B_2g| / (2g (2g-2)!) E_2g; c_{2g-2}(0) is
    checked against -|B_2g| / (g (2g-2)!).
    """
    if g < 0:
        raise ValueError("g must be non-negative")
    if g == 0:
        s = phi_m21(qmax)
    elif g == 1:
        s = phi_01(qmax).scale(Fraction(1, 12))
    else:
        phi = phi_m21(qmax)
        b = abs(bernoulli(2 * g))
        s = mul(phi, eisenstein_in(phi.window, 2 * g)).scale(b / (2 * g * factorial(2 * g - 2)))
    out = JacobiCoeffs.from_series(s, 2 * g - 2)
    if g > 1:
        want = -abs(bernoulli(2 * g)) / (g * factorial(2 * g - 2))
        if out.disc(0) != want:
            raise ArithmeticError(f"c_{2 * g - 2}(0) = {out.disc(0)}, expected {want}")
    return out


def psi_qmax(mmax: int, nmax: int) -> int:
    """q-order of an index-1 form needed for coefficients with m, n below the caps."""
    return max(mmax * nmax, 1)


def l_bound(m: int, n: int) -> int:
    """|l| beyond which every (m, n, l) coefficient of an index-1 Maass lift vanishes.

    Nonzero terms need (4mn - l^2)/d^2 >= -1 for some d | gcd(m, n, l).
    """
    return isqrt(4 * m * n + gcd(m, n) ** 2)


# -- Hecke operators and the Maass lift ---------------------------------------------

def _dpow(d: int, e: int) -> Fraction:
    return Fraction(d) ** e


def hecke_v(phi: JacobiCoeffs, m: int, nmax: int, lcap: int = 8) -> JacobiCoeffs:
    """(phi | V_m), coefficients q^n y^r for n <= nmax.

    For m = 0 the q^0 row is infinite in y and is cut at y^lcap; the
    constant c(0,0)(-B_k/2k) is included for k > 0 and omitted otherwise.
    """
    k = phi.weight
    if k % 2:
        raise ValueError("Hecke operators need even weight")
    if phi.index != 1:
        raise ValueError("Hecke operators act on index-1 forms here")
    if m < 0:
        raise ValueError("m must be non-negative")
    if m * nmax > phi.nmax:
        raise ValueError(f"V_{m} to q^{nmax} needs the input to q^{m * nmax}, have q^{phi.nmax}")
    out = {}
    if m == 0:
        if k > 0:
            out[(0, 0)] = phi.c(0, 0) * (-bernoulli(k) / (2 * k))
        for r in range(1, lcap + 1):
            out[(0, r)] = sum((_dpow(d, k - 1) * phi.c(0, r // d) for d in divisors(r)), Fraction(0))
        for n in range(1, nmax + 1):
            for r in range(-n, n + 1):
                out[(n, r)] = sum((_dpow(d, k - 1) * phi.c(0, r // d)
                                   for d in divisors(gcd(n, abs(r)))), Fraction(0))
    else:
        for n in range(nmax + 1):
            lb = l_bound(m, n)
            for r in range(-lb, lb + 1):
                out[(n, r)] = sum((_dpow(d, k - 1) * phi.c(n * m // (d * d), r // d)
                                   for d in divisors(gcd(gcd(n, abs(r)), m))), Fraction(0))
    return JacobiCoeffs(k, m, out, nmax)


@dataclass
class SiegelExpansion:
    """Coefficients of Q^m q^n y^l, m <= mmax, n <= nmax; the (0, 0) row is
    kept for 1 <= l <= lcap."""

    weight: int
    coeffs: dict
    mmax: int
    nmax: int
    lcap: int
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {k: Fraction(v) for k, v in self.coeffs.items() if v}

    def coeff(self, m: int, n: int, l: int) -> Fraction:
        if m > self.mmax or n > self.nmax:
            raise ValueError(f"(m, n) = ({m}, {n}) beyond the computed caps")
        if (m, n) == (0, 0) and l > self.lcap:
            raise ValueError(f"y^{l} beyond the (0, 0) cap {self.lcap}")
        return self.coeffs.get((m, n, l), Fraction(0))

    def index_set(self):
        for m in range(self.mmax + 1):
            for n in range(self.nmax + 1):
                if (m, n) == (0, 0):
                    yield (0, 0, 0)
                    for l in range(1, self.lcap + 1):
                        yield (0, 0, l)
                else:
                    lb = l_bound(m, n)
                    for l in range(-lb, lb + 1):
                        yield (m, n, l)

    def scale(self, c) -> "SiegelExpansion":
        return SiegelExpansion(self.weight, {k: v * c for k, v in self.coeffs.items()},
                               self.mmax, self.nmax, self.lcap, dict(self.metadata))

    def exchange_symmetric(self) -> bool:
        """coeff(m, n, l) = coeff(n, m, l) wherever both are computed."""
        for (m, n, l), v in self.coeffs.items():
            if n <= self.mmax and m <= self.nmax and self.coeffs.get((n, m, l), 0) != v:
                return False
        return True

    def first_mismatch(self, other: "SiegelExpansion"):
        keys = sorted(set(self.coeffs) | set(other.coeffs))
        for key in keys:
            if self.coeffs.get(key, 0) != other.coeffs.get(key, 0):
                return key
        return None

    def __eq__(self, other):
        if not isinstance(other, SiegelExpansion):
            return NotImplemented
        return self.weight == other.weight and self.first_mismatch(other) is None

    def to_json(self) -> dict:
        return {"weight": self.weight, "mmax": self.mmax, "nmax": self.nmax, "lcap": self.lcap,
                "metadata": self.metadata,
                "coeffs": [{"m": m, "n": n, "l": l, "c": scalar_display(v)}
                           for (m, n, l), v in sorted(self.coeffs.items())]}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["m", "n", "l", "coeff"])
        for (m, n, l), v in sorted(self.coeffs.items()):
            w.writerow([m, n, l, scalar_display(v)])
        return buf.getvalue()


def _lift_constant(phi: JacobiCoeffs):
    k = phi.weight
    return phi.disc(0) * (-bernoulli(k) / (2 * k)) if k > 0 else None


def maass_lift_hecke(phi: JacobiCoeffs, mmax: int, nmax: int, lcap: int = 8) -> dict:
    """ML(phi) = sum_m (phi | V_m) Q^m."""
    out = {}
    for m in range(mmax + 1):
        for (n, r), c in hecke_v(phi, m, nmax, lcap).coeffs.items():
            out[(m, n, r)] = c
    return out


def maass_lift_polylog(phi: JacobiCoeffs, mmax: int, nmax: int, lcap: int = 8) -> dict:
    """c(0)(-B_k/2k) + sum c(4nm - l^2) Li_{1-k}(Q^m q^n y^l), l > 0 on (0, 0).

    Each term Li_{1-k}(x) = sum_j j^{k-1} x^j is spread over its multiples.
    """
    k = phi.weight
    out: dict = {}
    const = _lift_constant(phi)
    if const:
        out[(0, 0, 0)] = const
    for m in range(mmax + 1):
        for n in range(nmax + 1):
            if (m, n) == (0, 0):
                ls = range(1, lcap + 1)
            else:
                lb = l_bound(m, n)
                ls = range(-lb, lb + 1)
            for l in ls:
                c = phi.disc(4 * m * n - l * l) if 4 * m * n - l * l >= -1 else 0
                if not c:
                    continue
                j = 1
                while j * m <= mmax and j * n <= nmax and ((m, n) != (0, 0) or j * l <= lcap):
                    key = (j * m, j * n, j * l)
                    out[key] = out.get(key, 0) + _dpow(j, k - 1) * c
                    j += 1
    return out


def maass_lift(phi: JacobiCoeffs, mmax: int, nmax: int, lcap: int = 8,
               check: bool = True) -> SiegelExpansion:
    """Maass lift by Hecke operators, cross-checked against the polylog form."""
    hecke = maass_lift_hecke(phi, mmax, nmax, lcap)
    out = SiegelExpansion(phi.weight, hecke, mmax, nmax, lcap,
                          {"constant_omitted": phi.weight <= 0})
    if check:
        poly = SiegelExpansion(phi.weight, maass_lift_polylog(phi, mmax, nmax, lcap),
                               mmax, nmax, lcap)
        bad = out.first_mismatch(poly)
        if bad is not None:
            raise RouteMismatch(f"Hecke and polylog lifts differ at {bad}")
    return out


# -- genus-g potentials ------------------------------------------------------------

def fg_constant(g: int) -> Fraction:
    """12 B_{2g-2} |B_2g| / (g (4g-4) (2g-2)!)."""
    if g < 2:
        raise ValueError("degree-0 constant needs g >= 2")
    return 12 * bernoulli(2 * g - 2) * abs(bernoulli(2 * g)) / (g * (4 * g - 4) * factorial(2 * g - 2))


def gw_degree_zero(g: int, euler: int) -> Fraction:
    """(-1)^g e/2 |B_2g| |B_{2g-2}| / (2g (2g-2) (2g-2)!)."""
    if g < 2:
        raise ValueError("degree-0 invariant needs g >= 2")
    b = abs(bernoulli(2 * g)) * abs(bernoulli(2 * g - 2))
    return (-1) ** g * Fraction(euler, 2) * b / (2 * g * (2 * g - 2) * factorial(2 * g - 2))


def fg_route_lift(g: int, mmax: int, nmax: int, lcap: int = 8) -> SiegelExpansion:
    """F_g = 12 ML(psi_{2g-2}); for g < 2 a formal lift without the constant."""
    phi = psi(g, psi_qmax(mmax, nmax))
    out = maass_lift(phi, mmax, nmax, lcap).scale(12)
    out.metadata.update({"route": "lift", "g": g})
    return out


def _lift_classes(mmax: int, nmax: int, lcap: int):
    """(m, n, l) -> d = (l + n + m, n, m) for the Siegel index set."""
    for m in range(mmax + 1):
        for n in range(nmax + 1):
            if (m, n) == (0, 0):
                ls = range(1, lcap + 1)
            else:
                lb = l_bound(m, n)
                ls = range(-lb, lb + 1)
            for l in ls:
                yield (m, n, l), (l + n + m, n, m)


def factorwise_log_row(d, pmax: int, n_fibers: int = 12) -> dict:
    """Q^d slice of log prod (1 - p^k Q^d)^{-N c(||d||, k)}, through p^pmax.

    Each factor contributes N c sum_r p^{rk} Q^{rd} / r.
    """
    out: dict = {}
    g = gcd(*d)
    for r in divisors(g):
        sub = tuple(x // r for x in d)
        a = curve_norm(sub)
        if a < -1:
            continue
        row = exact_rows(max(a, 0))[a]
        for k, c in row.ascending(pmax // r).items():
            out[r * k] = out.get(r * k, 0) + Fraction(n_fibers * c, r)
    return {k: v for k, v in out.items() if v}


def primitive_rows(logrows: dict, pmax: int) -> dict:
    """Moebius inversion A_D(p) = sum_{r | D} mu(r)/r L_{D/r}(p^r)."""
    out = {}
    for d, row in logrows.items():
        acc: dict = {}
        for r in divisors(gcd(*d)):
            mu = mobius(r)
            if not mu:
                continue
            sub = logrows[tuple(x // r for x in d)]
            for e, c in sub.items():
                if r * e <= pmax:
                    acc[r * e] = acc.get(r * e, 0) + Fraction(mu, r) * c
        out[d] = {k: v for k, v in acc.items() if v}
    return out


def recognize_row(row: dict, pmax: int, margin: int = 4) -> dict:
    """Numerator N with row = N(p) p / (1-p)^2 ascending, from a truncation to p^pmax.

    N_j = A_{j+1} - 2 A_j + A_{j-1} is known for j < pmax; the top
    ``margin`` of those must vanish.
    """
    if not row:
        return {}
    lo = min(row)
    num = {}
    for j in range(lo - 1, pmax):
        v = row.get(j + 1, 0) - 2 * row.get(j, 0) + row.get(j - 1, 0)
        if v:
            num[j] = v
    if num and max(num) > pmax - 1 - margin:
        raise RowRecognitionError("p-row does not close to a rational row inside the window")
    return num


def fg_route_dt(g: int, mmax: int, nmax: int, lcap: int = 8, n_fibers: int = 12,
                pmax: int | None = None, lambda_order: int | None = None) -> SiegelExpansion:
    """F_g from log(Z / Z|_{Q=0}) at p = e^{i lambda}, without the psi tables.

    The p-row of every needed class is built factor-wise, inverted to its
    primitive part, recognized as N(p) p/(1-p)^2 and lambda-expanded; the
    multi-covers enter through lambda -> r lambda.  The degree-0 constant
    is the constant-map contribution with Euler characteristic 2N (the
    exponent of M(p) in the degree-0 slice).
    """
    order = 2 * g - 2 if lambda_order is None else lambda_order
    classes = dict(_lift_classes(mmax, nmax, lcap))
    need = set()
    for d in classes.values():
        if min(d) < 0:
            continue
        for r in divisors(gcd(*d)):
            need.add(tuple(x // r for x in d))
    if pmax is None:
        top = max((curve_norm(d) for d in need), default=0)
        pmax = 2 * (isqrt(max(top, 0) + 1) + 4) + 8
    logrows = {d: factorwise_log_row(d, pmax, n_fibers) for d in need}
    prim = primitive_rows(logrows, pmax)
    expand: dict = {}
    for d in need:
        num = recognize_row(prim[d], pmax)
        expand[d] = lambda_expand_row(num, order)
    coeffs: dict = {}
    if g >= 2:
        coeffs[(0, 0, 0)] = gw_degree_zero(g, 2 * n_fibers)
    for key, d in classes.items():
        if min(d) < 0:
            continue
        total = Fraction(0)
        for r in divisors(gcd(*d)):
            sub = tuple(x // r for x in d)
            total += Fraction(1, r) * expand[sub].rescaled(r).coeff(2 * g - 2)
        if total:
            coeffs[key] = total
    return SiegelExpansion(2 * g - 2, coeffs, mmax, nmax, lcap,
                           {"route": "dt", "g": g, "pmax": pmax, "n_fibers": n_fibers,
                            "constant_omitted": g < 2})


def check_factorwise_log(dmax: int = 2, pwin: int = 4, n_fibers: int = 12) -> bool:
    """Factor-wise log rows agree with the log of the expanded DT product."""
    log = log_unit(z_banana_product(dmax, pwin, n_fibers))
    for d in degree_vectors(dmax):
        if not sum(d):
            continue
        known = int(known_p(log, d))
        got = {int(e): c for e, c in q_slice(log, d).items() if e <= known}
        if got != factorwise_log_row(d, known, n_fibers):
            return False
    return True


@dataclass
class A1Report:
    d: int
    passed: bool
    lhs: LambdaSeries
    rhs: LambdaSeries
    mismatch: int | None = None

    def __bool__(self):
        return self.passed


def eq_a1_lhs(d: int, lambda_order: int) -> LambdaSeries:
    """sum_g c_{2g-2}(d) lambda^{2g-2} from the psi tables."""
    qmax = max(1, (d + 1) // 4 + 1)
    coeffs = {}
    for g in range(0, (lambda_order + 2) // 2 + 1):
        coeffs[2 * g - 2] = psi(g, qmax).disc(d)
    return LambdaSeries(coeffs, lambda_order, even_only=True)


def eq_a1_check(d: int, lambda_order: int = 8) -> A1Report:
    """psi-table coefficients against the row of c(d, .) at t = e^{i lambda}."""
    if d < -1:
        raise ValueError("d must be at least -1")
    row = exact_rows(max(d, 0))[d]
    rhs = lambda_expand_row(row.numerator, lambda_order)
    lhs = eq_a1_lhs(d, lambda_order)
    bad = lhs.first_difference(rhs)
    return A1Report(d, bad is None, lhs, rhs, bad)


# -- optional Igusa check ------------------------------------------------------------

def _eis_monomials(weight: int):
    return [(a, b) for a in range(weight // 4 + 1) for b in range(weight // 6 + 1)
            if 4 * a + 6 * b == weight]


def _nullspace(rows: list, ncols: int) -> list:
    """Basis of the kernel of a rational matrix (list of rows)."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots, r = [], 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    out = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -m[i][free]
        out.append(v)
    return out


def jacobi_cusp_form(weight: int, qmax: int) -> JacobiCoeffs:
    """The index-1 cusp form of the given weight (10 or 12), leading coefficient 1.

    Solved inside span{phi_{-2,1} M_{weight+2}, phi_{0,1} M_weight} by
    requiring c(-1) = c(0) = 0.
    """
    phi2 = phi_m21(qmax)
    phi0 = phi_01(qmax)
    gens = []
    for base, w in ((phi2, weight + 2), (phi0, weight)):
        for a, b in _eis_monomials(w):
            s = base
            for _ in range(a):
                s = mul(s, eisenstein_in(base.window, 4))
            for _ in range(b):
                s = mul(s, eisenstein_in(base.window, 6))
            gens.append(JacobiCoeffs.from_series(promote_symmetric(s, qmax), weight))
    kernel = _nullspace([[f.disc(-1) for f in gens], [f.disc(0) for f in gens]], len(gens))
    if len(kernel) != 1:
        raise ArithmeticError(f"cusp space of weight {weight} has dimension {len(kernel)}")
    v = kernel[0]
    coeffs: dict = {}
    for c, f in zip(v, gens):
        for key, x in f.coeffs.items():
            coeffs[key] = coeffs.get(key, 0) + c * x
    coeffs = {k: x for k, x in coeffs.items() if x}
    lead = coeffs[min(coeffs)]
    return JacobiCoeffs(weight, 1, {k: x / lead for k, x in coeffs.items()}, qmax)


def _series_product(a: SiegelExpansion, b: SiegelExpansion, mmax: int, nmax: int) -> dict:
    out: dict = {}
    for (m1, n1, l1), x in a.coeffs.items():
        for (m2, n2, l2), y in b.coeffs.items():
            m, n = m1 + m2, n1 + n2
            if m <= mmax and n <= nmax:
                key = (m, n, l1 + l2)
                out[key] = out.get(key, 0) + x * y
    return {k: v for k, v in out.items() if v}


@dataclass
class IgusaReport:
    passed: bool
    kappa: Fraction | None
    holomorphic_shape: bool
    weight: int
    mismatch: tuple | None = None

    def __bool__(self):
        return self.passed


def igusa_check(mmax: int = 4, nmax: int = 4) -> IgusaReport:
    """240 F_2 chi_10 = kappa chi_12 on m <= mmax, n <= nmax.

    chi_10 starts at Q q, so F_2 enters only below the caps and its (0, 0)
    row is needed only up to 2 l_bound(mmax, nmax) + 1.
    """
    qmax = psi_qmax(mmax, nmax)
    lcap = 2 * l_bound(mmax, nmax) + 1
    chi10 = maass_lift(jacobi_cusp_form(10, qmax), mmax, nmax, lcap)
    chi12 = maass_lift(jacobi_cusp_form(12, qmax), mmax, nmax, lcap)
    f2 = fg_route_lift(2, mmax, nmax, lcap)
    # F_2 chi_10 at (m, n) sees F_2 at (m - m2, n - n2) with m2, n2 >= 1
    prod = _series_product(f2.scale(240), chi10, mmax, nmax)
    # entries with |l| > lcap - L would need F_2 beyond its (0, 0) cut
    reach = lcap - l_bound(mmax, nmax)
    prod = {k: v for k, v in prod.items() if abs(k[2]) <= reach}
    target = chi12.coeffs
    shape = all(4 * m * n - l * l > 0 for (m, n, l) in prod)
    if not target:
        return IgusaReport(False, None, shape, 12)
    lead = min(target)
    kappa = prod.get(lead, Fraction(0)) / target[lead]
    bad = None
    for key in sorted(set(prod) | set(target)):
        if prod.get(key, 0) != kappa * target.get(key, 0):
            bad = key
            break
    return IgusaReport(bad is None and kappa != 0, kappa, shape, f2.weight + chi10.weight, bad)
