"""Theta functions, Eisenstein series and the basic weak Jacobi forms.

``theta1`` is stored in the real normalization

    theta1(q, z) = sum_{k in Z+1/2} (-1)^(k+1/2) q^(k^2/2) z^k
                 = q^(1/8) z^(-1/2) (1-z) prod_n (1-q^n)(1-z q^n)(1-z^-1 q^n),

i.e. the usual odd theta function divided by ``-i``.  Every consumer uses
theta1 in ratios or squares, where the factor only contributes a sign that
the consumer accounts for explicitly.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .series import TruncSeries, Window, mul, product_expand


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple:
    b = [Fraction(1)]
    for m in range(1, n + 1):
        s = sum(comb(m + 1, j) * b[j] for j in range(m))
        b.append(-s / (m + 1))
    return tuple(b)


def bernoulli(n: int) -> Fraction:
    """B_n with B_1 = -1/2, from ``sum_j C(n+1, j) B_j = 0``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _bernoulli_table(n)[n]


def bernoulli_table(n: int) -> list[Fraction]:
    return list(_bernoulli_table(n))


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def divisor_sigma(n: int, k: int) -> int:
    return sum(d ** k for d in divisors(n))


def mobius(n: int) -> int:
    out, m, f = 1, n, 2
    while f * f <= m:
        if m % f == 0:
            m //= f
            if m % f == 0:
                return 0
            out = -out
        f += 1
    return -out if m > 1 else out


# -- theta functions ------------------------------------------------------

def _mono(z: dict, k) -> dict:
    return {g: Fraction(e) * k for g, e in z.items()}


def _add(*ms: dict) -> dict:
    out: dict = {}
    for m in ms:
        for g, e in m.items():
            out[g] = out.get(g, 0) + e
    return out


def theta1_sum(window: Window, q: str = "q", z: dict | None = None,
               qscale: int = 1) -> TruncSeries:
    """Real-normalized theta1(q^qscale, z) from the sum over half-integers.

    ``z`` is a monomial given as gen -> exponent (default ``y``).
    """
    z = {"y": 1} if z is None else z
    qcap = window.hi[window.gens.index(q)]
    if qcap is None:
        raise ValueError("theta sums need a truncated q direction")
    terms = {}
    m = 0
    while True:
        k = Fraction(2 * m + 1, 2)
        qe = k * k / 2 * qscale
        if qcap is not None and qe > qcap:
            break
        for kk, sign in ((k, -1 if m % 2 == 0 else 1), (-k, 1 if m % 2 == 0 else -1)):
            mono = _add({q: qe}, _mono(z, kk))
            terms[tuple(mono.get(g, 0) for g in window.gens)] = sign
        m += 1
    return TruncSeries.from_natural(window, terms)


def theta1_product(window: Window, q: str = "q", z: dict | None = None,
                   qscale: int = 1) -> TruncSeries:
    """Real-normalized theta1 from the Jacobi triple product."""
    z = {"y": 1} if z is None else z
    gens = window.gens
    qcap = window.hi[gens.index(q)]

    def vec(m):
        return tuple(m.get(g, 0) for g in gens)

    def binom(m):  # 1 - monomial
        return TruncSeries.from_natural(window, {vec({}): 1, vec(m): -1})

    result = TruncSeries.from_natural(
        window, {vec(_add({q: Fraction(qscale, 8)}, _mono(z, Fraction(-1, 2)))): 1})
    result = mul(result, binom(dict(z)))
    n = 1
    while n * qscale <= qcap:
        qn = {q: n * qscale}
        for m in (qn, _add(qn, z), _add(qn, _mono(z, -1))):
            result = mul(result, binom(m))
        n += 1
    return result


def theta4_sum(window: Window, q: str = "q", z: dict | None = None,
               qscale: int = 1) -> TruncSeries:
    """theta4(q^qscale, z) = sum_k q^(qscale k^2) (-z)^k."""
    z = {"y": 1} if z is None else z
    qcap = window.hi[window.gens.index(q)]
    terms = {}
    k = 0
    while k * k * qscale <= qcap:
        for kk in ({k, -k}):
            mono = _add({q: k * k * qscale}, _mono(z, kk))
            terms[tuple(mono.get(g, 0) for g in window.gens)] = (-1) ** k
        k += 1
    return TruncSeries.from_natural(window, terms)


def jacobi_window(qmax, lo_y=Fraction(-1, 2), yhi=None) -> Window:
    """Window in (q, y) with y tilted by q so slices may reach y^{-n-1}."""
    return Window(("q", "y"), (0, lo_y), (qmax, yhi), tilt={"y": {"q": 1}})


def theta1(qmax, ywin=None) -> TruncSeries:
    """theta1(q, y) (real normalization), exact in y, truncated at q^qmax.

    Both the sum and the product form are computed and required to agree.
    ``ywin`` (if given) is only a sanity bound on the y-support.
    """
    w = jacobi_window(qmax)
    s = theta1_sum(w)
    p = theta1_product(w)
    if s != p:
        raise ArithmeticError("theta1 sum and product forms disagree")
    if ywin is not None:
        bound = max((abs(e[1]) for e in s.natural_terms()), default=0)
        if bound > ywin:
            raise ValueError(f"theta1 needs a y-window of at least {bound}")
    return s


def theta4(qmax, ywin=None) -> TruncSeries:
    """theta4(q, y) = sum_k q^(k^2) (-y)^k, exact in y."""
    w = jacobi_window(qmax, lo_y=-1)
    return theta4_sum(w)


# -- MacMahon and Eisenstein ---------------------------------------------

def macmahon(window: Window, p: str = "p", u: dict | None = None,
             power: int = 1) -> TruncSeries:
    """M(u, p)^power = prod_m (1 - u p^m)^(-m * power) inside ``window``."""
    u = u or {}
    pi = window.gens.index(p)
    phi = window.hi[pi]
    if phi is None:
        raise ValueError("MacMahon needs a truncated p direction")
    factors = []
    m = 1
    while m <= phi:
        mono = dict(u)
        mono[p] = mono.get(p, 0) + m
        factors.append((mono, m * power))
        m += 1
    return product_expand(window, factors)


def eisenstein(weight: int, qmax: int) -> TruncSeries:
    """E_{2g} = 1 - (4g / B_{2g}) sum sigma_{2g-1}(n) q^n, for 2g >= 4."""
    if weight % 2 or weight < 4:
        raise ValueError("weight must be even and at least 4")
    g = weight // 2
    pref = Fraction(4 * g) / bernoulli(2 * g)
    w = Window(("q",), (0,), (qmax,))
    terms = {(0,): 1}
    for n in range(1, qmax + 1):
        terms[(n,)] = -pref * divisor_sigma(n, 2 * g - 1)
    return TruncSeries(w, terms)


def eisenstein_in(window: Window, weight: int, q: str = "q") -> TruncSeries:
    """E_weight placed in a multi-generator window."""
    qmax = window.hi[window.gens.index(q)]
    e = eisenstein(weight, int(qmax))
    i = window.gens.index(q)
    terms = {}
    for (n,), c in e.terms.items():
        v = [0] * len(window.gens)
        v[i] = n
        terms[tuple(v)] = c
    return TruncSeries(window, terms)


# -- weak Jacobi forms of index 1 ----------------------------------------

def phi_m21(qmax: int, ywin=None) -> TruncSeries:
    """phi_{-2,1} = y^-1 (1-y)^2 prod (1-yq^n)^2 (1-y^-1 q^n)^2 / (1-q^n)^4."""
    w = jacobi_window(qmax, lo_y=-1)
    res = TruncSeries(w, {(0, -1): 1, (0, 0): -2, (0, 1): 1})
    for n in range(1, qmax + 1):
        for ye in (1, -1):
            f = TruncSeries(w, {(0, 0): 1, (n, ye): -1})
            res = mul(res, mul(f, f))
    eta = product_expand(w, [({"q": n}, 4) for n in range(1, qmax + 1)])
    res = mul(res, eta)
    _check_index_one(res)
    # index 1 forces l^2 <= 4n + 1, hence l + n >= -1 in every slice
    return res.assume_lower_bounds({"y": -1})


def weierstrass_p(qmax: int, ywin: int) -> TruncSeries:
    """wp(q, y) with 1/12 + y/(1-y)^2 expanded ascending in y.

    The window truncates the tilted y-exponent ``l + n`` at ``ywin``.
    """
    w = jacobi_window(qmax, lo_y=0, yhi=ywin)
    terms = {(0, 0): Fraction(1, 12)}
    for d in range(1, ywin + 1):
        terms[(0, d)] = d
    for n in range(1, qmax + 1):
        for d in range(1, n + 1):
            if n % d:
                continue
            for ye, c in ((d, d), (-d, d), (0, -2 * d)):
                key = (n, ye)
                terms[key] = terms.get(key, 0) + c
    return TruncSeries(w, terms)


def phi_01(qmax: int, ywin=None) -> TruncSeries:
    """phi_{0,1} = 12 phi_{-2,1} wp, returned exact in y.

    The ascending wp expansion is taken wide enough that every y-power of
    the index-1 result is known; exactness is then certified by the
    y <-> 1/y symmetry together with the lower bound.
    """
    yhi = 2 * qmax + 3
    wp = weierstrass_p(qmax, yhi)
    phi = phi_m21(qmax)
    prod = mul(phi, wp).scale(12)
    return promote_symmetric(prod, qmax)


def promote_symmetric(s: TruncSeries, qmax: int) -> TruncSeries:
    """Re-declare an index-1 (q, y) series as exact in y.

    Requires the known y-range of each q^n slice to cover [-n-1, n+1] and
    the stored slice to be y <-> 1/y symmetric.
    """
    lo_y = s.window.lo[1]
    hi_y = s.window.hi[1]
    if hi_y is not None:
        for n in range(qmax + 1):
            if hi_y - n < n + 1:
                raise ValueError("y-window too small to certify exactness")
    terms = s.natural_terms()
    for (n, l), c in terms.items():
        if terms.get((n, -l), 0) != c:
            raise ArithmeticError("series is not symmetric under y -> 1/y")
    w = jacobi_window(qmax, lo_y=min(lo_y, -1))
    return TruncSeries.from_natural(w, terms)


def _check_index_one(s: TruncSeries):
    seen: dict = {}
    for (n, l), c in s.natural_terms().items():
        a = 4 * n - l * l
        if a in seen and seen[a] != c:
            raise ArithmeticError(f"coefficient at 4n-l^2={a} not well defined")
        seen[a] = c


class JacobiCoeffs:
    """Fourier coefficients c(n, l) of a Jacobi form, with weight and index.

    For index 1 the table is determined by ``by_discriminant``:
    ``c(n, l) = c(4n - l^2)``; the constructor verifies that law on every
    stored pair.
    """

    def __init__(self, weight: int, index: int, coeffs: dict, nmax: int):
        self.weight = weight
        self.index = index
        self.nmax = nmax
        self.coeffs = {k: v for k, v in coeffs.items() if v != 0}
        self.by_discriminant: dict = {}
        if index == 1:
            for (n, l), c in self.coeffs.items():
                a = 4 * n - l * l
                prev = self.by_discriminant.get(a)
                if prev is not None and prev != c:
                    raise ArithmeticError(f"index-1 law fails at 4n-l^2={a}")
                self.by_discriminant[a] = c

    @classmethod
    def from_series(cls, s: TruncSeries, weight: int, index: int = 1):
        coeffs = {}
        for (n, l), c in s.natural_terms().items():
            if n.denominator != 1 or l.denominator != 1:
                raise ValueError("Jacobi coefficients need integral exponents")
            coeffs[(int(n), int(l))] = c
        nmax = s.window.hi[0]
        return cls(weight, index, coeffs, int(nmax))

    def c(self, n: int, l: int):
        if n > self.nmax:
            raise ValueError(f"coefficient q^{n} beyond stored q^{self.nmax}")
        return self.coeffs.get((n, l), 0)

    def disc(self, a: int):
        """c(a) for index 1; a must be reachable inside the stored window."""
        if self.index != 1:
            raise ValueError("discriminant lookup needs index 1")
        if a > 4 * self.nmax:
            raise ValueError(f"discriminant {a} beyond stored window")
        return self.by_discriminant.get(a, 0)

    @property
    def max_disc(self) -> int:
        return 4 * self.nmax

    def __repr__(self):
        return f"JacobiCoeffs(weight={self.weight}, index={self.index}, nmax={self.nmax})"
