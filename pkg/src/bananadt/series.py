"""Exact truncated Laurent series in several commuting generators.

A :class:`TruncSeries` is a finite map from exponent vectors to exact
rationals together with a :class:`Window` saying which coefficients are
known.  Exponents are stored as integers counting multiples of ``1/denom``,
so half- and eighth-integer powers (``q^{1/8}``, ``p^{1/2}``) live next to
ordinary ones; binary operations rescale both operands to the lcm.

Windows never live in globals.  Every operation derives the window inside
which its output is provably exact from the windows of its inputs, so a
product of two Laurent series with negative lower bounds automatically
reports its loss of precision.

For a generator ``g`` the window constrains the *tilted* exponent
``e_g + sum_h tilt[g][h] * e_h``.  Tilting lets the lower bound in ``t`` slide
with the ``q``-degree, which is what ascending expansions such as
``1/theta_1(q, t)`` require: the ``q^n`` slice reaches down to ``t^{-n}``.
A generator with ``hi=None`` is kept exactly (no truncation at all), which
is the right model for genuinely Laurent-polynomial directions such as ``y``.
"""
from __future__ import annotations

import json
from fractions import Fraction
from math import factorial, lcm
from typing import Iterable, Mapping, Sequence

Scalar = int | Fraction


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def scalar_str(c) -> str:
    c = _frac(c)
    return f"{c.numerator}/{c.denominator}"


def scalar_display(c) -> str:
    """Integers bare, other rationals as n/d (table output)."""
    c = _frac(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def parse_scalar(s: str):
    num, den = s.split("/")
    return _norm(Fraction(int(num), int(den)))


class Window:
    """Truncation data: per-generator bounds, optional tilt and degree cap.

    ``lo[g] <= tilted e_g <= hi[g]`` for every stored monomial; ``hi[g] is
    None`` means no truncation in ``g``.  ``cap`` bounds the total degree of
    the generators flagged in ``graded`` (the Kähler-parameter grading).
    Bounds are given in natural units and may be fractional.
    """

    __slots__ = ("gens", "lo", "hi", "tilt", "graded", "cap", "_units")

    def __init__(self, gens: Sequence[str], lo: Sequence, hi: Sequence,
                 tilt: Mapping[str, Mapping[str, int]] | None = None,
                 graded: Iterable[str] = (), cap: int | None = None):
        self.gens = tuple(gens)
        n = len(self.gens)
        if len(set(self.gens)) != n:
            raise ValueError("repeated generator names")
        if len(lo) != n or len(hi) != n:
            raise ValueError("window bounds must match the generators")
        if any(x is None for x in lo):
            raise ValueError("every generator needs a finite lower bound")
        self.lo = tuple(_frac(x) for x in lo)
        self.hi = tuple(None if x is None else _frac(x) for x in hi)
        idx = {g: i for i, g in enumerate(self.gens)}
        mat = [[0] * n for _ in range(n)]
        for g, row in (tilt or {}).items():
            for h, w in row.items():
                if g == h:
                    raise ValueError("a generator cannot be tilted by itself")
                if int(w) != w:
                    raise ValueError("tilt weights must be integers")
                mat[idx[g]][idx[h]] = int(w)
        self.tilt = tuple(tuple(r) for r in mat)
        self.graded = tuple(g in set(graded) for g in self.gens)
        if cap is not None and not any(self.graded):
            raise ValueError("a degree cap needs graded generators")
        self.cap = cap
        self._units = {}

    # -- helpers ---------------------------------------------------------
    @property
    def tilted(self) -> bool:
        return any(any(r) for r in self.tilt)

    def denominators(self) -> int:
        d = 1
        for x in self.lo + tuple(h for h in self.hi if h is not None):
            d = lcm(d, x.denominator)
        return d

    def units(self, denom: int):
        """Integer form of the bounds for exponent denominator ``denom``."""
        u = self._units.get(denom)
        if u is None:
            lo = tuple(x * denom for x in self.lo)
            hi = tuple(None if x is None else x * denom for x in self.hi)
            if any(x.denominator != 1 for x in lo) or any(
                    x is not None and x.denominator != 1 for x in hi):
                raise ValueError("exponent denominator too coarse for window")
            lo = tuple(int(x) for x in lo)
            hi = tuple(None if x is None else int(x) for x in hi)
            cap = None if self.cap is None else self.cap * denom
            rows = tuple((i, tuple((j, w) for j, w in enumerate(r) if w))
                         for i, r in enumerate(self.tilt) if any(r))
            u = (lo, hi, rows, tuple(i for i, f in enumerate(self.graded) if f),
                 cap)
            self._units[denom] = u
        return u

    def _same_shape(self, other: "Window"):
        if self.gens != other.gens:
            raise ValueError(f"incompatible generators {self.gens} vs {other.gens}")
        if self.tilt != other.tilt or self.graded != other.graded:
            raise ValueError("windows differ in tilt or grading")

    def _with(self, lo, hi, cap) -> "Window":
        w = Window.__new__(Window)
        w.gens, w.tilt, w.graded = self.gens, self.tilt, self.graded
        w.lo, w.hi, w.cap, w._units = tuple(lo), tuple(hi), cap, {}
        return w

    def meet(self, other: "Window") -> "Window":
        """Window of a sum: weakest lower bound, tightest upper bound."""
        self._same_shape(other)
        lo = [min(a, b) for a, b in zip(self.lo, other.lo)]
        hi = [_min_opt(a, b) for a, b in zip(self.hi, other.hi)]
        return self._with(lo, hi, _min_opt(self.cap, other.cap))

    def product(self, other: "Window") -> "Window":
        """Window in which the product of two series is exact."""
        self._same_shape(other)
        lo, hi = [], []
        for la, ha, lb, hb in zip(self.lo, self.hi, other.lo, other.hi):
            lo.append(la + lb)
            hi.append(_min_opt(None if ha is None else ha + lb,
                               None if hb is None else hb + la))
        return self._with(lo, hi, _min_opt(self.cap, other.cap))

    def shifted(self, tilted_shift: Sequence[Fraction]) -> "Window":
        lo = [a + s for a, s in zip(self.lo, tilted_shift)]
        hi = [None if h is None else h + s for h, s in zip(self.hi, tilted_shift)]
        return self._with(lo, hi, self.cap)

    def replace(self, lo=None, hi=None, cap="keep") -> "Window":
        """Copy with some bounds replaced (``lo``/``hi`` map gen -> bound)."""
        new_lo, new_hi = list(self.lo), list(self.hi)
        for g, v in (lo or {}).items():
            new_lo[self.gens.index(g)] = _frac(v)
        for g, v in (hi or {}).items():
            new_hi[self.gens.index(g)] = None if v is None else _frac(v)
        return self._with(new_lo, new_hi, self.cap if cap == "keep" else cap)

    def contains_window(self, other: "Window") -> bool:
        """True if every coefficient known in ``other`` is known here."""
        self._same_shape(other)
        for h1, h2 in zip(self.hi, other.hi):
            if h1 is not None and (h2 is None or h2 > h1):
                return False
        if self.cap is not None and (other.cap is None or other.cap > self.cap):
            return False
        return True

    def to_json(self):
        tilt = {g: {h: w for h, w in zip(self.gens, r) if w}
                for g, r in zip(self.gens, self.tilt) if any(r)}
        return {"lo": [scalar_str(x) for x in self.lo],
                "hi": [None if x is None else scalar_str(x) for x in self.hi],
                "tilt": tilt,
                "graded": [g for g, f in zip(self.gens, self.graded) if f],
                "cap": self.cap}

    @classmethod
    def from_json(cls, gens, d) -> "Window":
        return cls(gens, [parse_scalar(x) for x in d["lo"]],
                   [None if x is None else parse_scalar(x) for x in d["hi"]],
                   tilt=d.get("tilt") or None, graded=d.get("graded", ()),
                   cap=d.get("cap"))

    def __eq__(self, other):
        return (isinstance(other, Window) and self.gens == other.gens
                and self.lo == other.lo and self.hi == other.hi
                and self.tilt == other.tilt and self.graded == other.graded
                and self.cap == other.cap)

    def __hash__(self):
        return hash((self.gens, self.lo, self.hi, self.tilt, self.cap))

    def __repr__(self):
        parts = []
        for g, a, b in zip(self.gens, self.lo, self.hi):
            parts.append(f"{g}:[{a},{'inf' if b is None else b}]")
        if self.tilted:
            parts.append(f"tilt={self.to_json()['tilt']}")
        if self.cap is not None:
            parts.append(f"cap={self.cap}")
        return "Window(" + " ".join(parts) + ")"


def _min_opt(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _tilted(e, rows):
    if not rows:
        return e
    t = list(e)
    for i, r in rows:
        t[i] = e[i] + sum(w * e[j] for j, w in r)
    return t


class TruncSeries:
    """Immutable truncated series; see the module docstring."""

    __slots__ = ("window", "denom", "terms")

    def __init__(self, window: Window, terms: Mapping | None = None,
                 denom: int = 1, *, _trusted: bool = False):
        self.window = window
        self.denom = lcm(denom, window.denominators())
        if self.denom != denom and terms:
            f = self.denom // denom
            terms = {tuple(x * f for x in e): c for e, c in terms.items()}
        if _trusted:
            self.terms = terms or {}
            return
        out = {}
        lo, hi, rows, gr, cap = window.units(self.denom)
        for e, c in (terms or {}).items():
            if c == 0:
                continue
            e = tuple(e)
            if len(e) != len(lo):
                raise ValueError("exponent vector has the wrong length")
            if any(type(x) is not int for x in e):
                raise TypeError("stored exponents must be integers")
            te = _tilted(e, rows)
            if any(x < b for x, b in zip(te, lo)):
                raise ValueError(f"term {e} lies below the declared lower bound")
            if any(h is not None and x > h for x, h in zip(te, hi)):
                continue
            if cap is not None and sum(e[i] for i in gr) > cap:
                continue
            out[e] = _norm(c)
        self.terms = out

    # -- construction ----------------------------------------------------
    @classmethod
    def from_natural(cls, window: Window, terms: Mapping) -> "TruncSeries":
        """Build from natural-unit exponents (ints or Fractions)."""
        d = 1
        for e in terms:
            for x in e:
                d = lcm(d, _frac(x).denominator)
        d = lcm(d, window.denominators())
        out = {}
        for e, c in terms.items():
            key = tuple(int(_frac(x) * d) for x in e)
            out[key] = out.get(key, 0) + c
        return cls(window, out, d)

    @classmethod
    def zero(cls, window: Window) -> "TruncSeries":
        return cls(window, {})

    @classmethod
    def constant(cls, window: Window, c=1) -> "TruncSeries":
        return cls(window, {(0,) * len(window.gens): c})

    @classmethod
    def monomial(cls, window: Window, exps: Mapping[str, Scalar] | Sequence,
                 c=1) -> "TruncSeries":
        vec = _exp_vector(window.gens, exps)
        return cls.from_natural(window, {vec: c})

    # -- basic access ----------------------------------------------------
    @property
    def gens(self):
        return self.window.gens

    def natural_terms(self):
        """Terms with exponents as Fractions, sorted."""
        d = self.denom
        return {tuple(Fraction(x, d) for x in e): c
                for e, c in sorted(self.terms.items())}

    def coeff(self, exps: Mapping[str, Scalar] | Sequence = ()):
        vec = _exp_vector(self.gens, exps)
        key = []
        for x in vec:
            y = _frac(x) * self.denom
            if y.denominator != 1:
                return 0
            key.append(int(y))
        return self.terms.get(tuple(key), 0)

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self):
        return self.terms.get((0,) * len(self.gens), 0)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        if not self.terms:
            return f"TruncSeries(0, {self.window})"
        shown = []
        for e, c in list(self.natural_terms().items())[:8]:
            mono = "*".join(f"{g}^{x}" for g, x in zip(self.gens, e) if x)
            shown.append(f"({c}){'*' + mono if mono else ''}")
        more = " + ..." if len(self.terms) > 8 else ""
        return f"TruncSeries({' + '.join(shown)}{more}, {self.window})"

    # -- rescaling -------------------------------------------------------
    def rescaled(self, denom: int) -> "TruncSeries":
        if denom == self.denom:
            return self
        if denom % self.denom:
            raise ValueError("can only refine the exponent denominator")
        f = denom // self.denom
        terms = {tuple(x * f for x in e): c for e, c in self.terms.items()}
        return TruncSeries(self.window, terms, denom, _trusted=True)

    def reduced(self) -> "TruncSeries":
        """Same series with the smallest admissible exponent denominator."""
        from math import gcd
        g = 0
        for e in self.terms:
            for x in e:
                g = gcd(g, x)
        d = self.denom
        target = self.window.denominators()
        for p in range(1, d + 1):
            if d % p == 0 and g % (d // p) == 0 and p % target == 0:
                f = d // p
                terms = {tuple(x // f for x in e): c for e, c in self.terms.items()}
                return TruncSeries(self.window, terms, p, _trusted=True)
        return self

    def _aligned(self, other: "TruncSeries"):
        if self.denom == other.denom:
            return self, other
        d = lcm(self.denom, other.denom)
        return self.rescaled(d), other.rescaled(d)

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, TruncSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return TruncSeries.constant(self.window, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._aligned(other)
        w = a.window.meet(b.window)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            v = terms.get(e, 0) + c
            if v:
                terms[e] = v
            else:
                terms.pop(e, None)
        return TruncSeries(w, terms, a.denom)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.window, {e: -c for e, c in self.terms.items()},
                           self.denom, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TruncSeries":
        if c == 0:
            return TruncSeries(self.window, {}, self.denom, _trusted=True)
        return TruncSeries(self.window,
                           {e: _norm(v * c) for e, v in self.terms.items()},
                           self.denom, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / other)
        if isinstance(other, TruncSeries):
            return mul(self, inverse(other))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return inverse(self) ** (-n)
        result = TruncSeries.constant(self.window, 1)
        base = self
        while n:
            if n & 1:
                result = mul(result, base)
            n >>= 1
            if n:
                base = mul(base, base)
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncSeries.constant(self.window, other)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        if self.gens != other.gens:
            return False
        a, b = self._aligned(other)
        return a.terms == b.terms

    def __hash__(self):
        return hash(frozenset(self.natural_terms().items()))

    # -- structural operations -------------------------------------------
    def shift(self, exps: Mapping[str, Scalar] | Sequence) -> "TruncSeries":
        """Multiply by a monomial; exact, so the window moves along."""
        vec = [_frac(x) for x in _exp_vector(self.gens, exps)]
        d = self.denom
        for x in vec:
            d = lcm(d, x.denominator)
        s = self.rescaled(d)
        step = tuple(int(x * d) for x in vec)
        lo, hi, rows, gr, cap = s.window.units(d)
        tstep = _tilted(step, rows)
        gdeg = sum(step[i] for i in gr)
        if gdeg % d:
            raise ValueError("graded generators must shift by whole degrees")
        w = s.window.shifted([Fraction(x, d) for x in tstep])
        if w.cap is not None:
            w = w._with(w.lo, w.hi, w.cap + gdeg // d)
        terms = {tuple(a + b for a, b in zip(e, step)): c
                 for e, c in s.terms.items()}
        return TruncSeries(w, terms, d, _trusted=True)

    def truncate(self, window: Window) -> "TruncSeries":
        """Restrict to a window whose known region lies inside ours."""
        if not self.window.contains_window(window):
            raise ValueError(f"cannot widen {self.window} to {window}")
        for a, b in zip(window.lo, self.window.lo):
            if a > b:
                raise ValueError("truncate cannot raise a declared lower bound")
        return TruncSeries(window, self.terms, self.denom)

    def assume_lower_bounds(self, lo: Mapping[str, Scalar]) -> "TruncSeries":
        """Tighten declared lower bounds (a mathematical claim by the caller).

        Stored terms are checked against the new bounds.
        """
        return TruncSeries(self.window.replace(lo=lo), self.terms, self.denom)

    def map_coefficients(self, fn) -> "TruncSeries":
        return TruncSeries(self.window,
                           {e: fn(c) for e, c in self.terms.items()},
                           self.denom)

    def slice(self, gen: str, value) -> dict:
        """Coefficient of ``gen^value`` as a dict of the remaining exponents."""
        i = self.gens.index(gen)
        v = _frac(value) * self.denom
        if v.denominator != 1:
            return {}
        v = int(v)
        out = {}
        for e, c in self.terms.items():
            if e[i] == v:
                out[tuple(Fraction(x, self.denom)
                          for j, x in enumerate(e) if j != i)] = c
        return out

    def support_min(self, gen: str):
        i = self.gens.index(gen)
        if not self.terms:
            return None
        return Fraction(min(e[i] for e in self.terms), self.denom)

    def valuation_nonneg(self) -> bool:
        """True when every term is ``>= 0`` in all truncated tilted directions."""
        lo, hi, rows, gr, cap = self.window.units(self.denom)
        for e in self.terms:
            te = _tilted(e, rows)
            for x, h in zip(te, hi):
                if h is not None and x < 0:
                    return False
        return True

    # -- serialization ---------------------------------------------------
    def to_json(self) -> dict:
        return {"gens": list(self.gens), "expdenom": self.denom,
                "window": self.window.to_json(),
                "terms": [[list(e), scalar_str(c)]
                          for e, c in sorted(self.terms.items())]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, d: dict) -> "TruncSeries":
        w = Window.from_json(d["gens"], d["window"])
        terms = {tuple(e): parse_scalar(c) for e, c in d["terms"]}
        return cls(w, terms, d["expdenom"])

    @classmethod
    def loads(cls, s: str) -> "TruncSeries":
        return cls.from_json(json.loads(s))


def _exp_vector(gens, exps):
    if isinstance(exps, Mapping):
        unknown = set(exps) - set(gens)
        if unknown:
            raise ValueError(f"unknown generators {sorted(unknown)}")
        return tuple(exps.get(g, 0) for g in gens)
    exps = tuple(exps)
    if not exps:
        return (0,) * len(gens)
    if len(exps) != len(gens):
        raise ValueError("exponent vector has the wrong length")
    return exps


def mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Exact product, truncated to the window where it is provably correct."""
    a, b = a._aligned(b)
    w = a.window.product(b.window)
    d = a.denom
    lo, hi, rows, gr, cap = w.units(d)
    if len(a.terms) > len(b.terms):
        a, b = b, a
    checks = [(i, h) for i, h in enumerate(hi) if h is not None]
    if not rows:
        # untilted: tilted exponents are the exponents themselves
        bl = [(e, c, e, sum(e[i] for i in gr)) for e, c in b.terms.items()]
        al = [(e, c, e, sum(e[i] for i in gr)) for e, c in a.terms.items()]
    else:
        bl = [(e, c, tuple(_tilted(e, rows)), sum(e[i] for i in gr))
              for e, c in b.terms.items()]
        al = [(e, c, tuple(_tilted(e, rows)), sum(e[i] for i in gr))
              for e, c in a.terms.items()]
    out: dict = {}
    get = out.get
    n = len(w.gens)
    if n == 1:
        h = hi[0]
        for (ea,), ca, _, ga in al:
            for (eb,), cb, _, gb in bl:
                s = ea + eb
                if h is not None and s > h:
                    continue
                if cap is not None and ga + gb > cap:
                    continue
                k = (s,)
                out[k] = get(k, 0) + ca * cb
    else:
        for ea, ca, ta, ga in al:
            for eb, cb, tb, gb in bl:
                if cap is not None and ga + gb > cap:
                    continue
                ok = True
                for i, h in checks:
                    if ta[i] + tb[i] > h:
                        ok = False
                        break
                if not ok:
                    continue
                k = tuple([x + y for x, y in zip(ea, eb)])
                out[k] = get(k, 0) + ca * cb
    terms = {e: _norm(c) for e, c in out.items() if c}
    return TruncSeries(w, terms, d, _trusted=True)


def _nilpotent_bound(f: TruncSeries) -> int:
    """Upper bound on ``n`` with ``f^n`` nonzero inside the window.

    Raises unless every term is nonnegative in all truncated tilted
    directions and strictly positive in at least one truncated direction
    (the graded degree counts as one); that is what makes the power
    series in ``f`` finite.
    """
    lo, hi, rows, gr, cap = f.window.units(f.denom)
    total = 0
    for h in hi:
        if h is not None:
            total += max(h, 0)
    if cap is not None:
        total += cap
    for e in f.terms:
        te = _tilted(e, rows)
        pos = False
        for x, h in zip(te, hi):
            if h is None:
                continue
            if x < 0:
                raise ValueError(f"term {e} is not nilpotent in this window")
            pos = pos or x > 0
        if cap is not None and sum(e[i] for i in gr) > 0:
            pos = True
        if not pos:
            raise ValueError(f"term {e} has zero valuation; series is not nilpotent")
    for x, h in zip(lo, hi):
        if h is not None and x < 0:
            raise ValueError("nilpotent argument must have nonnegative declared lower bounds")
    return total + 1


def _order_data(g: TruncSeries):
    """Positive linear order on the nonconstant terms of a nilpotent ``g``.

    ord(e) sums the tilted exponents over truncated directions plus the
    graded degree when a cap is set.  Every term of ``g`` has ord > 0 (this
    is checked by ``_nilpotent_bound``), and the window bounds ord, so
    coefficients of exp, log and inverse can be fixed one ord-level at a
    time by a single pass of the usual derivation recurrences.
    """
    bound = _nilpotent_bound(g)
    lo, hi, rows, gr, cap = g.window.units(g.denom)
    trunc = [i for i, h in enumerate(hi) if h is not None]
    top = sum(max(hi[i], 0) for i in trunc) + (cap or 0)

    def data(e):
        te = _tilted(e, rows)
        gd = sum(e[i] for i in gr)
        o = sum(te[i] for i in trunc) + (gd if cap is not None else 0)
        return te, gd, o

    def inside(te, gd):
        if cap is not None and gd > cap:
            return False
        for i in trunc:
            if te[i] > hi[i]:
                return False
        return True

    terms = []
    for e, c in g.terms.items():
        te, gd, o = data(e)
        terms.append((e, c, o))
    return terms, data, inside, top, bound


def _result_window(g: TruncSeries, bound: int) -> Window:
    """Window of exp/log/inverse of ``g``: products of at most ``bound`` terms."""
    w = g.window
    _, _, rows, _, _ = w.units(g.denom)
    lo = []
    for i, (x, h) in enumerate(zip(w.lo, w.hi)):
        if h is not None:
            lo.append(min(x, 0))
            continue
        m = min([0] + [Fraction(_tilted(e, rows)[i], g.denom) for e in g.terms])
        lo.append(min(x, m * bound))
    return w._with(lo, w.hi, w.cap)


def _graded_pass(g: TruncSeries, mode: str) -> dict:
    """Run the exp / log / inverse recurrence for nilpotent ``g``.

    inverse of 1 + g:  G_e = -sum_f g_f G_{e-f}
    exp g:             ord(e) G_e = sum_f ord(f) g_f G_{e-f}
    log(1 + g):        ord(e) L_e = ord(e) g_e - sum_f g_f ord(e-f) L_{e-f}
    """
    terms, data, inside, top, bound = _order_data(g)
    buckets: dict = {}

    def push(e, v):
        te, gd, o = data(e)
        if not inside(te, gd):
            return
        b = buckets.setdefault(o, {})
        b[e] = b.get(e, 0) + v

    zero = (0,) * len(g.gens)
    out: dict = {}
    if mode == "log":
        for e, c, o in terms:
            push(e, o * c)
    else:
        out[zero] = 1
        for e, c, o in terms:
            push(e, -c if mode == "inverse" else o * c)
    while buckets:
        o = min(buckets)
        level = buckets.pop(o)
        for e, acc in level.items():
            if not acc:
                continue
            v = _norm(acc if mode == "inverse" else Fraction(acc) / o)
            if not v:
                continue
            out[e] = v
            for f, c, of in terms:
                k = tuple(a + b for a, b in zip(e, f))
                if mode == "inverse":
                    push(k, -c * v)
                elif mode == "exp":
                    push(k, of * c * v)
                else:
                    push(k, -c * o * v)
    return out, bound


def exp_nilpotent(f: TruncSeries) -> TruncSeries:
    """``sum f^n / n!`` for ``f`` with zero constant term."""
    if f.constant_term() != 0:
        raise ValueError("exp_nilpotent needs a zero constant term")
    terms, bound = _graded_pass(f, "exp")
    return TruncSeries(_result_window(f, bound), terms, f.denom)


def log_unit(f: TruncSeries) -> TruncSeries:
    """Logarithm of a series with constant term 1 (nilpotent rest)."""
    if f.constant_term() != 1:
        raise ValueError("log_unit needs constant term 1")
    g = f - 1
    terms, bound = _graded_pass(g, "log")
    return TruncSeries(_result_window(g, bound), terms, g.denom)


def inverse(f: TruncSeries) -> TruncSeries:
    """Inverse of a series with nonzero constant term and nilpotent rest."""
    c = f.constant_term()
    if c == 0:
        raise ZeroDivisionError("inverse needs a nonzero constant term; shift first")
    g = f.scale(Fraction(1) / c) - 1
    terms, bound = _graded_pass(g, "inverse")
    return TruncSeries(_result_window(g, bound), terms, g.denom).scale(Fraction(1) / c)


# Power-sum forms of the same three operations, kept as an independent
# check on the recurrences above.

def exp_by_powers(f: TruncSeries) -> TruncSeries:
    if f.constant_term() != 0:
        raise ValueError("exp_nilpotent needs a zero constant term")
    bound = _nilpotent_bound(f)
    result = TruncSeries.constant(f.window, 1)
    power = TruncSeries.constant(f.window, 1)
    for n in range(1, bound + 1):
        power = mul(power, f)
        if power.is_zero():
            return result
        result = result + power.scale(Fraction(1, factorial(n)))
    if not power.is_zero():
        raise ArithmeticError("exp did not terminate within the nilpotency bound")
    return result


def log_by_powers(f: TruncSeries) -> TruncSeries:
    """Mercator series ``sum (-1)^(n+1) g^n / n`` with ``g = f - 1``."""
    if f.constant_term() != 1:
        raise ValueError("log_unit needs constant term 1")
    g = f - 1
    bound = _nilpotent_bound(g)
    result = TruncSeries.zero(g.window)
    power = TruncSeries.constant(g.window, 1)
    for n in range(1, bound + 1):
        power = mul(power, g)
        if power.is_zero():
            return result
        result = result + power.scale(Fraction(1 if n % 2 else -1, n))
    if not power.is_zero():
        raise ArithmeticError("log did not terminate within the nilpotency bound")
    return result


def inverse_by_powers(f: TruncSeries) -> TruncSeries:
    c = f.constant_term()
    if c == 0:
        raise ZeroDivisionError("inverse needs a nonzero constant term; shift first")
    g = f.scale(Fraction(1) / c) - 1
    bound = _nilpotent_bound(g)
    result = TruncSeries.constant(g.window, 1)
    power = TruncSeries.constant(g.window, 1)
    for n in range(1, bound + 1):
        power = mul(power, g)
        if power.is_zero():
            break
        result = result + (power if n % 2 == 0 else -power)
    else:
        if not power.is_zero():
            raise ArithmeticError("inverse did not terminate")
    return result.scale(Fraction(1) / c)


def product_expand(window: Window, factors: Iterable[tuple]) -> TruncSeries:
    """Expand ``prod (1 - m)^(-e)`` over ``(monomial, e)`` pairs.

    Monomials are mappings gen -> exponent or exponent vectors.  The
    logarithm ``sum_m e * sum_r m^r / r`` is assembled directly inside the
    window and exponentiated.
    """
    gens = window.gens
    vecs = []
    d = window.denominators()
    for m, e in factors:
        v = tuple(_frac(x) for x in _exp_vector(gens, m))
        for x in v:
            d = lcm(d, x.denominator)
        vecs.append((v, e))
    lo, hi, rows, gr, cap = window.units(d)
    logterms: dict = {}
    for v, e in vecs:
        if e == 0:
            continue
        step = tuple(int(x * d) for x in v)
        tstep = _tilted(step, rows)
        gdeg = sum(step[i] for i in gr)
        positive = (cap is not None and gdeg > 0) or any(
            h is not None and x > 0 for x, h in zip(tstep, hi))
        if not positive or any(h is not None and x < 0 for x, h in zip(tstep, hi)) \
                or gdeg < 0:
            raise ValueError(f"factor monomial {v} has no positive graded degree")
        if any(x < b for x, b in zip(tstep, lo)):
            raise ValueError(f"factor monomial {v} lies below the window")
        r = 1
        while True:
            te = [x * r for x in tstep]
            if any(h is not None and x > h for x, h in zip(te, hi)):
                break
            if cap is not None and gdeg * r > cap:
                break
            key = tuple(x * r for x in step)
            logterms[key] = logterms.get(key, 0) + Fraction(e, r)
            r += 1
    lw = window.replace(lo={g: max(x, 0) if h is not None else x
                            for g, x, h in zip(gens, window.lo, window.hi)})
    log = TruncSeries(lw, logterms, d)
    out = exp_nilpotent(log)
    return TruncSeries(window, out.terms, out.denom)
