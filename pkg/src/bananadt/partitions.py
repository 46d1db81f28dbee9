"""Integer partitions, hook lengths, skew Schur functions at principal
specializations, and 3D partitions with prescribed asymptotic legs."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .series import TruncSeries, Window


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple = ()

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if any(x <= 0 for x in parts):
            raise ValueError("partition parts must be positive")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError("partition parts must be weakly decreasing")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts) -> "Partition":
        return cls(tuple(parts))

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        """Part ``i`` (0-based), zero beyond the length."""
        return self.parts[i] if i < len(self.parts) else 0

    def __iter__(self):
        return iter(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def norm2(self) -> int:
        """||R||^2 = sum of squared parts."""
        return sum(x * x for x in self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for x in self.parts if x > j)
                               for j in range(self.parts[0])))

    def boxes(self):
        """Boxes (i, j), 1-based, row by row."""
        return [(i + 1, j + 1) for i, r in enumerate(self.parts) for j in range(r)]

    def contains(self, other: "Partition") -> bool:
        return len(other) <= len(self) and all(
            a >= b for a, b in zip(self.parts, other.parts))

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")" if self.parts else "()"

    def __repr__(self):
        return f"Partition{self}"


EMPTY = Partition()


def conjugate(r: Partition) -> Partition:
    return r.conjugate()


@dataclass(frozen=True)
class HookData:
    owner: Partition
    hooks: dict = field(hash=False)

    def multiset(self) -> list:
        return sorted(self.hooks.values())


def hooks(r: Partition) -> HookData:
    """Hook length h_ij = R_i + R'_j - i - j + 1 for every box."""
    rc = r.conjugate()
    return HookData(r, {(i, j): r[i - 1] + rc[j - 1] - i - j + 1
                        for i, j in r.boxes()})


def enumerate_partitions(max_size: int) -> list[Partition]:
    """All partitions of size <= max_size, by size then reverse-lexicographic."""
    out = []
    for n in range(max_size + 1):
        out.extend(partitions_of(n))
    return out


@lru_cache(maxsize=None)
def _parts(n: int, largest: int) -> tuple:
    if n == 0:
        return ((),)
    res = []
    for first in range(min(n, largest), 0, -1):
        for rest in _parts(n - first, first):
            res.append((first,) + rest)
    return tuple(res)


def partitions_of(n: int) -> list[Partition]:
    return [Partition(p) for p in _parts(n, n)]


def subpartitions(r: Partition) -> list[Partition]:
    """All partitions contained in ``r``."""
    out = []

    def rec(i, prefix, bound):
        if i == len(r):
            out.append(Partition(tuple(x for x in prefix if x)))
            return
        for x in range(min(r[i], bound), -1, -1):
            if x == 0:
                out.append(Partition(tuple(prefix)))
                return
            rec(i + 1, prefix + [x], x)

    rec(0, [], r[0] if len(r) else 0)
    return sorted(set(out), key=lambda p: (p.size, tuple(-x for x in p.parts)))


# -- principal specializations ---------------------------------------------

@dataclass(frozen=True)
class SpecList:
    """Variables p^{-C-rho} (``conj=False``) or p^{-C'-rho} (``conj=True``).

    With rho = (-1/2, -3/2, ...) the i-th entry (1-based) is
    ``p^{-C_i + i - 1/2}``; exponents strictly increase with i.
    ``length_cutoff`` None means: stop once every unused entry provably
    contributes only above the cap.
    """

    base: Partition = EMPTY
    conj: bool = False
    length_cutoff: int | None = None

    @property
    def shape(self) -> Partition:
        return self.base.conjugate() if self.conj else self.base

    def exponent(self, i: int) -> Fraction:
        return Fraction(2 * i - 1, 2) - self.shape[i - 1]

    def default_cutoff(self, cap, size: int) -> int:
        c = self.shape
        return int(Fraction(cap) * 2) + max(c[0], len(c)) + size


def _strip_tuple(t):
    return tuple(x for x in t if x)


def min_tableau_weight(a: Partition, b: Partition, x: SpecList) -> Fraction:
    """Weight of the minimal semistandard filling of a/b."""
    total = Fraction(0)
    for j in range(a[0] if len(a) else 0):
        height = 0
        for i in range(len(a)):
            if a[i] > j and b[i] <= j:
                height += 1
                total += x.exponent(height)
    return total


def skew_schur_spec(a: Partition, b: Partition, x: SpecList, cap) -> TruncSeries:
    """s_{a/b} at the specialization ``x`` truncated at p^cap.

    Semistandard tableaux are built entry by entry: after placing entries
    1..i the filled shape nu satisfies b <= nu <= a, and entry i+1 adds a
    horizontal strip.  Partial weights that cannot stay below the cap are
    pruned.  Without an explicit cutoff the sweep stops once every
    unfinished shape needs more weight than the cap allows.
    """
    cap = Fraction(cap)
    lo = min_tableau_weight(a, b, x) if a.contains(b) else Fraction(0)
    win = Window(("p",), (min(lo, cap),), (cap,))
    if not a.contains(b):
        return TruncSeries(win, {})
    d = 2
    target = a.parts
    # state: filled shape (as tuple of len(a)) -> {exponent*2: coeff}
    start = tuple(b[i] for i in range(len(a)))
    states = {start: {0: 1}}
    capu = int(cap * d)
    size = a.size
    nmax = x.length_cutoff
    i = 0
    while True:
        if nmax is not None and i >= nmax:
            break
        if nmax is None:
            unfinished = [s for s in states if s != target]
            if not unfinished:
                break
            nxt = x.exponent(i + 1) * d
            if all(min(states[s]) + (size - sum(s)) * nxt > capu for s in unfinished):
                break
        i += 1
        e = int(x.exponent(i) * d)
        rest = int(x.exponent(i + 1) * d)
        new: dict = {}
        for nu, poly in states.items():
            for nxt_shape in _strips_up(nu, target):
                k = sum(nxt_shape) - sum(nu)
                remaining = size - sum(nxt_shape)
                slot = new.setdefault(nxt_shape, {})
                for ex, c in poly.items():
                    v = ex + k * e
                    if v + remaining * rest > capu:
                        continue
                    slot[v] = slot.get(v, 0) + c
        states = {s: {k: v for k, v in p.items() if v} for s, p in new.items()}
        states = {s: p for s, p in states.items() if p}
        if not states:
            break
    final = states.get(target, {})
    return TruncSeries(win, {(ex,): c for ex, c in final.items()}, d)


def _strips_up(nu: tuple, lam: tuple):
    """All shapes kappa with nu <= kappa <= lam and kappa/nu a horizontal strip."""
    n = len(lam)
    res = []

    def rec(i, cur):
        if i == n:
            res.append(tuple(cur))
            return
        hi = lam[i] if i == 0 else min(lam[i], nu[i - 1])
        for v in range(nu[i], hi + 1):
            rec(i + 1, cur + [v])

    rec(0, [])
    return res


# -- 3D partitions -----------------------------------------------------------

@dataclass(frozen=True)
class Plane3D:
    """A 3D partition asymptotic to ``legs``.

    Leg 1 runs along the first axis with cross-section R1 in the (j, k)
    plane ((j, k) in R1 iff k < R1_j), leg 2 along the second axis with
    cross-section R2 in the (k, i) plane, leg 3 along the third axis with
    cross-section R3 in the (i, j) plane.  ``excess`` maps (i, j) to the
    number of boxes stacked above the leg background in that column.
    """

    legs: tuple
    excess: tuple
    normalized_volume: int

    def boxes(self):
        r1, r2, r3 = self.legs
        bg = _background(r1, r2)
        out = []
        for (i, j), e in self.excess:
            base = bg(i, j)
            out.extend((i, j, k) for k in range(base, base + e))
        return out


def _background(r1: Partition, r2: Partition):
    r2c = r2.conjugate()

    def base(i, j):
        return max(r1[j], r2c[i])

    return base


def _in_leg3(r3: Partition, i, j):
    return j < r3[i]


def minimal_volume(r1: Partition, r2: Partition, r3: Partition) -> int:
    """Normalized volume of the bare union of the three legs.

    The renormalized box count ``#(pi in [0,N)^3) - N(|R1|+|R2|+|R3|)``
    equals ``sum_{(i,j) not in R3} (h - R1_j - R2'_i) -
    sum_{(i,j) in R3} (R1_j + R2'_i)`` for the height function h.
    """
    r2c = r2.conjugate()
    total = 0
    rows = max(len(r2c), len(r3))
    cols = max(len(r1), r3[0])
    for i in range(rows):
        for j in range(cols):
            if _in_leg3(r3, i, j):
                total -= r1[j] + r2c[i]
            else:
                total -= min(r1[j], r2c[i])
    return total


class _Space:
    """Search space of height functions for fixed legs and a budget."""

    def __init__(self, r1, r2, r3, budget):
        self.r1, self.r2, self.r3 = r1, r2, r3
        r2c = r2.conjugate()
        self.i0 = max(len(r2c), len(r3))
        self.j0 = max(len(r1), r3[0])
        self.rows = self.i0 + max(budget, 0)
        self.cols = self.j0 + max(budget, 0)
        self.base = [[max(r1[j], r2c[i]) for j in range(self.cols)]
                     for i in range(self.rows)]
        self.inf = [r3[i] for i in range(self.rows)]  # leg-3 prefix length per row

    def row_choices(self, i, prev, budget):
        """Rows (heights, excess) compatible with the previous row."""
        cols, base, k3 = self.cols, self.base[i], self.inf[i]
        out = []
        INF = None
        cur = [INF] * k3

        def rec(j, left, used):
            if j == cols:
                out.append((tuple(cur), used))
                return
            b = base[j]
            up = left
            if prev is not None and prev[j] is not None:
                up = prev[j] if up is None else min(up, prev[j])
            hi = b + budget - used
            if up is not None:
                hi = min(hi, up)
            for h in range(b, hi + 1):
                cur.append(h)
                rec(j + 1, h, used + h - b)
                cur.pop()

        rec(k3, None, 0)
        return out


def count_3d_asymptotic(r1: Partition, r2: Partition, r3: Partition,
                        vmax: int) -> list[int]:
    """Counts of asymptotic 3D partitions by normalized volume.

    Entry ``v - minimal_volume`` of the returned list counts partitions of
    normalized volume ``v`` for every v <= vmax.
    """
    vmin = minimal_volume(r1, r2, r3)
    budget = vmax - vmin
    if budget < 0:
        return []
    sp = _Space(r1, r2, r3, budget)
    memo: dict = {}

    def completions(i, prev, rem):
        key = (i, prev, rem)
        got = memo.get(key)
        if got is not None:
            return got
        res = [0] * (rem + 1)
        if i == sp.rows:
            res[0] = 1
        else:
            for row, used in sp.row_choices(i, prev, rem):
                sub = completions(i + 1, row, rem - used)
                for e, c in enumerate(sub):
                    res[e + used] += c
        memo[key] = res
        return res

    return completions(0, None, budget)


def enumerate_3d_asymptotic(r1: Partition, r2: Partition, r3: Partition,
                            vmax: int) -> list[Plane3D]:
    """Every asymptotic 3D partition with normalized volume <= vmax."""
    vmin = minimal_volume(r1, r2, r3)
    budget = vmax - vmin
    if budget < 0:
        return []
    sp = _Space(r1, r2, r3, budget)
    out = []

    def rec(i, prev, rem, acc):
        if i == sp.rows:
            ex = []
            for ii, row in enumerate(acc):
                for j, h in enumerate(row):
                    if h is not None and h > sp.base[ii][j]:
                        ex.append(((ii, j), h - sp.base[ii][j]))
            out.append(Plane3D((r1, r2, r3), tuple(ex), vmin + budget - rem))
            return
        for row, used in sp.row_choices(i, prev, rem):
            rec(i + 1, row, rem - used, acc + [row])

    rec(0, None, budget, [])
    out.sort(key=lambda p: (p.normalized_volume, p.excess))
    return out


def is_valid_height_function(p: Plane3D, extent: int = 12) -> bool:
    """Monotonicity of the full height function on a finite patch."""
    r1, r2, r3 = p.legs
    bg = _background(r1, r2)
    ex = dict(p.excess)

    def h(i, j):
        if _in_leg3(r3, i, j):
            return float("inf")
        return bg(i, j) + ex.get((i, j), 0)

    for i in range(extent):
        for j in range(extent):
            if h(i, j) < h(i + 1, j) or h(i, j) < h(i, j + 1):
                return False
    return True


def _cleared_numerator(a: Partition, b: Partition, x: SpecList, n: int, margin: int) -> dict:
    """(p;p)_n * s_{a/b}(x) as a Laurent polynomial in p^(1/2).

    The truncation is taken deep enough that its top ``margin`` units of
    exponent vanish after clearing, which certifies the numerator.
    """
    lo = min_tableau_weight(a, b, x)
    cap = lo + Fraction(n * (n + 1), 2) + 2 * (x.shape.size + n) + margin
    s = skew_schur_spec(a, b, x, cap)
    den = {Fraction(0): 1}
    for k in range(1, n + 1):
        nxt: dict = {}
        for e, c in den.items():
            for e2, c2 in ((0, 1), (k, -1)):
                nxt[e + e2] = nxt.get(e + e2, 0) + c * c2
        den = {e: c for e, c in nxt.items() if c}
    num: dict = {}
    for (e,), c in s.natural_terms().items():
        for e2, c2 in den.items():
            if e + e2 <= cap:
                num[e + e2] = num.get(e + e2, 0) + c * c2
    num = {e: c for e, c in num.items() if c}
    if any(e > cap - margin for e in num):
        raise ArithmeticError("skew Schur truncation does not clear to a polynomial")
    return num


def involution_identity(a: Partition, b: Partition, c: Partition, margin: int = 6) -> bool:
    """s_{a/b}(p^{C+rho}) = (-1)^|a/b| s_{a'/b'}(p^{-C'-rho}) as rational functions.

    With D(p) = prod_{k <= n} (1 - p^k), n = |a/b|, both sides are
    N(p)/D(p); since D(1/p) = (-1)^n p^{-n(n+1)/2} D(p) the identity reads
    N_L(1/p) = p^{-n(n+1)/2} N_R(p), where N_L clears s_{a/b}(p^{-C-rho}).
    """
    if not a.contains(b):
        return True
    n = a.size - b.size
    left = _cleared_numerator(a, b, SpecList(c), n, margin)
    right = _cleared_numerator(a.conjugate(), b.conjugate(), SpecList(c, conj=True), n, margin)
    shift = Fraction(n * (n + 1), 2)
    return {-e: v for e, v in left.items()} == {e - shift: v for e, v in right.items()}
