from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bananadt.partitions import (EMPTY, Partition, SpecList, conjugate, count_3d_asymptotic,
                                 enumerate_3d_asymptotic, enumerate_partitions, hooks,
                                 involution_identity, is_valid_height_function, minimal_volume,
                                 partitions_of, skew_schur_spec)

P = Partition.of
SMALL = [p for n in range(4) for p in partitions_of(n)]


def test_conjugate_examples():
    assert conjugate(EMPTY) == EMPTY
    assert conjugate(P(2, 1)) == P(2, 1)
    assert conjugate(P(3, 1)) == P(2, 1, 1)


def test_partition_validation():
    with pytest.raises(ValueError):
        P(1, 2)
    with pytest.raises(ValueError):
        P(2, 0)


@given(st.lists(st.integers(min_value=1, max_value=7), max_size=6))
def test_conjugate_involution(parts):
    r = Partition(tuple(sorted(parts, reverse=True)))
    assert r.conjugate().conjugate() == r
    assert r.conjugate().size == r.size


def test_hook_examples():
    assert hooks(P(1)).multiset() == [1]
    assert hooks(P(2, 1)).multiset() == [1, 1, 3]
    r = P(3, 1)
    lhs = sum(i + j + 1 for i, j in ((i - 1, j - 1) for i, j in r.boxes()))
    assert 2 * lhs == r.norm2 + r.conjugate().norm2


@pytest.mark.parametrize("n", range(9))
def test_hooks_conjugate_invariant(n):
    for r in partitions_of(n):
        assert hooks(r).multiset() == hooks(r.conjugate()).multiset()
        assert all(h > 0 for h in hooks(r).hooks.values())


def test_enumeration():
    assert enumerate_partitions(0) == [EMPTY]
    assert enumerate_partitions(2) == [EMPTY, P(1), P(2), P(1, 1)]
    assert len(partitions_of(5)) == 7
    assert [len(partitions_of(n)) for n in range(10)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]


def test_plane_partitions_empty_legs():
    assert count_3d_asymptotic(EMPTY, EMPTY, EMPTY, 8) == [1, 1, 3, 6, 13, 24, 48, 86, 160]


@pytest.mark.parametrize("legs", [(EMPTY, EMPTY, EMPTY), (P(1), EMPTY, EMPTY),
                                  (P(1), P(1), EMPTY), (P(2), P(1), P(1, 1))])
def test_enumeration_matches_counts(legs):
    vmax = minimal_volume(*legs) + 4
    planes = enumerate_3d_asymptotic(*legs, vmax)
    counts = count_3d_asymptotic(*legs, vmax)
    vmin = minimal_volume(*legs)
    by_vol = [sum(1 for p in planes if p.normalized_volume == vmin + k) for k in range(len(counts))]
    assert by_vol == counts
    assert len(set(planes)) == len(planes)
    assert all(is_valid_height_function(p) for p in planes)


def test_enumeration_below_minimum_is_empty():
    legs = (P(1), P(1), P(1))
    vmin = minimal_volume(*legs)
    assert enumerate_3d_asymptotic(*legs, vmin - 1) == []
    assert count_3d_asymptotic(*legs, vmin - 1) == []


def test_skew_schur_examples():
    x = SpecList()
    assert skew_schur_spec(EMPTY, EMPTY, x, 6).natural_terms() == {(0,): 1}
    box = skew_schur_spec(P(1), EMPTY, x, 6)
    assert box.natural_terms() == {(Fraction(2 * k + 1, 2),): 1 for k in range(6)}
    assert skew_schur_spec(P(1), P(2), x, 6).is_zero()


def test_schur_hook_product_21():
    from bananadt.series import TruncSeries, Window, mul
    r = P(2, 1)
    cap = 10
    lhs = mul(skew_schur_spec(r, EMPTY, SpecList(), cap),
              skew_schur_spec(r.conjugate(), EMPTY, SpecList(), cap))
    # (1-p^h)^-1 (1-p^-h)^-1 = -p^h (1-p^h)^-2; hooks sum to 5
    hs = hooks(r).multiset()
    w = Window(("p",), (0,), (cap - sum(hs),))
    rhs = TruncSeries.constant(w, (-1) ** r.size * (-1) ** len(hs))
    for h in hs:
        rhs = mul(rhs, TruncSeries(w, {(0,): 1, (h,): -1}) ** -2)
    rhs = rhs.shift({"p": sum(hs)})
    assert lhs.truncate(rhs.window) == rhs
    assert len(rhs) >= 4


@pytest.mark.parametrize("a", SMALL, ids=str)
def test_involution_identity(a):
    for b in SMALL:
        if not a.contains(b):
            continue
        for c in SMALL:
            assert involution_identity(a, b, c)


def test_length_cutoff_stabilization():
    cap = 6
    for a in SMALL:
        for c in SMALL:
            x = SpecList(c)
            n = x.default_cutoff(cap, a.size)
            s1 = skew_schur_spec(a, EMPTY, SpecList(c, length_cutoff=n), cap)
            s2 = skew_schur_spec(a, EMPTY, SpecList(c, length_cutoff=n + 5), cap)
            assert s1 == s2 == skew_schur_spec(a, EMPTY, x, cap)


def test_short_cutoff_is_visible():
    x = SpecList(length_cutoff=1)
    assert skew_schur_spec(P(1), EMPTY, x, 6).natural_terms() == {(Fraction(1, 2),): 1}
