from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bananadt.banana_dt import q_slice, z_fiber_product
from bananadt.partitions import EMPTY, Partition, SpecList, partitions_of, skew_schur_spec
from bananadt.qforms import macmahon
from bananadt.series import TruncSeries, Window
from bananadt.vertex import (banana_fiber_sum, hook_lemma_check, normalization_shift,
                             vertex_bruteforce, vertex_orv, vertex_schur)

P = Partition.of
BOX = P(1)


def pseries(lo, hi, coeffs):
    return TruncSeries(Window(("p",), (lo,), (hi,)), coeffs)


def macmahon_coeffs(top):
    m = macmahon(Window(("p",), (0,), (top,)))
    return [m.coeff({"p": k}) for k in range(top + 1)]


def test_normalized_vertex_examples():
    assert vertex_orv(EMPTY, EMPTY, EMPTY, 6).series.natural_terms() == {(0,): 1}
    box = vertex_orv(BOX, EMPTY, EMPTY, 6).series
    assert box == skew_schur_spec(BOX, EMPTY, SpecList(), 6)
    assert box.natural_terms() == {(Fraction(2 * k + 1, 2),): 1 for k in range(6)}


def test_bruteforce_examples():
    v = vertex_bruteforce(EMPTY, EMPTY, EMPTY, 8)
    assert [v.coeff(k) for k in range(9)] == macmahon_coeffs(8)
    # M(p) p^{-1/2} p^{1/2}/(1-p)
    vb = vertex_bruteforce(BOX, EMPTY, EMPTY, 6)
    m = macmahon_coeffs(6)
    assert [vb.coeff(k) for k in range(7)] == [sum(m[: k + 1]) for k in range(7)]


def test_leading_coefficient_is_one():
    for legs in [(BOX, BOX, EMPTY), (P(2), BOX, P(1, 1)), (P(2, 1), EMPTY, BOX)]:
        s = vertex_bruteforce(*legs, 6).series
        low = min(s.natural_terms())
        assert s.natural_terms()[low] == 1


@pytest.mark.parametrize("r1", [p for n in range(2) for p in partitions_of(n)], ids=str)
def test_schur_matches_bruteforce_small(r1):
    ps = [p for n in range(2) for p in partitions_of(n)]
    for r2 in ps:
        for r3 in ps:
            assert vertex_schur(r1, r2, r3, 6).series == vertex_bruteforce(r1, r2, r3, 6).series


def test_schur_vs_bruteforce_detects_swapped_leg():
    a = vertex_schur(P(2), BOX, EMPTY, 6).series
    b = vertex_bruteforce(P(1, 1), BOX, EMPTY, 6).series
    assert a != b


@pytest.mark.parametrize("parts", [(), (1,), (2, 1)])
def test_hook_lemma(parts):
    rep = hook_lemma_check(Partition(parts), 3, 8)
    assert rep.passed and rep.first and rep.second and rep.reference


def test_hook_lemma_empty_kernel():
    rep = hook_lemma_check(EMPTY, 3, 6)
    assert rep.kernel_first == {} and rep.kernel_second == {}


@given(st.lists(st.integers(min_value=1, max_value=5), max_size=4),
       st.lists(st.integers(min_value=1, max_value=5), max_size=4),
       st.lists(st.integers(min_value=1, max_value=5), max_size=4))
def test_half_integer_powers_cancel(a, b, c):
    legs = tuple(Partition(tuple(sorted(x, reverse=True))) for x in (a, b, c))
    conj = tuple(r.conjugate() for r in legs)
    total = normalization_shift(*legs) + normalization_shift(*conj)
    assert total.denominator == 1


def test_fiber_sum_low_slices():
    z = banana_fiber_sum(1, 6)
    m2 = macmahon(Window(("p",), (0,), (6,)), power=2)
    assert q_slice(z, (0, 0, 0)) == {e[0]: c for e, c in m2.natural_terms().items()}
    # Q1 slice: -M(p)^2 p/(1-p)^2
    top = int(max(q_slice(z, (1, 0, 0))))
    w = Window(("p",), (0,), (top,))
    want = macmahon(w, power=2) * TruncSeries(w, {(k,): -k for k in range(1, top + 1)})
    assert q_slice(z, (1, 0, 0)) == {e[0]: c for e, c in want.natural_terms().items()}


def test_fiber_sum_permutation_symmetry():
    z = banana_fiber_sum(3, 3)
    terms = z.natural_terms()
    for perm in [(1, 0, 2), (2, 1, 0), (1, 2, 0)]:
        moved = {tuple(e[i] for i in perm) + (e[3],): c for e, c in terms.items()}
        assert moved == terms


def test_fiber_sum_integral():
    z = banana_fiber_sum(2, 4)
    assert all(Fraction(c).denominator == 1 for c in z.natural_terms().values())
    assert all(e[3].denominator == 1 for e in z.natural_terms())


def test_fiber_sum_equals_product_degree_two():
    assert banana_fiber_sum(2, 5) == z_fiber_product(2, 5)


def test_fiber_sum_bruteforce_oracle():
    assert banana_fiber_sum(2, 4, oracle="bruteforce") == banana_fiber_sum(2, 4)
