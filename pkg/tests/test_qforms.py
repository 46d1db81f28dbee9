from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bananadt.qforms import (JacobiCoeffs, bernoulli, divisor_sigma, divisors, eisenstein,
                             jacobi_window, macmahon, mobius, phi_01, phi_m21, theta1,
                             theta1_product, theta1_sum, theta4, weierstrass_p)
from bananadt.series import Window


def flat(d):
    return {tuple(e): c for e, c in d.items()}


def test_bernoulli_values():
    assert [bernoulli(n) for n in range(7)] == [1, Fraction(-1, 2), Fraction(1, 6), 0,
                                               Fraction(-1, 30), 0, Fraction(1, 42)]
    assert bernoulli(12) == Fraction(-691, 2730)


def test_theta1_lowest_terms():
    t = theta1(2)
    lowest = {e: c for e, c in t.natural_terms().items() if e[0] == Fraction(1, 8)}
    assert lowest == {(Fraction(1, 8), Fraction(-1, 2)): 1, (Fraction(1, 8), Fraction(1, 2)): -1}


@pytest.mark.parametrize("qmax", [1, 3, 6])
def test_theta1_sum_equals_product(qmax):
    w = jacobi_window(qmax)
    assert theta1_sum(w) == theta1_product(w)


def test_theta1_odd():
    w = jacobi_window(5, lo_y=-6)
    assert theta1_sum(w, z={"y": -1}) == -theta1_sum(w)


def test_theta4():
    t = theta4(4)
    assert flat(t.slice("q", 0)) == {(0,): 1}
    assert flat(t.slice("q", 1)) == {(1,): -1, (-1,): -1}
    flipped = {(e[0], -e[1]): c for e, c in t.natural_terms().items()}
    assert flipped == t.natural_terms()


def test_macmahon():
    w = Window(("u", "p"), (0, 0), (None, 5), graded=("u",), cap=2)
    m = macmahon(w, u={"u": 1})
    assert flat(m.slice("u", 1)) == {(k,): k for k in range(1, 6)}
    m1 = macmahon(Window(("p",), (0,), (5,)))
    assert [m1.coeff({"p": k}) for k in range(6)] == [1, 1, 3, 6, 13, 24]
    w0 = Window(("u", "p"), (0, 0), (None, 5), graded=("u",), cap=0)
    assert macmahon(w0, u={"u": 1}).natural_terms() == {(0, 0): 1}


def test_eisenstein():
    e4 = eisenstein(4, 2)
    assert [e4.coeff({"q": k}) for k in range(3)] == [1, 240, 2160]
    e6 = eisenstein(6, 1)
    assert [e6.coeff({"q": k}) for k in range(2)] == [1, -504]
    for w in (4, 6, 8, 10, 12):
        assert eisenstein(w, 3).constant_term() == 1
    with pytest.raises(ValueError):
        eisenstein(2, 3)


def test_e4_squared_is_e8():
    assert eisenstein(4, 6) ** 2 == eisenstein(8, 6)


def test_jacobi_leading_slices():
    assert flat(phi_m21(2).slice("q", 0)) == {(-1,): 1, (0,): -2, (1,): 1}
    wp = weierstrass_p(2, 5)
    assert flat(wp.slice("q", 0)) == {(0,): Fraction(1, 12), **{(d,): d for d in range(1, 6)}}
    assert phi_01(2).coeff({"q": 0, "y": 0}) == 10


@pytest.mark.parametrize("fn,weight", [(phi_m21, -2), (phi_01, 0)])
def test_index_one_law(fn, weight):
    j = JacobiCoeffs.from_series(fn(4), weight)
    assert j.by_discriminant[-1] == 1
    for (n, l), c in j.coeffs.items():
        assert j.disc(4 * n - l * l) == c


def test_known_discriminant_values():
    assert JacobiCoeffs.from_series(phi_m21(3), -2).disc(0) == -2
    assert JacobiCoeffs.from_series(phi_01(3), 0).disc(0) == 10


def test_index_one_law_detects_violation():
    with pytest.raises(ArithmeticError):
        JacobiCoeffs(0, 1, {(0, 0): 1, (1, 2): 2}, 1)


@given(st.integers(min_value=1, max_value=400))
def test_divisor_helpers(n):
    ds = divisors(n)
    assert ds == [d for d in range(1, n + 1) if n % d == 0]
    assert divisor_sigma(n, 1) == sum(ds)
    assert sum(mobius(d) for d in ds) == (1 if n == 1 else 0)
