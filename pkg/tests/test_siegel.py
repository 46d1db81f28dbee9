from fractions import Fraction
from math import factorial

import pytest

from bananadt.banana_dt import exact_rows
from bananadt.qforms import JacobiCoeffs, bernoulli, eisenstein_in, phi_m21
from bananadt.series import mul
from bananadt.siegel import (LambdaSeries, RowRecognitionError, check_factorwise_log,
                             eq_a1_check, factorwise_log_row, fg_constant, fg_route_dt,
                             fg_route_lift, gw_degree_zero, hecke_v, igusa_check,
                             jacobi_cusp_form, lambda_expand_row, maass_lift,
                             maass_lift_hecke, maass_lift_polylog, primitive_rows, psi,
                             recognize_row)


def cosecant_coeffs(order):
    # 1/(4 sin^2(x/2)) = sum_g (-1)^(g+1) (2g-1) B_2g / (2g)! x^(2g-2)
    out = {-2: Fraction(1)}
    for g in range(1, order // 2 + 2):
        out[2 * g - 2] = (-1) ** (g + 1) * (2 * g - 1) * bernoulli(2 * g) / factorial(2 * g)
    return {j: c for j, c in out.items() if j <= order}


def test_lambda_expansion_cosecant():
    s = lambda_expand_row({0: -1}, 8)
    assert s.coeff(-2) == 1 and s.coeff(0) == Fraction(1, 12) and s.coeff(2) == Fraction(1, 240)
    assert s.coeffs == cosecant_coeffs(8)


def test_lambda_series_guards():
    with pytest.raises(ArithmeticError):
        LambdaSeries({1: 1}, 4, even_only=True)
    with pytest.raises(ArithmeticError):
        LambdaSeries.from_gaussian({0: (1, 1)}, 4)
    with pytest.raises(ValueError):
        LambdaSeries({-3: 1}, 4)
    s = LambdaSeries({-2: 1, 0: 2}, 2)
    assert s.rescaled(2).coeffs == {-2: Fraction(1, 4), 0: 2}


@pytest.mark.parametrize("d", [-1, 0, 3, 4])
def test_eq_a1(d):
    rep = eq_a1_check(d, 6)
    assert rep.passed, rep.mismatch


def test_psi_tables():
    assert psi(0, 3).coeffs == JacobiCoeffs.from_series(phi_m21(3), -2).coeffs
    phi = phi_m21(3)
    want = mul(phi, eisenstein_in(phi.window, 4)).scale(Fraction(1, 240))
    assert psi(2, 3).coeffs == JacobiCoeffs.from_series(want, 2).coeffs
    for g in range(2, 6):
        assert psi(g, 2).disc(0) == -abs(bernoulli(2 * g)) / (g * factorial(2 * g - 2))
    assert psi(2, 2).disc(-1) == Fraction(1, 240)


def test_hecke_examples():
    phi = psi(2, 6)
    v1 = hecke_v(phi, 1, 6)
    for (n, r), c in v1.coeffs.items():
        assert phi.c(n, r) == c
    v0 = hecke_v(phi, 0, 3)
    assert v0.c(0, 0) == phi.c(0, 0) * (-bernoulli(2) / 4)
    v2 = hecke_v(phi, 2, 3)
    for n in (1, 3):
        for r in (-1, 1, 3):
            assert v2.c(n, r) == phi.c(2 * n, r)
    # d = 2 term: c(2n, r) + 2 c(n/2, r/2)
    assert v2.c(2, 2) == phi.c(4, 2) + 2 * phi.c(1, 1)


def test_hecke_window_guard():
    with pytest.raises(ValueError):
        hecke_v(psi(2, 2), 2, 3)


def test_maass_routes_and_symmetry():
    phi = psi(2, 9)
    assert maass_lift_hecke(phi, 3, 3) == maass_lift_polylog(phi, 3, 3)
    ml = maass_lift(phi, 3, 3)
    assert ml.exchange_symmetric()
    assert ml.coeff(0, 0, 0) == phi.disc(0) * (-bernoulli(2) / 4)


def test_fg_constants():
    want = {2: Fraction(1, 240), 3: Fraction(-1, 60480), 4: Fraction(1, 3628800),
            5: Fraction(-1, 106444800)}
    for g, v in want.items():
        assert fg_constant(g) == v
        assert fg_route_lift(g, 0, 0).coeff(0, 0, 0) == v
        assert gw_degree_zero(g, 24) == v


def test_f2_single_polylog_term():
    f = fg_route_dt(2, 0, 0, lcap=2)
    assert f.coeff(0, 0, 1) == 12 * psi(2, 1).disc(-1) == Fraction(1, 20)
    assert f.coeff(0, 0, 2) == Fraction(1, 20) * 2


def test_fg_routes_g2():
    a, b = fg_route_lift(2, 2, 2), fg_route_dt(2, 2, 2)
    assert a.first_mismatch(b) is None
    assert b.exchange_symmetric()


def test_formal_low_genus_lifts_flag_constant():
    f0 = fg_route_lift(0, 1, 1)
    assert f0.metadata["constant_omitted"]
    assert (0, 0, 0) not in f0.coeffs


def test_factorwise_log():
    assert check_factorwise_log(2, 4)


def test_recognition_and_short_window():
    rows = exact_rows(7)
    logrows = {d: factorwise_log_row(d, 20) for d in [(1, 1, 1), (2, 2, 2)]}
    prim = primitive_rows(logrows, 20)
    assert recognize_row(prim[(1, 1, 1)], 20) == {j: 12 * c for j, c in rows[3].numerator.items()}
    with pytest.raises(RowRecognitionError):
        recognize_row({k: v for k, v in prim[(2, 2, 2)].items()}, 2)


def test_cusp_forms():
    chi10 = jacobi_cusp_form(10, 3)
    assert chi10.disc(-1) == 0 and chi10.disc(0) == 0 and chi10.disc(3) == 1


def test_serialization():
    f = fg_route_lift(2, 1, 1, lcap=3)
    doc = f.to_json()
    assert doc["coeffs"][0] == {"m": 0, "n": 0, "l": 0, "c": "1/240"}
    assert f.to_csv().splitlines()[0] == "m,n,l,coeff"


def test_igusa_small():
    rep = igusa_check(2, 2)
    assert rep.passed and rep.kappa == 1 and rep.weight == 12
