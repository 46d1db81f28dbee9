import csv
import io

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bananadt.banana_dt import (CurveClass, c_table, cor24_check, cor24_product, curve_norm,
                                delta_i, dmvv_check, ell_c2, exact_rows, hilb_ell_localization,
                                hilb_ell_product, hilb_slice, q_slice, rows_from_delta,
                                theta_ratio_series, three_route_check, z_banana_product,
                                z_fiber_product)
from bananadt.qforms import macmahon
from bananadt.series import TruncSeries, Window


@pytest.fixture(scope="module")
def table():
    return c_table(12, 12)


def test_closed_rows(table):
    for k in range(-12, 13):
        assert table.c(-1, k) == (-k if k > 0 else 0)
        assert table.c(0, k) == (1 if k == 0 else 2 * k if k > 0 else 0)
    assert table.c(-1, 1) == -1 and table.c(0, 3) == 6
    assert table.c(-2, 5) == 0 and table.c(-7, 1) == 0


def test_three_routes_agree():
    assert all(three_route_check(12, 12).values())


def test_delta_zero_and_integrality():
    ds = delta_i(4)
    assert ds[0] == {0: 1}
    assert all(isinstance(c, int) for d in ds for c in d.values())


def test_rows_symmetric_and_supported():
    rows = exact_rows(16)
    for a, row in rows.items():
        assert row.cleared_symmetric()
        if a % 4 in (1, 2):
            assert not row.numerator
    # a wider table never adds coefficients below the reported support
    wide = c_table(12, 20)
    for a in range(-1, 13):
        assert wide.k_min(a) == c_table(12, 8).k_min(a)


def test_ell_c2_examples():
    ell = ell_c2(2, kwin=6)
    assert ell.c(0, 0, 0) == 1
    for (n, l, k), c in ell.coeffs.items():
        if k <= ell.known_k(n):
            assert ell.c(n, -l, k) == c
    for k in range(-2, ell.known_k(1) + 1):
        assert ell.c(1, 2, k) == ell.c(0, 0, k)


def test_cor24(table):
    assert cor24_check(12, 12).passed
    p = cor24_product(3, 8)
    q1 = {int(e[0]): c for e, c in p.slice("Q", 1).items()}
    assert q1 == {k: table.c(0, k) for k in range(0, max(q1) + 1) if table.c(0, k)}
    q0 = {int(e[0]): c for e, c in p.slice("Q", 0).items()}
    assert q0 == {k: -k for k in range(1, max(q0) + 1)}


def test_theta_ratio_detects_bad_row():
    s = theta_ratio_series(4, 6)
    assert s.coeff({"Q": 1, "t": 3}) == 6
    assert s.coeff({"Q": 1, "t": 3}) != 7


def test_hilb_small_m():
    assert hilb_ell_localization(0, 2).natural_terms() == {(0, 0, 0): 1}
    loc1 = hilb_ell_localization(1, 2, kwin=6)
    ell = ell_c2(2, kwin=6)
    got = {tuple(int(x) for x in e): c for e, c in loc1.natural_terms().items()}
    assert {e: c for e, c in got.items() if e[2] <= 6 - e[0]} == \
        {e: c for e, c in ell.coeffs.items() if e[2] <= 6 - e[0]}


def test_hilb_product_q0():
    prod = hilb_ell_product(2, 2, kwin=4)
    assert hilb_slice(prod, 0) == {(0, 0, 0): 1}


def test_dmvv_m_up_to_two():
    assert dmvv_check(2, 2, 4, 4) == {1: True, 2: True}


@given(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6))
def test_curve_norm(d1, d2, d3):
    a = curve_norm((d1, d2, d3))
    assert a == CurveClass((d1, d2, d3)).norm
    assert a % 4 in (0, 3)
    assert a == curve_norm((d2, d3, d1)) == curve_norm((d2, d1, d3))


def test_curve_class_validation():
    with pytest.raises(ValueError):
        CurveClass((1, -1, 0))


def test_z_degree_zero_and_linear():
    z = z_banana_product(1, 4)
    w = Window(("p",), (0,), (4,))
    m24 = macmahon(w, power=24)
    assert q_slice(z, (0, 0, 0)) == {e[0]: c for e, c in m24.natural_terms().items()}
    top = int(max(q_slice(z, (1, 0, 0))))
    w1 = Window(("p",), (0,), (top,))
    # (1 - p^k Q1)^{12k} contributes -12k p^k Q1
    lin = macmahon(w1, power=24) * TruncSeries(w1, {(k,): -12 * k for k in range(1, top + 1)})
    assert q_slice(z, (1, 0, 0)) == {e[0]: c for e, c in lin.natural_terms().items()}


def test_z_is_twelfth_power():
    z1 = z_fiber_product(2, 3, tilt=1)
    assert z1 ** 12 == z_banana_product(2, 3, tilt=1)


def test_fiber_degree_zero_is_m_squared():
    z = z_fiber_product(0, 6)
    m2 = macmahon(Window(("p",), (0,), (6,)), power=2)
    assert q_slice(z, (0, 0, 0)) == {e[0]: c for e, c in m2.natural_terms().items()}


def test_csv_and_json_emission(table):
    rows = list(csv.reader(io.StringIO(table.to_csv(kmax=4))))
    assert rows[0] == ["a", "k", "c"]
    assert ["-1", "1", "-1"] in rows and ["0", "0", "1"] in rows
    doc = table.to_json(kmax=4)
    assert doc["metadata"]["k_min"][-1] == 1
    assert table.to_csv(kmax=4) == c_table(12, 12).to_csv(kmax=4)


def test_row_lookup_beyond_table(table):
    with pytest.raises(ValueError):
        table.c(13, 0)
    assert rows_from_delta(3)[3].c(0) == table.c(3, 0)
