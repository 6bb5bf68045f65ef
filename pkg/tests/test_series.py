from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thetaseq.sequences import compute_u, f1_series, f2_series, u_series
from thetaseq.series import (
    OrderExceeded,
    PoleInC,
    TruncSeries,
    ZeroConstantTerm,
    compose_even,
    hypergeometric_series,
    series_add,
    series_coeff,
    series_div,
    series_mul,
    series_pow,
    series_sqrt,
)

F = Fraction


def S(*cs, order=None):
    return TruncSeries.from_coeffs(cs, order)


def pochhammer(x, n):
    out = Fraction(1)
    for i in range(n):
        out *= x + i
    return out


def hyp_coeff(a, b, c, scale, n):
    """Direct (a)_n (b)_n / ((c)_n n!) scale^n, independent of the term ratio."""
    return pochhammer(a, n) * pochhammer(b, n) / (pochhammer(c, n) * factorial(n)) * Fraction(scale) ** n


# -- add / mul / div / pow / coeff -------------------------------------------


def test_add_cancels():
    r = series_add(S(1, 1, order=4), S(1, -1, order=4))
    assert r.coeffs == (2, 0, 0, 0, 0) and r.order == 4


def test_add_zero_identity():
    a = S(F(1, 3), 5, -2)
    assert series_add(a, TruncSeries.zero(2)) == a


def test_add_rationals():
    assert series_add(S(1, F(1, 2)), S(0, F(1, 2))) == S(1, 1)


def test_mixed_order_truncates_to_smaller():
    r = S(1, 2, 3, 4) + S(1, 1)
    assert r.order == 1 and r.coeffs == (2, 3)


def test_mul_difference_of_squares():
    assert series_mul(S(1, 1, order=3), S(1, -1, order=3)) == S(1, 0, -1, 0)


def test_mul_identity():
    a = S(3, F(-1, 7), 2, 9)
    assert series_mul(a, TruncSeries.constant(1, 3)) == a


def test_div_geometric():
    q = series_div(TruncSeries.constant(1, 8), S(1, -1, order=8))
    assert q.coeffs == (1,) * 9


def test_div_self_is_one():
    a = S(2, 3, F(5, 4), -1)
    assert series_div(a, a) == TruncSeries.constant(1, 3)


def test_div_zero_constant_term():
    with pytest.raises(ZeroConstantTerm):
        series_div(S(1, 1), S(0, 1))


def test_pow_examples():
    assert series_pow(S(1, 1, order=3), 2) == S(1, 2, 1, 0)
    assert series_pow(S(5, 7, order=3), 0) == TruncSeries.constant(1, 3)
    assert series_pow(S(1, 1, order=6), 5).coeffs == tuple(comb(5, k) for k in range(6)) + (0,)


def test_coeff_access():
    assert series_coeff(S(1, 1), 0) == 1
    assert series_coeff(series_pow(S(1, 1, order=2), 2), 2) == 1
    with pytest.raises(OrderExceeded):
        series_coeff(S(1, 1), 2)


def test_u_squared_linear_coefficient():
    # U = 1 + (6/3!) t + ..., so U^2 = 1 + 2t + ...
    U = u_series(1)
    assert U.coeffs == (1, 1)
    assert series_coeff(series_pow(U, 2), 1) == 2


def test_floats_rejected():
    with pytest.raises(TypeError):
        S(1.5, 2)


def test_sqrt_and_derivative():
    assert series_sqrt(S(1, 2, 1, 0, 0)) == S(1, 1, 0, 0, 0)
    assert series_sqrt(S(F(4, 9), 0, 0)).coeffs[0] == F(2, 3)
    with pytest.raises(ValueError):
        series_sqrt(S(2, 1))
    d = S(1, 1, 1, 1).derivative()
    assert d == S(1, 2, 3) and d.order == 2


def test_compose_even():
    r = compose_even(S(1, 2, 3))
    assert r.coeffs == (1, 0, 2, 0, 3, 0) and r.order == 5


# -- hypergeometric ------------------------------------------------------------


def test_hypergeometric_matches_pochhammer_formula():
    for a, b, c, scale in [(F(1, 4), F(1, 4), F(1, 2), 4), (F(3, 4), F(3, 4), F(3, 2), 4),
                           (F(1, 2), F(1, 2), 1, 1), (F(-2, 3), F(5, 7), F(9, 5), F(-3, 2))]:
        s = hypergeometric_series(a, b, c, scale, 12)
        assert list(s.coeffs) == [hyp_coeff(a, b, c, scale, n) for n in range(13)]


def test_hypergeometric_scale_zero_is_one():
    assert hypergeometric_series(F(1, 3), 2, 5, 0, 6) == TruncSeries.constant(1, 6)


def test_hypergeometric_pole():
    for c in (0, -1, -3):
        with pytest.raises(PoleInC):
            hypergeometric_series(1, 1, c, 1, 4)


def test_q_and_p_patterns():
    # Q(u) = sum (1*5*...*(4m-3))^2/(2m)! u^(2m),  P(u)/u = sum (3*7*...*(4m-1))^2/(2m+1)! u^(2m)
    f1, f2 = f1_series(15), f2_series(15)
    one, three = 1, 1
    for m in range(16):
        if m:
            one *= 4 * m - 3
            three *= 4 * m - 1
        assert f1.coeffs[m] == F(one**2, factorial(2 * m))
        assert f2.coeffs[m] == F(three**2, factorial(2 * m + 1))
    # the second coefficient of F1 worked by hand: (1/4)(1/4)/(1/2) * 4 = 1/2
    assert f1.coeffs[1] == F(1, 2)


def test_elliptic_g_series():
    g = hypergeometric_series(F(1, 2), F(1, 2), 1, 1, 20)
    assert list(g.coeffs) == [F(comb(2 * n, n) ** 2, 16**n) for n in range(21)]


def test_u_times_f1_is_f2():
    # U from the integer recurrence, F1 and F2 from the direct Pochhammer formula
    M = 10
    u = compute_u(M)
    U = TruncSeries.from_coeffs([F(u[n], factorial(2 * n + 1)) for n in range(M + 1)])
    F1 = TruncSeries.from_coeffs([hyp_coeff(F(1, 4), F(1, 4), F(1, 2), 4, n) for n in range(M + 1)])
    F2 = TruncSeries.from_coeffs([hyp_coeff(F(3, 4), F(3, 4), F(3, 2), 4, n) for n in range(M + 1)])
    assert series_mul(F1, U) == F2


def test_u_series_values_and_integrality():
    U = u_series(30)
    assert [U.coeffs[n] * factorial(2 * n + 1) for n in range(4)] == [1, 6, 256, 28560]
    assert U.coeffs[2] == F(32, 15)
    for n in range(31):
        assert (U.coeffs[n] * factorial(2 * n + 1)).denominator == 1


# -- ring properties -----------------------------------------------------------

fractions_ = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def series(draw, order=None, nonzero_const=False):
    m = order if order is not None else draw(st.integers(0, 20))
    cs = draw(st.lists(fractions_, min_size=m + 1, max_size=m + 1))
    if nonzero_const and cs[0] == 0:
        cs[0] = Fraction(1)
    return TruncSeries.from_coeffs(cs)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 20).flatmap(lambda m: st.tuples(series(m), series(m), series(m))))
def test_ring_axioms(abc):
    a, b, c = abc
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 20).flatmap(lambda m: st.tuples(series(m), series(m, nonzero_const=True))))
def test_div_then_mul_roundtrip(ab):
    a, b = ab
    assert series_mul(series_div(a, b), b) == a


@settings(max_examples=25, deadline=None)
@given(series(), st.integers(0, 6))
def test_pow_is_repeated_mul(a, k):
    expected = TruncSeries.constant(1, a.order)
    for _ in range(k):
        expected = series_mul(expected, a)
    assert series_pow(a, k) == expected
