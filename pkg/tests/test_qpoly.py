from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdyson_ct.errors import DivisionByZero, NonExactDivision, NonPolynomialResult
from qdyson_ct.qpoly import (
    ONE,
    ZERO,
    RatFunc,
    UniPoly,
    content,
    divide_qpoch,
    eval_at_q1,
    exact_div,
    gaussian_binomial,
    poly_gcd,
    primitive_part,
    qpoch,
)

P = UniPoly

coeff_lists = st.lists(st.integers(-50, 50), max_size=8)
polys = coeff_lists.map(UniPoly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


# -- examples --------------------------------------------------------------


def test_difference_of_squares():
    assert P([1, -1]) * P([1, 1]) == P([1, 0, -1])


def test_zero_absorbs():
    assert P([3, 1, 4]) * ZERO == ZERO
    assert (P([3, 1, 4]) * ZERO).degree == -1


def test_schoolbook_example():
    assert P([1, -1]) * P([1, 0, -1]) == P([1, -1, -1, 1])


def test_canonical_trim():
    p = P([1, 2, 0, 0])
    assert p.coeffs == (1, 2)
    assert P([0, 0]).is_zero()
    assert P([1, 1]) - P([0, 1]) == ONE


@pytest.mark.parametrize(
    "num, den, quot",
    [
        ([1, 0, -1], [1, -1], [1, 1]),
        ([1, 0, 0, -1], [1, -1], [1, 1, 1]),
    ],
)
def test_exact_div_examples(num, den, quot):
    assert exact_div(P(num), P(den)) == P(quot)


def test_exact_div_rejects_remainder():
    with pytest.raises(NonExactDivision):
        exact_div(P([1, 0, -1]), P([1, 1, 1]))


def test_exact_div_rejects_non_integer_quotient():
    with pytest.raises(NonExactDivision):
        exact_div(P([1, 1]), P([2]))


def test_exact_div_by_zero():
    with pytest.raises(DivisionByZero):
        exact_div(ONE, ZERO)


def test_qpoch_examples():
    assert qpoch(1, 0) == ONE
    assert qpoch(1, 2) == P([1, -1, -1, 1])
    assert qpoch(3, 1) == P([1, 0, 0, -1])
    assert qpoch(0, 0) == ONE
    assert qpoch(0, 3) == ZERO


def test_eval_at_q1_examples():
    assert eval_at_q1(P([1, 1, 1])) == 3
    assert eval_at_q1(ZERO) == 0
    assert eval_at_q1(qpoch(1, 2)) == 0


def test_gaussian_binomial_examples():
    assert gaussian_binomial(1, 1) == P([1, 1])
    assert gaussian_binomial(0, 5) == ONE
    assert gaussian_binomial(2, 1) == P([1, 1, 1])


def test_ratfunc_examples():
    r = RatFunc(P([1, 0, -1]), P([1, -1]))
    assert r.num == P([1, 1]) and r.den == ONE
    x = RatFunc(P([2, 3]), P([5, 0, 7]))
    s = x + (-x)
    assert s.num == ZERO and s.den == ONE
    left = RatFunc(ONE, P([1, -1])) * RatFunc(P([1, -1]), P([1, 1]))
    assert left == RatFunc(ONE, P([1, 1]))


def test_ratfunc_division_by_zero():
    with pytest.raises(DivisionByZero):
        RatFunc(ONE) / RatFunc(ZERO)
    with pytest.raises(DivisionByZero):
        RatFunc(ONE, ZERO)


def test_ratfunc_sign_and_content_canonical():
    r = RatFunc(P([2, 2]), P([-4, -4, 0]))
    assert r.num == P([-1]) and r.den == P([2])
    half = RatFunc(1, 2)
    assert half.num == ONE and half.den == P([2])
    assert half + half == RatFunc(1)


def test_ratfunc_to_poly():
    assert RatFunc(P([1, 0, -1]), P([1, 1])).to_poly() == P([1, -1])
    with pytest.raises(NonPolynomialResult):
        RatFunc(ONE, P([1, 1])).to_poly()


def test_q_power_negative():
    assert RatFunc.q_power(-2) * RatFunc.q_power(3) == RatFunc.q_power(1)


def test_gcd_basics():
    a = P([1, -1]) * P([2, 1]) * 6
    b = P([1, -1]) * P([3, 0, 1]) * 4
    assert poly_gcd(a, b) == P([-2, 2])
    assert content(P([6, -9, 12])) == 3
    assert primitive_part(P([6, -9, -12])) == P([-2, 3, 4])


def test_text_rendering():
    assert qpoch(1, 2).to_text() == "1 - q - q^2 + q^3"
    assert P([0, 1]).to_text() == "q"
    assert P([-1, 0, 3]).to_text() == "-1 + 3q^2"
    assert P([0, -2]).to_text() == "-2q"
    assert ZERO.to_text() == "0"


def test_json_round_trip():
    p = P([10**30, -1, 0, 7])
    assert p.to_json() == [str(10**30), "-1", "0", "7"]
    assert UniPoly.from_json(p.to_json()) == p


def test_big_integers_stay_exact():
    p = P([2**200, 1]) * P([2**200, -1])
    assert p == P([2**400, 0, -1])


# -- properties --------------------------------------------------------------


@settings(max_examples=1000, deadline=None)
@given(polys, polys, polys)
def test_ring_laws(p, r, s):
    assert (p + r) + s == p + (r + s)
    assert (p * r) * s == p * (r * s)
    assert p + r == r + p
    assert p * r == r * p
    assert p * (r + s) == p * r + p * s
    assert p - p == ZERO


@settings(max_examples=300, deadline=None)
@given(polys, nonzero_polys)
def test_exact_div_inverts_mul(p, d):
    assert exact_div(p * d, d) == p


@pytest.mark.parametrize("m", range(21))
def test_qpoch_recurrence(m):
    for k in range(21):
        assert qpoch(m, k + 1) == qpoch(m, k) * (ONE - UniPoly.monomial(m + k))


@settings(max_examples=300, deadline=None)
@given(polys, polys)
def test_eval_at_q1_is_multiplicative(p, r):
    assert eval_at_q1(p * r) == eval_at_q1(p) * eval_at_q1(r)
    assert eval_at_q1(p + r) == eval_at_q1(p) + eval_at_q1(r)


def _pascal(limit):
    rows = [[1]]
    for n in range(1, limit + 1):
        prev = rows[-1]
        rows.append([1] + [prev[k - 1] + prev[k] for k in range(1, n)] + [1])
    return rows


def test_gaussian_binomial_properties():
    pascal = _pascal(16)
    for a in range(9):
        for b in range(9):
            g = gaussian_binomial(a, b)
            assert g == gaussian_binomial(b, a)
            assert all(c >= 0 for c in g.coeffs)
            assert eval_at_q1(g) == pascal[a + b][a] == comb(a + b, a)


@settings(max_examples=200, deadline=None)
@given(polys, nonzero_polys, nonzero_polys)
def test_ratfunc_canonical_form(p, r, s):
    assert RatFunc(p * s, r * s) == RatFunc(p, r)


@settings(max_examples=200, deadline=None)
@given(polys, nonzero_polys, polys, nonzero_polys)
def test_ratfunc_field_laws(a, b, c, d):
    x, y = RatFunc(a, b), RatFunc(c, d)
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) - y == x
    if not y.is_zero():
        assert (x / y) * y == x
    # canonical invariants
    for z in (x + y, x * y):
        assert z.den.leading_coeff > 0
        assert poly_gcd(z.num, z.den).degree <= 0


@settings(max_examples=300, deadline=None)
@given(polys, st.integers(0, 7))
def test_divide_qpoch_inverts_mul(p, k):
    assert divide_qpoch(p * qpoch(1, k), k) == p


def test_divide_qpoch_rejects_non_multiple():
    with pytest.raises(NonExactDivision):
        divide_qpoch(P([1, 1]), 1)
    with pytest.raises(NonExactDivision):
        divide_qpoch(qpoch(1, 3), 4)
