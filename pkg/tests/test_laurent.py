import itertools

import pytest

from qdyson_ct.errors import DimensionMismatch, ZeroParameter
from qdyson_ct.laurent import LaurentPoly, build_F, build_fq, evaluate_F_at
from qdyson_ct.qdyson import sweep
from qdyson_ct.qpoly import ONE, ZERO, UniPoly

P = UniPoly


def L(terms, n=2):
    return LaurentPoly(n, terms)


def test_monomial_cancellation():
    assert L({(1, -1): 1}) * L({(-1, 1): 1}) == LaurentPoly.one(2)


def test_additive_inverse_is_empty():
    p = L({(1, -1): P([1, 2]), (0, 0): 3})
    assert (p + (-p)).terms == {}


def test_four_term_expansion():
    left = L({(0, 0): 1, (1, -1): -1})
    right = L({(0, 0): 1, (-1, 1): P([0, -1])})
    expected = L({(0, 0): P([1, 1]), (1, -1): -1, (-1, 1): P([0, -1])})
    assert left * right == expected


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        LaurentPoly.one(2) * LaurentPoly.one(3)
    with pytest.raises(DimensionMismatch):
        LaurentPoly.one(2).coefficient((0, 0, 0))


def test_coefficient_lookup():
    fq = build_fq((1, 1))
    assert fq.coefficient((0, 0)) == P([1, 1])
    assert fq.coefficient((5, -5)) == ZERO
    assert L({(2, 1): P([1, -1])}).coefficient((2, 1)) == P([1, -1])


def test_constant_term_examples():
    assert build_fq((1, 1)).constant_term() == P([1, 1])
    assert L({(1, -1): 1}).constant_term() == ZERO
    assert LaurentPoly(2).constant_term() == ZERO


def test_build_fq_examples():
    assert build_fq((7,)) == LaurentPoly.one(1)
    assert build_fq(()) == LaurentPoly.one(0)
    expected = L({(0, 0): P([1, 1]), (1, -1): -1, (-1, 1): P([0, -1])})
    assert build_fq((1, 1)) == expected
    assert sum(build_fq((1, 1, 1)).constant_term().coeffs) == 6


def test_build_F_examples():
    F = build_F((1, 1))
    assert F == L({(2, 0): -1, (1, 1): P([1, 1]), (0, 2): P([0, -1])})
    assert F.coefficient((1, 1)) == P([1, 1])
    assert build_F((2, 1, 1)).total_degrees() == {8}
    with pytest.raises(ZeroParameter):
        build_F((1, 0))


def test_evaluate_F_at_examples():
    assert evaluate_F_at((1, 1), (0, 1)) == P([-1, 1]) * P([1, 0, -1])
    assert evaluate_F_at((1, 1), (0, 0)) == ZERO
    with pytest.raises(ZeroParameter):
        evaluate_F_at((0, 1), (0, 0))


def _positive_vectors(n_max, sigma_max):
    return [a for a in sweep(n_max, sigma_max) if all(a)]


@pytest.mark.parametrize("a", _positive_vectors(3, 4) + [(1, 1, 1, 1)])
def test_evaluate_F_matches_substitution(a):
    F = build_F(a)
    sigma = sum(a)
    for alpha in itertools.product(range(sigma + 1), repeat=len(a)):
        assert evaluate_F_at(a, alpha) == F.substitute_q_powers(alpha)


@pytest.mark.parametrize("a", _positive_vectors(4, 8))
def test_homogeneity(a):
    F = build_F(a)
    F.audit()
    assert F.total_degrees() == {(len(a) - 1) * sum(a)}
    assert all(e >= 0 for exps in F.terms for e in exps)


@pytest.mark.parametrize("a", _positive_vectors(4, 6))
def test_shift_correspondence(a):
    sigma = sum(a)
    fq = build_fq(a)
    fq.audit()
    target = tuple(sigma - x for x in a)
    assert build_F(a).coefficient(target) == fq.constant_term()


def test_canonical_iteration_order_and_json():
    fq = build_fq((1, 1))
    keys = [e for e, _ in fq]
    assert keys == [(-1, 1), (0, 0), (1, -1)]
    data = fq.to_json()
    assert data[1] == {"exps": [0, 0], "coeff": ["1", "1"]}
    assert LaurentPoly.from_json(2, data) == fq


def test_constructor_merges_and_purges():
    p = LaurentPoly(1, [((1,), P([1])), ((1,), P([-1])), ((0,), ONE)])
    assert p.terms == {(0,): ONE}
    p.audit()
