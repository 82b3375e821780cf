import random
from fractions import Fraction

import pytest
import sympy

from qdyson_ct.errors import DegreeBoundExceeded, DuplicateNode, GridSizeMismatch
from qdyson_ct.laurent import build_F
from qdyson_ct.nullstellensatz import (
    RATFUNC_Q,
    RATIONALS,
    Evaluator,
    coefficient_by_interpolation,
    coefficient_by_reduction,
    explicit_evaluator,
    node_weight,
)
from qdyson_ct.qpoly import RatFunc, UniPoly

F = Fraction


def test_node_weight_examples():
    assert node_weight([F(0), F(1), F(2)], 1) == -1
    assert node_weight([F(7)], 0) == 1
    axis = [RatFunc.q_power(0), RatFunc.q_power(1)]
    assert node_weight(axis, 1, RATFUNC_Q) == RatFunc(UniPoly([-1, 1]))


def test_node_weight_duplicate():
    with pytest.raises(DuplicateNode):
        node_weight([F(1), F(2), F(1)], 0)


def test_interpolation_examples():
    P = {(1, 1): F(1)}
    assert coefficient_by_interpolation(explicit_evaluator(P), (1, 1), [[F(0), F(1)]] * 2) == 1
    const = Evaluator(lambda pt: F(5), 0)
    assert coefficient_by_interpolation(const, (0, 0), [[F(3)], [F(-2)]]) == 5


def test_interpolation_grid_errors():
    ev = explicit_evaluator({(1,): F(1)})
    with pytest.raises(GridSizeMismatch):
        coefficient_by_interpolation(ev, (1,), [[F(0), F(1), F(2)]])
    with pytest.raises(GridSizeMismatch):
        coefficient_by_interpolation(ev, (1, 0), [[F(0), F(1)]])
    with pytest.raises(DuplicateNode):
        coefficient_by_interpolation(ev, (1,), [[F(1), F(1)]])
    with pytest.raises(DegreeBoundExceeded):
        coefficient_by_interpolation(Evaluator(lambda p: F(0), 3), (1,), [[F(0), F(1)]])


def test_reduction_examples():
    assert coefficient_by_reduction({(2,): F(1)}, (1,), [[F(0), F(1)]]) == 1
    P = {(1, 0): F(3), (0, 1): F(-2), (1, 1): F(4)}
    assert coefficient_by_reduction(P, (1, 1), [[F(5), F(6)], [F(-1), F(9)]]) == 4


def _F_as_field_poly(a):
    return {e: RatFunc.from_poly(c) for e, c in build_F(a).terms.items()}


def test_reduction_on_homogenized_product():
    grids = [[RatFunc.q_power(k) for k in range(2)] for _ in range(2)]
    got = coefficient_by_reduction(_F_as_field_poly((1, 1)), (1, 1), grids, RATFUNC_Q)
    assert got == RatFunc(UniPoly([1, 1]))


def test_interpolation_on_homogenized_product_three_vars():
    a = (1, 1, 1)
    P = _F_as_field_poly(a)
    grids = [[RatFunc.q_power(k) for k in range(3)] for _ in range(3)]
    got = coefficient_by_interpolation(explicit_evaluator(P, RATFUNC_Q), (2, 2, 2), grids, RATFUNC_Q)
    assert got == RatFunc(UniPoly([1, 2, 2, 1]))
    assert coefficient_by_reduction(P, (2, 2, 2), grids, RATFUNC_Q) == got


# -- random oracle cases ---------------------------------------------------


def random_case(rng: random.Random):
    n = rng.randint(1, 3)
    d = tuple(rng.randint(0, 4) for _ in range(n))
    budget = sum(d)
    P = {}
    for _ in range(rng.randint(1, 12)):
        exps = tuple(rng.randint(0, 4) for _ in range(n))
        if sum(exps) > budget:
            continue
        P[exps] = P.get(exps, F(0)) + F(rng.randint(-9, 9), rng.randint(1, 5))
    P = {e: c for e, c in P.items() if c}
    grid = [[F(x) for x in rng.sample(range(-10, 11), di + 1)] for di in d]
    return P, d, grid


@pytest.mark.parametrize("seed", range(200))
def test_oracle_equivalence(seed):
    P, d, grid = random_case(random.Random(seed))
    direct = P.get(d, F(0))
    ev = explicit_evaluator(P, degree_bound=sum(d))
    assert coefficient_by_interpolation(ev, d, grid) == direct
    assert coefficient_by_reduction(P, d, grid) == direct


@pytest.mark.parametrize("seed", range(40))
def test_weight_matches_symbolic_derivative(seed):
    rng = random.Random(1000 + seed)
    axis = [F(x) for x in rng.sample(range(-15, 16), rng.randint(1, 6))]
    z = sympy.Symbol("z")
    phi = sympy.expand(sympy.prod([z - sympy.Rational(a.numerator, a.denominator) for a in axis]))
    dphi = sympy.Poly(phi, z).diff(z)
    for i, c in enumerate(axis):
        expected = dphi.eval(sympy.Rational(c.numerator, c.denominator))
        assert node_weight(axis, i) == F(int(expected.p), int(expected.q))


@pytest.mark.parametrize("seed", range(30))
def test_grid_invariance(seed):
    rng = random.Random(5000 + seed)
    P, d, grid1 = random_case(rng)
    grid2 = [[F(x, 3) for x in rng.sample(range(-30, 31), di + 1)] for di in d]
    ev = explicit_evaluator(P, degree_bound=sum(d))
    assert coefficient_by_interpolation(ev, d, grid1) == coefficient_by_interpolation(ev, d, grid2)


@pytest.mark.parametrize(
    "P, d",
    [
        ({(2,): F(1)}, (1,)),
        ({(3, 1): F(1), (1, 1): F(2)}, (1, 1)),
        ({(2, 2, 1): F(-3)}, (1, 1, 1)),
    ],
)
def test_violated_degree_bound_is_detected(P, d):
    grid = [[F(k) for k in range(di + 1)] for di in d]
    lying = Evaluator(explicit_evaluator(P).func, sum(d))
    assert coefficient_by_interpolation(lying, d, grid) != P.get(d, F(0))


def test_field_coercion():
    assert RATIONALS(3) == F(3)
    assert RATFUNC_Q(2) == RatFunc(2)
