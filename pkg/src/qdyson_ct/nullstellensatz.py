"""Coefficient extraction from values on a product grid.

For a polynomial ``F`` in n variables with ``deg F <= d_1 + ... + d_n`` and
node sets ``A_i`` of size ``d_i + 1``, the coefficient of ``prod x_i^{d_i}``
equals

    sum over c in A_1 x ... x A_n of  F(c) / (phi_1'(c_1) ... phi_n'(c_n)),

with ``phi_i(z) = prod_{a in A_i} (z - a)``.  `coefficient_by_interpolation`
computes that sum from a black-box evaluator; `coefficient_by_reduction`
reduces an explicit polynomial modulo each ``phi_i(x_i)`` and reads the
coefficient off the remainder.

Everything here is generic over an exact field given as a `Field` (its zero
and one); elements are combined with the usual operators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Mapping, Sequence

from .errors import DegreeBoundExceeded, DuplicateNode, GridSizeMismatch
from .qpoly import RatFunc

Point = tuple[Any, ...]


@dataclass(frozen=True)
class Field:
    name: str
    zero: Any
    one: Any

    def __call__(self, x) -> Any:
        """Coerce an integer (or field element) into the field."""
        return self.one * x


RATIONALS = Field("QQ", Fraction(0), Fraction(1))
RATFUNC_Q = Field("QQ(q)", RatFunc(0), RatFunc(1))


@dataclass(frozen=True)
class Evaluator:
    """Black-box polynomial: a callable on points plus a total-degree bound."""

    func: Callable[[Point], Any]
    degree_bound: int

    def __call__(self, point: Point) -> Any:
        return self.func(point)


Grid = Sequence[Sequence[Any]]


def _check_distinct(axis: Sequence[Any]) -> None:
    for i, j in itertools.combinations(range(len(axis)), 2):
        if axis[i] == axis[j]:
            raise DuplicateNode(f"axis nodes {i} and {j} are equal: {axis[i]}")


def node_weight(axis: Sequence[Any], index: int, field: Field = RATIONALS) -> Any:
    """``phi'(c) = prod_{a != c} (c - a)`` for ``c = axis[index]``."""
    _check_distinct(axis)
    c = axis[index]
    w = field.one
    for k, x in enumerate(axis):
        if k != index:
            w = w * (c - x)
    return w


def axis_weights(axis: Sequence[Any], field: Field = RATIONALS) -> list[Any]:
    _check_distinct(axis)
    out = []
    for idx, c in enumerate(axis):
        w = field.one
        for k, x in enumerate(axis):
            if k != idx:
                w = w * (c - x)
        out.append(w)
    return out


def _check_grid(d: Sequence[int], grid: Grid) -> None:
    if len(d) != len(grid):
        raise GridSizeMismatch(f"{len(d)} target exponents but {len(grid)} axes")
    for i, (di, axis) in enumerate(zip(d, grid)):
        if di < 0:
            raise GridSizeMismatch(f"negative target exponent d_{i}={di}")
        if len(axis) != di + 1:
            raise GridSizeMismatch(f"axis {i} has {len(axis)} nodes, expected {di + 1}")


def coefficient_by_interpolation(
    F: Evaluator, d: Sequence[int], grid: Grid, field: Field = RATIONALS
) -> Any:
    """Coefficient of ``prod x_i^{d_i}`` in ``F`` from its values on ``grid``."""
    _check_grid(d, grid)
    if F.degree_bound > sum(d):
        raise DegreeBoundExceeded(f"degree bound {F.degree_bound} exceeds sum(d)={sum(d)}")
    weights = [axis_weights(axis, field) for axis in grid]
    total = field.zero
    # row-major walk over the product grid
    for idx in itertools.product(*(range(len(axis)) for axis in grid)):
        value = F(tuple(axis[k] for axis, k in zip(grid, idx)))
        if value == field.zero:
            continue
        denom = field.one
        for w, k in zip(weights, idx):
            denom = denom * w[k]
        total = total + value / denom
    return total


# -- explicit polynomials ------------------------------------------------

Poly = Mapping[tuple[int, ...], Any]


def node_polynomial(axis: Sequence[Any], field: Field = RATIONALS) -> list[Any]:
    """Coefficients of ``phi(z) = prod (z - a)``, ascending; monic."""
    coeffs = [field.one]
    for a in axis:
        nxt = [field.zero] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k + 1] = nxt[k + 1] + c
            nxt[k] = nxt[k] - a * c
        coeffs = nxt
    return coeffs


def _power_residues(phi: list[Any], top: int, field: Field) -> list[list[Any]]:
    """``z^e mod phi`` for ``e = 0..top``, each as a coefficient list of length deg(phi)."""
    m = len(phi) - 1
    res = []
    cur = [field.zero] * m
    if m == 0:
        return [[] for _ in range(top + 1)]
    cur[0] = field.one
    for _ in range(top + 1):
        res.append(cur)
        # multiply by z and reduce with z^m = -sum phi[k] z^k
        lead = cur[-1]
        nxt = [field.zero] + cur[:-1]
        if lead != field.zero:
            nxt = [x - lead * p for x, p in zip(nxt, phi[:-1])]
        cur = nxt
    return res


def reduce_modulo_axis(P: Poly, var: int, axis: Sequence[Any], field: Field = RATIONALS) -> dict:
    """Remainder of ``P`` after division by ``phi(x_var)`` for the node set ``axis``."""
    phi = node_polynomial(axis, field)
    m = len(phi) - 1
    top = max((e[var] for e in P), default=0)
    residues = _power_residues(phi, top, field)
    out: dict[tuple[int, ...], Any] = {}
    for exps, c in P.items():
        if c == field.zero:
            continue
        if exps[var] < m:
            parts = [(exps[var], field.one)]
        else:
            parts = [(k, r) for k, r in enumerate(residues[exps[var]]) if r != field.zero]
        for k, r in parts:
            key = exps[:var] + (k,) + exps[var + 1 :]
            out[key] = out.get(key, field.zero) + c * r
    return {e: c for e, c in out.items() if c != field.zero}


def coefficient_by_reduction(P: Poly, d: Sequence[int], grid: Grid, field: Field = RATIONALS) -> Any:
    """Reduce ``P`` modulo every ``phi_i(x_i)`` in turn, then read the target coefficient."""
    _check_grid(d, grid)
    for axis in grid:
        _check_distinct(axis)
    for exps in P:
        if len(exps) != len(d):
            raise GridSizeMismatch(f"monomial {exps} does not match {len(d)} variables")
    current = dict(P)
    for var, axis in enumerate(grid):
        current = reduce_modulo_axis(current, var, axis, field)
    return current.get(tuple(d), field.zero)


def evaluate_explicit(P: Poly, point: Point, field: Field = RATIONALS) -> Any:
    total = field.zero
    for exps, c in P.items():
        term = c
        for x, e in zip(point, exps):
            if e:
                term = term * x**e
        total = total + term
    return total


def explicit_evaluator(P: Poly, field: Field = RATIONALS, degree_bound: int | None = None) -> Evaluator:
    if degree_bound is None:
        degree_bound = max((sum(e) for e in P), default=0)
    return Evaluator(lambda pt: evaluate_explicit(P, pt, field), degree_bound)
