"""Sparse multivariate Laurent polynomials with coefficients in Z[q].

Also builds the q-Dyson product ``f_q`` and its homogenisation ``F``, and
evaluates ``F`` at points ``(q^alpha_1, ..., q^alpha_n)`` straight from its
linear factors.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Sequence

from .errors import DimensionMismatch, ScaleLimitExceeded, ZeroParameter
from .qpoly import ONE, ZERO, UniPoly, _mul_one_minus_qpow

Exps = tuple[int, ...]


def term_order_key(exps: Exps) -> tuple:
    """Graded lexicographic key: total degree first, then exponents."""
    return (sum(exps), exps)


class LaurentPoly:
    """Finite map from exponent vectors to nonzero `UniPoly` coefficients."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[Exps, UniPoly] | Iterable = ()):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        self.nvars = nvars
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exps, UniPoly] = {}
        for exps, coeff in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise DimensionMismatch(f"exponent vector {exps} has length != {nvars}")
            if isinstance(coeff, int):
                coeff = UniPoly.constant(coeff)
            coeff = clean.get(exps, ZERO) + coeff
            if coeff.is_zero():
                clean.pop(exps, None)
            else:
                clean[exps] = coeff
        self._terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exps, UniPoly]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        return obj

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls._raw(nvars, {(0,) * nvars: ONE})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: UniPoly | int = 1) -> "LaurentPoly":
        return cls(len(exps), {tuple(exps): coeff})

    @property
    def terms(self) -> Mapping[Exps, UniPoly]:
        return self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Exps, UniPoly]]:
        """Terms in canonical (graded lexicographic) order."""
        for exps in sorted(self._terms, key=term_order_key):
            yield exps, self._terms[exps]

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: "LaurentPoly") -> None:
        if self.nvars != other.nvars:
            raise DimensionMismatch(f"{self.nvars} vs {other.nvars} variables")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for exps, c in other._terms.items():
            s = out.get(exps, ZERO) + c
            if s.is_zero():
                out.pop(exps, None)
            else:
                out[exps] = s
        return LaurentPoly._raw(self.nvars, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[Exps, UniPoly] = {}
        for eb, cb in b.items():
            for ea, ca in a.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                prod = ca * cb
                prev = out.get(key)
                out[key] = prod if prev is None else prev + prod
        return LaurentPoly._raw(self.nvars, {e: c for e, c in out.items() if not c.is_zero()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __repr__(self) -> str:
        body = ", ".join(f"{e}: {c}" for e, c in self)
        return f"LaurentPoly({self.nvars}, {{{body}}})"

    def coefficient(self, exps: Sequence[int]) -> UniPoly:
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise DimensionMismatch(f"exponent vector {exps} has length != {self.nvars}")
        return self._terms.get(exps, ZERO)

    def constant_term(self) -> UniPoly:
        return self._terms.get((0,) * self.nvars, ZERO)

    def total_degrees(self) -> set[int]:
        return {sum(e) for e in self._terms}

    def substitute_q_powers(self, alpha: Sequence[int]) -> UniPoly:
        """Set ``x_i = q**alpha_i`` and collect the result in Z[q].

        Needs every exponent of the polynomial to be nonnegative whenever the
        corresponding ``alpha_i`` is positive; in practice it is applied to
        ordinary polynomials only.
        """
        if len(alpha) != self.nvars:
            raise DimensionMismatch("point has wrong length")
        acc: dict[int, int] = {}
        for exps, coeff in self._terms.items():
            shift = sum(e * a for e, a in zip(exps, alpha))
            if shift < 0:
                raise ValueError("substitution produced a negative power of q")
            for k, c in coeff.terms():
                acc[k + shift] = acc.get(k + shift, 0) + c
        if not acc:
            return ZERO
        top = max(acc)
        return UniPoly([acc.get(k, 0) for k in range(top + 1)])

    def audit(self) -> None:
        """Raise AssertionError if a zero coefficient or bad key is stored."""
        for exps, coeff in self._terms.items():
            assert len(exps) == self.nvars, exps
            assert isinstance(coeff, UniPoly) and not coeff.is_zero(), exps

    def to_json(self) -> list[dict]:
        return [{"exps": list(e), "coeff": c.to_json()} for e, c in self]

    @classmethod
    def from_json(cls, nvars: int, data: Iterable[Mapping]) -> "LaurentPoly":
        return cls(nvars, [(tuple(t["exps"]), UniPoly.from_json(t["coeff"])) for t in data])


def _mul_binomial(
    poly: dict[Exps, UniPoly], shift_exps: Exps, q_exp: int, lead_exps: Exps | None = None
) -> dict[Exps, UniPoly]:
    """Multiply by ``m0 - q**q_exp * m1`` where m0, m1 are monomials.

    ``lead_exps`` is the exponent of m0 (None means m0 = 1) and ``shift_exps``
    the exponent of m1.
    """
    out: dict[Exps, UniPoly] = {}
    for exps, c in poly.items():
        key0 = exps if lead_exps is None else tuple(x + y for x, y in zip(exps, lead_exps))
        prev = out.get(key0)
        out[key0] = c if prev is None else prev + c
        key1 = tuple(x + y for x, y in zip(exps, shift_exps))
        term = -c.shift(q_exp)
        prev = out.get(key1)
        out[key1] = term if prev is None else prev + term
    return {e: c for e, c in out.items() if not c.is_zero()}


def _unit(n: int, i: int, j: int, si: int = 1, sj: int = -1) -> Exps:
    v = [0] * n
    v[i] += si
    v[j] += sj
    return tuple(v)


def fq_factors(a: Sequence[int]) -> Iterator[tuple[Exps, int]]:
    """Yield the factors ``1 - q^t * x^e`` of ``f_q`` as ``(e, t)``.

    Order: pairs (i, j) lexicographically, the ``(x_i/x_j)`` block first, t ascending.
    """
    n = len(a)
    for i in range(n):
        for j in range(i + 1, n):
            ratio = _unit(n, i, j)
            for t in range(a[i]):
                yield ratio, t
            inv = _unit(n, i, j, -1, 1)
            for t in range(1, a[j] + 1):
                yield inv, t


def build_fq(a: Sequence[int], term_budget: int | None = None) -> LaurentPoly:
    """Expand ``prod_{i<j} (x_i/x_j; q)_{a_i} (q x_j/x_i; q)_{a_j}``.

    ``(x_i/x_j; q)_k`` stands for ``(1 - x_i/x_j)(1 - q x_i/x_j)...``.  If
    ``term_budget`` is given, the running count of stored coefficient entries
    (sum of coefficient lengths) may not exceed it.
    """
    n = len(a)
    if any(x < 0 for x in a):
        raise ValueError("parameters must be nonnegative")
    poly: dict[Exps, UniPoly] = {(0,) * n: ONE}
    for exps, t in fq_factors(a):
        poly = _mul_binomial(poly, exps, t)
        if term_budget is not None:
            size = sum(len(c) for c in poly.values())
            if size > term_budget:
                raise ScaleLimitExceeded(
                    f"expansion of f_q for a={tuple(a)} exceeds {term_budget} stored coefficients"
                )
    return LaurentPoly._raw(n, poly)


def _require_positive(a: Sequence[int]) -> None:
    if any(x == 0 for x in a):
        raise ZeroParameter(f"parameter vector {tuple(a)} has a zero entry")
    if any(x < 0 for x in a):
        raise ValueError("parameters must be nonnegative")


def F_factors(a: Sequence[int]) -> Iterator[tuple[int, int, int]]:
    """Yield each linear factor ``x_k - q^t x_l`` of ``F`` as ``(k, l, t)``."""
    n = len(a)
    for i in range(n):
        for j in range(i + 1, n):
            for t in range(a[i]):
                yield j, i, t
            for t in range(1, a[j] + 1):
                yield i, j, t


def build_F(a: Sequence[int]) -> LaurentPoly:
    """Expand ``F = prod_{i<j} prod_{t<a_i} (x_j - x_i q^t) prod_{1<=t<=a_j} (x_i - x_j q^t)``."""
    _require_positive(a)
    n = len(a)
    poly: dict[Exps, UniPoly] = {(0,) * n: ONE}
    for k, l, t in F_factors(a):
        ek = tuple(1 if m == k else 0 for m in range(n))
        el = tuple(1 if m == l else 0 for m in range(n))
        poly = _mul_binomial(poly, el, t, lead_exps=ek)
    return LaurentPoly._raw(n, poly)


def _q_diff(x: int, y: int) -> UniPoly:
    """``q**x - q**y`` for nonnegative x, y."""
    if x == y:
        return ZERO
    coeffs = [0] * (max(x, y) + 1)
    coeffs[x] += 1
    coeffs[y] -= 1
    return UniPoly(coeffs)


def evaluate_F_at(a: Sequence[int], alpha: Sequence[int]) -> UniPoly:
    """Value of ``F`` at ``x_i = q**alpha_i``, as a product of its linear factors."""
    _require_positive(a)
    if len(alpha) != len(a):
        raise DimensionMismatch("alpha must have one entry per parameter")
    if any(x < 0 for x in alpha):
        raise ValueError("alpha entries must be nonnegative")
    factors = []
    for k, l, t in F_factors(a):
        f = _q_diff(alpha[k], alpha[l] + t)
        if f.is_zero():
            return ZERO
        factors.append(f)
    # each factor is +-q^lo (1 - q^d); multiply the (1 - q^d) parts densely
    result = [1]
    low_total = 0
    negative = False
    for f in factors:
        (lo, c_lo), (hi, _) = f.terms()
        low_total += lo
        negative ^= c_lo < 0
        result = _mul_one_minus_qpow(result, hi - lo)
    if negative:
        result = [-c for c in result]
    return UniPoly([0] * low_total + result)
