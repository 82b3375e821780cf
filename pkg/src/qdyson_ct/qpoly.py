"""Exact arithmetic in Z[q] and Q(q).

`UniPoly` is a dense, immutable univariate polynomial with Python integer
coefficients (index k holds the coefficient of q^k).  `RatFunc` is a reduced
quotient of two `UniPoly` values and models the field Q(q).
"""

from __future__ import annotations

from functools import reduce
from math import gcd
from typing import Iterable, Sequence, Union

from .errors import DivisionByZero, NonExactDivision, NonPolynomialResult

__all__ = [
    "UniPoly",
    "RatFunc",
    "ZERO",
    "ONE",
    "Q",
    "exact_div",
    "qpoch",
    "gaussian_binomial",
    "eval_at_q1",
    "poly_gcd",
    "content",
    "primitive_part",
    "pseudo_rem",
]

# Degree reported for the zero polynomial.
ZERO_DEGREE = -1


def _trim(coeffs: list[int]) -> list[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


class UniPoly:
    """Dense polynomial in q with integer coefficients, ascending order."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        self._c = tuple(_trim(c))
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: list[int]) -> "UniPoly":
        # trusted constructor: coefficients are already ints
        obj = cls.__new__(cls)
        obj._c = tuple(_trim(coeffs))
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: int) -> "UniPoly":
        return cls._raw([int(c)])

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "UniPoly":
        """Return ``c * q**k``."""
        if k < 0:
            raise ValueError(f"negative exponent {k} in Z[q]")
        return cls._raw([0] * k + [int(c)])

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1 if self._c else ZERO_DEGREE

    def is_zero(self) -> bool:
        return not self._c

    @property
    def leading_coeff(self) -> int:
        return self._c[-1] if self._c else 0

    def terms(self) -> list[tuple[int, int]]:
        """Nonzero ``(exponent, coefficient)`` pairs in ascending order."""
        return [(k, c) for k, c in enumerate(self._c) if c]

    def __len__(self) -> int:
        return len(self._c)

    def __getitem__(self, k: int) -> int:
        if 0 <= k < len(self._c):
            return self._c[k]
        return 0

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> "UniPoly":
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return UniPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly._raw([-c for c in self._c])

    def __sub__(self, other) -> "UniPoly":
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "UniPoly":
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other) -> "UniPoly":
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return UniPoly._raw([c * other for c in self._c])
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return UniPoly._raw(_mul_coeffs(self._c, other._c))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "UniPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, k: int) -> "UniPoly":
        """Multiply by ``q**k`` (k >= 0)."""
        if k < 0:
            raise ValueError("shift must be nonnegative")
        if not self._c or k == 0:
            return self
        return UniPoly._raw([0] * k + list(self._c))

    def __call__(self, x):
        """Horner evaluation at ``x`` (any ring element supporting * and +)."""
        acc = 0
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == ((other,) if other else ())
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("UniPoly", self._c))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._c)

    def __repr__(self) -> str:
        return f"UniPoly({list(self._c)!r})"

    def __str__(self) -> str:
        return self.to_text()

    # -- rendering ---------------------------------------------------------

    def to_text(self, var: str = "q") -> str:
        """Render in ascending powers, e.g. ``1 - q - q^2 + q^3``."""
        parts: list[str] = []
        for k, c in self.terms():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if mag == 1 else f"{mag}{mono}"
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts) if parts else "0"

    def to_json(self) -> list[str]:
        return [str(c) for c in self._c]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "UniPoly":
        return cls(int(x) for x in data)


def _as_poly(x) -> UniPoly:
    if isinstance(x, UniPoly):
        return x
    if isinstance(x, int):
        return UniPoly.constant(x)
    return NotImplemented


def _mul_coeffs(a: Sequence[int], b: Sequence[int]) -> list[int]:
    # schoolbook product, looping over the nonzero terms of the sparser factor
    if not a or not b:
        return []
    ta = [(k, c) for k, c in enumerate(a) if c]
    tb = [(k, c) for k, c in enumerate(b) if c]
    if len(ta) > len(tb):
        ta, tb = tb, ta
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in ta:
        for j, cb in tb:
            out[i + j] += ca * cb
    return out


def _mul_one_minus_qpow(coeffs: list[int], e: int) -> list[int]:
    """Return the coefficients of ``p * (1 - q**e)`` for e >= 1."""
    out = list(coeffs) + [0] * e
    for k, c in enumerate(coeffs):
        if c:
            out[k + e] -= c
    return out


def _div_one_minus_qpow(coeffs: Sequence[int], e: int) -> list[int]:
    """Exact quotient of ``p / (1 - q**e)``; raises when not exact."""
    n = len(coeffs)
    if n == 0:
        return []
    if n <= e:
        raise NonExactDivision(f"degree {n - 1} too small to divide by 1 - q^{e}")
    quot = list(coeffs[: n - e])
    # quot[k] = p[k] + quot[k - e]
    for k in range(e, n - e):
        quot[k] += quot[k - e]
    # the top e coefficients of p must equal -quot[k - e] (zero below index 0)
    for k in range(n - e, n):
        if coeffs[k] + (quot[k - e] if k >= e else 0) != 0:
            raise NonExactDivision(f"nonzero remainder dividing by 1 - q^{e}")
    return quot


ZERO = UniPoly()
ONE = UniPoly.constant(1)
Q = UniPoly.monomial(1)


def exact_div(p: UniPoly, d: UniPoly) -> UniPoly:
    """Quotient ``p / d`` in Z[q]; raise `NonExactDivision` unless exact."""
    if d.is_zero():
        raise DivisionByZero("polynomial division by zero")
    if p.is_zero():
        return ZERO
    dd = d.degree
    if p.degree < dd:
        raise NonExactDivision(f"{p} is not divisible by {d}")
    lead = d.leading_coeff
    dterms = [(j, c) for j, c in d.terms() if j < dd]
    rem = list(p.coeffs)
    quot = [0] * (p.degree - dd + 1)
    for k in range(len(quot) - 1, -1, -1):
        c = rem[k + dd]
        if c == 0:
            continue
        qk, r = divmod(c, lead)
        if r:
            raise NonExactDivision(f"non-integer coefficient dividing {p} by {d}")
        quot[k] = qk
        rem[k + dd] = 0
        for j, dj in dterms:
            rem[k + j] -= qk * dj
    if any(rem[:dd]):
        raise NonExactDivision(f"nonzero remainder dividing {p} by {d}")
    return UniPoly._raw(quot)


def qpoch(m: int, k: int) -> UniPoly:
    """``(q^m; q)_k = prod_{j<k} (1 - q^(m+j))``; ``qpoch(1, k)`` is ``(q)_k``."""
    if m < 0 or k < 0:
        raise ValueError("qpoch needs m >= 0 and k >= 0")
    if m == 0 and k > 0:
        # first factor is 1 - q^0 = 0
        return ZERO
    coeffs = [1]
    for j in range(k):
        coeffs = _mul_one_minus_qpow(coeffs, m + j)
    return UniPoly._raw(coeffs)


def divide_qpoch(p: UniPoly, k: int) -> UniPoly:
    """Exact quotient ``p / (q)_k`` by peeling one ``1 - q^j`` at a time."""
    coeffs = list(p.coeffs)
    for j in range(1, k + 1):
        coeffs = _div_one_minus_qpow(coeffs, j)
    return UniPoly._raw(coeffs)


def gaussian_binomial(a: int, b: int) -> UniPoly:
    """The q-binomial ``(q)_{a+b} / ((q)_a (q)_b)``."""
    return exact_div(qpoch(1, a + b), qpoch(1, a) * qpoch(1, b))


def eval_at_q1(p: UniPoly) -> int:
    return sum(p.coeffs)


# -- gcd machinery -------------------------------------------------------


def content(p: UniPoly) -> int:
    """Nonnegative gcd of the coefficients (0 for the zero polynomial)."""
    return reduce(gcd, p.coeffs, 0)


def primitive_part(p: UniPoly) -> UniPoly:
    """``p / content(p)`` normalised to a positive leading coefficient."""
    if p.is_zero():
        return ZERO
    c = content(p)
    if p.leading_coeff < 0:
        c = -c
    return UniPoly._raw([x // c for x in p.coeffs])


def pseudo_rem(a: UniPoly, b: UniPoly) -> UniPoly:
    """Pseudo-remainder of ``lc(b)**(deg a - deg b + 1) * a`` modulo ``b``."""
    if b.is_zero():
        raise DivisionByZero("pseudo-remainder by zero")
    db = b.degree
    if a.degree < db:
        return a
    lead = b.leading_coeff
    bterms = b.terms()
    r = list(a.coeffs)
    e = a.degree - db + 1
    while len(r) - 1 >= db:
        top = r[-1]
        shift = len(r) - 1 - db
        r = [x * lead for x in r]
        for j, c in bterms:
            r[shift + j] -= top * c
        _trim(r)
        e -= 1
    if e:
        f = lead**e
        r = [x * f for x in r]
    return UniPoly._raw(r)


def _primitive_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    # primitive polynomial remainder sequence
    a, b = primitive_part(a), primitive_part(b)
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = pseudo_rem(a, b)
        a, b = b, primitive_part(r)
    return a


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Greatest common divisor in Z[q] with positive leading coefficient."""
    if a.is_zero():
        return primitive_part(b) * content(b) if not b.is_zero() else ZERO
    if b.is_zero():
        return primitive_part(a) * content(a)
    return _primitive_gcd(a, b) * gcd(content(a), content(b))


# -- Q(q) ----------------------------------------------------------------


class RatFunc:
    """An element of Q(q) stored as a canonical reduced fraction.

    ``num`` and ``den`` have integer coefficients, no common polynomial factor
    of positive degree, coprime contents, and ``den`` has a positive leading
    coefficient.  Two values are equal exactly when their fields are equal.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Union[UniPoly, int] = 0, den: Union[UniPoly, int] = 1):
        num = _as_poly(num)
        den = _as_poly(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RatFunc needs UniPoly or int parts")
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            self.num, self.den = ZERO, ONE
            return
        if den.degree > 0:
            g = _primitive_gcd(num, den)
            if g.degree > 0:
                num = exact_div(num, g)
                den = exact_div(den, g)
        c = gcd(content(num), content(den))
        if den.leading_coeff < 0:
            c = -c
        if c != 1:
            num = UniPoly._raw([x // c for x in num.coeffs])
            den = UniPoly._raw([x // c for x in den.coeffs])
        self.num, self.den = num, den

    @classmethod
    def from_poly(cls, p: UniPoly) -> "RatFunc":
        obj = cls.__new__(cls)
        obj.num, obj.den = p, ONE
        return obj

    @classmethod
    def q_power(cls, k: int) -> "RatFunc":
        """``q**k`` for any integer ``k``."""
        if k >= 0:
            return cls.from_poly(UniPoly.monomial(k))
        return cls(ONE, UniPoly.monomial(-k))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def to_poly(self) -> UniPoly:
        if not self.is_polynomial():
            raise NonPolynomialResult(f"{self} is not in Z[q]")
        return self.num

    def __add__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        obj = RatFunc.__new__(RatFunc)
        obj.num, obj.den = -self.num, self.den
        return obj

    def __sub__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return RatFunc()
        if self.is_polynomial() and other.is_polynomial():
            return RatFunc.from_poly(self.num * other.num)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise DivisionByZero("inverse of zero in Q(q)")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise DivisionByZero("division by zero in Q(q)")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __pow__(self, e: int) -> "RatFunc":
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc(self.num**e, self.den**e)

    def __rtruediv__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return other
        return other / self

    def __eq__(self, other) -> bool:
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash(("RatFunc", self.num, self.den))

    def __repr__(self) -> str:
        return f"RatFunc({self.num!r}, {self.den!r})"

    def __str__(self) -> str:
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num}) / ({self.den})"


def _as_ratfunc(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, UniPoly):
        return RatFunc.from_poly(x)
    if isinstance(x, int):
        return RatFunc.from_poly(UniPoly.constant(x))
    return NotImplemented
