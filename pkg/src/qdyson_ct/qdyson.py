"""Constant term of the q-Dyson product by four independent engines.

Engines
-------
``naive``          expand f_q and read off the constant term.
``interpolation``  full grid sum over the q-power grids, F evaluated by factors.
``single-point``   the one surviving grid node, with closed forms for
                   F(q^sigma_1, ..., q^sigma_n) and the node weights.
``closed-form``    (q)_sigma / prod (q)_{a_i}.

Indexing is 0-based throughout: ``sigma_prefix[i]`` is the sum of the first
``i`` parameters, so ``sigma_prefix[0] == 0`` and ``sigma_prefix[n] == sigma``.
"""

from __future__ import annotations

import itertools
import math
import os
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterator, Sequence, Union

from .errors import (
    NonPolynomialResult,
    ScaleLimitExceeded,
    SignOrPowerMismatch,
    ZeroParameter,
)
from .laurent import build_fq, evaluate_F_at
from .nullstellensatz import RATFUNC_Q, Evaluator, coefficient_by_interpolation
from .qpoly import (
    ONE,
    RatFunc,
    UniPoly,
    _mul_one_minus_qpow,
    divide_qpoch,
    exact_div,
    qpoch,
)

DEFAULT_TERM_BUDGET = 10**7
DEFAULT_NODE_BUDGET = 10**6


def _c2(x: int) -> int:
    return x * (x - 1) // 2


@dataclass(frozen=True)
class ParameterVector:
    """The exponents ``a_1, ..., a_n`` together with derived bookkeeping."""

    a: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        if any(x < 0 for x in self.a):
            raise ValueError(f"parameters must be nonnegative, got {self.a}")

    @classmethod
    def of(cls, a: Union["ParameterVector", Sequence[int]]) -> "ParameterVector":
        return a if isinstance(a, ParameterVector) else cls(tuple(a))

    @classmethod
    def parse(cls, text: str) -> "ParameterVector":
        """Parse ``"1,2,3"``; the empty string gives the empty vector."""
        text = text.strip()
        if not text:
            return cls(())
        return cls(tuple(int(x) for x in text.split(",")))

    def __len__(self) -> int:
        return len(self.a)

    def __iter__(self):
        return iter(self.a)

    def __getitem__(self, i):
        return self.a[i]

    def __str__(self) -> str:
        return ",".join(map(str, self.a))

    @property
    def n(self) -> int:
        return len(self.a)

    @cached_property
    def sigma(self) -> int:
        return sum(self.a)

    @cached_property
    def sigma_prefix(self) -> tuple[int, ...]:
        return tuple(itertools.accumulate(self.a, initial=0))

    @cached_property
    def tau(self) -> tuple[int, ...]:
        s, sig = self.sigma_prefix, self.sigma
        return tuple(_c2(s[i]) + s[i] * (sig - s[i + 1]) for i in range(self.n))

    @cached_property
    def u(self) -> int:
        n = self.n
        return sum((n - 1 - i) * ai for i, ai in enumerate(self.a))

    @cached_property
    def v(self) -> int:
        n, s, sig = self.n, self.sigma_prefix, self.sigma
        return sum(
            (n - 1 - i) * ai * s[i] + (n - 1 - i) * _c2(ai) + s[i] * (sig - s[i + 1])
            for i, ai in enumerate(self.a)
        )

    def require_positive(self) -> None:
        if any(x == 0 for x in self.a):
            raise ZeroParameter(f"parameter vector {self.a} has a zero entry")


PV = Union[ParameterVector, Sequence[int]]


def reduce_zero_params(a: PV) -> ParameterVector:
    """Drop zero entries; the constant term does not change."""
    return ParameterVector(tuple(x for x in ParameterVector.of(a) if x != 0))


# -- products of q-Pochhammer symbols ------------------------------------


@dataclass(frozen=True)
class PochhammerProduct:
    """``(-1)^sign * q^q_exp * prod (q)_k^num[k] / prod (q)_k^den[k]``."""

    sign: int = 0
    q_exp: int = 0
    num: Counter = field(default_factory=Counter)
    den: Counter = field(default_factory=Counter)

    def __mul__(self, other: "PochhammerProduct") -> "PochhammerProduct":
        return PochhammerProduct(
            self.sign + other.sign, self.q_exp + other.q_exp, self.num + other.num, self.den + other.den
        )

    def __truediv__(self, other: "PochhammerProduct") -> "PochhammerProduct":
        return PochhammerProduct(
            self.sign - other.sign, self.q_exp - other.q_exp, self.num + other.den, self.den + other.num
        )

    def cancelled(self) -> "PochhammerProduct":
        """Remove common (q)_k factors and the trivial (q)_0."""
        num, den = Counter(self.num), Counter(self.den)
        common = num & den
        num.subtract(common)
        den.subtract(common)
        num = Counter({k: m for k, m in num.items() if m > 0 and k > 0})
        den = Counter({k: m for k, m in den.items() if m > 0 and k > 0})
        return PochhammerProduct(self.sign, self.q_exp, num, den)

    def pochhammer_part(self) -> UniPoly:
        """Expand the Pochhammer quotient, dividing exactly one factor at a time."""
        coeffs = [1]
        for k in sorted(self.num):
            for _ in range(self.num[k]):
                for j in range(1, k + 1):
                    coeffs = _mul_one_minus_qpow(coeffs, j)
        p = UniPoly(coeffs)
        for k in sorted(self.den):
            for _ in range(self.den[k]):
                p = divide_qpoch(p, k)
        return p

    def to_poly(self) -> UniPoly:
        if self.q_exp < 0:
            raise NonPolynomialResult(f"negative power q^{self.q_exp}")
        p = self.pochhammer_part().shift(self.q_exp)
        return -p if self.sign % 2 else p


def phi_prime_factored(a: PV, i: int) -> PochhammerProduct:
    """Closed form of the weight at ``q^{sigma_i}`` on the i-th standard axis.

    ``(-1)^{sigma_i} q^{tau_i} (q)_{sigma_i} (q)_{sigma - sigma_{i+1}}``.
    """
    pv = ParameterVector.of(a)
    s = pv.sigma_prefix
    return PochhammerProduct(s[i], pv.tau[i], Counter([s[i], pv.sigma - s[i + 1]]))


def phi_prime_closed(a: PV, i: int) -> UniPoly:
    """Weight ``phi_i'(q^{sigma_i})`` of the surviving node, as a polynomial (0-based ``i``)."""
    pv = ParameterVector.of(a)
    pv.require_positive()
    return phi_prime_factored(pv, i).to_poly()


def F_special_factored(a: PV) -> PochhammerProduct:
    """``(-1)^u q^v prod_i (q)_{sigma_i} (q)_{sigma - sigma_i} / (q)_{a_i}``."""
    pv = ParameterVector.of(a)
    s, sig = pv.sigma_prefix, pv.sigma
    num: Counter = Counter()
    den: Counter = Counter()
    for i in range(pv.n):
        num[s[i]] += 1
        num[sig - s[i]] += 1
        den[s[i + 1] - s[i]] += 1
    return PochhammerProduct(pv.u, pv.v, num, den)


def F_special_pairwise(a: PV) -> PochhammerProduct:
    """Same value before telescoping: one quotient pair for each ``i < j``."""
    pv = ParameterVector.of(a)
    s = pv.sigma_prefix
    num: Counter = Counter()
    den: Counter = Counter()
    for i in range(pv.n):
        for j in range(i + 1, pv.n):
            num[s[j] - s[i]] += 1
            den[s[j] - s[i + 1]] += 1
            num[s[j + 1] - s[i]] += 1
            den[s[j] - s[i]] += 1
    return PochhammerProduct(pv.u, pv.v, num, den)


def F_special_closed(a: PV) -> UniPoly:
    """``F(q^{sigma_1}, ..., q^{sigma_n})`` from its closed form."""
    pv = ParameterVector.of(a)
    pv.require_positive()
    return F_special_factored(pv).to_poly()


def check_cancellation(a: PV) -> None:
    """Raise `SignOrPowerMismatch` unless ``u == sum sigma_i`` and ``v == sum tau_i``."""
    pv = ParameterVector.of(a)
    sum_sigma = sum(pv.sigma_prefix[: pv.n])
    if pv.u != sum_sigma:
        raise SignOrPowerMismatch(f"u={pv.u} but sum sigma_i={sum_sigma} for a={pv.a}")
    if pv.v != sum(pv.tau):
        raise SignOrPowerMismatch(f"v={pv.v} but sum tau_i={sum(pv.tau)} for a={pv.a}")


# -- engines ---------------------------------------------------------------


def closed_form_ct(a: PV) -> UniPoly:
    """``(q)_sigma / prod (q)_{a_i}``."""
    pv = ParameterVector.of(a)
    den = ONE
    for ai in pv:
        den = den * qpoch(1, ai)
    return exact_div(qpoch(1, pv.sigma), den)


def naive_size_estimate(a: PV) -> int:
    """Upper bound on the stored coefficient entries of the expanded ``f_q``."""
    pv = ParameterVector.of(a)
    n, sig, av = pv.n, pv.sigma, pv.a
    if n <= 1:
        return 1
    pair_bound = math.prod(av[i] + av[j] + 1 for i, j in itertools.combinations(range(n), 2))
    box_bound = math.prod((n - 1) * av[i] + sig - av[i] + 1 for i in range(n - 1))
    max_q_deg = sum(_c2(av[i]) + _c2(av[j] + 1) for i, j in itertools.combinations(range(n), 2))
    return min(pair_bound, box_bound) * (max_q_deg + 1)


def ct_naive(a: PV, term_budget: int = DEFAULT_TERM_BUDGET) -> UniPoly:
    """Constant term by brute-force expansion of ``f_q``."""
    pv = ParameterVector.of(a)
    est = naive_size_estimate(pv)
    if est > term_budget:
        raise ScaleLimitExceeded(f"naive expansion for a={pv.a} may need {est} entries > {term_budget}")
    return build_fq(pv.a, term_budget=term_budget).constant_term()


def standard_grids(a: PV) -> list[list[int]]:
    """Axis i holds the exponents ``0, 1, ..., sigma - a_i`` of the nodes ``q^k``."""
    pv = ParameterVector.of(a)
    pv.require_positive()
    return [list(range(pv.sigma - ai + 1)) for ai in pv]


def lift_grid(exponent_grid: Sequence[Sequence[int]]) -> list[list[RatFunc]]:
    return [[RatFunc.q_power(k) for k in axis] for axis in exponent_grid]


def grid_node_count(a: PV) -> int:
    pv = ParameterVector.of(a)
    return math.prod(pv.sigma - ai + 1 for ai in pv)


def _check_nodes(pv: ParameterVector, node_budget: int) -> None:
    nodes = grid_node_count(pv)
    if nodes > node_budget:
        raise ScaleLimitExceeded(f"grid for a={pv.a} has {nodes} nodes > {node_budget}")


def q_power_evaluator(a: PV) -> Evaluator:
    """``F`` as a black box on points whose coordinates are powers of q."""
    pv = ParameterVector.of(a)

    def func(point):
        alpha = []
        for x in point:
            if not (x.is_polynomial() and len(x.num.terms()) == 1 and x.num.leading_coeff == 1):
                raise ValueError(f"{x} is not a power of q")
            alpha.append(x.num.degree)
        return evaluate_F_at(pv.a, alpha)

    return Evaluator(func, (pv.n - 1) * pv.sigma)


def ct_interpolation(a: PV, node_budget: int = DEFAULT_NODE_BUDGET) -> UniPoly:
    """Constant term as a weighted sum of F over the whole standard grid."""
    pv = ParameterVector.of(a)
    pv.require_positive()
    _check_nodes(pv, node_budget)
    if pv.n == 0:
        return ONE
    d = [pv.sigma - ai for ai in pv]
    value = coefficient_by_interpolation(q_power_evaluator(pv), d, lift_grid(standard_grids(pv)), RATFUNC_Q)
    return value.to_poly()


def ct_single_point(a: PV) -> UniPoly:
    """Constant term from the single nonvanishing grid node."""
    pv = ParameterVector.of(a)
    pv.require_positive()
    check_cancellation(pv)
    weights = PochhammerProduct()
    for i in range(pv.n):
        weights = weights * phi_prime_factored(pv, i)
    ratio = (F_special_factored(pv) / weights).cancelled()
    if ratio.sign != 0 or ratio.q_exp != 0:
        raise SignOrPowerMismatch(f"residual sign {ratio.sign} / q-power {ratio.q_exp} for a={pv.a}")
    return ratio.to_poly()


@dataclass
class VanishingReport:
    a: tuple[int, ...]
    expected: tuple[int, ...]
    node_count: int
    nonzero: list[tuple[int, ...]]

    @property
    def passed(self) -> bool:
        return self.nonzero == [self.expected]


def verify_vanishing(a: PV, node_budget: int = DEFAULT_NODE_BUDGET) -> VanishingReport:
    """Evaluate F on every standard grid node and list the nonzero ones."""
    pv = ParameterVector.of(a)
    pv.require_positive()
    _check_nodes(pv, node_budget)
    grid = standard_grids(pv)
    nonzero = [alpha for alpha in itertools.product(*grid) if not evaluate_F_at(pv.a, alpha).is_zero()]
    return VanishingReport(pv.a, pv.sigma_prefix[: pv.n], grid_node_count(pv), nonzero)


@dataclass
class IdentityReport:
    a: tuple[int, ...]
    checks: dict[str, tuple[int, int]]

    @property
    def passed(self) -> bool:
        return all(lhs == rhs for lhs, rhs in self.checks.values())

    def failures(self) -> list[str]:
        return [name for name, (lhs, rhs) in self.checks.items() if lhs != rhs]


def identity_checks(a: PV) -> IdentityReport:
    """The integer identities behind the sign and q-power cancellation."""
    pv = ParameterVector.of(a)
    n, s = pv.n, pv.sigma_prefix
    weights = [n - 1 - i for i in range(n)]
    checks = {
        "u_identity": (sum(w * ai for w, ai in zip(weights, pv.a)), sum(s[:n])),
        "claim2": (
            sum(w * (ai * s[i] + _c2(ai)) for i, (w, ai) in enumerate(zip(weights, pv.a))),
            sum(_c2(x) for x in s[:n]),
        ),
        "induction_step": (sum(ai * s[i] + _c2(ai) for i, ai in enumerate(pv.a)), _c2(s[n])),
        "v_identity": (pv.v, sum(pv.tau)),
    }
    return IdentityReport(pv.a, checks)


def dyson_q1(a: PV) -> int:
    """Multinomial coefficient ``sigma! / prod a_i!``."""
    total, result = 0, 1
    for ai in ParameterVector.of(a):
        total += ai
        result *= math.comb(total, ai)
    return result


# -- engine registry -------------------------------------------------------


@dataclass(frozen=True)
class Budgets:
    term_budget: int = DEFAULT_TERM_BUDGET
    node_budget: int = DEFAULT_NODE_BUDGET

    @classmethod
    def from_env(cls, term_budget: int | None = None, node_budget: int | None = None) -> "Budgets":
        """Explicit arguments win over ``QDYSON_TERM_BUDGET``/``QDYSON_NODE_BUDGET``."""
        if term_budget is None:
            term_budget = int(os.environ.get("QDYSON_TERM_BUDGET", DEFAULT_TERM_BUDGET))
        if node_budget is None:
            node_budget = int(os.environ.get("QDYSON_NODE_BUDGET", DEFAULT_NODE_BUDGET))
        if term_budget <= 0 or node_budget <= 0:
            raise ValueError("budgets must be positive")
        return cls(term_budget, node_budget)


ENGINE_NAMES = ("naive", "interpolation", "single-point", "closed-form")

_ENGINES: dict[str, Callable[[ParameterVector, Budgets], UniPoly]] = {
    "naive": lambda pv, b: ct_naive(pv, b.term_budget),
    "interpolation": lambda pv, b: ct_interpolation(reduce_zero_params(pv), b.node_budget),
    "single-point": lambda pv, b: ct_single_point(reduce_zero_params(pv)),
    "closed-form": lambda pv, b: closed_form_ct(pv),
}


def run_engine(name: str, a: PV, budgets: Budgets = Budgets()) -> UniPoly:
    """Run one engine; zero parameters are dropped for engines that need it."""
    try:
        engine = _ENGINES[name]
    except KeyError:
        raise ValueError(f"unknown engine {name!r}; choose from {', '.join(ENGINE_NAMES)}") from None
    return engine(ParameterVector.of(a), budgets)


def compositions(n: int, total: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of ``total`` into ``n`` nonnegative parts, lexicographic."""
    if n == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in compositions(n - 1, total - first):
            yield (first,) + rest


def sweep(n_max: int, sigma_max: int, n_min: int = 1) -> Iterator[tuple[int, ...]]:
    """All parameter vectors with ``n_min <= n <= n_max`` and ``sigma <= sigma_max``."""
    for n in range(n_min, n_max + 1):
        for total in range(sigma_max + 1):
            yield from compositions(n, total)


__all__ = [
    "ParameterVector",
    "PochhammerProduct",
    "Budgets",
    "ENGINE_NAMES",
    "reduce_zero_params",
    "closed_form_ct",
    "ct_naive",
    "ct_interpolation",
    "ct_single_point",
    "standard_grids",
    "lift_grid",
    "verify_vanishing",
    "phi_prime_closed",
    "phi_prime_factored",
    "F_special_closed",
    "F_special_factored",
    "F_special_pairwise",
    "check_cancellation",
    "identity_checks",
    "dyson_q1",
    "run_engine",
    "sweep",
    "compositions",
    "naive_size_estimate",
    "grid_node_count",
]
