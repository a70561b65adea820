"""Closed-form bounds on P(S <= 1) for sums of independent [0,1]-valued variables.

Every bound is a function of the mean ``lam = E S`` and, for the finite-n
forms, the number of summands ``n``.  Bounds are probabilities, so raw
values above 1 are clamped to 1; the pre-clamp value is kept on the result
because ratio comparisons between bounds need it.

The two-branch finite-n bound is the envelope

    H_n(lam) = 1                                    for lam <= 1
             = max{binomial branch, shifted branch} for 1 < lam < n
             = 0                                    for lam = n

whose branches are attained exactly by a binomial and a shifted-binomial
sum (see :mod:`lefttail.extremal`).  Its n-free limit is
``max{1 + lam, e} * exp(-lam)``, and solving a scalar fixed point turns
that into the purely exponential form ``exp(1 - r*lam)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "BoundQuery",
    "BoundResult",
    "DecayConstants",
    "FixedPointError",
    "binomial_branch",
    "shifted_branch",
    "finite_n_bound",
    "limit_bound",
    "hoeffding_bound",
    "hoeffding_exponential",
    "bentkus_bound",
    "solve_decay_rate",
    "exponential_bound",
]

#: Method tags carried by BoundResult and accepted by the CLI.
METHODS = (
    "theorem1",
    "theorem1-limit",
    "hoeffding",
    "bentkus",
    "bentkus-simple",
    "corollary1",
)

#: Branch tags: which term of a two-term max was active, or the piecewise
#: regime for the finite-n envelope.
BRANCHES = (
    "first-max-term",
    "second-max-term",
    "piecewise-one",
    "piecewise-zero",
    "not-applicable",
)


class FixedPointError(RuntimeError):
    """Fixed-point iteration did not converge within the step cap."""


def _check_query(lam: float, n: int) -> None:
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if lam < 0:
        raise ValueError(f"mean must be non-negative, got {lam}")
    if lam > n:
        raise ValueError(f"mean {lam} exceeds n={n}; a sum of n variables in [0,1] cannot have a larger mean")


@dataclass(frozen=True)
class BoundQuery:
    """A (mean, summand count) pair; the input every bound consumes.

    Invariants: ``0 <= lam <= n`` and ``n >= 1``.
    """

    lam: float
    n: int

    def __post_init__(self) -> None:
        _check_query(self.lam, self.n)


@dataclass(frozen=True)
class BoundResult:
    """A bound value in [0, 1] plus bookkeeping.

    ``raw`` is the pre-clamp value; ``clamped`` is True when raw > 1.
    ``branch`` records which term of a two-term max won (ties report
    first-max-term) or the piecewise regime; methods without a max use
    "not-applicable".
    """

    value: float
    method: str
    branch: str
    clamped: bool
    raw: float


@dataclass(frozen=True)
class DecayConstants:
    """Fixed point a0 of a = exp(a - 2) and the decay rate r = 1 - a0."""

    a0: float
    r: float
    iterations: int
    residual: float


def _pow_one_minus(x: float, k: int) -> float:
    """(1 - x)^k evaluated as exp(k * log1p(-x)).

    x == 1 short-circuits to 0 and k == 0 to 1, avoiding log(0) and 0**0.
    Log-space keeps the value finite and accurate for k in the millions.
    """
    if k == 0:
        return 1.0
    if x == 0.0:
        return 1.0
    if x == 1.0:
        return 0.0
    return math.exp(k * math.log1p(-x))


def binomial_branch(lam: float, n: int) -> float:
    """First branch of the finite-n bound: (1 + lam - lam/n)(1 - lam/n)^(n-1).

    Equals P(X <= 1) for X ~ binomial(lam/n, n), i.e. the expansion
    (1 - lam/n)^n + lam (1 - lam/n)^(n-1).

    Requires 0 <= lam <= n.
    """
    _check_query(lam, n)
    x = lam / n
    return (1.0 + lam - x) * _pow_one_minus(x, n - 1)


def shifted_branch(lam: float, n: int) -> float:
    """Second branch of the finite-n bound: (1 - (lam-1)/(n-1))^(n-1).

    Equals P(V <= 1) for V ~ 1 + binomial((lam-1)/(n-1), n-1).

    Requires 1 <= lam <= n and n >= 2 (the n = 1 case has a degenerate
    denominator and is handled by the envelope directly).
    """
    if n < 2:
        raise ValueError(f"shifted branch needs n >= 2, got n={n}")
    if not 1.0 <= lam <= n:
        raise ValueError(f"shifted branch needs 1 <= mean <= n, got {lam}")
    return _shifted_term(lam, n)


def _shifted_term(lam: float, n: int) -> float:
    # Same expression without the mean >= 1 floor; the inequality grid
    # checks evaluate it on [0, n) where it exceeds 1 and is not a bound.
    return _pow_one_minus((lam - 1.0) / (n - 1.0), n - 1)


def finite_n_bound(lam: float, n: int) -> BoundResult:
    """Two-branch bound on P(S <= 1) for a sum of n variables with mean lam.

    Piecewise: 1 for lam <= 1, max of the two branches for 1 < lam < n,
    0 for lam = n.  Ties in the max report first-max-term.
    """
    _check_query(lam, n)
    if lam <= 1.0:
        return BoundResult(1.0, "theorem1", "piecewise-one", False, 1.0)
    if lam == n:
        return BoundResult(0.0, "theorem1", "piecewise-zero", False, 0.0)
    first = binomial_branch(lam, n)
    second = shifted_branch(lam, n)
    if first >= second:
        return BoundResult(first, "theorem1", "first-max-term", False, first)
    return BoundResult(second, "theorem1", "second-max-term", False, second)


def limit_bound(lam: float) -> BoundResult:
    """n-free envelope max{1 + lam, e} * exp(-lam), clamped to 1.

    The first max term is the Poisson tail (1 + lam) e^-lam, the second is
    e^(1 - lam); they cross at lam = e - 1 (tie reports first-max-term).
    """
    if lam < 0:
        raise ValueError(f"mean must be non-negative, got {lam}")
    one_plus = 1.0 + lam
    if one_plus >= math.e:
        raw = one_plus * math.exp(-lam)
        branch = "first-max-term"
    else:
        raw = math.exp(1.0 - lam)
        branch = "second-max-term"
    return BoundResult(min(1.0, raw), "theorem1-limit", branch, raw > 1.0, raw)


def hoeffding_bound(lam: float, n: int) -> BoundResult:
    """Classical comparator lam * (1 + (1-lam)/n)^(n-1), clamped to 1.

    Only stated for lam >= 1; smaller means raise rather than extrapolate.
    """
    _check_query(lam, n)
    if lam < 1.0:
        raise ValueError(f"the Hoeffding comparator requires mean >= 1, got {lam}")
    raw = lam * _pow_one_minus((lam - 1.0) / n, n - 1)
    return BoundResult(min(1.0, raw), "hoeffding", "not-applicable", raw > 1.0, raw)


def hoeffding_exponential(lam: float) -> float:
    """Exponential-rate form exp(1 - (1 - 1/e) * lam), clamped to 1.

    This is the strongest purely exponential bound derivable from the
    Hoeffding comparator; its rate 1 - 1/e = 0.6321... is beaten by the
    solved rate r = 0.8414... of :func:`exponential_bound`.
    """
    if lam < 0:
        raise ValueError(f"mean must be non-negative, got {lam}")
    return min(1.0, math.exp(1.0 - (1.0 - math.exp(-1.0)) * lam))


def bentkus_bound(lam: float, n: int, simplified: bool = False) -> BoundResult:
    """Bentkus-style comparator specialised to the P(S <= 1) event.

    Exact mode: e * (p^n + n(1-p) p^(n-1)) with p = 1 - lam/n, which equals
    e times the binomial branch.  Simplified mode: (e/p)(1 + lam) e^-lam,
    which needs p > 0 and so rejects lam = n.  Both clamp to 1.
    """
    _check_query(lam, n)
    p = 1.0 - lam / n
    if simplified:
        if p == 0.0:
            raise ValueError("simplified form needs mean < n (p = 0 at mean = n)")
        raw = (math.e / p) * (1.0 + lam) * math.exp(-lam)
        method = "bentkus-simple"
    else:
        raw = math.e * (p + lam) * _pow_one_minus(lam / n, n - 1)
        method = "bentkus"
    return BoundResult(min(1.0, raw), method, "not-applicable", raw > 1.0, raw)


def solve_decay_rate(tol: float = 1e-12) -> DecayConstants:
    """Solve a = exp(a - 2) by fixed-point iteration from a = 0.5.

    Stops when successive iterates differ by at most ``tol``; the map is a
    contraction on (0, 1) (derivative e^(a-2) < 1) so convergence is
    guaranteed.  The cap of 10,000 steps only guards against a mis-set
    tolerance.  Returns a0 = 0.158594... and r = 1 - a0 = 0.841405....
    """
    if not 0.0 < tol < 1e-3:
        raise ValueError(f"tolerance must be in (0, 1e-3), got {tol}")
    a = 0.5
    iterations = 0
    for iterations in range(1, 10_001):
        nxt = math.exp(a - 2.0)
        done = abs(nxt - a) <= tol
        a = nxt
        if done:
            break
    else:
        raise FixedPointError(f"no convergence within 10000 iterations at tol={tol}")
    residual = abs(a - math.exp(a - 2.0))
    return DecayConstants(a0=a, r=1.0 - a, iterations=iterations, residual=residual)


def exponential_bound(lam: float, constants: DecayConstants | None = None) -> BoundResult:
    """Purely exponential bound exp(1 - r * lam), clamped to 1.

    ``constants`` defaults to a fresh solve at tolerance 1e-12.
    """
    if lam < 0:
        raise ValueError(f"mean must be non-negative, got {lam}")
    if constants is None:
        constants = solve_decay_rate(1e-12)
    raw = math.exp(1.0 - constants.r * lam)
    return BoundResult(min(1.0, raw), "corollary1", "not-applicable", raw > 1.0, raw)
