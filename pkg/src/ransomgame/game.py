"""Closed-form mathematics of the targeted-ransomware negotiation game.

All quantities are dimensionless fractions of a notional data value, so the
model applies at any monetary scale.  The attacker chooses an aggression
level and two investments; the defender replies to a ransom demand with the
counteroffer that maximizes their expected utility.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

from .errors import DomainError


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class AttackerStrategy:
    """The attacker's play: aggression and the two per-target investments.

    ``a`` controls how sharply the probability of walking away rises as the
    counteroffer falls below the demand.  ``i_beta`` buys decryptor
    reliability, ``i_sigma`` buys accuracy of the target-value estimate.
    ``i_beta = 0`` is allowed but degenerate: the decryptor never works, so
    the rational defender offers nothing.
    """

    a: float
    i_beta: float
    i_sigma: float

    def __post_init__(self):
        a = _require_finite("a", self.a)
        if a <= 0.0:
            raise DomainError(f"aggression a must be > 0, got {a}")
        for name in ("i_beta", "i_sigma"):
            v = _require_finite(name, getattr(self, name))
            if v < 0.0:
                raise DomainError(f"{name} must be >= 0, got {v}")

    @property
    def cost(self) -> float:
        return self.i_beta + self.i_sigma


@dataclass(frozen=True)
class FixedValue:
    """Every target's data is worth exactly ``value``."""

    value: float

    def __post_init__(self):
        v = _require_finite("value", self.value)
        if v <= 0.0:
            raise DomainError(f"target value must be > 0, got {v}")


@dataclass(frozen=True)
class PopulationMean:
    """Target data values vary; only their mean ``mean`` matters here."""

    mean: float

    def __post_init__(self):
        v = _require_finite("mean", self.mean)
        if v <= 0.0:
            raise DomainError(f"population mean must be > 0, got {v}")


TargetValueModel = Union[FixedValue, PopulationMean]


@dataclass(frozen=True)
class GameEnvironment:
    """Economic context: the investment scaling factor and the target values.

    ``i_fifty`` is the investment that buys 50% decryptor reliability (and,
    symmetrically, halves the estimate scale).
    """

    i_fifty: float
    target_value: TargetValueModel

    def __post_init__(self):
        v = _require_finite("i_fifty", self.i_fifty)
        if v <= 0.0:
            raise DomainError(f"i_fifty must be > 0, got {v}")
        if not isinstance(self.target_value, (FixedValue, PopulationMean)):
            raise DomainError(
                f"target_value must be FixedValue or PopulationMean, got {self.target_value!r}")

    @property
    def mean_target_value(self) -> float:
        if isinstance(self.target_value, FixedValue):
            return self.target_value.value
        return self.target_value.mean


@dataclass(frozen=True)
class DerivedParameters:
    """Reliability and estimate scale implied by a strategy in an environment."""

    beta: float
    sigma: float

    @classmethod
    def of(cls, strategy: AttackerStrategy, env: GameEnvironment) -> "DerivedParameters":
        return cls(beta=reliability(strategy.i_beta, env.i_fifty),
                   sigma=estimate_scale(strategy.i_sigma, env.i_fifty))


class OutcomeKind(enum.Enum):
    AGGRESSIVE_REJECTION = "aggressive_rejection"
    DECRYPTION_SUCCESS = "decryption_success"
    DECRYPTION_FAILURE = "decryption_failure"
    FULL_PAYMENT_SUCCESS = "full_payment_success"
    FULL_PAYMENT_FAILURE = "full_payment_failure"


@dataclass(frozen=True)
class NegotiationOutcome:
    """One resolved game: demand, counteroffer, how it ended, both payoffs."""

    demand: float
    counteroffer: float
    kind: OutcomeKind
    attacker_payoff: float
    defender_payoff: float

    def __post_init__(self):
        if not 0.0 <= self.counteroffer <= self.demand:
            raise DomainError(
                f"counteroffer must satisfy 0 <= C <= R, got C={self.counteroffer} R={self.demand}")


def reliability(i_beta: float, i_fifty: float) -> float:
    """Probability that the decryption key works: i_beta / (i_beta + i_fifty).

    Increasing in i_beta with diminishing returns; equals 0.5 at
    i_beta = i_fifty and approaches 1 as i_beta grows.
    """
    i_beta = _require_finite("i_beta", i_beta)
    i_fifty = _require_finite("i_fifty", i_fifty)
    if i_beta < 0.0:
        raise DomainError(f"i_beta must be >= 0, got {i_beta}")
    if i_fifty <= 0.0:
        raise DomainError(f"i_fifty must be > 0, got {i_fifty}")
    return i_beta / (i_beta + i_fifty)


def estimate_scale(i_sigma: float, i_fifty: float) -> float:
    """Scale of the lognormal value estimate: 1 - i_sigma / (i_fifty + i_sigma).

    Computed as the equivalent i_fifty / (i_fifty + i_sigma), which stays
    strictly positive in floating point for any finite i_sigma.
    """
    i_sigma = _require_finite("i_sigma", i_sigma)
    i_fifty = _require_finite("i_fifty", i_fifty)
    if i_sigma < 0.0:
        raise DomainError(f"i_sigma must be >= 0, got {i_sigma}")
    if i_fifty <= 0.0:
        raise DomainError(f"i_fifty must be > 0, got {i_fifty}")
    return i_fifty / (i_fifty + i_sigma)


def aggression_probability(c: float, r: float, a: float) -> float:
    """Probability 1 - (C/R)^a that a counteroffer provokes walking away.

    Zero at C = R, one at C = 0 (0^a is taken as 0 for a > 0).
    """
    c = _require_finite("c", c)
    r = _require_finite("r", r)
    a = _require_finite("a", a)
    if r <= 0.0:
        raise DomainError(f"demand r must be > 0, got {r}")
    if not 0.0 <= c <= r:
        raise DomainError(f"counteroffer must satisfy 0 <= c <= r, got c={c} r={r}")
    if a <= 0.0:
        raise DomainError(f"aggression a must be > 0, got {a}")
    return 1.0 - math.pow(c / r, a)


def demand_factor(a: float, beta: float) -> float:
    """Fraction a*beta/(1+a) of a value that the demand and counteroffer scale by."""
    return a * beta / (1.0 + a)


def optimal_counteroffer(r: float, x: float, a: float, beta: float) -> float:
    """The defender's utility-maximizing reply: min(r, a*beta*x/(1+a)).

    Never exceeds beta*x, the expected value of the encrypted data.
    """
    r = _require_finite("r", r)
    x = _require_finite("x", x)
    a = _require_finite("a", a)
    beta = _require_finite("beta", beta)
    if r < 0.0:
        raise DomainError(f"demand r must be >= 0, got {r}")
    if x <= 0.0:
        raise DomainError(f"data value x must be > 0, got {x}")
    if a <= 0.0:
        raise DomainError(f"aggression a must be > 0, got {a}")
    if not 0.0 <= beta <= 1.0:
        raise DomainError(f"beta must lie in [0, 1], got {beta}")
    threshold = demand_factor(a, beta) * x
    return r if r <= threshold else threshold


def defender_utility(c: float, r: float, x: float, a: float, beta: float) -> float:
    """Expected utility -(C/R)^a (C - beta*x) - x of replying C to demand R.

    The single expression covers the full-payment case: at C = R it equals
    -R - (1-beta)*x.
    """
    c = _require_finite("c", c)
    r = _require_finite("r", r)
    x = _require_finite("x", x)
    a = _require_finite("a", a)
    beta = _require_finite("beta", beta)
    if r <= 0.0:
        raise DomainError(f"demand r must be > 0, got {r}")
    if not 0.0 <= c <= r:
        raise DomainError(f"counteroffer must satisfy 0 <= c <= r, got c={c} r={r}")
    if x <= 0.0:
        raise DomainError(f"data value x must be > 0, got {x}")
    if a <= 0.0:
        raise DomainError(f"aggression a must be > 0, got {a}")
    if not 0.0 <= beta <= 1.0:
        raise DomainError(f"beta must lie in [0, 1], got {beta}")
    return -math.pow(c / r, a) * (c - beta * x) - x


def gross_profit(x_est: float, x: float, a: float, beta: float) -> float:
    """Attacker revenue under optimal play, before subtracting investments.

    Linear in the estimate while it undershoots the true value; decays as
    (x/x_est)^a once it overshoots and negotiation risk kicks in.
    """
    x_est = _require_finite("x_est", x_est)
    x = _require_finite("x", x)
    a = _require_finite("a", a)
    beta = _require_finite("beta", beta)
    if x_est <= 0.0 or x <= 0.0:
        raise DomainError(f"values must be > 0, got x_est={x_est} x={x}")
    if a <= 0.0:
        raise DomainError(f"aggression a must be > 0, got {a}")
    if not 0.0 <= beta <= 1.0:
        raise DomainError(f"beta must lie in [0, 1], got {beta}")
    k = demand_factor(a, beta)
    if x_est <= x:
        return k * x_est
    return k * (x * math.pow(x / x_est, a))


def optimal_play_profit(x_est: float, x: float, strat: AttackerStrategy,
                        env: GameEnvironment) -> float:
    """Expected profit when demanding a*beta*x_est/(1+a): gross minus investments.

    Maximized over x_est at x_est = x.
    """
    beta = reliability(strat.i_beta, env.i_fifty)
    return gross_profit(x_est, x, strat.a, beta) - strat.i_beta - strat.i_sigma


def attacker_profit_piecewise(r: float, x: float, strat: AttackerStrategy,
                              env: GameEnvironment) -> float:
    """Expected profit of demanding r against a rational defender of value x.

    Rises linearly up to the defender's payment cap a*beta*x/(1+a), then
    falls as ((cap/r)^a) * cap; continuous at the cap.
    """
    r = _require_finite("r", r)
    x = _require_finite("x", x)
    if r < 0.0:
        raise DomainError(f"demand r must be >= 0, got {r}")
    if x <= 0.0:
        raise DomainError(f"data value x must be > 0, got {x}")
    beta = reliability(strat.i_beta, env.i_fifty)
    threshold = demand_factor(strat.a, beta) * x
    if r <= threshold:
        return r - strat.i_beta - strat.i_sigma
    return math.pow(threshold / r, strat.a) * threshold - strat.i_beta - strat.i_sigma
