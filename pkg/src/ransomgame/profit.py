"""Expected attacker profit over the distribution of estimation error.

The expected profit of a strategy reduces to

    P = (a*beta/(1+a)) * G(a, sigma) * M - i_beta - i_sigma

where M is the mean target data value and G is the gross multiplier: the
expected revenue per unit of mean value, relative to the perfect-information
cap a*beta*M/(1+a).  G is evaluated by two independent routes — a closed
form built from lognormal partial expectations, and adaptive quadrature of
the underlying integral — which must agree to 1e-6 or better.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from ._quadrature import adaptive_quadrature
from .errors import DomainError
from .game import AttackerStrategy, DerivedParameters, GameEnvironment, demand_factor
from .stochastics import _SQRT_2PI, log_std_normal_cdf, std_normal_cdf


class ProfitMethod(enum.Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"
    MONTE_CARLO = "monte_carlo"


@dataclass(frozen=True)
class ProfitEstimate:
    """An expected-profit value tagged with how it was computed."""

    value: float
    method: ProfitMethod
    abs_uncertainty: float


def _check_multiplier_args(a: float, sigma: float):
    if not (math.isfinite(a) and a > 0.0):
        raise DomainError(f"aggression a must be > 0 and finite, got {a!r}")
    if not (math.isfinite(sigma) and 0.0 < sigma <= 1.0):
        raise DomainError(f"sigma must lie in (0, 1], got {sigma!r}")


def gross_multiplier_closed_form(a: float, sigma: float) -> float:
    """G(a, sigma) via lognormal partial expectations.

    G = e^{sigma^2/2} Phi(-sigma) + e^{a^2 sigma^2/2} Phi(-a sigma).
    The second term is evaluated in log space once its exponent could
    overflow; the product itself never exceeds 1.
    """
    _check_multiplier_args(a, sigma)
    under = math.exp(sigma * sigma / 2.0) * std_normal_cdf(-sigma)
    over_log_scale = a * a * sigma * sigma / 2.0
    if over_log_scale < 700.0:
        over = math.exp(over_log_scale) * std_normal_cdf(-a * sigma)
    else:
        over = math.exp(over_log_scale + log_std_normal_cdf(-a * sigma))
    return under + over


def _quadrature_multiplier(a: float, sigma: float, rel_tol: float):
    """(G, error bound) by adaptive quadrature in t = ln y coordinates.

    After the substitution both pieces are a Gaussian kernel of width sigma
    times a bounded exponential; truncating at 12 sigma discards tail mass
    below 1e-14 of the result.
    """
    inv_norm = 1.0 / (sigma * _SQRT_2PI)
    two_s2 = 2.0 * sigma * sigma

    def under(t: np.ndarray) -> np.ndarray:
        return np.exp(t - t * t / two_s2) * inv_norm

    def over(t: np.ndarray) -> np.ndarray:
        return np.exp(-a * t - t * t / two_s2) * inv_norm

    span = 12.0 * sigma
    r1 = adaptive_quadrature(under, -span, 0.0, rel_tol=rel_tol)
    r2 = adaptive_quadrature(over, 0.0, span, rel_tol=rel_tol)
    return r1.value + r2.value, r1.error_bound + r2.error_bound


def gross_multiplier_quadrature(a: float, sigma: float, rel_tol: float = 1e-9) -> float:
    """G(a, sigma) by adaptive quadrature of the reduced single integral."""
    _check_multiplier_args(a, sigma)
    return _quadrature_multiplier(a, sigma, rel_tol)[0]


def _closed_form_profit(a: float, beta: float, sigma: float, m: float) -> float:
    """Profit for raw parameters; the one expression shared by every caller.

    The grouping ((k * G) * M) keeps the result exactly linear in M.
    """
    return demand_factor(a, beta) * gross_multiplier_closed_form(a, sigma) * m


def expected_profit(strat: AttackerStrategy, env: GameEnvironment,
                    method: ProfitMethod = ProfitMethod.CLOSED_FORM,
                    rel_tol: float = 1e-9) -> ProfitEstimate:
    """Expected profit of a strategy: (a*beta/(1+a)) * G(a, sigma) * M - costs.

    ``method`` selects how the gross multiplier is evaluated.  Monte Carlo
    estimates come from the simulation module, not from here.
    """
    derived = DerivedParameters.of(strat, env)
    m = env.mean_target_value
    cost = strat.i_beta + strat.i_sigma
    if method is ProfitMethod.CLOSED_FORM:
        gross = _closed_form_profit(strat.a, derived.beta, derived.sigma, m)
        # A few ulps of the gross term; the closed form is exact up to libm.
        return ProfitEstimate(value=gross - cost, method=method,
                              abs_uncertainty=5e-15 * abs(gross))
    if method is ProfitMethod.QUADRATURE:
        g, err = _quadrature_multiplier(strat.a, derived.sigma, rel_tol)
        scale = demand_factor(strat.a, derived.beta) * m
        return ProfitEstimate(value=scale * g - cost, method=method,
                              abs_uncertainty=scale * err)
    raise DomainError(
        f"method must be CLOSED_FORM or QUADRATURE here, got {method!r}; "
        "Monte Carlo estimates are produced by simulate.run_batch")
