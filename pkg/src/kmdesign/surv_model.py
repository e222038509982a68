"""Parametric event-time laws, the trial censoring scheme, and sampling.

Event times follow a Weibull law S(t) = exp{-(rate * t)^shape}; the
exponential is the shape = 1 special case.  Censoring combines the
administrative mechanism of a single-arm trial (uniform accrual over
``accrual`` months followed by ``followup`` months of observation) with an
optional random-censoring law whose cumulative hazard is proportional to
the event law's, tuned so that a fraction ``random_fraction`` of
non-administrative outcomes are censored.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class ParametricSurvival:
    """Event-time law with survival exp{-(rate*t)^shape}; shape 1 = exponential."""

    rate: float
    shape: float = 1.0

    def __post_init__(self):
        if not self.rate > 0.0:
            raise DomainError(f"rate must be positive, got {self.rate}")
        if not self.shape > 0.0:
            raise DomainError(f"shape must be positive, got {self.shape}")

    @property
    def family(self) -> str:
        return "exponential" if self.shape == 1.0 else "weibull"


@dataclass(frozen=True)
class CensoringScheme:
    """Accrual length, follow-up length, and random-censoring fraction."""

    accrual: float
    followup: float
    random_fraction: float = 0.0

    def __post_init__(self):
        if not self.accrual > 0.0:
            raise DomainError(f"accrual must be positive, got {self.accrual}")
        if not self.followup > 0.0:
            raise DomainError(f"followup must be positive, got {self.followup}")
        if not 0.0 <= self.random_fraction < 1.0:
            raise DomainError(
                f"random_fraction must be in [0, 1), got {self.random_fraction}")

    @property
    def total(self) -> float:
        return self.accrual + self.followup

    @property
    def hazard_ratio(self) -> float:
        """Censoring-to-event cumulative hazard ratio p/(1-p)."""
        p = self.random_fraction
        return p / (1.0 - p)

    def admin_survival(self, t: float) -> float:
        """P(administrative horizon > t) under uniform accrual."""
        if t <= self.followup:
            return 1.0
        if t < self.total:
            return (self.total - t) / self.accrual
        return 0.0


def survival_at(dist: ParametricSurvival, t: float) -> float:
    """S(t) = exp{-(rate*t)^shape}."""
    if t < 0.0:
        raise DomainError(f"time must be nonnegative, got {t}")
    return math.exp(-((dist.rate * t) ** dist.shape))


def cumulative_hazard(dist: ParametricSurvival, t: float) -> float:
    """Lambda(t) = (rate*t)^shape."""
    if t < 0.0:
        raise DomainError(f"time must be nonnegative, got {t}")
    return (dist.rate * t) ** dist.shape


def hazard_at(dist: ParametricSurvival, t: float) -> float:
    """Hazard shape * rate^shape * t^(shape-1); t must be positive when shape != 1."""
    k, lam = dist.shape, dist.rate
    if k == 1.0:
        return lam
    if t <= 0.0:
        raise DomainError(f"hazard requires t > 0 for shape {k}, got t={t}")
    return k * lam ** k * t ** (k - 1.0)


def hazard_from_survival(shape: float, s_target: float, t: float) -> float:
    """Rate such that survival at t equals s_target: {-log s}^(1/shape) / t."""
    if not 0.0 < s_target < 1.0:
        raise DomainError(f"survival target must be in (0, 1), got {s_target}")
    if not t > 0.0:
        raise DomainError(f"time must be positive, got {t}")
    if not shape > 0.0:
        raise DomainError(f"shape must be positive, got {shape}")
    return (-math.log(s_target)) ** (1.0 / shape) / t


def hazard_from_median(median: float) -> float:
    """Exponential rate with the given median survival time: log(2) / median."""
    if not median > 0.0:
        raise DomainError(f"median must be positive, got {median}")
    return math.log(2.0) / median


def censoring_survival(scheme: CensoringScheme, dist: ParametricSurvival,
                       t: float) -> float:
    """P(U > t) combining administrative and random censoring.

    The random component has cumulative hazard (p/(1-p)) * Lambda_event(t),
    so with p = 0 this reduces to the pure administrative term.
    """
    if t < 0.0:
        raise DomainError(f"time must be nonnegative, got {t}")
    if t >= scheme.total:
        raise DomainError(
            f"censoring survival is 0 at t={t} >= accrual+followup={scheme.total}")
    admin = scheme.admin_survival(t)
    if scheme.random_fraction == 0.0:
        return admin
    return admin * math.exp(-scheme.hazard_ratio * cumulative_hazard(dist, t))


def sample_observation(dist: ParametricSurvival, scheme: CensoringScheme,
                       rng: np.random.Generator) -> tuple[float, bool]:
    """Draw one (observed time, event indicator) pair.

    Draw order per subject is fixed: entry uniform, event uniform, then the
    random-censoring uniform when random_fraction > 0.  Event times use the
    inverse CDF X = (-log V)^(1/shape) / rate.  Ties resolve to events.
    """
    k, lam = dist.shape, dist.rate
    entry = scheme.accrual * rng.random()
    horizon = scheme.total - entry
    x = (-math.log(rng.random())) ** (1.0 / k) / lam
    if scheme.random_fraction > 0.0:
        u_cens = (-math.log(rng.random()) / scheme.hazard_ratio) ** (1.0 / k) / lam
    else:
        u_cens = math.inf
    limit = min(u_cens, horizon)
    if x <= limit:
        return x, True
    return limit, False
