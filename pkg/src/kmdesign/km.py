"""Kaplan-Meier estimator, Greenwood variance, and the transformed test.

The fit canonicalizes records into distinct ascending event times with
at-risk and event counts; censorings tied with events are processed after
them, so censored subjects still count as at risk at that time.  The test
statistic divides the transformed distance from the null by the delta-rule
standard error |g'(S_hat)| * sqrt(Greenwood variance); the sqrt(n) factors
of the asymptotic formulation cancel and never appear.

Boundary conventions used throughout the simulations: S_hat(t) = 1 (no
events yet) rejects, S_hat(t) = 0 or a zero variance with S_hat < 1 does
not, and the estimate is extended as a constant beyond the last
observation.
"""

import math
from bisect import bisect_right
from dataclasses import dataclass
from itertools import groupby
from typing import Sequence

from .errors import DomainError
from .normal import norm_ppf
from .transforms import TransformKind, derivative, direction, transform


@dataclass(frozen=True)
class SurvivalSample:
    """Right-censored observations as (time, event) records."""

    records: tuple[tuple[float, bool], ...]

    def __init__(self, records: Sequence[tuple[float, bool]]):
        canon = tuple((float(t), bool(e)) for t, e in records)
        if any(t <= 0.0 for t, _ in canon):
            raise DomainError("all observation times must be positive")
        object.__setattr__(self, "records", canon)

    def __len__(self):
        return len(self.records)


@dataclass(frozen=True)
class KmFit:
    """Product-limit estimate over the distinct event times of a sample."""

    n: int
    event_times: tuple[float, ...]
    at_risk: tuple[int, ...]
    events: tuple[int, ...]
    surv: tuple[float, ...]        # S_hat just after each event time
    greenwood: tuple[float, ...]   # cumulative sum of d / {Y (Y - d)}

    def survival_at(self, t: float) -> float:
        """Right-continuous step lookup, constant beyond the last event time."""
        i = bisect_right(self.event_times, t)
        return self.surv[i - 1] if i > 0 else 1.0

    def greenwood_at(self, t: float) -> float:
        i = bisect_right(self.event_times, t)
        return self.greenwood[i - 1] if i > 0 else 0.0

    def variance_at(self, t: float) -> float:
        """Greenwood variance estimate S_hat(t)^2 * G(t)."""
        s = self.survival_at(t)
        return s * s * self.greenwood_at(t)


@dataclass(frozen=True)
class TestOutcome:
    s_hat: float
    greenwood_var: float
    z: float          # +/- inf at the boundary conventions
    reject: bool


def km_fit(sample: SurvivalSample) -> KmFit:
    """Fit the product-limit estimator; raises on an empty sample."""
    n = len(sample)
    if n == 0:
        raise DomainError("cannot fit an empty sample")
    ordered = sorted(sample.records)
    times, at_risk, events = [], [], []
    survived = n
    for t, group in groupby(ordered, key=lambda r: r[0]):
        grp = list(group)
        d = sum(1 for _, e in grp if e)
        if d > 0:
            times.append(t)
            at_risk.append(survived)
            events.append(d)
        # everyone observed at t (event or censored) leaves the risk set
        survived -= len(grp)
    s_vals, g_vals = [], []
    s, g = 1.0, 0.0
    for y, d in zip(at_risk, events):
        s *= 1.0 - d / y
        # when d == y the estimate hits 0; the Greenwood term is left out,
        # the test handles S_hat = 0 as a non-rejection boundary
        if y > d:
            g += d / (y * (y - d))
        g_vals.append(g)
        s_vals.append(s)
    return KmFit(n=n, event_times=tuple(times), at_risk=tuple(at_risk),
                 events=tuple(events), surv=tuple(s_vals), greenwood=tuple(g_vals))


def test(kind: TransformKind, fit: KmFit, t: float, s0: float,
         alpha: float) -> TestOutcome:
    """One-sided transformed test of H0: S(t) <= s0 at level alpha."""
    if not 0.0 < s0 < 1.0:
        raise DomainError(f"s0 must be in (0, 1), got {s0}")
    if not t > 0.0:
        raise DomainError(f"analysis time must be positive, got {t}")
    s_hat = fit.survival_at(t)
    var = fit.variance_at(t)
    if s_hat >= 1.0:
        return TestOutcome(s_hat=s_hat, greenwood_var=var, z=math.inf, reject=True)
    if s_hat <= 0.0 or var <= 0.0:
        return TestOutcome(s_hat=s_hat, greenwood_var=var, z=-math.inf, reject=False)
    z = direction(kind) * (transform(kind, s_hat) - transform(kind, s0)) \
        / (abs(derivative(kind, s_hat)) * math.sqrt(var))
    return TestOutcome(s_hat=s_hat, greenwood_var=var, z=z,
                       reject=z > norm_ppf(1.0 - alpha))
