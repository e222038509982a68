"""Asymptotic variance of the Kaplan-Meier estimator under the trial design.

sigma2(t) is the variance of sqrt(n){S_hat(t) - S(t)}, equal to
S(t)^2 * integral_0^t dLambda(s) / {P(U>s) S(s)}.  With no random censoring
and t within the follow-up window the integral collapses to the binomial
identity S(t){1 - S(t)}.  Elsewhere it is evaluated by adaptive Simpson
quadrature: the segment before the follow-up boundary in the substituted
variable u = Lambda(s), where the integrand is exp((1+rho)u) and free of
the k < 1 hazard singularity at s = 0, and the accrual-window tail in s.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import DivergentIntegralError, DomainError, QuadratureError
from .surv_model import (CensoringScheme, ParametricSurvival, cumulative_hazard,
                         hazard_at, survival_at)
from .transforms import TransformKind, derivative

QUAD_TOL = 1e-10
QUAD_MAX_DEPTH = 60


@dataclass(frozen=True)
class VarianceResult:
    sigma2: float
    method: str                  # "closed_form" or "quadrature"
    est_abs_error: float
    tau2: Optional[float] = None  # set once a transformation is applied


def _simpson(f: Callable[[float], float], a: float, fa: float, m: float,
             fm: float, b: float, fb: float) -> float:
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def _adaptive(f, a, fa, m, fm, b, fb, whole, tol, depth):
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = _simpson(f, a, fa, lm, flm, m, fm)
    right = _simpson(f, m, fm, rm, frm, b, fb)
    err = (left + right - whole) / 15.0
    if abs(err) <= tol:
        return left + right + err, abs(err)
    if depth <= 0:
        raise QuadratureError(
            f"adaptive Simpson failed to converge on [{a}, {b}]",
            estimate=left + right + err, est_abs_error=abs(err))
    lv, le = _adaptive(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1)
    rv, re = _adaptive(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1)
    return lv + rv, le + re


def adaptive_simpson(f: Callable[[float], float], a: float, b: float,
                     tol: float = QUAD_TOL,
                     max_depth: int = QUAD_MAX_DEPTH) -> tuple[float, float]:
    """Integrate f on [a, b] to absolute tolerance tol; returns (value, error bound)."""
    if b <= a:
        return 0.0, 0.0
    m = 0.5 * (a + b)
    fa, fm, fb = f(a), f(m), f(b)
    whole = _simpson(f, a, fa, m, fm, b, fb)
    return _adaptive(f, a, fa, m, fm, b, fb, whole, tol, max_depth)


def _check_time(scheme: CensoringScheme, t: float):
    if not t > 0.0:
        raise DomainError(f"analysis time must be positive, got {t}")
    if t >= scheme.total:
        raise DivergentIntegralError(
            f"variance integral diverges at t={t} >= accrual+followup={scheme.total}")


def _integral_head(dist: ParametricSurvival, scheme: CensoringScheme,
                   t_head: float, force_quadrature: bool) -> tuple[float, float]:
    """Integral over (0, t_head] with t_head <= followup, in u = Lambda(s)."""
    rho = scheme.hazard_ratio
    lam_upper = cumulative_hazard(dist, t_head)
    c = 1.0 + rho
    if rho == 0.0 and not force_quadrature:
        # exp(Lambda) - 1 = 1/S - 1, exactly the censoring-free closed form
        return math.expm1(lam_upper), 0.0
    return adaptive_simpson(lambda u: math.exp(c * u), 0.0, lam_upper)


def _integral_tail(dist: ParametricSurvival, scheme: CensoringScheme,
                   t: float) -> tuple[float, float]:
    """Integral over (followup, t] where the accrual term (c-s)/a is active."""
    a, c = scheme.accrual, scheme.total
    rho = scheme.hazard_ratio

    def integrand(s: float) -> float:
        return a * hazard_at(dist, s) * math.exp((1.0 + rho) * cumulative_hazard(dist, s)) / (c - s)

    return adaptive_simpson(integrand, scheme.followup, t)


def asymptotic_variance(dist: ParametricSurvival, scheme: CensoringScheme,
                        t: float, force_quadrature: bool = False) -> VarianceResult:
    """sigma2(t) for the given event law and censoring scheme.

    With random_fraction = 0 and t <= followup the exact binomial form
    S(t){1-S(t)} is returned; otherwise adaptive quadrature at absolute
    tolerance 1e-10.  ``force_quadrature`` routes the closed-form branch
    through quadrature as well (used to cross-check the two).
    """
    _check_time(scheme, t)
    s_t = survival_at(dist, t)
    if not 0.0 < s_t < 1.0:
        raise DomainError(f"S(t) must be in (0, 1), got {s_t} at t={t}")
    closed = scheme.random_fraction == 0.0 and t <= scheme.followup
    if closed and not force_quadrature:
        return VarianceResult(sigma2=s_t * (1.0 - s_t), method="closed_form",
                              est_abs_error=0.0)
    head, head_err = _integral_head(dist, scheme, min(t, scheme.followup),
                                    force_quadrature)
    if t > scheme.followup:
        tail, tail_err = _integral_tail(dist, scheme, t)
    else:
        tail, tail_err = 0.0, 0.0
    return VarianceResult(sigma2=s_t * s_t * (head + tail), method="quadrature",
                          est_abs_error=s_t * s_t * (head_err + tail_err))


def transformed_variance(kind: TransformKind, dist: ParametricSurvival,
                         scheme: CensoringScheme, t: float) -> VarianceResult:
    """Variance result carrying tau2 = g'(S(t))^2 * sigma2(t)."""
    base = asymptotic_variance(dist, scheme, t)
    g_prime = derivative(kind, survival_at(dist, t))
    return VarianceResult(sigma2=base.sigma2, method=base.method,
                          est_abs_error=base.est_abs_error,
                          tau2=g_prime * g_prime * base.sigma2)


def _inv_abs_derivative(kind: TransformKind, s: float) -> float:
    """1/|g'(s)|.  Every g' is a reciprocal, and dividing by this shared
    denominator lets sqrt(S(1-S)) cancel exactly, keeping the
    variance-stabilized arcsine tau at precisely 1/2."""
    derivative(kind, s)  # domain check
    if kind is TransformKind.IDENTITY:
        return 1.0
    if kind is TransformKind.LOG:
        return s
    if kind is TransformKind.LOGLOG:
        return s * abs(math.log(s))
    if kind is TransformKind.LOGIT:
        return s * (1.0 - s)
    return 2.0 * math.sqrt(s * (1.0 - s))


def transformed_sd(kind: TransformKind, dist: ParametricSurvival,
                   scheme: CensoringScheme, t: float) -> float:
    """tau(t) = |g'(S(t))| * sigma(t)."""
    base = asymptotic_variance(dist, scheme, t)
    return math.sqrt(base.sigma2) / _inv_abs_derivative(kind, survival_at(dist, t))


def tau_ratio(kind: TransformKind, s0: float, s1: float) -> float:
    """tau0/tau1 in the censoring-independent regime where sigma2 = S(1-S)."""
    for s in (s0, s1):
        if not 0.0 < s < 1.0:
            raise DomainError(f"survival probabilities must be in (0, 1), got {s}")
    tau0 = abs(derivative(kind, s0)) * math.sqrt(s0 * (1.0 - s0))
    tau1 = abs(derivative(kind, s1)) * math.sqrt(s1 * (1.0 - s1))
    return tau0 / tau1
