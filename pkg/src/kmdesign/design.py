"""Sample-size and power formulas for the transformed one-sided test.

Two formulas are provided.  The proposed one sizes the trial from the
alternative-hypothesis standard deviation alone,

    n1 = ceil( { tau1 (z_{1-a} + z_{1-b}) / eps }^2 ),

while the widely used existing one mixes the null and alternative scales,

    n2 = ceil( { (tau1 z_{1-a} + tau0 z_{1-b}) / eps }^2 ),

which over- or under-shoots the target power whenever tau0 != tau1.  Both
are exposed, together with the power approximations they are derived from,
so designs can be compared side by side.
"""

import math
from dataclasses import dataclass

from .errors import DomainError
from .normal import norm_cdf, norm_ppf
from .surv_model import CensoringScheme, ParametricSurvival, hazard_from_survival
from .transforms import TransformKind, direction, transform
from .variance import transformed_sd

PROPOSED = "proposed"
EXISTING = "existing"


@dataclass(frozen=True)
class DesignSpec:
    """Inputs of a superiority design at a fixed analysis time."""

    s0: float
    s1: float
    t: float
    alpha: float
    beta: float
    kind: TransformKind
    scheme: CensoringScheme
    family: str = "exponential"
    shape: float = 1.0

    def __post_init__(self):
        for name, s in (("s0", self.s0), ("s1", self.s1)):
            if not 0.0 < s < 1.0:
                raise DomainError(f"{name} must be in (0, 1), got {s}")
        if self.s0 == self.s1:
            raise DomainError("null and alternative survival must differ")
        if not 0.0 < self.alpha < 0.5:
            raise DomainError(f"alpha must be in (0, 0.5), got {self.alpha}")
        if not 0.0 < self.beta < 0.5:
            raise DomainError(f"beta must be in (0, 0.5), got {self.beta}")
        if not self.t < self.scheme.total:
            raise DomainError(
                f"analysis time {self.t} must precede accrual+followup {self.scheme.total}")
        if self.family not in ("exponential", "weibull"):
            raise DomainError(f"family must be exponential or weibull, got {self.family!r}")
        if not self.shape > 0.0:
            raise DomainError(f"shape must be positive, got {self.shape}")
        if self.family == "exponential" and self.shape != 1.0:
            raise DomainError("exponential family requires shape 1")
        if self.effect_size() <= 0.0:
            raise DomainError(
                "oriented effect size must be positive (superiority design needs s1 > s0)")

    def effect_size(self) -> float:
        """Oriented transformed effect, positive when s1 is superior to s0."""
        return direction(self.kind) * (transform(self.kind, self.s1)
                                       - transform(self.kind, self.s0))

    def dist_null(self) -> ParametricSurvival:
        return ParametricSurvival(hazard_from_survival(self.shape, self.s0, self.t),
                                  self.shape)

    def dist_alt(self) -> ParametricSurvival:
        return ParametricSurvival(hazard_from_survival(self.shape, self.s1, self.t),
                                  self.shape)

    def tau0(self) -> float:
        return transformed_sd(self.kind, self.dist_null(), self.scheme, self.t)

    def tau1(self) -> float:
        return transformed_sd(self.kind, self.dist_alt(), self.scheme, self.t)


@dataclass(frozen=True)
class DesignResult:
    n: int
    tau0: float
    tau1: float
    epsilon: float
    achieved_power: float
    method: str


def required_n_proposed(tau1: float, epsilon: float, alpha: float, beta: float) -> float:
    """Real-valued n from the proposed formula, before rounding."""
    z = norm_ppf(1.0 - alpha) + norm_ppf(1.0 - beta)
    return (tau1 * z / epsilon) ** 2


def required_n_existing(tau0: float, tau1: float, epsilon: float,
                        alpha: float, beta: float) -> float:
    """Real-valued n from the existing formula, before rounding."""
    z = tau1 * norm_ppf(1.0 - alpha) + tau0 * norm_ppf(1.0 - beta)
    return (z / epsilon) ** 2


def power_proposed(spec: DesignSpec, n: int) -> float:
    """Power approximation behind the proposed formula at sample size n."""
    if n < 1:
        raise DomainError(f"sample size must be at least 1, got {n}")
    eps = spec.effect_size()
    return norm_cdf(-norm_ppf(1.0 - spec.alpha) + eps * math.sqrt(n) / spec.tau1())


def power_existing(spec: DesignSpec, n: int) -> float:
    """The existing method's power approximation (mixes tau0 and tau1)."""
    if n < 1:
        raise DomainError(f"sample size must be at least 1, got {n}")
    eps = spec.effect_size()
    tau0, tau1 = spec.tau0(), spec.tau1()
    return norm_cdf(-(tau1 / tau0) * norm_ppf(1.0 - spec.alpha)
                    + eps * math.sqrt(n) / tau0)


def sample_size_proposed(spec: DesignSpec) -> DesignResult:
    """Smallest n whose proposed-formula power reaches 1 - beta."""
    eps = spec.effect_size()
    tau0, tau1 = spec.tau0(), spec.tau1()
    n = math.ceil(required_n_proposed(tau1, eps, spec.alpha, spec.beta))
    return DesignResult(n=n, tau0=tau0, tau1=tau1, epsilon=eps,
                        achieved_power=power_proposed(spec, n), method=PROPOSED)


def sample_size_existing(spec: DesignSpec) -> DesignResult:
    """Smallest n whose existing-formula power expression reaches 1 - beta."""
    eps = spec.effect_size()
    tau0, tau1 = spec.tau0(), spec.tau1()
    n = math.ceil(required_n_existing(tau0, tau1, eps, spec.alpha, spec.beta))
    return DesignResult(n=n, tau0=tau0, tau1=tau1, epsilon=eps,
                        achieved_power=power_existing(spec, n), method=EXISTING)


def sample_size(spec: DesignSpec, method: str) -> DesignResult:
    if method == PROPOSED:
        return sample_size_proposed(spec)
    if method == EXISTING:
        return sample_size_existing(spec)
    raise DomainError(f"unknown method {method!r}; expected proposed or existing")
