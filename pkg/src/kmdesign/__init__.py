"""Sample size, power, and Monte Carlo verification for single-arm survival
trials based on transformed Kaplan-Meier tests."""

from .design import (DesignResult, DesignSpec, EXISTING, PROPOSED, power_existing,
                     power_proposed, sample_size, sample_size_existing,
                     sample_size_proposed)
from .errors import DivergentIntegralError, DomainError, QuadratureError
from .km import KmFit, SurvivalSample, TestOutcome, km_fit, test
from .mcsim import Scenario, SimResult, run_power_cell, run_table, simulate
from .normal import norm_cdf, norm_ppf
from .presets import STUDIES, get_study
from .surv_model import (CensoringScheme, ParametricSurvival, censoring_survival,
                         cumulative_hazard, hazard_at, hazard_from_median,
                         hazard_from_survival, sample_observation, survival_at)
from .transforms import ALL_KINDS, TransformKind, derivative, direction, transform
from .variance import (VarianceResult, adaptive_simpson, asymptotic_variance,
                       tau_ratio, transformed_sd, transformed_variance)

__version__ = "0.1.0"

__all__ = [
    "ALL_KINDS", "CensoringScheme", "DesignResult", "DesignSpec",
    "DivergentIntegralError", "DomainError", "EXISTING", "KmFit",
    "ParametricSurvival", "PROPOSED", "QuadratureError", "STUDIES", "Scenario",
    "SimResult", "SurvivalSample", "TestOutcome", "TransformKind",
    "VarianceResult", "adaptive_simpson", "asymptotic_variance",
    "censoring_survival", "cumulative_hazard", "derivative", "direction",
    "get_study", "hazard_at", "hazard_from_median", "hazard_from_survival",
    "km_fit", "norm_cdf", "norm_ppf", "power_existing", "power_proposed",
    "run_power_cell", "run_table", "sample_observation", "sample_size",
    "sample_size_existing", "sample_size_proposed", "simulate", "survival_at",
    "tau_ratio", "test", "transform", "transformed_sd", "transformed_variance",
]
