"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the mathematical domain of an operation."""


class DivergentIntegralError(DomainError):
    """The variance integral diverges (analysis time at or past accrual + follow-up)."""


class QuadratureError(ArithmeticError):
    """Adaptive quadrature failed to converge; carries the partial estimate."""

    def __init__(self, message: str, estimate: float, est_abs_error: float):
        super().__init__(message)
        self.estimate = estimate
        self.est_abs_error = est_abs_error
