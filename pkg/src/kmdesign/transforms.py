"""The five survival-probability transformations and their derivatives.

Each transformation g maps a survival probability to a scale on which the
normal approximation of the Kaplan-Meier estimator behaves better in small
samples.  All are strictly monotone on (0, 1); log-minus-log is the only
decreasing one, which ``direction`` exposes so that callers can orient
effect sizes consistently.
"""

import math
from enum import Enum

from .errors import DomainError


class TransformKind(str, Enum):
    IDENTITY = "identity"
    LOG = "log"
    LOGLOG = "loglog"
    LOGIT = "logit"
    ARCSIN = "arcsin"


ALL_KINDS = (TransformKind.IDENTITY, TransformKind.LOG, TransformKind.LOGLOG,
             TransformKind.LOGIT, TransformKind.ARCSIN)


def _require(ok: bool, kind: TransformKind, s: float, domain: str):
    if not ok:
        raise DomainError(f"{kind.value}: s={s} outside domain {domain}")


def transform(kind: TransformKind, s: float) -> float:
    """g(s) for the given transformation."""
    if kind is TransformKind.IDENTITY:
        _require(0.0 <= s <= 1.0, kind, s, "[0, 1]")
        return s
    if kind is TransformKind.LOG:
        _require(0.0 < s <= 1.0, kind, s, "(0, 1]")
        return math.log(s)
    if kind is TransformKind.LOGLOG:
        _require(0.0 < s < 1.0, kind, s, "(0, 1)")
        return math.log(-math.log(s))
    if kind is TransformKind.LOGIT:
        _require(0.0 < s < 1.0, kind, s, "(0, 1)")
        return math.log(s / (1.0 - s))
    if kind is TransformKind.ARCSIN:
        _require(0.0 <= s <= 1.0, kind, s, "[0, 1]")
        return math.asin(math.sqrt(s))
    raise DomainError(f"unknown transformation {kind!r}")


def derivative(kind: TransformKind, s: float) -> float:
    """g'(s); negative exactly for the log-minus-log transformation."""
    if kind is TransformKind.IDENTITY:
        return 1.0
    if kind is TransformKind.LOG:
        _require(0.0 < s <= 1.0, kind, s, "(0, 1]")
        return 1.0 / s
    if kind is TransformKind.LOGLOG:
        _require(0.0 < s < 1.0, kind, s, "(0, 1)")
        return 1.0 / (s * math.log(s))
    if kind is TransformKind.LOGIT:
        _require(0.0 < s < 1.0, kind, s, "(0, 1)")
        return 1.0 / (s * (1.0 - s))
    if kind is TransformKind.ARCSIN:
        _require(0.0 < s < 1.0, kind, s, "(0, 1)")
        return 1.0 / (2.0 * math.sqrt(s * (1.0 - s)))
    raise DomainError(f"unknown transformation {kind!r}")


def direction(kind: TransformKind) -> int:
    """Sign of g' on (0, 1): -1 for log-minus-log, +1 otherwise."""
    return -1 if kind is TransformKind.LOGLOG else 1


def parse_kind(name: str) -> TransformKind:
    """Resolve a canonical lowercase name to a TransformKind."""
    try:
        return TransformKind(name)
    except ValueError:
        valid = ", ".join(k.value for k in ALL_KINDS)
        raise DomainError(f"unknown transformation {name!r}; expected one of: {valid}")
