"""Transformation values, derivatives, and orientation."""

import math

import pytest

from kmdesign.errors import DomainError
from kmdesign.transforms import (ALL_KINDS, TransformKind, derivative, direction,
                                 parse_kind, transform)

GRID = [i / 20 for i in range(1, 20)]  # 0.05 .. 0.95


def test_known_values():
    assert transform(TransformKind.LOG, 1.0) == 0.0
    assert transform(TransformKind.ARCSIN, 0.5) == pytest.approx(math.pi / 4, abs=1e-12)
    assert transform(TransformKind.LOGIT, 0.2) == pytest.approx(-1.386294, abs=1e-6)
    assert transform(TransformKind.IDENTITY, 0.37) == 0.37
    assert transform(TransformKind.LOGLOG, 0.5) == pytest.approx(math.log(math.log(2)), abs=1e-12)


def test_known_derivatives():
    assert derivative(TransformKind.IDENTITY, 0.37) == 1.0
    assert derivative(TransformKind.LOGLOG, 0.5) == pytest.approx(-2.885390, abs=1e-6)
    assert derivative(TransformKind.ARCSIN, 0.2) == pytest.approx(1.25, abs=1e-12)
    assert derivative(TransformKind.LOG, 0.25) == 4.0
    assert derivative(TransformKind.LOGIT, 0.2) == pytest.approx(1 / 0.16, abs=1e-12)


@pytest.mark.parametrize("kind", ALL_KINDS)
@pytest.mark.parametrize("s", GRID)
def test_finite_difference(kind, s):
    h = 1e-6
    fd = (transform(kind, s + h) - transform(kind, s - h)) / (2 * h)
    exact = derivative(kind, s)
    assert fd == pytest.approx(exact, rel=1e-5)


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_monotone_with_direction(kind):
    values = [transform(kind, s) for s in GRID]
    diffs = [b - a for a, b in zip(values, values[1:])]
    if direction(kind) > 0:
        assert all(d > 0 for d in diffs)
    else:
        assert all(d < 0 for d in diffs)


@pytest.mark.parametrize("kind", ALL_KINDS)
@pytest.mark.parametrize("s0,s1", [(0.1, 0.2), (0.4, 0.9), (0.55, 0.6)])
def test_oriented_effect_positive(kind, s0, s1):
    assert direction(kind) * (transform(kind, s1) - transform(kind, s0)) > 0


def test_directions():
    assert direction(TransformKind.IDENTITY) == 1
    assert direction(TransformKind.LOG) == 1
    assert direction(TransformKind.LOGLOG) == -1
    assert direction(TransformKind.LOGIT) == 1
    assert direction(TransformKind.ARCSIN) == 1


@pytest.mark.parametrize("kind,s", [
    (TransformKind.LOG, 0.0), (TransformKind.LOG, -0.1),
    (TransformKind.LOGLOG, 0.0), (TransformKind.LOGLOG, 1.0),
    (TransformKind.LOGIT, 0.0), (TransformKind.LOGIT, 1.0),
    (TransformKind.ARCSIN, 1.2), (TransformKind.IDENTITY, -0.5),
])
def test_domain_errors_name_variant(kind, s):
    with pytest.raises(DomainError) as exc:
        transform(kind, s)
    assert kind.value in str(exc.value)


def test_parse_kind():
    assert parse_kind("loglog") is TransformKind.LOGLOG
    with pytest.raises(DomainError):
        parse_kind("cloglog")
