"""Kaplan-Meier fit, Greenwood variance, and the transformed test."""

import itertools
import random

import pytest

from kmdesign.errors import DomainError
from kmdesign.km import SurvivalSample, km_fit, test as km_test
from kmdesign.transforms import ALL_KINDS, TransformKind


def _fit(records):
    return km_fit(SurvivalSample(records))


def oracle_product_limit(records, t):
    """Direct formula evaluation: definition-level scans, no incremental state."""
    event_times = sorted({u for u, e in records if e and u <= t})
    s_hat, greenwood = 1.0, 0.0
    for u in event_times:
        y = sum(1 for v, _ in records if v >= u)
        d = sum(1 for v, e in records if v == u and e)
        s_hat *= 1.0 - d / y
        if y > d:
            greenwood += d / (y * (y - d))
    return s_hat, greenwood


def test_hand_example():
    fit = _fit([(2, True), (3, True), (4, False)])
    assert fit.survival_at(3.5) == pytest.approx(1 / 3, abs=1e-15)
    assert fit.greenwood_at(3.5) == pytest.approx(2 / 3, abs=1e-15)
    assert fit.variance_at(3.5) == pytest.approx(2 / 27, abs=1e-15)


def test_all_censored():
    fit = _fit([(1, False), (2, False), (5, False)])
    assert fit.survival_at(4.0) == 1.0
    assert fit.variance_at(4.0) == 0.0


def test_single_failure():
    fit = _fit([(1, True)])
    assert fit.survival_at(2.0) == 0.0


def test_step_lookup_is_right_continuous():
    fit = _fit([(2, True), (4, True)])
    assert fit.survival_at(1.999) == 1.0
    assert fit.survival_at(2.0) == 0.5
    assert fit.survival_at(3.999) == 0.5
    assert fit.survival_at(4.0) == 0.0
    assert fit.survival_at(100.0) == 0.0  # constant beyond the last time


def test_censoring_tied_with_event_stays_at_risk():
    # censored subject at time 2 counts in the risk set of the event at 2
    fit = _fit([(2, True), (2, False), (3, True)])
    assert fit.at_risk == (3, 1)
    assert fit.survival_at(2.0) == pytest.approx(2 / 3, abs=1e-15)
    assert fit.survival_at(3.0) == pytest.approx(0.0, abs=1e-15)


def test_permutation_invariance():
    records = [(3, True), (1, False), (2, True), (2, False), (5, True), (4, False)]
    base = _fit(records)
    rng = random.Random(0)
    for _ in range(20):
        shuffled = records[:]
        rng.shuffle(shuffled)
        other = _fit(shuffled)
        assert other == base


def test_no_censoring_reduction():
    rng = random.Random(1)
    times = [rng.uniform(0.1, 10) for _ in range(40)]
    fit = _fit([(u, True) for u in times])
    for t in (0.5, 2.0, 5.0, 9.5):
        frac = sum(1 for u in times if u > t) / len(times)
        assert fit.survival_at(t) == pytest.approx(frac, abs=1e-12)
        expected_var = frac * (1 - frac) / len(times)
        assert fit.variance_at(t) == pytest.approx(expected_var, abs=1e-12)


def test_exhaustive_small_instance_oracle():
    """All (time, flag) patterns with n <= 6, times in {1, 2, 3}."""
    options = [(u, e) for u in (1.0, 2.0, 3.0) for e in (True, False)]
    eval_times = (0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5)
    for n in range(1, 7):
        for combo in itertools.product(options, repeat=n):
            fit = _fit(combo)
            for t in eval_times:
                s_expected, g_expected = oracle_product_limit(combo, t)
                assert abs(fit.survival_at(t) - s_expected) <= 1e-12
                assert abs(fit.greenwood_at(t) - g_expected) <= 1e-12


def test_statistic_hand_value():
    fit = _fit([(2, True), (3, True), (4, False)])
    outcome = km_test(TransformKind.IDENTITY, fit, 3.5, 0.2, 0.05)
    assert outcome.z == pytest.approx(0.489897, abs=1e-6)
    assert outcome.reject is False


def test_boundary_all_censored_rejects():
    fit = _fit([(1, False)] * 10)
    for kind in ALL_KINDS:
        outcome = km_test(kind, fit, 5.0, 0.9, 0.05)
        assert outcome.reject is True
        assert outcome.s_hat == 1.0


def test_boundary_estimate_zero_never_rejects():
    fit = _fit([(1, True), (2, True)])
    for kind in ALL_KINDS:
        outcome = km_test(kind, fit, 3.0, 0.1, 0.05)
        assert outcome.reject is False
        assert outcome.s_hat == 0.0


def test_estimate_equal_to_null_gives_zero_statistic():
    # two simultaneous events among five: S_hat = 1 - 2/5 = 0.6 exactly
    fit = _fit([(1, True), (1, True), (9, True), (9, True), (9, True)])
    for kind in ALL_KINDS:
        outcome = km_test(kind, fit, 5.0, 0.6, 0.05)
        assert outcome.z == 0.0
        assert outcome.reject is False


def test_rejection_monotone_and_nested_across_kinds():
    """On the censoring-free lattice each rule is S_hat > kind threshold."""
    n, t = 25, 5.0
    cutoffs = {}
    for kind in ALL_KINDS:
        decisions = []
        for n_events in range(n + 1):
            records = [(1.0, True)] * n_events + [(9.0, True)] * (n - n_events)
            decisions.append(km_test(kind, _fit(records), t, 0.5, 0.05).reject)
        # monotone: rejections happen exactly for the smallest event counts
        first_false = decisions.index(False) if False in decisions else n + 1
        assert all(decisions[:first_false])
        assert not any(decisions[first_false:])
        cutoffs[kind] = first_false
    # interval regions are automatically nested; log is the most liberal here
    assert cutoffs[TransformKind.LOG] >= max(
        c for k, c in cutoffs.items() if k is not TransformKind.LOG)


def test_empty_sample_rejected():
    with pytest.raises(DomainError):
        km_fit(SurvivalSample([]))
    with pytest.raises(DomainError):
        SurvivalSample([(0.0, True)])
    fit = _fit([(1, True)])
    with pytest.raises(DomainError):
        km_test(TransformKind.LOG, fit, 2.0, 1.5, 0.05)
