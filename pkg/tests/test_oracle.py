#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""Tests for the trajectory oracle and the exact domains."""

import math

import numpy as np
import pytest

from lyapunov_da import (
    OracleParameters,
    UnknownExactDA,
    Verdict,
    exact_da_member,
    simulate,
    simulate_many,
)
from lyapunov_da.oracle import exact_boundary_function

INSIDE = [(0.0, 0.5), (2.0, 1.0), (-0.5, 0.5), (1.0, 1.5), (2.9, 0.0)]
OUTSIDE = [(-1.5, 0.0), (3.5, 1.0), (1.0, 2.5), (3.1, 0.0)]


def test_origin_converges_at_once(fields):
    outcome = simulate(fields["example1"], [0.0, 0.0])
    assert outcome.verdict is Verdict.CONVERGED
    assert outcome.time == 0.0
    assert outcome.final_norm == 0.0


def test_either_side_of_boundary(fields):
    field = fields["example1"]
    assert simulate(field, [2.9, 0.0]).verdict is Verdict.CONVERGED
    assert simulate(field, [3.1, 0.0]).verdict is Verdict.DIVERGED


def test_exponential_decay(decay):
    outcome = simulate(decay, [1.0])
    assert outcome.verdict is Verdict.CONVERGED
    assert outcome.time == pytest.approx(math.log(1000), abs=2e-3)
    assert outcome.final_norm <= 1e-3


def test_undecided(decay):
    outcome = simulate(decay, [1.0], t_final=1.0)
    assert outcome.verdict is Verdict.UNDECIDED
    assert outcome.time == 1.0
    assert outcome.final_norm == pytest.approx(math.exp(-1), rel=1e-6)


def test_batch_order(fields):
    field = fields["example1"]
    X = np.array(INSIDE + OUTSIDE)
    outcomes = simulate_many(field, X, dt=1e-2)
    verdicts = [outcome.verdict for outcome in outcomes]
    assert verdicts == [Verdict.CONVERGED] * len(INSIDE) + [Verdict.DIVERGED] * len(
        OUTSIDE
    )
    single = simulate(field, X[2], dt=1e-2)
    assert single.verdict is outcomes[2].verdict
    assert single.time == pytest.approx(outcomes[2].time, abs=0.011)


def test_agrees_with_exact_domain(fields):
    field = fields["example1"]
    X = np.array(INSIDE + OUTSIDE)
    for dt in (1e-2, 5e-3):
        outcomes = simulate_many(field, X, dt=dt)
        converged = [o.verdict is Verdict.CONVERGED for o in outcomes]
        assert converged == list(exact_da_member(1, X))


BOXES = {
    "example1": ([-3.0, -4.0], [5.0, 4.0]),
    "example2": ([-2.0, -2.0, -2.0], [2.0, 2.0, 2.0]),
}


def boundary_distance(name, X):
    """First-order distance |F| / |grad F| to the exact boundary."""
    F = exact_boundary_function(name)
    h = 1e-6
    grad = np.empty_like(X)
    for i in range(X.shape[1]):
        step = np.zeros(X.shape[1])
        step[i] = h
        grad[:, i] = (F(X + step) - F(X - step)) / (2 * h)
    return np.abs(F(X)) / np.linalg.norm(grad, axis=1)


@pytest.mark.parametrize("name", sorted(BOXES))
def test_random_points_match_exact_domain(fields, rng, name):
    low, high = BOXES[name]
    X = rng.uniform(low, high, size=(3000, len(low)))
    X = X[boundary_distance(name, X) >= 0.1][:1000]
    assert len(X) == 1000
    outcomes = simulate_many(fields[name], X)
    converged = np.array([o.verdict is Verdict.CONVERGED for o in outcomes])
    diverged = np.array([o.verdict is Verdict.DIVERGED for o in outcomes])
    inside = exact_da_member(name, X)
    agree = (converged & inside) | (diverged & ~inside)
    assert agree.sum() >= 999


@pytest.mark.parametrize("name", sorted(BOXES))
def test_verdicts_stable_when_step_halved(fields, rng, name):
    low, high = BOXES[name]
    X = rng.uniform(low, high, size=(200, len(low)))
    coarse = simulate_many(fields[name], X, dt=1e-3)
    fine = simulate_many(fields[name], X, dt=5e-4)
    assert [o.verdict for o in coarse] == [o.verdict for o in fine]


def test_exact_members():
    assert exact_da_member(1, [0.5, 0.0])
    assert not exact_da_member("example1", [3.5, 0.0])
    assert exact_da_member("example2", [0.0, 0.0, 0.0])
    assert not exact_da_member(2, [2.0, 0.0, 0.0])
    assert exact_da_member(2, [0.0, 0.0, 5.0])
    members = exact_da_member(1, [[0.0, 0.0], [4.0, 0.0], [1.0, 1.9]])
    np.testing.assert_array_equal(members, [True, False, True])


def test_boundary_function():
    F = exact_boundary_function("example1")
    X = np.array([[3.0, 0.0], [1.0, 0.0]])
    np.testing.assert_allclose(F(X), [0.0, -4.0])


@pytest.mark.parametrize("example", [3, 4, "example3", "custom"])
def test_unknown_exact(example):
    with pytest.raises(UnknownExactDA):
        exact_da_member(example, [0.0, 0.0])
    with pytest.raises(UnknownExactDA):
        exact_boundary_function(example)


@pytest.mark.parametrize(
    "values", [{"dt": 0.0}, {"t_final": -1.0}, {"eps_conv": 0.0}, {"t_final": 1e-4}]
)
def test_parameter_checks(values):
    with pytest.raises(ValueError):
        OracleParameters(**values)
