#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""Tests for the coefficients of the Lyapunov function and their re-expansion."""

import numpy as np
import pytest

from lyapunov_da import (
    ComplexSeries,
    Embryo,
    ImaginaryLeak,
    compute_coefficients,
    diagonalize,
    evaluate,
    evaluate_real,
    jacobian_at_origin,
    pde_residual,
    taylor_shift,
    transform_field,
)

EXAMPLES = ("example1", "example2", "example3", "example4")


def test_one_dimensional_decay(decay):
    spectrum = diagonalize(jacobian_at_origin(decay))
    tf = transform_field(decay, spectrum)
    embryo = compute_coefficients(tf, spectrum, 6)
    assert embryo.series.coefficient((2,)) == 0.5
    assert embryo.series.max_abs() == 0.5
    assert pde_residual(embryo, tf) == 0.0


def test_quadratic_block_example1(pipeline):
    _, _, _, embryo = pipeline("example1", 10)
    np.testing.assert_allclose(
        embryo.series.block(2), [1 / 6, 0, 1 / 6], rtol=0, atol=1e-12
    )
    assert embryo.generation == 0
    assert embryo.degree == 10


@pytest.mark.parametrize("name", EXAMPLES)
def test_residual_degree_10(pipeline, name):
    _, _, tf, embryo = pipeline(name, 10)
    assert pde_residual(embryo, tf) <= 1e-8 * embryo.series.max_abs()


@pytest.mark.parametrize("name", EXAMPLES)
def test_residual_degree_30(pipeline, name):
    _, _, tf, embryo = pipeline(name, 30)
    assert pde_residual(embryo, tf) <= 1e-6 * embryo.series.max_abs()


def test_residual_detects_perturbation(pipeline):
    _, _, tf, embryo = pipeline("example1", 10)
    coeffs = embryo.series.coeffs.copy()
    coeffs[embryo.series.offsets[10]] += 1.0e-3
    series = ComplexSeries(2, np.zeros(2), 10, coeffs)
    assert pde_residual(Embryo(series), tf) >= 1.0e-2


def test_lower_degrees_agree(pipeline):
    _, _, _, low = pipeline("example3", 10)
    _, _, _, high = pipeline("example3", 30)
    size = low.series.coeffs.size
    np.testing.assert_array_equal(high.series.coeffs[:size], low.series.coeffs)


def test_degree_limits(pipeline):
    _, spectrum, tf, _ = pipeline("example3", 10)
    with pytest.raises(ValueError):
        compute_coefficients(tf, spectrum, 1)
    with pytest.raises(ValueError):
        compute_coefficients(tf, spectrum, 61)


def test_generation_zero_rules():
    coeffs = np.zeros(6, dtype=complex)
    coeffs[1] = 1.0
    with pytest.raises(ValueError):
        Embryo(ComplexSeries(2, np.zeros(2), 2, coeffs))
    with pytest.raises(ValueError):
        Embryo(ComplexSeries.zeros(2, 2, center=[0.5, 0]))
    with pytest.raises(ValueError):
        Embryo(ComplexSeries.zeros(2, 2), generation=-1)


@pytest.mark.parametrize("name", EXAMPLES)
def test_real_on_real_states(pipeline, rng, name):
    field, spectrum, _, embryo = pipeline(name, 10)
    for _ in range(20):
        x = rng.uniform(-0.3, 0.3, field.dim)
        value = evaluate_real(embryo, spectrum, x)
        assert value > 0
        z = spectrum.to_eigen(x)
        assert abs(evaluate(embryo, z).imag) <= 1e-12 * (1 + abs(value))


def test_imaginary_leak(pipeline):
    _, spectrum, _, embryo = pipeline("example1", 10)
    coeffs = embryo.series.coeffs * (1 + 1j)
    twisted = Embryo(ComplexSeries(2, np.zeros(2), 10, coeffs))
    with pytest.raises(ImaginaryLeak):
        evaluate_real(twisted, spectrum, [0.2, 0.1])


def test_near_origin_matches_quadratic_form(pipeline):
    _, spectrum, _, embryo = pipeline("example1", 10)
    x = np.array([1e-4, -2e-4])
    assert evaluate_real(embryo, spectrum, x) == pytest.approx(
        (x @ x) / 6, rel=1e-3
    )


def test_shift_to_same_center(pipeline):
    _, _, _, embryo = pipeline("example3", 10)
    shifted = taylor_shift(embryo, np.zeros(2))
    assert shifted.generation == 1
    np.testing.assert_array_equal(shifted.series.coeffs, embryo.series.coeffs)


def test_shift_of_square():
    series = ComplexSeries.from_terms(1, {(2,): 1.0})
    shifted = taylor_shift(Embryo(series), [1.0])
    np.testing.assert_array_equal(shifted.series.coeffs, [1, 2, 1])
    np.testing.assert_array_equal(shifted.center, [1])


def test_shift_of_product():
    # z1 z2 around (a, b) is (w1 + a)(w2 + b)
    series = ComplexSeries.from_terms(2, {(1, 1): 1.0})
    shifted = taylor_shift(Embryo(series), [2.0, 3.0], generation=4)
    assert shifted.generation == 4
    assert shifted.series.to_dict() == {
        (0, 0): 6,
        (1, 0): 3,
        (0, 1): 2,
        (1, 1): 1,
    }


@pytest.mark.parametrize("name", EXAMPLES)
def test_shift_is_exact(pipeline, rng, name):
    field, spectrum, _, embryo = pipeline(name, 10)
    n = field.dim
    for _ in range(10):
        z0 = spectrum.to_eigen(rng.uniform(-0.5, 0.5, n))
        shifted = taylor_shift(embryo, z0)
        Z = rng.uniform(-0.5, 0.5, (100, n)) + 1j * rng.uniform(-0.5, 0.5, (100, n))
        before = embryo.evaluate_many(Z)
        after = shifted.evaluate_many(Z)
        assert np.all(np.abs(after - before) <= 1e-9 * (1 + np.abs(before)))


def test_shift_composition(pipeline):
    _, _, _, embryo = pipeline("example4", 10)
    a = np.array([0.1 + 0.05j, -0.2, 0.1 - 0.05j])
    b = np.array([-0.1, 0.15j, 0.2])
    twice = taylor_shift(taylor_shift(embryo, a), b)
    once = taylor_shift(embryo, b)
    assert twice.generation == 2
    error = np.abs(twice.series.coeffs - once.series.coeffs).max()
    assert error <= 1e-10 * (1 + once.series.max_abs())


def test_shift_center_size(pipeline):
    _, _, _, embryo = pipeline("example3", 10)
    with pytest.raises(ValueError):
        taylor_shift(embryo, [0.1, 0.2, 0.3])
    with pytest.raises(ValueError):
        taylor_shift(embryo, [0.1, 0.2], generation=0)


def test_embryo_json(pipeline):
    _, _, _, embryo = pipeline("example4", 10)
    shifted = taylor_shift(embryo, [0.1, 0.2 + 0.1j, 0.2 - 0.1j])
    for item in (embryo, shifted):
        again = Embryo.from_json(item.to_json())
        assert again.generation == item.generation
        assert again.degree == item.degree
        np.testing.assert_array_equal(again.center, item.center)
        np.testing.assert_array_equal(again.series.coeffs, item.series.coeffs)


def test_real_on_real_states_example4(pipeline, rng):
    field, spectrum, _, embryo = pipeline("example4", 20)
    X = rng.uniform(-0.3, 0.3, size=(100, field.dim))
    for x in X:
        value = evaluate_real(embryo, spectrum, x)
        z = spectrum.to_eigen(x)
        assert abs(evaluate(embryo, z).imag) <= 1e-12 * (1 + abs(value))
