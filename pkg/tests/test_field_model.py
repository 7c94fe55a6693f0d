#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""Tests for the multi-index tables, series and system parsing."""

import math

import numpy as np
import pytest

from lyapunov_da import (
    ComplexSeries,
    PolyField,
    SystemDefinitionError,
    enumerate_multiindices,
    grlex_rank,
    jacobian_at_origin,
    parse_system,
    poly_eval,
    poly_eval_many,
    serialize_system,
)
from lyapunov_da.field_model import (
    check_size,
    graded_table,
    monomials,
    n_monomials_up_to,
    poly_derivative,
    poly_multiply,
)


def test_enumeration_order():
    assert enumerate_multiindices(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert enumerate_multiindices(3, 2) == [
        (2, 0, 0),
        (1, 1, 0),
        (1, 0, 1),
        (0, 2, 0),
        (0, 1, 1),
        (0, 0, 2),
    ]
    assert enumerate_multiindices(4, 0) == [(0, 0, 0, 0)]


@pytest.mark.parametrize("n, m", [(1, 7), (2, 5), (3, 4), (6, 3)])
def test_enumeration_count(n, m):
    indices = enumerate_multiindices(n, m)
    assert len(indices) == math.comb(n + m - 1, n - 1)
    assert len(set(indices)) == len(indices)
    assert all(sum(j) == m and min(j) >= 0 for j in indices)


def test_enumeration_errors():
    with pytest.raises(ValueError):
        enumerate_multiindices(0, 2)
    with pytest.raises(ValueError):
        enumerate_multiindices(2, -1)


@pytest.mark.parametrize("n, p", [(1, 10), (2, 12), (3, 8), (5, 4)])
def test_rank_matches_table(n, p):
    exponents, offsets = graded_table(n, p)
    assert exponents.shape == (n_monomials_up_to(n, p), n)
    assert offsets[-1] == exponents.shape[0]
    np.testing.assert_array_equal(grlex_rank(exponents), np.arange(len(exponents)))
    assert grlex_rank(tuple(exponents[-1])) == len(exponents) - 1


def test_table_is_read_only():
    exponents, _ = graded_table(2, 3)
    with pytest.raises(ValueError):
        exponents[0, 0] = 1


def test_size_limits():
    check_size(6, 60)
    with pytest.raises(ValueError):
        check_size(7, 2)
    with pytest.raises(ValueError):
        check_size(2, 61)


def test_monomials():
    points = np.array([[2.0, 3.0], [-1.0, 0.5]])
    exponents = np.array([[0, 0], [1, 0], [2, 1], [0, 3]])
    expected = np.array([[1, 2, 12, 27], [1, -1, 0.5, 0.125]])
    np.testing.assert_allclose(monomials(points, exponents), expected)


def test_series_evaluation():
    series = ComplexSeries.from_terms(2, {(0, 0): 1, (1, 0): 2, (0, 2): 3})
    assert series.maxdeg == 2
    assert poly_eval(series, [1j, 2]) == pytest.approx(13 + 2j)
    assert series.coefficient((0, 2)) == 3
    assert series.coefficient((3, 0)) == 0


def test_series_evaluation_around_center(rng):
    terms = {(1, 1): 1.5 - 0.5j, (2, 0): 2.0, (0, 3): -1.0j}
    center = np.array([0.3 + 0.1j, -0.2])
    series = ComplexSeries.from_terms(2, terms, center=center)
    Z = rng.normal(size=(10, 2)) + 1j * rng.normal(size=(10, 2))
    W = Z - center
    expected = (
        (1.5 - 0.5j) * W[:, 0] * W[:, 1] + 2.0 * W[:, 0] ** 2 - 1.0j * W[:, 1] ** 3
    )
    np.testing.assert_allclose(poly_eval_many(series, Z), expected, rtol=1e-12)
    assert series(Z[3]) == pytest.approx(expected[3], rel=1e-12)


def test_series_evaluation_by_degree(rng):
    series = ComplexSeries.from_terms(2, {(60, 0): 1e-300, (1, 1): 2.0, (0, 0): 1.0})
    value = poly_eval(series, [1e6, 0.5])
    assert value == pytest.approx(1e60 + 1e6 + 1.0, rel=1e-12)

    Z = rng.normal(size=(9, 2)) + 1j * rng.normal(size=(9, 2))
    together = poly_eval_many(series, Z)
    apart = np.concatenate(
        [poly_eval_many(series, Z[:4]), poly_eval_many(series, Z[4:])]
    )
    np.testing.assert_array_equal(together, apart)
    assert poly_eval(series, [0, 0]) == 1.0


def test_series_validation():
    with pytest.raises(ValueError):
        ComplexSeries(2, [0, 0], 2, np.zeros(5))
    with pytest.raises(ValueError):
        ComplexSeries(2, [0], 2, np.zeros(6))
    series = ComplexSeries.zeros(3, 4)
    assert series.coeffs.size == 35
    with pytest.raises(ValueError):
        series.coeffs[0] = 1


def test_sparse_arithmetic():
    a = {(1, 0): 2.0, (0, 1): 1.0}
    b = {(1, 0): 1.0, (0, 0): -1.0}
    product = poly_multiply(a, b)
    assert product == {(2, 0): 2.0, (1, 0): -2.0, (1, 1): 1.0, (0, 1): -1.0}
    assert poly_multiply(a, b, maxdeg=1) == {(1, 0): -2.0, (0, 1): -1.0}
    assert poly_derivative(product, 0) == {(1, 0): 4.0, (0, 0): -2.0, (0, 1): 1.0}


def test_parse_example1(fields):
    field = fields["example1"]
    assert field.dim == 2
    assert field.degree == 3
    assert field.components[0] == {(1, 0): -3.0, (2, 0): -2.0, (3, 0): 1.0, (1, 2): 1.0}
    assert field.components[1] == {(0, 1): -3.0, (1, 1): -2.0, (2, 1): 1.0, (0, 3): 1.0}
    np.testing.assert_array_equal(jacobian_at_origin(field), -3 * np.eye(2))
    np.testing.assert_allclose(field.evaluate([1.0, 1.0]), [-3.0, -3.0])


def test_jacobians(fields):
    np.testing.assert_array_equal(jacobian_at_origin(fields["example2"]), -np.eye(3))
    np.testing.assert_array_equal(
        jacobian_at_origin(fields["example3"]), [[0, 1], [-2, -3]]
    )
    np.testing.assert_array_equal(
        jacobian_at_origin(fields["example4"]), [[0, 1, 0], [0, 0, 1], [-3, -3, -2]]
    )


def test_evaluate_many(fields, rng):
    field = fields["example3"]
    X = rng.uniform(-2, 2, size=(7, 2))
    values = field.evaluate(X)
    x1, x2 = X[:, 0], X[:, 1]
    expected = np.column_stack(
        (x2, -2 * x1 - 3 * x2 + x1**2 - x2**2 + x1 * x2)
    )
    np.testing.assert_allclose(values, expected, rtol=1e-12, atol=1e-12)


def test_parse_expands_and_infers_dimension():
    field = parse_system(
        "# comment line\n"
        "dx1 = -x1 + (x1 + x2)^2   # trailing comment\n"
        "dx2 = -2*x2 ** 1 - 0.5*x1*x2\n"
    )
    assert field.dim == 2
    assert field.components[0] == {(1, 0): -1.0, (2, 0): 1.0, (1, 1): 2.0, (0, 2): 1.0}
    assert field.components[1] == {(0, 1): -2.0, (1, 1): -0.5}


def test_syntax_error_position():
    with pytest.raises(SystemDefinitionError) as e:
        parse_system("dim 1\ndx1 = -x1 * * x1\n")
    assert e.value.line == 2
    assert e.value.column == 13
    assert "line 2, column 13" in str(e.value)


def test_unknown_variable():
    with pytest.raises(SystemDefinitionError) as e:
        parse_system("dim 1\ndx1 = -x1 + x2\n")
    assert e.value.line == 2
    assert e.value.column == 13


@pytest.mark.parametrize(
    "text",
    [
        "dx1 = 1 - x1\n",
        "dim 2\ndx1 = -x1\n",
        "dx1 = -x1\ndx1 = -2*x1\n",
        "dim 1\ndx2 = -x1\n",
        "dx1 = -x1^(-1)\n",
        "dx1 = -x1 / 2\n",
        "dx1 = (-x1\n",
        "dx1 =\n",
        "dim 7\n",
        "x1 = -x1\n",
        "",
    ],
)
def test_invalid_systems(text):
    with pytest.raises(SystemDefinitionError):
        parse_system(text)


def test_field_rejects_constant_term():
    with pytest.raises(SystemDefinitionError):
        PolyField(1, ({(0,): 1.0, (1,): -1.0},))


@pytest.mark.parametrize("name", ["example1", "example2", "example3", "example4"])
def test_serialize_round_trip(fields, name):
    field = fields[name]
    again = parse_system(serialize_system(field))
    assert again.dim == field.dim
    assert again.components == field.components


def test_serialize_fractional_coefficients():
    field = parse_system("dx1 = -0.25*x1 + 1.5*x1^2*x2\ndx2 = -x2 - 0.125*x1^3\n")
    text = serialize_system(field)
    assert text.startswith("dim 2\n")
    assert parse_system(text).components == field.components
