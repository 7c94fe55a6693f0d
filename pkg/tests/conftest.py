# -*- coding: utf-8 -*-

"""Fixtures for testing the lyapunov_da package."""

import numpy as np
import pytest

from lyapunov_da import (
    compute_coefficients,
    diagonalize,
    jacobian_at_origin,
    load_system,
    parse_system,
    transform_field,
)
from lyapunov_da.parameters import bundled_system

EXAMPLES = ("example1", "example2", "example3", "example4")


@pytest.fixture(scope="session")
def fields():
    """The bundled example systems, by name."""
    return {name: load_system(bundled_system(name)) for name in EXAMPLES}


@pytest.fixture(scope="session")
def pipeline(fields):
    """A function giving (field, spectrum, transformed field, embryo).

    Results are cached for the session since the higher degrees take a while.
    """
    cache = {}

    def build(name, p):
        key = (name, p)
        if key not in cache:
            field = fields[name]
            spectrum = diagonalize(jacobian_at_origin(field))
            tf = transform_field(field, spectrum)
            embryo = compute_coefficients(tf, spectrum, p)
            cache[key] = (field, spectrum, tf, embryo)
        return cache[key]

    return build


@pytest.fixture(scope="session")
def decay():
    """The one-dimensional system dx/dt = -x."""
    return parse_system("dx1 = -x1\n")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
