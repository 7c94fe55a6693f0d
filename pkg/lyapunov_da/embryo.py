# -*- coding: utf-8 -*-

"""The truncated series of the Lyapunov function in eigencoordinates.

W solves <grad W, g> = -z^T c z with W(0) = 0 and grad W(0) = 0. Its
coefficients are computed degree by degree: the quadratic block from the
eigenvalues and c, and every higher block from lower ones and the nonlinear
coefficients of g.
"""

from dataclasses import dataclass
import json
import logging

import numpy as np

from .field_model import (
    ComplexSeries,
    check_size,
    graded_table,
    grlex_rank,
    poly_add,
    poly_derivative,
    poly_eval,
    poly_eval_many,
    poly_multiply,
)

logger = logging.getLogger(__name__)

REALNESS_TOLERANCE = 1.0e-6


class ImaginaryLeak(RuntimeError):
    """A value that must be real on the real slice has an imaginary part."""

    def __init__(self, value, x=None):
        self.value = complex(value)
        self.x = x
        super().__init__(
            "W(S^-1 x) = {:.6g} is not real; the eigenvector pairing is "
            "inconsistent".format(self.value)
        )


@dataclass(frozen=True, eq=False)
class Embryo:
    """A truncated power series W_p around some center.

    Attributes
    ----------
    series : ComplexSeries
        The coefficients, centered at the expansion point.
    generation : int
        0 for the expansion at the origin, k for centers chosen in growth
        step k.
    """

    series: ComplexSeries
    generation: int = 0

    def __post_init__(self):
        if self.generation < 0:
            raise ValueError("The generation must be non-negative")
        if self.generation == 0:
            if np.any(self.series.center != 0):
                raise ValueError("A generation-0 embryo is centered at the origin")
            if self.series.maxdeg >= 0 and np.any(self.series.coeffs[: self._low()]):
                raise ValueError("A generation-0 embryo has no terms of degree < 2")

    def _low(self):
        offsets = self.series.offsets
        return int(offsets[min(2, self.series.maxdeg + 1)])

    @property
    def dim(self):
        return self.series.dim

    @property
    def degree(self):
        return self.series.maxdeg

    @property
    def center(self):
        return self.series.center

    def evaluate(self, z):
        """W at one complex point."""
        return poly_eval(self.series, z)

    def evaluate_many(self, Z):
        return poly_eval_many(self.series, Z)

    def to_dict(self):
        exponents, coeffs = self.series.support()
        return {
            "n": self.dim,
            "p": self.degree,
            "generation": self.generation,
            "center": [[float(c.real), float(c.imag)] for c in self.center],
            "coeffs": [
                {"j": [int(e) for e in j], "re": float(b.real), "im": float(b.imag)}
                for j, b in zip(exponents, coeffs)
            ],
        }

    @classmethod
    def from_dict(cls, data):
        n = int(data["n"])
        p = int(data["p"])
        center = np.array([complex(re, im) for re, im in data["center"]])
        terms = {tuple(t["j"]): complex(t["re"], t["im"]) for t in data["coeffs"]}
        series = ComplexSeries.from_terms(n, terms, maxdeg=p, center=center)
        return cls(series, int(data["generation"]))

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def compute_coefficients(tf, spectrum, p):
    """The generation-0 embryo of degree p.

    Parameters
    ----------
    tf : TransformedField
        The field in eigencoordinates.
    spectrum : Spectrum
        The eigenvalues used for the denominators.
    p : int
        Truncation degree, 2 <= p <= 60.

    Returns
    -------
    Embryo
    """
    n = spectrum.dim
    if p < 2:
        raise ValueError("The degree must be at least 2, not {}".format(p))
    check_size(n, p)
    exponents, offsets = graded_table(n, p)
    lam = spectrum.eigenvalues
    largest = lam.real.max()
    if largest >= 0:
        raise RuntimeError("The eigenvalues are not all in the left half-plane")

    denominators = exponents @ lam
    if denominators[offsets[2] :].real.max() > 2 * largest:
        raise RuntimeError(
            "A recurrence denominator has real part above 2 max Re(lambda)"
        )

    coeffs = np.zeros(exponents.shape[0], dtype=complex)

    # Quadratic block: q_j = c_pp for j = 2 e_p and 2 c_pq for j = e_p + e_q.
    c = tf.rhs_form
    for a in range(n):
        for b in range(a, n):
            j = [0] * n
            j[a] += 1
            j[b] += 1
            position = grlex_rank(j)
            q = c[a, a] if a == b else 2 * c[a, b]
            coeffs[position] = -q / denominators[position]

    support = [series.support(min_degree=2) for series in tf.g]
    for m in range(3, p + 1):
        start, stop = offsets[m], offsets[m + 1]
        J = exponents[start:stop]
        total = np.zeros(stop - start, dtype=complex)
        for i, (b_exponents, b_coeffs) in enumerate(support):
            for k, b in zip(b_exponents, b_coeffs):
                if k.sum() > m - 1:
                    break
                shifted = J - k
                shifted[:, i] += 1
                rows = np.nonzero((shifted >= 0).all(axis=1) & (shifted[:, i] > 0))[0]
                if rows.size == 0:
                    continue
                lookup = coeffs[grlex_rank(shifted[rows])]
                total[rows] += b * shifted[rows, i] * lookup
        coeffs[start:stop] = -total / denominators[start:stop]

    series = ComplexSeries(n, np.zeros(n, dtype=complex), p, coeffs)
    logger.debug(
        "Computed {} coefficients of degree <= {}, max |B| = {:.3g}".format(
            coeffs.size, p, series.max_abs()
        )
    )
    return Embryo(series, 0)


def pde_residual(embryo, tf, p=None):
    """The largest coefficient of <grad W, g> + z^T c z up to degree p.

    The product is formed with sparse polynomial arithmetic, independently of
    the recurrence in compute_coefficients.
    """
    if p is None:
        p = embryo.degree
    n = embryo.dim
    W = embryo.series.to_dict()
    total = {}
    for i in range(n):
        gradient = poly_derivative(W, i)
        g = tf.g[i].to_dict()
        total = poly_add(total, poly_multiply(gradient, g, maxdeg=p))
    c = tf.rhs_form
    for a in range(n):
        for b in range(n):
            j = [0] * n
            j[a] += 1
            j[b] += 1
            if p >= 2:
                key = tuple(j)
                total[key] = total.get(key, 0) + c[a, b]
    return max((abs(v) for v in total.values()), default=0.0)


def evaluate(embryo, z):
    """The embryo's value at a complex point."""
    return embryo.evaluate(z)


def evaluate_real(embryo, spectrum, x):
    """The embryo's value at the real state x, mapped by z = S^-1 x.

    Raises
    ------
    ImaginaryLeak
        If the imaginary part exceeds 1e-6 (1 + |real part|).
    """
    x = np.asarray(x, dtype=float)
    value = embryo.evaluate(spectrum.to_eigen(x))
    if abs(value.imag) > REALNESS_TOLERANCE * (1 + abs(value.real)):
        raise ImaginaryLeak(value, x)
    return value.real


def taylor_shift(embryo, z0, generation=None):
    """Re-expand the embryo's polynomial around a new center.

    Each variable in turn is shifted with the Horner scheme applied to all
    rows sharing the other exponents, so the result is the same polynomial
    written in powers of (z - z0). The degree is unchanged.

    Parameters
    ----------
    embryo : Embryo
    z0 : array_like
        The new complex center.
    generation : int, optional
        The generation of the result; embryo.generation + 1 by default.

    Returns
    -------
    Embryo
    """
    series = embryo.series
    n, p = series.dim, series.maxdeg
    z0 = np.asarray(z0, dtype=complex).reshape(-1)
    if z0.shape != (n,):
        raise ValueError("The new center needs {} components".format(n))
    if generation is None:
        generation = embryo.generation + 1
    exponents = series.exponents
    coeffs = series.coeffs.copy()
    offset = z0 - series.center
    for i in range(n):
        s = offset[i]
        if s == 0:
            continue
        others = exponents.copy()
        others[:, i] = 0
        groups, labels = np.unique(others, axis=0, return_inverse=True)
        labels = labels.reshape(-1)
        table = np.zeros((groups.shape[0], p + 1), dtype=complex)
        table[labels, exponents[:, i]] = coeffs
        for start in range(p):
            for k in range(p - 1, start - 1, -1):
                table[:, k] += s * table[:, k + 1]
        coeffs = table[labels, exponents[:, i]]

    if generation == 0 and np.any(z0 != 0):
        raise ValueError("A shifted embryo cannot be generation 0")
    shifted = ComplexSeries(n, z0, p, coeffs)
    return Embryo(shifted, generation)
