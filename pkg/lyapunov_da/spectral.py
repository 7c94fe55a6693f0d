# -*- coding: utf-8 -*-

"""Diagonalization of the linearization and the change to eigencoordinates.

The state x and the eigencoordinates z are related by x = S z, where the
columns of S are eigenvectors of A = df/dx(0). The transformed field is
g = S^-1 o f o S, whose linear part is diag(lambda).
"""

from dataclasses import dataclass
import json
import logging

import numpy as np
import scipy.linalg

from .field_model import (
    ComplexSeries,
    MAX_DIMENSION,
    poly_add,
    poly_multiply,
)

logger = logging.getLogger(__name__)

HURWITZ_TOLERANCE = 1.0e-12
MAX_CONDITION = 1.0e10
CLUSTER_TOLERANCE = 1.0e-8


class SpectralError(RuntimeError):
    """The linearization does not allow the eigenbasis construction."""


class NotHurwitz(SpectralError):
    """An eigenvalue of the linearization has a non-negative real part."""

    def __init__(self, eigenvalue):
        self.eigenvalue = complex(eigenvalue)
        super().__init__(
            "The origin is not exponentially stable: eigenvalue {:.6g} has real "
            "part >= {:g}".format(self.eigenvalue, -HURWITZ_TOLERANCE)
        )


class NotDiagonalizable(SpectralError):
    """The linearization has no well-conditioned eigenbasis."""

    def __init__(self, message, condition=None):
        self.condition = condition
        super().__init__(message)


def _complex_pairs(values):
    return [[float(v.real), float(v.imag)] for v in np.asarray(values).reshape(-1)]


def _from_pairs(pairs, shape):
    data = np.array(pairs, dtype=float).reshape(-1, 2)
    return (data[:, 0] + 1j * data[:, 1]).reshape(shape)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues and the eigenvector transform of the linearization.

    Attributes
    ----------
    eigenvalues : numpy.ndarray
        The complex eigenvalues, sorted by real part, then |imaginary part|,
        with the positive-imaginary member of a conjugate pair first.
    S : numpy.ndarray
        Complex matrix whose columns are unit eigenvectors, x = S z.
    S_inv : numpy.ndarray
        The inverse of S, z = S_inv x.
    """

    eigenvalues: np.ndarray
    S: np.ndarray
    S_inv: np.ndarray

    def __post_init__(self):
        for name in ("eigenvalues", "S", "S_inv"):
            value = np.array(getattr(self, name), dtype=complex)
            value.flags.writeable = False
            object.__setattr__(self, name, value)

    @property
    def dim(self):
        return self.eigenvalues.size

    def to_eigen(self, X):
        """z = S^-1 x for one point or an (N, n) array of points."""
        X = np.asarray(X)
        if X.ndim == 1:
            return self.S_inv @ X
        return X @ self.S_inv.T

    def to_state(self, Z):
        """x = S z for one point or an (N, n) array of points."""
        Z = np.asarray(Z)
        if Z.ndim == 1:
            return self.S @ Z
        return Z @ self.S.T

    def to_dict(self):
        return {
            "eigenvalues": _complex_pairs(self.eigenvalues),
            "S": [_complex_pairs(row) for row in self.S],
            "S_inv": [_complex_pairs(row) for row in self.S_inv],
        }

    @classmethod
    def from_dict(cls, data):
        n = len(data["eigenvalues"])
        return cls(
            _from_pairs(data["eigenvalues"], (n,)),
            _from_pairs(data["S"], (n, n)),
            _from_pairs(data["S_inv"], (n, n)),
        )

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def _canonical_phase(vector):
    """Scale a vector to unit length with its first nonzero entry real positive."""
    vector = vector / np.linalg.norm(vector)
    threshold = 1.0e-12 * np.abs(vector).max()
    for entry in vector:
        if abs(entry) > threshold:
            return vector * (np.conj(entry) / abs(entry))
    return vector


def _eigenspace_basis(A, value, dimension):
    """An orthonormal canonical basis of the eigenspace for a repeated eigenvalue.

    The basis is Gram-Schmidt applied to the projections of the standard basis
    vectors, so a scalar matrix gives the identity.
    """
    n = A.shape[0]
    space = scipy.linalg.null_space(A - value * np.eye(n), rcond=1.0e-7)
    if space.shape[1] < dimension:
        raise NotDiagonalizable(
            "The eigenvalue {:.6g} has multiplicity {} but only {} independent "
            "eigenvectors".format(value, dimension, space.shape[1])
        )
    if space.shape[1] > dimension:
        raise NotDiagonalizable(
            "The eigenvalues near {:.6g} are too close to separate".format(value)
        )
    projector = space @ space.conj().T
    basis = []
    for k in range(n):
        vector = projector[:, k].astype(complex)
        for u in basis:
            vector = vector - (u.conj() @ vector) * u
        norm = np.linalg.norm(vector)
        if norm > 1.0e-8:
            basis.append(_canonical_phase(vector / norm))
        if len(basis) == dimension:
            break
    return basis


def diagonalize(A):
    """Diagonalize a real Hurwitz matrix with a canonical eigenbasis.

    Parameters
    ----------
    A : array_like
        Real n x n matrix, n <= 6.

    Returns
    -------
    Spectrum

    Raises
    ------
    NotHurwitz
        If an eigenvalue has real part >= -1e-12.
    NotDiagonalizable
        If the matrix is defective or the eigenvector matrix has a condition
        number above 1e10.
    """
    A = np.array(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("The Jacobian must be a square matrix")
    n = A.shape[0]
    if n < 1 or n > MAX_DIMENSION:
        raise ValueError("The dimension must be between 1 and {}".format(MAX_DIMENSION))
    scale = max(float(np.abs(A).max()), np.finfo(float).tiny)

    values, vectors = scipy.linalg.eig(A)
    worst = values[np.argmax(values.real)]
    if worst.real >= -HURWITZ_TOLERANCE:
        raise NotHurwitz(worst)

    order = sorted(
        range(n),
        key=lambda i: (values[i].real, abs(values[i].imag), -values[i].imag),
    )
    values = values[order]
    vectors = vectors[:, order]

    eigenvalues = np.zeros(n, dtype=complex)
    S = np.zeros((n, n), dtype=complex)
    tolerance = CLUSTER_TOLERANCE * scale
    position = 0
    while position < n:
        value = values[position]
        end = position + 1
        while end < n and abs(values[end] - value) <= tolerance:
            end += 1
        size = end - position
        if size == n and np.array_equal(A, A[0, 0] * np.eye(n)):
            eigenvalues[:] = A[0, 0]
            S = np.eye(n, dtype=complex)
            break

        if size == 1:
            vector = vectors[:, position]
            if abs(value.imag) <= tolerance:
                value = complex(value.real, 0.0)
                vector = vector.real.astype(complex)
            basis = [_canonical_phase(vector)]
        else:
            value = values[position:end].mean()
            if abs(value.imag) <= tolerance:
                value = complex(value.real, 0.0)
            basis = _eigenspace_basis(A, value, size)
        for k, vector in enumerate(basis):
            eigenvalues[position + k] = value
            S[:, position + k] = vector

        if value.imag == 0:
            position = end
            continue

        # A complex cluster is followed by its conjugate partner.
        partner = values[end : end + size]
        if partner.size != size or np.abs(partner - np.conj(value)).max() > tolerance:
            raise NotDiagonalizable(
                "The eigenvalue {:.6g} has no conjugate partner".format(value)
            )
        for k in range(size):
            eigenvalues[end + k] = np.conj(value)
            S[:, end + k] = np.conj(S[:, position + k])
        position = end + size

    condition = np.linalg.cond(S)
    if not np.isfinite(condition) or condition > MAX_CONDITION:
        raise NotDiagonalizable(
            "The eigenvector matrix has condition number {:.3g}".format(condition),
            condition=condition,
        )
    S_inv = scipy.linalg.inv(S)
    # Rows of S_inv for a conjugate pair are conjugates of each other.
    for i in range(n - 1):
        if eigenvalues[i].imag > 0 and eigenvalues[i + 1] == np.conj(eigenvalues[i]):
            S_inv[i + 1] = np.conj(S_inv[i])

    identity_error = np.abs(S @ S_inv - np.eye(n)).max()
    if identity_error > 1.0e-10 * np.abs(S).max():
        raise NotDiagonalizable(
            "S * S_inv differs from I by {:.3g}".format(identity_error),
            condition=condition,
        )
    diagonal_error = np.abs(S_inv @ A @ S - np.diag(eigenvalues)).max()
    if diagonal_error > 1.0e-8 * scale:
        raise NotDiagonalizable(
            "S_inv A S differs from diag(lambda) by {:.3g}".format(diagonal_error),
            condition=condition,
        )

    logger.debug(
        "Eigenvalues {} with eigenvector condition number {:.3g}".format(
            eigenvalues, condition
        )
    )
    return Spectrum(eigenvalues, S, S_inv)


def rhs_quadratic(spectrum):
    """The matrix c with c[p, q] = sum_i S[i, p] S[i, q].

    The bilinear form z^T c z equals |x|^2 for real x = S z. The upper
    triangle is computed and mirrored so that c is exactly symmetric.
    """
    S = spectrum.S
    n = S.shape[0]
    c = np.zeros((n, n), dtype=complex)
    for p in range(n):
        for q in range(p, n):
            value = np.sum(S[:, p] * S[:, q])
            c[p, q] = value
            c[q, p] = value
    return c


@dataclass(frozen=True, eq=False)
class TransformedField:
    """The field in eigencoordinates and the right-hand-side quadratic form.

    Attributes
    ----------
    g : tuple of ComplexSeries
        g[i] has linear part lambda_i z_i.
    rhs_form : numpy.ndarray
        The symmetric matrix from rhs_quadratic.
    """

    g: tuple
    rhs_form: np.ndarray

    @property
    def dim(self):
        return len(self.g)

    def evaluate(self, z):
        return np.array([series(z) for series in self.g])


def transform_field(field, spectrum):
    """Substitute x = S z into f and multiply by S^-1.

    Parameters
    ----------
    field : PolyField
    spectrum : Spectrum
        The diagonalization of the field's Jacobian.

    Returns
    -------
    TransformedField
    """
    n = field.dim
    if spectrum.dim != n:
        raise ValueError("The spectrum does not match the field's dimension")
    S = spectrum.S
    units = [tuple(1 if e == k else 0 for e in range(n)) for k in range(n)]

    # x_i = sum_p S[i, p] z_p, and powers of it as needed
    linear = [{units[p]: S[i, p] for p in range(n) if S[i, p] != 0} for i in range(n)]
    powers = [[{tuple([0] * n): 1.0 + 0j}] for _ in range(n)]

    def power(i, e):
        while len(powers[i]) <= e:
            powers[i].append(poly_multiply(powers[i][-1], linear[i]))
        return powers[i][e]

    substituted = []
    for component in field.components:
        total = {}
        for j, coefficient in component.items():
            term = {tuple([0] * n): coefficient + 0j}
            for i, e in enumerate(j):
                if e > 0:
                    term = poly_multiply(term, power(i, e))
            total = poly_add(total, term)
        substituted.append(total)

    degree = max(field.degree, 1)
    g = []
    for i in range(n):
        total = {}
        for k in range(n):
            if spectrum.S_inv[i, k] != 0:
                total = poly_add(total, substituted[k], scale=spectrum.S_inv[i, k])
        g.append(ComplexSeries.from_terms(n, total, maxdeg=degree))

    # The linear block must be diagonal; then it is set to diag(lambda) exactly.
    scale = max(1.0, max(series.max_abs() for series in g))
    lam = spectrum.eigenvalues
    exact = []
    for i, series in enumerate(g):
        block = series.block(1)
        target = np.zeros(n, dtype=complex)
        # the degree-1 block lists e_0, e_1, ... in that order
        target[i] = lam[i]
        error = np.abs(block - target).max()
        if error > 1.0e-10 * scale * max(1.0, np.abs(lam).max()):
            raise RuntimeError(
                "The linear part of g_{} is not lambda_{} z_{}: error {:.3g}".format(
                    i + 1, i + 1, i + 1, error
                )
            )
        coeffs = series.coeffs.copy()
        offsets = series.offsets
        coeffs[offsets[1] : offsets[2]] = target
        coeffs[0] = 0.0
        exact.append(ComplexSeries(n, series.center, series.maxdeg, coeffs))

    logger.debug("Transformed the field to eigencoordinates")
    return TransformedField(tuple(exact), rhs_quadratic(spectrum))
