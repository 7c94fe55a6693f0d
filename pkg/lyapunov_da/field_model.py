# -*- coding: utf-8 -*-

"""Polynomial vector fields and graded multi-index arithmetic.

Multi-indices are ordered graded-lexicographically: by total degree, and within
one degree by descending first exponent, then descending second exponent, and
so on. For n = 2 and degree 2 this gives (2, 0), (1, 1), (0, 2). Every dense
coefficient table in the package uses this order.
"""

from dataclasses import dataclass
import functools
import logging
import math
from pathlib import Path
import re

import numpy as np
import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)

logger = logging.getLogger(__name__)

MAX_DIMENSION = 6
MAX_DEGREE = 60

# Large enough for every binomial needed by the ranking of indices up to
# MAX_DEGREE in MAX_DIMENSION variables, with room for shifted intermediates.
_BINOMIAL_SIZE = 2 * (MAX_DEGREE + MAX_DIMENSION) + 2
_BINOMIAL = np.array(
    [
        [math.comb(a, b) for b in range(MAX_DIMENSION + 1)]
        for a in range(_BINOMIAL_SIZE)
    ],
    dtype=np.int64,
)


class SystemDefinitionError(ValueError):
    """A system definition that cannot be turned into a polynomial field.

    Parameters
    ----------
    message : str
        What is wrong.
    line : int, optional
        The 1-based line of the document where the problem is.
    column : int, optional
        The 1-based column within that line.
    """

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        if line is None:
            text = message
        elif column is None:
            text = "line {}: {}".format(line, message)
        else:
            text = "line {}, column {}: {}".format(line, column, message)
        super().__init__(text)


def check_size(n, p):
    """Reject dimensions and degrees beyond what the dense tables support."""
    if n < 1 or n > MAX_DIMENSION:
        raise ValueError(
            "The dimension must be between 1 and {}, not {}".format(MAX_DIMENSION, n)
        )
    if p < 0 or p > MAX_DEGREE:
        raise ValueError(
            "The degree must be between 0 and {}, not {}".format(MAX_DEGREE, p)
        )


def n_monomials(n, m):
    """The number of multi-indices in n variables with total degree m."""
    if m < 0:
        return 0
    return math.comb(n + m - 1, n - 1)


def n_monomials_up_to(n, p):
    """The number of multi-indices in n variables with total degree at most p."""
    if p < 0:
        return 0
    return math.comb(n + p, n)


def _multiindices(n, m):
    if n == 1:
        yield (m,)
        return
    for first in range(m, -1, -1):
        for rest in _multiindices(n - 1, m - first):
            yield (first,) + rest


@functools.lru_cache(maxsize=None)
def _enumeration(n, m):
    return tuple(_multiindices(n, m))


def enumerate_multiindices(n, m):
    """All multi-indices of n variables with total degree m, in graded-lex order.

    Parameters
    ----------
    n : int
        The number of variables, n >= 1.
    m : int
        The total degree, m >= 0.

    Returns
    -------
    [tuple]
        C(n+m-1, n-1) distinct exponent tuples.
    """
    if n < 1:
        raise ValueError("The dimension must be at least 1, not {}".format(n))
    if m < 0:
        raise ValueError("The degree must be non-negative, not {}".format(m))
    return list(_enumeration(n, m))


@functools.lru_cache(maxsize=None)
def graded_table(n, p):
    """The dense exponent table of all indices of degree 0 ... p.

    Returns
    -------
    exponents : numpy.ndarray
        Integer array of shape (C(n+p, n), n), degree blocks in ascending
        order and graded-lex within each block.
    offsets : numpy.ndarray
        offsets[m] is the row where the degree-m block starts; offsets[p + 1]
        is the number of rows.
    """
    check_size(n, p)
    rows = []
    offsets = [0]
    for m in range(p + 1):
        block = _enumeration(n, m)
        rows.extend(block)
        offsets.append(offsets[-1] + len(block))
    exponents = np.array(rows, dtype=np.int64).reshape(-1, n)
    offsets = np.array(offsets, dtype=np.int64)
    exponents.flags.writeable = False
    offsets.flags.writeable = False
    return exponents, offsets


def grlex_rank(exponents):
    """Positions of multi-indices in the dense graded table.

    Parameters
    ----------
    exponents : array_like
        A single index of length n or an array of shape (N, n).

    Returns
    -------
    int or numpy.ndarray
        The row of each index in graded_table(n, p) for any p at least as large
        as its degree.
    """
    J = np.asarray(exponents, dtype=np.int64)
    single = J.ndim == 1
    J = np.atleast_2d(J)
    n = J.shape[1]
    degree = J.sum(axis=1)
    # Number of indices of lower degree: C(n + m - 1, n)
    rank = _BINOMIAL[degree + n - 1, n] if n > 0 else np.zeros_like(degree)
    remaining = degree.copy()
    for i in range(n - 1):
        # Indices in this block that precede J because their i-th exponent is
        # larger, given equal leading exponents.
        rank = rank + _BINOMIAL[remaining - J[:, i] + n - i - 2, n - i - 1]
        remaining = remaining - J[:, i]
    if single:
        return int(rank[0])
    return rank


def monomials(points, exponents):
    """The monomials z^j for every point and every index.

    Parameters
    ----------
    points : numpy.ndarray
        Array of shape (N, n), real or complex.
    exponents : numpy.ndarray
        Integer array of shape (T, n).

    Returns
    -------
    numpy.ndarray
        Array of shape (N, T) with entry [a, b] = prod_k points[a, k]**exponents[b, k].
    """
    points = np.atleast_2d(points)
    if np.iscomplexobj(points):
        points = points.astype(complex)
    else:
        points = points.astype(float)
    result = np.ones((points.shape[0], exponents.shape[0]), dtype=points.dtype)
    if exponents.shape[0] == 0:
        return result
    degree = int(exponents.max())
    for k in range(points.shape[1]):
        powers = np.ones((points.shape[0], degree + 1), dtype=points.dtype)
        for e in range(1, degree + 1):
            powers[:, e] = powers[:, e - 1] * points[:, k]
        result *= powers[:, exponents[:, k]]
    return result


# Sparse polynomials are plain dicts {exponent tuple: coefficient}.


def poly_add(a, b, scale=1):
    """a + scale * b for sparse polynomials."""
    result = dict(a)
    for key, value in b.items():
        result[key] = result.get(key, 0) + scale * value
    return result


def poly_multiply(a, b, maxdeg=None):
    """The product of two sparse polynomials, optionally truncated."""
    result = {}
    for ka, va in a.items():
        da = sum(ka)
        for kb, vb in b.items():
            if maxdeg is not None and da + sum(kb) > maxdeg:
                continue
            key = tuple(x + y for x, y in zip(ka, kb))
            result[key] = result.get(key, 0) + va * vb
    return result


def poly_derivative(a, i):
    """The partial derivative of a sparse polynomial with respect to variable i."""
    result = {}
    for key, value in a.items():
        if key[i] == 0:
            continue
        lowered = list(key)
        lowered[i] -= 1
        result[tuple(lowered)] = value * key[i]
    return result


@dataclass(frozen=True, eq=False)
class ComplexSeries:
    """A truncated complex power series stored as a dense graded table.

    Attributes
    ----------
    dim : int
        The number of variables n.
    center : numpy.ndarray
        The complex expansion point, shape (n,).
    maxdeg : int
        The truncation degree; no term of higher degree is stored.
    coeffs : numpy.ndarray
        Complex coefficients aligned with graded_table(dim, maxdeg).
    """

    dim: int
    center: np.ndarray
    maxdeg: int
    coeffs: np.ndarray

    def __post_init__(self):
        check_size(self.dim, self.maxdeg)
        center = np.array(self.center, dtype=complex).reshape(-1)
        if center.shape != (self.dim,):
            raise ValueError(
                "The center has {} components for a series in {} variables".format(
                    center.size, self.dim
                )
            )
        coeffs = np.array(self.coeffs, dtype=complex).reshape(-1)
        size = n_monomials_up_to(self.dim, self.maxdeg)
        if coeffs.shape != (size,):
            raise ValueError(
                "Expected {} coefficients for degree {} in {} variables, got {}".format(
                    size, self.maxdeg, self.dim, coeffs.size
                )
            )
        center.flags.writeable = False
        coeffs.flags.writeable = False
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zeros(cls, dim, maxdeg, center=None):
        if center is None:
            center = np.zeros(dim, dtype=complex)
        return cls(dim, center, maxdeg, np.zeros(n_monomials_up_to(dim, maxdeg)))

    @classmethod
    def from_terms(cls, dim, terms, maxdeg=None, center=None):
        """Create a series from a {multi-index: coefficient} map.

        Terms of degree above maxdeg are dropped. If maxdeg is not given the
        degree of the highest term is used.
        """
        if maxdeg is None:
            maxdeg = max((sum(j) for j in terms), default=0)
        if center is None:
            center = np.zeros(dim, dtype=complex)
        coeffs = np.zeros(n_monomials_up_to(dim, maxdeg), dtype=complex)
        for j, value in terms.items():
            if len(j) != dim:
                raise ValueError("Index {} does not have {} entries".format(j, dim))
            if sum(j) <= maxdeg:
                coeffs[grlex_rank(j)] += value
        return cls(dim, center, maxdeg, coeffs)

    @property
    def exponents(self):
        return graded_table(self.dim, self.maxdeg)[0]

    @property
    def offsets(self):
        return graded_table(self.dim, self.maxdeg)[1]

    def block(self, m):
        """The coefficients of total degree m, in graded-lex order."""
        if m < 0 or m > self.maxdeg:
            return np.zeros(0, dtype=complex)
        offsets = self.offsets
        return self.coeffs[offsets[m] : offsets[m + 1]]

    def block_exponents(self, m):
        offsets = self.offsets
        return self.exponents[offsets[m] : offsets[m + 1]]

    def coefficient(self, j):
        """The coefficient of the index j; zero when not stored."""
        if len(j) != self.dim or min(j) < 0:
            raise ValueError("Invalid multi-index {}".format(j))
        if sum(j) > self.maxdeg:
            return 0j
        return complex(self.coeffs[grlex_rank(j)])

    def support(self, min_degree=0):
        """The nonzero terms of degree at least min_degree.

        Returns
        -------
        exponents : numpy.ndarray
        coeffs : numpy.ndarray
        """
        start = self.offsets[min(max(min_degree, 0), self.maxdeg + 1)]
        mask = self.coeffs[start:] != 0
        return self.exponents[start:][mask], self.coeffs[start:][mask]

    def to_dict(self):
        exponents, coeffs = self.support()
        return {tuple(int(e) for e in j): complex(b) for j, b in zip(exponents, coeffs)}

    def max_abs(self):
        if self.coeffs.size == 0:
            return 0.0
        return float(np.abs(self.coeffs).max())

    def __call__(self, z):
        return poly_eval(self, z)


def poly_eval_many(series, Z):
    """Evaluate a series at many points.

    Each point is written as w = t u with t the largest modulus among the
    components of w. The homogeneous blocks are summed at u, in graded-lex
    order, and combined by Horner's rule in t from the top degree down, so
    high powers never overflow and results do not depend on how points are
    batched.

    Parameters
    ----------
    series : ComplexSeries
    Z : array_like
        Complex points of shape (N, n).

    Returns
    -------
    numpy.ndarray
        Complex values, shape (N,).
    """
    Z = np.atleast_2d(np.asarray(Z, dtype=complex))
    W = Z - series.center
    scale = np.abs(W).max(axis=1)
    scale = np.where(scale > 0, scale, 1.0)
    U = W / scale[:, None]
    total = np.zeros(W.shape[0], dtype=complex)
    for m in range(series.maxdeg, -1, -1):
        total *= scale
        coeffs = series.block(m)
        if not coeffs.any():
            continue
        terms = monomials(U, series.block_exponents(m)) * coeffs
        for column in range(terms.shape[1]):
            total += terms[:, column]
    return total


def poly_eval(series, z):
    """Evaluate a series at a single complex point."""
    z = np.asarray(z, dtype=complex).reshape(1, -1)
    return complex(poly_eval_many(series, z)[0])


@dataclass(frozen=True, eq=False)
class PolyField:
    """A polynomial vector field dx/dt = f(x) with f(0) = 0.

    Attributes
    ----------
    dim : int
        The number of state variables.
    components : tuple of dict
        For each component, a map from exponent tuple to real coefficient.
    """

    dim: int
    components: tuple

    def __post_init__(self):
        if self.dim < 1 or self.dim > MAX_DIMENSION:
            raise SystemDefinitionError(
                "Dimension {} is outside 1..{}".format(self.dim, MAX_DIMENSION)
            )
        if len(self.components) != self.dim:
            raise SystemDefinitionError(
                "{} components given for a {}-dimensional system".format(
                    len(self.components), self.dim
                )
            )
        cleaned = []
        for i, component in enumerate(self.components):
            terms = {}
            for j, value in component.items():
                j = tuple(int(e) for e in j)
                if len(j) != self.dim or min(j) < 0:
                    raise SystemDefinitionError(
                        "Invalid exponent {} in component {}".format(j, i + 1)
                    )
                if sum(j) == 0 and value != 0:
                    raise SystemDefinitionError(
                        "Component {} has a constant term, so the origin is not a "
                        "steady state".format(i + 1)
                    )
                if value != 0:
                    terms[j] = float(value)
            cleaned.append(dict(sorted(terms.items(), key=lambda t: grlex_rank(t[0]))))
        object.__setattr__(self, "components", tuple(cleaned))

        exponents = sorted(
            {j for component in self.components for j in component}, key=grlex_rank
        )
        table = np.array(exponents, dtype=np.int64).reshape(-1, self.dim)
        matrix = np.zeros((len(exponents), self.dim))
        for i, component in enumerate(self.components):
            for row, j in enumerate(exponents):
                matrix[row, i] = component.get(j, 0.0)
        object.__setattr__(self, "_exponents", table)
        object.__setattr__(self, "_matrix", matrix)

    @property
    def degree(self):
        """The total degree of the field."""
        return max(
            (sum(j) for component in self.components for j in component), default=0
        )

    def evaluate(self, X):
        """Evaluate f at one point or at an (N, n) array of points."""
        X = np.asarray(X)
        single = X.ndim == 1
        values = monomials(np.atleast_2d(X), self._exponents) @ self._matrix
        return values[0] if single else values

    def component_series(self, i, maxdeg=None):
        """Component i as a ComplexSeries centered at the origin."""
        return ComplexSeries.from_terms(
            self.dim,
            self.components[i],
            maxdeg=self.degree if maxdeg is None else maxdeg,
        )


def jacobian_at_origin(field):
    """The matrix of degree-1 coefficients, A[i, k] = df_i/dx_k(0)."""
    A = np.zeros((field.dim, field.dim))
    for i, component in enumerate(field.components):
        for k in range(field.dim):
            unit = tuple(1 if e == k else 0 for e in range(field.dim))
            A[i, k] = component.get(unit, 0.0)
    return A


_TOKEN = re.compile(
    r"(?P<space>\s+)"
    r"|(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)"
    r"|(?P<name>[A-Za-z_]\w*)"
    r"|(?P<op>\*\*|[-+*^()])"
)
_DIM_LINE = re.compile(r"^\s*dim\s+(\S+)\s*$")
_COMPONENT_LINE = re.compile(r"^\s*dx(\d+)\s*=(.*)$")


def _check_expression(text, n, line_number, offset):
    """Tokenize and check the grammar of a right-hand side.

    Columns in errors are 1-based positions in the full line; offset is where
    the expression starts within the line.
    """
    position = 0
    expect_operand = True
    depth = []
    last = None
    while position < len(text):
        match = _TOKEN.match(text, position)
        column = offset + position + 1
        if match is None:
            raise SystemDefinitionError(
                "unexpected character '{}'".format(text[position]),
                line_number,
                column,
            )
        position = match.end()
        kind = match.lastgroup
        token = match.group(kind)
        if kind == "space":
            continue
        last = column
        if kind in ("number", "name") or token == "(":
            if not expect_operand:
                raise SystemDefinitionError(
                    "missing operator before '{}'".format(token), line_number, column
                )
            if kind == "name":
                variable = re.fullmatch(r"x(\d+)", token)
                if variable is None:
                    raise SystemDefinitionError(
                        "unknown name '{}'".format(token), line_number, column
                    )
                index = int(variable.group(1))
                if index < 1 or index > n:
                    raise SystemDefinitionError(
                        "variable {} used in a {}-dimensional system".format(token, n),
                        line_number,
                        column,
                    )
            if token == "(":
                depth.append(column)
            else:
                expect_operand = False
        elif token == ")":
            if expect_operand or not depth:
                raise SystemDefinitionError("unexpected ')'", line_number, column)
            depth.pop()
        elif token in ("+", "-"):
            expect_operand = True
        else:
            if expect_operand:
                raise SystemDefinitionError(
                    "unexpected '{}'".format(token), line_number, column
                )
            expect_operand = True
    if last is None:
        raise SystemDefinitionError("empty expression", line_number, offset + 1)
    if depth:
        raise SystemDefinitionError("unbalanced '('", line_number, depth[-1])
    if expect_operand:
        raise SystemDefinitionError(
            "expression ends with an operator", line_number, offset + len(text) + 1
        )


def _expand(text, symbols, line_number):
    expression = parse_expr(
        text,
        local_dict={str(s): s for s in symbols},
        transformations=standard_transformations + (convert_xor,),
    )
    try:
        polynomial = sympy.Poly(expression, *symbols)
    except sympy.PolynomialError:
        raise SystemDefinitionError(
            "the right-hand side is not a polynomial in {}".format(
                ", ".join(str(s) for s in symbols)
            ),
            line_number,
        )
    terms = {}
    for monomial, coefficient in polynomial.terms():
        if not coefficient.is_real:
            raise SystemDefinitionError("non-real coefficient", line_number)
        value = float(coefficient)
        if value != 0.0:
            terms[tuple(int(e) for e in monomial)] = value
    return terms


def parse_system(text):
    """Parse a system definition document into a PolyField.

    The document holds an optional ``dim n`` line followed by one line
    ``dx<i> = <polynomial>`` per component. ``#`` starts a comment. The
    right-hand sides use x1 ... xn, decimal numbers, ``+ - * ^ **`` and
    parentheses; they are expanded and like terms combined.

    Raises
    ------
    SystemDefinitionError
        On syntax errors (with line and column), constant terms, variables or
        components beyond the declared dimension, and non-polynomial terms.
    """
    dimension = None
    dimension_line = None
    equations = {}
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        match = _DIM_LINE.match(line)
        if match is not None:
            if dimension is not None or equations:
                raise SystemDefinitionError(
                    "'dim' must be given once, before the equations", line_number, 1
                )
            try:
                dimension = int(match.group(1))
            except ValueError:
                raise SystemDefinitionError(
                    "the dimension must be an integer",
                    line_number,
                    line.index("dim") + 5,
                )
            if dimension < 1 or dimension > MAX_DIMENSION:
                raise SystemDefinitionError(
                    "dimension {} is outside 1..{}".format(dimension, MAX_DIMENSION),
                    line_number,
                )
            dimension_line = line_number
            continue
        match = _COMPONENT_LINE.match(line)
        if match is None:
            column = len(line) - len(line.lstrip()) + 1
            raise SystemDefinitionError(
                "expected 'dx<i> = <polynomial>'", line_number, column
            )
        index = int(match.group(1))
        if index in equations:
            raise SystemDefinitionError(
                "dx{} is defined twice".format(index), line_number, 1
            )
        equations[index] = (line_number, match.start(2), match.group(2))

    if not equations:
        raise SystemDefinitionError("no equations found")
    if dimension is None:
        dimension = len(equations)
        if dimension > MAX_DIMENSION:
            raise SystemDefinitionError(
                "{} equations exceed the maximum dimension {}".format(
                    dimension, MAX_DIMENSION
                )
            )
    for index, (line_number, _, _) in equations.items():
        if index < 1 or index > dimension:
            raise SystemDefinitionError(
                "dx{} in a {}-dimensional system".format(index, dimension), line_number
            )
    missing = [i for i in range(1, dimension + 1) if i not in equations]
    if missing:
        raise SystemDefinitionError(
            "missing equations for {}".format(
                ", ".join("dx{}".format(i) for i in missing)
            ),
            dimension_line,
        )

    symbols = sympy.symbols(" ".join("x{}".format(i) for i in range(1, dimension + 1)))
    if dimension == 1:
        symbols = (symbols,)
    components = []
    for index in range(1, dimension + 1):
        line_number, offset, rhs = equations[index]
        _check_expression(rhs, dimension, line_number, offset)
        terms = _expand(rhs, symbols, line_number)
        if any(sum(j) == 0 for j in terms):
            raise SystemDefinitionError(
                "dx{} has a constant term; the origin must be a steady state".format(
                    index
                ),
                line_number,
            )
        components.append(terms)
    field = PolyField(dimension, tuple(components))
    logger.debug(
        "Parsed a {}-dimensional system of degree {}".format(dimension, field.degree)
    )
    return field


def _format_term(coefficient, j):
    factors = []
    for k, e in enumerate(j):
        if e == 1:
            factors.append("x{}".format(k + 1))
        elif e > 1:
            factors.append("x{}^{}".format(k + 1, e))
    return "{}*{}".format(repr(abs(coefficient)), "*".join(factors))


def serialize_system(field):
    """Write a system definition that parses back to the same coefficients."""
    lines = ["dim {}".format(field.dim)]
    for i, component in enumerate(field.components):
        text = ""
        for j, coefficient in component.items():
            sign = "-" if coefficient < 0 else "+"
            term = _format_term(coefficient, j)
            if not text:
                text = term if sign == "+" else "-" + term
            else:
                text += " {} {}".format(sign, term)
        lines.append("dx{} = {}".format(i + 1, text if text else "0"))
    return "\n".join(lines) + "\n"


def load_system(path):
    """Read and parse a system definition file."""
    path = Path(path)
    return parse_system(path.read_text(encoding="utf-8"))
