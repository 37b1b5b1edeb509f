"""Exact linear algebra over the rationals and the Gaussian rationals.

Scalars are elements of a sympy ground domain: QQ in rational mode and QQ_I
in Gaussian mode.  Nothing in this module rounds.

Matrices and subspaces are small and dense.  The heavy lifting (reduced row
echelon form, determinants, inverses, products) is delegated to sympy's
DomainMatrix; this module adds the shapes used everywhere else: kernels,
solutions of linear systems, subspace lattice operations and minimal
polynomials.
"""

from __future__ import annotations

import functools
import logging
import math
import typing

from sympy.polys import domains
from sympy.polys import rings
from sympy.polys.matrices import DomainMatrix

QQ = domains.QQ
QQ_I = domains.QQ_I

MODES: dict[str, typing.Any] = {
    'rational': QQ,
    'gaussian': QQ_I,
}

Scalar: typing.TypeAlias = typing.Any
Vector: typing.TypeAlias = tuple[Scalar, ...]


class Error(Exception):
    """Base module exception."""


class DimensionMismatch(Error):
    """Shapes or ambient dimensions do not agree."""


class Singular(Error):
    """A matrix that must be invertible is not."""


class NotInSubspace(Error):
    """A vector is outside of the subspace it was looked up in."""


def domain_for(mode: str) -> typing.Any:
    """Map a scalar mode name onto its ground domain."""
    try:
        return MODES[mode]
    except KeyError:
        raise Error(f'unknown scalar mode: {mode}') from None


def mode_of(domain: typing.Any) -> str:
    """Inverse of domain_for()."""
    for name, value in MODES.items():
        if value == domain:
            return name
    raise Error(f'unsupported domain: {domain}')


def coerce(value: typing.Any, domain: typing.Any) -> Scalar:
    """Convert an int, a rational, or a domain element into the domain."""
    if domain.of_type(value):
        return value
    if domain == QQ_I:
        # The Gaussian constructor converts through its real base field.
        return QQ_I(value)
    return domain.convert(value)


def scalar(numerator: int, denominator: int = 1, domain=QQ) -> Scalar:
    """Build the rational numerator/denominator in the domain."""
    if not denominator:
        raise Error('zero denominator')
    return coerce(QQ(numerator, denominator), domain)


def gaussian(real: Scalar, imag: Scalar) -> Scalar:
    """Build real + imag*i."""
    return QQ_I(real, imag)


def real_part(value: Scalar) -> Scalar:
    """Real part of a scalar (the value itself in rational mode)."""
    if QQ_I.of_type(value):
        return value.x
    return value


def imag_part(value: Scalar) -> Scalar:
    """Imaginary part of a scalar (zero in rational mode)."""
    if QQ_I.of_type(value):
        return value.y
    return QQ.zero


def format_rational(value: Scalar) -> str:
    """Canonical text for a rational: "p" or "p/q" with q > 0."""
    numerator = int(value.numerator)
    denominator = int(value.denominator)
    if denominator == 1:
        return str(numerator)
    return f'{numerator}/{denominator}'


def format_scalar(value: Scalar) -> str:
    """Canonical text for a scalar.

    Gaussian rationals with a nonzero imaginary part print as "a+bi", "bi"
    or "i" shapes, e.g. "1/2-3i".
    """
    if not QQ_I.of_type(value):
        return format_rational(value)
    real, imag = value.x, value.y
    if not imag:
        return format_rational(real)
    mag = -imag if imag < 0 else imag
    imag_text = 'i' if mag == 1 else f'{format_rational(mag)}i'
    if not real:
        return f'-{imag_text}' if imag < 0 else imag_text
    sign = '-' if imag < 0 else '+'
    return f'{format_rational(real)}{sign}{imag_text}'


def rational_sqrt(value: Scalar) -> Scalar | None:
    """Exact square root of a nonnegative rational, if it is rational."""
    if value < 0:
        return None
    numerator = int(value.numerator)
    denominator = int(value.denominator)
    num_root = math.isqrt(numerator)
    den_root = math.isqrt(denominator)
    if (num_root * num_root == numerator
            and den_root * den_root == denominator):
        return QQ(num_root, den_root)
    return None


def zero_vector(size: int, domain=QQ) -> Vector:
    """All zeros."""
    return (domain.zero,) * size


def unit_vector(size: int, index: int, domain=QQ) -> Vector:
    """The standard basis vector e_index."""
    values = [domain.zero] * size
    values[index] = domain.one
    return tuple(values)


def is_zero_vector(vector: typing.Iterable[Scalar]) -> bool:
    """True if every entry vanishes."""
    return not any(vector)


def _rref(
    rows: typing.Sequence[typing.Sequence[Scalar]], ncols: int, domain
) -> tuple[list[list[Scalar]], tuple[int, ...]]:
    """Reduced row echelon form, trimmed to the pivot rows."""
    if not rows or not ncols:
        return list(), tuple()
    dm = DomainMatrix([list(row) for row in rows], (len(rows), ncols), domain)
    reduced, pivots = dm.rref()
    return reduced.to_list()[:len(pivots)], tuple(pivots)


class Matrix:
    """An immutable dense matrix with exact entries.

    Entries live in one ground domain.  Arithmetic round-trips through
    DomainMatrix; the canonical storage is a tuple of row tuples so that
    equality and hashing are structural.
    """

    __slots__ = ('_rows', '_ncols', '_domain')

    def __init__(
        self,
        rows: typing.Iterable[typing.Iterable[typing.Any]],
        domain=QQ,
        ncols: int | None = None
    ):
        self._domain = domain
        self._rows = tuple(
            tuple(coerce(value, domain) for value in row) for row in rows
        )
        if ncols is None:
            ncols = len(self._rows[0]) if self._rows else 0
        self._ncols = ncols
        for row in self._rows:
            if len(row) != ncols:
                raise DimensionMismatch(
                    f'row of length {len(row)} in a matrix with'
                    f' {ncols} columns'
                )

    @classmethod
    def identity(cls, size: int, domain=QQ) -> Matrix:
        """The size x size identity."""
        return cls(
            (unit_vector(size, i, domain) for i in range(size)), domain, size
        )

    @classmethod
    def zeros(cls, nrows: int, ncols: int, domain=QQ) -> Matrix:
        """The nrows x ncols zero matrix."""
        return cls(
            (zero_vector(ncols, domain) for _ in range(nrows)), domain, ncols
        )

    @classmethod
    def from_columns(
        cls,
        columns: typing.Sequence[typing.Sequence[typing.Any]],
        nrows: int,
        domain=QQ
    ) -> Matrix:
        """Assemble a matrix from its columns."""
        return cls(
            ((column[r] for column in columns) for r in range(nrows)),
            domain,
            len(columns),
        )

    @classmethod
    def from_flat(
        cls, size: int, values: typing.Sequence[typing.Any], domain=QQ
    ) -> Matrix:
        """Inverse of flatten() for a square matrix."""
        if len(values) != size * size:
            raise DimensionMismatch(
                f'{len(values)} values for a {size}x{size} matrix'
            )
        return cls(
            (values[r * size:(r + 1) * size] for r in range(size)), domain,
            size
        )

    @classmethod
    def _wrap(cls, dm: DomainMatrix) -> Matrix:
        nrows, ncols = dm.shape
        if not nrows or not ncols:
            return cls.zeros(nrows, ncols, dm.domain)
        return cls(dm.to_list(), dm.domain, ncols)

    def to_domain_matrix(self) -> DomainMatrix:
        """The sympy DomainMatrix with the same entries."""
        return DomainMatrix(
            [list(row) for row in self._rows], self.shape, self._domain
        )

    @property
    def domain(self):
        """The ground domain of the entries."""
        return self._domain

    @property
    def rows(self) -> tuple[Vector, ...]:
        """Entries, row by row."""
        return self._rows

    @property
    def columns(self) -> tuple[Vector, ...]:
        """Entries, column by column."""
        return tuple(
            tuple(row[c] for row in self._rows) for c in range(self._ncols)
        )

    @property
    def shape(self) -> tuple[int, int]:
        """(rows, columns)"""
        return len(self._rows), self._ncols

    @property
    def is_square(self) -> bool:
        """True for n x n matrices."""
        return len(self._rows) == self._ncols

    @property
    def is_zero(self) -> bool:
        """True if every entry vanishes."""
        return not any(any(row) for row in self._rows)

    def __getitem__(self, index: tuple[int, int]) -> Scalar:
        row, col = index
        return self._rows[row][col]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def __repr__(self) -> str:
        return f'Matrix({self.to_strings()})'

    def _check_same_shape(self, other: Matrix):
        if self.shape != other.shape:
            raise DimensionMismatch(f'{self.shape} versus {other.shape}')

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same_shape(other)
        return Matrix(
            (
                (a + b
                 for a, b in zip(mine, theirs))
                for mine, theirs in zip(self._rows, other._rows)
            ),
            self._domain,
            self._ncols,
        )

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def __neg__(self) -> Matrix:
        return Matrix(
            ((-value for value in row) for row in self._rows), self._domain,
            self._ncols
        )

    def __matmul__(self, other: Matrix) -> Matrix:
        if self._ncols != len(other._rows):
            raise DimensionMismatch(f'{self.shape} @ {other.shape}')
        if not all(self.shape) or not all(other.shape):
            return Matrix.zeros(len(self._rows), other._ncols, self._domain)
        return Matrix._wrap(
            self.to_domain_matrix() * other.to_domain_matrix()
        )

    def scaled(self, factor: typing.Any) -> Matrix:
        """factor * self"""
        factor = coerce(factor, self._domain)
        return Matrix(
            ((factor * value for value in row) for row in self._rows),
            self._domain, self._ncols
        )

    def power(self, exponent: int) -> Matrix:
        """self ** exponent for exponent >= 0."""
        result = Matrix.identity(self._ncols, self._domain)
        for _ in range(exponent):
            result = result @ self
        return result

    def commutator(self, other: Matrix) -> Matrix:
        """self @ other - other @ self"""
        return self @ other - other @ self

    def commutes_with(self, other: Matrix) -> bool:
        """True if the commutator vanishes."""
        return self.commutator(other).is_zero

    def transpose(self) -> Matrix:
        """Swap rows and columns."""
        return Matrix(self.columns, self._domain, len(self._rows))

    def apply(self, vector: typing.Sequence[Scalar]) -> Vector:
        """self @ vector for a plain vector."""
        if len(vector) != self._ncols:
            raise DimensionMismatch(
                f'vector of length {len(vector)} for {self.shape}'
            )
        zero = self._domain.zero
        return tuple(
            sum((a * b for a, b in zip(row, vector)), zero)
            for row in self._rows
        )

    def trace(self) -> Scalar:
        """Sum of the diagonal."""
        return sum(
            (self._rows[i][i] for i in range(len(self._rows))),
            self._domain.zero
        )

    def determinant(self) -> Scalar:
        """Exact determinant."""
        if not self.is_square:
            raise DimensionMismatch(f'determinant of {self.shape}')
        if not self._ncols:
            return self._domain.one
        return self.to_domain_matrix().det()

    def inverse(self) -> Matrix:
        """Exact inverse.

        Raises:
          Singular: The determinant is zero.
        """
        if not self.determinant():
            raise Singular(repr(self))
        if not self._ncols:
            return self
        return Matrix._wrap(self.to_domain_matrix().inv())

    def rank(self) -> int:
        """Number of pivots in the echelon form."""
        return len(_rref(self._rows, self._ncols, self._domain)[1])

    def flatten(self) -> Vector:
        """Entries in row major order."""
        return tuple(value for row in self._rows for value in row)

    def to_strings(self) -> list[list[str]]:
        """Entries as canonical strings, for reports."""
        return [[format_scalar(value) for value in row] for row in self._rows]


def kernel(m: Matrix) -> Subspace:
    """The null space {v : m v = 0}."""
    nrows, ncols = m.shape
    domain = m.domain
    reduced, pivots = _rref(m.rows, ncols, domain)
    pivot_set = set(pivots)
    vectors = list()
    for free in range(ncols):
        if free in pivot_set:
            continue
        values = [domain.zero] * ncols
        values[free] = domain.one
        for row, col in zip(reduced, pivots):
            values[col] = -row[free]
        vectors.append(values)
    logging.debug(
        'kernel of %dx%d: rank %d, nullity %d', nrows, ncols, len(pivots),
        len(vectors)
    )
    return Subspace(ncols, vectors, domain)


def solve(m: Matrix, rhs: typing.Sequence[typing.Any]) -> Vector | None:
    """One exact solution of m x = rhs, or None if the system is inconsistent.

    Free variables are set to zero.
    """
    nrows, ncols = m.shape
    if len(rhs) != nrows:
        raise DimensionMismatch(f'rhs of length {len(rhs)} for {m.shape}')
    domain = m.domain
    augmented = [
        list(row) + [coerce(value, domain)] for row, value in zip(m.rows, rhs)
    ]
    reduced, pivots = _rref(augmented, ncols + 1, domain)
    if ncols in pivots:
        return None
    solution = [domain.zero] * ncols
    for row, col in zip(reduced, pivots):
        solution[col] = row[ncols]
    return tuple(solution)


@functools.cache
def polynomial_ring(domain) -> rings.PolyRing:
    """The univariate ring K[t] that minimal polynomials live in."""
    return rings.PolyRing('t', domain)


def minimal_polynomial(m: Matrix) -> rings.PolyElement:
    """Monic generator of the annihilating ideal of a square matrix.

    Built from the Krylov sequence of each standard basis vector; the result
    is the least common multiple of the local minimal polynomials.
    """
    if not m.is_square:
        raise DimensionMismatch(f'minimal polynomial of {m.shape}')
    size = m.shape[0]
    domain = m.domain
    ring = polynomial_ring(domain)
    t = ring.gens[0]
    result = ring.one
    for index in range(size):
        krylov = [unit_vector(size, index, domain)]
        while True:
            image = m.apply(krylov[-1])
            coords = solve(Matrix.from_columns(krylov, size, domain), image)
            if coords is not None:
                local = t**len(krylov)
                for power, coeff in enumerate(coords):
                    local -= coeff * t**power
                result = result.lcm(local)
                break
            krylov.append(image)
    return result.monic()


def polynomial_coefficients(poly: rings.PolyElement) -> list[Scalar]:
    """Coefficients from the constant term up to the leading one."""
    domain = poly.ring.domain
    if not poly:
        return list()
    coeffs = [domain.zero] * (poly.degree() + 1)
    for (power,), coeff in poly.terms():
        coeffs[power] = coeff
    return coeffs


def evaluate_polynomial(poly: rings.PolyElement, m: Matrix) -> Matrix:
    """poly(m), exactly."""
    size = m.shape[0]
    result = Matrix.zeros(size, size, m.domain)
    power = Matrix.identity(size, m.domain)
    for coeff in polynomial_coefficients(poly):
        if coeff:
            result = result + power.scaled(coeff)
        power = power @ m
    return result


def irreducible_factors(poly: rings.PolyElement) -> list[rings.PolyElement]:
    """Distinct monic irreducible factors over the polynomial's domain."""
    _, factors = poly.factor_list()
    return [factor.monic() for factor, _ in factors if factor.degree() > 0]


def is_negative_definite(gram: Matrix) -> bool:
    """Exact test by the leading principal minors of -gram.

    Only meaningful for symmetric matrices over the rationals.
    """
    negated = -gram
    size = gram.shape[0]
    for order in range(1, size + 1):
        minor = Matrix((row[:order] for row in negated.rows[:order]),
                       gram.domain, order)
        if minor.determinant() <= 0:
            return False
    return True


class Subspace:
    """A subspace of K^ambient held by its reduced echelon basis.

    The echelon basis is canonical, so equal subspaces compare and hash
    equal no matter how they were spanned.
    """

    __slots__ = ('_ambient', '_domain', '_basis', '_pivots')

    def __init__(
        self,
        ambient: int,
        vectors: typing.Iterable[typing.Sequence[typing.Any]] = (),
        domain=QQ
    ):
        self._ambient = ambient
        self._domain = domain
        rows = list()
        for vector in vectors:
            if len(vector) != ambient:
                raise DimensionMismatch(
                    f'vector of length {len(vector)} in K^{ambient}'
                )
            row = tuple(coerce(value, domain) for value in vector)
            if any(row):
                rows.append(row)
        reduced, pivots = _rref(rows, ambient, domain)
        self._basis = tuple(tuple(row) for row in reduced)
        self._pivots = pivots

    @classmethod
    def full(cls, ambient: int, domain=QQ) -> Subspace:
        """All of K^ambient."""
        units = (unit_vector(ambient, i, domain) for i in range(ambient))
        return cls(ambient, units, domain)

    @property
    def ambient(self) -> int:
        """Dimension of the surrounding space."""
        return self._ambient

    @property
    def domain(self):
        """The ground domain."""
        return self._domain

    @property
    def basis(self) -> tuple[Vector, ...]:
        """Reduced echelon basis rows."""
        return self._basis

    @property
    def pivots(self) -> tuple[int, ...]:
        """Pivot column of each basis row."""
        return self._pivots

    @property
    def dim(self) -> int:
        """Dimension."""
        return len(self._basis)

    @property
    def is_zero(self) -> bool:
        """True for the zero subspace."""
        return not self._basis

    @property
    def is_full(self) -> bool:
        """True for the whole ambient space."""
        return len(self._basis) == self._ambient

    def _check_ambient(self, other: Subspace):
        if self._ambient != other._ambient:
            raise DimensionMismatch(
                f'K^{self._ambient} versus K^{other._ambient}'
            )

    def reduce(self, vector: typing.Sequence[typing.Any]) -> Vector:
        """The remainder of vector after eliminating the pivot columns."""
        if len(vector) != self._ambient:
            raise DimensionMismatch(
                f'vector of length {len(vector)} in K^{self._ambient}'
            )
        remainder = [coerce(value, self._domain) for value in vector]
        for row, col in zip(self._basis, self._pivots):
            factor = remainder[col]
            if factor:
                for index, value in enumerate(row):
                    if value:
                        remainder[index] -= factor * value
        return tuple(remainder)

    def __contains__(self, vector: typing.Sequence[typing.Any]) -> bool:
        return not any(self.reduce(vector))

    def coordinates(self, vector: typing.Sequence[typing.Any]) -> Vector:
        """Coefficients of vector on the echelon basis.

        Raises:
          NotInSubspace: The vector is not in the span.
        """
        if vector not in self:
            raise NotInSubspace(
                f'{[format_scalar(v) for v in vector]} is not in the span'
            )
        return tuple(
            coerce(vector[col], self._domain) for col in self._pivots
        )

    def combine(self, coords: typing.Sequence[typing.Any]) -> Vector:
        """Inverse of coordinates()."""
        if len(coords) != len(self._basis):
            raise DimensionMismatch(
                f'{len(coords)} coordinates for dimension {self.dim}'
            )
        result = [self._domain.zero] * self._ambient
        for coeff, row in zip(coords, self._basis):
            coeff = coerce(coeff, self._domain)
            if coeff:
                for index, value in enumerate(row):
                    result[index] += coeff * value
        return tuple(result)

    def __add__(self, other: Subspace) -> Subspace:
        self._check_ambient(other)
        return Subspace(
            self._ambient, self._basis + other._basis, self._domain
        )

    def annihilator(self) -> Subspace:
        """{w : <v, w> = 0 for every v in self} with the bilinear pairing."""
        if not self._basis:
            return Subspace.full(self._ambient, self._domain)
        return kernel(Matrix(self._basis, self._domain, self._ambient))

    def __and__(self, other: Subspace) -> Subspace:
        self._check_ambient(other)
        return (self.annihilator() + other.annihilator()).annihilator()

    def __le__(self, other: Subspace) -> bool:
        self._check_ambient(other)
        return all(row in other for row in self._basis)

    def __lt__(self, other: Subspace) -> bool:
        return self <= other and self.dim < other.dim

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self._ambient == other._ambient and self._basis == other._basis
        )

    def __hash__(self) -> int:
        return hash((self._ambient, self._basis))

    def __repr__(self) -> str:
        rows = [[format_scalar(v) for v in row] for row in self._basis]
        return f'Subspace({self._ambient}, {rows})'
