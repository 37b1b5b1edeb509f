"""Polynomial vector fields on K^n and their Lie algebra.

A field X = sum_j X^j d_j is held as a tuple of n polynomials from a sympy
PolyRing over the space's ground domain.  The coefficient map
(exponent multi-index, direction) -> scalar is the dict view of those
polynomials, so zero coefficients are never stored.

Directions and variables are 0-based here; the text form in fieldtext is
1-based.

The degree of a field is the coefficient degree minus one, so constants have
degree -1 and [euler, X] = p X for X homogeneous of degree p.
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
import logging
import math
import typing

from sympy.polys import rings

from vectpol import constants
from vectpol import exact

Key: typing.TypeAlias = tuple[tuple[int, ...], int]


class Error(Exception):
    """Base module exception."""


class SpaceMismatch(Error):
    """Fields from different spaces were combined."""


class DegreeLimitExceeded(Error):
    """A field would exceed the configured degree cap."""


class NotHomogeneous(Error):
    """A homogeneous field was required."""


class OddDimension(Error):
    """A symplectic structure needs an even dimensional space."""


class NotSymplectic(Error):
    """The matrix is not antisymmetric and invertible."""


@dataclasses.dataclass(frozen=True)
class SpaceDescriptor:
    """The space E = K^n and its scalar mode.

    Attributes:
      n: Dimension of E.
      mode: 'rational' (K = Q) or 'gaussian' (K = Q(i)).
      max_degree: Cap on field degrees; not part of the identity.
    """
    n: int
    mode: str = 'rational'
    max_degree: int = dataclasses.field(
        default=constants.DEFAULT_MAX_DEGREE, compare=False
    )

    def __post_init__(self):
        if self.n < 1:
            raise Error(f'space dimension must be positive, not {self.n}')
        if self.mode not in exact.MODES:
            raise Error(f'unknown scalar mode: {self.mode}')
        if self.max_degree < 0:
            raise Error(f'degree cap must be nonnegative: {self.max_degree}')

    @property
    def domain(self):
        """The ground domain of the scalars."""
        return exact.MODES[self.mode]

    @property
    def is_gaussian(self) -> bool:
        """True for complex mode."""
        return self.mode == 'gaussian'

    @functools.cached_property
    def ring(self) -> rings.PolyRing:
        """Polynomial ring K[x1, ..., xn]."""
        names = ','.join(f'x{i + 1}' for i in range(self.n))
        return rings.PolyRing(names, self.domain)

    def describe(self) -> dict[str, typing.Any]:
        """Report friendly form."""
        return {'n': self.n, 'mode': self.mode}


def term_order(key: Key) -> tuple:
    """Sort key for terms.

    Direction ascending, then degree descending, then exponents descending.
    """
    alpha, direction = key
    return direction, -sum(alpha), tuple(-a for a in alpha)


@functools.cache
def monomials(n: int, total: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of the monomials of a total degree, descending."""
    if total < 0:
        return tuple()
    result = list()
    for combo in itertools.combinations_with_replacement(range(n), total):
        alpha = [0] * n
        for index in combo:
            alpha[index] += 1
        result.append(tuple(alpha))
    return tuple(sorted(result, reverse=True))


@functools.cache
def graded_keys(n: int, degree: int) -> tuple[Key, ...]:
    """Coordinate keys of Vect_degree, in term order."""
    return tuple(
        (alpha, direction)
        for direction in range(n)
        for alpha in monomials(n, degree + 1)
    )


def graded_dimension(n: int, degree: int) -> int:
    """dim Vect_degree(K^n)"""
    if degree < -1:
        return 0
    return n * math.comb(n + degree, degree + 1)


class PolyVectorField:
    """An immutable polynomial vector field."""

    __slots__ = ('_space', '_components')

    def __init__(
        self, space: SpaceDescriptor,
        components: typing.Sequence[rings.PolyElement]
    ):
        if len(components) != space.n:
            raise SpaceMismatch(
                f'{len(components)} components for a space of dimension'
                f' {space.n}'
            )
        ring = space.ring
        for component in components:
            if component.ring != ring:
                raise SpaceMismatch(f'component from {component.ring}')
            for monom in component.itermonoms():
                if sum(monom) - 1 > space.max_degree:
                    raise DegreeLimitExceeded(
                        f'degree {sum(monom) - 1} exceeds the cap of'
                        f' {space.max_degree}'
                    )
        self._space = space
        self._components = tuple(components)

    @classmethod
    def zero(cls, space: SpaceDescriptor) -> PolyVectorField:
        """The zero field."""
        return cls(space, (space.ring.zero,) * space.n)

    @classmethod
    def from_terms(
        cls, space: SpaceDescriptor, terms: typing.Mapping[Key, typing.Any]
    ) -> PolyVectorField:
        """Build from a (exponents, direction) -> coefficient mapping."""
        grouped: list[dict] = [dict() for _ in range(space.n)]
        for (alpha, direction), coeff in terms.items():
            if len(alpha) != space.n or not 0 <= direction < space.n:
                raise SpaceMismatch(
                    f'key {(alpha, direction)} in n={space.n}'
                )
            coeff = exact.coerce(coeff, space.domain)
            if coeff:
                alpha = tuple(alpha)
                grouped[direction][alpha] = (
                    grouped[direction].get(alpha, space.domain.zero) + coeff
                )
        return cls(space, [space.ring.from_dict(group) for group in grouped])

    @classmethod
    def monomial(
        cls,
        space: SpaceDescriptor,
        alpha: typing.Sequence[int],
        direction: int,
        coeff: typing.Any = 1
    ) -> PolyVectorField:
        """coeff * x^alpha d_direction"""
        return cls.from_terms(space, {(tuple(alpha), direction): coeff})

    @classmethod
    def constant(
        cls, space: SpaceDescriptor, direction: int
    ) -> PolyVectorField:
        """The basis field d_direction."""
        return cls.monomial(space, (0,) * space.n, direction)

    @property
    def space(self) -> SpaceDescriptor:
        """Where the field lives."""
        return self._space

    @property
    def components(self) -> tuple[rings.PolyElement, ...]:
        """X^1, ..., X^n"""
        return self._components

    @property
    def is_zero(self) -> bool:
        """True for the zero field."""
        return not any(self._components)

    def as_dict(self) -> dict[Key, exact.Scalar]:
        """The coefficient map."""
        return {
            (monom, direction): coeff
            for direction, component in enumerate(self._components)
            for monom, coeff in component.iterterms()
        }

    def terms(self) -> list[tuple[Key, exact.Scalar]]:
        """Nonzero terms in canonical order."""
        return sorted(
            self.as_dict().items(), key=lambda item: term_order(item[0])
        )

    def coefficient(
        self, alpha: typing.Sequence[int], direction: int
    ) -> exact.Scalar:
        """Coefficient of x^alpha d_direction."""
        value = self._components[direction].get(tuple(alpha))
        if value is None:
            return self._space.domain.zero
        return value

    def leading_key(self) -> Key:
        """First key in term order; the field must be nonzero."""
        return min(self.as_dict(), key=term_order)

    def degrees(self) -> set[int]:
        """Degrees of the nonzero homogeneous components."""
        return {
            sum(monom) - 1
            for component in self._components
            for monom in component.itermonoms()
        }

    @property
    def max_degree(self) -> int | None:
        """Largest degree present, None for the zero field."""
        return max(self.degrees(), default=None)

    @property
    def is_homogeneous(self) -> bool:
        """True if at most one degree is present."""
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int | None:
        """Degree of a homogeneous field, None for the zero field.

        Raises:
          NotHomogeneous: Several degrees are present.
        """
        found = self.degrees()
        if len(found) > 1:
            raise NotHomogeneous(f'degrees {sorted(found)}')
        return next(iter(found), None)

    def _check_space(self, other: PolyVectorField):
        if self._space != other._space:
            raise SpaceMismatch(f'{self._space} versus {other._space}')

    def __add__(self, other: PolyVectorField) -> PolyVectorField:
        self._check_space(other)
        return PolyVectorField(
            self._space,
            [a + b for a, b in zip(self._components, other._components)]
        )

    def __sub__(self, other: PolyVectorField) -> PolyVectorField:
        self._check_space(other)
        return PolyVectorField(
            self._space,
            [a - b for a, b in zip(self._components, other._components)]
        )

    def __neg__(self) -> PolyVectorField:
        return PolyVectorField(self._space, [-a for a in self._components])

    def scaled(self, factor: typing.Any) -> PolyVectorField:
        """factor * self"""
        factor = exact.coerce(factor, self._space.domain)
        return PolyVectorField(
            self._space, [a * factor for a in self._components]
        )

    def __rmul__(self, factor: typing.Any) -> PolyVectorField:
        return self.scaled(factor)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyVectorField):
            return NotImplemented
        return (
            self._space == other._space
            and self._components == other._components
        )

    def __hash__(self) -> int:
        return hash((self._space, self._components))

    def __repr__(self) -> str:
        terms = ', '.join(
            f'{alpha}d{direction + 1}: {exact.format_scalar(coeff)}'
            for (alpha, direction), coeff in self.terms()
        )
        return f'PolyVectorField(n={self._space.n}, {{{terms}}})'


def check_same_space(fields: typing.Iterable[PolyVectorField]) -> None:
    """Raise SpaceMismatch unless all fields share one space."""
    spaces = {field.space for field in fields}
    if len(spaces) > 1:
        raise SpaceMismatch(f'fields from {len(spaces)} different spaces')


def bracket(x: PolyVectorField, y: PolyVectorField) -> PolyVectorField:
    """[X, Y] = sum_{j,k} (X^j d_j Y^k - Y^j d_j X^k) d_k"""
    if x.space != y.space:
        raise SpaceMismatch(f'{x.space} versus {y.space}')
    space = x.space
    ring = space.ring
    result = list()
    for k in range(space.n):
        value = ring.zero
        for j, gen in enumerate(ring.gens):
            if x.components[j] and y.components[k]:
                value += x.components[j] * y.components[k].diff(gen)
            if y.components[j] and x.components[k]:
                value -= y.components[j] * x.components[k].diff(gen)
        result.append(value)
    return PolyVectorField(space, result)


def euler(space: SpaceDescriptor) -> PolyVectorField:
    """The Euler field sum_j x_j d_j."""
    return PolyVectorField(space, space.ring.gens)


def graded_components(x: PolyVectorField) -> dict[int, PolyVectorField]:
    """Split a field into its homogeneous components, keyed by degree."""
    grouped: dict[int, dict[Key, exact.Scalar]] = dict()
    for (alpha, direction), coeff in x.as_dict().items():
        grouped.setdefault(sum(alpha) - 1, dict())[(alpha, direction)] = coeff
    return {
        degree: PolyVectorField.from_terms(x.space, terms)
        for degree, terms in sorted(grouped.items())
    }


def divergence(x: PolyVectorField) -> rings.PolyElement:
    """sum_j d_j X^j"""
    ring = x.space.ring
    value = ring.zero
    for component, gen in zip(x.components, ring.gens):
        value += component.diff(gen)
    return value


def lie_derivative(
    x: PolyVectorField, function: rings.PolyElement
) -> rings.PolyElement:
    """X(f) = sum_j X^j d_j f"""
    ring = x.space.ring
    value = ring.zero
    for component, gen in zip(x.components, ring.gens):
        if component:
            value += component * function.diff(gen)
    return value


def jacobian(x: PolyVectorField) -> list[list[rings.PolyElement]]:
    """DX with DX[k][j] = d_j X^k."""
    gens = x.space.ring.gens
    return [
        [component.diff(gen) for gen in gens] for component in x.components
    ]


def check_symplectic(space: SpaceDescriptor, omega: exact.Matrix) -> None:
    """Validate a constant symplectic form on the space.

    Raises:
      OddDimension: n is odd.
      NotSymplectic: omega is not antisymmetric and invertible.
    """
    if space.n % 2:
        raise OddDimension(f'n={space.n}')
    if omega.shape != (space.n, space.n):
        raise NotSymplectic(f'shape {omega.shape} for n={space.n}')
    if omega.transpose() != -omega:
        raise NotSymplectic('form is not antisymmetric')
    if not omega.determinant():
        raise NotSymplectic('form is degenerate')


def is_hamiltonian(x: PolyVectorField, omega: exact.Matrix) -> bool:
    """True if the 1-form i_X omega is closed.

    Closedness is tested coefficient-wise: omega . DX must be a symmetric
    matrix of polynomials.  No Hamiltonian function is ever produced, so
    no sign convention for it is involved.

    Raises:
      OddDimension: n is odd.
      NotSymplectic: omega is not antisymmetric and invertible.
    """
    space = x.space
    omega = exact.Matrix(omega.rows, space.domain, omega.shape[1])
    check_symplectic(space, omega)
    ring = space.ring
    jac = jacobian(x)
    n = space.n
    product = [[ring.zero] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            value = ring.zero
            for k in range(n):
                if omega[a, k]:
                    value += jac[k][b] * omega[a, k]
            product[a][b] = value
    return all(
        product[a][b] == product[b][a]
        for a in range(n)
        for b in range(a + 1, n)
    )


def graded_vector(x: PolyVectorField, degree: int) -> exact.Vector:
    """Coordinates of the degree component of x on graded_keys()."""
    return tuple(
        x.coefficient(alpha, direction)
        for alpha, direction in graded_keys(x.space.n, degree)
    )


def from_graded_vector(
    space: SpaceDescriptor, degree: int, vector: typing.Sequence[typing.Any]
) -> PolyVectorField:
    """Inverse of graded_vector()."""
    keys = graded_keys(space.n, degree)
    if len(vector) != len(keys):
        raise exact.DimensionMismatch(
            f'{len(vector)} coordinates for Vect_{degree} of dimension'
            f' {len(keys)}'
        )
    return PolyVectorField.from_terms(space, dict(zip(keys, vector)))


def realify(
    x: PolyVectorField,
    real_space: SpaceDescriptor | None = None
) -> PolyVectorField:
    """Regard a holomorphic field on C^n as a real field on R^2n.

    With z_j = x_j + i x_{n+j}, the field sum f^j d/dz_j maps to
    sum Re(f^j) d_j + Im(f^j) d_{n+j}.
    """
    space = x.space
    if not space.is_gaussian:
        raise Error('realify needs a field in gaussian mode')
    n = space.n
    if real_space is None:
        real_space = SpaceDescriptor(2 * n, 'rational', space.max_degree)
    if real_space.n != 2 * n or real_space.is_gaussian:
        raise SpaceMismatch(f'{real_space} cannot hold the realification')
    names = ','.join(f'x{i + 1}' for i in range(2 * n))
    complex_ring = rings.PolyRing(names, exact.QQ_I)
    gens = complex_ring.gens
    unit = exact.QQ_I(0, 1)
    substitution = [gens[j] + gens[n + j] * unit for j in range(n)]

    real_parts = [dict() for _ in range(2 * n)]
    for direction, component in enumerate(x.components):
        expanded = complex_ring.zero
        for monom, coeff in component.iterterms():
            term = complex_ring.ground_new(coeff)
            for base, power in zip(substitution, monom):
                if power:
                    term *= base**power
            expanded += term
        for monom, coeff in expanded.iterterms():
            if coeff.x:
                real_parts[direction][monom] = coeff.x
            if coeff.y:
                real_parts[n + direction][monom] = coeff.y
    ring = real_space.ring
    return PolyVectorField(
        real_space, [ring.from_dict(part) for part in real_parts]
    )


class FieldSpan:
    """Incremental echelon form of a span of fields.

    Each row has a unit coefficient at its pivot key and a zero at the pivot
    of every row added before it.  Rows remember which combination of the
    added generators they equal, so coordinates on the generators are
    available without a second solve.
    """

    def __init__(self, space: SpaceDescriptor):
        self._space = space
        self._rows: list[
            tuple[Key, PolyVectorField, dict[int, exact.Scalar]]
        ] = list()
        self._generators: list[PolyVectorField] = list()

    @property
    def space(self) -> SpaceDescriptor:
        """Where the fields live."""
        return self._space

    @property
    def dim(self) -> int:
        """Dimension of the span."""
        return len(self._rows)

    @property
    def generators(self) -> tuple[PolyVectorField, ...]:
        """The independent fields accepted by add(), in order."""
        return tuple(self._generators)

    def _eliminate(
        self, x: PolyVectorField
    ) -> tuple[PolyVectorField, list[tuple[int, exact.Scalar]]]:
        if x.space != self._space:
            raise SpaceMismatch(f'{x.space} versus {self._space}')
        used = list()
        for index, (key, row, _) in enumerate(self._rows):
            factor = x.coefficient(*key)
            if factor:
                x = x - row.scaled(factor)
                used.append((index, factor))
        return x, used

    def __contains__(self, x: PolyVectorField) -> bool:
        remainder, _ = self._eliminate(x)
        return remainder.is_zero

    def add(self, x: PolyVectorField) -> bool:
        """Add x to the span.

        Returns:
          True if x was independent of the span and is now a generator.
        """
        remainder, used = self._eliminate(x)
        if remainder.is_zero:
            return False
        domain = self._space.domain
        new_index = len(self._generators)
        combo: dict[int, exact.Scalar] = {new_index: domain.one}
        for index, factor in used:
            for gen, coeff in self._rows[index][2].items():
                combo[gen] = combo.get(gen, domain.zero) - factor * coeff
        key = remainder.leading_key()
        lead = domain.one / remainder.coefficient(*key)
        self._rows.append(
            (
                key, remainder.scaled(lead),
                {gen: coeff * lead for gen, coeff in combo.items() if coeff}
            )
        )
        self._generators.append(x)
        return True

    def coordinates(self, x: PolyVectorField) -> exact.Vector | None:
        """Coefficients of x on the generators, None if x is outside."""
        remainder, used = self._eliminate(x)
        if not remainder.is_zero:
            return None
        domain = self._space.domain
        coords = [domain.zero] * len(self._generators)
        for index, factor in used:
            for gen, coeff in self._rows[index][2].items():
                coords[gen] += factor * coeff
        return tuple(coords)


def span_dimension(fields: typing.Iterable[PolyVectorField]) -> int:
    """Dimension of the span of some fields."""
    fields = list(fields)
    if not fields:
        return 0
    span = FieldSpan(fields[0].space)
    for field in fields:
        span.add(field)
    logging.debug('span of %d fields has dimension %d', len(fields), span.dim)
    return span.dim
