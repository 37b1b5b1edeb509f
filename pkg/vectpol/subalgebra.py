"""Finite dimensional subalgebras of the polynomial vector fields.

A Subalgebra is an ordered basis of fields whose pairwise brackets stay in
the span.  Structure constants are computed once, at construction, and every
later query (adjoint matrices, Killing form, ideals, the Euler element) works
on coordinates.

Graded pieces L_p are always the intersections L with Vect_p; a subalgebra
is graded when those pieces add up to all of L.
"""

from __future__ import annotations

import collections
import dataclasses
import itertools
import logging
import math
import random
import typing

from vectpol import constants
from vectpol import exact
from vectpol import fieldtext
from vectpol import polyfield
from vectpol import symtensor


class Error(Exception):
    """Base module exception."""


class CapExceeded(Error):
    """A closure grew past the degree or dimension cap."""

    def __init__(self, message: str, degree: int | None, dimension: int):
        self.degree = degree
        self.dimension = dimension
        super().__init__(
            f'{message} (degree reached: {degree}, dimension reached:'
            f' {dimension})'
        )


class DependentBasis(Error):
    """A proposed basis is linearly dependent."""


class NotClosed(Error):
    """The bracket of two basis elements leaves the span."""

    def __init__(self, i: int, j: int, result: polyfield.PolyVectorField):
        self.i = i
        self.j = j
        self.bracket = result
        super().__init__(
            f'[b{i + 1}, b{j + 1}] = {fieldtext.format_field(result)} is not'
            ' in the span'
        )


class NotInSubalgebra(Error):
    """A field is not an element of the subalgebra."""


class NotGraded(Error):
    """A graded subalgebra was required."""


class NotOrderTwo(Error):
    """Degrees outside of -1, 0, 1 are present."""


class NotUnique(Error):
    """A linear system that should pin down one element has a kernel."""

    def __init__(self, message: str, kernel_dim: int):
        self.kernel_dim = kernel_dim
        super().__init__(f'{message} (kernel dimension {kernel_dim})')


class HypothesisViolation(Error):
    """The inputs of graded_closure() do not satisfy its hypotheses."""

    def __init__(self, inclusion: str, result: polyfield.PolyVectorField):
        self.inclusion = inclusion
        self.bracket = result
        super().__init__(
            f'{inclusion} fails: {fieldtext.format_field(result)}'
        )


class InvalidStructure(Error):
    """Structure constants that do not define a graded Lie algebra."""


class NotMonomorphism(Error):
    """The embedding into T(L_-1) has a kernel or is not a homomorphism."""


class ConsistencyError(Error):
    """An exact cross-check of a computed result failed."""


@dataclasses.dataclass(frozen=True)
class Caps:
    """Limits for closure computations."""
    max_dim: int = constants.DEFAULT_MAX_DIM
    max_degree: int = constants.DEFAULT_MAX_DEGREE


# (i, j) -> {k: coefficient of b_k in [b_i, b_j]}
BracketTable: typing.TypeAlias = typing.Mapping[
    tuple[int, int], typing.Mapping[int, typing.Any]
]


class Subalgebra:
    """A bracket closed span of polynomial vector fields.

    Args:
      space: Where the fields live.
      basis: Linearly independent fields.

    Raises:
      DependentBasis: The fields are dependent.
      NotClosed: A bracket of two basis elements leaves the span.
    """

    def __init__(
        self, space: polyfield.SpaceDescriptor,
        basis: typing.Iterable[polyfield.PolyVectorField]
    ):
        basis = tuple(basis)
        span = polyfield.FieldSpan(space)
        for index, x in enumerate(basis):
            if not span.add(x):
                raise DependentBasis(
                    f'b{index + 1} = {fieldtext.format_field(x)} depends on'
                    ' the earlier elements'
                )
        self._space = space
        self._basis = basis
        self._span = span
        self._parts: dict[int, exact.Subspace] = dict()
        self._constants = self._structure_constants()
        logging.debug('subalgebra of dimension %d in %s', len(basis), space)

    def _structure_constants(self) -> tuple[tuple[exact.Vector, ...], ...]:
        dim = len(self._basis)
        zero = exact.zero_vector(dim, self._space.domain)
        table = [[zero] * dim for _ in range(dim)]
        for i, j in itertools.combinations(range(dim), 2):
            result = polyfield.bracket(self._basis[i], self._basis[j])
            coords = self._span.coordinates(result)
            if coords is None:
                raise NotClosed(i, j, result)
            table[i][j] = coords
            table[j][i] = tuple(-value for value in coords)
        return tuple(tuple(row) for row in table)

    @property
    def space(self) -> polyfield.SpaceDescriptor:
        """Where the fields live."""
        return self._space

    @property
    def basis(self) -> tuple[polyfield.PolyVectorField, ...]:
        """The ordered basis."""
        return self._basis

    @property
    def dim(self) -> int:
        """Dimension."""
        return len(self._basis)

    @property
    def structure_constants(self) -> tuple[tuple[exact.Vector, ...], ...]:
        """c[i][j] holds the coordinates of [b_i, b_j]."""
        return self._constants

    @property
    def grading(self) -> tuple[int, ...] | None:
        """Degree of each basis element, if every one is homogeneous."""
        degrees = list()
        for x in self._basis:
            if not x.is_homogeneous:
                return None
            degrees.append(x.degree)
        return tuple(degrees)

    def coordinates(self, x: polyfield.PolyVectorField) -> exact.Vector:
        """Coefficients of x on the basis.

        Raises:
          NotInSubalgebra: x is not in the span.
        """
        coords = self._span.coordinates(x)
        if coords is None:
            raise NotInSubalgebra(fieldtext.format_field(x))
        return coords

    def __contains__(self, x: polyfield.PolyVectorField) -> bool:
        return x in self._span

    def element(
        self, coords: typing.Sequence[typing.Any]
    ) -> polyfield.PolyVectorField:
        """The field with the given coordinates."""
        if len(coords) != self.dim:
            raise exact.DimensionMismatch(
                f'{len(coords)} coordinates for dimension {self.dim}'
            )
        result = polyfield.PolyVectorField.zero(self._space)
        for coeff, x in zip(coords, self._basis):
            if coeff:
                result = result + x.scaled(coeff)
        return result

    def bracket_coordinates(
        self, u: typing.Sequence[typing.Any], v: typing.Sequence[typing.Any]
    ) -> exact.Vector:
        """Coordinates of [u, v] from the structure constants."""
        domain = self._space.domain
        result = [domain.zero] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                factor = exact.coerce(a, domain) * exact.coerce(b, domain)
                for k, value in enumerate(self._constants[i][j]):
                    if value:
                        result[k] += factor * value
        return tuple(result)

    def ad_matrix(self, coords: typing.Sequence[typing.Any]) -> exact.Matrix:
        """Matrix of ad(u) on the basis; column j holds [u, b_j]."""
        domain = self._space.domain
        units = [
            exact.unit_vector(self.dim, j, domain) for j in range(self.dim)
        ]
        columns = [self.bracket_coordinates(coords, unit) for unit in units]
        return exact.Matrix.from_columns(columns, self.dim, domain)

    def basis_ad_matrix(self, index: int) -> exact.Matrix:
        """ad(b_index)"""
        return exact.Matrix.from_columns(
            self._constants[index], self.dim, self._space.domain
        )

    def degrees(self) -> list[int]:
        """Sorted degrees present in the basis elements."""
        found: set[int] = set()
        for x in self._basis:
            found |= x.degrees()
        return sorted(found)

    def graded_part(self, degree: int) -> exact.Subspace:
        """L intersected with Vect_degree.

        In the coordinates of polyfield.graded_vector().
        """
        if degree in self._parts:
            return self._parts[degree]
        space = self._space
        domain = space.domain
        others = [p for p in self.degrees() if p != degree]
        rows = list()
        for other in others:
            vectors = [polyfield.graded_vector(x, other) for x in self._basis]
            rows.extend(list(row) for row in zip(*vectors) if any(row))
        if rows:
            combos = exact.kernel(exact.Matrix(rows, domain, self.dim))
        else:
            combos = exact.Subspace.full(self.dim, domain)
        target = polyfield.graded_dimension(space.n, degree)
        vectors = list()
        for combo in combos.basis:
            vectors.append(
                polyfield.graded_vector(self.element(combo), degree)
            )
        part = exact.Subspace(target, vectors, domain)
        self._parts[degree] = part
        return part

    def graded_basis(self, degree: int) -> list[polyfield.PolyVectorField]:
        """Fields spanning L_degree."""
        return [
            polyfield.from_graded_vector(self._space, degree, row)
            for row in self.graded_part(degree).basis
        ]

    def graded_dims(self) -> dict[int, int]:
        """dim L_p for each degree p present."""
        return {p: self.graded_part(p).dim for p in self.degrees()}

    @property
    def is_abelian(self) -> bool:
        """True if every structure constant vanishes."""
        return not any(
            any(vector) for row in self._constants for vector in row
        )

    def killing_form(self) -> exact.Matrix:
        """Shorthand for killing_form(self)."""
        return killing_form(self)

    def homogeneous(self) -> Subalgebra:
        """The same algebra on a basis of homogeneous elements, by degree.

        Raises:
          NotGraded: The algebra is not graded.
        """
        if not is_graded(self).graded:
            raise NotGraded(f'{self!r} is not graded')
        basis = list()
        for degree in self.degrees():
            basis.extend(self.graded_basis(degree))
        return Subalgebra(self._space, basis)

    def to_abstract(self) -> AbstractGradedAlgebra:
        """Structure constants and grading of the homogeneous basis.

        Raises:
          NotGraded: The algebra is not graded.
          NotOrderTwo: Degrees outside of -1, 0, 1.
        """
        graded = self.homogeneous()
        grading = graded.grading
        assert grading is not None
        if set(grading) - {-1, 0, 1}:
            raise NotOrderTwo(f'degrees {sorted(set(grading))}')
        return AbstractGradedAlgebra(
            graded.structure_constants, grading, self._space.mode
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subalgebra):
            return NotImplemented
        return (
            self._space == other._space and self.dim == other.dim
            and all(x in self for x in other._basis)
        )

    def __hash__(self) -> int:
        return hash((self._space, self.dim))

    def __repr__(self) -> str:
        return f'Subalgebra(n={self._space.n}, dim={self.dim})'


def _check_caps(
    x: polyfield.PolyVectorField, dimension: int, caps: Caps, message: str
):
    degree = x.max_degree
    if degree is not None and degree > caps.max_degree:
        raise CapExceeded(message, degree, dimension)
    if dimension > caps.max_dim:
        raise CapExceeded(message, degree, dimension)


def close_under_bracket(
    generators: typing.Iterable[polyfield.PolyVectorField] | Subalgebra,
    caps: Caps | None = None,
    space: polyfield.SpaceDescriptor | None = None
) -> Subalgebra:
    """The smallest subalgebra containing the generators.

    Brackets are taken breadth first; a bracket already in the span is not
    followed.

    Args:
      generators: Fields from one space, or a Subalgebra (returned as is).
      caps: Degree and dimension limits.
      space: Needed only when there are no generators.

    Raises:
      CapExceeded: The closure is too big, a sign of infinite type.
    """
    if isinstance(generators, Subalgebra):
        return generators
    caps = caps or Caps()
    generators = list(generators)
    polyfield.check_same_space(generators)
    if generators:
        space = generators[0].space
    if space is None:
        raise Error('no generators and no space')
    span = polyfield.FieldSpan(space)
    basis: list[polyfield.PolyVectorField] = list()
    pending = collections.deque(generators)
    while pending:
        x = pending.popleft()
        if not span.add(x):
            continue
        basis.append(x)
        _check_caps(x, len(basis), caps, 'closure is too large')
        for y in basis:
            try:
                result = polyfield.bracket(y, x)
            except polyfield.DegreeLimitExceeded as err:
                raise CapExceeded(str(err), x.max_degree, len(basis)) from err
            if not result.is_zero and result not in span:
                pending.append(result)
    logging.info(
        'closure of %d generators has dimension %d', len(generators),
        len(basis)
    )
    return Subalgebra(space, basis)


def _span_of(
    space: polyfield.SpaceDescriptor,
    fields: typing.Iterable[polyfield.PolyVectorField]
) -> polyfield.FieldSpan:
    span = polyfield.FieldSpan(space)
    for x in fields:
        span.add(x)
    return span


def lower_series(
    l_plus: typing.Sequence[polyfield.PolyVectorField],
    caps: Caps | None = None
) -> list[tuple[polyfield.PolyVectorField, ...]]:
    """The series D^0 = L+, D^(k+1) = [L+, D^k].

    Each entry is a basis of one D^k.  The list stops at the first D^k that
    is zero or adds nothing to the sum of the earlier terms; from there on
    the sum is stable.

    Raises:
      CapExceeded: The sum grows past a cap.
    """
    caps = caps or Caps()
    if not l_plus:
        return [tuple()]
    space = l_plus[0].space
    polyfield.check_same_space(l_plus)
    total = polyfield.FieldSpan(space)
    current = list(_span_of(space, l_plus).generators)
    for x in current:
        total.add(x)
    series = [tuple(current)]
    while current:
        step = polyfield.FieldSpan(space)
        grew = False
        for a in l_plus:
            for b in current:
                try:
                    result = polyfield.bracket(a, b)
                except polyfield.DegreeLimitExceeded as err:
                    raise CapExceeded(
                        str(err), b.max_degree, total.dim
                    ) from err
                if step.add(result):
                    _check_caps(result, total.dim, caps, 'lower series')
                    grew = total.add(result) or grew
        current = list(step.generators)
        series.append(tuple(current))
        if not grew:
            break
    logging.debug('lower series lengths %s', [len(term) for term in series])
    return series


def graded_closure(
    space: polyfield.SpaceDescriptor,
    l_minus1: exact.Subspace,
    l0: exact.Subspace,
    l_plus: typing.Sequence[polyfield.PolyVectorField],
    caps: Caps | None = None
) -> Subalgebra:
    """L_-1 + L_0 + sum_k D^k(L+) after checking the hypotheses.

    Args:
      space: Where the fields live.
      l_minus1: A subspace of Vect_-1 in graded_vector() coordinates.
      l0: A subspace of Vect_0 in graded_vector() coordinates.
      l_plus: Fields with all degrees at least 1.
      caps: Degree and dimension limits.

    Raises:
      HypothesisViolation: L_-1 + L_0 is not a subalgebra, or
        [L_-1, L+] is not in L_0 + L+, or [L_0, L+] is not in L+.
      CapExceeded: The lower series grows past a cap.
    """
    caps = caps or Caps()
    constants_part = [
        polyfield.from_graded_vector(space, -1, row) for row in l_minus1.basis
    ]
    linear_part = [
        polyfield.from_graded_vector(space, 0, row) for row in l0.basis
    ]
    l_plus = list(l_plus)
    for x in l_plus:
        if x.space != space:
            raise polyfield.SpaceMismatch(f'{x.space} versus {space}')
        if min(x.degrees(), default=1) < 1:
            raise HypothesisViolation('L+ in degrees >= 1', x)

    bottom = _span_of(space, constants_part + linear_part)
    for a in linear_part:
        for b in constants_part + linear_part:
            result = polyfield.bracket(a, b)
            if result not in bottom:
                raise HypothesisViolation('[L_0, L_-1 + L_0] in L_-1 + L_0',
                                          result)
    plus = _span_of(space, l_plus)
    middle = _span_of(space, linear_part + l_plus)
    for a in constants_part:
        for b in l_plus:
            result = polyfield.bracket(a, b)
            if result not in middle:
                raise HypothesisViolation('[L_-1, L+] in L_0 + L+', result)
    for a in linear_part:
        for b in l_plus:
            result = polyfield.bracket(a, b)
            if result not in plus:
                raise HypothesisViolation('[L_0, L+] in L+', result)

    basis = constants_part + linear_part
    for term in lower_series(plus.generators, caps):
        basis.extend(term)
    span = polyfield.FieldSpan(space)
    basis = [x for x in basis if span.add(x)]
    if len(basis) > caps.max_dim:
        raise CapExceeded('graded closure', None, len(basis))
    result = Subalgebra(space, basis)
    if all(x.degrees() <= {1} for x in l_plus):
        assert is_graded(result).graded, 'closure of degree one fields'
    return result


class GradingResult(typing.NamedTuple):
    """Outcome of is_graded()."""
    graded: bool
    components: dict[int, list[polyfield.PolyVectorField]]


def is_graded(algebra: Subalgebra) -> GradingResult:
    """Whether every homogeneous component of every element lies in L.

    The components are the bases of the L_p, which add up to L exactly when
    the algebra is graded.
    """
    components = {p: algebra.graded_basis(p) for p in algebra.degrees()}
    total = sum(len(fields) for fields in components.values())
    graded = total == algebra.dim
    logging.debug(
        'graded dims %s against dim %d',
        {p: len(fields) for p, fields in components.items()}, algebra.dim
    )
    return GradingResult(graded, {p: f for p, f in components.items() if f})


def _multiset_weights(
    vectors: typing.Sequence[exact.Vector], n: int, domain
) -> dict[tuple[int, ...], exact.Scalar]:
    """Sum of prod_r vectors[r][j_r] over index tuples j, by multiset."""
    weights: dict[tuple[int, ...], exact.Scalar] = dict()
    for indices in itertools.product(range(n), repeat=len(vectors)):
        value = domain.one
        for vector, index in zip(vectors, indices):
            value *= vector[index]
            if not value:
                break
        if not value:
            continue
        alpha = [0] * n
        for index in indices:
            alpha[index] += 1
        key = tuple(alpha)
        weights[key] = weights.get(key, domain.zero) + value
    return weights


def derivative_constraints(
    space: polyfield.SpaceDescriptor, degree: int,
    vector_lists: typing.Iterable[typing.Sequence[exact.Vector]],
    covectors: typing.Sequence[exact.Vector]
) -> exact.Subspace:
    """{X in Vect_degree : q(D_v1 ... D_vm X) = 0} as a subspace.

    Each list of degree + 1 constant vectors is paired with every covector
    q.  The iterated derivative of x^alpha d_k is alpha! times the multiset
    weight of alpha, in direction k.
    """
    n = space.n
    domain = space.domain
    keys = polyfield.graded_keys(n, degree)
    factorials = {
        alpha:
        exact.coerce(math.prod(math.factorial(a) for a in alpha), domain)
        for alpha in polyfield.monomials(n, degree + 1)
    }
    rows = list()
    if covectors:
        for vectors in vector_lists:
            weights = _multiset_weights(vectors, n, domain)
            for q in covectors:
                row = [
                    q[k] * weights.get(alpha, domain.zero) * factorials[alpha]
                    for alpha, k in keys
                ]
                if any(row):
                    rows.append(row)
    if not rows:
        return exact.Subspace.full(len(keys), domain)
    return exact.kernel(exact.Matrix(rows, domain, len(keys)))


def check_tower(
    space: polyfield.SpaceDescriptor,
    tower: typing.Sequence[exact.Subspace],
    seed: int = 0,
) -> None:
    """Check [n_i, n_j] in n_(i+j) wherever i + j is still in the tower.

    Every basis element of n_i is bracketed with one random combination of
    the basis of n_j, for every i <= j.

    Raises:
      ConsistencyError: A bracket left the tower.
    """
    rng = random.Random(seed)
    domain = space.domain
    top = len(tower) - 2
    for i in range(-1, top + 1):
        for j in range(max(i, -1 - i), min(top, top - i) + 1):
            left, right = tower[i + 1], tower[j + 1]
            if left.is_zero or right.is_zero:
                continue
            weights = [
                exact.coerce(rng.randint(1, 97), domain) for _ in right.basis
            ]
            combination = tuple(
                sum((w * row[k] for w, row in zip(weights, right.basis)),
                    domain.zero) for k in range(right.ambient)
            )
            y = polyfield.from_graded_vector(space, j, combination)
            for vector in left.basis:
                x = polyfield.from_graded_vector(space, i, vector)
                bracket = polyfield.bracket(x, y)
                result = polyfield.graded_vector(bracket, i + j)
                if result not in tower[i + j + 1]:
                    raise ConsistencyError(
                        f'[n_{i}, n_{j}] not in n_{i + j}'
                    )


def normalizer_tower(
    space: polyfield.SpaceDescriptor,
    f_space: exact.Subspace,
    up_to_degree: int,
) -> list[exact.Subspace]:
    """n_i(F) = {X in Vect_i : ad(F)^(i+1) X in F} for i = -1..up_to_degree.

    Element i + 1 of the list is n_i(F) in graded_vector() coordinates, and
    n_-1(F) = F.  Bracket compatibility [n_i, n_j] in n_(i+j) is checked
    by check_tower().

    Raises:
      ConsistencyError: The bracket check failed.
    """
    if up_to_degree < 0:
        raise Error(f'degree must be nonnegative, not {up_to_degree}')
    if f_space.ambient != space.n:
        raise exact.DimensionMismatch(
            f'F in K^{f_space.ambient} for n={space.n}'
        )
    covectors = f_space.annihilator().basis
    tower = [f_space]
    for i in range(up_to_degree + 1):
        tower.append(
            derivative_constraints(
                space, i,
                itertools.combinations_with_replacement(f_space.basis, i + 1),
                covectors
            )
        )
    logging.debug('normalizer tower dims %s', [part.dim for part in tower])
    check_tower(space, tower)
    return tower


def prolongation_envelope(
    space: polyfield.SpaceDescriptor, f_space: exact.Subspace, degree: int
) -> GradedSpan:
    """The fields whose derivative at every point preserves F, up to a degree.

    Degree -1 is all of Vect_-1, degree 0 is the stabilizer n_0(F) of F,
    and degree i holds the X with ad(Vect_-1)^i X inside n_0(F).
    """
    n = space.n
    domain = space.domain
    covectors = f_space.annihilator().basis
    units = [exact.unit_vector(n, j, domain) for j in range(n)]
    parts = {-1: exact.Subspace.full(n, domain)}
    for i in range(degree + 1):
        lists = [
            tuple(mu) + (f,)
            for mu in itertools.combinations_with_replacement(units, i)
            for f in f_space.basis
        ]
        parts[i] = derivative_constraints(space, i, lists, covectors)
    return GradedSpan(space, parts, degree)


def killing_form(algebra: Subalgebra) -> exact.Matrix:
    """Gram matrix of B(x, y) = trace(ad x ad y) on the basis."""
    c = algebra.structure_constants
    dim = algebra.dim
    domain = algebra.space.domain
    gram = [[domain.zero] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i, dim):
            value = domain.zero
            for k in range(dim):
                for m in range(dim):
                    a = c[i][m][k]
                    if a:
                        b = c[j][k][m]
                        if b:
                            value += a * b
            gram[i][j] = value
            gram[j][i] = value
    return exact.Matrix(gram, domain, dim)


def ideal_generated_by(
    algebra: Subalgebra, x: polyfield.PolyVectorField
) -> exact.Subspace:
    """Smallest ad(L) stable subspace containing x, in L coordinates.

    Raises:
      NotInSubalgebra: x is not in L.
    """
    dim = algebra.dim
    domain = algebra.space.domain
    start = algebra.coordinates(x)
    ideal = exact.Subspace(dim, [start], domain)
    pending = collections.deque([start])
    while pending:
        vector = pending.popleft()
        for i in range(dim):
            image = algebra.bracket_coordinates(
                exact.unit_vector(dim, i, domain), vector
            )
            if image not in ideal:
                ideal = ideal + exact.Subspace(dim, [image], domain)
                pending.append(image)
    return ideal


def is_simple(algebra: Subalgebra) -> bool:
    """Nonabelian, nondegenerate Killing form, and every basis element
    generates all of L as an ideal."""
    if algebra.is_abelian:
        return False
    if not killing_form(algebra).determinant():
        logging.debug('degenerate Killing form')
        return False
    for x in algebra.basis:
        if not ideal_generated_by(algebra, x).is_full:
            logging.debug('proper ideal generated by %s',
                          fieldtext.format_field(x))
            return False
    return True


def koecher_graded(algebra: Subalgebra, ideal: exact.Subspace) -> bool:
    """True if the ideal, given in L coordinates, contains the homogeneous
    components of its elements."""
    for row in ideal.basis:
        parts = polyfield.graded_components(algebra.element(row))
        for part in parts.values():
            if part not in algebra:
                return False
            if algebra.coordinates(part) not in ideal:
                return False
    return True


def add_euler(algebra: Subalgebra) -> Subalgebra:
    """K E + L, which is a subalgebra because L is graded.

    Raises:
      NotGraded: The algebra is not graded.
    """
    if not is_graded(algebra).graded:
        raise NotGraded(repr(algebra))
    e = polyfield.euler(algebra.space)
    if e in algebra:
        return algebra
    return Subalgebra(algebra.space, algebra.basis + (e,))


def euler_element(algebra: Subalgebra) -> polyfield.PolyVectorField | None:
    """The element e with [e, x] = p x on every L_p.

    Returns:
      The unique solution, or None if no element realizes the grading.

    Raises:
      NotGraded: The algebra is not graded.
      NotUnique: The solution is not unique; the center is not zero.
    """
    graded = algebra.homogeneous()
    grading = graded.grading
    assert grading is not None
    dim = graded.dim
    domain = graded.space.domain
    c = graded.structure_constants
    rows = list()
    rhs = list()
    for j in range(dim):
        for k in range(dim):
            rows.append([c[i][j][k] for i in range(dim)])
            if j == k:
                rhs.append(exact.coerce(grading[j], domain))
            else:
                rhs.append(domain.zero)
    system = exact.Matrix(rows, domain, dim)
    solution = exact.solve(system, rhs)
    if solution is None:
        logging.debug('no element realizes the grading')
        return None
    freedom = exact.kernel(system).dim
    if freedom:
        raise NotUnique('Euler element', freedom)
    return graded.element(solution)


def derived_part_check(algebra: Subalgebra) -> bool:
    """True if [L_-1, L_1] contains [L_0, L_0].

    Raises:
      NotGraded: The algebra is not graded.
      NotOrderTwo: Degrees outside of -1, 0, 1.
    """
    if not is_graded(algebra).graded:
        raise NotGraded(repr(algebra))
    if set(algebra.degrees()) - {-1, 0, 1}:
        raise NotOrderTwo(f'degrees {algebra.degrees()}')
    space = algebra.space
    lower = algebra.graded_basis(-1)
    upper = algebra.graded_basis(1)
    linear = algebra.graded_basis(0)
    pairing = _span_of(
        space, (polyfield.bracket(x, y) for x in lower for y in upper)
    )
    return all(
        polyfield.bracket(a, b) in pairing
        for a, b in itertools.combinations(linear, 2)
    )


def realify(algebra: Subalgebra) -> Subalgebra:
    """A complex subalgebra regarded as a real one on R^2n.

    The images of b and i b for every basis element b span the result.
    """
    space = algebra.space
    if not space.is_gaussian:
        raise Error('realify needs a subalgebra in gaussian mode')
    real_space = polyfield.SpaceDescriptor(2 * space.n, 'rational',
                                           space.max_degree)
    unit = exact.gaussian(0, 1)
    basis = list()
    for x in algebra.basis:
        basis.append(polyfield.realify(x, real_space))
        basis.append(polyfield.realify(x.scaled(unit), real_space))
    return Subalgebra(real_space, basis)


@dataclasses.dataclass(frozen=True)
class AbstractGradedAlgebra:
    """A Lie algebra of order two given by structure constants.

    Attributes:
      structure_constants: c[i][j] holds the coordinates of [b_i, b_j].
      degrees: Degree of each basis element, in {-1, 0, 1}.
      mode: Scalar mode of the constants.
    """
    structure_constants: tuple[tuple[exact.Vector, ...], ...]
    degrees: tuple[int, ...]
    mode: str = 'rational'

    def __post_init__(self):
        domain = exact.domain_for(self.mode)
        dim = len(self.degrees)
        c = tuple(
            tuple(
                tuple(exact.coerce(value, domain) for value in vector)
                for vector in row
            ) for row in self.structure_constants
        )
        object.__setattr__(self, 'structure_constants', c)
        if len(c) != dim or any(len(row) != dim for row in c):
            raise InvalidStructure(f'constants do not match dimension {dim}')
        if any(len(vector) != dim for row in c for vector in row):
            raise InvalidStructure('bracket coordinates of the wrong length')
        if set(self.degrees) - {-1, 0, 1}:
            raise InvalidStructure(f'degrees {sorted(set(self.degrees))}')
        for i in range(dim):
            for j in range(dim):
                if any(a + b for a, b in zip(c[i][j], c[j][i])):
                    raise InvalidStructure(
                        f'[b{i + 1}, b{j + 1}] not antisymmetric'
                    )
                target = self.degrees[i] + self.degrees[j]
                for k, value in enumerate(c[i][j]):
                    if value and self.degrees[k] != target:
                        raise InvalidStructure(
                            f'[b{i + 1}, b{j + 1}] has a component outside'
                            f' degree {self.degrees[i] + self.degrees[j]}'
                        )
        for i, j, k in itertools.combinations(range(dim), 3):
            total = [domain.zero] * dim
            for a, b, d in ((i, j, k), (j, k, i), (k, i, j)):
                for term, value in enumerate(
                    self.bracket(
                        exact.unit_vector(dim, a, domain),
                        self.bracket(
                            exact.unit_vector(dim, b, domain),
                            exact.unit_vector(dim, d, domain)
                        )
                    )
                ):
                    total[term] += value
            if any(total):
                raise InvalidStructure(
                    f'Jacobi fails on b{i + 1}, b{j + 1}, b{k + 1}'
                )

    @classmethod
    def from_brackets(
        cls,
        degrees: typing.Sequence[int],
        brackets: BracketTable,
        mode: str = 'rational'
    ) -> AbstractGradedAlgebra:
        """Build from the nonzero brackets [b_i, b_j] = sum_k value b_k.

        Only one of (i, j) and (j, i) needs to be given.
        """
        domain = exact.domain_for(mode)
        dim = len(degrees)
        table = [
            [[domain.zero] * dim for _ in range(dim)] for _ in range(dim)
        ]
        for (i, j), terms in brackets.items():
            for k, value in terms.items():
                value = exact.coerce(value, domain)
                table[i][j][k] += value
                table[j][i][k] -= value
        return cls(
            tuple(tuple(tuple(vector) for vector in row) for row in table),
            tuple(degrees), mode
        )

    @property
    def dim(self) -> int:
        """Dimension."""
        return len(self.degrees)

    @property
    def domain(self):
        """The ground domain of the constants."""
        return exact.domain_for(self.mode)

    def indices(self, degree: int) -> list[int]:
        """Basis indices of one degree."""
        return [i for i, p in enumerate(self.degrees) if p == degree]

    def bracket(
        self, u: typing.Sequence[typing.Any], v: typing.Sequence[typing.Any]
    ) -> exact.Vector:
        """Coordinates of [u, v]."""
        domain = self.domain
        result = [domain.zero] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                for k, value in enumerate(self.structure_constants[i][j]):
                    if value:
                        result[k] += a * b * value
        return tuple(result)


class PhiEmbedding(typing.NamedTuple):
    """The image of an abstract algebra in T(L_-1)."""
    tensors: tuple[symtensor.SymTensor, ...]
    subalgebra: Subalgebra


def phi_embed(algebra: AbstractGradedAlgebra) -> PhiEmbedding:
    """Embed an order two algebra into T(L_-1).

    L_-1 maps identically onto the constants, an element h of L_0 maps to
    ad(h) restricted to L_-1, and an element M of L_1 maps to the bilinear
    map (x, y) -> [[M, x], y].

    Raises:
      Error: L_-1 is zero.
      NotMonomorphism: The map has a kernel or does not respect brackets.
    """
    lower = algebra.indices(-1)
    if not lower:
        raise Error('L_-1 is zero')
    domain = algebra.domain
    dim = algebra.dim
    n = len(lower)
    space = polyfield.SpaceDescriptor(n, algebra.mode)
    position = {index: a for a, index in enumerate(lower)}

    def unit(index: int) -> exact.Vector:
        return exact.unit_vector(dim, index, domain)

    def lower_coords(vector: exact.Vector) -> list[exact.Scalar]:
        return [vector[index] for index in lower]

    def exponent(*slots: int) -> tuple[int, ...]:
        alpha = [0] * n
        for slot in slots:
            alpha[slot] += 1
        return tuple(alpha)

    tensors = list()
    for index, degree in enumerate(algebra.degrees):
        coeffs: dict[polyfield.Key, exact.Scalar] = dict()
        if degree == -1:
            coeffs[(exponent(), position[index])] = domain.one
        elif degree == 0:
            for b, f_b in enumerate(lower):
                image = lower_coords(algebra.bracket(unit(index), unit(f_b)))
                for k, value in enumerate(image):
                    if value:
                        coeffs[(exponent(b), k)] = value
        else:
            for a, b in itertools.combinations_with_replacement(range(n), 2):
                inner = algebra.bracket(unit(index), unit(lower[a]))
                image = lower_coords(algebra.bracket(inner, unit(lower[b])))
                for k, value in enumerate(image):
                    if value:
                        coeffs[(exponent(a, b), k)] = value
        tensors.append(symtensor.SymTensor(space, degree, coeffs))

    def image_of(vector: exact.Vector) -> symtensor.SymTensor | None:
        result = None
        for index, value in enumerate(vector):
            if value:
                term = tensors[index].scaled(value)
                result = term if result is None else result + term
        return result

    for i, j in itertools.combinations(range(dim), 2):
        expected = image_of(algebra.bracket(unit(i), unit(j)))
        actual = symtensor.t_bracket(tensors[i], tensors[j])
        if expected is None:
            matches = actual.is_zero
        else:
            matches = actual == expected
        if not matches:
            raise NotMonomorphism(f'bracket of b{i + 1} and b{j + 1}')
    fields = [symtensor.to_field(t) for t in tensors]
    span = polyfield.FieldSpan(space)
    for index, x in enumerate(fields):
        if not span.add(x):
            raise NotMonomorphism(
                f'b{index + 1} is in the span of the others'
            )
    return PhiEmbedding(tuple(tensors), Subalgebra(space, fields))


class GradedSpan:
    """A graded subspace of Vect_pol truncated at a degree.

    Holds one subspace of each Vect_p, p = -1..truncation, in
    graded_vector() coordinates.  Used for the degree truncations of infinite
    dimensional algebras, which are closed only up to the truncation.
    """

    def __init__(
        self, space: polyfield.SpaceDescriptor,
        parts: typing.Mapping[int, exact.Subspace], truncation: int
    ):
        if truncation < -1:
            raise Error(f'truncation {truncation}')
        domain = space.domain
        stored = dict()
        for degree in range(-1, truncation + 1):
            size = polyfield.graded_dimension(space.n, degree)
            part = parts.get(degree, exact.Subspace(size, (), domain))
            if part.ambient != size:
                raise exact.DimensionMismatch(
                    f'degree {degree} part in K^{part.ambient}, expected'
                    f' K^{size}'
                )
            stored[degree] = part
        extra = set(parts) - set(stored)
        if extra:
            raise Error(f'parts above the truncation: {sorted(extra)}')
        self._space = space
        self._parts = stored
        self._truncation = truncation

    @classmethod
    def full(
        cls, space: polyfield.SpaceDescriptor, truncation: int
    ) -> GradedSpan:
        """All of Vect_(<= truncation)."""
        return cls(
            space, {
                degree:
                exact.Subspace.full(
                    polyfield.graded_dimension(space.n, degree), space.domain
                ) for degree in range(-1, truncation + 1)
            }, truncation
        )

    @classmethod
    def from_fields(
        cls, space: polyfield.SpaceDescriptor,
        fields: typing.Iterable[polyfield.PolyVectorField], truncation: int
    ) -> GradedSpan:
        """The span of the homogeneous components of some fields."""
        vectors: dict[int, list[exact.Vector]] = collections.defaultdict(list)
        for x in fields:
            for degree, part in polyfield.graded_components(x).items():
                if degree > truncation:
                    raise Error(
                        f'{fieldtext.format_field(x)} is above degree'
                        f' {truncation}'
                    )
                vectors[degree].append(polyfield.graded_vector(part, degree))
        return cls(
            space, {
                degree:
                exact.Subspace(
                    polyfield.graded_dimension(space.n, degree), rows,
                    space.domain
                ) for degree, rows in vectors.items()
            }, truncation
        )

    @property
    def space(self) -> polyfield.SpaceDescriptor:
        """Where the fields live."""
        return self._space

    @property
    def truncation(self) -> int:
        """Highest degree held."""
        return self._truncation

    def part(self, degree: int) -> exact.Subspace:
        """The degree component."""
        return self._parts[degree]

    @property
    def dim(self) -> int:
        """Total dimension."""
        return sum(part.dim for part in self._parts.values())

    def graded_dims(self) -> dict[int, int]:
        """Dimension of each degree component."""
        return {degree: part.dim for degree, part in self._parts.items()}

    def fields(self) -> list[polyfield.PolyVectorField]:
        """A homogeneous basis, by degree."""
        return [
            polyfield.from_graded_vector(self._space, degree, row)
            for degree, part in self._parts.items()
            for row in part.basis
        ]

    def __contains__(self, x: polyfield.PolyVectorField) -> bool:
        if x.space != self._space:
            return False
        for degree, part in polyfield.graded_components(x).items():
            if degree > self._truncation:
                return False
            vector = polyfield.graded_vector(part, degree)
            if vector not in self._parts[degree]:
                return False
        return True

    def includes(self, algebra: Subalgebra) -> bool:
        """True if every basis element of the algebra is in the span."""
        return all(x in self for x in algebra.basis)

    def closure_defects(self) -> tuple[list[polyfield.PolyVectorField], int]:
        """Brackets of basis pairs that leave the span.

        Returns:
          The offending brackets, and the number of pairs whose bracket lands
          above the truncation and so was not checked.
        """
        bases = {
            degree: [
                polyfield.from_graded_vector(self._space, degree, row)
                for row in part.basis
            ] for degree, part in self._parts.items()
        }
        violations = list()
        exempt = 0
        for p, q in itertools.combinations_with_replacement(sorted(bases), 2):
            target = p + q
            if p == q == -1:
                continue
            if target > self._truncation:
                if p == q:
                    exempt += len(bases[p]) * (len(bases[p]) - 1) // 2
                else:
                    exempt += len(bases[p]) * len(bases[q])
                continue
            pairs: typing.Iterable[tuple[polyfield.PolyVectorField, ...]]
            if p == q:
                pairs = itertools.combinations(bases[p], 2)
            else:
                pairs = itertools.product(bases[p], bases[q])
            for x, y in pairs:
                result = polyfield.bracket(x, y)
                if result.is_zero:
                    continue
                vector = polyfield.graded_vector(result, target)
                if vector not in self._parts[target]:
                    violations.append(result)
        return violations, exempt

    def __repr__(self) -> str:
        return f'GradedSpan(n={self._space.n}, dims={self.graded_dims()})'
