"""Symmetric multilinear maps and their Lie algebra T(E).

T_p(E) is the space of symmetric (p+1)-linear maps E x ... x E -> E.  A
tensor M in T_p is stored by its values on basis vectors: for a multiset
alpha of p+1 basis indices (an exponent vector with |alpha| = p+1) and an
output direction k, the coefficient is the k-th component of
M(e_alpha), where e_alpha lists each e_i alpha_i times.

The map T(M)(x) = -1/(p+1)! M(x, ..., x) is a Lie algebra isomorphism onto
the polynomial vector fields.  On coefficients it reads
x^alpha d_k <- -c[alpha, k] / alpha!, with alpha! = prod_i alpha_i!.
For p = -1 this gives T(e) = -e.

The bracket sums over the ways of feeding one tensor into a slot of the
other.  Grouping the permutations by which multiset goes into the inner
tensor turns the permutation sum into binomial weights, and the factorials
of the two normalizations cancel.  A constant (p = -1) has no slot, so the
term with a constant as the outer tensor is empty, and the bracket of two
constants is the zero tensor of degree -1.
"""

from __future__ import annotations

import itertools
import math
import typing

from vectpol import exact
from vectpol import polyfield


class Error(Exception):
    """Base module exception."""


class NotComplexStructure(Error):
    """J does not satisfy J^2 = -1."""


def _factorial(alpha: typing.Sequence[int]) -> int:
    return math.prod(math.factorial(a) for a in alpha)


class SymTensor:
    """An element of T_degree(E)."""

    __slots__ = ('_space', '_degree', '_coeffs')

    def __init__(
        self, space: polyfield.SpaceDescriptor, degree: int,
        coeffs: typing.Mapping[polyfield.Key, typing.Any]
    ):
        if degree < -1:
            raise Error(f'tensor degree must be at least -1, not {degree}')
        stored = dict()
        for (alpha, direction), value in coeffs.items():
            alpha = tuple(alpha)
            if len(alpha) != space.n or not 0 <= direction < space.n:
                raise polyfield.SpaceMismatch(
                    f'key {(alpha, direction)} in n={space.n}'
                )
            if sum(alpha) != degree + 1:
                raise Error(f'key {alpha} does not have {degree + 1} inputs')
            value = exact.coerce(value, space.domain)
            if value:
                stored[(alpha, direction)] = value
        self._space = space
        self._degree = degree
        self._coeffs = stored

    @classmethod
    def zero(cls, space: polyfield.SpaceDescriptor, degree: int) -> SymTensor:
        """The zero tensor of a degree."""
        return cls(space, degree, {})

    @classmethod
    def from_vector(
        cls, space: polyfield.SpaceDescriptor, degree: int,
        vector: typing.Sequence[typing.Any]
    ) -> SymTensor:
        """Inverse of vector()."""
        keys = polyfield.graded_keys(space.n, degree)
        if len(vector) != len(keys):
            raise exact.DimensionMismatch(
                f'{len(vector)} coordinates for T_{degree} of dimension'
                f' {len(keys)}'
            )
        return cls(space, degree, dict(zip(keys, vector)))

    @property
    def space(self) -> polyfield.SpaceDescriptor:
        """Where the tensor lives."""
        return self._space

    @property
    def degree(self) -> int:
        """p, for a tensor with p+1 inputs."""
        return self._degree

    @property
    def is_zero(self) -> bool:
        """True if no coefficient is stored."""
        return not self._coeffs

    def coefficients(self) -> dict[polyfield.Key, exact.Scalar]:
        """Nonzero values on basis multisets."""
        return dict(self._coeffs)

    def items(self) -> list[tuple[polyfield.Key, exact.Scalar]]:
        """Nonzero values in canonical key order."""
        return sorted(
            self._coeffs.items(),
            key=lambda item: polyfield.term_order(item[0])
        )

    def value(
        self, alpha: typing.Sequence[int], direction: int
    ) -> exact.Scalar:
        """The direction component of M(e_alpha)."""
        return self._coeffs.get(
            (tuple(alpha), direction), self._space.domain.zero
        )

    def vector(self) -> exact.Vector:
        """Coordinates on polyfield.graded_keys(n, degree)."""
        return tuple(
            self.value(alpha, direction)
            for alpha, direction in polyfield.graded_keys(
                self._space.n, self._degree
            )
        )

    def evaluate(self, *vectors: typing.Sequence[typing.Any]) -> exact.Vector:
        """M(v_0, ..., v_p) by multilinear expansion."""
        n = self._space.n
        domain = self._space.domain
        if len(vectors) != self._degree + 1:
            raise Error(
                f'{len(vectors)} arguments for a tensor with'
                f' {self._degree + 1} inputs'
            )
        result = [domain.zero] * n
        for indices in itertools.product(range(n), repeat=len(vectors)):
            weight = domain.one
            for vector, index in zip(vectors, indices):
                weight *= exact.coerce(vector[index], domain)
                if not weight:
                    break
            if not weight:
                continue
            alpha = [0] * n
            for index in indices:
                alpha[index] += 1
            for direction in range(n):
                value = self._coeffs.get((tuple(alpha), direction))
                if value:
                    result[direction] += weight * value
        return tuple(result)

    def _check(self, other: SymTensor):
        if self._space != other._space:
            raise polyfield.SpaceMismatch(
                f'{self._space} versus {other._space}'
            )
        if self._degree != other._degree:
            raise Error(f'degree {self._degree} versus {other._degree}')

    def __add__(self, other: SymTensor) -> SymTensor:
        self._check(other)
        merged = dict(self._coeffs)
        for key, value in other._coeffs.items():
            merged[key] = merged.get(key, self._space.domain.zero) + value
        return SymTensor(self._space, self._degree, merged)

    def __neg__(self) -> SymTensor:
        return self.scaled(-1)

    def __sub__(self, other: SymTensor) -> SymTensor:
        return self + (-other)

    def scaled(self, factor: typing.Any) -> SymTensor:
        """factor * self"""
        factor = exact.coerce(factor, self._space.domain)
        return SymTensor(
            self._space, self._degree,
            {key: factor * value for key, value in self._coeffs.items()}
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymTensor):
            return NotImplemented
        if self._space != other._space or self._coeffs != other._coeffs:
            return False
        return self._degree == other._degree or not self._coeffs

    def __hash__(self) -> int:
        return hash((self._space, frozenset(self._coeffs.items())))

    def __repr__(self) -> str:
        entries = ', '.join(
            f'{alpha}->{direction + 1}: {exact.format_scalar(value)}'
            for (alpha, direction), value in self.items()
        )
        return f'SymTensor(p={self._degree}, {{{entries}}})'


def _insert(
    outer: SymTensor, inner: SymTensor
) -> dict[polyfield.Key, typing.Any]:
    """Sum over the ways of feeding inner into one slot of outer.

    For an output multiset beta, the inputs split into the multiset gamma
    fed to inner and the rest; C(beta, gamma) counts the splits.
    """
    domain = outer.space.domain
    result: dict[polyfield.Key, typing.Any] = dict()
    for (gamma, j), inner_value in inner.coefficients().items():
        for (alpha, k), outer_value in outer.coefficients().items():
            if not alpha[j]:
                continue
            beta = tuple(
                a - (1 if index == j else 0) + g
                for index, (a, g) in enumerate(zip(alpha, gamma))
            )
            weight = math.prod(math.comb(b, g) for b, g in zip(beta, gamma))
            key = (beta, k)
            result[key] = (
                result.get(key, domain.zero)
                + inner_value * outer_value * exact.coerce(weight, domain)
            )
    return result


def t_bracket(t: SymTensor, u: SymTensor) -> SymTensor:
    """The Lie bracket of T(E), of degree p + q.

    The bracket of two constants is the zero tensor of degree -1.
    """
    if t.space != u.space:
        raise polyfield.SpaceMismatch(f'{t.space} versus {u.space}')
    space = t.space
    degree = max(t.degree + u.degree, -1)
    if t.degree == u.degree == -1:
        return SymTensor.zero(space, degree)
    merged = _insert(t, u)
    for key, value in _insert(u, t).items():
        merged[key] = merged.get(key, space.domain.zero) - value
    return SymTensor(space, degree, merged)


def to_field(t: SymTensor) -> polyfield.PolyVectorField:
    """The isomorphism T: M -> -1/(p+1)! M(x, ..., x)."""
    return polyfield.PolyVectorField.from_terms(
        t.space, {
            (alpha, direction):
            -value * exact.scalar(1, _factorial(alpha), t.space.domain)
            for (alpha, direction), value in t.coefficients().items()
        }
    )


def from_field(
    x: polyfield.PolyVectorField,
    degree: int | None = None
) -> SymTensor:
    """Polarization, the inverse of to_field().

    Args:
      x: A homogeneous field.
      degree: Needed only when x is the zero field.

    Raises:
      polyfield.NotHomogeneous: x has several degrees, or is zero and no
        degree was given.
    """
    found = x.degree
    if found is None:
        if degree is None:
            raise polyfield.NotHomogeneous('the zero field has no degree')
        found = degree
    elif degree is not None and degree != found:
        raise polyfield.NotHomogeneous(f'degree {found}, expected {degree}')
    return SymTensor(
        x.space, found, {
            (alpha, direction):
            -value * exact.coerce(_factorial(alpha), x.space.domain)
            for (alpha, direction), value in x.as_dict().items()
        }
    )


def check_complex_structure(
    space: polyfield.SpaceDescriptor, j_matrix: exact.Matrix
) -> exact.Matrix:
    """Return J over the space's domain after checking J^2 = -1.

    Raises:
      NotComplexStructure: J has the wrong shape or squares to something
        else.
    """
    n = space.n
    if j_matrix.shape != (n, n):
        raise NotComplexStructure(f'shape {j_matrix.shape} for n={n}')
    j_matrix = exact.Matrix(j_matrix.rows, space.domain, n)
    if j_matrix @ j_matrix != -exact.Matrix.identity(n, space.domain):
        raise NotComplexStructure('J @ J is not -1')
    return j_matrix


def tj_subspace(
    space: polyfield.SpaceDescriptor, j_matrix: exact.Matrix, degree: int
) -> exact.Subspace:
    """T_degree^J as a subspace of tensor coordinates.

    The tensors with J M(x_0, ..., x_p) = M(J x_0, x_1, ..., x_p); by
    symmetry the condition on the first slot covers all of them.  Solved as
    a linear system on the coordinates of SymTensor.vector().
    """
    j_matrix = check_complex_structure(space, j_matrix)
    n = space.n
    domain = space.domain
    keys = polyfield.graded_keys(n, degree)
    position = {key: index for index, key in enumerate(keys)}
    equations = list()
    for mu in polyfield.monomials(n, degree):
        for a in range(n):
            slot = tuple(m + (1 if index == a else 0)
                         for index, m in enumerate(mu))
            for k in range(n):
                row = [domain.zero] * len(keys)
                for j in range(n):
                    row[position[(slot, j)]] += j_matrix[k, j]
                for b in range(n):
                    moved = tuple(m + (1 if index == b else 0)
                                  for index, m in enumerate(mu))
                    row[position[(moved, k)]] -= j_matrix[b, a]
                equations.append(row)
    if not equations:
        return exact.Subspace.full(len(keys), domain)
    return exact.kernel(exact.Matrix(equations, domain, len(keys)))


def tj_field_subspace(
    space: polyfield.SpaceDescriptor, j_matrix: exact.Matrix, degree: int
) -> exact.Subspace:
    """to_field(T_degree^J) in polyfield.graded_vector() coordinates."""
    tensors = tj_subspace(space, j_matrix, degree)
    vectors = [
        polyfield.graded_vector(
            to_field(SymTensor.from_vector(space, degree, row)), degree
        ) for row in tensors.basis
    ]
    return exact.Subspace(
        polyfield.graded_dimension(space.n, degree), vectors, space.domain
    )
