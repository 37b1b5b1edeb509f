"""Built-in algebras, addressable by preset keys.

Keys read `catalog:<family>:<parameters>`:

  catalog:projective:2       projective algebra sl(n+1) on K^n
  catalog:conformal:2,0      conformal algebra so(p+1, q+1) on K^(p+q)
  catalog:affine:3           constants + gl(n)
  catalog:sl2-chain:1        {d1, x1 d1, x1^2 d1}
  catalog:diag:2             constants + diagonal linear fields
  catalog:divfree:2:deg2     divergence free fields with coefficients of
                             degree <= 2
  catalog:hamiltonian:2:deg3 Hamiltonian fields for the standard form, same
                             truncation rule

The two truncated families are GradedSpans, not subalgebras: they are
degree truncations of infinite dimensional algebras.
"""

from __future__ import annotations

import dataclasses
import itertools
import typing

from vectpol import constants
from vectpol import exact
from vectpol import polyfield
from vectpol import subalgebra

PolyVectorField = polyfield.PolyVectorField

FAMILIES = (
    'projective',
    'conformal',
    'affine',
    'sl2-chain',
    'diag-reducible',
    'divfree-trunc',
    'hamiltonian-trunc',
)

ALIASES = {
    'divfree': 'divfree-trunc',
    'hamiltonian': 'hamiltonian-trunc',
    'diag': 'diag-reducible',
}

TRUNCATED = ('divfree-trunc', 'hamiltonian-trunc')

# Short names used when printing keys.
_SHORT = {value: key for key, value in ALIASES.items()}


class Error(Exception):
    """Base module exception."""


class InvalidKey(Error):
    """A preset key does not parse or has bad parameters."""


@dataclasses.dataclass(frozen=True)
class CatalogKey:
    """A family and its parameters.

    Attributes:
      family: One of FAMILIES.
      n: Dimension of the space.
      signature: (p, q) for the conformal family.
      degree: Highest coefficient degree for the truncated families.
    """
    family: str
    n: int
    signature: tuple[int, int] | None = None
    degree: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidKey(f'unknown family: {self.family}')
        if self.n < 1:
            raise InvalidKey(f'n must be positive, not {self.n}')
        if self.family == 'conformal':
            if self.signature is None:
                raise InvalidKey('conformal needs a signature p,q')
            p, q = self.signature
            if p < 0 or q < 0 or p + q != self.n or self.n < 2:
                raise InvalidKey(
                    f'signature {p},{q} does not fit n={self.n} >= 2'
                )
        elif self.signature is not None:
            raise InvalidKey(f'{self.family} takes no signature')
        if self.family in TRUNCATED:
            if self.degree is None or self.degree < 0:
                raise InvalidKey(f'{self.family} needs a degree, like deg2')
        elif self.degree is not None:
            raise InvalidKey(f'{self.family} takes no degree')
        if self.family == 'hamiltonian-trunc' and self.n % 2:
            raise InvalidKey('hamiltonian needs an even n')

    @classmethod
    def parse(cls, text: str) -> CatalogKey:
        """Parse `catalog:family:params`; the prefix is optional.

        Raises:
          InvalidKey: On any syntax or parameter problem.
        """
        if text.startswith(constants.CATALOG_PREFIX):
            text = text[len(constants.CATALOG_PREFIX):]
        pieces = text.split(':')
        family = ALIASES.get(pieces[0], pieces[0])
        if family not in FAMILIES:
            raise InvalidKey(f'unknown family: {pieces[0]}')
        try:
            if family == 'conformal':
                if len(pieces) != 2:
                    raise InvalidKey('expected conformal:p,q')
                p, q = (int(value) for value in pieces[1].split(','))
                return cls(family, p + q, signature=(p, q))
            if family in TRUNCATED:
                if len(pieces) != 3 or not pieces[2].startswith('deg'):
                    raise InvalidKey(f'expected {pieces[0]}:n:degD')
                return cls(family, int(pieces[1]), degree=int(pieces[2][3:]))
            if len(pieces) != 2:
                raise InvalidKey(f'expected {pieces[0]}:n')
            return cls(family, int(pieces[1]))
        except ValueError as err:
            raise InvalidKey(f'bad parameters in {text!r}: {err}') from None

    def __str__(self) -> str:
        name = _SHORT.get(self.family, self.family)
        if self.signature is not None:
            p, q = self.signature
            return f'{constants.CATALOG_PREFIX}{name}:{p},{q}'
        key = f'{constants.CATALOG_PREFIX}{name}:{self.n}'
        if self.degree is not None:
            return f'{key}:deg{self.degree}'
        return key


def _exponent(n: int, *indices: int) -> tuple[int, ...]:
    alpha = [0] * n
    for index in indices:
        alpha[index] += 1
    return tuple(alpha)


def _times(
    space: polyfield.SpaceDescriptor, coefficient, x: PolyVectorField
) -> PolyVectorField:
    """coefficient(x) * X for a polynomial coefficient from space.ring."""
    return PolyVectorField(space, [coefficient * c for c in x.components])


def constant_fields(
    space: polyfield.SpaceDescriptor
) -> list[PolyVectorField]:
    """d_1, ..., d_n"""
    return [PolyVectorField.constant(space, j) for j in range(space.n)]


def linear_fields(space: polyfield.SpaceDescriptor) -> list[PolyVectorField]:
    """x_j d_k for all j, k."""
    n = space.n
    return [
        PolyVectorField.monomial(space, _exponent(n, j), k)
        for j in range(n)
        for k in range(n)
    ]


def projective_generators(
    space: polyfield.SpaceDescriptor
) -> list[PolyVectorField]:
    """d_j, x_j d_k and x_j E."""
    ring = space.ring
    e = polyfield.euler(space)
    quadratic = [_times(space, gen, e) for gen in ring.gens]
    return constant_fields(space) + linear_fields(space) + quadratic


def projective(space: polyfield.SpaceDescriptor) -> subalgebra.Subalgebra:
    """sl(n+1) acting by projective transformations.

    Graded dimensions are (n, n^2, n).
    """
    return subalgebra.Subalgebra(space, projective_generators(space))


def affine(space: polyfield.SpaceDescriptor) -> subalgebra.Subalgebra:
    """Constants and all linear fields; graded dims (n, n^2)."""
    return subalgebra.Subalgebra(
        space, constant_fields(space) + linear_fields(space)
    )


def conformal(
    space: polyfield.SpaceDescriptor, p: int, q: int
) -> subalgebra.Subalgebra:
    """Conformal Killing fields of the flat metric of signature (p, q).

    With eta = diag(1 (p times), -1 (q times)) and <x, x> = sum eta_a x_a^2:
    translations d_a, rotations eta_a x_a d_b - eta_b x_b d_a, the Euler field
    and the inversions 2 eta_a x_a E - <x, x> d_a.
    """
    n = space.n
    if p + q != n or p < 0 or q < 0 or n < 2:
        raise InvalidKey(f'signature {p},{q} for n={n}')
    ring = space.ring
    gens = ring.gens
    eta = [1] * p + [-1] * q
    e = polyfield.euler(space)
    norm = ring.zero
    for sign, gen in zip(eta, gens):
        norm += sign * gen**2
    fields = constant_fields(space)
    for a, b in itertools.combinations(range(n), 2):
        alpha = _exponent(n, a)
        beta = _exponent(n, b)
        fields.append(
            PolyVectorField.monomial(space, alpha, b, eta[a])
            - PolyVectorField.monomial(space, beta, a, eta[b])
        )
    fields.append(e)
    for a in range(n):
        fields.append(
            _times(space, 2 * eta[a] * gens[a], e)
            - _times(space, norm, PolyVectorField.constant(space, a))
        )
    return subalgebra.Subalgebra(space, fields)


def sl2_chain(space: polyfield.SpaceDescriptor) -> subalgebra.Subalgebra:
    """d1, x1 d1, x1^2 d1"""
    n = space.n
    return subalgebra.Subalgebra(
        space, [
            PolyVectorField.monomial(space, _exponent(n, *([0] * k)), 0)
            for k in range(3)
        ]
    )


def diagonal(space: polyfield.SpaceDescriptor) -> subalgebra.Subalgebra:
    """Constants and the diagonal linear fields x_j d_j."""
    return subalgebra.Subalgebra(
        space,
        constant_fields(space) + [
            PolyVectorField.monomial(space, _exponent(space.n, j), j)
            for j in range(space.n)
        ]
    )


def divergence_free(
    space: polyfield.SpaceDescriptor, truncation: int
) -> subalgebra.GradedSpan:
    """Divergence free fields of degree <= truncation."""
    n = space.n
    domain = space.domain
    parts = dict()
    for degree in range(-1, truncation + 1):
        keys = polyfield.graded_keys(n, degree)
        outputs = polyfield.monomials(n, degree)
        position = {alpha: index for index, alpha in enumerate(outputs)}
        rows = [[domain.zero] * len(keys) for _ in outputs]
        for column, (alpha, k) in enumerate(keys):
            if alpha[k]:
                image = tuple(
                    a - (1 if i == k else 0) for i, a in enumerate(alpha)
                )
                rows[position[image]][column] = exact.coerce(alpha[k], domain)
        rows = [row for row in rows if any(row)]
        if rows:
            matrix = exact.Matrix(rows, domain, len(keys))
            parts[degree] = exact.kernel(matrix)
        else:
            parts[degree] = exact.Subspace.full(len(keys), domain)
    return subalgebra.GradedSpan(space, parts, truncation)


def standard_symplectic(n: int, domain=exact.QQ) -> exact.Matrix:
    """[[0, I], [-I, 0]] on K^n, n even."""
    if n % 2:
        raise polyfield.OddDimension(f'n={n}')
    half = n // 2
    rows = [[0] * n for _ in range(n)]
    for i in range(half):
        rows[i][half + i] = 1
        rows[half + i][i] = -1
    return exact.Matrix(rows, domain, n)


def hamiltonian(
    space: polyfield.SpaceDescriptor,
    truncation: int,
    omega: exact.Matrix | None = None
) -> subalgebra.GradedSpan:
    """Hamiltonian fields of degree <= truncation.

    X_H = (omega^T)^-1 grad H for every monomial H of degree p + 2.
    """
    n = space.n
    domain = space.domain
    if omega is None:
        omega = standard_symplectic(n, domain)
    omega = exact.Matrix(omega.rows, domain, n)
    polyfield.check_symplectic(space, omega)
    inverse = omega.transpose().inverse()
    ring = space.ring
    parts = dict()
    for degree in range(-1, truncation + 1):
        vectors = list()
        for alpha in polyfield.monomials(n, degree + 2):
            h = ring.from_dict({alpha: domain.one})
            gradient = [h.diff(gen) for gen in ring.gens]
            components = list()
            for a in range(n):
                value = ring.zero
                for b in range(n):
                    if inverse[a, b] and gradient[b]:
                        value += gradient[b] * inverse[a, b]
                components.append(value)
            x = PolyVectorField(space, components)
            vectors.append(polyfield.graded_vector(x, degree))
        parts[degree] = exact.Subspace(
            polyfield.graded_dimension(n, degree), vectors, domain
        )
    return subalgebra.GradedSpan(space, parts, truncation)


def build(
    key: CatalogKey | str,
    space: polyfield.SpaceDescriptor | None = None
) -> subalgebra.Subalgebra | subalgebra.GradedSpan:
    """Construct a catalog algebra.

    Args:
      key: A CatalogKey or its text form.
      space: Defaults to rational K^n; must have the key's n.

    Raises:
      InvalidKey: Bad key, or a space that does not fit it.
    """
    if isinstance(key, str):
        key = CatalogKey.parse(key)
    if space is None:
        space = polyfield.SpaceDescriptor(key.n)
    if space.n != key.n:
        raise InvalidKey(f'{key} needs n={key.n}, not n={space.n}')
    builders: dict[str, typing.Callable[[], typing.Any]] = {
        'projective': lambda: projective(space),
        'affine': lambda: affine(space),
        'sl2-chain': lambda: sl2_chain(space),
        'diag-reducible': lambda: diagonal(space),
        'conformal': lambda: conformal(space, *key.signature),
        'divfree-trunc': lambda: divergence_free(space, key.degree - 1),
        'hamiltonian-trunc': lambda: hamiltonian(space, key.degree - 1),
    }
    return builders[key.family]()


class Preset(typing.NamedTuple):
    """One row of `catalog list`."""
    key: str
    description: str


def presets() -> list[Preset]:
    """Example keys for every family."""
    return [
        Preset(
            'catalog:projective:N', 'projective sl(N+1), graded (N, N^2, N)'
        ),
        Preset(
            'catalog:conformal:P,Q',
            'conformal so(P+1,Q+1) on N=P+Q >= 2, graded'
            ' (N, N(N-1)/2+1, N)'
        ),
        Preset('catalog:affine:N', 'constants + gl(N), graded (N, N^2)'),
        Preset('catalog:sl2-chain:N', 'd1, x1*d1, x1^2*d1'),
        Preset('catalog:diag:N', 'constants + diagonal linear fields'),
        Preset(
            'catalog:divfree:N:degD',
            'divergence free fields, coefficients of degree <= D'
        ),
        Preset(
            'catalog:hamiltonian:N:degD',
            'Hamiltonian fields for the standard form, N even'
        ),
    ]
