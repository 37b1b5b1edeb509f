"""The linear part of a graded subalgebra acting on its constants.

For a graded L the bracket restricts to a representation of L_0 on L_-1.
This module computes its matrices, decides irreducibility with an explicit
invariant subspace when the answer is no, searches the commutant for a
complex structure, and carries such a structure from L_-1 to all of L.

Every witness returned here is checked again, independently of the search
that found it.
"""

from __future__ import annotations

import collections
import dataclasses
import enum
import itertools
import logging
import typing

from vectpol import exact
from vectpol import polyfield
from vectpol import subalgebra


class Error(Exception):
    """Base module exception."""


class NotGraded(Error):
    """The algebra is not graded."""


class EmptyLMinus1(Error):
    """L_-1 is zero, so there is no representation to study."""


class PreconditionFailure(Error):
    """The input does not satisfy the hypotheses of the construction."""


class DegenerateKilling(Error):
    """The Killing pairing of L_1 and L_-1 is degenerate."""


class VerificationFailure(Error):
    """A computed result failed its exact check; the input is inconsistent."""


class IrreducibilityKind(enum.Enum):
    """Possible answers of irreducibility()."""
    IRREDUCIBLE = 'irreducible'
    REDUCIBLE = 'reducible'
    UNDECIDED = 'undecided-over-R'


class Irreducibility(typing.NamedTuple):
    """Result of irreducibility().

    Attributes:
      kind: The verdict.
      witness: A proper nonzero invariant subspace, for REDUCIBLE.
      robust: The verdict survives extending scalars to R (C in gaussian
        mode).
      certificate: Short description of how the verdict was reached.
    """
    kind: IrreducibilityKind
    witness: exact.Subspace | None
    robust: bool
    certificate: str

    @property
    def irreducible(self) -> bool | None:
        """True, False, or None when undecided."""
        if self.kind is IrreducibilityKind.UNDECIDED:
            return None
        return self.kind is IrreducibilityKind.IRREDUCIBLE


class ComplexKind(enum.Enum):
    """Possible answers of complex_structure()."""
    NONE = 'none'
    WITNESS = 'witness'
    EXISTS = 'exists-certificate'
    NOT_APPLICABLE = 'n/a'


class ComplexStructureVerdict(typing.NamedTuple):
    """Result of complex_structure().

    Attributes:
      kind: The verdict.
      matrix: J with J^2 = -1 commuting with the action, for WITNESS.
      element: The commutant element the verdict rests on.
      polynomial: Minimal polynomial of that element.
      certain: False when NONE only means the search came up empty.
    """
    kind: ComplexKind
    matrix: exact.Matrix | None = None
    element: exact.Matrix | None = None
    polynomial: typing.Any = None
    certain: bool = True

    @property
    def exists(self) -> bool | None:
        """True, False, or None when the search was inconclusive."""
        if self.kind in (ComplexKind.WITNESS, ComplexKind.EXISTS):
            return True
        if self.kind is ComplexKind.NONE and self.certain:
            return False
        return None


@dataclasses.dataclass(frozen=True)
class RepReport:
    """Everything analyze() found out about (L_-1, ad L_0)."""
    lower_basis: tuple[polyfield.PolyVectorField, ...]
    linear_basis: tuple[polyfield.PolyVectorField, ...]
    matrices: tuple[exact.Matrix, ...]
    commutant: tuple[exact.Matrix, ...]
    irreducibility: Irreducibility
    complex_structure: ComplexStructureVerdict


def _graded_parts(
    algebra: subalgebra.Subalgebra
) -> tuple[exact.Subspace, list[polyfield.PolyVectorField],
           list[polyfield.PolyVectorField]]:
    if not subalgebra.is_graded(algebra).graded:
        raise NotGraded(repr(algebra))
    lower = algebra.graded_part(-1)
    if lower.is_zero:
        raise EmptyLMinus1(repr(algebra))
    return lower, algebra.graded_basis(-1), algebra.graded_basis(0)


def _action(
    lower: exact.Subspace,
    lower_basis: typing.Sequence[polyfield.PolyVectorField],
    x: polyfield.PolyVectorField,
) -> exact.Matrix:
    """Matrix of ad(x) on L_-1; column j holds [x, lower_basis[j]]."""
    images = [polyfield.bracket(x, y) for y in lower_basis]
    columns = [
        lower.coordinates(polyfield.graded_vector(image, -1))
        for image in images
    ]
    return exact.Matrix.from_columns(columns, lower.dim, lower.domain)


def lower_basis(
    algebra: subalgebra.Subalgebra
) -> list[polyfield.PolyVectorField]:
    """The basis of L_-1 that action matrices are written in."""
    return _graded_parts(algebra)[1]


def action_matrices(algebra: subalgebra.Subalgebra) -> list[exact.Matrix]:
    """ad(b)|L_-1 for every basis element b of L_0.

    Raises:
      NotGraded: The algebra is not graded.
      EmptyLMinus1: L_-1 is zero.
    """
    lower, basis, linear = _graded_parts(algebra)
    return [_action(lower, basis, x) for x in linear]


def _size_and_domain(
    mats: typing.Sequence[exact.Matrix], size: int | None, domain
) -> tuple[int, typing.Any]:
    if mats:
        shape = mats[0].shape
        for m in mats:
            if m.shape != shape or not m.is_square:
                raise exact.DimensionMismatch(
                    f'{m.shape} among {shape} matrices'
                )
        if size is not None and size != shape[0]:
            raise exact.DimensionMismatch(f'size {size} for {shape}')
        return shape[0], domain or mats[0].domain
    if size is None:
        raise Error('no matrices and no size')
    return size, domain or exact.QQ


def commutant(
    mats: typing.Sequence[exact.Matrix],
    size: int | None = None,
    domain=None
) -> list[exact.Matrix]:
    """A basis of {C : C m = m C for every m}.

    Args:
      mats: Square matrices of one size.
      size: Needed only when mats is empty.
      domain: Defaults to the domain of the matrices.
    """
    size, domain = _size_and_domain(mats, size, domain)
    # Unknown C is flattened row major: C[a][b] is variable a * size + b.
    rows = list()
    for m in mats:
        for r, s in itertools.product(range(size), repeat=2):
            row = [domain.zero] * (size * size)
            for t in range(size):
                row[r * size + t] += m[t, s]
                row[t * size + s] -= m[r, t]
            if any(row):
                rows.append(row)
    if rows:
        solutions = exact.kernel(exact.Matrix(rows, domain, size * size))
    else:
        solutions = exact.Subspace.full(size * size, domain)
    result = [
        exact.Matrix.from_flat(size, row, domain) for row in solutions.basis
    ]
    logging.debug('commutant of %d matrices: dimension %d', len(mats),
                  len(result))
    return result


def envelope(
    mats: typing.Sequence[exact.Matrix],
    size: int | None = None,
    domain=None
) -> list[exact.Matrix]:
    """A basis of the unital associative algebra generated by mats."""
    size, domain = _size_and_domain(mats, size, domain)
    identity = exact.Matrix.identity(size, domain)
    span = exact.Subspace(size * size, [identity.flatten()], domain)
    basis = [identity]
    pending = collections.deque([identity])
    while pending:
        a = pending.popleft()
        for m in mats:
            product = a @ m
            flat = product.flatten()
            if flat in span:
                continue
            span = span + exact.Subspace(size * size, [flat], domain)
            basis.append(product)
            pending.append(product)
    logging.debug('envelope of %d matrices: dimension %d', len(mats),
                  len(basis))
    return basis


def _combine(
    basis: typing.Sequence[exact.Matrix], coords: typing.Sequence[typing.Any],
    size: int, domain
) -> exact.Matrix:
    result = exact.Matrix.zeros(size, size, domain)
    for coeff, m in zip(coords, basis):
        if coeff:
            result = result + m.scaled(coeff)
    return result


def _image(m: exact.Matrix) -> list[exact.Vector]:
    return [column for column in m.columns if any(column)]


def is_invariant(
    mats: typing.Sequence[exact.Matrix], subspace: exact.Subspace
) -> bool:
    """True if every matrix maps the subspace into itself."""
    return all(m.apply(v) in subspace for m in mats for v in subspace.basis)


def _verified(
    mats: typing.Sequence[exact.Matrix], witness: exact.Subspace,
    certificate: str
) -> Irreducibility:
    if witness.is_zero or witness.is_full:
        raise VerificationFailure(
            f'{certificate}: witness of dimension {witness.dim} is not proper'
        )
    if not is_invariant(mats, witness):
        raise VerificationFailure(f'{certificate}: witness is not invariant')
    logging.debug('reducible, %s, witness dimension %d', certificate,
                  witness.dim)
    return Irreducibility(
        IrreducibilityKind.REDUCIBLE, witness, True, certificate
    )


def _radical(
    basis: typing.Sequence[exact.Matrix], size: int, domain
) -> list[exact.Matrix]:
    """Kernel of the trace form trace(a b) on the span of basis."""
    gram = exact.Matrix(
        [[(a @ b).trace() for b in basis] for a in basis], domain, len(basis)
    )
    return [
        _combine(basis, row, size, domain) for row in exact.kernel(gram).basis
    ]


def _center(
    basis: typing.Sequence[exact.Matrix], mats: typing.Sequence[exact.Matrix],
    size: int, domain
) -> list[exact.Matrix]:
    """Elements of span(basis) commuting with every generator."""
    rows = list()
    for m in mats:
        commutators = [a.commutator(m).flatten() for a in basis]
        rows.extend(list(row) for row in zip(*commutators) if any(row))
    if not rows:
        return list(basis)
    solutions = exact.kernel(exact.Matrix(rows, domain, len(basis)))
    return [_combine(basis, row, size, domain) for row in solutions.basis]


def _splitting(
    elements: typing.Iterable[exact.Matrix]
) -> tuple[exact.Subspace, str] | None:
    """Kernel of a proper factor of some element's minimal polynomial.

    Each element must commute with the action, so the kernel is invariant.
    """
    for c in elements:
        if not c.determinant():
            if not c.is_zero:
                return exact.kernel(c), 'singular commutant element'
            continue
        poly = exact.minimal_polynomial(c)
        factors = exact.irreducible_factors(poly)
        factor = factors[0]
        if len(factors) > 1 or factor != poly:
            value = exact.evaluate_polynomial(factor, c)
            return exact.kernel(value), f'factor {factor} of {poly}'
    return None


def _pure_part(
    elements: typing.Sequence[exact.Matrix], size: int, domain
) -> list[exact.Matrix]:
    """The trace zero elements of span(elements)."""
    traces = [[m.trace() for m in elements]]
    if not any(traces[0]):
        return list(elements)
    solutions = exact.kernel(exact.Matrix(traces, domain, len(elements)))
    return [_combine(elements, row, size, domain) for row in solutions.basis]


def _is_division_over_reals(
    elements: typing.Sequence[exact.Matrix], size: int, domain
) -> bool:
    """True if span(elements) tensored with R is C or the quaternions."""
    if len(elements) not in (2, 4):
        return False
    pure = _pure_part(elements, size, domain)
    if len(pure) != len(elements) - 1:
        return False
    gram = exact.Matrix(
        [[(a @ b).trace() for b in pure] for a in pure], domain, len(pure)
    )
    return exact.is_negative_definite(gram)


def irreducibility(
    mats: typing.Sequence[exact.Matrix],
    size: int | None = None,
    domain=None
) -> Irreducibility:
    """Decide whether the matrices leave a proper nonzero subspace invariant.

    The associative envelope A of the matrices is split, in order, by its
    radical, by central elements with reducible minimal polynomials, and by
    zero divisors in the commutant.  When none splits and A is not all of
    End(V), the commutant decides: scalars, or (over the rationals) a
    definite copy of C or the quaternions, keep the answer irreducible after
    extending scalars to R; anything else is undecided.

    Args:
      mats: Square matrices of one size.
      size: Needed only when mats is empty.
      domain: Defaults to the domain of the matrices.
    """
    size, domain = _size_and_domain(mats, size, domain)
    if not size:
        raise Error('irreducibility of the zero space')
    if size == 1:
        return Irreducibility(
            IrreducibilityKind.IRREDUCIBLE, None, True, 'dimension one'
        )
    algebra = envelope(mats, size, domain)
    if len(algebra) == size * size:
        return Irreducibility(
            IrreducibilityKind.IRREDUCIBLE, None, True,
            'the envelope is the full matrix algebra'
        )
    radical = _radical(algebra, size, domain)
    if radical:
        vectors = [v for r in radical for v in _image(r)]
        return _verified(
            mats, exact.Subspace(size, vectors, domain), 'nonzero radical'
        )
    found = _splitting(_center(algebra, mats, size, domain))
    if found is not None:
        return _verified(mats, found[0], f'central {found[1]}')
    endomorphisms = commutant(mats, size, domain)
    candidates = list(endomorphisms)
    candidates.extend(
        a @ b for a, b in itertools.combinations(endomorphisms, 2)
    )
    found = _splitting(candidates)
    if found is not None:
        return _verified(mats, found[0], f'commutant {found[1]}')
    if len(endomorphisms) == 1:
        return Irreducibility(
            IrreducibilityKind.IRREDUCIBLE, None, True, 'scalar commutant'
        )
    if exact.mode_of(domain) == 'rational' and _is_division_over_reals(
        endomorphisms, size, domain
    ):
        return Irreducibility(
            IrreducibilityKind.IRREDUCIBLE, None, True,
            f'commutant of dimension {len(endomorphisms)} with a definite'
            ' trace form'
        )
    return Irreducibility(
        IrreducibilityKind.UNDECIDED, None, False,
        f'commutant of dimension {len(endomorphisms)} without a zero divisor'
    )


def _check_witness_j(
    mats: typing.Sequence[exact.Matrix], j: exact.Matrix
) -> exact.Matrix:
    size = j.shape[0]
    if j @ j != -exact.Matrix.identity(size, j.domain):
        raise VerificationFailure('J @ J is not -1')
    if not all(j.commutes_with(m) for m in mats):
        raise VerificationFailure('J does not commute with the action')
    return j


def complex_structure(
    mats: typing.Sequence[exact.Matrix],
    size: int | None = None,
    domain=None
) -> ComplexStructureVerdict:
    """Search the commutant for J with J^2 = -1.

    A commutant element c whose minimal polynomial is t^2 + b t + d with
    negative discriminant gives J = (c + b/2) / s for s^2 = d - b^2/4.  When
    s is rational J is returned; otherwise c itself certifies that a real J
    exists.

    Args:
      mats: Square matrices of one size.
      size: Needed only when mats is empty.
      domain: Defaults to the domain of the matrices.
    """
    size, domain = _size_and_domain(mats, size, domain)
    if exact.mode_of(domain) != 'rational':
        return ComplexStructureVerdict(ComplexKind.NOT_APPLICABLE)
    if size % 2:
        return ComplexStructureVerdict(ComplexKind.NONE)
    endomorphisms = commutant(mats, size, domain)
    if len(endomorphisms) == 1:
        return ComplexStructureVerdict(ComplexKind.NONE)
    pure = _pure_part(endomorphisms, size, domain)
    candidates = endomorphisms + pure
    for a, b in itertools.combinations(pure, 2):
        candidates.extend((a + b, a - b))
    for c in candidates:
        poly = exact.minimal_polynomial(c)
        if poly.degree() != 2:
            continue
        d, b, _ = exact.polynomial_coefficients(poly)
        square = d - b * b / 4
        if square <= 0:
            continue
        shifted = c + exact.Matrix.identity(size, domain).scaled(b / 2)
        root = exact.rational_sqrt(square)
        if root is None:
            logging.debug('complex structure exists, irrational: %s', poly)
            return ComplexStructureVerdict(
                ComplexKind.EXISTS, element=c, polynomial=poly
            )
        j = _check_witness_j(mats, shifted.scaled(1 / root))
        return ComplexStructureVerdict(
            ComplexKind.WITNESS, matrix=j, element=c, polynomial=poly
        )
    return ComplexStructureVerdict(ComplexKind.NONE, certain=False)


def analyze(algebra: subalgebra.Subalgebra) -> RepReport:
    """Run every analysis on (L_-1, ad L_0).

    Raises:
      NotGraded: The algebra is not graded.
      EmptyLMinus1: L_-1 is zero.
    """
    lower, basis, linear = _graded_parts(algebra)
    mats = [_action(lower, basis, x) for x in linear]
    size = lower.dim
    domain = lower.domain
    return RepReport(
        lower_basis=tuple(basis),
        linear_basis=tuple(linear),
        matrices=tuple(mats),
        commutant=tuple(commutant(mats, size, domain)),
        irreducibility=irreducibility(mats, size, domain),
        complex_structure=complex_structure(mats, size, domain),
    )


class TransportedJ(typing.NamedTuple):
    """A complex structure on a whole order two algebra.

    Attributes:
      algebra: L on its homogeneous basis (L_-1, then L_0, then L_1).
      matrix: J on the coordinates of that basis.
    """
    algebra: subalgebra.Subalgebra
    matrix: exact.Matrix

    def apply(
        self, x: polyfield.PolyVectorField
    ) -> polyfield.PolyVectorField:
        """J(x) for an element of L."""
        coords = self.algebra.coordinates(x)
        return self.algebra.element(self.matrix.apply(coords))


def transport_complex_structure(
    algebra: subalgebra.Subalgebra, j_minus1: exact.Matrix
) -> TransportedJ:
    """Extend a complex structure on L_-1 to all of L.

    J_1 is the adjoint of J_-1 for the Killing pairing of L_1 with L_-1, and
    J_0(A) is the element acting on L_-1 as A J_-1.

    Args:
      algebra: A graded subalgebra with degrees in -1, 0, 1.
      j_minus1: J on L_-1, in the basis of lower_basis().

    Raises:
      PreconditionFailure: L is not of order two, or J_-1 is not a complex
        structure commuting with the action.
      DegenerateKilling: The pairing of L_1 and L_-1 is degenerate.
      VerificationFailure: The extended J fails one of its identities.
    """
    try:
        graded = algebra.homogeneous()
    except subalgebra.NotGraded as err:
        raise PreconditionFailure(str(err)) from err
    grading = graded.grading
    assert grading is not None
    if set(grading) - {-1, 0, 1}:
        raise PreconditionFailure(f'degrees {sorted(set(grading))}')
    lower = [i for i, p in enumerate(grading) if p == -1]
    linear = [i for i, p in enumerate(grading) if p == 0]
    upper = [i for i, p in enumerate(grading) if p == 1]
    size = len(lower)
    domain = graded.space.domain
    if not size:
        raise PreconditionFailure('L_-1 is zero')
    if j_minus1.shape != (size, size):
        raise PreconditionFailure(
            f'J_-1 of shape {j_minus1.shape} for dim L_-1 = {size}'
        )
    j_minus1 = exact.Matrix(j_minus1.rows, domain, size)
    identity = exact.Matrix.identity(size, domain)
    if j_minus1 @ j_minus1 != -identity:
        raise PreconditionFailure('J_-1 @ J_-1 is not -1')

    def restricted(coords: typing.Sequence[typing.Any]) -> exact.Matrix:
        ad = graded.ad_matrix(coords)
        return exact.Matrix(
            [[ad[r, c] for c in lower] for r in lower], domain, size
        )

    mats = [
        restricted(exact.unit_vector(graded.dim, i, domain)) for i in linear
    ]
    if not all(j_minus1.commutes_with(m) for m in mats):
        raise PreconditionFailure('J_-1 does not commute with ad L_0')

    gram = subalgebra.killing_form(graded)
    if len(upper) != size:
        raise DegenerateKilling(f'dim L_1 = {len(upper)}, dim L_-1 = {size}')
    pairing = exact.Matrix(
        [[gram[a, b] for b in lower] for a in upper], domain, size
    )
    if not pairing.determinant():
        raise DegenerateKilling('the pairing of L_1 and L_-1 is singular')
    j_plus1 = (pairing @ j_minus1 @ pairing.inverse()).transpose()

    # J_0(A) solves ad(y)|L_-1 = ad(A)|L_-1 @ J_-1 for y in L_0.
    flats = [m.flatten() for m in mats]
    system = exact.Matrix.from_columns(flats, size * size, domain)
    if linear and exact.kernel(system).dim:
        raise PreconditionFailure('L_0 does not act faithfully on L_-1')
    j_zero = list()
    for m in mats:
        solution = exact.solve(system, (m @ j_minus1).flatten())
        if solution is None:
            raise VerificationFailure('J_0 leaves L_0')
        j_zero.append(solution)

    dim = graded.dim
    full = [[domain.zero] * dim for _ in range(dim)]
    for block, indices in ((j_minus1, lower), (j_plus1, upper)):
        for r, row in enumerate(indices):
            for c, col in enumerate(indices):
                full[row][col] = block[r, c]
    for c, col in enumerate(linear):
        for r, row in enumerate(linear):
            full[row][col] = j_zero[c][r]
    j = exact.Matrix(full, domain, dim)
    _verify_transport(graded, j, gram, lower, upper)
    logging.info('complex structure transported to dimension %d', dim)
    return TransportedJ(graded, j)


def _verify_transport(
    graded: subalgebra.Subalgebra, j: exact.Matrix, gram: exact.Matrix,
    lower: typing.Sequence[int], upper: typing.Sequence[int]
):
    dim = graded.dim
    domain = graded.space.domain
    if j @ j != -exact.Matrix.identity(dim, domain):
        raise VerificationFailure('J @ J is not -1 on L')
    units = [exact.unit_vector(dim, i, domain) for i in range(dim)]
    images = [j.apply(u) for u in units]
    for a, b in itertools.product(range(dim), repeat=2):
        left = j.apply(graded.bracket_coordinates(units[a], units[b]))
        right = graded.bracket_coordinates(images[a], units[b])
        if left != right:
            raise VerificationFailure(
                f'J[b{a + 1}, b{b + 1}] != [J b{a + 1}, b{b + 1}]'
            )

    def killing(u, v):
        w = gram.apply(v)
        return sum((x * y for x, y in zip(u, w)), domain.zero)

    for a in upper:
        for b in lower:
            if killing(images[a], units[b]) != killing(units[a], images[b]):
                raise VerificationFailure(
                    f'B(J b{a + 1}, b{b + 1}) != B(b{a + 1}, J b{b + 1})'
                )
