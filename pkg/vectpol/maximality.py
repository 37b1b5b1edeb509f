"""Decide whether a graded subalgebra is maximal.

A finite dimensional graded L is maximal exactly when

  1. L_-1 is all of Vect_-1,
  2. L_0 acts irreducibly on L_-1,
  3. L_1 is not zero, and
  4. over the reals, the action admits no complex structure.

check_maximal() evaluates each condition and, when one fails, builds an
explicit graded span W with L strictly inside W strictly inside
Vect_(<= d), verified exactly below its truncation degree d.
"""

from __future__ import annotations

import dataclasses
import enum
import logging
import typing

from vectpol import catalog
from vectpol import constants
from vectpol import exact
from vectpol import polyfield
from vectpol import repanalysis
from vectpol import subalgebra
from vectpol import symtensor


class Error(Exception):
    """Base module exception."""


class WitnessFailure(Error):
    """A constructed witness does not sit strictly between L and Vect."""


class Verdict(enum.Enum):
    """Overall answer of check_maximal()."""
    MAXIMAL = 'maximal'
    NOT_MAXIMAL = 'not-maximal'
    NOT_GRADED = 'not-graded'
    UNDECIDED = 'undecided'


class WitnessKind(enum.Enum):
    """Which construction produced a witness."""
    TOWER = 'truncated-normalizer-tower'
    TJ = 'tj-envelope'
    PROJECTIVE = 'projective-envelope'
    INVARIANT = 'invariant-subspace-envelope'


CONDITIONS = (
    'constants_full',
    'irreducible',
    'l1_nonzero',
    'no_complex_structure',
)

NOT_APPLICABLE = 'n/a'

Condition: typing.TypeAlias = bool | str | None


@dataclasses.dataclass(frozen=True)
class Witness:
    """A graded span strictly between L and Vect_(<= truncation).

    Attributes:
      kind: The construction used.
      span: The witness itself.
      exempt_brackets: Basis pairs whose bracket lands above the truncation
        and so was not checked.
    """
    kind: WitnessKind
    span: subalgebra.GradedSpan
    exempt_brackets: int

    @property
    def truncation_degree(self) -> int:
        """Highest degree held by the span."""
        return self.span.truncation

    @property
    def dim(self) -> int:
        """Dimension of the span."""
        return self.span.dim


@dataclasses.dataclass(frozen=True)
class MaximalityReport:
    """Per condition results and the overall verdict.

    A condition is True or False when decided, None when it could not be
    evaluated or decided, and 'n/a' for condition 4 in gaussian mode.
    """
    algebra: subalgebra.Subalgebra
    graded: bool
    constants_full: Condition = None
    irreducible: Condition = None
    l1_nonzero: Condition = None
    no_complex_structure: Condition = None
    verdict: Verdict = Verdict.UNDECIDED
    witness: Witness | None = None
    certificate: str | None = None
    rep: repanalysis.RepReport | None = None

    def conditions(self) -> dict[str, Condition]:
        """The graded flag followed by the four conditions, in order."""
        result: dict[str, Condition] = {'graded': self.graded}
        for name in CONDITIONS:
            result[name] = getattr(self, name)
        return result

    @property
    def failed(self) -> str | None:
        """Name of the first condition that is False."""
        for name in CONDITIONS:
            if getattr(self, name) is False:
                return name
        return None


def truncation_degree(algebra: subalgebra.Subalgebra, requested: int) -> int:
    """The witness degree actually used.

    High enough to hold L with a degree to spare, and at least 2 so that
    Vect_(<= d) is infinite type even for n = 1.
    """
    top = max(algebra.degrees(), default=-1)
    return max(requested, top + 1, 2)


def _lift(
    lower_basis: typing.Sequence[polyfield.PolyVectorField],
    subspace: exact.Subspace, n: int
) -> exact.Subspace:
    """A subspace of L_-1 in its own basis, as a subspace of K^n."""
    vectors = list()
    for row in subspace.basis:
        total = polyfield.PolyVectorField.zero(lower_basis[0].space)
        for coeff, x in zip(row, lower_basis):
            if coeff:
                total = total + x.scaled(coeff)
        vectors.append(polyfield.graded_vector(total, -1))
    return exact.Subspace(n, vectors, subspace.domain)


def tower_witness(
    algebra: subalgebra.Subalgebra, degree: int
) -> subalgebra.GradedSpan:
    """The normalizer tower n(L_-1) truncated at degree."""
    space = algebra.space
    f_space = algebra.graded_part(-1)
    tower = subalgebra.normalizer_tower(space, f_space, degree)
    parts = {i - 1: part for i, part in enumerate(tower)}
    return subalgebra.GradedSpan(space, parts, degree)


def invariant_subspace_witness(
    algebra: subalgebra.Subalgebra, f_space: exact.Subspace, degree: int
) -> subalgebra.GradedSpan:
    """Fields whose derivative preserves an invariant F, truncated."""
    return subalgebra.prolongation_envelope(algebra.space, f_space, degree)


def projective_witness(
    algebra: subalgebra.Subalgebra, degree: int
) -> subalgebra.GradedSpan:
    """The projective algebra as a truncated span."""
    space = algebra.space
    return subalgebra.GradedSpan.from_fields(
        space, catalog.projective(space).basis, degree
    )


def tj_witness(
    algebra: subalgebra.Subalgebra, j_matrix: exact.Matrix, degree: int
) -> subalgebra.GradedSpan:
    """Fields whose tensors are complex linear for J, truncated."""
    space = algebra.space
    parts = {
        p: symtensor.tj_field_subspace(space, j_matrix, p)
        for p in range(-1, degree + 1)
    }
    return subalgebra.GradedSpan(space, parts, degree)


def verify_witness(
    algebra: subalgebra.Subalgebra, kind: WitnessKind,
    span: subalgebra.GradedSpan
) -> Witness:
    """Check L < W < Vect_(<= d) and closure of W below d.

    Raises:
      WitnessFailure: Any of the checks fails.
    """
    if not span.includes(algebra):
        raise WitnessFailure(f'{kind.value} does not contain L')
    if span.dim <= algebra.dim:
        raise WitnessFailure(f'{kind.value} is not larger than L')
    full = subalgebra.GradedSpan.full(algebra.space, span.truncation)
    if span.dim >= full.dim:
        raise WitnessFailure(
            f'{kind.value} is all of Vect_<={span.truncation}'
        )
    violations, exempt = span.closure_defects()
    if violations:
        raise WitnessFailure(
            f'{kind.value} is not closed: {len(violations)} brackets leave it'
        )
    logging.debug('%s witness: dims %s, %d exempt brackets', kind.value,
                  span.graded_dims(), exempt)
    return Witness(kind, span, exempt)


def _negated(verdict: repanalysis.ComplexStructureVerdict) -> Condition:
    if verdict.kind is repanalysis.ComplexKind.NOT_APPLICABLE:
        return NOT_APPLICABLE
    exists = verdict.exists
    if exists is None:
        return None
    return not exists


def check_maximal(
    algebra: subalgebra.Subalgebra,
    witness_degree: int = constants.DEFAULT_WITNESS_DEGREE
) -> MaximalityReport:
    """Evaluate the four conditions and build a witness for the first failure.

    Args:
      algebra: Any finite dimensional subalgebra.
      witness_degree: Requested truncation degree of witnesses; see
        truncation_degree() for the degree actually used.

    Raises:
      WitnessFailure: A witness failed its own verification; this points
        at a defect, not at the input.
    """
    if not subalgebra.is_graded(algebra).graded:
        logging.info('not graded; the criterion does not apply')
        return MaximalityReport(algebra, False, verdict=Verdict.NOT_GRADED)
    n = algebra.space.n
    degree = truncation_degree(algebra, witness_degree)
    lower = algebra.graded_part(-1)
    constants_full = lower.dim == n
    l1_nonzero = not algebra.graded_part(1).is_zero
    rep = None
    irreducible: Condition = None
    no_complex: Condition = None
    if not lower.is_zero:
        rep = repanalysis.analyze(algebra)
        irreducible = rep.irreducibility.irreducible
        no_complex = _negated(rep.complex_structure)
    logging.info(
        'conditions: constants %s, irreducible %s, L_1 %s, no complex %s',
        constants_full, irreducible, l1_nonzero, no_complex
    )

    values = (constants_full, irreducible, l1_nonzero, no_complex)
    failed = next(
        (name for name, value in zip(CONDITIONS, values) if value is False),
        None
    )
    witness = None
    certificate = None
    if failed == 'constants_full':
        witness = verify_witness(
            algebra, WitnessKind.TOWER, tower_witness(algebra, degree)
        )
    elif failed == 'irreducible':
        assert rep is not None and rep.irreducibility.witness is not None
        f_space = _lift(rep.lower_basis, rep.irreducibility.witness, n)
        witness = verify_witness(
            algebra, WitnessKind.INVARIANT,
            invariant_subspace_witness(algebra, f_space, degree)
        )
        certificate = rep.irreducibility.certificate
    elif failed == 'l1_nonzero':
        witness = verify_witness(
            algebra, WitnessKind.PROJECTIVE,
            projective_witness(algebra, degree)
        )
    elif failed == 'no_complex_structure':
        assert rep is not None
        structure = rep.complex_structure
        if structure.matrix is not None:
            j_matrix = _lift_matrix(rep.lower_basis, structure.matrix, n)
            witness = verify_witness(
                algebra, WitnessKind.TJ, tj_witness(algebra, j_matrix, degree)
            )
        certificate = (
            'commutant element with minimal polynomial'
            f' {structure.polynomial}'
        )

    if failed:
        verdict = Verdict.NOT_MAXIMAL
    elif None in values:
        verdict = Verdict.UNDECIDED
        if irreducible is None and rep is not None:
            certificate = rep.irreducibility.certificate
        else:
            certificate = 'complex structure search was inconclusive'
    else:
        verdict = Verdict.MAXIMAL
    logging.info('verdict %s', verdict.value)
    return MaximalityReport(
        algebra,
        True,
        constants_full=constants_full,
        irreducible=irreducible,
        l1_nonzero=l1_nonzero,
        no_complex_structure=no_complex,
        verdict=verdict,
        witness=witness,
        certificate=certificate,
        rep=rep,
    )


def _lift_matrix(
    lower_basis: typing.Sequence[polyfield.PolyVectorField],
    matrix: exact.Matrix, n: int
) -> exact.Matrix:
    """A map of L_-1 in its own basis as a map of K^n, for L_-1 = K^n."""
    columns = [polyfield.graded_vector(x, -1) for x in lower_basis]
    change = exact.Matrix.from_columns(columns, n, matrix.domain)
    return change @ matrix @ change.inverse()
