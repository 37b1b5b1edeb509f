"""Tests for subalgebra.py"""

import itertools
import random
import unittest

from vectpol import catalog
from vectpol import exact
from vectpol import fieldtext
from vectpol import polyfield
from vectpol import subalgebra
from vectpol import symtensor

QQ = exact.QQ

N1 = polyfield.SpaceDescriptor(1)
N2 = polyfield.SpaceDescriptor(2)


def field(text, space=N2):
    return fieldtext.parse_field(text, space)


def fields(*texts, space=N2):
    return [field(text, space) for text in texts]


def sl2():
    return subalgebra.Subalgebra(
        N1, fields('d1', 'x1*d1', 'x1^2*d1', space=N1)
    )


def constants_part(space):
    return exact.Subspace.full(space.n)


def linear_part(space):
    return exact.Subspace.full(polyfield.graded_dimension(space.n, 0))


class SubalgebraTest(unittest.TestCase):

    def test_dependent(self):
        with self.assertRaises(subalgebra.DependentBasis):
            subalgebra.Subalgebra(N2, fields('d1', '2*d1'))

    def test_not_closed(self):
        with self.assertRaises(subalgebra.NotClosed) as result:
            subalgebra.Subalgebra(N1, fields('d1', 'x1^2*d1', space=N1))

        self.assertEqual(field('2*x1*d1', N1), result.exception.bracket)

    def test_structure_constants_reproduce_brackets(self):
        algebra = catalog.projective(N2)
        for i, j in itertools.product(range(algebra.dim), repeat=2):
            self.assertEqual(
                polyfield.bracket(algebra.basis[i], algebra.basis[j]),
                algebra.element(algebra.structure_constants[i][j])
            )

    def test_bracket_coordinates(self):
        rng = random.Random(40)
        algebra = catalog.conformal(N2, 2, 0)
        for _ in range(10):
            u = [QQ(rng.randint(-3, 3)) for _ in range(algebra.dim)]
            v = [QQ(rng.randint(-3, 3)) for _ in range(algebra.dim)]
            self.assertEqual(
                polyfield.bracket(algebra.element(u), algebra.element(v)),
                algebra.element(algebra.bracket_coordinates(u, v))
            )

    def test_coordinates(self):
        algebra = sl2()

        self.assertEqual((QQ(1), QQ(0), QQ(-2)),
                         algebra.coordinates(field('d1 - 2*x1^2*d1', N1)))
        with self.assertRaises(subalgebra.NotInSubalgebra):
            algebra.coordinates(field('x1^3*d1', N1))
        self.assertNotIn(field('x1^3*d1', N1), algebra)

    def test_ad_matrix(self):
        algebra = sl2()

        self.assertEqual(
            exact.Matrix([[-1, 0, 0], [0, 0, 0], [0, 0, 1]]),
            algebra.basis_ad_matrix(1)
        )
        self.assertEqual(algebra.basis_ad_matrix(1),
                         algebra.ad_matrix((0, 1, 0)))

    def test_graded_parts(self):
        algebra = catalog.projective(N2)

        self.assertEqual({-1: 2, 0: 4, 1: 2}, algebra.graded_dims())
        self.assertEqual(0, algebra.graded_part(2).dim)

    def test_graded_part_is_intersection(self):
        algebra = subalgebra.Subalgebra(N2, fields('d1 + x1*d2', 'd2'))

        self.assertEqual(1, algebra.graded_part(-1).dim)
        self.assertEqual(0, algebra.graded_part(0).dim)

    def test_equality(self):
        algebra = sl2()
        other = subalgebra.Subalgebra(
            N1, fields('x1^2*d1 + d1', 'x1*d1', 'd1', space=N1)
        )

        self.assertEqual(algebra, other)
        self.assertEqual(hash(algebra), hash(other))
        self.assertNotEqual(algebra, catalog.projective(N2))

    def test_homogeneous(self):
        algebra = subalgebra.Subalgebra(
            N1, fields('x1^2*d1 + d1', 'x1*d1', 'd1', space=N1)
        )

        result = algebra.homogeneous()

        self.assertEqual((-1, 0, 1), result.grading)
        self.assertEqual(algebra, result)
        self.assertIsNone(algebra.grading)


class CloseUnderBracketTest(unittest.TestCase):

    def test_already_closed(self):
        result = subalgebra.close_under_bracket(
            fields('d1', 'x1*d1', 'x1^2*d1', space=N1)
        )

        self.assertEqual(3, result.dim)

    def test_projective_generators(self):
        result = subalgebra.close_under_bracket(
            catalog.projective_generators(N2)
        )

        self.assertEqual(8, result.dim)

    def test_generated(self):
        generators = fields('d1', 'x1^2*d1', space=N1)

        result = subalgebra.close_under_bracket(generators)

        self.assertEqual(sl2(), result)

    def test_idempotent(self):
        algebra = catalog.projective(N2)

        self.assertIs(algebra, subalgebra.close_under_bracket(algebra))
        self.assertEqual(
            algebra, subalgebra.close_under_bracket(algebra.basis)
        )

    def test_cap_exceeded(self):
        generators = fields('d1', 'd2', 'x1*d1 + x2*d2', 'x1^2*d1', 'x1^2*d2')

        with self.assertRaises(subalgebra.CapExceeded) as result:
            subalgebra.close_under_bracket(
                generators, subalgebra.Caps(max_degree=5)
            )

        self.assertGreater(result.exception.degree, 5)

    def test_dimension_cap(self):
        with self.assertRaises(subalgebra.CapExceeded) as result:
            subalgebra.close_under_bracket(
                catalog.projective_generators(N2), subalgebra.Caps(max_dim=5)
            )

        self.assertEqual(6, result.exception.dimension)

    def test_empty(self):
        self.assertEqual(
            0, subalgebra.close_under_bracket([], space=N2).dim
        )
        with self.assertRaises(subalgebra.Error):
            subalgebra.close_under_bracket([])


class GradedClosureTest(unittest.TestCase):

    def test_projective(self):
        l_plus = fields('x1^2*d1 + x1*x2*d2', 'x1*x2*d1 + x2^2*d2')

        result = subalgebra.graded_closure(
            N2, constants_part(N2), linear_part(N2), l_plus
        )

        self.assertEqual(8, result.dim)
        self.assertEqual(catalog.projective(N2), result)
        self.assertEqual(((), ), tuple(subalgebra.lower_series(l_plus)[1:]))

    def test_sl2(self):
        result = subalgebra.graded_closure(
            N1, exact.Subspace.full(1),
            exact.Subspace(1, [(1,)]), fields('x1^2*d1', space=N1)
        )

        self.assertEqual(3, result.dim)

    def test_violation(self):
        with self.assertRaises(subalgebra.HypothesisViolation) as result:
            subalgebra.graded_closure(
                N2, constants_part(N2), exact.Subspace(4),
                fields('x1^2*d1')
            )

        self.assertEqual(field('2*x1*d1'), result.exception.bracket)
        self.assertIn('[L_-1, L+]', result.exception.inclusion)

    def test_linear_part_not_stable(self):
        with self.assertRaises(subalgebra.HypothesisViolation):
            subalgebra.graded_closure(
                N2, constants_part(N2), linear_part(N2), fields('x1^2*d1')
            )


class LowerSeriesTest(unittest.TestCase):

    def test_abelian(self):
        series = subalgebra.lower_series(fields('x1^2*d2', 'x1^3*d2'))

        self.assertEqual(2, len(series[0]))
        self.assertEqual((), series[1])
        self.assertEqual(2, len(series))

    def test_cap(self):
        with self.assertRaises(subalgebra.CapExceeded):
            subalgebra.lower_series(
                fields('x1^2*d1', 'x1^2*d2', 'x1^3*d1'),
                subalgebra.Caps(max_degree=6)
            )


class IsGradedTest(unittest.TestCase):

    def test_projective(self):
        result = subalgebra.is_graded(catalog.projective(N2))

        self.assertTrue(result.graded)
        self.assertEqual([-1, 0, 1], sorted(result.components))

    def test_not_graded(self):
        algebra = subalgebra.Subalgebra(N1, fields('d1 + x1^2*d1', space=N1))

        result = subalgebra.is_graded(algebra)

        self.assertFalse(result.graded)
        self.assertEqual({}, result.components)

    def test_two_dimensional(self):
        algebra = subalgebra.Subalgebra(N2, fields('d1 + x1*d2', 'd2'))

        self.assertFalse(subalgebra.is_graded(algebra).graded)

    def test_contains_euler(self):
        algebra = subalgebra.close_under_bracket(
            fields('x1*d1 + x2*d2', 'd1', 'd2', 'x2*d1')
        )

        self.assertIn(polyfield.euler(N2), algebra)
        self.assertTrue(subalgebra.is_graded(algebra).graded)


class NormalizerTowerTest(unittest.TestCase):

    def brute_force(self, degree):
        """Kernel of X -> (d2 part of ad(d1)^(degree+1) X), by brackets."""
        d1 = field('d1')
        keys = polyfield.graded_keys(2, degree)
        row = list()
        for alpha, k in keys:
            x = polyfield.PolyVectorField.monomial(N2, alpha, k)
            for _ in range(degree + 1):
                x = polyfield.bracket(d1, x)
            row.append(x.coefficient((0, 0), 1))
        return exact.kernel(exact.Matrix([row]))

    def test_dims(self):
        d1_only = exact.Subspace(2, [(1, 0)])

        tower = subalgebra.normalizer_tower(N2, d1_only, 1)

        self.assertEqual([1, 3, 5], [part.dim for part in tower])

    def test_linear_part(self):
        d1_only = exact.Subspace(2, [(1, 0)])

        tower = subalgebra.normalizer_tower(N2, d1_only, 1)

        expected = exact.Subspace(
            4, [
                polyfield.graded_vector(x, 0)
                for x in fields('x1*d1', 'x2*d1', 'x2*d2')
            ]
        )
        self.assertEqual(expected, tower[1])
        self.assertNotIn(polyfield.graded_vector(field('x1^2*d2'), 1),
                         tower[2])

    def test_brute_force(self):
        d1_only = exact.Subspace(2, [(1, 0)])

        tower = subalgebra.normalizer_tower(N2, d1_only, 3)

        for degree in range(4):
            self.assertEqual(self.brute_force(degree), tower[degree + 1])

    def test_full(self):
        tower = subalgebra.normalizer_tower(N2, exact.Subspace.full(2), 2)

        self.assertTrue(all(part.is_full for part in tower))

    def test_monomial_multiples(self):
        h = (QQ(2), QQ(-1))
        f_space = exact.Subspace(2, [h])
        tower = subalgebra.normalizer_tower(N2, f_space, 3)
        for total in range(4):
            for alpha in polyfield.monomials(2, total):
                x = polyfield.PolyVectorField.from_terms(
                    N2, {(alpha, 0): h[0], (alpha, 1): h[1]}
                )
                self.assertIn(
                    polyfield.graded_vector(x, total - 1), tower[total]
                )

    def test_bad_degree(self):
        with self.assertRaises(subalgebra.Error):
            subalgebra.normalizer_tower(N2, exact.Subspace.full(2), -1)

    def test_check_tower(self):
        d1_only = exact.Subspace(2, [(1, 0)])
        tower = subalgebra.normalizer_tower(N2, d1_only, 2)

        for seed in range(5):
            subalgebra.check_tower(N2, tower, seed)

    def test_check_tower_bad_bracket(self):
        d1_only = exact.Subspace(2, [(1, 0)])
        # All of Vect_0 holds x1*d2, and [d1, x1*d2] = d2.
        tower = [d1_only, linear_part(N2)]

        with self.assertRaisesRegex(subalgebra.ConsistencyError, r'n_-1'):
            subalgebra.check_tower(N2, tower)


class KillingFormTest(unittest.TestCase):

    def test_sl2(self):
        gram = subalgebra.killing_form(sl2())

        self.assertEqual(QQ(2), gram[1, 1])
        self.assertEqual(QQ(-4), gram[0, 2])
        self.assertEqual(gram, gram.transpose())

    def test_abelian(self):
        algebra = subalgebra.Subalgebra(N2, fields('d1', 'd2'))

        self.assertTrue(algebra.killing_form().is_zero)

    def test_invariance(self):
        rng = random.Random(41)
        algebra = catalog.projective(N2)
        gram = algebra.killing_form()
        dim = algebra.dim

        def pairing(u, v):
            return sum(
                (u[i] * gram[i, j] * v[j]
                 for i in range(dim)
                 for j in range(dim)), QQ(0)
            )

        for _ in range(5):
            x, y, z = ([QQ(rng.randint(-2, 2)) for _ in range(dim)]
                       for _ in range(3))
            self.assertEqual(
                QQ(0),
                pairing(algebra.bracket_coordinates(z, x), y)
                + pairing(x, algebra.bracket_coordinates(z, y))
            )

    def test_duality(self):
        for algebra in (catalog.projective(N2), catalog.conformal(N2, 2, 0)):
            lower = algebra.graded_basis(-1)
            upper = algebra.graded_basis(1)
            gram = algebra.killing_form()
            pairing = exact.Matrix(
                [
                    [
                        exact.Matrix([algebra.coordinates(a)]).apply(
                            gram.apply(algebra.coordinates(b))
                        )[0] for b in lower
                    ] for a in upper
                ]
            )
            self.assertTrue(pairing.determinant())


class IdealTest(unittest.TestCase):

    def test_projective(self):
        algebra = catalog.projective(N2)

        ideal = subalgebra.ideal_generated_by(algebra, field('d1'))

        self.assertTrue(ideal.is_full)

    def test_abelian(self):
        algebra = subalgebra.Subalgebra(N2, fields('d1', 'd2'))

        ideal = subalgebra.ideal_generated_by(algebra, field('d1'))

        self.assertEqual(1, ideal.dim)

    def test_euler_generates_constants(self):
        algebra = subalgebra.Subalgebra(
            N2, fields('d1', 'd2', 'x1*d1 + x2*d2')
        )

        ideal = subalgebra.ideal_generated_by(algebra, polyfield.euler(N2))

        for x in fields('d1', 'd2'):
            self.assertIn(algebra.coordinates(x), ideal)

    def test_not_in_algebra(self):
        with self.assertRaises(subalgebra.NotInSubalgebra):
            subalgebra.ideal_generated_by(sl2(), field('x1^3*d1', N1))

    def test_ideals_contain_constants(self):
        algebra = catalog.projective(N2)
        for x in algebra.basis:
            ideal = subalgebra.ideal_generated_by(algebra, x)
            for constant in catalog.constant_fields(N2):
                self.assertIn(algebra.coordinates(constant), ideal)

    def test_ideals_are_graded(self):
        fixtures = (
            subalgebra.add_euler(catalog.sl2_chain(N2)),
            catalog.affine(N2),
            subalgebra.Subalgebra(N2, fields('d1', 'd2', 'x1*d1 + x2*d2')),
        )
        for algebra in fixtures:
            self.assertIn(polyfield.euler(N2), algebra)
            for x in algebra.basis:
                ideal = subalgebra.ideal_generated_by(algebra, x)
                self.assertTrue(subalgebra.koecher_graded(algebra, ideal))

    def test_koecher_graded_false(self):
        algebra = catalog.projective(N2)
        mixed = exact.Subspace(
            algebra.dim, [algebra.coordinates(field('d1 + x1*d1'))]
        )

        self.assertFalse(subalgebra.koecher_graded(algebra, mixed))


class IsSimpleTest(unittest.TestCase):

    def test_projective(self):
        self.assertTrue(subalgebra.is_simple(catalog.projective(N2)))

    def test_affine(self):
        self.assertFalse(subalgebra.is_simple(catalog.affine(N2)))

    def test_divergence_free_with_euler(self):
        low = catalog.divergence_free(N2, 0).fields()

        algebra = subalgebra.close_under_bracket(low + [polyfield.euler(N2)])

        self.assertEqual(6, algebra.dim)
        self.assertFalse(subalgebra.is_simple(algebra))

    def test_abelian(self):
        self.assertFalse(
            subalgebra.is_simple(subalgebra.Subalgebra(N2, fields('d1')))
        )

    def test_conformal(self):
        self.assertTrue(
            subalgebra.is_simple(
                catalog.conformal(polyfield.SpaceDescriptor(3), 3, 0)
            )
        )


class EulerElementTest(unittest.TestCase):

    def test_projective(self):
        self.assertEqual(
            polyfield.euler(N2),
            subalgebra.euler_element(catalog.projective(N2))
        )

    def test_sl2(self):
        self.assertEqual(field('x1*d1', N1), subalgebra.euler_element(sl2()))

    def test_constants(self):
        algebra = subalgebra.Subalgebra(N2, fields('d1', 'd2'))

        self.assertIsNone(subalgebra.euler_element(algebra))

    def test_not_unique(self):
        algebra = subalgebra.Subalgebra(N2, fields('x1*d1', 'x2*d2'))

        with self.assertRaises(subalgebra.NotUnique) as result:
            subalgebra.euler_element(algebra)

        self.assertEqual(2, result.exception.kernel_dim)

    def test_not_graded(self):
        algebra = subalgebra.Subalgebra(N1, fields('d1 + x1^2*d1', space=N1))

        with self.assertRaises(subalgebra.NotGraded):
            subalgebra.euler_element(algebra)


def abstract_sl2():
    # f-, h, f+
    return subalgebra.AbstractGradedAlgebra.from_brackets(
        (-1, 0, 1), {
            (1, 0): {0: -1},
            (1, 2): {2: 1},
            (0, 2): {1: 1},
        }
    )


class AbstractGradedAlgebraTest(unittest.TestCase):

    def test_sl2(self):
        algebra = abstract_sl2()

        self.assertEqual(3, algebra.dim)
        self.assertEqual([2], algebra.indices(1))
        self.assertEqual((QQ(0), QQ(-1), QQ(0)),
                         algebra.bracket((0, 0, 1), (1, 0, 0)))

    def test_jacobi(self):
        with self.assertRaises(subalgebra.InvalidStructure):
            subalgebra.AbstractGradedAlgebra.from_brackets(
                (0, 0, 0), {
                    (0, 1): {0: 1},
                    (0, 2): {0: 1},
                    (1, 2): {1: 1},
                }
            )

    def test_grading(self):
        with self.assertRaises(subalgebra.InvalidStructure):
            subalgebra.AbstractGradedAlgebra.from_brackets(
                (-1, -1), {(0, 1): {0: 1}}
            )
        with self.assertRaises(subalgebra.InvalidStructure):
            subalgebra.AbstractGradedAlgebra.from_brackets((2,), {})

    def test_antisymmetry(self):
        zero = (QQ(0), QQ(0))
        with self.assertRaises(subalgebra.InvalidStructure):
            subalgebra.AbstractGradedAlgebra(
                ((zero, (QQ(1), QQ(0))), (zero, zero)), (0, 0)
            )

    def test_to_abstract(self):
        algebra = catalog.projective(N2).to_abstract()

        self.assertEqual((-1, -1, 0, 0, 0, 0, 1, 1), algebra.degrees)

    def test_to_abstract_order(self):
        algebra = subalgebra.Subalgebra(N1, fields('x1^3*d1', space=N1))

        with self.assertRaises(subalgebra.NotOrderTwo):
            algebra.to_abstract()


class PhiEmbedTest(unittest.TestCase):

    def test_sl2(self):
        result = subalgebra.phi_embed(abstract_sl2())

        upper = result.tensors[2]
        self.assertEqual((QQ(1),), upper.evaluate((1,), (1,)))
        self.assertEqual(symtensor.SymTensor(N1, -1, {((0,), 0): 1}),
                         result.tensors[0])
        self.assertEqual(3, result.subalgebra.dim)

    def test_projective(self):
        result = subalgebra.phi_embed(catalog.projective(N2).to_abstract())

        self.assertEqual({-1: 2, 0: 4, 1: 2}, result.subalgebra.graded_dims())

    def test_linear_part_faithful(self):
        abstract = catalog.conformal(N2, 2, 0).to_abstract()

        result = subalgebra.phi_embed(abstract)

        for tensor in result.tensors:
            self.assertFalse(tensor.is_zero)

    def test_not_faithful(self):
        algebra = subalgebra.AbstractGradedAlgebra.from_brackets((-1, 0), {})

        with self.assertRaises(subalgebra.NotMonomorphism):
            subalgebra.phi_embed(algebra)

    def test_no_constants(self):
        algebra = subalgebra.AbstractGradedAlgebra.from_brackets((0,), {})

        with self.assertRaises(subalgebra.Error):
            subalgebra.phi_embed(algebra)


class DerivedPartTest(unittest.TestCase):

    def test_projective(self):
        self.assertTrue(subalgebra.derived_part_check(catalog.projective(N2)))

    def test_conformal(self):
        self.assertTrue(
            subalgebra.derived_part_check(catalog.conformal(N2, 2, 0))
        )

    def test_affine(self):
        self.assertFalse(subalgebra.derived_part_check(catalog.affine(N2)))

    def test_order(self):
        algebra = subalgebra.Subalgebra(N1, fields('x1^3*d1', space=N1))

        with self.assertRaises(subalgebra.NotOrderTwo):
            subalgebra.derived_part_check(algebra)


class AddEulerTest(unittest.TestCase):

    def test_adds(self):
        algebra = catalog.sl2_chain(N2)

        result = subalgebra.add_euler(algebra)

        self.assertEqual(algebra.dim + 1, result.dim)
        self.assertIn(polyfield.euler(N2), result)

    def test_already_there(self):
        algebra = catalog.projective(N2)

        self.assertIs(algebra, subalgebra.add_euler(algebra))

    def test_not_graded(self):
        algebra = subalgebra.Subalgebra(N1, fields('d1 + x1^2*d1', space=N1))

        with self.assertRaises(subalgebra.NotGraded):
            subalgebra.add_euler(algebra)


class RealifyTest(unittest.TestCase):

    def test_projective_line(self):
        complex_line = polyfield.SpaceDescriptor(1, 'gaussian')

        result = subalgebra.realify(catalog.projective(complex_line))

        self.assertEqual(2, result.space.n)
        self.assertEqual(6, result.dim)
        self.assertEqual({-1: 2, 0: 2, 1: 2}, result.graded_dims())

    def test_rational(self):
        with self.assertRaises(subalgebra.Error):
            subalgebra.realify(sl2())


class GradedSpanTest(unittest.TestCase):

    def test_from_fields(self):
        span = subalgebra.GradedSpan.from_fields(N2, fields('d1 + x1*d1'), 1)

        self.assertEqual({-1: 1, 0: 1, 1: 0}, span.graded_dims())
        self.assertIn(field('d1'), span)
        self.assertNotIn(field('d2'), span)
        self.assertNotIn(field('x1^3*d1'), span)

    def test_above_truncation(self):
        with self.assertRaises(subalgebra.Error):
            subalgebra.GradedSpan.from_fields(N2, fields('x1^3*d1'), 1)

    def test_full(self):
        span = subalgebra.GradedSpan.full(N2, 1)

        self.assertEqual(2 + 4 + 6, span.dim)
        self.assertTrue(span.includes(catalog.projective(N2)))
        violations, exempt = span.closure_defects()
        self.assertEqual([], violations)
        self.assertEqual(15, exempt)

    def test_defects(self):
        span = subalgebra.GradedSpan.from_fields(
            N2, fields('d1', 'x1^2*d1'), 1
        )

        violations, _ = span.closure_defects()

        self.assertEqual([field('2*x1*d1')], violations)

    def test_divergence_free_closed(self):
        span = catalog.divergence_free(N2, 2)

        violations, exempt = span.closure_defects()

        self.assertEqual([], violations)
        self.assertGreater(exempt, 0)

    def test_dimension_mismatch(self):
        with self.assertRaises(exact.DimensionMismatch):
            subalgebra.GradedSpan(N2, {0: exact.Subspace(3)}, 0)


class ProlongationEnvelopeTest(unittest.TestCase):

    def test_line(self):
        f_space = exact.Subspace(2, [(1, 0)])

        result = subalgebra.prolongation_envelope(N2, f_space, 2)

        self.assertEqual(2, result.part(-1).dim)
        self.assertEqual(3, result.part(0).dim)
        self.assertTrue(result.includes(catalog.diagonal(N2)))
        self.assertEqual([], result.closure_defects()[0])
        self.assertLess(result.dim, subalgebra.GradedSpan.full(N2, 2).dim)
        self.assertIn(field('x1^3*d1'), result)
        self.assertNotIn(field('x1^2*d2'), result)
