"""Tests for fieldtext.py"""

import random
import unittest

from vectpol import exact
from vectpol import fieldtext
from vectpol import polyfield
from vectpol.test_data import fixtures

N1 = polyfield.SpaceDescriptor(1)
N2 = polyfield.SpaceDescriptor(2)
G1 = polyfield.SpaceDescriptor(1, 'gaussian')


class ParseTest(unittest.TestCase):

    def test_constant(self):
        self.assertEqual(
            polyfield.PolyVectorField.constant(N1, 0),
            fieldtext.parse_field('d1', N1)
        )

    def test_grammar(self):
        result = fieldtext.parse_field('2*x1^2*x2*d1 - x2*d2', N2)

        self.assertEqual(
            {
                ((2, 1), 0): 2,
                ((0, 1), 1): -1,
            }, result.as_dict()
        )

    def test_fraction_and_whitespace(self):
        result = fieldtext.parse_field('  - 1/3 * d2 ', N2)

        self.assertEqual({((0, 0), 1): exact.QQ(-1, 3)}, result.as_dict())

    def test_repeated_variable(self):
        self.assertEqual(
            fieldtext.parse_field('x1^3*d1', N1),
            fieldtext.parse_field('x1*x1^2*d1', N1)
        )

    def test_like_terms(self):
        self.assertEqual(
            fieldtext.parse_field('2*d1', N1),
            fieldtext.parse_field('d1 + d1', N1)
        )
        self.assertTrue(fieldtext.parse_field('d1 - d1', N1).is_zero)

    def test_zero(self):
        self.assertTrue(fieldtext.parse_field('0', N2).is_zero)

    def test_index_out_of_range(self):
        with self.assertRaises(fieldtext.IndexOutOfRange) as result:
            fieldtext.parse_field('x3*d1', N2)

        self.assertEqual(1, result.exception.position)

        with self.assertRaises(fieldtext.IndexOutOfRange):
            fieldtext.parse_field('d0', N2)

    def test_syntax_errors(self):
        cases = (
            ('x1', 2),
            ('2 d1', 2),
            ('d1 +', 4),
            ('x1^*d1', 3),
            ('d1 d2', 3),
            ('', 0),
            ('1/0*d1', 2),
            ('d1 & d2', 3),
        )
        for text, position in cases:
            with self.subTest(text=text):
                with self.assertRaises(fieldtext.ParseError) as result:
                    fieldtext.parse_field(text, N2)
                self.assertEqual(position, result.exception.position)

    def test_message(self):
        with self.assertRaisesRegex(fieldtext.ParseError, 'at position 2'):
            fieldtext.parse_field('x1', N2)

    def test_imaginary_in_rational_mode(self):
        with self.assertRaises(fieldtext.ParseError):
            fieldtext.parse_field('i*d1', N1)

    def test_gaussian(self):
        result = fieldtext.parse_field('(1/2-3i)*x1*d1 + i*d1 - 2i*x1^2*d1',
                                       G1)

        self.assertEqual(
            {
                ((1,), 0): exact.gaussian(exact.QQ(1, 2), -3),
                ((0,), 0): exact.gaussian(0, 1),
                ((2,), 0): exact.gaussian(0, -2),
            }, result.as_dict()
        )

    def test_gaussian_needs_parentheses(self):
        self.assertEqual(
            {((0,), 0): exact.gaussian(1, 2)},
            fieldtext.parse_field('(1+2i)*d1', G1).as_dict()
        )

        with self.assertRaisesRegex(fieldtext.ParseError,
                                    "expected '\\*', found '\\+'") as result:
            fieldtext.parse_field('1+2i*d1', G1)
        self.assertEqual(1, result.exception.position)


class ParseLinesTest(unittest.TestCase):

    def test_comments(self):
        lines = ['# projective line', 'd1', '', 'x1*d1  # dilation']

        result = fieldtext.parse_lines(lines, N1)

        self.assertEqual(2, len(result))

    def test_line_number(self):
        with self.assertRaises(fieldtext.ParseError) as result:
            fieldtext.parse_lines(['d1', 'x2*d1'], N1)

        self.assertEqual(2, result.exception.line)
        self.assertIsInstance(result.exception, fieldtext.IndexOutOfRange)

class ParseScalarTest(unittest.TestCase):

    def test_rational(self):
        self.assertEqual(
            exact.scalar(-1, 2), fieldtext.parse_scalar('-1/2', N1)
        )
        self.assertEqual(exact.scalar(3), fieldtext.parse_scalar(' 3 ', N1))

    def test_gaussian(self):
        for value in (
            exact.gaussian(exact.scalar(1, 2), -3),
            exact.gaussian(0, -1),
            exact.gaussian(2, 0),
        ):
            with self.subTest(value=value):
                text = exact.format_scalar(value)
                self.assertEqual(value, fieldtext.parse_scalar(text, G1))

    def test_invalid(self):
        for text in ('', '1/0', '1 2', 'i'):
            with self.subTest(text=text):
                with self.assertRaises(fieldtext.ParseError):
                    fieldtext.parse_scalar(text, N1)



class FormatTest(unittest.TestCase):

    def test_canonical(self):
        x = fieldtext.parse_field('- x2*d2 + 2*x1^2*x2*d1', N2)

        self.assertEqual('2*x1^2*x2*d1 - x2*d2', fieldtext.format_field(x))

    def test_order(self):
        x = fieldtext.parse_field('d1 + x1*d1 + x2^2*d1 + x1^2*d1 + d2', N2)

        self.assertEqual(
            'x1^2*d1 + x2^2*d1 + x1*d1 + d1 + d2', fieldtext.format_field(x)
        )

    def test_zero(self):
        self.assertEqual(
            '0',
            fieldtext.format_field(polyfield.PolyVectorField.zero(N2))
        )

    def test_fractions(self):
        x = fieldtext.parse_field('-1/3*d2', N2)

        self.assertEqual('-1/3*d2', fieldtext.format_field(x))

    def test_gaussian(self):
        x = fieldtext.parse_field('(1/2-3i)*x1*d1 - i*d1', G1)

        self.assertEqual('(1/2-3i)*x1*d1 - i*d1', fieldtext.format_field(x))

    def test_round_trip(self):
        rng = random.Random(20)
        for mode in ('rational', 'gaussian'):
            for _ in range(30):
                space = polyfield.SpaceDescriptor(rng.randint(1, 3), mode)
                x = fixtures.random_field(rng, space)
                text = fieldtext.format_field(x)
                self.assertEqual(x, fieldtext.parse_field(text, space), text)
