"""Tests for constants.py"""

import unittest

from vectpol import constants


class CapsTest(unittest.TestCase):

    def test_values(self):
        self.assertEqual(16, constants.DEFAULT_MAX_DEGREE)
        self.assertEqual(200, constants.DEFAULT_MAX_DIM)
        self.assertEqual(3, constants.DEFAULT_WITNESS_DEGREE)

    def test_type(self):
        self.assertIs(type(constants.DEFAULT_MAX_DEGREE), int)
        self.assertIs(type(constants.DEFAULT_MAX_DIM), int)


class ExitCodeTest(unittest.TestCase):

    def test_distinct(self):
        codes = {
            constants.EXIT_MAXIMAL,
            constants.EXIT_ERROR,
            constants.EXIT_NOT_MAXIMAL,
            constants.EXIT_UNDECIDED,
        }
        self.assertEqual(4, len(codes))

    def test_success_is_zero(self):
        self.assertEqual(0, constants.EXIT_MAXIMAL)
