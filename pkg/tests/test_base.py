#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""Tests for `ncretx.base` package."""

import unittest

from ncretx.base.errors import ConfigurationError, SimulationDivergedError, StateSpaceOverflowError, \
    TransferError
from ncretx.base.utils import iter_bits, mask_to_string, parse_csv_floats, parse_csv_ints, popcount, powerset, \
    receivers_to_mask, string_to_mask


class TestUtils(unittest.TestCase):
    """Tests for `ncretx.base.utils`."""

    def setUp(self):
        """Set up test fixtures, if any."""

    def tearDown(self):
        """Tear down test fixtures, if any."""

    def test_powerset(self):
        true_ps = {
            (),
            (1,), (2,), (3,),
            (1, 2), (1, 3), (2, 3),
            (1, 2, 3)
        }
        self.assertEqual(set(powerset([3, 1, 2])), true_ps)

    def test_bits(self):
        self.assertEqual(popcount(0), 0)
        self.assertEqual(popcount(0b1011), 3)
        self.assertEqual(list(iter_bits(0b1010)), [2, 4])
        self.assertEqual(list(iter_bits(0)), [])

    def test_receivers_to_mask(self):
        self.assertEqual(receivers_to_mask([1, 3], 3), 0b101)
        self.assertEqual(receivers_to_mask([], 3), 0)
        with self.assertRaises(ValueError):
            receivers_to_mask([4], 3)
        with self.assertRaises(ValueError):
            receivers_to_mask([0], 3)

    def test_mask_strings(self):
        # receiver 1 leftmost
        self.assertEqual(mask_to_string(0b001, 3), "100")
        self.assertEqual(string_to_mask("011"), 0b110)
        self.assertEqual(string_to_mask(mask_to_string(0b10110, 5)), 0b10110)
        with self.assertRaises(ValueError):
            string_to_mask("012")
        with self.assertRaises(ValueError):
            string_to_mask("")

    def test_parse_csv(self):
        self.assertEqual(parse_csv_floats("0.1, 0.2,"), (0.1, 0.2))
        self.assertEqual(parse_csv_ints("1,2,3"), (1, 2, 3))
        with self.assertRaises(ValueError):
            parse_csv_floats("0.1,x")
        with self.assertRaises(ValueError):
            parse_csv_ints("1.5")


class TestErrors(unittest.TestCase):
    """Tests for `ncretx.base.errors`."""

    def setUp(self):
        """Set up test fixtures, if any."""

    def tearDown(self):
        """Tear down test fixtures, if any."""

    def test_value_errors(self):
        self.assertTrue(issubclass(ConfigurationError, ValueError))
        self.assertTrue(issubclass(TransferError, ValueError))

    def test_diverged(self):
        e = SimulationDivergedError(12, [3, 4])
        self.assertEqual(e.rounds, 12)
        self.assertEqual(e.pool_sizes, [3, 4])
        self.assertIn("7 lost packets", str(e))

    def test_overflow(self):
        e = StateSpaceOverflowError(100)
        self.assertEqual(e.cap, 100)
        self.assertIn("100", str(e))
