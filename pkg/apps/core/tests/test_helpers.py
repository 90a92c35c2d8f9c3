"""
Tests for helper utilities.
"""

import hashlib
import time

import pytest
from django.test import SimpleTestCase

from apps.core.exceptions import BudgetExceededError, ChecksumMismatchError, ParseError
from apps.core.utils.helpers import Budget, lcm_all, p_valuation, prime_power_parts, sha256_file


class HelpersTestCase(SimpleTestCase):
    """Test cases for arithmetic helpers."""

    def test_prime_power_parts(self):
        """Test splitting integers into prime powers."""
        self.assertEqual(prime_power_parts(12), {2: 2, 3: 1})
        self.assertEqual(prime_power_parts(1), {})
        self.assertEqual(prime_power_parts(64), {2: 6})

    def test_p_valuation(self):
        """Test p-adic valuation."""
        self.assertEqual(p_valuation(48, 2), 4)
        self.assertEqual(p_valuation(48, 3), 1)
        self.assertEqual(p_valuation(7, 2), 0)
        with self.assertRaises(ValueError):
            p_valuation(0, 2)

    def test_lcm_all(self):
        """Test lcm of a list."""
        self.assertEqual(lcm_all([4, 6, 10]), 60)
        self.assertEqual(lcm_all([]), 1)

    def test_unlimited_budget_never_expires(self):
        """Test that a zero budget never raises."""
        budget = Budget(0)
        self.assertTrue(budget.unlimited)
        budget.check('anything')

    def test_budget_expires(self):
        """Test that an exhausted budget raises BudgetExceededError."""
        budget = Budget(0.001)
        time.sleep(0.01)
        with self.assertRaises(BudgetExceededError) as ctx:
            budget.check('row 5')
        self.assertIn('row 5', str(ctx.exception))

    def test_parse_error_location(self):
        """Test that parse errors carry source and line."""
        error = ParseError('bad token', line=3, source='pres.txt')
        self.assertEqual(error.line, 3)
        self.assertEqual(str(error), 'pres.txt:3: bad token')


# ===== FIXTURES =====

@pytest.fixture
def asset_file(tmp_path):
    path = tmp_path / 'asset.txt'
    path.write_bytes(b'gens: a b\n')
    return path


def test_sha256_file_matches_hashlib(asset_file):
    """Test file digest against hashlib directly."""
    assert sha256_file(asset_file) == hashlib.sha256(b'gens: a b\n').hexdigest()


def test_checksum_mismatch_message():
    """Test checksum mismatch carries both digests."""
    error = ChecksumMismatchError('co1_generators.txt', 'aa', 'bb')
    assert error.expected == 'aa'
    assert 'co1_generators.txt' in str(error)
