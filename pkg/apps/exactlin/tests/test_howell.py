"""
Unit tests for Howell forms over Z/p^k.
"""

import itertools

import numpy as np
import pytest
from django.test import SimpleTestCase

from apps.exactlin.abelian import FiniteAbelianGroup
from apps.exactlin.howell import (
    ReducedHowell,
    StreamingHowell,
    cokernel_prime_power,
    howell_form,
    kernel_over_prime_power,
    quotient_invariants,
    solve_left,
    span_contains,
)
from apps.exactlin.matrices import PackedMatrix, matmul_mod


def enumerate_row_module(data, q):
    """All Z/q combinations of the rows of data, as a set of tuples."""
    rows = data.shape[0]
    coefficients = np.array(list(itertools.product(range(q), repeat=rows)), dtype=np.int64)
    return {tuple(v) for v in (coefficients @ data) % q}


def random_unimodular(rng, n, q):
    lower = np.tril(rng.integers(0, q, size=(n, n)), -1) + np.eye(n, dtype=np.int64)
    upper = np.triu(rng.integers(0, q, size=(n, n)), 1) + np.eye(n, dtype=np.int64)
    perm = np.eye(n, dtype=np.int64)[rng.permutation(n)]
    return (perm @ lower @ upper) % q


class TestHowellForm(SimpleTestCase):
    """Canonical forms."""

    def test_single_entry(self):
        """Test (2) over Z/4."""
        form = howell_form(PackedMatrix.from_rows([[2]], 4))
        self.assertEqual(form.to_lists(), [[2]])

    def test_diagonal(self):
        """Test diag(1, 2, 4) over Z/8."""
        form = howell_form(PackedMatrix.from_rows([[1, 0, 0], [0, 2, 0], [0, 0, 4]], 8))
        self.assertEqual(form.to_lists(), [[1, 0, 0], [0, 2, 0], [0, 0, 4]])

    def test_annihilator_row_is_added(self):
        """Test that (2, 1) over Z/4 produces the extra row (0, 2)."""
        form = howell_form(PackedMatrix.from_rows([[2, 1]], 4))
        self.assertEqual(form.to_lists(), [[2, 1], [0, 2]])

    def test_idempotent(self):
        """Test howell_form(howell_form(M)) == howell_form(M)."""
        rng = np.random.default_rng(1)
        for _ in range(20):
            data = rng.integers(0, 8, size=(6, 6)) * (rng.random((6, 6)) < 0.6)
            form = howell_form(PackedMatrix.from_array(data, 8))
            self.assertEqual(howell_form(form), form)

    def test_invariant_under_left_multiplication(self):
        """Test that U M has the same form as M for invertible U."""
        rng = np.random.default_rng(2)
        for q in (4, 8, 9, 27):
            for _ in range(5):
                data = rng.integers(0, q, size=(5, 6))
                data[rng.integers(0, 5)] *= 3 if q % 3 == 0 else 2
                unimodular = random_unimodular(rng, 5, q)
                left = howell_form(PackedMatrix.from_array(data, q))
                right = howell_form(PackedMatrix.from_array(matmul_mod(unimodular, data % q, q), q))
                self.assertEqual(left, right)

    def test_membership_matches_enumeration(self):
        """Test membership and module order against exhaustive enumeration."""
        rng = np.random.default_rng(3)
        for _ in range(4):
            data = rng.integers(0, 8, size=(4, 5))
            data[:, 0] *= 2
            module = enumerate_row_module(data, 8)
            stream = StreamingHowell(5, 8).add_rows(data)
            self.assertEqual(len(module), 2 ** stream.log_order())
            samples = rng.integers(0, 8, size=(300, 5))
            for vector in samples:
                self.assertEqual(stream.contains(vector), tuple(vector) in module)
            for vector in list(module)[:200]:
                self.assertTrue(stream.contains(np.array(vector)))


class TestModuleOperations(SimpleTestCase):
    """Kernels, solving and quotient invariants."""

    def test_kernel_matches_enumeration(self):
        """Test that the kernel generators span exactly {x : Mx = 0}."""
        rng = np.random.default_rng(4)
        for _ in range(5):
            data = rng.integers(0, 4, size=(3, 3))
            data[1] = (2 * data[0]) % 4
            matrix = PackedMatrix.from_array(data, 4)
            kernel = kernel_over_prime_power(matrix)
            expected = {
                x for x in itertools.product(range(4), repeat=3)
                if not (matmul_mod(data, np.array(x).reshape(3, 1), 4)).any()
            }
            spanned = enumerate_row_module(kernel.to_array(), 4) if kernel.rows else {(0, 0, 0)}
            self.assertEqual(spanned, expected)

    def test_solve_left(self):
        """Test particular solutions of x M = c."""
        rng = np.random.default_rng(6)
        for _ in range(10):
            data = rng.integers(0, 8, size=(4, 6))
            y = rng.integers(0, 8, size=(1, 4))
            target = matmul_mod(y, data, 8).ravel()
            solution, residual = solve_left(PackedMatrix.from_array(data, 8), target)
            self.assertIsNone(residual)
            np.testing.assert_array_equal(
                matmul_mod(solution.reshape(1, 4), data, 8).ravel(), target
            )

    def test_unsolvable_returns_certificate(self):
        """Test that 2x = 1 over Z/4 has no solution."""
        solution, residual = solve_left(PackedMatrix.from_rows([[2]], 4), [1])
        self.assertIsNone(solution)
        self.assertTrue(residual.any())

    def test_quotient_invariants(self):
        """Test span(Z) / span(B) for a few submodules of (Z/8)^2."""
        full = PackedMatrix.identity(3, 8)
        diagonal = PackedMatrix.from_rows([[1, 0, 0], [0, 2, 0], [0, 0, 4]], 8)
        self.assertEqual(quotient_invariants(full, diagonal), FiniteAbelianGroup((2, 4)))
        evens = PackedMatrix.from_rows([[2, 0], [0, 2]], 8)
        fours = PackedMatrix.from_rows([[4, 0]], 8)
        self.assertEqual(quotient_invariants(evens, fours), FiniteAbelianGroup((2, 4)))

    def test_cokernel_prime_power(self):
        """Test cokernels including free Z/p^k summands."""
        diagonal = PackedMatrix.from_rows([[1, 0, 0], [0, 2, 0], [0, 0, 4]], 8)
        self.assertEqual(cokernel_prime_power(diagonal), FiniteAbelianGroup((2, 4)))
        self.assertEqual(cokernel_prime_power(PackedMatrix.zeros(2, 2, 4)),
                         FiniteAbelianGroup((4, 4)))
        self.assertEqual(cokernel_prime_power(PackedMatrix.from_rows([[3, 0]], 9)),
                         FiniteAbelianGroup((3, 9)))


@pytest.mark.unit
def test_span_contains_on_form():
    """Test membership against a precomputed form."""
    form = howell_form(PackedMatrix.from_rows([[2, 1]], 4))
    assert span_contains(form, [0, 2])
    assert not span_contains(form, [0, 1])


@pytest.mark.unit
def test_multiples_profile():
    """Test |p^j R| for R = Z/8 + Z/2."""
    stream = StreamingHowell(2, 8).add_rows([[1, 0], [0, 4]])
    assert stream.multiples_profile() == [4, 2, 1, 0]


@pytest.mark.unit
def test_reduced_stream_matches_plain_stream():
    """Test the reduced stream spans the same module as the plain stream."""
    rng = np.random.default_rng(31)
    for q in (2, 4, 9, 27, 32):
        for _ in range(10):
            data = rng.integers(0, q, size=(12, 9)) * (rng.random((12, 9)) < 0.35)
            plain = StreamingHowell(9, q).add_rows(data)
            reduced = ReducedHowell(9, q).add_rows(data)
            assert reduced.log_order() == plain.log_order()
            assert reduced.multiples_profile() == plain.multiples_profile()
            assert all(reduced.contains(row) for row in data)
            assert np.array_equal(reduced.to_matrix().to_array(), plain.to_matrix().to_array())


@pytest.mark.unit
def test_reduced_stream_clears_above_unit_pivots():
    """Test entries above unit pivots are zero after insertion."""
    stream = ReducedHowell(3, 5).add_rows([[1, 2, 3], [0, 1, 4]])
    rows = {col: row.tolist() for col, (_, row) in stream.pivots.items()}
    assert rows[0][1] == 0
    assert rows == {0: [1, 0, 0], 1: [0, 1, 4]}
