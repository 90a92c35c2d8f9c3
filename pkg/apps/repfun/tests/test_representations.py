"""
Unit tests for matrix representations, functors and invariants.
"""

import numpy as np
import pytest
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from apps.core.exceptions import NonInvertibleImageError, RelatorNotSatisfiedError, UnstableSpanError
from apps.exactlin.echelon import rank, rref, row_space_contains
from apps.exactlin.matrices import PackedMatrix
from apps.groupkit.presentations import cyclic_presentation, dihedral_presentation, evaluate_word
from apps.groupkit.tables import cyclic, dihedral, symmetric
from apps.repfun.functors import alt2, alt2_matrix, alt3, dual, functor, sym2, sym2_matrix, tensor
from apps.repfun.invariants import (
    fixed_points,
    invariant_bilinear_forms,
    is_alternating,
    is_symmetric,
    quotient_by_invariants,
    quotient_module,
    submodule,
)
from apps.repfun.representations import MatrixRep
from apps.workbench.datasets import co1_rep, s3_rep


def matrix(rows, p):
    return PackedMatrix.from_rows(rows, p)


class TestMatrixRep(SimpleTestCase):
    """Construction and validation."""

    def test_regular(self):
        """Test the regular module of Z3 has the constant vectors as invariants."""
        rep = MatrixRep.regular(cyclic(3), 2)
        self.assertEqual(rep.dim, 3)
        invariants = fixed_points(rep)
        self.assertEqual(invariants.to_lists(), [[1, 1, 1]])

    def test_element_images_follow_the_table(self):
        """Test every element image matches products of generator images."""
        group = dihedral(8)
        rep = MatrixRep.regular(group, 3)
        images = rep.element_images()
        for g in range(group.order):
            for h in range(group.order):
                self.assertEqual(images[g] @ images[h], images[group.multiply(g, h)])

    def test_table_violation(self):
        """Test an order-2 image for the generator of Z3 is refused."""
        with self.assertRaises(ValidationError):
            MatrixRep.from_generator_images(cyclic(3), [matrix([[0, 1], [1, 0]], 2)])

    def test_singular_image(self):
        """Test a singular generator image is named."""
        with self.assertRaises(NonInvertibleImageError):
            MatrixRep.from_generator_images(cyclic(2), [matrix([[1, 1], [1, 1]], 2)])

    def test_image_count(self):
        """Test one image per generator is required."""
        with self.assertRaises(ValidationError):
            MatrixRep.from_generator_images(dihedral(6), [PackedMatrix.identity(2, 2)])

    def test_prime_modulus(self):
        """Test representations live over prime fields."""
        with self.assertRaises(ValidationError):
            MatrixRep.trivial(cyclic(2), 4)

    def test_on_presentation(self):
        """Test table images re-read against a presentation."""
        rep = MatrixRep.regular(dihedral(8), 2).on_presentation(dihedral_presentation(8))
        self.assertEqual(rep.dim, 8)
        wrong = MatrixRep.regular(cyclic(4), 2)
        with self.assertRaises(RelatorNotSatisfiedError):
            wrong.on_presentation(cyclic_presentation(2))

    def test_permutation_module(self):
        """Test S3 on three points has one invariant line over F3."""
        rep = MatrixRep.permutation(symmetric(3), 3)
        self.assertEqual(rep.dim, 3)
        self.assertEqual(fixed_points(rep).rows, 1)
        with self.assertRaises(ValidationError):
            MatrixRep.permutation(cyclic(3), 3)


class TestFunctors(SimpleTestCase):
    """Exterior, symmetric and tensor constructions."""

    def setUp(self):
        self.rep = MatrixRep.permutation(symmetric(4), 5)

    def test_dimensions(self):
        """Test d(d-1)/2, d(d+1)/2 and d(d-1)(d-2)/6 for d = 4."""
        self.assertEqual(alt2(self.rep).dim, 6)
        self.assertEqual(sym2(self.rep).dim, 10)
        self.assertEqual(alt3(self.rep).dim, 4)
        self.assertEqual(tensor(self.rep, self.rep).dim, 16)
        self.assertEqual(alt2(self.rep).dim + sym2(self.rep).dim, 16)

    def test_identity_images(self):
        """Test functors send identity images to identities."""
        rep = MatrixRep.trivial(cyclic(2), 2, dim=5)
        for which in ('dual', 'alt2', 'sym2', 'alt3'):
            self.assertTrue(all(image.is_identity() for image in functor(rep, which).images))

    def test_functoriality(self):
        """Test F(g) F(h) = F(gh) on random pairs of S4 for alt2, sym2 and dual."""
        group = self.rep.group
        images = self.rep.element_images()
        build = [alt2_matrix, sym2_matrix, lambda m: m.inverse().transpose()]
        rng = np.random.default_rng(9)
        for g, h in rng.integers(0, group.order, size=(40, 2)).tolist():
            gh = images[group.multiply(g, h)]
            for f in build:
                self.assertEqual(f(images[g]) @ f(images[h]), f(gh))

    def test_alt2_trace_identity(self):
        """Test tr alt2(g) = (tr(g)^2 - tr(g^2)) / 2 over F5."""
        half = pow(2, -1, 5)
        for image in self.rep.element_images():
            g = image.to_array()
            expected = (np.trace(g) ** 2 - np.trace(g @ g)) * half % 5
            self.assertEqual(int(np.trace(alt2_matrix(image).to_array())) % 5, expected)

    def test_alt3_of_three_space_is_determinant(self):
        """Test the top exterior power of the S3 permutation module is the sign."""
        rep = MatrixRep.permutation(symmetric(3), 5)
        top = alt3(rep)
        self.assertEqual(top.dim, 1)
        for image, cube in zip(rep.element_images(), top.element_images()):
            sign = round(np.linalg.det(image.to_array()))
            self.assertEqual(cube.entry(0, 0), sign % 5)

    def test_sym2_in_characteristic_two(self):
        """Test the monomial action of [[1,1],[0,1]] on e0e0, e0e1, e1e1."""
        result = sym2_matrix(matrix([[1, 1], [0, 1]], 2))
        self.assertEqual(result.to_lists(), [[1, 1, 1], [0, 1, 0], [0, 0, 1]])

    def test_dual_twice(self):
        """Test the double dual returns the original images."""
        self.assertEqual(dual(dual(self.rep)).images, self.rep.images)

    def test_tensor_needs_matching_factors(self):
        """Test tensor factors must share source and prime."""
        with self.assertRaises(ValidationError):
            tensor(self.rep, MatrixRep.permutation(symmetric(4), 3))
        with self.assertRaises(ValidationError):
            functor(self.rep, 'tensor')


class TestInvariants(SimpleTestCase):
    """Fixed vectors, forms, submodules and quotients."""

    def setUp(self):
        self.rep = MatrixRep.permutation(symmetric(3), 3)

    def test_invariant_forms(self):
        """Test S3 on F3^3 preserves the identity form and the all-ones form."""
        forms = invariant_bilinear_forms(self.rep)
        self.assertEqual(len(forms), 2)
        self.assertTrue(all(is_symmetric(form) for form in forms))
        flat = rref(PackedMatrix.from_array([f.to_array().ravel() for f in forms], 3))
        self.assertTrue(row_space_contains(flat, np.eye(3, dtype=np.int64).ravel()))
        self.assertTrue(row_space_contains(flat, np.ones(9, dtype=np.int64)))

    def test_forms_match_fixed_points_of_dual_square(self):
        """Test forms correspond to invariants of dual (x) dual."""
        square = tensor(dual(self.rep), dual(self.rep))
        self.assertEqual(fixed_points(square).rows, len(invariant_bilinear_forms(self.rep)))

    def test_forms_under_conjugation(self):
        """Test S g S^-1 preserves S^-T B S^-1 for every invariant B."""
        s = matrix([[1, 2, 0], [0, 1, 1], [1, 0, 2]], 3)
        s_inv = s.inverse()
        conjugated = MatrixRep.from_generator_images(
            self.rep.source, [s @ g @ s_inv for g in self.rep.images])
        forms = invariant_bilinear_forms(conjugated)
        self.assertEqual(len(forms), 2)
        flat = rref(PackedMatrix.from_array([f.to_array().ravel() for f in forms], 3))
        for form in invariant_bilinear_forms(self.rep):
            moved = s_inv.transpose() @ form @ s_inv
            self.assertTrue(row_space_contains(flat, moved.to_array().ravel()))

    def test_alternating_form(self):
        """Test the S3 dataset preserves the symplectic form on F2^2."""
        forms = invariant_bilinear_forms(s3_rep())
        self.assertTrue(any(is_alternating(form) for form in forms))

    def test_quotient_by_zero_span(self):
        """Test the zero span leaves the representation unchanged."""
        quotient = quotient_module(self.rep, np.zeros((0, 3), dtype=np.int64))
        self.assertEqual(quotient.images, self.rep.images)

    def test_quotient_by_full_space(self):
        """Test the full space gives the zero module."""
        self.assertEqual(quotient_module(self.rep, np.eye(3, dtype=np.int64)).dim, 0)

    def test_quotient_by_invariants(self):
        """Test F3^3 modulo the constants is 2-dimensional without invariants."""
        quotient = quotient_by_invariants(self.rep)
        self.assertEqual(quotient.dim, 2)
        self.assertEqual(fixed_points(quotient).rows, 0)

    def test_unstable_span(self):
        """Test e0 is not stable and the violating generator is reported."""
        with self.assertRaises(UnstableSpanError) as ctx:
            quotient_module(self.rep, [[1, 0, 0]])
        self.assertIn(ctx.exception.generator, self.rep.generator_names)

    def test_submodule(self):
        """Test the constants span a trivial submodule."""
        sub = submodule(self.rep, [[1, 1, 1]])
        self.assertEqual(sub.dim, 1)
        self.assertTrue(all(image.is_identity() for image in sub.images))


class TestCo1Module(SimpleTestCase):
    """The 24-dimensional Co1 module over F2."""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.rep = co1_rep()

    def test_no_invariant_vectors(self):
        """Test V has no nonzero fixed vector."""
        self.assertEqual(fixed_points(self.rep).rows, 0)

    def test_invariant_form(self):
        """Test V carries exactly one invariant form, symplectic over F2."""
        forms = invariant_bilinear_forms(self.rep)
        self.assertEqual(len(forms), 1)
        self.assertTrue(is_symmetric(forms[0]))
        self.assertTrue(is_alternating(forms[0]))
        self.assertEqual(rank(forms[0]), 24)

    def test_exterior_square(self):
        """Test Alt2(V) has dimension 276, one invariant, and a 275-dim quotient."""
        square = alt2(self.rep)
        self.assertEqual(square.dim, 276)
        self.assertEqual(fixed_points(square).rows, 1)
        self.assertEqual(quotient_by_invariants(square).dim, 275)

    def test_functoriality_on_words(self):
        """Test alt2 respects products of random words in the generators."""
        rng = np.random.default_rng(31)
        names = self.rep.generator_names
        for _ in range(5):
            w1 = [(int(g), 1) for g in rng.integers(0, len(names), size=6)]
            w2 = [(int(g), -1) for g in rng.integers(0, len(names), size=4)]
            left = evaluate_word(w1, list(self.rep.images))
            right = evaluate_word(w2, list(self.rep.images))
            both = evaluate_word(w1 + w2, list(self.rep.images))
            self.assertEqual(alt2_matrix(left) @ alt2_matrix(right), alt2_matrix(both))


# ===== FIXTURES =====

@pytest.fixture
def s3_module():
    return s3_rep()


@pytest.mark.unit
def test_s3_dataset(s3_module):
    """Test the bundled S3 module is irreducible of dimension 2."""
    assert s3_module.dim == 2
    assert fixed_points(s3_module).rows == 0
    assert alt2(s3_module).dim == 1


@pytest.mark.unit
@pytest.mark.parametrize('d', [1, 2, 3, 5, 8])
def test_dimension_sum(d):
    """Test the monomial dimensions of Alt2 and Sym2 add to d^2."""
    rep = MatrixRep.trivial(cyclic(1), 2, dim=d)
    assert alt2(rep).dim + sym2(rep).dim == d * d
