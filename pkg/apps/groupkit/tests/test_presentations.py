"""
Unit tests for presentations, relator evaluation and the bundled Co1 data.
"""

import numpy as np
import pytest
from django.conf import settings
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from apps.core.constants import CO1_EDGE_LABELS, CO1_EXTRA_RELATORS, CO1_GENERATORS
from apps.core.exceptions import NonInvertibleImageError, ParseError, RelatorNotSatisfiedError
from apps.exactlin.matrices import PackedMatrix
from apps.groupkit.presentations import (
    Presentation,
    coxeter_presentation,
    cyclic_presentation,
    dicyclic_presentation,
    dihedral_presentation,
    dump_generator_matrices,
    dump_presentation,
    evaluate_word,
    failing_relators,
    images_for,
    load_generator_matrices,
    load_presentation,
    parse_generator_matrices,
    parse_presentation,
    presentation_from_table,
    verify_relators,
)
from apps.groupkit.tables import cyclic, dicyclic, dihedral, from_matrices, from_permutations, symmetric
from apps.groupkit.words import inverse_word, parse_word


def permutation_matrix(perm, modulus=2):
    """Matrix P with P[perm[i], i] = 1, so P_s P_t = P_(s t)."""
    n = len(perm)
    data = np.zeros((n, n), dtype=np.int64)
    data[list(perm), list(range(n))] = 1
    return PackedMatrix.from_array(data, modulus)


def regular_images(group, modulus=2):
    """Left-regular images of the group's generators."""
    return [permutation_matrix(group.table[g], modulus) for g in group.generators]


def co1_presentation():
    return load_presentation(settings.WORKBENCH_DATA_DIR / 'co1_presentation.txt')


def co1_images(presentation):
    images = load_generator_matrices(settings.WORKBENCH_DATA_DIR / 'co1_generators.txt')
    return images_for(presentation, images)


class TestCoxeterPresentation(SimpleTestCase):
    """Relators of labelled diagrams."""

    def test_single_node(self):
        """Test one node gives <a | a^2> and a group of order 2."""
        presentation = coxeter_presentation(['a'])
        self.assertEqual(presentation.relators, (((0, 1), (0, 1)),))
        image = PackedMatrix.from_rows([[0, 1], [1, 0]], 2)
        self.assertTrue(verify_relators(presentation, [image]))
        self.assertEqual(from_matrices([image]).order, 2)

    def test_path_gives_s4(self):
        """Test a-b-c with transpositions: relators hold and the closure has order 24."""
        presentation = coxeter_presentation(['a', 'b', 'c'], edges=[('a', 'b'), ('b', 'c')])
        self.assertEqual(len(presentation.relators), 6)
        perms = [(1, 0, 2, 3), (0, 2, 1, 3), (0, 1, 3, 2)]
        self.assertTrue(verify_relators(presentation, [permutation_matrix(p) for p in perms]))
        self.assertEqual(from_permutations(perms).order, 24)

    def test_unlisted_pairs_commute(self):
        """Test the (a c)^2 relator of the path."""
        presentation = coxeter_presentation(['a', 'b', 'c'], edges=[('a', 'b'), ('b', 'c')])
        self.assertIn(((0, 1), (2, 1)) * 2, presentation.relators)

    def test_bad_label(self):
        """Test labels below 3 and unknown nodes."""
        with self.assertRaises(ValidationError):
            coxeter_presentation(['a', 'b'], edges=[('a', 'b', 2)])
        with self.assertRaises(ValidationError):
            coxeter_presentation(['a', 'b'], edges=[('a', 'z')])

    def test_co1_diagram_matches_bundled_file(self):
        """Test the nine-node diagram plus extra relators reproduces the bundled file."""
        edges = [(x, y, CO1_EDGE_LABELS.get((x, y), 3))
                 for x, y in zip(CO1_GENERATORS, CO1_GENERATORS[1:])]
        built = coxeter_presentation(CO1_GENERATORS, edges, CO1_EXTRA_RELATORS)
        bundled = co1_presentation()
        self.assertEqual(built.generators, bundled.generators)
        self.assertEqual(built.relators, bundled.relators)
        self.assertEqual(len(bundled.relators), 48)


class TestCo1Matrices(SimpleTestCase):
    """The nine bundled 24 x 24 matrices over F_2."""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.presentation = co1_presentation()
        cls.images = co1_images(cls.presentation)

    def test_shapes(self):
        """Test nine 24 x 24 matrices mod 2."""
        self.assertEqual(len(self.images), 9)
        self.assertTrue(all(m.shape == (24, 24) and m.modulus == 2 for m in self.images))

    def test_involutions(self):
        """Test each generator squares to the identity."""
        for image in self.images:
            self.assertTrue((image @ image).is_identity())

    def test_cd_fourth_power_is_a(self):
        """Test (cd)^4 a^-1 evaluates to the identity."""
        word = parse_word('( c d )^4 a^-1', self.presentation.generators)
        self.assertTrue(evaluate_word(word, self.images).is_identity())

    def test_every_relator_holds(self):
        """Test all 48 relators."""
        self.assertEqual(failing_relators(self.presentation, self.images), [])
        self.assertTrue(verify_relators(self.presentation, self.images))

    def test_flipped_bit_breaks_a_relator(self):
        """Test that corrupting one entry of one matrix makes some relator fail."""
        data = self.images[0].to_array()
        data[0, 0] ^= 1
        corrupted = [PackedMatrix.from_array(data, 2)] + list(self.images[1:])
        with self.assertRaises((RelatorNotSatisfiedError, NonInvertibleImageError)):
            verify_relators(self.presentation, corrupted)


class TestEvaluation(SimpleTestCase):
    """Word evaluation on small representations."""

    def test_empty_word(self):
        """Test the empty word evaluates to the identity."""
        images = regular_images(symmetric(3))
        self.assertTrue(evaluate_word((), images).is_identity())

    def test_word_times_inverse(self):
        """Test w w^-1 evaluates to the identity for random words."""
        rng = np.random.default_rng(3)
        images = regular_images(dicyclic(16), modulus=3)
        for _ in range(20):
            length = int(rng.integers(1, 15))
            word = tuple((int(rng.integers(0, 2)), int(rng.choice([-1, 1])))
                         for _ in range(length))
            self.assertTrue(evaluate_word(word + inverse_word(word), images).is_identity())

    def test_singular_image(self):
        """Test that a singular image is named."""
        images = [PackedMatrix.from_rows([[1, 1], [1, 1]], 2)]
        with self.assertRaises(NonInvertibleImageError) as ctx:
            evaluate_word(((0, 1),), images, generators=['t'])
        self.assertEqual(ctx.exception.generator, 't')

    def test_textbook_presentations(self):
        """Test the cyclic, dihedral and dicyclic presentations on regular images."""
        cases = [
            (cyclic_presentation(6), cyclic(6)),
            (dihedral_presentation(8), dihedral(8)),
            (dicyclic_presentation(16), dicyclic(16)),
        ]
        for presentation, group in cases:
            self.assertTrue(verify_relators(presentation, regular_images(group)))

    def test_presentation_from_table(self):
        """Test spanning-tree relators hold in the regular representation."""
        for group in (symmetric(3), dicyclic(12), dihedral(10)):
            presentation = presentation_from_table(group)
            self.assertEqual(presentation.rank, len(group.generators))
            self.assertTrue(verify_relators(presentation, regular_images(group)))

    def test_wrong_relator_is_reported(self):
        """Test that Z6 images fail the relator of Z4."""
        with self.assertRaises(RelatorNotSatisfiedError) as ctx:
            verify_relators(cyclic_presentation(4), regular_images(cyclic(6)))
        self.assertEqual(ctx.exception.index, 0)


class TestFiles(SimpleTestCase):
    """Presentation and generator-matrix files."""

    def test_presentation_round_trip(self):
        """Test dump then parse."""
        presentation = coxeter_presentation(['a', 'b'], [('a', 'b', 5)], ['( a b )^2 a^-1'])
        parsed = parse_presentation(dump_presentation(presentation))
        self.assertEqual(parsed.generators, presentation.generators)
        self.assertEqual(parsed.relators, presentation.relators)

    def test_comments_and_blank_lines(self):
        """Test that comments are ignored."""
        text = '# header\n\ngens: x y  # two\nrel: x^2\nrel: ( x y )^3\n'
        presentation = parse_presentation(text)
        self.assertEqual(presentation.generators, ('x', 'y'))
        self.assertEqual(len(presentation.relators), 2)

    def test_parse_errors_carry_lines(self):
        """Test the line numbers of common mistakes."""
        cases = [
            ('rel: a\ngens: a\n', 1),
            ('gens: a\nrel: a\nrelator: a\n', 3),
            ('gens: a\n\nrel: b\n', 3),
        ]
        for text, line in cases:
            with self.assertRaises(ParseError) as ctx:
                parse_presentation(text, source='p.txt')
            self.assertEqual(ctx.exception.line, line)

    def test_missing_gens(self):
        """Test a file without a gens line."""
        with self.assertRaises(ParseError):
            parse_presentation('# nothing\n')

    def test_generator_matrices_round_trip(self):
        """Test dump then parse of named matrices."""
        images = {'s': PackedMatrix.from_rows([[0, 1], [1, 0]], 3),
                  't': PackedMatrix.from_rows([[1, 2], [0, 1]], 3)}
        parsed = parse_generator_matrices(dump_generator_matrices(images))
        self.assertEqual(list(parsed), ['s', 't'])
        self.assertEqual(parsed['t'], images['t'])

    def test_generator_matrix_error_line(self):
        """Test a short row is reported at its file line."""
        text = 'gen: s\np=2 k=1 rows=2 cols=2\n01\n1\n'
        with self.assertRaises(ParseError) as ctx:
            parse_generator_matrices(text, source='g.txt')
        self.assertEqual(ctx.exception.line, 4)

    def test_generator_names_checked(self):
        """Test a generator name that clashes with the word syntax is refused."""
        with self.assertRaises(ValidationError):
            Presentation(('a', 'b^2'), ())
        with self.assertRaises(ValidationError):
            Presentation(('1x',), ())

    def test_images_for_missing_generator(self):
        """Test that a missing image is refused."""
        presentation = Presentation(('a', 'b'), ())
        with self.assertRaises(ValidationError):
            images_for(presentation, {'a': PackedMatrix.identity(2, 2)})


@pytest.mark.unit
def test_bundled_files_round_trip():
    """Test the bundled Co1 files re-render to the same content."""
    presentation = co1_presentation()
    assert parse_presentation(dump_presentation(presentation)).relators == presentation.relators
    images = load_generator_matrices(settings.WORKBENCH_DATA_DIR / 'co1_generators.txt')
    text = (settings.WORKBENCH_DATA_DIR / 'co1_generators.txt').read_text()
    assert dump_generator_matrices(images) == text
