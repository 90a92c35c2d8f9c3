"""
Unit tests for bar cochains, coboundaries, cup products and primitives.
"""

import numpy as np
import pytest
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from apps.core.exceptions import BilinearityError, ParseError, SizeCapExceededError
from apps.cochain.bar import cochain_space_matrix
from apps.cochain.cochains import (
    Cochain,
    cup_pair,
    dump_cochain,
    evaluation_pairing,
    parse_cochain,
    random_coboundary,
    random_cochain,
    random_cocycle,
    solve_primitive,
)
from apps.cochain.modules import AbelianModule, CyclicModule
from apps.groupkit.tables import (
    alternating,
    cyclic,
    dicyclic,
    dihedral,
    elementary_abelian,
    symmetric,
)
from apps.repfun.representations import MatrixRep


def sign_module(group, order):
    """Z/order with the reflections of a dihedral group acting by -1."""
    multipliers = [1] * len(group.generators)
    multipliers[-1] = order - 1
    return CyclicModule.on_group(group, order, multipliers)


def corpus_modules():
    """(group, module) pairs of order <= 12 with trivial and twisted actions."""
    pairs = []
    for group in (cyclic(2), cyclic(3), cyclic(4), cyclic(6), elementary_abelian(2, 2),
                  symmetric(3), dihedral(8), dicyclic(8), dicyclic(12), alternating(4)):
        pairs.append((group, CyclicModule.trivial(group, 4)))
        pairs.append((group, CyclicModule.trivial(group, 3)))
    for group in (dihedral(6), dihedral(8), dihedral(10), dihedral(12)):
        pairs.append((group, sign_module(group, 5)))
        pairs.append((group, sign_module(group, 4)))
    pairs.append((cyclic(4), CyclicModule.on_group(cyclic(4), 5, [2])))
    return pairs


class TestCyclicModule(SimpleTestCase):
    """Multiplier homomorphisms."""

    def test_on_group_extends_generators(self):
        """Test Z5 with a generator of Z4 acting by 2."""
        module = CyclicModule.on_group(cyclic(4), 5, [2])
        self.assertEqual(module.multipliers, (1, 2, 4, 3))
        self.assertEqual(module.act(3, 1), 3)

    def test_not_a_homomorphism(self):
        """Test that Z3 cannot act on Z5 by 2."""
        with self.assertRaises(ValidationError):
            CyclicModule.on_group(cyclic(3), 5, [2])

    def test_non_unit_multiplier(self):
        """Test that multipliers must be units."""
        with self.assertRaises(ValidationError):
            CyclicModule(cyclic(2), 4, (1, 2))

    def test_dual_inverts(self):
        """Test the dual multipliers are inverses."""
        module = CyclicModule.on_group(cyclic(4), 5, [2])
        self.assertEqual(module.dual().multipliers, (1, 3, 4, 2))
        self.assertEqual(module.dual().dual(), module)

    def test_prime_parts(self):
        """Test Z12 splits into Z4 and Z3."""
        parts = CyclicModule.trivial(cyclic(2), 12).prime_parts()
        self.assertEqual([(p, part.order) for p, part in parts], [(2, 4), (3, 3)])


class TestAbelianModule(SimpleTestCase):
    """Finite abelian modules indexed in mixed radix."""

    def test_mixed_radix(self):
        """Test Z2 + Z4 indexes (1, 3) at 7 and adds coordinatewise."""
        module = AbelianModule.trivial(cyclic(2), (2, 4))
        self.assertEqual(module.order, 8)
        self.assertEqual(int(module.index([1, 3])), 7)
        self.assertEqual(module.add(7, 1), 4)
        self.assertEqual(module.subtract(0, 1), 3)
        self.assertEqual(module.generator_elements(), [4, 1])
        self.assertEqual(str(module.abelian), 'Z2 + Z4')

    def test_swap_action(self):
        """Test the swap on Z2^2 exchanges the two basis vectors."""
        module = AbelianModule.on_group(cyclic(2), (2, 2), [[[0, 1], [1, 0]]])
        self.assertEqual(module.act(1, 2), 1)
        self.assertEqual(module.action_table().tolist(), [[0, 1, 2, 3], [0, 2, 1, 3]])
        self.assertFalse(module.is_trivial())

    def test_not_an_action(self):
        """Test an order-3 matrix cannot give an action of Z2."""
        with self.assertRaises(ValidationError):
            AbelianModule.on_group(cyclic(2), (2, 2), [[[0, 1], [1, 1]]])

    def test_ill_defined_matrix(self):
        """Test the order-2 factor cannot map onto a generator of Z4."""
        with self.assertRaises(ValidationError):
            AbelianModule.on_group(cyclic(2), (2, 4), [[[1, 0], [1, 1]]])

    def test_size_cap(self):
        """Test a module above the table cap is refused before tabulating."""
        with self.assertRaises(SizeCapExceededError):
            AbelianModule.trivial(cyclic(2), (2,) * 13)

    def test_from_rep(self):
        """Test the permutation module of S3 mod 2 permutes the basis vectors."""
        module = AbelianModule.from_rep(MatrixRep.permutation(symmetric(3), 2))
        self.assertEqual(module.order, 8)
        basis = set(module.generator_elements())
        for x in range(6):
            self.assertEqual({module.act(x, v) for v in basis}, basis)


class TestCoboundary(SimpleTestCase):
    """The bar differential."""

    def test_level_zero(self):
        """Test (dc)(g) = g.c - c, which vanishes for trivial action."""
        group = cyclic(3)
        trivial = CyclicModule.trivial(group, 7)
        self.assertTrue(Cochain(group, trivial, 0, [4]).coboundary().is_zero())
        twisted = CyclicModule.on_group(group, 7, [2])
        d = Cochain(group, twisted, 0, [1]).coboundary()
        self.assertEqual([d(g) for g in range(3)], [0, 1, 3])

    def test_d_squared_vanishes(self):
        """Test d(dc) = 0 on 500 random cochains over groups of order <= 12."""
        rng = np.random.default_rng(5)
        pairs = corpus_modules()
        for trial in range(500):
            group, module = pairs[trial % len(pairs)]
            level = int(rng.integers(0, 3))
            cochain = random_cochain(group, module, level, rng)
            self.assertTrue(cochain.coboundary().coboundary().is_zero(),
                            f"{group} {module} level {level}")

    def test_one_cocycles_are_homomorphisms(self):
        """Test a 1-cochain on Z6 with trivial action is closed iff additive."""
        group = cyclic(6)
        module = CyclicModule.trivial(group, 6)
        rng = np.random.default_rng(8)
        for _ in range(200):
            values = rng.integers(0, 6, size=5)
            if rng.random() < 0.5:
                values = (np.arange(1, 6) * values[0]) % 6
            cochain = Cochain(group, module, 1, values)
            additive = all(cochain((x + y) % 6) == (cochain(x) + cochain(y)) % 6
                           for x in range(6) for y in range(6))
            self.assertEqual(cochain.is_cocycle(), additive)

    def test_matrix_agrees_with_direct_coboundary(self):
        """Test c D_k equals dc for the twisted sign action on S3."""
        group = dihedral(6)
        module = sign_module(group, 4)
        rng = np.random.default_rng(2)
        for level in (0, 1, 2):
            matrix = cochain_space_matrix(group, module, level).to_array()
            cochain = random_cochain(group, module, level, rng)
            expected = cochain.coboundary().values
            self.assertTrue(np.array_equal((cochain.values @ matrix) % 4, expected))

    def test_normalized_evaluation(self):
        """Test tuples containing the identity evaluate to 0."""
        group = cyclic(3)
        module = CyclicModule.trivial(group, 5)
        cochain = Cochain.from_function(group, module, 2, lambda x, y: x + 2 * y)
        self.assertEqual(cochain(0, 2), 0)
        self.assertEqual(cochain(1, 2), 0)
        self.assertEqual(cochain(2, 2), 1)
        self.assertEqual(cochain.first_nonzero(), (1, 1))

    def test_wrong_value_count(self):
        """Test the value array length is checked."""
        group = cyclic(3)
        with self.assertRaises(ValidationError):
            Cochain(group, CyclicModule.trivial(group, 2), 2, [0, 1])

    def test_module_on_separately_built_group(self):
        """Test a module and a cochain on two separately built copies of Z4 combine."""
        module = CyclicModule.on_group(cyclic(4), 5, [2])
        cochain = Cochain(cyclic(4), module, 1, [1, 2, 3])
        other = Cochain(cyclic(4), CyclicModule.on_group(cyclic(4), 5, [2]), 1, [1, 1, 1])
        self.assertEqual((cochain + other).values.tolist(), [2, 3, 4])
        self.assertEqual(cochain, Cochain(cyclic(4), module, 1, [1, 2, 3]))
        with self.assertRaises(ValidationError):
            Cochain(elementary_abelian(2, 2), module, 1, [1, 2, 3])


class TestCupProduct(SimpleTestCase):
    """Alexander-Whitney products with a pairing."""

    def setUp(self):
        self.group = cyclic(2)
        self.z2 = CyclicModule.trivial(self.group, 2)
        self.kappa = Cochain(self.group, self.z2, 2, [1])
        self.into_z4 = [[0, 0], [0, 2]]

    def test_cup_with_zero(self):
        """Test cup with the zero cochain is zero."""
        zero = Cochain.zero(self.group, self.z2, 2)
        self.assertTrue(cup_pair(zero, self.kappa, self.into_z4, 4).is_zero())

    def test_nontrivial_square_is_a_coboundary(self):
        """Test <kappa u kappa> on Z2 has a primitive beta over Z4."""
        square = cup_pair(self.kappa, self.kappa, self.into_z4, 4)
        self.assertEqual(square.level, 4)
        self.assertEqual(square(1, 1, 1, 1), 2)
        result = solve_primitive(square)
        self.assertTrue(result.solved)
        self.assertEqual(result.beta.coboundary(), square)

    def test_not_bilinear(self):
        """Test a pairing that is not additive."""
        with self.assertRaises(BilinearityError):
            cup_pair(self.kappa, self.kappa, [[0, 0], [0, 1]], 3)

    def test_not_invariant(self):
        """Test a pairing that the action does not preserve."""
        group = cyclic(2)
        twisted = CyclicModule.on_group(group, 3, [2])
        trivial = CyclicModule.trivial(group, 3)
        pairing = np.outer(np.arange(3), np.arange(3)) % 3
        with self.assertRaises(BilinearityError):
            cup_pair(Cochain.zero(group, twisted, 1), Cochain.zero(group, trivial, 1), pairing, 3)

    def test_leibniz(self):
        """Test d(a u k) = da u k + (-1)^i a u dk on random cochains."""
        rng = np.random.default_rng(13)
        for group in (cyclic(4), dihedral(6), elementary_abelian(2, 2), dihedral(8)):
            n_module = sign_module(group, 4) if not group.is_abelian() else \
                CyclicModule.on_group(group, 4, [3] + [1] * (len(group.generators) - 1))
            dual = n_module.dual()
            pairing = evaluation_pairing(dual, n_module, 8)
            for i, j in ((0, 1), (1, 1), (1, 2), (2, 1)):
                alpha = random_cochain(group, dual, i, rng)
                kappa = random_cochain(group, n_module, j, rng)
                left = cup_pair(alpha, kappa, pairing, 8).coboundary()
                right = (cup_pair(alpha.coboundary(), kappa, pairing, 8)
                         + cup_pair(alpha, kappa.coboundary(), pairing, 8).scale((-1) ** i))
                self.assertEqual(left, right)

    def test_cup_of_cocycles_is_cocycle(self):
        """Test that cocycles multiply to a cocycle."""
        rng = np.random.default_rng(17)
        group = elementary_abelian(2, 2)
        module = CyclicModule.trivial(group, 2)
        pairing = evaluation_pairing(module, module, 4)
        for _ in range(10):
            alpha = random_cocycle(group, module, 2, rng)
            kappa = random_cocycle(group, module, 1, rng)
            self.assertTrue(cup_pair(alpha, kappa, pairing, 4).is_cocycle())


class TestPrimitives(SimpleTestCase):
    """Solving d beta = c."""

    def test_coboundaries_have_primitives(self):
        """Test c = d gamma recovers some beta with d beta = c."""
        rng = np.random.default_rng(21)
        for group, module in corpus_modules()[::3]:
            for level in (1, 2):
                target = random_coboundary(group, module, level, rng)
                result = solve_primitive(target)
                self.assertTrue(result.solved)
                self.assertEqual(result.beta.coboundary(), target)

    def test_nontrivial_class_gives_certificate(self):
        """Test the nonsplit 2-cocycle on Z2 has no primitive."""
        group = cyclic(2)
        kappa = Cochain(group, CyclicModule.trivial(group, 2), 2, [1])
        result = solve_primitive(kappa)
        self.assertFalse(result.solved)
        self.assertIn(2, result.certificate)
        self.assertTrue(np.asarray(result.certificate[2]).any())

    def test_composite_coefficients(self):
        """Test primitives over Z6 are glued from the Z2 and Z3 parts."""
        rng = np.random.default_rng(4)
        group = symmetric(3)
        module = CyclicModule.trivial(group, 6)
        target = random_coboundary(group, module, 2, rng)
        result = solve_primitive(target)
        self.assertTrue(result.solved)
        self.assertEqual(result.beta.coboundary(), target)

    def test_level_zero_refused(self):
        """Test that level-0 cochains have no primitive to look for."""
        group = cyclic(2)
        with self.assertRaises(ValidationError):
            solve_primitive(Cochain.zero(group, CyclicModule.trivial(group, 2), 0))


# ===== FIXTURES =====

@pytest.fixture
def s3_sign():
    group = dihedral(6)
    return group, sign_module(group, 3)


@pytest.mark.unit
def test_random_cocycle_is_closed(s3_sign):
    """Test random cocycles satisfy the cocycle condition."""
    group, module = s3_sign
    rng = np.random.default_rng(1)
    for level in (1, 2, 3):
        assert random_cocycle(group, module, level, rng).is_cocycle()


@pytest.mark.unit
def test_cochain_file_round_trip(s3_sign):
    """Test dump then parse returns the same cochain."""
    group, module = s3_sign
    cochain = random_cochain(group, module, 2, np.random.default_rng(3))
    assert parse_cochain(dump_cochain(cochain), group, module, 2) == cochain


@pytest.mark.unit
def test_cochain_file_defaults_and_comments(s3_sign):
    """Test omitted tuples are zero and identity tuples must carry zero."""
    group, module = s3_sign
    cochain = parse_cochain('# partial\n1,2 -> 2\n0,1 -> 0\n', group, module, 2)
    assert cochain(1, 2) == 2
    assert int(cochain.values.sum()) == 2


@pytest.mark.unit
@pytest.mark.parametrize('text, line', [
    ('1,2 -> 1\n1 -> 1\n', 2),
    ('1,2 -> 1\n1,2 -> 2\n', 2),
    ('0,1 -> 1\n', 1),
    ('1,9 -> 1\n', 1),
    ('1 2 = 1\n', 1),
])
def test_cochain_file_errors(s3_sign, text, line):
    """Test malformed cochain lines are reported with their line."""
    group, module = s3_sign
    with pytest.raises(ParseError) as excinfo:
        parse_cochain(text, group, module, 2, source='c.txt')
    assert excinfo.value.line == line


@pytest.mark.unit
def test_level_zero_file_line():
    """Test the empty tuple line of a level-0 cochain."""
    group = cyclic(2)
    module = CyclicModule.trivial(group, 5)
    cochain = Cochain(group, module, 0, [3])
    assert dump_cochain(cochain) == ' -> 3\n'
    assert parse_cochain('-> 3', group, module, 0) == cochain
