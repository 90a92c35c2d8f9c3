"""
Tests for T-duality data: validation, duality, total groups and datum files.
"""

import numpy as np
import pytest
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from apps.cochain.bar import all_tuples
from apps.cochain.cochains import Cochain, random_cochain
from apps.cochain.modules import CyclicModule
from apps.core.constants import CupOrder
from apps.core.exceptions import DefiningEquationError, ParseError
from apps.groupkit.tables import cyclic, dicyclic, dihedral, elementary_abelian, symmetric
from apps.tdual.datum import (
    TDualityDatum,
    cohomologous_iso,
    complete_datum,
    dual_total_group,
    dualize,
    is_isomorphism,
    random_datum,
    total_group,
    validate,
)
from apps.tdual.files import dump_datum, parse_datum


def zero_datum(module):
    group = module.group
    u1 = CyclicModule.trivial(group, module.order * group.order)
    return TDualityDatum(module, Cochain.zero(group, module, 2),
                         Cochain.zero(group, module.dual(), 2), Cochain.zero(group, u1, 3))


def z4_datum():
    """n = J = Z2 with kappa(1, 1) = 1 and alpha = 0."""
    group = cyclic(2)
    module = CyclicModule.trivial(group, 2)
    datum = zero_datum(module)
    return TDualityDatum(module, Cochain(group, module, 2, [1]), datum.alpha, datum.beta)


def random_configurations():
    """(J, |n|, generator multipliers) covering Z2, Z2^2 and S3."""
    z2, klein, s3 = cyclic(2), elementary_abelian(2, 2), symmetric(3)
    return [
        (z2, 2, None), (z2, 4, [3]), (z2, 3, [2]),
        (klein, 2, None), (klein, 4, [3, 1]),
        (s3, 2, None), (s3, 3, [2, 1]), (s3, 4, [3, 1]),
    ]


def faces(elements, group):
    """The five 3-tuples a level-3 value at a face enters d(beta)(g1, g2, g3, g4) through."""
    g1, g2, g3, g4 = elements
    m = group.multiply
    return [(g2, g3, g4), (m(g1, g2), g3, g4), (g1, m(g2, g3), g4), (g1, g2, m(g3, g4)),
            (g1, g2, g3)]


class TestValidate(SimpleTestCase):
    """The cocycle conditions and d(beta) = <alpha u kappa>."""

    def test_zero_datum(self):
        """Test kappa = alpha = beta = 0 is valid."""
        self.assertIsNone(validate(zero_datum(CyclicModule.trivial(symmetric(3), 3))))

    def test_alpha_zero_needs_closed_beta(self):
        """Test with alpha = 0 exactly the closed beta are valid."""
        group = elementary_abelian(2, 2)
        module = CyclicModule.trivial(group, 2)
        base = zero_datum(module)
        rng = np.random.default_rng(5)
        closed = random_cochain(group, base.u1_module, 2, rng).coboundary()
        self.assertIsNone(validate(TDualityDatum(module, base.kappa, base.alpha, closed)))
        values = closed.values.copy()
        values[7] += 1
        perturbed = TDualityDatum(module, base.kappa, base.alpha,
                                  Cochain(group, base.u1_module, 3, values))
        violation = validate(perturbed)
        self.assertEqual(violation.condition, 'defining equation')
        changed = tuple(all_tuples(group, 3)[7].tolist())
        self.assertIn(changed, faces(violation.elements, group))

    def test_kappa_not_closed(self):
        """Test a non-cocycle kappa is reported before the defining equation."""
        group = cyclic(3)
        module = CyclicModule.trivial(group, 3)
        base = zero_datum(module)
        kappa = Cochain(group, module, 2, [1, 0, 0, 0])
        violation = validate(TDualityDatum(module, kappa, base.alpha, base.beta))
        self.assertEqual(violation.condition, 'kappa cocycle condition')

    def test_fields_must_match(self):
        """Test alpha must live in the dual module and beta mod |n||J|."""
        group = cyclic(4)
        module = CyclicModule.on_group(group, 5, [2])
        base = zero_datum(module)
        with self.assertRaises(ValidationError):
            TDualityDatum(module, base.kappa, Cochain.zero(group, module, 2), base.beta)
        with self.assertRaises(ValidationError):
            TDualityDatum(module, base.kappa, base.alpha,
                          Cochain.zero(group, CyclicModule.trivial(group, 5), 3))
        with self.assertRaises(ValidationError):
            TDualityDatum(module, base.kappa, base.alpha, base.beta, cup_order='beta-first')


class TestDualize(SimpleTestCase):
    """Exchanging kappa and alpha."""

    def test_z4_and_klein(self):
        """Test n = J = Z2 with kappa != 0, alpha = 0 gives Z4 and Z2 x Z2."""
        datum = z4_datum()
        self.assertIsNone(validate(datum))
        self.assertEqual(total_group(datum).fingerprint(), cyclic(4).fingerprint())
        klein = elementary_abelian(2, 2).fingerprint()
        self.assertEqual(dual_total_group(datum).fingerprint(), klein)
        dual = dualize(datum)
        self.assertEqual(total_group(dual).fingerprint(), klein)
        self.assertEqual(dual_total_group(dual).fingerprint(), cyclic(4).fingerprint())

    def test_split_dual_is_semidirect(self):
        """Test alpha = 0 over the sign action on Z3 gives the split group S3 on the dual side."""
        group = cyclic(2)
        datum = zero_datum(CyclicModule.on_group(group, 3, [2]))
        self.assertEqual(dual_total_group(datum).fingerprint(), dihedral(6).fingerprint())

    def test_invalid_datum_refused(self):
        """Test dualize refuses a datum violating the defining equation."""
        datum = z4_datum()
        broken = TDualityDatum(datum.module, datum.kappa, datum.alpha,
                               Cochain(datum.group, datum.u1_module, 3, [1]))
        with self.assertRaises(DefiningEquationError) as ctx:
            dualize(broken)
        self.assertEqual(ctx.exception.condition, 'defining equation')

    def test_orientation_keeps_beta(self):
        """Test the dual datum has the same pairing term and a flipped cup order."""
        rng = np.random.default_rng(17)
        for _ in range(5):
            datum = random_datum(cyclic(2), 4, rng, [3])
            dual = dualize(datum)
            self.assertEqual(dual.cup_order, CupOrder.KAPPA_ALPHA)
            self.assertEqual(dual.pairing_term(), datum.pairing_term())
            self.assertEqual(dual.beta, datum.beta)

    def test_random_data(self):
        """Test 100 random data: valid, involutive duality, valid duals, orders |n||J|."""
        rng = np.random.default_rng(2024)
        configurations = random_configurations()
        for i in range(100):
            group, order, multipliers = configurations[i % len(configurations)]
            datum = random_datum(group, order, rng, multipliers)
            self.assertIsNone(validate(datum), str(datum))
            dual = dualize(datum)
            self.assertIsNone(validate(dual), f"dual of {datum}")
            self.assertEqual(dualize(dual), datum)
            if i < len(configurations):
                self.assertEqual(total_group(datum).order, order * group.order)
                self.assertEqual(total_group(dual).order, order * group.order)


class TestTotalGroups(SimpleTestCase):
    """Extensions realized from data."""

    def test_extraspecial(self):
        """Test 2^(1+2) from J = Z2^2 is D8 or Q8 by choice of kappa."""
        group = elementary_abelian(2, 2)
        module = CyclicModule.trivial(group, 2)
        base = zero_datum(module)
        dihedral_kappa = Cochain.from_function(group, module, 2, lambda x, y: (x & 1) * (y >> 1))
        quaternion_kappa = Cochain.from_function(
            group, module, 2,
            lambda x, y: ((x & 1) * (y & 1) + (x >> 1) * (y >> 1) + (x & 1) * (y >> 1)) % 2,
        )
        d8 = total_group(TDualityDatum(module, dihedral_kappa, base.alpha, base.beta))
        q8 = total_group(TDualityDatum(module, quaternion_kappa, base.alpha, base.beta))
        self.assertEqual(d8.order_multiset().get(4), 2)
        self.assertEqual(q8.order_multiset().get(4), 6)
        self.assertEqual(d8.fingerprint(), dihedral(8).fingerprint())
        self.assertEqual(q8.fingerprint(), dicyclic(8).fingerprint())

    def test_cohomologous_cocycles(self):
        """Test (a, x) -> (a + eta(x), x) is an isomorphism onto the shifted extension."""
        rng = np.random.default_rng(41)
        for group, order, multipliers in random_configurations():
            datum = random_datum(group, order, rng, multipliers)
            eta = random_cochain(group, datum.module, 1, rng)
            source, target, perm = cohomologous_iso(datum, eta)
            self.assertTrue(is_isomorphism(perm, source, target), str(datum))

    def test_cohomologous_needs_level_one(self):
        """Test eta must be a 1-cochain in n."""
        datum = z4_datum()
        with self.assertRaises(ValidationError):
            cohomologous_iso(datum, datum.kappa)


# ===== FIXTURES =====

@pytest.fixture
def s3_datum():
    rng = np.random.default_rng(7)
    return random_datum(symmetric(3), 3, rng, [2, 1])


@pytest.mark.unit
def test_datum_file_round_trip(s3_datum):
    """Test dump, parse and dump again give the same text and values."""
    text = dump_datum(s3_datum)
    parsed = parse_datum(text)
    assert dump_datum(parsed) == text
    assert np.array_equal(parsed.beta.values, s3_datum.beta.values)
    assert parsed.cup_order == s3_datum.cup_order
    assert parsed.assumptions == s3_datum.assumptions
    assert validate(parsed) is None


@pytest.mark.unit
def test_datum_file_defaults():
    """Test [action] and [options] may be omitted."""
    parsed = parse_datum('[n]\norder = 2\n[J]\ngroup = Z2\n[kappa]\n1,1 -> 1\n[alpha]\n[beta]\n')
    assert parsed.module.is_trivial()
    assert parsed.cup_order == CupOrder.ALPHA_KAPPA
    assert 'not checked' in parsed.assumptions
    assert total_group(parsed).fingerprint() == cyclic(4).fingerprint()


@pytest.mark.unit
@pytest.mark.parametrize('text,line', [
    ('order = 2\n', 1),
    ('[n]\norder = 2\n[J]\ngroup = Z2\n[kappa]\n[alpha]\n', None),
    ('[n]\norder = 2\n[nope]\n', 3),
    ('[n]\norder = 2\n[n]\n', 3),
    ('[n]\norder = 2\n[J]\ngroup = Z2\n[options]\ncup_order = sideways\n'
     '[kappa]\n[alpha]\n[beta]\n', 6),
    ('[n]\norder = 2\n[J]\ngroup = M11\n[kappa]\n[alpha]\n[beta]\n', 4),
])
def test_datum_file_errors(text, line):
    """Test malformed datum files name the offending line."""
    with pytest.raises(ParseError) as excinfo:
        parse_datum(text, source='datum.txt')
    assert excinfo.value.line == line


@pytest.mark.unit
def test_complete_datum_reports_obstruction():
    """Test complete_datum returns a datum exactly when the pairing term is a coboundary."""
    datum = z4_datum()
    completed = complete_datum(datum.module, datum.kappa, datum.alpha)
    assert completed is not None
    assert validate(completed) is None
