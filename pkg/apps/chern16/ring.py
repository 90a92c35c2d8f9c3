"""
Total Chern classes of representations of the binary dihedral group of order 16.

H^2 = Z2 x Z2 with basis u = c1(V2), v = c1(V3); H^4 = Z16 with generator
c2(V6) = 1. Products of degree-2 classes land in the 2-torsion of H^4 and are
written through the formal class a = c1(V2)^2, so that u^2 = v^2 = a, uv = 0
and 2a = 0. Everything above degree 4 is dropped.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Tuple

from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

from apps.core.constants import MAX_SYM_POWER, Q16_IRREP_LABELS
from apps.core.exceptions import ChainInconsistencyError
from apps.workbench.datasets import quoted_constants
from .characters import (
    char_table_q16,
    decompose_merged,
    determinant_character,
    merged_character,
    sym_power_character,
)

logger = logging.getLogger('apps.chern16')

H4_ORDER = 16


@dataclass(frozen=True)
class ChernElement:
    """
    1 + (p u + q v) + (value + epsilon a).

    Example:
        ChernElement((1, 0)) * ChernElement((0, 1))  # (1 + u)(1 + v) = 1 + u + v
    """
    degree2: Tuple[int, int] = (0, 0)
    degree4: int = 0
    a_coefficient: int = 0

    def __post_init__(self):
        p, q = self.degree2
        object.__setattr__(self, 'degree2', (p % 2, q % 2))
        object.__setattr__(self, 'degree4', self.degree4 % H4_ORDER)
        object.__setattr__(self, 'a_coefficient', self.a_coefficient % 2)

    @staticmethod
    def square_coefficient(left, right):
        """The a-coefficient of (p u + q v)(r u + s v)."""
        return left[0] * right[0] + left[1] * right[1]

    def __mul__(self, other):
        return ChernElement(
            (self.degree2[0] + other.degree2[0], self.degree2[1] + other.degree2[1]),
            self.degree4 + other.degree4,
            self.a_coefficient + other.a_coefficient
            + self.square_coefficient(self.degree2, other.degree2),
        )

    def power(self, n):
        """
        (1 + x)^n = 1 + n x + C(n, 2) x^2, valid for every integer n.
        """
        pairs = n * (n - 1) // 2
        return ChernElement(
            (n * self.degree2[0], n * self.degree2[1]),
            n * self.degree4,
            n * self.a_coefficient + pairs * self.square_coefficient(self.degree2, self.degree2),
        )

    @property
    def determined(self):
        """Whether the degree-4 part is independent of a."""
        return self.a_coefficient == 0

    def __str__(self):
        terms = ['1']
        first = ' + '.join(name for name, c in zip(('u', 'v'), self.degree2) if c)
        if first:
            terms.append(f"({first})")
        if self.degree4 or self.a_coefficient:
            second = str(self.degree4) + (' + a' if self.a_coefficient else '')
            terms.append(f"({second})")
        return ' + '.join(terms)


ONE = ChernElement()


@dataclass(frozen=True)
class SymPowerResult:
    """Sym^k V6: exact decomposition and c2 from the SU(2) weights."""
    k: int
    multiplicities: Tuple[int, ...]
    c2_integral: int

    @property
    def c2(self):
        return self.c2_integral % H4_ORDER

    def summands(self):
        parts = []
        for label, n in zip(Q16_IRREP_LABELS, self.multiplicities):
            parts.extend([label] * n)
        return parts

    def __str__(self):
        return f"Sym^{self.k}(V6) = {' + '.join(self.summands())}, c2 = {self.c2_integral}"


def su2_weights(k):
    return list(range(k, -k - 1, -2))


def sym_power_defining(k):
    """
    Decompose Sym^k V6 and read its c2 off the SU(2) weights.

    With Chern roots +t, -t of V6 and c2(V6) = -t^2 = 1, the roots of Sym^k are
    w t, so c2 = e2(w t) = -e2(w) = sum(w^2) / 2.

    Example:
        sym_power_defining(2) -> V1 + V4, c2 = 4
    """
    weights = su2_weights(k)
    multiplicities = char_table_q16().decompose(sym_power_character(k))
    elementary = (sum(weights) ** 2 - sum(w * w for w in weights)) // 2
    return SymPowerResult(k, multiplicities, -elementary)


def _single(label):
    return tuple(int(label == other) for other in Q16_IRREP_LABELS)


@dataclass(frozen=True)
class ChernConstants:
    """Total Chern classes of the irreducibles and the steps that produced them."""
    totals: Dict[str, ChernElement]
    c2_v2_plus_v3: ChernElement
    steps: List[str] = field(default_factory=list)

    def c1(self, label):
        return self.totals[label].degree2

    def c2(self, label):
        return self.totals[label].degree4


def _expect(condition, message):
    if not condition:
        logger.error(f"Chern derivation failed: {message}")
        raise ChainInconsistencyError(message)


def _expect_decomposition(result, labels):
    expected = tuple(sum(label == other for label in labels) for other in Q16_IRREP_LABELS)
    _expect(result.multiplicities == expected,
            f"Sym^{result.k}(V6) decomposes as {result.summands()}, expected {list(labels)}")


@lru_cache(maxsize=1)
def chern_constants():
    """
    Derive c1 and c2 of every irreducible from the Sym-power decompositions.

    Inputs: c2(V6) = 1 and c1(V6) = 0 (V6 lands in SU(2)), the quoted
    vanishing c1(V1)^2 = 0, Whitney multiplicativity, and c(Sym^k V6) from
    sym_power_defining.

    Raises:
        ChainInconsistencyError: If two steps disagree
    """
    constants = quoted_constants()
    table = char_table_q16()
    steps = []
    first = {'V0': (0, 0), 'V2': (1, 0), 'V3': (0, 1)}
    v1 = table.decompose(table.tensor('V2', 'V3'))
    _expect(v1 == _single('V1'), 'V2 (x) V3 is not V1')
    first['V1'] = (1, 1)
    steps.append('V1 = V2 (x) V3, so c1(V1) = u + v')
    totals = {label: ChernElement(c1) for label, c1 in first.items()}

    quoted_square = constants['c1_v1_squared']
    squared = totals['V1'] * totals['V1']
    _expect(squared.degree4 == quoted_square['value'] and squared.determined,
            f"c1(V1)^2 computes to {squared}, quoted {quoted_square['value']}")
    steps.append(f"c1(V1)^2 = 0 ({quoted_square['citation']})")

    _expect(determinant_character('V6') == 'V0', 'det V6 is not trivial')
    totals['V6'] = ChernElement((0, 0), 1)
    steps.append('c(V6) = 1 + c2(V6), c2(V6) = 1 generates H^4')

    sym2 = sym_power_defining(2)
    _expect_decomposition(sym2, ('V1', 'V4'))
    c1_v4 = totals['V1'].degree2
    _expect(determinant_character('V4') == 'V1', 'det V4 is not V1')
    cross = ChernElement(totals['V1'].degree2) * ChernElement(c1_v4)
    totals['V4'] = ChernElement(c1_v4, sym2.c2_integral - cross.degree4,
                                cross.a_coefficient)
    steps.append(f"{sym2}: c1(V4) = c1(V1), c2(V4) = {totals['V4'].degree4}")

    sym3 = sym_power_defining(3)
    _expect_decomposition(sym3, ('V5', 'V6'))
    _expect(determinant_character('V5') == 'V0', 'det V5 is not trivial')
    totals['V5'] = ChernElement((0, 0), sym3.c2_integral - totals['V6'].degree4)
    steps.append(f"{sym3}: c1(V5) = 0, c2(V5) = {totals['V5'].degree4}")

    sym4 = sym_power_defining(4)
    _expect_decomposition(sym4, ('V0', 'V2', 'V3', 'V4'))
    sum23 = totals['V2'] * totals['V3']
    first_product = ChernElement(sum23.degree2) * ChernElement(totals['V4'].degree2)
    _expect(first_product.degree2 == (0, 0), 'c1(Sym^4 V6) does not vanish')
    residual = sym4.c2_integral - totals['V4'].degree4 - first_product.degree4
    derived = ChernElement((0, 0), residual, first_product.a_coefficient)
    ring = ChernElement((0, 0), sum23.degree4, sum23.a_coefficient)
    _expect(derived == ring, f"c2(V2 + V3) derives to {derived}, the ring gives {ring}")
    steps.append(f"{sym4}: c2(V2 + V3) = {residual} = {derived.degree4} mod {H4_ORDER}, "
                 "so uv = 0")

    totals = {label: totals[label] for label in Q16_IRREP_LABELS}
    for label, element in totals.items():
        logger.debug(f"c({label}) = {element}")
    return ChernConstants(totals, derived, steps)


def whitney_total(multiplicities):
    """The total Chern class of the sum of n_i V_i."""
    totals = chern_constants().totals
    result = ONE
    for label, n in zip(Q16_IRREP_LABELS, multiplicities):
        if n:
            result = result * totals[label].power(int(n))
    return result


def c2_restricted(chi):
    """
    c2 of a merged-constant character, in units of c2(V6).

    n2 = n3 for every merged column, which makes the a-coefficient even, so the
    value is 4 n4 + 9 n5 + n6 mod 16.

    Raises:
        NonIntegralDecompositionError: If chi does not decompose integrally
        ChainInconsistencyError: If the a-coefficient survives
    """
    multiplicities = decompose_merged(chi)
    total = whitney_total(multiplicities)
    _expect(total.determined, f"c2 of {chi} depends on the formal class a")
    return total.degree4


@dataclass(frozen=True)
class DivisibilityReport:
    """Outcome of the multiplicity conditions on a merged column."""
    multiplicities: Tuple[int, ...]
    checks: Dict[str, bool]

    @property
    def passed(self):
        return all(self.checks.values())

    def failures(self):
        return [name for name, ok in self.checks.items() if not ok]


def verify_monster_divisibility(chi):
    """
    Check n4 = 0 mod 8, n5 = n6 = 0 mod 16 and n2 = n3.

    Raises:
        NonIntegralDecompositionError: If chi does not decompose integrally
    """
    n = decompose_merged(chi)
    checks = {
        'n4 = 0 mod 8': n[4] % 8 == 0,
        'n5 = n6 = 0 mod 16': n[5] == n[6] and n[5] % 16 == 0,
        'n2 = n3': n[2] == n[3],
    }
    report = DivisibilityReport(n, checks)
    if not report.passed:
        logger.info(f"Column {chi} fails: {', '.join(report.failures())}")
    return report


def random_merged_column(rng, divisible=True, scale=20):
    """
    A random merged-constant character.

    Merged constancy means n2 = n3, n5 = n6 and n4 = n1 + n2. With divisible
    the column also passes verify_monster_divisibility.

    Args:
        rng: numpy Generator
        divisible: Force n4 = 0 mod 8 and n5 = 0 mod 16
        scale: Bound on the random multiplicity draws
    """
    n0 = int(rng.integers(0, scale))
    if divisible:
        n4 = 8 * int(rng.integers(0, scale))
        n2 = int(rng.integers(0, n4 + 1))
        n5 = 16 * int(rng.integers(0, scale))
    else:
        n2 = int(rng.integers(0, scale))
        n4 = n2 + int(rng.integers(0, scale))
        n5 = int(rng.integers(0, scale))
    multiplicities = (n0, n4 - n2, n2, n2, n4, n5, n5)
    column = merged_character(multiplicities)
    if column is None:
        raise ValidationError(_('Multiplicities %(n)s are not merged-constant.'),
                              params={'n': multiplicities})
    return column


def sym_power_table(top=MAX_SYM_POWER):
    return [sym_power_defining(k) for k in range(top + 1)]
