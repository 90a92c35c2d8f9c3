"""
Sylow-restriction fixed points for the primes dividing the Monster order.

For a cyclic p-Sylow normalized by an order-q group of automorphisms g -> g^a,
the p-part of H^3 is the fixed part of H^3(Z_p, U(1)) = Z_p, on which a acts by
a^2. Integral degrees follow from H^(2k)(Z_p, Z) = H^(2k-1)(Z_p, U(1)).
"""

import logging
import re
from dataclasses import dataclass
from math import gcd

from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _
from sympy import n_order, primitive_root

from apps.core.constants import LARGE_PRIMES, SMALL_PRIMES, Provenance
from apps.core.utils.validators import validate_positive_integer, validate_prime
from apps.exactlin.abelian import FiniteAbelianGroup
from apps.workbench.datasets import quoted_constants
from .kunneth import kunneth_integral

logger = logging.getLogger('apps.specseq')

NORMALIZER_PATTERN = re.compile(r'^\(?(?P<p>\d+):(?P<q>\d+)\)?(?P<square>\^2)?$')


def cyclic_h_odd(p, k, a):
    """
    Multiplier by which g -> g^a acts on H^(2k-1)(Z_p, U(1)).

    Args:
        p: Prime
        k: Positive integer (k = 2 is H^3)
        a: Unit mod p

    Returns:
        a^k mod p

    Example:
        cyclic_h_odd(3, 2, 2) -> 1
    """
    validate_prime(p)
    validate_positive_integer(k)
    if gcd(a, p) != 1:
        raise ValidationError(_('%(a)s is not a unit mod %(p)s.'), params={'a': a, 'p': p})
    return pow(a, k, p)


def acting_unit(p, q, generator=None):
    """
    A unit of multiplicative order q mod p.

    Raises:
        ValidationError: If q does not divide p - 1, or generator has the wrong order
    """
    validate_prime(p)
    validate_positive_integer(q)
    if (p - 1) % q:
        raise ValidationError(_('%(q)s does not divide %(p)s - 1.'), params={'q': q, 'p': p})
    if generator is None:
        return pow(int(primitive_root(p)), (p - 1) // q, p)
    if gcd(generator, p) != 1 or n_order(generator, p) != q:
        raise ValidationError(_('%(a)s does not have order %(q)s mod %(p)s.'),
                              params={'a': generator, 'q': q, 'p': p})
    return generator % p


def frobenius_h3_p_part(p, q, generator=None):
    """
    p-part of H^3(p:q, U(1)): the fixed points of the q-action on Z_p.

    The order-q subgroup is cyclic, so it fixes H^3 exactly when its generator
    squares to 1, i.e. when q <= 2.

    Returns:
        Z_p or the trivial group
    """
    a = acting_unit(p, q, generator)
    fixed = cyclic_h_odd(p, 2, a) == 1
    result = FiniteAbelianGroup.cyclic(p) if fixed else FiniteAbelianGroup.trivial()
    logger.debug(f"H^3({p}:{q}, U(1))_({p}) = {result} (acting unit {a})")
    return result


def cyclic_integral_cohomology_p_part(p, q, degrees=(1, 2, 3, 4), generator=None):
    """
    p-parts of H^i(p:q, Z) for the given degrees.

    Odd degrees vanish; degree 2k carries Z_p iff the order-q group fixes a^k.

    Returns:
        {degree: FiniteAbelianGroup}
    """
    a = acting_unit(p, q, generator)
    parts = {}
    for i in degrees:
        validate_positive_integer(i)
        if i % 2 == 0 and cyclic_h_odd(p, i // 2, a) == 1:
            parts[i] = FiniteAbelianGroup.cyclic(p)
        else:
            parts[i] = FiniteAbelianGroup.trivial()
    return parts


@dataclass(frozen=True)
class LargePrimeRow:
    """One row of the large-primes vanishing table."""
    p: int
    q: int
    route: str
    h3_p_part: FiniteAbelianGroup
    provenance: str = Provenance.COMPUTED
    citation: str = ''

    @property
    def vanishes(self):
        return self.h3_p_part.is_trivial()


def square_h3_p_part(p, q):
    """
    p-part of H^3((p:q)^2, U(1)) = H^4((p:q)^2, Z) by the Kunneth formula.
    """
    parts = cyclic_integral_cohomology_p_part(p, q)
    cohomology = [None] + [parts[i] for i in (1, 2, 3, 4)]
    return kunneth_integral(cohomology, cohomology, 4).p_part(p)


def monster_primes(constants=None):
    """Primes dividing the Monster order, from the quoted factorization."""
    constants = constants or quoted_constants()
    return {int(p): int(e) for p, e in constants['monster_order_factors']['value'].items()}


def _normalizer_shape(p, shape):
    match = NORMALIZER_PATTERN.match(shape)
    if not match or int(match.group('p')) != p:
        raise ValidationError(_('Cannot read the Sylow normalizer %(s)s for %(p)s.'),
                              params={'s': shape, 'p': p})
    return int(match.group('q')), bool(match.group('square'))


def large_primes_table(constants=None):
    """
    The vanishing of H^3(M, U(1))_(p) for p = 11 and p >= 17.

    For p >= 17 the Sylow subgroup is cyclic inside p:(p-1)/2; for p = 11 it
    sits inside (11:5)^2. The containments are quoted; the vanishing is computed.

    Returns:
        List of LargePrimeRow in increasing p
    """
    constants = constants or quoted_constants()
    primes = monster_primes(constants)
    normalizers = constants['large_prime_sylow_normalizers']
    rows = []
    for p in LARGE_PRIMES:
        if p not in primes:
            raise ValidationError(_('%(p)s does not divide the Monster order.'), params={'p': p})
        shape = normalizers['value'][str(p)]
        q, square = _normalizer_shape(p, shape)
        if square:
            row = LargePrimeRow(p, q, f"{shape} via Kunneth", square_h3_p_part(p, q),
                                citation=normalizers['citation'])
        else:
            row = LargePrimeRow(p, q, shape, frobenius_h3_p_part(p, q),
                                citation=normalizers['citation'])
        rows.append(row)
    logger.info(f"Large primes table: {sum(row.vanishes for row in rows)} of "
                f"{len(rows)} p-parts vanish")
    return rows


@dataclass(frozen=True)
class SmallPrimeRow:
    """A prime p with (p - 1) | 24, its d = 24 / (p - 1) and quoted group shapes."""
    p: int
    d: int
    x_group: str
    centralizer: str
    dual_centralizer: str
    provenance: str = Provenance.QUOTED
    citation: str = ''


def small_primes_table(constants=None):
    """
    Rows for the odd primes p dividing |M| with (p - 1) | 24.

    Args:
        constants: Quoted constants mapping (default: the bundled file)

    Returns:
        List of SmallPrimeRow in increasing p
    """
    constants = constants or quoted_constants()
    primes = monster_primes(constants)
    entry = constants['small_primes']
    quoted = {int(row['p']): row for row in entry['value']}
    rows = []
    for p in SMALL_PRIMES:
        if 24 % (p - 1) or p not in primes:
            raise ValidationError(_('%(p)s is not a small prime.'), params={'p': p})
        row = quoted[p]
        rows.append(SmallPrimeRow(
            p=p,
            d=24 // (p - 1),
            x_group=row['x'],
            centralizer=row['centralizer'],
            dual_centralizer=row['dual_centralizer'],
            citation=entry['citation'],
        ))
    return rows
