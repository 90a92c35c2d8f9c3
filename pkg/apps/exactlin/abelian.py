"""
Finite abelian groups in invariant-factor normal form.
"""

import re
from collections import defaultdict
from dataclasses import dataclass
from math import gcd, prod
from typing import Tuple

from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _
from sympy import factorint

SUMMAND_PATTERN = re.compile(r'^Z_?(\d+)$')


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """
    Z/d1 + Z/d2 + ... with d1 | d2 | ... and every di > 1.

    The trivial group has no factors. Use from_orders to normalize an arbitrary
    list of cyclic orders.

    Example:
        FiniteAbelianGroup.from_orders([6, 4]) -> Z2 + Z12
    """
    factors: Tuple[int, ...] = ()

    def __post_init__(self):
        factors = tuple(int(d) for d in self.factors)
        object.__setattr__(self, 'factors', factors)
        if any(d <= 1 for d in factors):
            raise ValidationError(_('Invariant factors must exceed 1: %(f)s'), params={'f': factors})
        if any(b % a for a, b in zip(factors, factors[1:])):
            raise ValidationError(
                _('Invariant factors must form a divisibility chain: %(f)s'), params={'f': factors}
            )

    @classmethod
    def from_orders(cls, orders):
        """
        Normalize a list of cyclic orders (1s and units ignored) into invariant factors.
        """
        exponents = defaultdict(list)
        for order in orders:
            order = abs(int(order))
            if order == 0:
                raise ValidationError(_('Cyclic order 0 is not finite.'))
            for p, e in factorint(order).items():
                exponents[int(p)].append(int(e))
        length = max((len(e) for e in exponents.values()), default=0)
        factors = [1] * length
        for p, exps in exponents.items():
            for i, e in enumerate(sorted(exps, reverse=True)):
                factors[i] *= p ** e
        return cls(tuple(sorted(factors)))

    @classmethod
    def trivial(cls):
        return cls(())

    @classmethod
    def cyclic(cls, n):
        return cls.from_orders([n])

    @classmethod
    def elementary(cls, p, d):
        return cls((p,) * d)

    @classmethod
    def parse(cls, text):
        """Parse 'Z2 + Z12', 'Z_4' or '0'."""
        text = text.strip()
        if text in ('0', '1', 'trivial', ''):
            return cls.trivial()
        orders = []
        for part in text.split('+'):
            match = SUMMAND_PATTERN.match(part.strip())
            if not match:
                raise ValidationError(_('Cannot parse summand %(s)s'), params={'s': part})
            orders.append(int(match.group(1)))
        return cls.from_orders(orders)

    @property
    def order(self):
        return prod(self.factors)

    @property
    def exponent(self):
        return self.factors[-1] if self.factors else 1

    @property
    def rank(self):
        return len(self.factors)

    def is_trivial(self):
        return not self.factors

    def elementary_divisors(self):
        """Prime-power orders of the elementary divisor decomposition, sorted."""
        divisors = []
        for d in self.factors:
            divisors.extend(int(p) ** int(e) for p, e in factorint(d).items())
        return sorted(divisors)

    def p_part(self, p):
        return FiniteAbelianGroup.from_orders(
            [q for q in self.elementary_divisors() if q % p == 0]
        )

    def p_rank(self, p):
        return sum(1 for d in self.factors if d % p == 0)

    def direct_sum(self, other):
        return FiniteAbelianGroup.from_orders(self.factors + other.factors)

    __add__ = direct_sum

    def tensor(self, other):
        return FiniteAbelianGroup.from_orders(
            [gcd(a, b) for a in self.factors for b in other.factors]
        )

    def tor(self, other):
        # Tor(Z/a, Z/b) = Z/gcd(a, b), same as the tensor product for finite groups
        return self.tensor(other)

    def __str__(self):
        if not self.factors:
            return '0'
        return ' + '.join(f"Z{d}" for d in self.factors)
