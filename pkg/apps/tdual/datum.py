"""
Finite-group T-duality data.

A datum over J is a cyclic J-module n with 2-cocycles kappa (in n) and alpha
(in the dual n^) and a 3-cochain beta with d(beta) = <alpha u kappa>. kappa
classifies G = n.J and alpha classifies the dual group G^ = n^.J; exchanging
kappa and alpha is the duality.

U(1) values are stored in Z/M with M = |n| * |J|: the pairing n^ x n lands in
(1/|n|)Z/Z, and a solution beta can always be chosen with denominator M.
"""

import logging
from dataclasses import dataclass, replace
from typing import Tuple

import numpy as np
from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

from apps.cochain.cochains import (
    Cochain,
    cup_pair,
    evaluation_pairing,
    random_cochain,
    random_cocycle,
    solve_primitive,
)
from apps.cochain.modules import CyclicModule
from apps.core.constants import CupOrder
from apps.core.exceptions import DefiningEquationError
from apps.groupkit.extensions import extension_from_cocycle

logger = logging.getLogger('apps.tdual')

DEFAULT_ASSUMPTIONS = 'H1(J, n) = H1(J, n^) = 0 (not checked)'
RANDOM_ATTEMPTS = 20


@dataclass(frozen=True)
class Violation:
    """The first failing condition of a datum and the tuple where it fails."""
    condition: str
    elements: Tuple[int, ...]
    value: int

    def __str__(self):
        return f"{self.condition} fails at {self.elements} (value {self.value})"


@dataclass(frozen=True)
class TDualityDatum:
    """
    (n, J, kappa, alpha, beta) with the orientation of the defining pairing.

    cup_order ALPHA_KAPPA means d(beta) = <alpha u kappa> with alpha in the
    first slot of the cup product; KAPPA_ALPHA puts kappa first. dualize flips
    it so that beta is unchanged.
    """
    module: CyclicModule
    kappa: Cochain
    alpha: Cochain
    beta: Cochain
    cup_order: str = CupOrder.ALPHA_KAPPA
    assumptions: str = DEFAULT_ASSUMPTIONS

    def __post_init__(self):
        group = self.module.group
        checks = (
            (self.kappa, 2, self.module, 'kappa'),
            (self.alpha, 2, self.module.dual(), 'alpha'),
            (self.beta, 3, CyclicModule.trivial(group, self.torsion_bound), 'beta'),
        )
        for cochain, level, module, label in checks:
            if cochain.group != group or cochain.level != level or cochain.module != module:
                raise ValidationError(
                    _('%(label)s must be a level-%(k)s cochain in %(module)s.'),
                    params={'label': label, 'k': level, 'module': str(module)},
                )
        if self.cup_order not in CupOrder.values:
            raise ValidationError(_('Unknown cup order %(o)s.'), params={'o': self.cup_order})

    @property
    def group(self):
        return self.module.group

    @property
    def torsion_bound(self):
        return self.module.order * self.group.order

    @property
    def u1_module(self):
        return self.beta.module

    def pairing_term(self):
        """<alpha u kappa> as a level-4 cochain in Z/M, in the recorded orientation."""
        bound = self.torsion_bound
        pairing = evaluation_pairing(self.alpha.module, self.kappa.module, bound)
        if self.cup_order == CupOrder.ALPHA_KAPPA:
            return cup_pair(self.alpha, self.kappa, pairing, bound)
        return cup_pair(self.kappa, self.alpha, pairing.T, bound)

    def __str__(self):
        return f"T-duality datum over {self.group} with n = Z{self.module.order}"


def validate(datum):
    """
    Check d(kappa) = 0, d(alpha) = 0 and d(beta) = <alpha u kappa> pointwise.

    Returns:
        None when the datum is valid, else the first Violation
    """
    for label, cochain in (('kappa cocycle condition', datum.kappa),
                           ('alpha cocycle condition', datum.alpha)):
        boundary = cochain.coboundary()
        hit = boundary.first_nonzero()
        if hit is not None:
            return Violation(label, hit, boundary(*hit))
    difference = datum.beta.coboundary() - datum.pairing_term()
    hit = difference.first_nonzero()
    if hit is not None:
        logger.info(f"{datum}: defining equation fails at {hit}")
        return Violation('defining equation', hit, difference(*hit))
    return None


def check(datum):
    """
    Raises:
        DefiningEquationError: With the first violation
    """
    violation = validate(datum)
    if violation is not None:
        raise DefiningEquationError(violation.condition, violation.elements, violation.value)
    return datum


def dualize(datum):
    """
    Exchange kappa and alpha over the dual module; beta is unchanged.

    Raises:
        DefiningEquationError: If the datum is not valid
    """
    check(datum)
    flipped = (CupOrder.KAPPA_ALPHA if datum.cup_order == CupOrder.ALPHA_KAPPA
               else CupOrder.ALPHA_KAPPA)
    return replace(
        datum,
        module=datum.module.dual(),
        kappa=datum.alpha,
        alpha=datum.kappa,
        cup_order=flipped,
    )


def total_group(datum, name=''):
    """The extension G = n.J classified by kappa."""
    return extension_from_cocycle(datum.group, datum.module, datum.kappa, name=name)


def dual_total_group(datum, name=''):
    """The extension G^ = n^.J classified by alpha."""
    return extension_from_cocycle(datum.group, datum.alpha.module, datum.alpha, name=name)


def complete_datum(module, kappa, alpha, cup_order=CupOrder.ALPHA_KAPPA, rng=None):
    """
    Solve for beta, or return None when <alpha u kappa> is not a coboundary.

    With rng a random coboundary is added to the solution.
    """
    group = module.group
    bound = module.order * group.order
    u1 = CyclicModule.trivial(group, bound)
    draft = TDualityDatum(module, kappa, alpha, Cochain.zero(group, u1, 3), cup_order)
    result = solve_primitive(draft.pairing_term())
    if not result.solved:
        return None
    beta = result.beta
    if rng is not None:
        beta = beta + random_cochain(group, u1, 2, rng).coboundary()
    return replace(draft, beta=beta)


def random_datum(group, order, rng, generator_multipliers=None, cup_order=CupOrder.ALPHA_KAPPA):
    """
    A random valid datum over a prime-power cyclic module.

    kappa and alpha are random cocycles; when <alpha u kappa> is obstructed
    RANDOM_ATTEMPTS times, alpha is set to 0.

    Args:
        group: GroupTable J
        order: |n|, a prime power
        rng: numpy Generator
        generator_multipliers: Action of J's generators on n (trivial if None)
    """
    module = CyclicModule.on_group(group, order, generator_multipliers)
    dual = module.dual()
    kappa = random_cocycle(group, module, 2, rng)
    for _attempt in range(RANDOM_ATTEMPTS):
        alpha = random_cocycle(group, dual, 2, rng)
        datum = complete_datum(module, kappa, alpha, cup_order, rng)
        if datum is not None:
            return datum
    logger.debug(f"Pairing obstructed over {group}; falling back to alpha = 0")
    return complete_datum(module, kappa, Cochain.zero(group, dual, 2), cup_order, rng)


def cohomologous_iso(datum, eta):
    """
    The explicit isomorphism between extensions by kappa and kappa - d(eta).

    (a, x) -> (a + eta(x), x) maps E(kappa) onto E(kappa - d eta).

    Args:
        datum: Datum supplying J, n and kappa
        eta: Level-1 cochain in n

    Returns:
        (source table, target table, permutation array)
    """
    group, module = datum.group, datum.module
    if eta.level != 1 or eta.module != module or eta.group != group:
        raise ValidationError(_('eta must be a level-1 cochain in n.'))
    shifted = datum.kappa - eta.coboundary()
    source = extension_from_cocycle(group, module, datum.kappa)
    target = extension_from_cocycle(group, module, shifted)
    m = module.order
    perm = np.array([x * m + (a + eta(x)) % m for x in range(group.order) for a in range(m)],
                    dtype=np.int64)
    return source, target, perm


def is_isomorphism(perm, source, target):
    """Whether perm is a bijection with perm(gh) = perm(g) perm(h)."""
    perm = np.asarray(perm)
    if sorted(perm.tolist()) != list(range(target.order)) or source.order != target.order:
        return False
    return np.array_equal(perm[source.table], target.table[np.ix_(perm, perm)])