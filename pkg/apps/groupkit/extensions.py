"""
Group extensions 0 -> n -> E -> J -> 1 built from normalized 2-cocycles.

The kernel n is any finite abelian group with a J-action given through the
module law of cochain.modules (CyclicModule or AbelianModule): element indices
0..|n|-1 with 0 the neutral element, `action_table()`, `addition_table()`,
`subtract` and `generator_elements()`. Cocycle values are element indices.
"""

import logging

import numpy as np
from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

from apps.core.exceptions import NotACocycleError
from .tables import GroupTable

logger = logging.getLogger('apps.groupkit')


def _kappa_table(group, module, kappa):
    n = group.order
    return np.array([[kappa(x, y) for y in range(n)] for x in range(n)],
                    dtype=np.int64) % module.order


def cocycle_violation(group, module, kappa):
    """First triple (x, y, z) where x.k(y,z) - k(xy,z) + k(x,yz) - k(x,y) != 0, else None."""
    n = group.order
    k = _kappa_table(group, module, kappa)
    act, add, law = module.action_table(), module.addition_table(), group.table
    x, y, z = np.arange(n)[:, None, None], np.arange(n)[None, :, None], np.arange(n)[None, None, :]
    left = add[act[x, k[y, z]], k[x, law[y, z]]]
    right = add[k[law[x, y], z], k[x, y]]
    bad = np.argwhere(left != right)
    if bad.size == 0:
        return None
    triple = tuple(int(v) for v in bad[0])
    return triple, module.subtract(int(left[triple]), int(right[triple]))


def extension_from_cocycle(group, module, kappa, name=''):
    """
    The extension of J by n classified by kappa.

    Elements are pairs (a, x) with index x*|n| + a and law
    (a, x)(b, y) = (a + x.b + kappa(x, y), x y).

    Args:
        group: GroupTable J
        module: Coefficient module n with its J-action (CyclicModule or AbelianModule)
        kappa: Normalized 2-cocycle, called as kappa(x, y) and returning an element of n

    Raises:
        NotACocycleError: With the violated triple
        ValidationError: If kappa is not normalized
    """
    m, n = module.order, group.order
    e = group.identity
    k = _kappa_table(group, module, kappa)
    if k[e, :].any() or k[:, e].any():
        raise ValidationError(_('The cocycle must vanish when an argument is the identity.'))
    violation = cocycle_violation(group, module, kappa)
    if violation is not None:
        triple, value = violation
        logger.warning(f"Extension refused: cocycle condition fails at {triple}")
        raise NotACocycleError(triple, value)
    act, add = module.action_table(), module.addition_table()
    x = np.arange(n)[:, None, None, None]
    a = np.arange(m)[None, :, None, None]
    y = np.arange(n)[None, None, :, None]
    b = np.arange(m)[None, None, None, :]
    c = add[add[a, act[x, b]], k[x, y]]
    table = (group.table[x, y] * m + c).reshape(n * m, n * m)
    generators = ([e * m + g for g in module.generator_elements()]
                  + [s * m for s in group.generators])
    labels = [(a, x) for x in range(n) for a in range(m)]
    logger.debug(f"Built extension of order {n * m} of {group} by {module.abelian}")
    return GroupTable.from_table(table, generators, name=name or f"{m}.{group}", labels=labels)


def embedded_subgroup(group, m):
    """Indices of the kernel n inside the extension: pairs (a, identity)."""
    return [group.identity * m + a for a in range(m)]


def quotient_matches(extension, group, m):
    """Whether E / n reproduces the table of J exactly (cosets ordered by x)."""
    quotient = extension.quotient_by_normal(embedded_subgroup(group, m))
    return np.array_equal(quotient.table, group.table)
