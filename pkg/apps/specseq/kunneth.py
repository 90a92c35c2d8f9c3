"""
The integral Kunneth formula for finite groups.

Cohomology is given as a list indexed by degree; index 0 stands for H^0 = Z and
its value is ignored. For finite groups every positive degree is finite and
H^(n+1)(G, Z) = H^n(G, U(1)).
"""

import logging

from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

from apps.core.utils.validators import validate_positive_integer
from apps.exactlin.abelian import FiniteAbelianGroup

logger = logging.getLogger('apps.specseq')


def cyclic_integral_cohomology(n, top=4):
    """
    [Z, 0, Z_n, 0, Z_n, ...] up to degree top.

    Example:
        cyclic_integral_cohomology(3)[4] -> Z3
    """
    validate_positive_integer(n)
    groups = [None]
    for i in range(1, top + 1):
        groups.append(FiniteAbelianGroup.cyclic(n) if i % 2 == 0 else FiniteAbelianGroup.trivial())
    return groups


def _check_degrees(cohomology, needed, label):
    if len(cohomology) <= needed:
        raise ValidationError(
            _('%(label)s needs cohomology up to degree %(n)s.'),
            params={'label': label, 'n': needed},
        )


def kunneth_integral(ha, hb, n):
    """
    H^n(A x B, Z) from the integral cohomology of A and B.

    H^n = (+)_{i+j=n} H^i(A) (x) H^j(B)  (+)  (+)_{i+j=n+1} Tor(H^i(A), H^j(B)),
    with Z (x) X = X and Tor(Z, X) = 0.

    Args:
        ha: Cohomology of A, index 0 the formal Z, at least n entries beyond it
        hb: Cohomology of B, same shape
        n: Degree >= 1

    Returns:
        FiniteAbelianGroup
    """
    validate_positive_integer(n)
    _check_degrees(ha, n, 'A')
    _check_degrees(hb, n, 'B')
    result = ha[n].direct_sum(hb[n])
    for i in range(1, n):
        result = result.direct_sum(ha[i].tensor(hb[n - i]))
    for i in range(1, n + 1):
        j = n + 1 - i
        if 1 <= j <= n:
            result = result.direct_sum(ha[i].tor(hb[j]))
    return result


def kunneth_degree4_Z(ha, hb):  # noqa: N802
    """
    H^4(A x B, Z), which is H^3(A x B, U(1)).

    Example:
        kunneth_degree4_Z(cyclic_integral_cohomology(3), cyclic_integral_cohomology(3)) -> Z3^3
    """
    result = kunneth_integral(ha, hb, 4)
    logger.debug(f"Kunneth degree 4: {result}")
    return result


def product_h3_u1(left_order, right_order):
    """H^3(Z_a x Z_b, U(1)) from the cyclic cohomology of the factors."""
    return kunneth_degree4_Z(
        cyclic_integral_cohomology(left_order), cyclic_integral_cohomology(right_order)
    )
