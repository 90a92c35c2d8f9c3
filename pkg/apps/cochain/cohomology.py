"""
Brute-force group cohomology from the normalized bar complex.
"""

import logging

from django.conf import settings
from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

from apps.core.exceptions import SizeCapExceededError, WorkbenchError
from apps.core.utils.helpers import Budget, p_valuation, prime_power_parts
from apps.exactlin.abelian import FiniteAbelianGroup
from apps.exactlin.howell import (
    ReducedHowell,
    kernel_over_prime_power,
    quotient_invariants,
    row_module_invariants,
)
from apps.exactlin.matrices import PackedMatrix
from .bar import cochain_space_matrix, cocycle_condition_rows, tuple_count

logger = logging.getLogger('apps.cochain')


def cohomology_module(group, module, k):
    """
    H^k(G, M) as ker d_k / im d_(k-1), prime by prime.

    Args:
        group: GroupTable
        module: Coefficient module (CyclicModule, or a MatrixRep on the table)
        k: Degree, 0 <= k

    Returns:
        FiniteAbelianGroup

    Raises:
        SizeCapExceededError: If a differential is above COCHAIN_MAX_CELLS

    Example:
        cohomology_module(cyclic(2), CyclicModule.trivial(cyclic(2), 2), 1) -> Z2
    """
    if k < 0:
        raise ValidationError(_('Degree must be nonnegative.'))
    total = FiniteAbelianGroup.trivial()
    for p, part in module.prime_parts():
        differential = cochain_space_matrix(group, part, k)
        cocycles = kernel_over_prime_power(differential.T)
        if k == 0:
            boundaries = PackedMatrix.zeros(0, differential.rows, part.modulus)
        else:
            boundaries = cochain_space_matrix(group, part, k - 1)
        piece = quotient_invariants(cocycles, boundaries)
        logger.debug(f"H^{k}({group}, {part})_({p}) = {piece}")
        total = total.direct_sum(piece)
    logger.info(f"H^{k}({group}, {module}) = {total}")
    return total


def _check_u1_request(group, k, long_running):
    n = group.order
    if k < 1 or k > 4 or (k == 4 and n > 4):
        raise ValidationError(
            _('U(1) cohomology is available in degrees 1..3 (and 4 for order <= 4).')
        )
    cells = tuple_count(group, k) * tuple_count(group, k + 1)
    if n > settings.COCHAIN_U1_MAX_ORDER:
        logger.warning(f"H^{k}({group}, U(1)) refused: order {n} above the cap")
        raise SizeCapExceededError(
            f"Order {n} above COCHAIN_U1_MAX_ORDER={settings.COCHAIN_U1_MAX_ORDER}",
            estimate=f"{cells} matrix cells",
        )
    if n > settings.COCHAIN_U1_FAST_ORDER and not long_running:
        logger.warning(f"H^{k}({group}, U(1)) needs the long-running path")
        raise SizeCapExceededError(
            f"Order {n} needs the long-running path (pass long_running=True)",
            estimate=f"{cells} matrix cells",
        )


def cohomology_u1(group, k, budget_seconds=None, long_running=False):
    """
    H^k(G, U(1)) as the torsion of coker(d_k) on integral normalized cochains.

    For each prime p with p^e || |G| the transposed differential is streamed
    into a Howell form over Z/p^(e+1); invariant factors p^f with 1 <= f <= e
    are the p-torsion, f = e + 1 marks a free direction.

    Args:
        group: GroupTable of order at most COCHAIN_U1_MAX_ORDER
        k: Degree (1..3, or 4 for order <= 4)
        budget_seconds: Wall-clock budget (None: WORKBENCH_BUDGET_SECONDS)
        long_running: Allow orders above COCHAIN_U1_FAST_ORDER

    Returns:
        FiniteAbelianGroup

    Raises:
        SizeCapExceededError: Above the order caps, with a cost estimate
        BudgetExceededError: If the streaming runs out of time

    Example:
        cohomology_u1(cyclic(3), 3) -> Z3
    """
    _check_u1_request(group, k, long_running)
    if budget_seconds is None:
        budget_seconds = settings.WORKBENCH_BUDGET_SECONDS
    budget = Budget(budget_seconds)
    width = tuple_count(group, k)
    orders = []
    for p, e in sorted(prime_power_parts(group.order).items()):
        modulus = p ** (e + 1)
        stream = ReducedHowell(width, modulus, p, e + 1)
        for block in cocycle_condition_rows(group, k, modulus):
            stream.add_rows(block, budget)
        if settings.COCHAIN_STREAM_VERIFY:
            _verify_stream(stream, group, k, modulus, budget)
        torsion = []
        for factor in row_module_invariants(stream).factors:
            f = e + 1 - p_valuation(factor, p)
            if 1 <= f <= e:
                torsion.append(p ** f)
        logger.info(f"H^{k}({group}, U(1))_({p}): {torsion or 'trivial'} "
                    f"({stream.rows_seen} rows, {len(stream.pivots)} pivots, "
                    f"{budget.elapsed:.1f}s)")
        orders.extend(torsion)
    result = FiniteAbelianGroup.from_orders(orders)
    logger.info(f"H^{k}({group}, U(1)) = {result}")
    return result


def _verify_stream(stream, group, k, modulus, budget):
    """Every generated row must lie in the final row module."""
    for block in cocycle_condition_rows(group, k, modulus):
        for row in block:
            if not stream.contains(row):
                logger.error(f"Streamed Howell form of d_{k}^T over {group} lost a row")
                raise WorkbenchError(f"Verification of the streamed d_{k} failed for {group}")
        budget.check(f"verifying d_{k} rows of {group}")
