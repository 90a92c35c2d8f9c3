"""
Cokernel invariants for integer and Z/p^k matrices.

Rows of the matrix span a submodule of Z^cols (or (Z/p^k)^cols); the cokernel
is the quotient by that span. Integer inputs go through the sympy Smith
invariants and are capped in size; larger computations go through prime-power
coefficients instead.
"""

import logging

import numpy as np
from django.conf import settings
from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors

from apps.core.exceptions import IntegerOverflowError, SizeCapExceededError
from .abelian import FiniteAbelianGroup
from .howell import cokernel_prime_power
from .matrices import PackedMatrix

logger = logging.getLogger('apps.exactlin')


def _integer_rows(matrix):
    if isinstance(matrix, np.ndarray):
        return [[int(x) for x in row] for row in matrix.tolist()]
    return [[int(x) for x in row] for row in matrix]


def integer_cokernel(matrix):
    """
    Cokernel of an integer matrix as (torsion, free rank).

    Args:
        matrix: Nested list or integer ndarray; rows span the relations

    Returns:
        Tuple (FiniteAbelianGroup torsion part, free rank)

    Raises:
        SizeCapExceededError: Above EXACTLIN_MAX_SMITH_COLUMNS columns
        IntegerOverflowError: Entries wider than EXACTLIN_MAX_ENTRY_BITS bits
    """
    rows = _integer_rows(matrix)
    cols = len(rows[0]) if rows else 0
    if cols > settings.EXACTLIN_MAX_SMITH_COLUMNS:
        raise SizeCapExceededError(
            f"Integer Smith reduction refused for {cols} columns",
            estimate=f"{len(rows)}x{cols}",
        )
    widest = max((abs(x).bit_length() for row in rows for x in row), default=0)
    if widest > settings.EXACTLIN_MAX_ENTRY_BITS:
        raise IntegerOverflowError(
            f"Entry of {widest} bits exceeds the {settings.EXACTLIN_MAX_ENTRY_BITS}-bit limit"
        )
    if not rows or not any(any(row) for row in rows):
        return FiniteAbelianGroup.trivial(), cols
    diagonal = [abs(int(d)) for d in invariant_factors(Matrix(rows))]
    nonzero = [d for d in diagonal if d != 0]
    torsion = FiniteAbelianGroup.from_orders([d for d in nonzero if d > 1])
    free_rank = cols - len(nonzero)
    logger.debug(f"Integer cokernel of {len(rows)}x{cols}: {torsion} + Z^{free_rank}")
    return torsion, free_rank


def cokernel_invariants(matrix):
    """
    Invariant factors of the cokernel.

    For a PackedMatrix over Z/p^k the full cokernel is returned (free Z/p^k
    summands included). For an integer matrix only the torsion part is returned;
    use integer_cokernel for the free rank.

    Example:
        cokernel_invariants([[6, 0], [0, 4]]) -> Z2 + Z12
    """
    if isinstance(matrix, PackedMatrix):
        return cokernel_prime_power(matrix)
    torsion, _ = integer_cokernel(matrix)
    return torsion
