"""
Reduced row-echelon forms and kernels over prime fields.

F_2 elimination runs directly on the packed words; odd primes eliminate on
unpacked int64 rows. Both walk columns left to right and take the first row at
or below the current one with a nonzero entry as pivot.
"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from apps.core.exceptions import ModulusError
from .matrices import PackedMatrix, unpack_rows

logger = logging.getLogger('apps.exactlin')


@dataclass(frozen=True)
class RowReduceResult:
    matrix: PackedMatrix
    rank: int
    pivots: Tuple[int, ...]


def _require_prime(matrix, operation):
    if not matrix.is_prime_field:
        raise ModulusError(
            f"{operation} needs a prime modulus, got {matrix.modulus}; use howell_form"
        )


def _rref_f2_words(words, cols):
    words = words.copy()
    n_rows = words.shape[0]
    pivots = []
    row = 0
    one = np.uint64(1)
    for col in range(cols):
        if row == n_rows:
            break
        w, bit = divmod(col, 64)
        shift = np.uint64(bit)
        column_bits = (words[:, w] >> shift) & one
        candidates = np.flatnonzero(column_bits[row:]) + row
        if candidates.size == 0:
            continue
        pivot = int(candidates[0])
        if pivot != row:
            words[[row, pivot]] = words[[pivot, row]]
            column_bits[[row, pivot]] = column_bits[[pivot, row]]
        hits = np.flatnonzero(column_bits)
        hits = hits[hits != row]
        if hits.size:
            words[hits, w:] ^= words[row, w:]
        pivots.append(col)
        row += 1
    return words, pivots


def _rref_odd(array, p):
    work = array.copy()
    n_rows, cols = work.shape
    pivots = []
    row = 0
    for col in range(cols):
        if row == n_rows:
            break
        candidates = np.flatnonzero(work[row:, col]) + row
        if candidates.size == 0:
            continue
        pivot = int(candidates[0])
        if pivot != row:
            work[[row, pivot]] = work[[pivot, row]]
        work[row] = (work[row] * pow(int(work[row, col]), -1, p)) % p
        factors = work[:, col].copy()
        factors[row] = 0
        hits = np.flatnonzero(factors)
        if hits.size:
            work[hits] = (work[hits] - np.outer(factors[hits], work[row])) % p
        pivots.append(col)
        row += 1
    return work, pivots


def rref(matrix):
    """
    Reduced row-echelon form over F_p.

    Args:
        matrix: PackedMatrix with prime modulus

    Returns:
        RowReduceResult with the reduced matrix (same shape, zero rows last),
        the rank and the pivot columns

    Raises:
        ModulusError: If the modulus is not prime
    """
    _require_prime(matrix, 'rref')
    if matrix.modulus == 2:
        words, pivots = _rref_f2_words(matrix.words, matrix.cols)
        reduced = PackedMatrix(2, matrix.rows, matrix.cols, words)
    else:
        work, pivots = _rref_odd(matrix.to_array(), matrix.modulus)
        reduced = PackedMatrix.from_array(work, matrix.modulus)
    logger.debug(f"rref {matrix.rows}x{matrix.cols} mod {matrix.modulus}: rank {len(pivots)}")
    return RowReduceResult(matrix=reduced, rank=len(pivots), pivots=tuple(pivots))


def rank(matrix):
    return rref(matrix).rank


def kernel_basis(matrix):
    """
    Basis of the right kernel {v : Mv = 0} over F_p.

    Returns:
        PackedMatrix whose rows are the basis vectors (cols - rank of them); one
        vector per non-pivot column, with a 1 in that column
    """
    result = rref(matrix)
    p, cols = matrix.modulus, matrix.cols
    pivots = result.pivots
    reduced = unpack_rows(result.matrix.words[:result.rank], cols, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, c in enumerate(free):
        basis[i, c] = 1
        if pivots:
            basis[i, list(pivots)] = (-reduced[:, c]) % p
    return PackedMatrix.from_array(basis.reshape(len(free), cols), p)


def row_space_contains(reduced, vector):
    """Whether vector lies in the row space of an rref result."""
    p = reduced.matrix.modulus
    v = np.asarray(vector, dtype=np.int64) % p
    rows = unpack_rows(reduced.matrix.words[:reduced.rank], reduced.matrix.cols, p)
    for r, c in enumerate(reduced.pivots):
        if v[c]:
            v = (v - v[c] * rows[r]) % p
    return not v.any()
