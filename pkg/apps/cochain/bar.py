"""
The normalized bar complex of a table group.

Level-k normalized cochains live on k-tuples of non-identity elements. Tuples are
indexed lexicographically by the position of each entry among the non-identity
elements, and a cochain with values in a dim-dimensional module is a row vector
of length (n-1)^k * dim. The differential d_k is the matrix D_k with c D_k = dc:

    (dc)(g1..g_k+1) = g1.c(g2..g_k+1) + sum_j (-1)^j c(.., g_j g_j+1, ..)
                      + (-1)^(k+1) c(g1..g_k)
"""

import logging
from itertools import product

import numpy as np
from django.conf import settings

from apps.core.exceptions import SizeCapExceededError
from apps.core.utils.validators import validate_prime_power
from apps.exactlin.matrices import PackedMatrix

logger = logging.getLogger('apps.cochain')


def non_identity(group):
    return np.array([g for g in range(group.order) if g != group.identity], dtype=np.int64)


def positions(group):
    """Array g -> position among the non-identity elements (-1 for the identity)."""
    lookup = np.full(group.order, -1, dtype=np.int64)
    lookup[non_identity(group)] = np.arange(group.order - 1)
    return lookup


def tuple_count(group, k):
    return (group.order - 1) ** k


def all_tuples(group, k):
    """Array of shape ((n-1)^k, k) listing the index order of level-k tuples."""
    others = non_identity(group).tolist()
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(product(others, repeat=k)), dtype=np.int64).reshape(-1, k)


def tuple_index(group, columns, length):
    """Indices of tuples given column-wise; entries must be non-identity."""
    lookup = positions(group)
    base = group.order - 1
    index = np.zeros(length, dtype=np.int64)
    for column in columns:
        index = index * base + lookup[column]
    return index


def coboundary_faces(group, targets):
    """
    The faces of d_k evaluated on target (k+1)-tuples.

    Args:
        group: GroupTable
        targets: Array (M, k+1) of non-identity tuples

    Returns:
        List of (source index, mask, sign, acting element or None); rows where
        mask is False have a face containing the identity and contribute nothing
    """
    count, width = targets.shape
    k = width - 1
    identity = group.identity
    everything = np.ones(count, dtype=bool)
    columns = [targets[:, i] for i in range(width)]
    faces = [(tuple_index(group, columns[1:], count), everything, 1, columns[0])]
    for j in range(1, k + 1):
        merged = group.table[columns[j - 1], columns[j]]
        mask = merged != identity
        safe = np.where(mask, merged, targets[:, 0])
        face = columns[:j - 1] + [safe] + columns[j + 1:]
        faces.append((tuple_index(group, face, count), mask, (-1) ** j, None))
    faces.append((tuple_index(group, columns[:k], count), everything, (-1) ** (k + 1), None))
    return faces


def cochain_space_matrix(group, module, k):
    """
    The matrix D_k of the level-k differential with coefficients in a module.

    Args:
        group: GroupTable
        module: Coefficient module with prime-power modulus
        k: Source level

    Returns:
        PackedMatrix of shape ((n-1)^k * dim, (n-1)^(k+1) * dim)

    Raises:
        SizeCapExceededError: Above COCHAIN_MAX_CELLS matrix cells
    """
    validate_prime_power(module.modulus)
    d, q = module.dim, module.modulus
    rows, cols = tuple_count(group, k) * d, tuple_count(group, k + 1) * d
    cap = settings.COCHAIN_MAX_CELLS
    if rows * cols > cap:
        logger.warning(f"d_{k} over {group} refused: {rows}x{cols} cells above {cap}")
        raise SizeCapExceededError(f"d_{k} of {group} with dim {d} coefficients",
                                   estimate=f"{rows * cols} cells")
    matrix = np.zeros((rows, cols), dtype=np.int64)
    targets = all_tuples(group, k + 1)
    target_index = np.arange(targets.shape[0])
    actions = np.asarray(module.element_matrices(), dtype=np.int64) % q
    for source, mask, sign, acting in coboundary_faces(group, targets):
        s, t = source[mask], target_index[mask]
        if acting is None:
            for r in range(d):
                np.add.at(matrix, (s * d + r, t * d + r), sign)
            continue
        blocks = actions[acting[mask]]
        for r in range(d):
            for c in range(d):
                np.add.at(matrix, (s * d + c, t * d + r), blocks[:, r, c])
    logger.debug(f"Built d_{k} of {group}: {rows}x{cols} mod {q}")
    return PackedMatrix.from_array(matrix % q, q)


def cocycle_condition_rows(group, k, modulus, chunk=1024):
    """
    Rows of D_k transposed for trivial coefficients, generated in chunks.

    Row T holds the coefficients of the condition (dc)(T) on the level-k values,
    so the rows span the image of the transposed differential.

    Yields:
        int64 arrays of shape (<= chunk, (n-1)^k)
    """
    width = tuple_count(group, k)
    others = non_identity(group)
    total = tuple_count(group, k + 1)
    base = group.order - 1
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        flat = np.arange(start, stop, dtype=np.int64)
        targets = np.zeros((stop - start, k + 1), dtype=np.int64)
        for i in range(k, -1, -1):
            targets[:, i] = others[flat % base]
            flat //= base
        block = np.zeros((stop - start, width), dtype=np.int64)
        local = np.arange(stop - start)
        for source, mask, sign, _acting in coboundary_faces(group, targets):
            np.add.at(block, (local[mask], source[mask]), sign)
        yield block % modulus
