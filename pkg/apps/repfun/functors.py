"""
Linear-algebra functors on representations.

Exterior and symmetric powers use the monomial bases e_i^e_j (i < j), e_i e_j
(i <= j) and e_i^e_j^e_k (i < j < k) in lexicographic order. Every entry is a
signed sum of products of image entries, so no division occurs and p = 2 is
handled like any other prime.
"""

import logging
from itertools import combinations, combinations_with_replacement

import numpy as np
from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

from apps.core.constants import Functor
from apps.exactlin.matrices import PackedMatrix
from .representations import MatrixRep

logger = logging.getLogger('apps.repfun')


def _index_arrays(d, size, repeat=False):
    build = combinations_with_replacement if repeat else combinations
    pairs = np.array(list(build(range(d), size)), dtype=np.int64).reshape(-1, size)
    return [pairs[:, i] for i in range(size)]


def dual_matrix(matrix):
    """(g^-1)^T, so that <g.f, g.v> = <f, v>."""
    return matrix.inverse().transpose()


def tensor_matrix(left, right):
    return PackedMatrix.from_array(np.kron(left.to_array(), right.to_array()), left.modulus)


def alt2_matrix(matrix):
    """Matrix of the 2x2 minors of g on e_i^e_j."""
    g = matrix.to_array()
    i, j = _index_arrays(matrix.rows, 2)
    block = (g[np.ix_(i, i)] * g[np.ix_(j, j)] - g[np.ix_(j, i)] * g[np.ix_(i, j)])
    return PackedMatrix.from_array(block, matrix.modulus)


def sym2_matrix(matrix):
    """
    Matrix of g on the monomials e_i e_j (i <= j).

    The coefficient of e_k e_l in g(e_i) g(e_j) is g[k,i] g[l,j] + g[l,i] g[k,j]
    for k < l and g[k,i] g[k,j] on the square e_k e_k.
    """
    g = matrix.to_array()
    i, j = _index_arrays(matrix.rows, 2, repeat=True)
    block = g[np.ix_(i, i)] * g[np.ix_(j, j)] + g[np.ix_(j, i)] * g[np.ix_(i, j)]
    squares = i == j
    block[squares] = g[np.ix_(i[squares], i)] * g[np.ix_(i[squares], j)]
    return PackedMatrix.from_array(block, matrix.modulus)


def alt3_matrix(matrix):
    """Matrix of the 3x3 minors of g on e_i^e_j^e_k."""
    g = matrix.to_array()
    i, j, k = _index_arrays(matrix.rows, 3)
    rows, cols = (i, j, k), (i, j, k)

    def entry(r, c):
        return g[np.ix_(rows[r], cols[c])]

    block = np.zeros((len(i), len(i)), dtype=np.int64)
    for (a, b, c), sign in (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
                            ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1)):
        block += sign * entry(a, 0) * entry(b, 1) * entry(c, 2)
    return PackedMatrix.from_array(block % matrix.modulus, matrix.modulus)


MATRIX_FUNCTORS = {
    Functor.DUAL: dual_matrix,
    Functor.ALT2: alt2_matrix,
    Functor.SYM2: sym2_matrix,
    Functor.ALT3: alt3_matrix,
}


def dimension_after(which, d, other=None):
    """Dimension of the functor applied to a d-dimensional space."""
    which = Functor(which)
    return {
        Functor.DUAL: d,
        Functor.TENSOR: d * (other or d),
        Functor.ALT2: d * (d - 1) // 2,
        Functor.SYM2: d * (d + 1) // 2,
        Functor.ALT3: d * (d - 1) * (d - 2) // 6,
    }[which]


def functor(rep, which, other=None):
    """
    Apply a representation functor generator by generator.

    Args:
        rep: MatrixRep
        which: Functor value (dual, tensor, alt2, sym2, alt3)
        other: Second MatrixRep for tensor, on the same source and prime

    Returns:
        MatrixRep on the same source

    Example:
        functor(co1_rep, 'alt2').dim -> 276
    """
    which = Functor(which)
    if which == Functor.TENSOR:
        if other is None:
            raise ValidationError(_('The tensor functor needs a second representation.'))
        if other.source != rep.source or other.modulus != rep.modulus:
            raise ValidationError(_('Tensor factors must share source and prime.'))
        images = [tensor_matrix(a, b) for a, b in zip(rep.images, other.images)]
        name = f"{rep} (x) {other}"
    else:
        images = [MATRIX_FUNCTORS[which](image) for image in rep.images]
        name = f"{which.value}({rep})"
    dim = dimension_after(which, rep.dim, other.dim if other is not None else None)
    logger.debug(f"Built {name}: dim {dim}")
    return MatrixRep(rep.source, dim, rep.modulus, tuple(images), name=name, check=False)


def dual(rep):
    return functor(rep, Functor.DUAL)


def tensor(rep, other):
    return functor(rep, Functor.TENSOR, other)


def alt2(rep):
    return functor(rep, Functor.ALT2)


def sym2(rep):
    return functor(rep, Functor.SYM2)


def alt3(rep):
    return functor(rep, Functor.ALT3)
