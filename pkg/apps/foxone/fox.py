"""
First cohomology from a presentation by Fox calculus.

A 1-cocycle is determined by its values z_i on the generators. Extending by
D(uv) = D(u) + rho(u) D(v) gives D(w) = sum_i (dw/dg_i) z_i for every word; the
cocycles are the z with D(r) = 0 for every relator r.
"""

import logging

import numpy as np

from apps.core.exceptions import RelatorNotSatisfiedError
from apps.exactlin.abelian import FiniteAbelianGroup
from apps.exactlin.echelon import kernel_basis, rank
from apps.exactlin.matrices import PackedMatrix, matmul_mod, pack_rows
from apps.repfun.representations import MatrixRep

logger = logging.getLogger('apps.foxone')

FLOAT_EXACT_BOUND = 1 << 52


def _multiply(left, right, p):
    # float64 products are exact while every dot product stays below 2^52
    if (p - 1) ** 2 * left.shape[1] < FLOAT_EXACT_BOUND:
        product = left.astype(np.float64) @ right.astype(np.float64)
        return np.rint(product).astype(np.int64) % p
    return matmul_mod(left, right, p)


class FoxEvaluator:
    """
    Generator images, their inverses and the running prefix of one word.

    Example:
        evaluator = FoxEvaluator(rep)
        block, value = evaluator.block(word)
    """

    def __init__(self, rep):
        self.rep = rep
        self.p = rep.modulus
        self.d = rep.dim
        self.forward = [image.to_array() for image in rep.images]
        self.backward = [image.inverse().to_array() for image in rep.images]

    def block(self, word):
        """
        The d x (rank * d) row block of dw/dg_i evaluated through the images.

        A letter g_i adds the prefix image to block i; a letter g_i^-1 subtracts
        the prefix image including that letter.

        Returns:
            (block, image of the whole word) as int64 arrays
        """
        d, p = self.d, self.p
        blocks = np.zeros((len(self.forward), d, d), dtype=np.int64)
        prefix = np.eye(d, dtype=np.int64)
        for g, e in word:
            if e == 1:
                blocks[g] += prefix
                prefix = _multiply(prefix, self.forward[g], p)
            else:
                prefix = _multiply(prefix, self.backward[g], p)
                blocks[g] -= prefix
        block = np.concatenate(list(blocks % p), axis=1) if len(blocks) else \
            np.zeros((d, 0), dtype=np.int64)
        return block, prefix


def fox_block(word, rep):
    """Fox block of any word (not necessarily a relator) as a PackedMatrix."""
    block, _value = FoxEvaluator(rep).block(word)
    return PackedMatrix.from_array(block, rep.modulus)


def fox_matrix(presentation, rep):
    """
    Stacked Fox blocks of every relator.

    Args:
        presentation: Presentation whose generators index rep's images
        rep: MatrixRep over F_p

    Returns:
        PackedMatrix of shape (relators * dim, rank * dim)

    Raises:
        RelatorNotSatisfiedError: If a relator does not evaluate to the identity

    Example:
        fox_matrix(co1_presentation(), co1_rep()).cols -> 216
    """
    evaluator = FoxEvaluator(rep)
    identity = np.eye(rep.dim, dtype=np.int64)
    blocks = []
    for index, relator in enumerate(presentation.relators):
        block, value = evaluator.block(relator)
        if not np.array_equal(value, identity):
            logger.error(f"Relator {index} of {presentation} fails for {rep}")
            raise RelatorNotSatisfiedError(presentation.relator_text(index), index)
        blocks.append(pack_rows(block, rep.modulus))
        logger.debug(f"Fox block of relator {index} ({len(relator)} letters) done")
    cols = presentation.rank * rep.dim
    if not blocks:
        return PackedMatrix.zeros(0, cols, rep.modulus)
    words = np.vstack(blocks)
    return PackedMatrix(rep.modulus, words.shape[0], cols, words)


def coboundary_matrix(rep):
    """The (rank * dim) x dim matrix m -> ((rho(g_i) - 1) m)_i."""
    identity = np.eye(rep.dim, dtype=np.int64)
    if not rep.images:
        return PackedMatrix.zeros(0, rep.dim, rep.modulus)
    stacked = np.vstack([image.to_array() - identity for image in rep.images])
    return PackedMatrix.from_array(stacked, rep.modulus)


def cocycle_basis(presentation, rep):
    """Rows spanning the cocycles (z_1, ..., z_r) in F_p^(rank * dim)."""
    return kernel_basis(fox_matrix(presentation, rep))


def h1_dimension(presentation, rep):
    """
    dim H^1 = (rank * dim - rank of the Fox matrix) - (dim - dim of the invariants).

    Returns:
        Integer dimension over F_p
    """
    fox = fox_matrix(presentation, rep)
    cocycles = fox.cols - rank(fox)
    coboundaries = rank(coboundary_matrix(rep)) if rep.dim else 0
    dimension = cocycles - coboundaries
    logger.info(f"H^1({presentation}, {rep}): {cocycles} cocycles, "
                f"{coboundaries} coboundaries, dimension {dimension}")
    return dimension


def h1(presentation, rep):
    """H^1 as an elementary abelian group Z_p^d."""
    return FiniteAbelianGroup.elementary(rep.modulus, h1_dimension(presentation, rep))


def abelianization_rank(presentation, p):
    """dim H^1(G, F_p) with trivial action: the p-rank of the abelianization."""
    trivial = MatrixRep.trivial(presentation, p)
    return h1_dimension(presentation, trivial)
