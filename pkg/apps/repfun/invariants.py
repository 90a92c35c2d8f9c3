"""
Invariant vectors, invariant forms, submodules and quotients.

Stability and invariance are checked on generator images; generators generate.
"""

import logging

import numpy as np
from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

from apps.core.exceptions import UnstableSpanError
from apps.exactlin.echelon import kernel_basis, rref, row_space_contains
from apps.exactlin.matrices import PackedMatrix, unpack_rows
from .representations import MatrixRep

logger = logging.getLogger('apps.repfun')


def fixed_points(rep):
    """
    Basis of {v : g v = v for every generator g}.

    Returns:
        PackedMatrix whose rows span the invariant subspace
    """
    p, d = rep.modulus, rep.dim
    if not rep.images:
        return PackedMatrix.identity(d, p)
    identity = np.eye(d, dtype=np.int64)
    system = np.vstack([image.to_array() - identity for image in rep.images])
    basis = kernel_basis(PackedMatrix.from_array(system, p))
    logger.info(f"{rep}: invariant subspace of dimension {basis.rows}")
    return basis


def invariant_bilinear_forms(rep):
    """
    Basis of the forms B with g^T B g = B for every generator g.

    With B flattened row by row, vec(g^T B g) = (g^T (x) g^T) vec(B), so the
    forms are the common kernel of the d^2 x d^2 matrices g^T (x) g^T - 1.

    Returns:
        List of d x d PackedMatrix forms
    """
    p, d = rep.modulus, rep.dim
    identity = np.eye(d * d, dtype=np.int64)
    blocks = []
    for image in rep.images:
        g_t = image.to_array().T
        blocks.append((np.kron(g_t, g_t) - identity) % p)
    if not blocks:
        blocks.append(np.zeros((0, d * d), dtype=np.int64))
    basis = kernel_basis(PackedMatrix.from_array(np.vstack(blocks), p)).to_array()
    forms = [PackedMatrix.from_array(row.reshape(d, d), p) for row in basis]
    logger.info(f"{rep}: {len(forms)}-dimensional space of invariant bilinear forms")
    return forms


def is_symmetric(form):
    return form == form.transpose()


def is_alternating(form):
    """B^T = -B with zero diagonal; over F_2 this is the symplectic condition."""
    array = form.to_array()
    return form.transpose() == -form and not np.diag(array).any()


def _reduced_span(rep, span):
    span = PackedMatrix.from_array(np.asarray(span, dtype=np.int64).reshape(-1, rep.dim), rep.modulus)
    reduced = rref(span)
    basis = unpack_rows(reduced.matrix.words[:reduced.rank], rep.dim, rep.modulus)
    return reduced, basis


def check_stable(rep, span):
    """
    Raises:
        UnstableSpanError: Naming the first generator that moves a span vector out
    """
    reduced, basis = _reduced_span(rep, span)
    for name, image in zip(rep.generator_names, rep.images):
        for vector in basis:
            if not row_space_contains(reduced, image.apply(vector)):
                logger.warning(f"{rep}: span is not stable under {name}")
                raise UnstableSpanError(name, vector.tolist())
    return reduced, basis


def submodule(rep, span):
    """The action restricted to a stable span, in the reduced echelon basis."""
    reduced, basis = check_stable(rep, span)
    pivots = list(reduced.pivots)
    images = []
    for image in rep.images:
        moved = image.to_array() @ basis.T % rep.modulus
        images.append(PackedMatrix.from_array(moved[pivots, :], rep.modulus))
    return MatrixRep(rep.source, reduced.rank, rep.modulus, tuple(images),
                     name=f"sub({rep})", check=False)


def quotient_module(rep, span):
    """
    The induced action on V / span.

    The quotient has coordinates at the non-pivot columns of the reduced span:
    a vector v maps to v[free] - W[:, free]^T v[pivots].

    Args:
        rep: MatrixRep
        span: Rows spanning a subspace (any array-like of length-dim rows)

    Returns:
        MatrixRep of dimension dim - rank(span)

    Raises:
        UnstableSpanError: If the span is not stable under some generator
    """
    reduced, basis = check_stable(rep, span)
    p = rep.modulus
    pivots = list(reduced.pivots)
    free = [c for c in range(rep.dim) if c not in set(pivots)]
    images = []
    for image in rep.images:
        columns = image.to_array()[:, free]
        coords = columns[free, :] - basis[:, free].T @ columns[pivots, :]
        images.append(PackedMatrix.from_array(coords % p, p))
    logger.info(f"{rep} modulo a span of rank {reduced.rank}: dim {len(free)}")
    return MatrixRep(rep.source, len(free), p, tuple(images),
                     name=f"{rep}/span", check=False)


def quotient_by_invariants(rep):
    """V modulo its fixed vectors."""
    invariants = fixed_points(rep)
    if invariants.rows == 0:
        raise ValidationError(_('%(rep)s has no invariant vectors.'), params={'rep': str(rep)})
    return quotient_module(rep, invariants.to_array())
