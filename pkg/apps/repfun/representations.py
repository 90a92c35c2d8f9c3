"""
Matrix representations over prime fields.

Images act on column vectors, so a word s1 s2 ... sk maps to the product
A(s1) A(s2) ... A(sk), matching groupkit's table multiplication order.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Tuple

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

from apps.core.exceptions import NonInvertibleImageError, SingularMatrixError
from apps.core.utils.validators import validate_prime
from apps.exactlin.matrices import PackedMatrix, matmul_mod
from apps.groupkit.presentations import Presentation, verify_relators
from apps.groupkit.tables import GroupTable

logger = logging.getLogger('apps.repfun')


@dataclass(frozen=True, eq=False)
class MatrixRep:
    """
    A representation of a table group or a presentation on F_p^dim.

    Attributes:
        source: GroupTable or Presentation whose generators the images follow
        dim: Dimension of the underlying space
        modulus: The prime p
        images: One invertible dim x dim PackedMatrix per generator
        name: Label used in logs and command output

    Example:
        MatrixRep.regular(cyclic(3), 2).dim -> 3
    """
    source: object = field(repr=False)
    dim: int
    modulus: int
    images: Tuple[PackedMatrix, ...] = field(repr=False)
    name: str = ''
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        validate_prime(self.modulus)
        images = tuple(self.images)
        object.__setattr__(self, 'images', images)
        if len(images) != len(self.generator_names):
            raise ValidationError(
                _('Expected %(n)s generator images, got %(got)s.'),
                params={'n': len(self.generator_names), 'got': len(images)},
            )
        for label, image in zip(self.generator_names, images):
            if image.shape != (self.dim, self.dim) or image.modulus != self.modulus:
                raise ValidationError(
                    _('Image of %(g)s must be a %(n)sx%(n)s matrix mod %(p)s.'),
                    params={'g': label, 'n': self.dim, 'p': self.modulus},
                )
        if not self.check:
            return
        for label, image in zip(self.generator_names, images):
            try:
                image.inverse()
            except SingularMatrixError as exc:
                logger.error(f"Generator image {label} of {self} is singular")
                raise NonInvertibleImageError(label) from exc
        if isinstance(self.source, GroupTable):
            self._spot_check_table()
        elif self.dim:
            verify_relators(self.source, list(images))

    # ===== construction =====

    @classmethod
    def from_generator_images(cls, source, images, name='', check=True):
        images = list(images)
        if not images:
            raise ValidationError(_('No generator images given.'))
        return cls(source, images[0].rows, images[0].modulus, tuple(images),
                   name=name, check=check)

    @classmethod
    def trivial(cls, source, modulus, dim=1):
        count = len(_generator_names(source))
        identity = PackedMatrix.identity(dim, modulus)
        return cls(source, dim, modulus, (identity,) * count, name=f"trivial^{dim}", check=False)

    @classmethod
    def regular(cls, group, modulus):
        """Left multiplication: A(g) e_h = e_(gh)."""
        n = group.order
        images = []
        for s in group.generators:
            matrix = np.zeros((n, n), dtype=np.int64)
            matrix[group.table[s], np.arange(n)] = 1
            images.append(PackedMatrix.from_array(matrix, modulus))
        return cls(group, n, modulus, tuple(images), name=f"regular({group})")

    @classmethod
    def permutation(cls, group, modulus):
        """
        The natural permutation module of a group built by from_permutations.

        Raises:
            ValidationError: If the labels are not permutation tuples
        """
        labels = group.labels
        if not labels or not isinstance(labels[0], tuple):
            raise ValidationError(_('Group %(g)s has no permutation labels.'), params={'g': str(group)})
        degree = len(labels[0])
        images = []
        for s in group.generators:
            matrix = np.zeros((degree, degree), dtype=np.int64)
            matrix[list(labels[s]), np.arange(degree)] = 1
            images.append(PackedMatrix.from_array(matrix, modulus))
        return cls(group, degree, modulus, tuple(images), name=f"permutation({group})")

    def on_presentation(self, presentation):
        """The same images read against a presentation on the same generators."""
        if presentation.rank != len(self.images):
            raise ValidationError(_('Presentation has %(r)s generators, rep has %(n)s images.'),
                                  params={'r': presentation.rank, 'n': len(self.images)})
        return MatrixRep(presentation, self.dim, self.modulus, self.images, name=self.name)

    # ===== properties =====

    @property
    def generator_names(self):
        return _generator_names(self.source)

    @property
    def group(self):
        if not isinstance(self.source, GroupTable):
            raise ValidationError(_('Representation of a presentation has no group table.'))
        return self.source

    @property
    def prime(self):
        return self.modulus

    def prime_parts(self):
        return [(self.modulus, self)]

    @cached_property
    def _element_arrays(self):
        group = self.group
        tree = group.element_words
        arrays = np.zeros((group.order, self.dim, self.dim), dtype=np.int64)
        done = np.zeros(group.order, dtype=bool)
        arrays[group.identity] = np.eye(self.dim, dtype=np.int64)
        done[group.identity] = True
        generators = [image.to_array() for image in self.images]
        queue = deque([group.identity])
        while queue:
            g = queue.popleft()
            for position, s in enumerate(group.generators):
                h = int(group.table[g, s])
                if not done[h] and tree[h] == (g, position):
                    arrays[h] = matmul_mod(arrays[g], generators[position], self.modulus)
                    done[h] = True
                    queue.append(h)
        arrays.flags.writeable = False
        return arrays

    def element_matrices(self):
        """Array (order, dim, dim) of every element's image."""
        return self._element_arrays

    def element_images(self):
        return [PackedMatrix.from_array(a, self.modulus) for a in self._element_arrays]

    def _spot_check_table(self):
        group = self.group
        n = group.order
        arrays = self._element_arrays
        if n <= settings.GROUPKIT_EXHAUSTIVE_ORDER:
            pairs = [(g, h) for g in range(n) for h in range(n)]
        else:
            rng = np.random.default_rng(settings.WORKBENCH_RANDOM_SEED)
            pairs = rng.integers(0, n, size=(settings.REPFUN_SPOT_CHECK_PAIRS, 2)).tolist()
        for g, h in pairs:
            product = matmul_mod(arrays[g], arrays[h], self.modulus)
            if not np.array_equal(product, arrays[group.table[g, h]]):
                logger.warning(f"{self} breaks the table at ({g}, {h})")
                raise ValidationError(
                    _('Images do not respect the group table at (%(g)s, %(h)s).'),
                    params={'g': g, 'h': h},
                )
        logger.debug(f"{self}: {len(pairs)} table pairs checked")

    def __str__(self):
        return self.name or f"rep of dim {self.dim} over F{self.modulus}"


def _generator_names(source):
    if isinstance(source, Presentation):
        return list(source.generators)
    if isinstance(source, GroupTable):
        return [str(s) for s in source.generators]
    raise ValidationError(_('Representations need a GroupTable or a Presentation.'))
