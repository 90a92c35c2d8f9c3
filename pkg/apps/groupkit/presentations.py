"""
Finite presentations, relator evaluation on matrices, and their text files.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Tuple

import numpy as np
from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

from apps.core.exceptions import (
    NonInvertibleImageError,
    ParseError,
    RelatorNotSatisfiedError,
    SingularMatrixError,
)
from apps.core.utils.validators import validate_generator_name
from apps.exactlin.formats import dump_matrix, read_matrix_block
from apps.exactlin.matrices import PackedMatrix, matmul_mod
from .words import Word, format_word, free_reduce, inverse_word, parse_word

logger = logging.getLogger('apps.groupkit')


@dataclass(frozen=True)
class Presentation:
    """
    Generator names plus relator words.

    Example:
        Presentation(('a',), (((0, 1), (0, 1)),))  # <a | a^2>
    """
    generators: Tuple[str, ...]
    relators: Tuple[Word, ...]
    name: str = ''

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise ValidationError(_('Generator names must be distinct.'))
        for name in self.generators:
            validate_generator_name(name)
        for relator in self.relators:
            if any(not 0 <= g < len(self.generators) or e not in (1, -1) for g, e in relator):
                raise ValidationError(_('Relator letter out of range.'))

    @property
    def rank(self):
        return len(self.generators)

    def relator_text(self, index):
        return format_word(self.relators[index], self.generators)

    def __str__(self):
        return self.name or f"<{' '.join(self.generators)} | {len(self.relators)} relators>"


def coxeter_presentation(nodes, edges=(), extra_relators=(), name=''):
    """
    Coxeter presentation of a labelled diagram, optionally with extra relators.

    Args:
        nodes: Generator names
        edges: Pairs (x, y) meaning label 3, or triples (x, y, m) with m >= 3
        extra_relators: Further relator texts in word syntax

    Returns:
        Presentation with x^2 for each node, (x y)^m for every pair (unlisted pairs
        get m = 2), then the extra relators

    Raises:
        ValidationError: On a label below 3 or an edge naming an unknown node
    """
    nodes = tuple(nodes)
    labels = {}
    for edge in edges:
        edge = tuple(edge)
        x, y = edge[:2]
        m = edge[2] if len(edge) > 2 else 3
        if m < 3:
            raise ValidationError(_('Edge labels must be at least 3.'))
        if x not in nodes or y not in nodes:
            raise ValidationError(_('Edge %(e)s names an unknown node.'), params={'e': edge})
        labels[frozenset((x, y))] = m
    relators = [((i, 1), (i, 1)) for i in range(len(nodes))]
    for i, j in combinations(range(len(nodes)), 2):
        m = labels.get(frozenset((nodes[i], nodes[j])), 2)
        relators.append(((i, 1), (j, 1)) * m)
    relators.extend(parse_word(text, nodes) for text in extra_relators)
    return Presentation(nodes, tuple(relators), name=name)


def cyclic_presentation(n):
    return Presentation(('a',), (((0, 1),) * n,), name=f"Z{n}")


def dihedral_presentation(order):
    """<r, s | r^n, s^2, (s r)^2>"""
    n = order // 2
    r, s = (0, 1), (1, 1)
    return Presentation(('r', 's'), ((r,) * n, (s, s), (s, r, s, r)), name=f"D{order}")


def dicyclic_presentation(order):
    """<x, y | x^(2n), y^2 x^-n, y x y^-1 x>"""
    n = order // 4
    x, y = (0, 1), (1, 1)
    relators = ((x,) * (2 * n), (y, y) + ((0, -1),) * n, (y, x, (1, -1), x))
    return Presentation(('x', 'y'), relators, name=f"Dic{order}")


def presentation_from_table(group, names=None):
    """
    A finite presentation of a table group on its generators.

    Relators are w_g s w_(g s)^-1 for every element g and generator s, where w is
    the breadth-first word of an element; relators that freely reduce to the
    empty word are dropped.
    """
    names = tuple(names or [f"g{i}" for i in range(len(group.generators))])
    words = [group.word_for(g) for g in range(group.order)]
    relators = []
    seen = set()
    for g in range(group.order):
        for position, s in enumerate(group.generators):
            h = group.multiply(g, s)
            relator = free_reduce(words[g] + ((position, 1),) + inverse_word(words[h]))
            if relator and relator not in seen:
                seen.add(relator)
                relators.append(relator)
    return Presentation(names, tuple(relators), name=group.name)


# ===== evaluation =====

def _image_arrays(images, generators):
    if not images:
        raise ValidationError(_('No generator images given.'))
    size, modulus = images[0].rows, images[0].modulus
    forward, backward = [], []
    for name, image in zip(generators, images):
        if image.shape != (size, size) or image.modulus != modulus:
            raise ValidationError(
                _('Image of %(g)s must be a %(n)sx%(n)s matrix mod %(m)s.'),
                params={'g': name, 'n': size, 'm': modulus},
            )
        try:
            inverse = image.inverse()
        except SingularMatrixError as exc:
            logger.error(f"Generator image {name} is singular")
            raise NonInvertibleImageError(name) from exc
        forward.append(image.to_array())
        backward.append(inverse.to_array())
    return forward, backward, size, modulus


def evaluate_word(word, images, generators=None):
    """
    Product of generator images (or their inverses) in word order.

    Args:
        word: Word
        images: List of square invertible PackedMatrix, one per generator
        generators: Names for error messages

    Raises:
        NonInvertibleImageError: Naming the first singular image
    """
    generators = generators or [str(i) for i in range(len(images))]
    forward, backward, size, modulus = _image_arrays(images, generators)
    return _evaluate(word, forward, backward, size, modulus)


def _evaluate(word, forward, backward, size, modulus):
    current = np.eye(size, dtype=np.int64)
    for g, e in word:
        current = matmul_mod(current, forward[g] if e == 1 else backward[g], modulus)
    return PackedMatrix.from_array(current, modulus)


def failing_relators(presentation, images):
    """Indices of relators that do not evaluate to the identity."""
    forward, backward, size, modulus = _image_arrays(images, presentation.generators)
    failures = []
    for index, relator in enumerate(presentation.relators):
        value = _evaluate(relator, forward, backward, size, modulus)
        logger.debug(f"Relator {index} ({len(relator)} letters) evaluated")
        if not value.is_identity():
            failures.append(index)
    return failures


def verify_relators(presentation, images):
    """
    Check that every relator holds for the images.

    Raises:
        RelatorNotSatisfiedError: For the first failing relator
    """
    failures = failing_relators(presentation, images)
    if failures:
        index = failures[0]
        logger.error(f"Relator {index} of {presentation} fails on the given images")
        raise RelatorNotSatisfiedError(presentation.relator_text(index), index)
    logger.info(f"All {len(presentation.relators)} relators of {presentation} hold")
    return True


# ===== files =====

def _content_lines(text):
    """(line number, stripped text) for non-blank, non-comment lines."""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if line:
            yield number, line


def parse_presentation(text, source=None, name=''):
    """
    Parse `gens: a b c` followed by `rel: <word>` lines.

    Raises:
        ParseError: On a missing gens line, unknown keys or bad words
    """
    generators = None
    relators = []
    for number, line in _content_lines(text):
        key, _sep, value = line.partition(':')
        key = key.strip()
        if key == 'gens':
            if generators is not None:
                raise ParseError('Duplicate gens line', number, source)
            generators = tuple(value.split())
            if not generators:
                raise ParseError('Empty generator list', number, source)
        elif key == 'rel':
            if generators is None:
                raise ParseError('rel before gens', number, source)
            word = parse_word(value, generators, number, source)
            if not word:
                raise ParseError('Empty relator', number, source)
            relators.append(word)
        else:
            raise ParseError(f"Unknown key {key!r}", number, source)
    if generators is None:
        raise ParseError('Missing gens line', None, source)
    return Presentation(generators, tuple(relators), name=name)


def dump_presentation(presentation):
    lines = [f"gens: {' '.join(presentation.generators)}"]
    lines += [f"rel: {presentation.relator_text(i)}" for i in range(len(presentation.relators))]
    return '\n'.join(lines) + '\n'


def load_presentation(path, name=''):
    path = Path(path)
    return parse_presentation(path.read_text(), source=path.name, name=name or path.stem)


def parse_generator_matrices(text, source=None):
    """
    Parse `gen: <name>` headers each followed by a matrix block.

    Returns:
        Dict {name: PackedMatrix} in file order
    """
    numbered = list(_content_lines(text))
    lines = [line for _, line in numbered]
    images = {}
    index = 0
    while index < len(lines):
        key, _sep, value = lines[index].partition(':')
        if key.strip() != 'gen' or not value.strip():
            raise ParseError('Expected "gen: <name>"', numbered[index][0], source)
        name = value.strip()
        if name in images:
            raise ParseError(f"Duplicate generator {name!r}", numbered[index][0], source)
        try:
            images[name], index = read_matrix_block(lines, index + 1, source)
        except ParseError as exc:
            position = min(exc.line or index + 2, len(numbered)) - 1
            raise ParseError(exc.message, numbered[position][0], source) from exc
    return images


def dump_generator_matrices(images):
    return ''.join(f"gen: {name}\n{dump_matrix(matrix)}" for name, matrix in images.items())


def load_generator_matrices(path):
    path = Path(path)
    return parse_generator_matrices(path.read_text(), source=path.name)


def images_for(presentation, images):
    """Order a {name: matrix} dict by the presentation's generators."""
    missing = [g for g in presentation.generators if g not in images]
    if missing:
        raise ValidationError(_('No image for generators %(g)s.'), params={'g': missing})
    return [images[g] for g in presentation.generators]
