"""
Characters of the binary dihedral group of order 16.

The group is dicyclic(16): x^a y^b with y^2 = x^4 and y x y^-1 = x^-1. The
irreducibles carry the labels of the McKay graph of its embedding in SU(2):

    V0 trivial          V1  x -> 1,  y -> -1
    V2  x -> -1, y -> 1  V3  x -> -1, y -> -1
    V4  x -> diag(i, -i)            (factors through the dihedral quotient)
    V5  x -> diag(z^3, z^-3)        (faithful)
    V6  x -> diag(z, z^-1)          (the defining representation in SU(2))

with z = exp(2 pi i / 8). Values lie in Z[sqrt 2] and are kept exact with sympy.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np
from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _
from sympy import Integer, Matrix, Rational, cos, expand, pi, sqrt

from apps.core.constants import (
    MAX_SYM_POWER,
    Q16_IRREP_LABELS,
    Q16_MERGED_ORDERS,
    Q16_ORDER,
)
from apps.core.exceptions import NonIntegralDecompositionError
from apps.groupkit.tables import dicyclic
from apps.workbench.datasets import quoted_constants

logger = logging.getLogger('apps.chern16')

ROTATION_STEPS = 8
LINEAR_SIGNS = {'V0': (1, 1), 'V1': (1, -1), 'V2': (-1, 1), 'V3': (-1, -1)}
PLANE_TWISTS = {'V4': 2, 'V5': 3, 'V6': 1}


@lru_cache(maxsize=1)
def binary_dihedral():
    return dicyclic(Q16_ORDER)


def _exponents(g):
    """(a, b) with g = x^a y^b in the dicyclic indexing."""
    return g % ROTATION_STEPS, g // ROTATION_STEPS


def _two_cos(steps):
    """z^steps + z^-steps, exactly."""
    return expand(2 * cos(pi * Integer(steps) / 4))


def sqrt2_parts(value):
    """
    Split x + y sqrt(2) into (x, y).

    Raises:
        ValidationError: If the value is not in Q(sqrt 2)
    """
    value = expand(value)
    y = value.coeff(sqrt(2))
    x = expand(value - y * sqrt(2))
    if not (x.is_Rational and y.is_Rational):
        raise ValidationError(_('%(v)s is not in Q(sqrt 2).'), params={'v': str(value)})
    return x, y


def irreducible_value(label, g):
    a, b = _exponents(g)
    if label in LINEAR_SIGNS:
        on_x, on_y = LINEAR_SIGNS[label]
        return Integer(on_x ** a * on_y ** b)
    if b:
        return Integer(0)
    return _two_cos(PLANE_TWISTS[label] * a)


@dataclass(frozen=True)
class CharacterTable:
    """
    Exact character table: values[i, c] is the character of labels[i] on classes[c].
    """
    labels: Tuple[str, ...]
    classes: Tuple[Tuple[int, ...], ...]
    values: Matrix

    @property
    def class_sizes(self):
        return tuple(len(c) for c in self.classes)

    @property
    def degrees(self):
        return tuple(int(v) for v in self.values[:, 0])

    @property
    def class_orders(self):
        orders = binary_dihedral().element_orders
        return tuple(int(orders[c[0]]) for c in self.classes)

    def row(self, label):
        return list(self.values.row(self.labels.index(label)))

    def inner_product(self, left, right):
        """<left, right> for real class functions given as 7-value sequences."""
        total = sum(size * u * v for size, u, v in zip(self.class_sizes, left, right))
        return expand(Rational(1, Q16_ORDER) * total)

    def character_of(self, multiplicities):
        """Class values of the sum of n_i V_i."""
        values = [Integer(0)] * len(self.classes)
        for n, label in zip(multiplicities, self.labels):
            values = [v + n * w for v, w in zip(values, self.row(label))]
        return [expand(v) for v in values]

    def decompose(self, character):
        """
        Multiplicities of the irreducibles in a class function.

        Raises:
            NonIntegralDecompositionError: If some multiplicity is not an integer
        """
        values = [self.inner_product(character, self.row(label)) for label in self.labels]
        if not all(v.is_Integer for v in values):
            raise NonIntegralDecompositionError(values)
        return tuple(int(v) for v in values)

    def tensor(self, left, right):
        return [expand(u * v) for u, v in zip(self.row(left), self.row(right))]

    def mckay_neighbours(self, label='V6'):
        """{V_i: multiplicities of label (x) V_i}."""
        return {other: self.decompose(self.tensor(label, other)) for other in self.labels}


@lru_cache(maxsize=1)
def char_table_q16():
    """
    The 7x7 character table, classes in groupkit order.

    Example:
        char_table_q16().degrees -> (1, 1, 1, 1, 2, 2, 2)
    """
    group = binary_dihedral()
    classes = group.conjugacy_classes
    values = Matrix([[irreducible_value(label, c[0]) for c in classes]
                     for label in Q16_IRREP_LABELS])
    logger.debug(f"Character table of {group} on {len(classes)} classes")
    return CharacterTable(Q16_IRREP_LABELS, classes, values)


def sym_power_character(k):
    """
    Class values of Sym^k V6.

    An element acts on V6 with eigenvalues z^r, z^-r (r = a for x^a, r = 2 for
    x^a y), so Sym^k has eigenvalues z^(r w) for w in {k, k-2, ..., -k}.
    """
    if isinstance(k, bool) or not isinstance(k, int) or not 0 <= k <= MAX_SYM_POWER:
        raise ValidationError(_('Symmetric power must be between 0 and %(m)s.'),
                              params={'m': MAX_SYM_POWER})
    values = []
    for members in char_table_q16().classes:
        a, b = _exponents(members[0])
        rotation = 2 if b else a
        total = Integer(1) if k % 2 == 0 else Integer(0)
        for weight in range(k, 0, -2):
            total += _two_cos(rotation * weight)
        values.append(expand(total))
    return values


def determinant_character(label):
    """
    The one-dimensional irreducible equal to Alt^2 of a two-dimensional one.

    Alt^2 chi(g) = (chi(g)^2 - chi(g^2)) / 2.
    """
    table = char_table_q16()
    if table.degrees[table.labels.index(label)] != 2:
        raise ValidationError(_('%(l)s is not two-dimensional.'), params={'l': label})
    group = binary_dihedral()
    squares = group.power_map(2)
    row = table.row(label)
    values = [expand((row[i] ** 2 - row[int(group.class_of[squares[c[0]]])]) / 2)
              for i, c in enumerate(table.classes)]
    multiplicities = table.decompose(values)
    return table.labels[multiplicities.index(1)]


# ===== merged classes =====

@lru_cache(maxsize=1)
def merged_class_names():
    """Monster class names met by the order 16 subgroup, by element order."""
    return tuple(quoted_constants()['q16_class_fusion']['value'])


def merged_index(order):
    return Q16_MERGED_ORDERS.index(order)


@dataclass(frozen=True)
class MergedClassFunction:
    """
    Traces at the merged classes 1A, 2B, 4D, 8F.

    Example:
        MergedClassFunction((4, -4, 0, 0))  # Sym^3 V6
    """
    traces: Tuple[int, int, int, int]

    def __post_init__(self):
        traces = tuple(self.traces)
        if len(traces) != len(Q16_MERGED_ORDERS):
            raise ValidationError(_('A merged column has exactly four traces.'))
        if any(isinstance(t, bool) or int(t) != t for t in traces):
            raise ValidationError(_('Merged traces must be integers.'))
        object.__setattr__(self, 'traces', tuple(int(t) for t in traces))

    @classmethod
    def from_mapping(cls, values):
        """Build from {class name: trace}; the classes must be exactly 1A, 2B, 4D, 8F."""
        names = merged_class_names()
        if set(values) != set(names):
            raise ValidationError(_('Expected classes %(c)s, got %(got)s.'),
                                  params={'c': ', '.join(names),
                                          'got': ', '.join(sorted(values))})
        return cls(tuple(values[name] for name in names))

    def by_class(self):
        return dict(zip(merged_class_names(), self.traces))

    def __add__(self, other):
        return MergedClassFunction(tuple(a + b for a, b in zip(self.traces, other.traces)))

    def __str__(self):
        return ', '.join(f"{name}={value}" for name, value in self.by_class().items())


@lru_cache(maxsize=1)
def merged_decomposition_matrix():
    """
    The 4x7 matrix M with (tr 1A, tr 2B, tr 4D, tr 8F) . M = (n0, ..., n6).

    Entry (r, i) is the sum over the classes merging into r of |class| chi_i / 16.
    """
    table = char_table_q16()
    rows = [[Integer(0)] * len(table.labels) for _order in Q16_MERGED_ORDERS]
    for c, (size, order) in enumerate(zip(table.class_sizes, table.class_orders)):
        r = merged_index(order)
        for i in range(len(table.labels)):
            rows[r][i] += Rational(size, Q16_ORDER) * table.values[i, c]
    matrix = Matrix([[expand(v) for v in row] for row in rows])
    if not all(v.is_Rational for v in matrix):
        raise NonIntegralDecompositionError(list(matrix))
    return matrix


def quoted_decomposition_matrix():
    entry = quoted_constants()['merged_decomposition_matrix']
    return Matrix([[Rational(v) for v in row] for row in entry['value']])


def decompose_merged(chi):
    """
    Multiplicities (n0, ..., n6) of a merged-constant class function.

    Raises:
        NonIntegralDecompositionError: If chi is not a genuine merged-constant character
    """
    values = Matrix([list(chi.traces)]) * merged_decomposition_matrix()
    if not all(v.is_Integer for v in values):
        logger.info(f"Merged column {chi} does not decompose integrally")
        raise NonIntegralDecompositionError(list(values))
    return tuple(int(v) for v in values)


def merged_projection(character):
    """
    The merged column of a 7-class character, or None when it is not
    constant on the classes that merge.
    """
    table = char_table_q16()
    merged = [None] * len(Q16_MERGED_ORDERS)
    for value, order in zip(character, table.class_orders):
        r = merged_index(order)
        value = expand(value)
        if merged[r] is None:
            merged[r] = value
        elif expand(merged[r] - value) != 0:
            return None
    if not all(v.is_Integer for v in merged):
        return None
    return MergedClassFunction(tuple(int(v) for v in merged))


@lru_cache(maxsize=1)
def integral_parts():
    """Character values as integer pairs (x, y) for x + y sqrt(2), shape (labels, classes, 2)."""
    table = char_table_q16()
    parts = [[[int(v) for v in sqrt2_parts(table.values[i, c])] for c in range(len(table.classes))]
             for i in range(len(table.labels))]
    array = np.array(parts, dtype=np.int64)
    array.flags.writeable = False
    return array


def merged_character(multiplicities):
    """
    The merged column of the sum of n_i V_i, or None when it is not merged-constant.

    Integer arithmetic on integral_parts(); agrees with merged_projection.
    """
    values = np.tensordot(np.asarray(multiplicities, dtype=np.int64), integral_parts(), axes=1)
    if values[:, 1].any():
        return None
    orders = char_table_q16().class_orders
    traces = []
    for order in Q16_MERGED_ORDERS:
        merged = {int(values[c, 0]) for c in range(len(orders)) if orders[c] == order}
        if len(merged) != 1:
            return None
        traces.append(merged.pop())
    return MergedClassFunction(tuple(traces))
