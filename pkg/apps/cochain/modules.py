"""
Coefficient modules for bar cochains.

A coefficient module for a table group G exposes `group`, `modulus`, `dim` and
`element_matrices()` (one dim x dim action matrix per element, acting on column
vectors). CyclicModule is the rank-one case used for extension and T-duality
data; repfun.MatrixRep supplies the higher-dimensional ones.

Extensions only need the group law of the module: `order`, `act`, `add`,
`subtract`, `action_table()`, `addition_table()` and `generator_elements()`.
AbelianModule provides these for any finite abelian group Z/d1 + ... + Z/dr
with G acting by automorphisms.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Tuple

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

from apps.core.exceptions import SizeCapExceededError
from apps.core.utils.helpers import prime_power_parts
from apps.exactlin.abelian import FiniteAbelianGroup

logger = logging.getLogger('apps.cochain')


@dataclass(frozen=True, eq=False)
class CyclicModule:
    """
    Z/m with G acting through a multiplier homomorphism G -> (Z/m)^x.

    Example:
        CyclicModule.on_group(cyclic(2), 4, [3])  # Z4 with the generator acting by -1
    """
    group: object = field(repr=False)
    order: int
    multipliers: Tuple[int, ...]

    def __post_init__(self):
        if self.order < 1:
            raise ValidationError(_('Module order must be positive.'))
        if len(self.multipliers) != self.group.order:
            raise ValidationError(_('One multiplier per group element is required.'))
        m = self.order
        values = np.array(self.multipliers, dtype=np.int64) % m
        if m > 1 and any(gcd(int(u), m) != 1 for u in values):
            raise ValidationError(_('Multipliers must be units mod %(m)s.'), params={'m': m})
        product = (values[:, None] * values[None, :]) % m
        if not np.array_equal(values[self.group.table], product):
            raise ValidationError(_('Multipliers do not define a homomorphism.'))
        object.__setattr__(self, 'multipliers', tuple(int(u) for u in values))

    @classmethod
    def on_group(cls, group, order, generator_multipliers=None):
        """
        Extend multipliers given on the group's generators to every element.

        Raises:
            ValidationError: If the assignment is not a homomorphism
        """
        generator_multipliers = list(generator_multipliers or [1] * len(group.generators))
        if len(generator_multipliers) != len(group.generators):
            raise ValidationError(_('One multiplier per generator is required.'))
        values = []
        for g in range(group.order):
            value = 1
            for position, _sign in group.word_for(g):
                value = value * generator_multipliers[position] % order
            values.append(value % order if order > 1 else 0)
        return cls(group, order, tuple(values))

    @classmethod
    def trivial(cls, group, order):
        return cls(group, order, tuple([1 % order] * group.order))

    @property
    def modulus(self):
        return self.order

    @property
    def dim(self):
        return 1

    @cached_property
    def multiplier_array(self):
        values = np.array(self.multipliers, dtype=np.int64)
        values.flags.writeable = False
        return values

    def act(self, x, a):
        return self.multipliers[x] * a % self.order

    def add(self, a, b):
        return (a + b) % self.order

    def subtract(self, a, b):
        return (a - b) % self.order

    def action_table(self):
        """(|G|, m) array: row x lists x.a for a = 0..m-1."""
        return self.multiplier_array[:, None] * np.arange(self.order)[None, :] % self.order

    def addition_table(self):
        elements = np.arange(self.order)
        return (elements[:, None] + elements[None, :]) % self.order

    def generator_elements(self):
        return [1] if self.order > 1 else []

    def element_matrices(self):
        return self.multiplier_array.reshape(-1, 1, 1)

    def is_trivial(self):
        return all(u == 1 % self.order for u in self.multipliers)

    def dual(self):
        """
        The Pontryagin dual Hom(Z/m, U(1)) ~ Z/m with (x.chi)(a) = chi(x^-1 . a).
        """
        inverse = [pow(u, -1, self.order) if self.order > 1 else 0 for u in self.multipliers]
        return CyclicModule(self.group, self.order, tuple(inverse))

    def reduce_to(self, modulus):
        """The quotient Z/modulus for a divisor of the order."""
        if self.order % modulus:
            raise ValidationError(_('%(d)s does not divide %(m)s.'),
                                  params={'d': modulus, 'm': self.order})
        return CyclicModule(self.group, modulus, tuple(u % modulus for u in self.multipliers))

    def prime_parts(self):
        """[(p, p-primary component)] in increasing p."""
        parts = sorted(prime_power_parts(self.order).items())
        return [(p, self.reduce_to(p ** e)) for p, e in parts]

    @property
    def abelian(self):
        return FiniteAbelianGroup.cyclic(self.order)

    def __eq__(self, other):
        return (isinstance(other, CyclicModule) and self.group == other.group
                and self.order == other.order and self.multipliers == other.multipliers)

    def __hash__(self):
        return hash((self.group, self.order, self.multipliers))

    def __str__(self):
        action = 'trivial' if self.is_trivial() else 'twisted'
        return f"Z{self.order} ({action} {self.group})"


@dataclass(frozen=True, eq=False)
class AbelianModule:
    """
    Z/d1 + ... + Z/dr with G acting by automorphisms.

    Elements are indexed in mixed radix (last coordinate fastest); actions[x]
    is the integer matrix of x on coordinate column vectors, where an entry in
    row i only matters mod d_i.

    Example:
        AbelianModule.on_group(cyclic(2), (2, 2), [[[0, 1], [1, 0]]])  # swap on Z2^2
    """
    group: object = field(repr=False)
    invariants: Tuple[int, ...]
    actions: np.ndarray = field(repr=False)

    def __post_init__(self):
        invariants = tuple(int(d) for d in self.invariants)
        if not invariants or any(d < 2 for d in invariants):
            raise ValidationError(_('Cyclic factors must have order at least 2.'))
        order = int(np.prod(invariants, dtype=np.int64))
        if order > settings.GROUPKIT_MAX_TABLE_ORDER:
            raise SizeCapExceededError(
                f"Module of order {order} above cap {settings.GROUPKIT_MAX_TABLE_ORDER}",
                estimate=order,
            )
        r, n = len(invariants), self.group.order
        actions = np.array(self.actions, dtype=np.int64).reshape(n, r, r)
        d = np.array(invariants, dtype=np.int64)
        actions = actions % d[None, :, None]
        # column j is the image of a generator of order d_j
        if np.any((actions * d[None, None, :]) % d[None, :, None]):
            raise ValidationError(_('Action matrices are not well defined on the factors.'))
        actions.flags.writeable = False
        object.__setattr__(self, 'invariants', invariants)
        object.__setattr__(self, 'actions', actions)
        table = self.action_table()
        if not np.array_equal(table[self.group.identity], np.arange(self.order)):
            raise ValidationError(_('The identity must act trivially.'))
        if any(len(np.unique(row)) != self.order for row in table):
            raise ValidationError(_('Every element must act by an automorphism.'))
        # x.(y.a) = (xy).a
        composed = np.take_along_axis(table[:, None, :], table[None, :, :], axis=2)
        if not np.array_equal(table[self.group.table], composed):
            raise ValidationError(_('The action is not a homomorphism.'))

    @classmethod
    def on_group(cls, group, invariants, generator_matrices=None):
        """
        Extend matrices given on the group's generators to every element.

        Raises:
            ValidationError: If the assignment is not an action
        """
        r = len(invariants)
        d = np.array(invariants, dtype=np.int64)
        if generator_matrices is None:
            generator_matrices = [np.eye(r, dtype=np.int64)] * len(group.generators)
        generator_matrices = [np.array(a, dtype=np.int64).reshape(r, r)
                              for a in generator_matrices]
        if len(generator_matrices) != len(group.generators):
            raise ValidationError(_('One matrix per generator is required.'))
        actions = []
        for g in range(group.order):
            matrix = np.eye(r, dtype=np.int64)
            for position, _sign in group.word_for(g):
                matrix = (matrix @ generator_matrices[position]) % d[:, None]
            actions.append(matrix)
        return cls(group, tuple(invariants), np.array(actions).reshape(group.order, r, r))

    @classmethod
    def trivial(cls, group, invariants):
        return cls.on_group(group, invariants)

    @classmethod
    def from_rep(cls, rep):
        """F_p^dim with the element images of a representation on a group table."""
        return cls(rep.group, (rep.modulus,) * rep.dim, rep.element_matrices())

    @property
    def order(self):
        return int(np.prod(self.invariants, dtype=np.int64))

    @property
    def abelian(self):
        return FiniteAbelianGroup.from_orders(self.invariants)

    @cached_property
    def coordinates(self):
        """(order, r) array of the coordinates of every element index."""
        grid = np.indices(self.invariants).reshape(len(self.invariants), -1).T
        grid = np.ascontiguousarray(grid, dtype=np.int64)
        grid.flags.writeable = False
        return grid

    @cached_property
    def strides(self):
        strides = np.ones(len(self.invariants), dtype=np.int64)
        for i in range(len(self.invariants) - 2, -1, -1):
            strides[i] = strides[i + 1] * self.invariants[i + 1]
        return strides

    def index(self, coordinates):
        """Element index of coordinate vectors (last axis), reduced mod the factors."""
        coordinates = np.asarray(coordinates, dtype=np.int64) % np.array(self.invariants)
        return coordinates @ self.strides

    def act(self, x, a):
        return int(self.index(self.actions[x] @ self.coordinates[a]))

    def add(self, a, b):
        return int(self.index(self.coordinates[a] + self.coordinates[b]))

    def subtract(self, a, b):
        return int(self.index(self.coordinates[a] - self.coordinates[b]))

    def action_table(self):
        """(|G|, order) array: row x lists x.a for every element index a."""
        images = np.einsum('xij,aj->xai', self.actions, self.coordinates)
        return self.index(images)

    def addition_table(self):
        coords = self.coordinates
        return self.index(coords[:, None, :] + coords[None, :, :])

    def generator_elements(self):
        return [int(s) for s in self.strides]

    def is_trivial(self):
        return np.array_equal(self.action_table(), np.tile(np.arange(self.order),
                                                           (self.group.order, 1)))

    def __eq__(self, other):
        return (isinstance(other, AbelianModule) and self.group == other.group
                and self.invariants == other.invariants
                and np.array_equal(self.actions, other.actions))

    def __hash__(self):
        return hash((self.group, self.invariants, self.actions.tobytes()))

    def __str__(self):
        orders = ' + '.join(f"Z{d}" for d in self.invariants) or '0'
        action = 'trivial' if self.is_trivial() else 'twisted'
        return f"{orders} ({action} {self.group})"
