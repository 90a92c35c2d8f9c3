"""
Finite groups as multiplication tables.

Elements are the integers 0..n-1 and table[a, b] is the index of a*b. Tables
carry derived data (identity, inverses, element orders, conjugacy classes) and
a generating set used by presentations and representations.
"""

import logging
import re
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Optional, Tuple

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

from apps.core.exceptions import SizeCapExceededError
from apps.core.utils.helpers import lcm_all
from apps.exactlin.matrices import PackedMatrix

logger = logging.getLogger('apps.groupkit')


@dataclass(frozen=True, eq=False)
class GroupTable:
    """
    A finite group given by its Cayley table.

    Build with GroupTable.from_table (which validates the group law) or with
    one of the constructors in this module.
    """
    table: np.ndarray = field(repr=False)
    identity: int
    inverses: np.ndarray = field(repr=False)
    generators: Tuple[int, ...]
    name: str = ''
    labels: Optional[tuple] = field(default=None, repr=False)

    @classmethod
    def from_table(cls, table, generators=None, name='', labels=None, check=True):
        """
        Validate a Cayley table and derive identity and inverses.

        Args:
            table: n x n integer array-like
            generators: Element indices generating the group (found greedily if None)
            name: Display name
            labels: Optional per-element labels (permutations, matrices, pairs)
            check: Run the group-law checks

        Raises:
            SizeCapExceededError: Above GROUPKIT_MAX_TABLE_ORDER
            ValidationError: If the table is not a group law
        """
        table = np.array(table, dtype=np.int64)
        n = table.shape[0]
        if n > settings.GROUPKIT_MAX_TABLE_ORDER:
            raise SizeCapExceededError(
                f"Group table of order {n} above cap {settings.GROUPKIT_MAX_TABLE_ORDER}",
                estimate=n * n,
            )
        if table.shape != (n, n) or n == 0:
            raise ValidationError(_('A group table must be a nonempty square array.'))
        if check:
            _check_closure(table)
        identity = _find_identity(table)
        inverses = np.argmax(table == identity, axis=1)
        if check:
            if not np.array_equal(table[np.arange(n), inverses], np.full(n, identity)):
                raise ValidationError(_('Some element has no inverse.'))
            _check_associativity(table)
        table.flags.writeable = False
        inverses.flags.writeable = False
        if generators is None:
            generators = _greedy_generators(table, identity)
        group = cls(table, int(identity), inverses, tuple(int(g) for g in generators), name,
                    tuple(labels) if labels is not None else None)
        if check and len(group.closure(group.generators)) != n:
            raise ValidationError(_('The given generators do not generate the group.'))
        return group

    # ===== basic data =====

    @property
    def order(self):
        return int(self.table.shape[0])

    def __len__(self):
        return self.order

    def __eq__(self, other):
        """Same Cayley table on the same generators; names and labels are ignored."""
        if self is other:
            return True
        return (isinstance(other, GroupTable) and self.generators == other.generators
                and np.array_equal(self.table, other.table))

    def __hash__(self):
        return self._table_hash

    @cached_property
    def _table_hash(self):
        return hash((self.generators, self.table.shape, self.table.tobytes()))

    def multiply(self, a, b):
        return int(self.table[a, b])

    def inverse(self, a):
        return int(self.inverses[a])

    def power(self, g, m):
        result = self.identity
        base = g if m >= 0 else self.inverse(g)
        for _ in range(abs(m)):
            result = self.multiply(result, base)
        return result

    def conjugate(self, g, h):
        """h g h^-1"""
        return self.multiply(self.multiply(h, g), self.inverse(h))

    @cached_property
    def element_orders(self):
        n = self.order
        everything = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        current = everything.copy()
        for k in range(1, n + 1):
            newly = (current == self.identity) & (orders == 0)
            orders[newly] = k
            if orders.all():
                break
            current = self.table[current, everything]
        orders.flags.writeable = False
        return orders

    @property
    def exponent(self):
        return lcm_all(int(o) for o in set(self.element_orders.tolist()))

    def order_multiset(self):
        """{element order: count}"""
        return dict(sorted(Counter(self.element_orders.tolist()).items()))

    # ===== conjugacy =====

    @cached_property
    def conjugacy_classes(self):
        """
        Classes ordered by element order, then class size, then minimal element.
        """
        n = self.order
        everything = np.arange(n)
        seen = np.zeros(n, dtype=bool)
        classes = []
        for g in range(n):
            if seen[g]:
                continue
            members = np.unique(self.table[self.table[everything, g], self.inverses])
            seen[members] = True
            classes.append(tuple(int(x) for x in members))
        classes.sort(key=lambda c: (int(self.element_orders[c[0]]), len(c), c[0]))
        return tuple(classes)

    @cached_property
    def class_of(self):
        lookup = np.zeros(self.order, dtype=np.int64)
        for index, members in enumerate(self.conjugacy_classes):
            lookup[list(members)] = index
        return lookup

    def class_sizes(self):
        return [len(c) for c in self.conjugacy_classes]

    def power_map(self, m):
        """Array g -> g^m."""
        n = self.order
        everything = np.arange(n)
        result = np.full(n, self.identity, dtype=np.int64)
        base = everything if m >= 0 else self.inverses
        for _ in range(abs(m)):
            result = self.table[result, base]
        return result

    def power_maps(self):
        """{m: class index map} for every m dividing the exponent."""
        maps = {}
        for m in range(1, self.exponent + 1):
            if self.exponent % m == 0:
                images = self.power_map(m)
                maps[m] = tuple(int(self.class_of[images[c[0]]]) for c in self.conjugacy_classes)
        return maps

    def fingerprint(self):
        """Isomorphism invariants: order, element-order multiset, sorted class sizes."""
        return (self.order, tuple(self.order_multiset().items()), tuple(sorted(self.class_sizes())))

    def is_abelian(self):
        return np.array_equal(self.table, self.table.T)

    # ===== subgroups =====

    def closure(self, generators):
        """Elements of the subgroup generated by the given elements, sorted."""
        reached = {self.identity}
        queue = deque([self.identity])
        while queue:
            g = queue.popleft()
            for s in generators:
                h = int(self.table[g, s])
                if h not in reached:
                    reached.add(h)
                    queue.append(h)
        return sorted(reached)

    def subgroup_generated(self, generators, name=''):
        """The subgroup generated by the given elements, as its own table."""
        elements = self.closure(generators)
        position = {g: i for i, g in enumerate(elements)}
        sub = self.table[np.ix_(elements, elements)]
        relabeled = np.vectorize(position.get)(sub)
        labels = [self.labels[g] for g in elements] if self.labels else elements
        return GroupTable.from_table(
            relabeled, [position[g] for g in generators], name=name, labels=labels, check=False
        )

    def is_normal(self, elements):
        members = set(elements)
        return all(self.conjugate(g, h) in members for g in members for h in range(self.order))

    def quotient_by_normal(self, elements, name=''):
        """
        Quotient by a normal subgroup; cosets are ordered by their minimal element.

        Raises:
            ValidationError: If the subgroup is not normal
        """
        members = sorted(set(int(x) for x in elements))
        if not self.is_normal(members):
            raise ValidationError(_('Subgroup is not normal.'))
        coset_of = np.full(self.order, -1, dtype=np.int64)
        representatives = []
        for g in range(self.order):
            if coset_of[g] >= 0:
                continue
            coset = self.table[g, members]
            coset_of[coset] = len(representatives)
            representatives.append(g)
        reps = np.array(representatives)
        table = coset_of[self.table[np.ix_(reps, reps)]]
        trivial_coset = int(coset_of[self.identity])
        generators = sorted({int(coset_of[g]) for g in self.generators} - {trivial_coset})
        return GroupTable.from_table(table, generators or None, name=name)

    # ===== words =====

    @cached_property
    def element_words(self):
        """
        Shortest positive words over the generators, one per element (BFS tree).

        Returns:
            List of (parent, generator position) pairs; parent -1 for the identity
        """
        tree = [None] * self.order
        tree[self.identity] = (-1, -1)
        queue = deque([self.identity])
        while queue:
            g = queue.popleft()
            for position, s in enumerate(self.generators):
                h = int(self.table[g, s])
                if tree[h] is None:
                    tree[h] = (g, position)
                    queue.append(h)
        return tree

    def word_for(self, g):
        """Word over the generator positions for element g."""
        letters = []
        tree = self.element_words
        while tree[g][0] >= 0:
            parent, position = tree[g]
            letters.append((position, 1))
            g = parent
        return tuple(reversed(letters))

    def __str__(self):
        return self.name or f"group of order {self.order}"


def _check_closure(table):
    n = table.shape[0]
    if table.min() < 0 or table.max() >= n:
        raise ValidationError(_('Table entries must be element indices.'))
    for row in table:
        if len(np.unique(row)) != n:
            raise ValidationError(_('Table rows must be permutations (Latin square).'))


def _find_identity(table):
    n = table.shape[0]
    everything = np.arange(n)
    for e in range(n):
        if np.array_equal(table[e], everything) and np.array_equal(table[:, e], everything):
            return e
    raise ValidationError(_('Table has no identity element.'))


def _check_associativity(table):
    n = table.shape[0]
    if n <= settings.GROUPKIT_EXHAUSTIVE_ORDER:
        left = table[table]
        right = table[np.arange(n)[:, None, None], table[None, :, :]]
        if not np.array_equal(left, right):
            a, b, c = (int(x[0]) for x in np.nonzero(left != right))
            raise ValidationError(_('Not associative at (%(a)s, %(b)s, %(c)s).'),
                                  params={'a': a, 'b': b, 'c': c})
        return
    rng = np.random.default_rng(settings.WORKBENCH_RANDOM_SEED)
    samples = rng.integers(0, n, size=(settings.GROUPKIT_ASSOCIATIVITY_SAMPLES, 3))
    a, b, c = samples.T
    bad = np.flatnonzero(table[table[a, b], c] != table[a, table[b, c]])
    if bad.size:
        i = bad[0]
        raise ValidationError(_('Not associative at (%(a)s, %(b)s, %(c)s).'),
                              params={'a': int(a[i]), 'b': int(b[i]), 'c': int(c[i])})


def _greedy_generators(table, identity):
    n = table.shape[0]
    generators = []
    reached = {identity}
    for g in range(n):
        if g in reached:
            continue
        generators.append(g)
        queue = deque(reached)
        while queue:
            x = queue.popleft()
            for s in generators:
                y = int(table[x, s])
                if y not in reached:
                    reached.add(y)
                    queue.append(y)
    return generators


# ===== constructors =====

def cyclic(n):
    everything = np.arange(n)
    table = (everything[:, None] + everything[None, :]) % n
    return GroupTable.from_table(table, [1] if n > 1 else [], name=f"Z{n}")


def dihedral(order):
    """Dihedral group of the given order; element r^a s^b has index b*n + a."""
    n = order // 2
    table = np.zeros((order, order), dtype=np.int64)
    for (a, b), (c, d) in product(product(range(n), range(2)), repeat=2):
        exponent = (a + (c if b == 0 else -c)) % n
        table[b * n + a, d * n + c] = ((b + d) % 2) * n + exponent
    return GroupTable.from_table(table, [1, n] if n > 1 else [1], name=f"D{order}")


def dicyclic(order):
    """
    Dicyclic group of order 4n: x^a y^b (index b*2n + a) with y^2 = x^n, y x y^-1 = x^-1.

    dicyclic(16) is the binary dihedral group of order 16.
    """
    n = order // 4
    m = 2 * n
    table = np.zeros((order, order), dtype=np.int64)
    for (a, b), (c, d) in product(product(range(m), range(2)), repeat=2):
        exponent = a + (c if b == 0 else -c)
        if b + d == 2:
            exponent += n
        table[b * m + a, d * m + c] = ((b + d) % 2) * m + exponent % m
    return GroupTable.from_table(table, [1, m], name=f"Dic{order}")


def elementary_abelian(p, d):
    """(Z/p)^d with element index sum x_i p^i."""
    n = p ** d
    digits = np.array([[(x // p ** i) % p for i in range(d)] for x in range(n)], dtype=np.int64)
    weights = p ** np.arange(d, dtype=np.int64)
    sums = (digits[:, None, :] + digits[None, :, :]) % p
    table = sums @ weights
    return GroupTable.from_table(table, [p ** i for i in range(d)], name=f"{p}^{d}")


def direct_product(left, right, name=''):
    """Index a*|B| + b for the pair (a, b)."""
    nb = right.order
    table = (left.table[:, None, :, None] * nb + right.table[None, :, None, :])
    table = table.reshape(left.order * nb, left.order * nb)
    generators = [g * nb + right.identity for g in left.generators]
    generators += [left.identity * nb + h for h in right.generators]
    labels = [(a, b) for a in range(left.order) for b in range(nb)]
    return GroupTable.from_table(table, generators, name=name or f"{left} x {right}",
                                 labels=labels)


def from_elements(generators, multiply, identity, key=None, name=''):
    """
    Close a generating set under multiplication and tabulate the result.

    Args:
        generators: Generating elements (hashable through key)
        multiply: Binary operation on elements
        identity: Identity element
        key: Function mapping an element to a hashable key (default: the element)

    Raises:
        SizeCapExceededError: If the closure exceeds GROUPKIT_MAX_TABLE_ORDER
    """
    key = key or (lambda x: x)
    cap = settings.GROUPKIT_MAX_TABLE_ORDER
    elements = [identity]
    index = {key(identity): 0}
    queue = deque([identity])
    while queue:
        g = queue.popleft()
        for s in generators:
            h = multiply(g, s)
            k = key(h)
            if k not in index:
                if len(elements) >= cap:
                    logger.warning(f"Closure refused: more than {cap} elements")
                    raise SizeCapExceededError(f"Closure exceeds {cap} elements",
                                               estimate=f">{cap}")
                index[k] = len(elements)
                elements.append(h)
                queue.append(h)
    n = len(elements)
    table = np.zeros((n, n), dtype=np.int64)
    for i, g in enumerate(elements):
        for j, h in enumerate(elements):
            table[i, j] = index[key(multiply(g, h))]
    generator_indices = [index[key(s)] for s in generators]
    return GroupTable.from_table(table, generator_indices, name=name, labels=elements,
                                 check=n <= settings.GROUPKIT_EXHAUSTIVE_ORDER)


def compose(sigma, tau):
    """(sigma tau)(i) = sigma(tau(i))"""
    return tuple(sigma[i] for i in tau)


def from_permutations(generators, name=''):
    generators = [tuple(g) for g in generators]
    degree = len(generators[0])
    return from_elements(generators, compose, tuple(range(degree)), name=name)


def from_matrices(generators, name=''):
    """Closure of invertible PackedMatrix generators; labels are the matrices."""
    identity = PackedMatrix.identity(generators[0].rows, generators[0].modulus)
    return from_elements(generators, lambda a, b: a @ b, identity,
                         key=lambda m: m.words.tobytes(), name=name)


def from_generators(generators, name=''):
    """Closure of permutation tuples or PackedMatrix generators, whichever is given."""
    generators = list(generators)
    if generators and isinstance(generators[0], PackedMatrix):
        return from_matrices(generators, name=name)
    return from_permutations(generators, name=name)


def symmetric(n):
    generators = [tuple(range(n))]
    if n > 1:
        cycle = tuple(list(range(1, n)) + [0])
        swap = tuple([1, 0] + list(range(2, n)))
        generators = [swap, cycle]
    return from_permutations(generators, name=f"S{n}")


def alternating(n):
    """Generated by the 3-cycles (0 1 k)."""
    if n < 3:
        return from_permutations([tuple(range(n))], name=f"A{n}")
    generators = []
    for k in range(2, n):
        perm = list(range(n))
        perm[0], perm[1], perm[k] = 1, k, 0
        generators.append(tuple(perm))
    return from_permutations(generators, name=f"A{n}")




GROUP_SPEC_PATTERN = re.compile(r'^(?:(?P<family>Z|D|Dic|Q|S|A)(?P<n>\d+)|(?P<p>\d+)\^(?P<d>\d+))$')

FAMILIES = {
    'Z': cyclic,
    'D': dihedral,
    'Dic': dicyclic,
    'Q': dicyclic,
    'S': symmetric,
    'A': alternating,
}


def group_from_spec(spec):
    """
    Build a table from a short name; factors joined by 'x' give a direct product.

    Example:
        group_from_spec('Z2xS3'), group_from_spec('2^2'), group_from_spec('Q16')

    Raises:
        ValidationError: If a factor is not understood
    """
    group = None
    for factor in spec.replace(' ', '').split('x'):
        match = GROUP_SPEC_PATTERN.match(factor)
        if not match:
            raise ValidationError(_('Unknown group %(g)s.'), params={'g': factor})
        if match.group('family'):
            piece = FAMILIES[match.group('family')](int(match.group('n')))
        else:
            piece = elementary_abelian(int(match.group('p')), int(match.group('d')))
        group = piece if group is None else direct_product(group, piece)
    return GroupTable.from_table(group.table, group.generators, name=spec, labels=group.labels,
                                 check=False)
