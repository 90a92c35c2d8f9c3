"""
Normalized cochains with values in cyclic modules, cup products and primitives.
"""

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np
from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _
from sympy.ntheory.modular import crt

from apps.core.exceptions import BilinearityError, ParseError
from apps.core.utils.validators import validate_prime_power
from apps.exactlin.howell import kernel_over_prime_power, solve_left
from .bar import (
    all_tuples,
    cochain_space_matrix,
    non_identity,
    positions,
    tuple_count,
    tuple_index,
)
from .modules import CyclicModule

logger = logging.getLogger('apps.cochain')

LINE_PATTERN = re.compile(r'^\s*(?P<tuple>[\d,\s]*?)\s*->\s*(?P<value>-?\d+)\s*$')


@dataclass(frozen=True, eq=False)
class Cochain:
    """
    A normalized level-k cochain G^k -> Z/m.

    values[i] is the value on the i-th tuple of non-identity elements (see
    bar.all_tuples); tuples containing the identity evaluate to 0.
    """
    group: object = field(repr=False)
    module: CyclicModule = field(repr=False)
    level: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.module.group != self.group:
            raise ValidationError(_('Cochain module belongs to another group.'))
        values = np.asarray(self.values, dtype=np.int64).reshape(-1) % self.module.order
        if values.shape[0] != tuple_count(self.group, self.level):
            raise ValidationError(
                _('Level %(k)s cochain needs %(n)s values, got %(got)s.'),
                params={'k': self.level, 'n': tuple_count(self.group, self.level),
                        'got': values.shape[0]},
            )
        values.flags.writeable = False
        object.__setattr__(self, 'values', values)

    @classmethod
    def zero(cls, group, module, level):
        return cls(group, module, level, np.zeros(tuple_count(group, level), dtype=np.int64))

    @classmethod
    def from_function(cls, group, module, level, function):
        """Tabulate function(*tuple) on the non-identity tuples."""
        values = [function(*t) for t in all_tuples(group, level).tolist()]
        return cls(group, module, level, np.array(values, dtype=np.int64))

    @property
    def modulus(self):
        return self.module.order

    def __call__(self, *elements):
        if len(elements) != self.level:
            raise ValidationError(_('Expected %(k)s arguments.'), params={'k': self.level})
        if any(g == self.group.identity for g in elements):
            return 0
        index = tuple_index(self.group, [np.array([g]) for g in elements], 1)
        return int(self.values[index[0]])

    def full(self):
        """Values on all of G^k as an array of shape (n,) * k."""
        n, k = self.group.order, self.level
        if k == 0:
            return np.array(self.values[0])
        table = np.zeros((n,) * k, dtype=np.int64)
        others = non_identity(self.group)
        table[np.ix_(*[others] * k)] = self.values.reshape((n - 1,) * k)
        return table

    def coboundary(self):
        """The bar differential, with the module action on the first slot."""
        group, k, m = self.group, self.level, self.modulus
        full = self.full()
        grid = list(np.indices((group.order,) * (k + 1)))
        result = self.module.multiplier_array[grid[0]] * full[tuple(grid[1:])]
        for j in range(1, k + 1):
            merged = grid[:j - 1] + [group.table[grid[j - 1], grid[j]]] + grid[j + 1:]
            result = result + (-1) ** j * full[tuple(merged)]
        result = result + (-1) ** (k + 1) * full[tuple(grid[:k])]
        others = non_identity(group)
        values = result[np.ix_(*[others] * (k + 1))].reshape(-1)
        return Cochain(group, self.module, k + 1, values % m)

    def is_zero(self):
        return not self.values.any()

    def is_cocycle(self):
        return self.coboundary().is_zero()

    def first_nonzero(self):
        """The first tuple with a nonzero value, or None."""
        hits = np.flatnonzero(self.values)
        if hits.size == 0:
            return None
        return tuple(all_tuples(self.group, self.level)[hits[0]].tolist())

    def _combine(self, other, values):
        same = other.group == self.group and other.module == self.module
        if not same or other.level != self.level:
            raise ValidationError(_('Cochains live in different spaces.'))
        return Cochain(self.group, self.module, self.level, values)

    def __add__(self, other):
        return self._combine(other, self.values + other.values)

    def __sub__(self, other):
        return self._combine(other, self.values - other.values)

    def __neg__(self):
        return Cochain(self.group, self.module, self.level, -self.values)

    def scale(self, factor):
        return Cochain(self.group, self.module, self.level, self.values * factor)

    def with_module(self, module, factor=1):
        """The same values (times factor) read in another module on the same group."""
        return Cochain(self.group, module, self.level, self.values * factor)

    def __eq__(self, other):
        return (isinstance(other, Cochain) and other.group == self.group
                and other.module == self.module and other.level == self.level
                and np.array_equal(other.values, self.values))

    def __hash__(self):
        return hash((self.group, self.level, self.values.tobytes()))

    def __str__(self):
        return f"C^{self.level}({self.group}, Z{self.modulus})"


def coboundary(cochain):
    return cochain.coboundary()


# ===== cup products =====

def check_pairing(pairing, left, right, modulus):
    """
    Check that a table A x B -> Z/modulus is bilinear and G-invariant.

    Raises:
        BilinearityError: Naming the first failing law
    """
    table = np.asarray(pairing, dtype=np.int64) % modulus
    a, b = left.order, right.order
    if table.shape != (a, b):
        raise BilinearityError(f"Pairing table must be {a}x{b}, got {table.shape}")
    sums_a = (np.arange(a)[:, None] + np.arange(a)[None, :]) % a
    if not np.array_equal(table[sums_a], (table[:, None, :] + table[None, :, :]) % modulus):
        raise BilinearityError('Pairing is not additive in the left argument')
    sums_b = (np.arange(b)[:, None] + np.arange(b)[None, :]) % b
    if not np.array_equal(table[:, sums_b], (table[:, :, None] + table[:, None, :]) % modulus):
        raise BilinearityError('Pairing is not additive in the right argument')
    for x in range(left.group.order):
        moved_a = (left.multipliers[x] * np.arange(a)) % a
        moved_b = (right.multipliers[x] * np.arange(b)) % b
        if not np.array_equal(table[np.ix_(moved_a, moved_b)], table):
            raise BilinearityError(f"Pairing is not invariant under element {x}")
    return table


def evaluation_pairing(dual, module, modulus):
    """<chi, a> = chi * a * (modulus / |n|): the pairing of n^ with n into Z/modulus."""
    n = module.order
    if dual.order != n or modulus % n:
        raise ValidationError(_('Pairing needs |n^| = |n| dividing the target modulus.'))
    scale = modulus // n
    return (np.arange(n)[:, None] * np.arange(n)[None, :] * scale) % modulus


def cup_pair(alpha, kappa, pairing, modulus):
    """
    Alexander-Whitney cup product followed by a pairing into Z/modulus.

    (alpha u kappa)(g1..g_i+j) = <alpha(g1..g_i), (g1...g_i).kappa(g_i+1..g_i+j)>

    Args:
        alpha: Level-i cochain with values in A
        kappa: Level-j cochain with values in B
        pairing: |A| x |B| table into Z/modulus
        modulus: Order of the trivial target module

    Returns:
        Level i+j cochain with trivial Z/modulus coefficients

    Raises:
        BilinearityError: If the pairing is not bilinear and invariant
    """
    group = alpha.group
    if kappa.group != group:
        raise ValidationError(_('Cup product needs cochains on the same group.'))
    table = check_pairing(pairing, alpha.module, kappa.module, modulus)
    i, j = alpha.level, kappa.level
    tuples = all_tuples(group, i + j)
    count = tuples.shape[0]
    columns = [tuples[:, c] for c in range(i + j)]
    left = alpha.values[tuple_index(group, columns[:i], count)]
    right = kappa.values[tuple_index(group, columns[i:], count)]
    prefix = np.full(count, group.identity, dtype=np.int64)
    for column in columns[:i]:
        prefix = group.table[prefix, column]
    moved = (kappa.module.multiplier_array[prefix] * right) % kappa.modulus
    target = CyclicModule.trivial(group, modulus)
    return Cochain(group, target, i + j, table[left, moved])


# ===== primitives =====

@dataclass(frozen=True)
class PrimitiveResult:
    """
    Outcome of solve_primitive: beta with d beta = c, or a certificate.

    The certificate maps each prime p where the system fails to the nonzero
    residual of c after reduction against the coboundary image mod p^e.
    """
    beta: Optional[Cochain]
    certificate: dict = field(default_factory=dict)

    @property
    def solved(self):
        return self.beta is not None


def solve_primitive(cochain):
    """
    Find beta with d beta = c, prime by prime over the coefficient module.

    Returns:
        PrimitiveResult

    Raises:
        ValidationError: For level-0 input
    """
    group, module, k = cochain.group, cochain.module, cochain.level
    if k == 0:
        raise ValidationError(_('A level-0 cochain has no primitive.'))
    parts, certificate = [], {}
    for p, part in module.prime_parts():
        matrix = cochain_space_matrix(group, part, k - 1)
        solution, residual = solve_left(matrix, cochain.values % part.order)
        if solution is None:
            certificate[p] = residual
        else:
            parts.append((part.order, solution))
    if certificate:
        logger.info(f"No primitive for {cochain}: obstruction at primes {sorted(certificate)}")
        return PrimitiveResult(None, certificate)
    size = tuple_count(group, k - 1)
    if not parts:
        values = np.zeros(size, dtype=np.int64)
    else:
        moduli = [m for m, _solution in parts]
        values = np.array([
            int(crt(moduli, [int(s[i]) for _m, s in parts])[0]) for i in range(size)
        ], dtype=np.int64)
    beta = Cochain(group, module, k - 1, values)
    logger.debug(f"Primitive found for {cochain}")
    return PrimitiveResult(beta)


# ===== random cochains =====

def random_cochain(group, module, level, rng):
    values = rng.integers(0, module.order, size=tuple_count(group, level))
    return Cochain(group, module, level, values)


def random_cocycle(group, module, level, rng):
    """
    A uniformly random cocycle over a prime-power coefficient module.

    Random combination of generators of ker d_k, computed over Z/p^e.
    """
    validate_prime_power(module.order)
    generators = kernel_over_prime_power(cochain_space_matrix(group, module, level).T).to_array()
    if generators.shape[0] == 0:
        return Cochain.zero(group, module, level)
    coefficients = rng.integers(0, module.order, size=generators.shape[0])
    return Cochain(group, module, level, (coefficients @ generators) % module.order)


def random_coboundary(group, module, level, rng):
    if level == 0:
        return Cochain.zero(group, module, 0)
    return random_cochain(group, module, level - 1, rng).coboundary()


# ===== files =====

def dump_cochain(cochain):
    """One line per non-identity tuple: `g1,g2 -> value`."""
    lines = [f"{','.join(str(g) for g in t)} -> {int(v)}"
             for t, v in zip(all_tuples(cochain.group, cochain.level).tolist(), cochain.values)]
    return '\n'.join(lines) + '\n'


def parse_cochain_lines(numbered_lines, group, module, level, source=None):
    """
    Parse (line number, text) pairs of `g1,...,gk -> value` lines.

    Tuples not listed are 0; tuples containing the identity must carry 0.

    Raises:
        ParseError: On malformed lines, wrong arity, unknown elements or repeats
    """
    values = np.zeros(tuple_count(group, level), dtype=np.int64)
    lookup = positions(group)
    seen = set()
    for number, text in numbered_lines:
        match = LINE_PATTERN.match(text)
        if not match:
            raise ParseError(f"Expected 'g1,...,gk -> value', got {text.strip()!r}", number, source)
        raw = match.group('tuple').strip()
        elements = tuple(int(x) for x in raw.split(',')) if raw else ()
        if len(elements) != level:
            raise ParseError(f"Expected {level} elements, got {len(elements)}", number, source)
        if any(not 0 <= g < group.order for g in elements):
            raise ParseError(f"Element out of range in {elements}", number, source)
        if elements in seen:
            raise ParseError(f"Repeated tuple {elements}", number, source)
        seen.add(elements)
        value = int(match.group('value')) % module.order
        if group.identity in elements:
            if value:
                raise ParseError('Normalized cochains vanish on the identity', number, source)
            continue
        index = 0
        for g in elements:
            index = index * (group.order - 1) + int(lookup[g])
        values[index] = value
    return Cochain(group, module, level, values)


def parse_cochain(text, group, module, level, source=None):
    stripped = (line.split('#', 1)[0] for line in text.splitlines())
    numbered = [(i, line) for i, line in enumerate(stripped, start=1) if line.strip()]
    return parse_cochain_lines(numbered, group, module, level, source)


def load_cochain(path, group, module, level):
    path = Path(path)
    return parse_cochain(path.read_text(), group, module, level, source=path.name)


def save_cochain(cochain, path):
    Path(path).write_text(dump_cochain(cochain))
