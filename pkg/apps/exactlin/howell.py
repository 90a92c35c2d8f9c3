"""
Howell canonical forms over Z/p^k.

A Howell basis is an echelon set of rows whose leading entries are powers of p,
closed under the annihilator multiples p^(k-v) * row. Membership in the row
module is then decided greedily, and reducing entries above each pivot makes
the form canonical: two matrices have the same row module iff their forms agree.
"""

import logging

import numpy as np

from apps.core.utils.helpers import Budget
from apps.core.utils.validators import validate_prime_power
from .abelian import FiniteAbelianGroup
from .matrices import PackedMatrix

logger = logging.getLogger('apps.exactlin')


def _valuation(value, p):
    v = 0
    while value % p == 0:
        value //= p
        v += 1
    return v


class StreamingHowell:
    """
    Incremental Howell basis for rows arriving one at a time.

    Rows are int64 vectors of length cols over Z/modulus. The basis keeps one row
    per pivot column with leading entry p^v.

    Example:
        howell = StreamingHowell(cols=3, modulus=8)
        howell.add_rows([[2, 0, 0], [0, 4, 1]])
        howell.log_order() -> 2 + 3
    """

    def __init__(self, cols, modulus, prime=None, power=None):
        self.cols = cols
        self.modulus = modulus
        if prime is None or power is None:
            prime, power = validate_prime_power(modulus)
        self.prime = prime
        self.power = power
        self.pivots = {}
        self.rows_seen = 0

    def _normalize(self, row):
        """Scale row so its leading entry is p^v; returns (column, v, row) or None."""
        nonzero = np.flatnonzero(row)
        if nonzero.size == 0:
            return None
        col = int(nonzero[0])
        lead = int(row[col])
        v = _valuation(lead, self.prime)
        unit = lead // self.prime ** v
        if unit != 1:
            row = (row * pow(unit, -1, self.modulus)) % self.modulus
        return col, v, row

    def add_row(self, row):
        """
        Insert a row; returns True if the row module grew.
        """
        q, p, k = self.modulus, self.prime, self.power
        grew = False
        pending = [np.asarray(row, dtype=np.int64) % q]
        while pending:
            current = pending.pop()
            while True:
                normalized = self._normalize(current)
                if normalized is None:
                    break
                col, v, current = normalized
                existing = self.pivots.get(col)
                if existing is None:
                    self.pivots[col] = (v, current)
                    grew = True
                    if v > 0:
                        pending.append((current * p ** (k - v)) % q)
                    break
                pv, pivot_row = existing
                if v >= pv:
                    factor = int(current[col]) // p ** pv
                    current = (current - factor * pivot_row) % q
                    continue
                self.pivots[col] = (v, current)
                grew = True
                pending.append((current * p ** (k - v)) % q)
                current = pivot_row
        return grew

    def add_rows(self, rows, budget=None):
        budget = budget or Budget(None)
        for row in rows:
            self.add_row(row)
            self.rows_seen += 1
            if self.rows_seen % 1024 == 0:
                logger.debug(f"Howell stream: {self.rows_seen} rows, {len(self.pivots)} pivots")
                budget.check(f"after {self.rows_seen} streamed rows")
        return self

    def reduce(self, vector):
        """Greedy reduction of vector; returns the residual (zero iff contained)."""
        q, p = self.modulus, self.prime
        current = np.asarray(vector, dtype=np.int64) % q
        while True:
            nonzero = np.flatnonzero(current)
            if nonzero.size == 0:
                return current
            col = int(nonzero[0])
            existing = self.pivots.get(col)
            if existing is None:
                return current
            pv, pivot_row = existing
            value = int(current[col])
            if value % p ** pv:
                return current
            current = (current - (value // p ** pv) * pivot_row) % q

    def contains(self, vector):
        return not self.reduce(vector).any()

    def log_order(self):
        """log_p of the number of elements of the row module."""
        return sum(self.power - v for v, _ in self.pivots.values())

    def canonical_rows(self):
        """Basis rows in pivot order with entries above each pivot reduced."""
        q, p = self.modulus, self.prime
        order = sorted(self.pivots)
        if not order:
            return []
        block = np.vstack([self.pivots[col][1] for col in order])
        for index, col in enumerate(order[1:], start=1):
            step = p ** self.pivots[col][0]
            factors = block[:index, col] // step
            if factors.any():
                block[:index] = (block[:index] - np.outer(factors, block[index])) % q
        return list(block)

    def to_matrix(self):
        rows = self.canonical_rows()
        if not rows:
            return PackedMatrix.zeros(0, self.cols, self.modulus)
        return PackedMatrix.from_array(np.vstack(rows), self.modulus)

    def multiples_profile(self):
        """
        log_p |p^j R| for j = 0..k, where R is the row module.

        Computed from the Howell forms of p^j times the basis.
        """
        profile = [self.log_order()]
        basis = self.canonical_rows()
        for j in range(1, self.power + 1):
            scaled = StreamingHowell(self.cols, self.modulus, self.prime, self.power)
            scaled.add_rows(((row * self.prime ** j) % self.modulus for row in basis))
            profile.append(scaled.log_order())
        return profile


def howell_form(matrix):
    """
    Canonical Howell form of a matrix over Z/p^k.

    Args:
        matrix: PackedMatrix over a prime-power modulus

    Returns:
        PackedMatrix with one row per pivot column (zero rows dropped); the row
        module equals that of the input, and re-applying is the identity

    Example:
        howell_form(diag(1, 2, 4) over Z/8) -> rows (1,0,0), (0,2,0), (0,0,4)
    """
    stream = StreamingHowell(matrix.cols, matrix.modulus, matrix.prime, matrix.power)
    stream.add_rows(matrix.to_array())
    return stream.to_matrix()


def _stream_of(matrix):
    stream = StreamingHowell(matrix.cols, matrix.modulus, matrix.prime, matrix.power)
    stream.add_rows(matrix.to_array())
    return stream


def span_contains(form, vector):
    """Whether vector lies in the row module of a Howell form (or any matrix)."""
    return _stream_of(form).contains(vector)


def _invariants_from_profile(profile, p, k):
    """
    Invariants of a p-group Q from log_p |p^j Q|, j = 0..k.
    """
    above = [profile[j] - profile[j + 1] for j in range(k)]
    orders = []
    for e in range(1, k + 1):
        count = above[e - 1] - (above[e] if e < k else 0)
        orders.extend([p ** e] * count)
    return FiniteAbelianGroup.from_orders(orders)


def quotient_invariants(numerator, denominator):
    """
    Invariants of span(numerator + denominator) / span(denominator) over Z/p^k.

    Uses |p^j Z + B| for j = 0..k; callers normally pass B inside Z.

    Returns:
        FiniteAbelianGroup (a p-group)
    """
    p, k, q = numerator.prime, numerator.power, numerator.modulus
    base = _stream_of(denominator)
    z_rows = numerator.to_array()
    profile = []
    for j in range(k + 1):
        combined = StreamingHowell(numerator.cols, q, p, k)
        combined.pivots = {c: (v, row.copy()) for c, (v, row) in base.pivots.items()}
        combined.add_rows((z_rows * p ** j) % q)
        profile.append(combined.log_order())
    return _invariants_from_profile(profile, p, k)


def row_module_invariants(stream):
    """Invariants of the row module R of a Howell stream, from |p^j R|."""
    return _invariants_from_profile(stream.multiples_profile(), stream.prime, stream.power)


def cokernel_from_stream(stream):
    """
    Invariants of (Z/p^k)^cols / R for the row module R of a stream.

    Over Z/p^k, R = sum Z/p^(k - a_i) exactly when the cokernel is sum Z/p^(a_i),
    so the cokernel is read off the invariants of R; columns not covered by R
    contribute Z/p^k summands.
    """
    p, k = stream.prime, stream.power
    exponents = [_valuation(order, p) for order in row_module_invariants(stream).factors]
    orders = [p ** (k - f) for f in exponents if f < k]
    orders.extend([p ** k] * (stream.cols - len(exponents)))
    return FiniteAbelianGroup.from_orders(orders)


def cokernel_prime_power(matrix):
    """Invariants of (Z/p^k)^cols / rowspan(matrix), free Z/p^k summands included."""
    return cokernel_from_stream(_stream_of(matrix))


def kernel_over_prime_power(matrix):
    """
    Generating set of {x : M x = 0} over Z/p^k.

    Howell form of [M^T | I]: rows whose left block vanishes carry kernel vectors
    in their right block.

    Returns:
        PackedMatrix whose rows generate the kernel
    """
    q, rows, cols = matrix.modulus, matrix.rows, matrix.cols
    augmented = np.hstack([matrix.to_array().T, np.eye(cols, dtype=np.int64)])
    stream = StreamingHowell(rows + cols, q, matrix.prime, matrix.power)
    stream.add_rows(augmented)
    kernel = [row[rows:] for col, (_, row) in sorted(stream.pivots.items()) if col >= rows]
    if not kernel:
        return PackedMatrix.zeros(0, cols, q)
    return PackedMatrix.from_array(np.vstack(kernel), q)


def solve_left(matrix, target):
    """
    Solve x M = target over Z/p^k.

    Args:
        matrix: PackedMatrix M (r x c)
        target: length-c vector

    Returns:
        (solution, residual): solution is a length-r vector or None; residual
        is the nonzero certificate left after reducing target when unsolvable
    """
    q, rows, cols = matrix.modulus, matrix.rows, matrix.cols
    augmented = np.hstack([matrix.to_array(), np.eye(rows, dtype=np.int64)])
    stream = StreamingHowell(cols + rows, q, matrix.prime, matrix.power)
    stream.add_rows(augmented)
    start = np.concatenate([np.asarray(target, dtype=np.int64) % q,
                            np.zeros(rows, dtype=np.int64)])
    reduced = stream.reduce(start)
    if reduced[:cols].any():
        return None, reduced[:cols]
    return (-reduced[cols:]) % q, None


class ReducedHowell(StreamingHowell):
    """
    Streaming Howell basis kept reduced above every pivot.

    Entries above a unit pivot stay zero, so sparse incoming rows reduce in a
    few steps however many pivots exist. Rows live in one preallocated block;
    `pivots` holds views into it.
    """

    def __init__(self, cols, modulus, prime=None, power=None):
        super().__init__(cols, modulus, prime, power)
        self._block = np.zeros((cols, cols), dtype=np.int64)
        self._slots = {}
        self._threshold = np.full(cols, modulus, dtype=np.int64)

    def _reduce_tail(self, col, row):
        """Reduce entries of row at pivot columns after col."""
        q, p = self.modulus, self.prime
        start = col + 1
        while True:
            candidates = np.flatnonzero(row[start:] >= self._threshold[start:])
            if candidates.size == 0:
                return row
            c = start + int(candidates[0])
            v, pivot_row = self.pivots[c]
            row = (row - (int(row[c]) // p ** v) * pivot_row) % q
            start = c + 1

    def _store(self, col, v, row):
        slot = self._slots.setdefault(col, len(self._slots))
        self._block[slot] = row
        self.pivots[col] = (v, self._block[slot])
        self._threshold[col] = self.prime ** v
        used = len(self._slots)
        factors = self._block[:used, col] // self.prime ** v
        factors[slot] = 0
        hits = np.flatnonzero(factors)
        if hits.size:
            self._block[hits] = (
                self._block[hits] - np.outer(factors[hits], self._block[slot])
            ) % self.modulus

    def add_row(self, row):
        q, p, k = self.modulus, self.prime, self.power
        grew = False
        pending = [np.asarray(row, dtype=np.int64) % q]
        while pending:
            normalized = self._normalize(self.reduce(pending.pop()))
            if normalized is None:
                continue
            col, v, current = normalized
            existing = self.pivots.get(col)
            if existing is not None:
                # reduce() stopped on a pivot of larger valuation: swap it out
                pending.append(existing[1].copy())
            current = self._reduce_tail(col, current)
            self._store(col, v, current)
            grew = True
            if v > 0:
                pending.append((current * p ** (k - v)) % q)
        return grew
