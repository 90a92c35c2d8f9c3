"""
Bit-packed exact matrices over F_p and Z/p^k.

Entries are stored as fixed-width fields inside 64-bit words, least significant
field first: F_2 rows hold 64 entries per word, Z/2^k rows hold k-bit fields and
odd moduli use ceil(log2(p^k)) bits per entry. Arithmetic unpacks to int64.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from apps.core.constants import WORD_BITS
from apps.core.exceptions import SingularMatrixError
from apps.core.utils.validators import validate_prime_power

logger = logging.getLogger('apps.exactlin')

SAFE_PRODUCT_BOUND = 1 << 62


def entry_bits(modulus):
    """Width of one packed entry for the given modulus."""
    return max(1, (modulus - 1).bit_length())


def entries_per_word(modulus):
    return WORD_BITS // entry_bits(modulus)


def words_per_row(cols, modulus):
    per_word = entries_per_word(modulus)
    return -(-cols // per_word)


def pack_rows(array, modulus):
    """
    Pack a reduced int array of shape (rows, cols) into uint64 words.

    Args:
        array: Integer ndarray with entries in [0, modulus)
        modulus: Prime power

    Returns:
        uint64 ndarray of shape (rows, words_per_row(cols, modulus))
    """
    rows, cols = array.shape
    n_words = words_per_row(cols, modulus)
    if cols == 0:
        return np.zeros((rows, 0), dtype=np.uint64)
    if modulus == 2:
        packed = np.packbits(array.astype(np.uint8), axis=1, bitorder='little')
        padded = np.zeros((rows, n_words * 8), dtype=np.uint8)
        padded[:, :packed.shape[1]] = packed
        return padded.view('<u8').astype(np.uint64)
    bits = entry_bits(modulus)
    per_word = entries_per_word(modulus)
    padded = np.zeros((rows, n_words * per_word), dtype=np.uint64)
    padded[:, :cols] = array.astype(np.uint64)
    shifts = np.arange(per_word, dtype=np.uint64) * np.uint64(bits)
    fields = padded.reshape(rows, n_words, per_word) << shifts
    return fields.sum(axis=2, dtype=np.uint64)


def unpack_rows(words, cols, modulus):
    """Inverse of pack_rows; returns an int64 array of shape (rows, cols)."""
    rows, n_words = words.shape
    if cols == 0:
        return np.zeros((rows, 0), dtype=np.int64)
    if modulus == 2:
        as_bytes = np.ascontiguousarray(words.astype('<u8')).view(np.uint8)
        as_bytes = as_bytes.reshape(rows, n_words * 8)
        bits = np.unpackbits(as_bytes, axis=1, count=cols, bitorder='little')
        return bits.astype(np.int64)
    bits = entry_bits(modulus)
    per_word = entries_per_word(modulus)
    shifts = np.arange(per_word, dtype=np.uint64) * np.uint64(bits)
    mask = np.uint64((1 << bits) - 1)
    fields = (words[:, :, None] >> shifts) & mask
    return fields.reshape(rows, n_words * per_word)[:, :cols].astype(np.int64)


def matmul_mod(left, right, modulus):
    """Product of two reduced integer arrays modulo modulus without int64 overflow."""
    inner = left.shape[1]
    if inner == 0:
        return np.zeros((left.shape[0], right.shape[1]), dtype=np.int64)
    if (modulus - 1) ** 2 * inner < SAFE_PRODUCT_BOUND:
        return (left @ right) % modulus
    product = left.astype(object) @ right.astype(object)
    return (product % modulus).astype(np.int64)


@dataclass(frozen=True, eq=False)
class PackedMatrix:
    """
    Immutable matrix over Z/modulus with modulus a prime power.

    Build instances with from_rows / from_array / identity / zeros rather than
    the raw constructor.

    Example:
        m = PackedMatrix.from_rows([[1, 0], [1, 1]], modulus=2)
        m.rows, m.cols -> (2, 2)
    """
    modulus: int
    rows: int
    cols: int
    words: np.ndarray = field(repr=False)

    def __post_init__(self):
        validate_prime_power(self.modulus)
        expected = (self.rows, words_per_row(self.cols, self.modulus))
        if self.words.shape != expected or self.words.dtype != np.uint64:
            raise ValueError(
                f"Packed storage has shape {self.words.shape}, expected {expected} uint64"
            )
        self.words.flags.writeable = False

    # ===== construction =====

    @classmethod
    def from_array(cls, array, modulus):
        """Build from any integer array-like; entries are reduced mod modulus."""
        validate_prime_power(modulus)
        data = np.asarray(array, dtype=object if _too_wide(array) else np.int64)
        if data.ndim == 1 and data.size == 0:
            data = data.reshape(0, 0)
        if data.ndim != 2:
            raise ValueError(f"Expected a 2-dimensional array, got {data.ndim} dimensions")
        reduced = np.asarray(data % modulus, dtype=np.int64)
        return cls(modulus, reduced.shape[0], reduced.shape[1], pack_rows(reduced, modulus))

    @classmethod
    def from_rows(cls, rows, modulus, cols=None):
        """Build from a list of rows; cols is needed only for an empty row list."""
        rows = [list(row) for row in rows]
        if not rows:
            return cls.zeros(0, cols or 0, modulus)
        return cls.from_array(rows, modulus)

    @classmethod
    def zeros(cls, rows, cols, modulus):
        return cls.from_array(np.zeros((rows, cols), dtype=np.int64), modulus)

    @classmethod
    def identity(cls, n, modulus):
        return cls.from_array(np.eye(n, dtype=np.int64), modulus)

    @classmethod
    def hstack(cls, matrices):
        modulus = _common_modulus(matrices)
        return cls.from_array(np.hstack([m.to_array() for m in matrices]), modulus)

    @classmethod
    def vstack(cls, matrices):
        modulus = _common_modulus(matrices)
        return cls.from_array(np.vstack([m.to_array() for m in matrices]), modulus)

    # ===== properties =====

    @cached_property
    def prime(self):
        return validate_prime_power(self.modulus)[0]

    @cached_property
    def power(self):
        return validate_prime_power(self.modulus)[1]

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def is_prime_field(self):
        return self.power == 1

    @property
    def is_square(self):
        return self.rows == self.cols

    # ===== access =====

    def to_array(self):
        """Unpacked int64 copy of the entries."""
        return unpack_rows(self.words, self.cols, self.modulus)

    def to_lists(self):
        return self.to_array().tolist()

    def entry(self, i, j):
        per_word = entries_per_word(self.modulus)
        bits = entry_bits(self.modulus)
        word = int(self.words[i, j // per_word])
        return (word >> ((j % per_word) * bits)) & ((1 << bits) - 1)

    def row(self, i):
        return self.to_array()[i]

    def take_rows(self, indices):
        return PackedMatrix(self.modulus, len(indices), self.cols,
                            np.ascontiguousarray(self.words[list(indices)]))

    def take_cols(self, indices):
        return PackedMatrix.from_array(self.to_array()[:, list(indices)], self.modulus)

    def is_zero(self):
        return not self.words.any()

    def is_identity(self):
        return self.is_square and self == PackedMatrix.identity(self.rows, self.modulus)

    # ===== arithmetic =====

    def matmul(self, other):
        if self.modulus != other.modulus:
            raise ValueError(f"Moduli differ: {self.modulus} vs {other.modulus}")
        if self.cols != other.rows:
            raise ValueError(f"Shapes {self.shape} and {other.shape} do not compose")
        product = matmul_mod(self.to_array(), other.to_array(), self.modulus)
        return PackedMatrix.from_array(product, self.modulus)

    __matmul__ = matmul

    def __add__(self, other):
        if self.shape != other.shape or self.modulus != other.modulus:
            raise ValueError('Matrices must share shape and modulus')
        return PackedMatrix.from_array(self.to_array() + other.to_array(), self.modulus)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, factor):
        return PackedMatrix.from_array(self.to_array() * (factor % self.modulus), self.modulus)

    def transpose(self):
        return PackedMatrix.from_array(self.to_array().T, self.modulus)

    @property
    def T(self):
        return self.transpose()

    def apply(self, vector):
        """Matrix times column vector, as an int64 array."""
        column = np.asarray(vector, dtype=np.int64).reshape(-1, 1) % self.modulus
        return matmul_mod(self.to_array(), column, self.modulus).ravel()

    def inverse(self):
        """
        Inverse over Z/p^k by Gauss-Jordan with unit pivots.

        Raises:
            SingularMatrixError: If the matrix is not square or not invertible
        """
        if not self.is_square:
            raise SingularMatrixError(f"Matrix of shape {self.shape} is not square")
        n, q, p = self.rows, self.modulus, self.prime
        work = np.hstack([self.to_array(), np.eye(n, dtype=np.int64)])
        for col in range(n):
            candidates = np.flatnonzero(work[col:, col] % p) + col
            if candidates.size == 0:
                raise SingularMatrixError(f"No unit pivot in column {col}")
            pivot = int(candidates[0])
            if pivot != col:
                work[[col, pivot]] = work[[pivot, col]]
            work[col] = (work[col] * pow(int(work[col, col]), -1, q)) % q
            factors = work[:, col].copy()
            factors[col] = 0
            hits = np.flatnonzero(factors)
            if hits.size:
                work[hits] = (work[hits] - np.outer(factors[hits], work[col])) % q
        return PackedMatrix.from_array(work[:, n:], q)

    def power_of(self, exponent):
        """Matrix power by repeated squaring; negative exponents invert first."""
        base = self.inverse() if exponent < 0 else self
        result = PackedMatrix.identity(self.rows, self.modulus)
        e = abs(exponent)
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    # ===== comparison =====

    def __eq__(self, other):
        if not isinstance(other, PackedMatrix):
            return NotImplemented
        return (self.modulus == other.modulus and self.shape == other.shape
                and np.array_equal(self.words, other.words))

    def __hash__(self):
        return hash((self.modulus, self.rows, self.cols, self.words.tobytes()))

    def __str__(self):
        return f"PackedMatrix({self.rows}x{self.cols} over Z/{self.modulus})"


def _too_wide(array):
    if isinstance(array, np.ndarray):
        return array.dtype == object
    flat = [x for row in array for x in (row if isinstance(row, (list, tuple)) else [row])]
    return any(isinstance(x, int) and abs(x) >= SAFE_PRODUCT_BOUND for x in flat)


def _common_modulus(matrices):
    moduli = {m.modulus for m in matrices}
    if len(moduli) != 1:
        raise ValueError(f"Cannot stack matrices with moduli {sorted(moduli)}")
    return moduli.pop()
