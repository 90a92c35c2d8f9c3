"""
Constants and choices for the cohomology workbench.
"""

from django.db import models


class Functor(models.TextChoices):
    """Representation functors understood by repfun."""
    DUAL = 'dual', 'Dual'
    TENSOR = 'tensor', 'Tensor product'
    ALT2 = 'alt2', 'Exterior square'
    SYM2 = 'sym2', 'Symmetric square'
    ALT3 = 'alt3', 'Exterior cube'


class ModuleKind(models.TextChoices):
    """Coefficient modules offered by the h1 command."""
    NATURAL = 'natural', 'Natural module'
    TRIVIAL = 'trivial', 'Trivial one-dimensional module'
    ALT2 = 'alt2', 'Exterior square'
    SYM2 = 'sym2', 'Symmetric square'
    ALT3 = 'alt3', 'Exterior cube'
    QUOTIENT_BY_INVARIANT = 'quotient-by-invariant', 'Exterior square modulo its invariants'


class Provenance(models.TextChoices):
    """Where a ledger entry came from."""
    COMPUTED = 'computed', 'Computed'
    QUOTED = 'quoted', 'Quoted constant'
    UNKNOWN = 'unknown', 'Unknown'


class CupOrder(models.TextChoices):
    """Cochain-level orientation of the pairing in a T-duality datum."""
    ALPHA_KAPPA = 'alpha-kappa', '<alpha cup kappa>'
    KAPPA_ALPHA = 'kappa-alpha', '<kappa cup alpha>'


class OutputFormat(models.TextChoices):
    """Output formats for the management commands."""
    TABLE = 'table', 'Aligned table'
    CSV = 'csv', 'CSV'


class Suite(models.TextChoices):
    """Reproduce suites."""
    LARGE_PRIMES = 'large-primes', 'Large primes vanishing table'
    SMALL_PRIMES = 'small-primes', 'Small primes data'
    CO1_H1 = 'co1-h1', 'First cohomology of Co1'
    CHERN = 'chern', 'Chern classes of the binary dihedral group'
    KUNNETH = 'kunneth', 'Kunneth formula against brute force'
    CYCLIC = 'cyclic', 'Cyclic group cohomology'
    TDUAL = 'tdual', 'T-duality algebra'
    ORACLE = 'oracle', 'Fox calculus against the bar complex'
    Q16 = 'q16', 'Third cohomology of the binary dihedral group of order 16'
    ALL = 'all', 'All default suites'


# Bit-packing
WORD_BITS = 64
MATRIX_DIGITS = '0123456789abcdefghijklmnopqrstuvwxyz'  # base p^k <= 36 in text files

# Primes dividing the Monster order, split by the argument that handles them
LARGE_PRIMES = (11, 17, 19, 23, 29, 31, 41, 47, 59, 71)
SMALL_PRIMES = (3, 5, 7, 13)

# Binary dihedral group of order 16
Q16_ORDER = 16
Q16_MERGED_ORDERS = (1, 2, 4, 8)
Q16_IRREP_LABELS = ('V0', 'V1', 'V2', 'V3', 'V4', 'V5', 'V6')
Q16_MCKAY_EDGES = (
    ('V6', 'V1'), ('V6', 'V0'), ('V6', 'V4'),
    ('V5', 'V3'), ('V5', 'V2'), ('V5', 'V4'),
)
MAX_SYM_POWER = 8

# Coxeter-type presentation of Co1 on nine involutions
CO1_GENERATORS = ('a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'i')
CO1_EDGE_LABELS = {('c', 'd'): 8}
CO1_EXTRA_RELATORS = (
    '( c d )^4 a^-1',
    '( b c d e )^8',
    '( ( b ( c d )^2 e f g h )^13 i )^3',
)
CO1_DIMENSION = 24
