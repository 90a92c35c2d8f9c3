"""
General helper functions for the cohomology workbench.
"""

import hashlib
import logging
import time
from math import gcd
from pathlib import Path

from sympy import factorint

from apps.core.exceptions import BudgetExceededError

logger = logging.getLogger('apps.core')


class Budget:
    """
    Wall-clock budget for long-running computations.

    A budget of 0 or None never expires.

    Example:
        budget = Budget(60)
        for row in rows:
            budget.check('streaming rows')
    """

    def __init__(self, seconds=None):
        self.seconds = seconds or 0
        self.started = time.monotonic()

    @property
    def elapsed(self):
        return time.monotonic() - self.started

    @property
    def unlimited(self):
        return self.seconds <= 0

    def check(self, progress=''):
        """Raise BudgetExceededError if the budget has run out."""
        if not self.unlimited and self.elapsed > self.seconds:
            logger.warning(f"Budget of {self.seconds}s exhausted {progress}")
            raise BudgetExceededError(self.seconds, progress)


def prime_power_parts(n):
    """
    Split n into its prime-power parts.

    Args:
        n: Positive integer

    Returns:
        Dict {p: e} with n = prod p^e (empty for n = 1)

    Example:
        prime_power_parts(12) -> {2: 2, 3: 1}
    """
    return {int(p): int(e) for p, e in factorint(n).items()}


def p_valuation(n, p):
    """Exponent of p in n (n != 0)."""
    if n == 0:
        raise ValueError('valuation of zero')
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def lcm_all(values):
    """Least common multiple of an iterable of positive integers (1 when empty)."""
    result = 1
    for value in values:
        result = result * value // gcd(result, value)
    return result


def sha256_file(path):
    """
    Compute the sha256 hex digest of a file.

    Args:
        path: File path (str or Path)

    Returns:
        Hex digest string
    """
    digest = hashlib.sha256()
    with Path(path).open('rb') as handle:
        for chunk in iter(lambda: handle.read(1 << 16), b''):
            digest.update(chunk)
    return digest.hexdigest()
