"""
Custom validators for the cohomology workbench.

Validators reject malformed user input (command options, file tokens) before any
computation starts; they raise ValidationError, never WorkbenchError.
"""

import re

from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _
from sympy import factorint, isprime

from apps.core.constants import MATRIX_DIGITS

GENERATOR_NAME_PATTERN = re.compile(r'^[A-Za-z][A-Za-z0-9_]*$')
CLASS_NAME_PATTERN = re.compile(r'^\d+[A-Z]+$')


def validate_positive_integer(value):
    """
    Validate that value is a positive integer.

    Args:
        value: Integer to validate

    Raises:
        ValidationError: If value is not a positive integer
    """
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ValidationError(_('Value must be a positive integer.'))


def validate_prime(value):
    """
    Validate that value is a prime number.

    Args:
        value: Integer to validate

    Raises:
        ValidationError: If value is not prime
    """
    validate_positive_integer(value)
    if not isprime(value):
        raise ValidationError(_('%(value)s is not a prime.'), params={'value': value})


def validate_prime_power(value):
    """
    Validate that value is a prime power p^k with k >= 1.

    Args:
        value: Integer to validate

    Returns:
        Tuple (p, k)

    Raises:
        ValidationError: If value is not a prime power

    Example:
        validate_prime_power(8) -> (2, 3)
    """
    validate_positive_integer(value)
    factors = factorint(value)
    if len(factors) != 1:
        raise ValidationError(_('%(value)s is not a prime power.'), params={'value': value})
    (p, k), = factors.items()
    return int(p), int(k)


def validate_matrix_modulus(p, k):
    """
    Validate the modulus of a text matrix block: p prime, p^k a single base-36 digit range.

    Raises:
        ValidationError: If p is not prime, k < 1, or p^k > 36
    """
    validate_prime(p)
    validate_positive_integer(k)
    if p ** k > len(MATRIX_DIGITS):
        raise ValidationError(
            _('Modulus %(m)s does not fit in one base-36 digit.'), params={'m': p ** k}
        )


def validate_generator_name(value):
    """
    Validate a generator name such as 'a', 'x2' or 'g_1'.

    Names must survive the word syntax, so no digits first and no '^'.

    Raises:
        ValidationError: If the name is not usable in words
    """
    if not isinstance(value, str) or not GENERATOR_NAME_PATTERN.match(value):
        raise ValidationError(_('Invalid generator name: %(value)s'), params={'value': value})


def validate_class_name(value):
    """
    Validate an ATLAS-style conjugacy class name ('1A', '2B', '8F').
    """
    if not value or not CLASS_NAME_PATTERN.match(value):
        raise ValidationError(_('Invalid class name: %(value)s'), params={'value': value})


def validate_budget_seconds(value):
    """
    Validate a time budget in seconds; zero means unlimited.
    """
    if value is None:
        return
    if isinstance(value, bool) or not isinstance(value, (int, float)) or value < 0:
        raise ValidationError(_('Budget must be a non-negative number of seconds.'))
