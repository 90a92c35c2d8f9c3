"""
Text format for PackedMatrix blocks.

A block is a header line `p=<prime> k=<power> rows=<r> cols=<c>` followed by r
lines of c digits in base p^k (0-9 then a-z), no separators.
"""

import re
from pathlib import Path

import numpy as np
from django.core.exceptions import ValidationError

from apps.core.constants import MATRIX_DIGITS
from apps.core.exceptions import ParseError
from apps.core.utils.validators import validate_matrix_modulus
from .matrices import PackedMatrix

HEADER_PATTERN = re.compile(r'^p=(\d+)\s+k=(\d+)\s+rows=(\d+)\s+cols=(\d+)$')
DIGIT_VALUES = {digit: value for value, digit in enumerate(MATRIX_DIGITS)}


def parse_header(line, line_number=None, source=None):
    """Parse a block header into (p, k, rows, cols)."""
    match = HEADER_PATTERN.match(line.strip())
    if not match:
        raise ParseError(f"Expected matrix header, got {line.strip()!r}", line_number, source)
    p, k, rows, cols = (int(g) for g in match.groups())
    try:
        validate_matrix_modulus(p, k)
    except ValidationError as exc:
        raise ParseError(' '.join(exc.messages), line_number, source) from exc
    return p, k, rows, cols


def read_matrix_block(lines, start=0, source=None):
    """
    Read one block from a list of lines.

    Args:
        lines: List of text lines
        start: Index of the header line
        source: File name for error messages

    Returns:
        Tuple (PackedMatrix, index of the first line after the block)

    Raises:
        ParseError: On a malformed header, short block, bad digit or wrong width
    """
    if start >= len(lines):
        raise ParseError('Missing matrix header', start + 1, source)
    p, k, rows, cols = parse_header(lines[start], start + 1, source)
    modulus = p ** k
    data = np.zeros((rows, cols), dtype=np.int64)
    for r in range(rows):
        index = start + 1 + r
        if index >= len(lines):
            raise ParseError(f"Block ends after {r} of {rows} rows", index, source)
        text = lines[index].strip()
        if len(text) != cols:
            raise ParseError(f"Row has {len(text)} digits, expected {cols}", index + 1, source)
        try:
            values = [DIGIT_VALUES[ch] for ch in text]
        except KeyError as exc:
            raise ParseError(f"Invalid digit {exc.args[0]!r}", index + 1, source) from exc
        if any(v >= modulus for v in values):
            raise ParseError(f"Digit out of range for modulus {modulus}", index + 1, source)
        data[r] = values
    return PackedMatrix.from_array(data, modulus), start + 1 + rows


def parse_matrix(text, source=None):
    lines = [line for line in text.splitlines() if line.strip()]
    matrix, end = read_matrix_block(lines, 0, source)
    if end != len(lines):
        raise ParseError('Trailing content after matrix block', end + 1, source)
    return matrix


def dump_matrix(matrix):
    """Render a block; parse_matrix(dump_matrix(m)) == m."""
    header = f"p={matrix.prime} k={matrix.power} rows={matrix.rows} cols={matrix.cols}"
    body = [''.join(MATRIX_DIGITS[v] for v in row) for row in matrix.to_array().tolist()]
    return '\n'.join([header] + body) + '\n'


def load_matrix(path):
    path = Path(path)
    return parse_matrix(path.read_text(), source=path.name)


def save_matrix(matrix, path):
    Path(path).write_text(dump_matrix(matrix))
