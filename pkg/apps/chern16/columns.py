"""
Character-column files: CSV with header `class,order,value`, one row per merged class.

    class,order,value
    1A,1,4
    2B,2,-4
    4D,4,0
    8F,8,0
"""

import csv
import io
import logging
from pathlib import Path

from django.core.exceptions import ValidationError

from apps.core.constants import Q16_MERGED_ORDERS
from apps.core.exceptions import ParseError
from apps.core.utils.validators import validate_class_name
from .characters import MergedClassFunction, merged_class_names

logger = logging.getLogger('apps.chern16')

COLUMN_HEADER = ('class', 'order', 'value')


def _integer(text, what, line, source):
    try:
        return int(text.strip())
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {text.strip()!r}", line, source)


def parse_column(text, source=None):
    """
    Read a merged character column.

    Raises:
        ParseError: On a bad header, repeated or unexpected classes, wrong element
            orders or non-integer values
    """
    rows = [(number, row) for number, row in enumerate(csv.reader(io.StringIO(text)), start=1)
            if row and any(cell.strip() for cell in row)]
    if not rows or tuple(cell.strip() for cell in rows[0][1]) != COLUMN_HEADER:
        line = rows[0][0] if rows else None
        raise ParseError(f"Expected header {','.join(COLUMN_HEADER)}", line, source)
    expected = dict(zip(merged_class_names(), Q16_MERGED_ORDERS))
    values = {}
    for number, row in rows[1:]:
        if len(row) != len(COLUMN_HEADER):
            raise ParseError(f"Expected 3 fields, got {len(row)}", number, source)
        name = row[0].strip()
        try:
            validate_class_name(name)
        except ValidationError as exc:
            raise ParseError(' '.join(exc.messages), number, source)
        if name not in expected:
            raise ParseError(f"Unexpected class {name}", number, source)
        if name in values:
            raise ParseError(f"Repeated class {name}", number, source)
        order = _integer(row[1], 'order', number, source)
        if order != expected[name]:
            raise ParseError(f"Class {name} has element order {expected[name]}, got {order}",
                             number, source)
        values[name] = _integer(row[2], 'value', number, source)
    missing = [name for name in expected if name not in values]
    if missing:
        raise ParseError(f"Missing classes: {', '.join(missing)}", None, source)
    column = MergedClassFunction.from_mapping(values)
    logger.debug(f"Read column {column} from {source or 'text'}")
    return column


def dump_column(column):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(COLUMN_HEADER)
    for (name, value), order in zip(column.by_class().items(), Q16_MERGED_ORDERS):
        writer.writerow((name, order, value))
    return buffer.getvalue()


def load_column(path):
    path = Path(path)
    return parse_column(path.read_text(), source=path.name)


def save_column(column, path):
    Path(path).write_text(dump_column(column))
