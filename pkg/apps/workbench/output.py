"""
Rendering of command results as aligned tables or CSV.
"""

import csv
import io

from apps.core.constants import OutputFormat

BANNER_WIDTH = 70


def _cell(value):
    if value is None:
        return '?'
    if isinstance(value, bool):
        return 'yes' if value else 'NO'
    return str(value)


def render_table(headers, rows, fmt=OutputFormat.TABLE):
    """
    Render rows under headers.

    Args:
        headers: Column names
        rows: Iterable of sequences, one value per header
        fmt: OutputFormat.TABLE (aligned, pipe-separated) or OutputFormat.CSV

    Returns:
        The rendered text, ending in a newline

    Example:
        render_table(('p', 'H3'), [(17, 0)], 'csv') -> 'p,H3\\n17,0\\n'
    """
    cells = [[_cell(value) for value in row] for row in rows]
    if fmt == OutputFormat.CSV:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(headers)
        writer.writerows(cells)
        return buffer.getvalue()
    widths = [len(header) for header in headers]
    for row in cells:
        widths = [max(width, len(cell)) for width, cell in zip(widths, row)]
    lines = [' | '.join(header.ljust(width) for header, width in zip(headers, widths))]
    lines.append('-+-'.join('-' * width for width in widths))
    for row in cells:
        lines.append(' | '.join(cell.ljust(width) for cell, width in zip(row, widths)))
    return '\n'.join(line.rstrip() for line in lines) + '\n'


def banner(title):
    rule = '=' * BANNER_WIDTH
    return f"{rule}\n{title}\n{rule}\n"
