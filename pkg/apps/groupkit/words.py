"""
Words in free groups.

A word is a tuple of (generator index, exponent) letters with exponent +1 or -1.
File syntax is whitespace separated: `a`, `a^-1`, `a^3`, and parenthesized
powers such as `( c d )^4`; powers are expanded when parsing.
"""

import re
from typing import Tuple

from apps.core.exceptions import ParseError

Word = Tuple[Tuple[int, int], ...]

TOKEN_PATTERN = re.compile(
    r'\s*(?:(?P<open>\()|(?P<close>\))(?:\^(?P<close_exp>-?\d+))?'
    r'|(?P<name>[A-Za-z][A-Za-z0-9_]*)(?:\^(?P<exp>-?\d+))?)'
)


def inverse_word(word):
    return tuple((g, -e) for g, e in reversed(word))


def word_power(word, exponent):
    base = word if exponent >= 0 else inverse_word(word)
    return tuple(base) * abs(exponent)


def free_reduce(word):
    """Cancel adjacent g g^-1 pairs."""
    stack = []
    for letter in word:
        if stack and stack[-1][0] == letter[0] and stack[-1][1] == -letter[1]:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def parse_word(text, generators, line=None, source=None):
    """
    Parse a word over the named generators, flattening powers.

    Args:
        text: Word text, e.g. '( ( b ( c d )^2 e )^13 i )^3'
        generators: Sequence of generator names
        line, source: Location for error messages

    Returns:
        Word

    Raises:
        ParseError: On unknown generators, bad tokens or unbalanced parentheses

    Example:
        parse_word('( a b )^2 a^-1', ['a', 'b']) -> ((0,1),(1,1),(0,1),(1,1),(0,-1))
    """
    index = {name: i for i, name in enumerate(generators)}
    stack = [[]]
    position = 0
    text = text.rstrip()
    while position < len(text):
        match = TOKEN_PATTERN.match(text, position)
        if not match or match.end() == position:
            raise ParseError(f"Bad token at {text[position:].strip()[:12]!r}", line, source)
        position = match.end()
        if match.group('open'):
            stack.append([])
        elif match.group('close'):
            if len(stack) == 1:
                raise ParseError('Unbalanced ")"', line, source)
            inner = tuple(stack.pop())
            exponent = int(match.group('close_exp') or 1)
            stack[-1].extend(word_power(inner, exponent))
        else:
            name = match.group('name')
            if name not in index:
                raise ParseError(f"Unknown generator {name!r}", line, source)
            exponent = int(match.group('exp') or 1)
            stack[-1].extend(word_power(((index[name], 1),), exponent))
    if len(stack) != 1:
        raise ParseError('Unbalanced "("', line, source)
    return tuple(stack[0])


def format_word(word, generators):
    """Render a word letter by letter ('a b^-1 c')."""
    if not word:
        return '1'
    return ' '.join(generators[g] if e == 1 else f"{generators[g]}^-1" for g, e in word)
