"""
Datum files.

    [n]
    order = 2
    [J]
    group = Z2
    [action]
    multipliers = 1
    [options]
    cup_order = alpha-kappa
    assumptions = H1(J, n) = H1(J, n^) = 0 (not checked)
    [kappa]
    1,1 -> 1
    [alpha]
    [beta]

Cochain sections use the `g1,...,gk -> value` line format; beta is read mod
|n| * |J|.
"""

import logging
import re
from pathlib import Path

from django.core.exceptions import ValidationError

from apps.cochain.cochains import dump_cochain, parse_cochain_lines
from apps.cochain.modules import CyclicModule
from apps.core.constants import CupOrder
from apps.core.exceptions import ParseError
from apps.groupkit.tables import group_from_spec
from .datum import DEFAULT_ASSUMPTIONS, TDualityDatum

logger = logging.getLogger('apps.tdual')

SECTION_PATTERN = re.compile(r'^\s*\[(?P<name>\w+)\]\s*$')
SETTING_PATTERN = re.compile(r'^\s*(?P<key>\w+)\s*=\s*(?P<value>.*?)\s*$')
SECTIONS = ('n', 'J', 'action', 'options', 'kappa', 'alpha', 'beta')
REQUIRED = ('n', 'J', 'kappa', 'alpha', 'beta')


def _sections(text, source):
    sections, current = {}, None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].rstrip()
        if not line.strip():
            continue
        match = SECTION_PATTERN.match(line)
        if match:
            current = match.group('name')
            if current not in SECTIONS:
                raise ParseError(f"Unknown section [{current}]", number, source)
            if current in sections:
                raise ParseError(f"Repeated section [{current}]", number, source)
            sections[current] = []
            continue
        if current is None:
            raise ParseError('Content before the first section', number, source)
        sections[current].append((number, line))
    missing = [name for name in REQUIRED if name not in sections]
    if missing:
        raise ParseError(f"Missing sections: {', '.join(missing)}", None, source)
    return sections


def _settings(lines, source):
    values = {}
    for number, line in lines:
        match = SETTING_PATTERN.match(line)
        if not match:
            raise ParseError(f"Expected 'key = value', got {line.strip()!r}", number, source)
        values[match.group('key')] = (number, match.group('value'))
    return values


def _setting(values, key, source, default=None):
    if key in values:
        return values[key]
    if default is not None:
        return None, default
    raise ParseError(f"Missing setting {key!r}", None, source)


def parse_datum(text, source=None):
    """
    Raises:
        ParseError: With the offending line
    """
    sections = _sections(text, source)
    number, order_text = _setting(_settings(sections['n'], source), 'order', source)
    number_j, spec = _setting(_settings(sections['J'], source), 'group', source)
    try:
        order = int(order_text)
        group = group_from_spec(spec)
    except (ValueError, ValidationError) as exc:
        raise ParseError(f"Cannot read n or J: {exc}", number_j or number, source)
    action = _settings(sections.get('action', []), source)
    number, multipliers_text = _setting(action, 'multipliers', source,
                                        default=', '.join(['1'] * len(group.generators)))
    try:
        multipliers = [int(u) for u in multipliers_text.split(',') if u.strip()]
        module = CyclicModule.on_group(group, order, multipliers)
    except (ValueError, ValidationError) as exc:
        raise ParseError(f"Bad action: {exc}", number, source)
    options = _settings(sections.get('options', []), source)
    number, cup_order = _setting(options, 'cup_order', source, default=CupOrder.ALPHA_KAPPA)
    if cup_order not in CupOrder.values:
        raise ParseError(f"Unknown cup order {cup_order!r}", number, source)
    _number, assumptions = _setting(options, 'assumptions', source, default=DEFAULT_ASSUMPTIONS)
    kappa = parse_cochain_lines(sections['kappa'], group, module, 2, source)
    alpha = parse_cochain_lines(sections['alpha'], group, module.dual(), 2, source)
    u1 = CyclicModule.trivial(group, order * group.order)
    beta = parse_cochain_lines(sections['beta'], group, u1, 3, source)
    datum = TDualityDatum(module, kappa, alpha, beta, cup_order, assumptions)
    logger.debug(f"Parsed {datum} from {source or 'text'}")
    return datum


def _nonzero_lines(cochain):
    return [line for line in dump_cochain(cochain).splitlines() if not line.endswith('-> 0')]


def dump_datum(datum):
    """Datum file text; zero cochain values are omitted."""
    module, group = datum.module, datum.group
    multipliers = ', '.join(str(module.multipliers[g]) for g in group.generators)
    lines = [
        '[n]', f"order = {module.order}",
        '[J]', f"group = {group}",
        '[action]', f"multipliers = {multipliers}",
        '[options]', f"cup_order = {datum.cup_order}", f"assumptions = {datum.assumptions}",
        '[kappa]', *_nonzero_lines(datum.kappa),
        '[alpha]', *_nonzero_lines(datum.alpha),
        '[beta]', *_nonzero_lines(datum.beta),
    ]
    return '\n'.join(lines) + '\n'


def load_datum(path):
    path = Path(path)
    return parse_datum(path.read_text(), source=path.name)


def save_datum(datum, path):
    Path(path).write_text(dump_datum(datum))
