"""
Total-degree-3 bookkeeping for Lyndon-Hochschild-Serre spectral sequences.

For an extension G = n.J the E2 page contributes, in total degree 3,

    H^0(J, H^3(n, U(1))), H^1(J, H^2(n, U(1))), H^2(J, H^1(n, U(1))), H^3(J, U(1)),

and |H^3(G, U(1))| is bounded by the product of their orders. Pages record
values with their provenance; unknown entries are first-class.
"""

import logging
from dataclasses import dataclass, field, replace
from math import gcd
from typing import Optional, Tuple, Union

from django.conf import settings
from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

from apps.cochain.cohomology import cohomology_module, cohomology_u1
from apps.cochain.modules import CyclicModule
from apps.core.constants import Provenance
from apps.core.exceptions import SizeCapExceededError
from apps.exactlin.abelian import FiniteAbelianGroup
from apps.groupkit.presentations import Presentation

logger = logging.getLogger('apps.specseq')


@dataclass(frozen=True)
class Entry:
    """
    One ledger cell.

    value is a FiniteAbelianGroup, an F_p-dimension (int) or None when unknown;
    exponent_bound bounds the exponent when the value itself is not known.
    """
    label: str
    value: Optional[Union[FiniteAbelianGroup, int]] = None
    provenance: str = Provenance.UNKNOWN
    exponent_bound: Optional[int] = None
    citation: str = ''

    @property
    def known(self):
        return self.value is not None

    @property
    def order(self):
        if isinstance(self.value, FiniteAbelianGroup):
            return self.value.order
        return None

    @property
    def exponent(self):
        """Known exponent, else the recorded bound, else None."""
        if isinstance(self.value, FiniteAbelianGroup):
            return self.value.exponent
        return self.exponent_bound

    def display(self):
        if self.value is not None:
            return str(self.value)
        if self.exponent_bound is not None:
            return f"exponent {self.exponent_bound}"
        return '?'


@dataclass(frozen=True)
class E2PageDeg3:
    """
    Total-degree-3 entries of the E2 page for n.J.

    Example:
        page = e2_deg3(CyclicModule.trivial(cyclic(2), 2))
        page.order_bound() -> 8
    """
    name: str
    h0_h3: Entry
    h1_h2: Entry
    h2_h1: Entry
    h3_h0: Entry
    sym2_corner: Entry = Entry('H0(J, Sym2(n^))')
    notes: Tuple[str, ...] = field(default=())

    def entries(self):
        return [self.h0_h3, self.h1_h2, self.h2_h1, self.h3_h0]

    @property
    def complete(self):
        return all(entry.order is not None for entry in self.entries())

    def order_bound(self):
        """Product of the orders of the entries whose group is known."""
        bound = 1
        for entry in self.entries():
            if entry.order is not None:
                bound *= entry.order
        return bound

    def pullback_multiplier(self):
        """
        Product of the exponents of the entries that depend on n.

        Multiplying a class by this kills its image in every n-dependent entry,
        so the multiple is pulled back from J. None when an exponent is missing.
        """
        multiplier = 1
        for entry in (self.h0_h3, self.h1_h2, self.h2_h1):
            if entry.exponent is None:
                return None
            multiplier *= entry.exponent
        return multiplier

    def with_entry(self, key, entry):
        return replace(self, **{key: entry})

    def __str__(self):
        cells = ', '.join(f"{entry.label} = {entry.display()}" for entry in self.entries())
        return f"E2({self.name}): {cells}"


@dataclass(frozen=True)
class PresentedAction:
    """
    Z/m with the generators of a presented J acting by unit multipliers.

    Every relator must act trivially, which is checked on construction.

    Example:
        PresentedAction(dihedral_presentation(8), 4, (1, 3))  # s acts by -1
    """
    presentation: Presentation
    order: int
    generator_multipliers: Tuple[int, ...]

    def __post_init__(self):
        m = self.order
        units = tuple(int(u) % m for u in self.generator_multipliers)
        if len(units) != self.presentation.rank:
            raise ValidationError(_('One multiplier per generator is required.'))
        if m > 1 and any(gcd(u, m) != 1 for u in units):
            raise ValidationError(_('Multipliers must be units mod %(m)s.'), params={'m': m})
        object.__setattr__(self, 'generator_multipliers', units)
        for index, relator in enumerate(self.presentation.relators):
            value = 1 % m
            for g, e in relator:
                value = value * pow(units[g], e, m) % m if m > 1 else 0
            if value != 1 % m:
                raise ValidationError(
                    _('Relator %(r)s acts by %(v)s, not 1.'),
                    params={'r': self.presentation.relator_text(index), 'v': value},
                )

    def fixed_by_squares(self):
        """H^0(J, Z/m) for the action through u^2: the common kernel of u^2 - 1."""
        return FiniteAbelianGroup.cyclic(gcd(self.order, *(u * u - 1 for u in
                                                         self.generator_multipliers)))


def squared_action(module):
    """Z/m with J acting through u^2: the action on H^3(Z/m, U(1)) = Z/m."""
    m = module.order
    squares = tuple(u * u % m if m > 1 else 0 for u in module.multipliers)
    return CyclicModule(module.group, m, squares)


def e2_deg3(module, h3_of_quotient=None, long_running=False, overrides=None):
    """
    Assemble the E2 page for n.J with n = Z/m cyclic.

    H^1(n, U(1)) is the dual n^ and H^2(n, U(1)) = 0; the J-action on
    H^3(n, U(1)) = Z/m is through the squares of the multipliers.

    When J is only presented (a PresentedAction) there is no table for the bar
    complex: H^0 is read off the generator multipliers, H^2(J, n^) is left
    unknown with exponent bound m, and H^3(J, U(1)) is unknown unless supplied.

    Args:
        module: CyclicModule for n with its J-action (module.group is J), or a
            PresentedAction
        h3_of_quotient: Entry for H^3(J, U(1)); computed when omitted and feasible
        long_running: Allow the long-running U(1) path for H^3(J, U(1))
        overrides: {field name: Entry} replacing computed cells

    Returns:
        E2PageDeg3
    """
    if isinstance(module, PresentedAction):
        return _presented_page(module, h3_of_quotient, overrides)
    group = module.group
    name = f"{module.order}.{group}"
    h0 = cohomology_module(group, squared_action(module), 0)
    h2 = cohomology_module(group, module.dual(), 2)
    if h3_of_quotient is None:
        h3_of_quotient = _h3_u1_entry(group, long_running)
    page = E2PageDeg3(
        name=name,
        h0_h3=Entry('H0(J, H3(n, U(1)))', h0, Provenance.COMPUTED),
        h1_h2=Entry('H1(J, H2(n, U(1)))', FiniteAbelianGroup.trivial(), Provenance.COMPUTED,
                    citation='H2 of a cyclic group with U(1) coefficients vanishes'),
        h2_h1=Entry('H2(J, n^)', h2, Provenance.COMPUTED),
        h3_h0=h3_of_quotient,
        notes=('H1(n, U(1)) = n^', 'H2(n, U(1)) = 0'),
    )
    for key, entry in (overrides or {}).items():
        page = page.with_entry(key, entry)
    logger.info(f"{page} (order bound {page.order_bound()})")
    return page


def _presented_page(action, h3_of_quotient, overrides):
    m = action.order
    page = E2PageDeg3(
        name=f"{m}.{action.presentation}",
        h0_h3=Entry('H0(J, H3(n, U(1)))', action.fixed_by_squares(), Provenance.COMPUTED),
        h1_h2=Entry('H1(J, H2(n, U(1)))', FiniteAbelianGroup.trivial(), Provenance.COMPUTED,
                    citation='H2 of a cyclic group with U(1) coefficients vanishes'),
        h2_h1=Entry('H2(J, n^)', exponent_bound=m),
        h3_h0=h3_of_quotient or Entry('H3(J, U(1))'),
        notes=('H1(n, U(1)) = n^', 'H2(n, U(1)) = 0', 'J given by a presentation'),
    )
    for key, entry in (overrides or {}).items():
        page = page.with_entry(key, entry)
    logger.info(f"{page} (order bound {page.order_bound()}, presented)")
    return page


def _h3_u1_entry(group, long_running):
    label = 'H3(J, U(1))'
    if group.order > settings.COCHAIN_U1_MAX_ORDER:
        return Entry(label)
    try:
        value = cohomology_u1(group, 3, long_running=long_running)
    except SizeCapExceededError as exc:
        logger.warning(f"{label} for {group} left unknown: {exc}")
        return Entry(label)
    return Entry(label, value, Provenance.COMPUTED)
