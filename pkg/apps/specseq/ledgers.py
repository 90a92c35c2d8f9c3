"""
Ledgers for the centralizer 2^(1+24).Co1 of a 2B involution.

Most entries are quoted; the H^0 and H^1 dimensions of the long exact
sequence for 2 -> Alt2(V) -> Alt2(V)/<w> are recomputed from the bundled
presentation and generator matrices.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Tuple

from apps.core.constants import Provenance
from apps.exactlin.abelian import FiniteAbelianGroup
from apps.foxone.fox import abelianization_rank, h1_dimension
from apps.repfun.functors import alt2
from apps.repfun.invariants import fixed_points, quotient_by_invariants
from apps.repfun.representations import MatrixRep
from apps.workbench.datasets import co1_presentation, co1_rep, quoted_constants
from .pages import E2PageDeg3, Entry

logger = logging.getLogger('apps.specseq')


def _quoted(constants, key, label, as_group=False, exponent=False):
    item = constants[key]
    value = FiniteAbelianGroup.parse(item['value']) if as_group else item['value']
    if exponent:
        return Entry(label, None, Provenance.QUOTED, exponent_bound=value, citation=item['citation'])
    return Entry(label, value, Provenance.QUOTED, citation=item['citation'])


def co1_extraspecial_ledger(compute_h1=False, constants=None):
    """
    Total-degree-3 ledger for 2^(1+24).Co1.

    Args:
        compute_h1: Recompute H^1(Co1, 2^274.2) by Fox calculus (slow)
        constants: Quoted constants mapping (default: the bundled file)

    Returns:
        E2PageDeg3 with exponent bounds 4, 2, 2 and H^3(Co1, U(1)) = Z12
    """
    constants = constants or quoted_constants()
    h1_label = 'H1(Co1, H2(2^(1+24), U(1)))'
    h1_entry = _quoted(constants, 'extraspecial_h2_exponent', h1_label, exponent=True)
    if compute_h1:
        quotient = quotient_by_invariants(alt2(co1_rep()))
        dimension = h1_dimension(co1_presentation(), quotient)
        h1_entry = Entry(h1_label, FiniteAbelianGroup.elementary(2, dimension), Provenance.COMPUTED,
                         exponent_bound=h1_entry.exponent_bound)
    page = E2PageDeg3(
        name='2^(1+24).Co1',
        h0_h3=_quoted(constants, 'extraspecial_h3_exponent',
                      'H0(Co1, H3(2^(1+24), U(1)))', exponent=True),
        h1_h2=h1_entry,
        h2_h1=_quoted(constants, 'extraspecial_h1_exponent',
                      'H2(Co1, H1(2^(1+24), U(1)))', exponent=True),
        h3_h0=_quoted(constants, 'co1_h3_u1', 'H3(Co1, U(1))', as_group=True),
        notes=('H1(2^(1+24), U(1)) = 2^24', 'H2(2^(1+24), U(1)) = 2^274.2'),
    )
    logger.info(f"{page}: pullback multiplier {page.pullback_multiplier()}")
    return page


def pullback_multiplier(page=None):
    """16 for the Co1 ledger: 16 times any class is pulled back from Co1."""
    return (page or co1_extraspecial_ledger()).pullback_multiplier()


def order_bound(page=None):
    return (page or co1_extraspecial_ledger()).order_bound()


LES_COLUMNS = ('2', 'Alt2(V)', 'Alt2(V)/<w>')


@dataclass(frozen=True)
class LesTable:
    """
    F_2-dimensions of H^i(Co1, -) along 2 -> Alt2(V) -> Alt2(V)/<w>.

    rows maps a degree to one Entry per column.
    """
    rows: Dict[int, Tuple[Entry, ...]]
    columns: Tuple[str, ...] = LES_COLUMNS

    def dimensions(self):
        """The known dimensions along the sequence, in order, stopping at the first unknown."""
        sequence = []
        for degree in sorted(self.rows):
            for entry in self.rows[degree]:
                if entry.value is None:
                    return sequence
                sequence.append(entry.value)
        return sequence

    def map_ranks(self):
        """
        Ranks of the maps out of each known term, by exactness.

        The first map 0 -> H^0(Co1, 2) has rank 0, and rank(out of t) =
        dim t - rank(into t).
        """
        ranks, incoming = [], 0
        for dimension in self.dimensions():
            outgoing = dimension - incoming
            ranks.append(outgoing)
            incoming = outgoing
        return ranks

    def h2_middle_lower_bound(self):
        """
        dim H^2(Co1, Alt2(V)) >= dim H^2(Co1, 2) - rank of the connecting map into it.
        """
        ranks = self.map_ranks()
        connecting = ranks[5] if len(ranks) > 5 else None
        h2_trivial = self.rows[2][0].value
        if connecting is None or h2_trivial is None:
            return None
        return h2_trivial - connecting

    def __str__(self):
        lines = ['H^i | ' + ' | '.join(self.columns)]
        for degree in sorted(self.rows):
            lines.append(f"H^{degree} | " + ' | '.join(e.display() for e in self.rows[degree]))
        return '\n'.join(lines)


def co1_les_table(compute_h1=False, constants=None):
    """
    The long-exact-sequence dimension table over Co1.

    H^0 and H^1(Co1, 2) are always computed; H^1 of the exterior square and its
    quotient by the invariant form are computed with compute_h1 and quoted
    otherwise. H^2(Co1, 2) = 1 is quoted and H^2(Co1, Alt2(V)) is unknown.

    Returns:
        LesTable with rows (1, 1, 0), (0, 1, 1), (1, ?, ?)
    """
    constants = constants or quoted_constants()
    presentation, rep = co1_presentation(), co1_rep()
    square = alt2(rep)
    quotient = quotient_by_invariants(square)
    trivial = MatrixRep.trivial(presentation, 2)

    def computed(label, value):
        return Entry(label, value, Provenance.COMPUTED)

    h0 = tuple(computed(f"H0(Co1, {column})", fixed_points(module).rows)
               for column, module in zip(LES_COLUMNS, (trivial, square, quotient)))
    h1_trivial = computed('H1(Co1, 2)', abelianization_rank(presentation, 2))
    if compute_h1:
        h1_square = computed('H1(Co1, Alt2(V))', h1_dimension(presentation, square))
        h1_quotient = computed('H1(Co1, Alt2(V)/<w>)', h1_dimension(presentation, quotient))
    else:
        h1_square = _quoted_dimension(constants, 'co1_h1_alt2', 'H1(Co1, Alt2(V))')
        h1_quotient = _quoted_dimension(constants, 'co1_h1_alt2_quotient', 'H1(Co1, Alt2(V)/<w>)')
    h2 = (
        _quoted(constants, 'co1_h2_f2', 'H2(Co1, 2)'),
        Entry('H2(Co1, Alt2(V))'),
        Entry('H2(Co1, Alt2(V)/<w>)'),
    )
    table = LesTable(rows={0: h0, 1: (h1_trivial, h1_square, h1_quotient), 2: h2})
    logger.info(f"Co1 long exact sequence:\n{table}")
    return table


def _quoted_dimension(constants, key, label):
    item = constants[key]
    group = FiniteAbelianGroup.parse(item['value'])
    return Entry(label, group.p_rank(2), Provenance.QUOTED, citation=item['citation'])
