"""
Reproduce suites: each recomputes a published value and sets it next to the
expected one.

A suite is a function of a SuiteContext returning SuiteRow objects in a fixed
order. Rows whose expected value is a quoted constant carry its citation.
"""

import logging
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

from apps.chern16.characters import (
    merged_decomposition_matrix,
    quoted_decomposition_matrix,
)
from apps.chern16.ring import (
    c2_restricted,
    chern_constants,
    random_merged_column,
    sym_power_defining,
    verify_monster_divisibility,
)
from apps.cochain.cochains import Cochain
from apps.cochain.cohomology import cohomology_module, cohomology_u1
from apps.cochain.modules import CyclicModule
from apps.core.constants import Provenance, Suite
from apps.exactlin.abelian import FiniteAbelianGroup
from apps.foxone.fox import abelianization_rank, h1, h1_dimension
from apps.groupkit.presentations import presentation_from_table
from apps.groupkit.tables import (
    alternating,
    cyclic,
    dicyclic,
    dihedral,
    elementary_abelian,
    symmetric,
)
from apps.repfun.functors import alt2
from apps.repfun.invariants import fixed_points, quotient_by_invariants
from apps.repfun.representations import MatrixRep
from apps.specseq.kunneth import cyclic_integral_cohomology, kunneth_degree4_Z
from apps.specseq.primes import large_primes_table, small_primes_table, square_h3_p_part
from apps.tdual.datum import (
    complete_datum,
    dual_total_group,
    dualize,
    random_datum,
    total_group,
    validate,
)
from .datasets import co1_presentation, co1_rep, quoted_constants

logger = logging.getLogger('apps.workbench')

ROW_HEADERS = ('suite', 'claim', 'expected', 'computed', 'match', 'citation')
DEFAULT_SUITES = (
    Suite.LARGE_PRIMES, Suite.SMALL_PRIMES, Suite.CO1_H1, Suite.CHERN,
    Suite.KUNNETH, Suite.CYCLIC, Suite.TDUAL, Suite.ORACLE,
)
CHERN_SAMPLES = 1000
TDUAL_SAMPLES = 100
CENTRALIZER_PATTERN = re.compile(r'^(?P<p>\d+)\^\(1\+(?P<d>\d+)\)')


@dataclass(frozen=True)
class SuiteContext:
    """Options shared by every suite of one reproduce run."""
    seed: int
    budget_seconds: int = None
    long_running: bool = False

    def rng(self, offset=0):
        return np.random.default_rng(self.seed + offset)


@dataclass(frozen=True)
class SuiteRow:
    """One claim of a suite with its expected and recomputed values."""
    suite: str
    claim: str
    expected: str
    computed: str
    match: bool
    provenance: str = Provenance.COMPUTED
    citation: str = ''

    @classmethod
    def compare(cls, suite, claim, expected, computed, citation='', show=str):
        provenance = Provenance.QUOTED if citation else Provenance.COMPUTED
        return cls(suite, claim, show(expected), show(computed), expected == computed,
                   provenance, citation)

    def as_tuple(self):
        return (self.suite, self.claim, self.expected, self.computed, self.match, self.citation)


def _quoted(key):
    entry = quoted_constants()[key]
    return entry['value'], entry['citation']


# ===== suites =====

def large_primes_suite(context):
    """The p-part of H^3(M, U(1)) vanishes for p = 11 and p >= 17."""
    rows = []
    for row in large_primes_table():
        rows.append(SuiteRow.compare(
            Suite.LARGE_PRIMES, f"H3(M, U(1))_({row.p}) via {row.route}",
            FiniteAbelianGroup.trivial(), row.h3_p_part, citation=row.citation,
        ))
    return rows


def small_primes_suite(context):
    """d = 24 / (p - 1) against the extraspecial exponent of the quoted centralizer."""
    rows = []
    for row in small_primes_table():
        match = CENTRALIZER_PATTERN.match(row.centralizer)
        if not match or int(match.group('p')) != row.p:
            raise ValidationError(_('Cannot read the centralizer %(c)s.'),
                                  params={'c': row.centralizer})
        rows.append(SuiteRow.compare(
            Suite.SMALL_PRIMES, f"p = {row.p}: d in {row.centralizer} (X = {row.x_group})",
            int(match.group('d')), row.d, citation=row.citation,
        ))
    return rows


def co1_h1_suite(context):
    """H^0 and H^1 of Co1 with coefficients in Alt2(V) and its quotient."""
    presentation = co1_presentation()
    square = alt2(co1_rep())
    quotient = quotient_by_invariants(square)
    rows = [
        SuiteRow.compare(Suite.CO1_H1, 'dim H0(Co1, Alt2(V))', 1, fixed_points(square).rows),
        SuiteRow.compare(Suite.CO1_H1, 'dim H0(Co1, Alt2(V)/<w>)', 0,
                         fixed_points(quotient).rows),
        SuiteRow.compare(Suite.CO1_H1, 'dim H1(Co1, F2)', 0, abelianization_rank(presentation, 2)),
    ]
    for key, claim, module in (('co1_h1_alt2', 'H1(Co1, Alt2(V))', square),
                               ('co1_h1_alt2_quotient', 'H1(Co1, Alt2(V)/<w>)', quotient)):
        value, citation = _quoted(key)
        rows.append(SuiteRow.compare(Suite.CO1_H1, claim, FiniteAbelianGroup.parse(value),
                                     h1(presentation, module), citation=citation))
    return rows


def _matrix_text(matrix):
    return '; '.join(' '.join(str(v) for v in matrix.row(r)) for r in range(matrix.rows))


def chern_suite(context):
    """The merged matrix, the c2 constants and the vanishing of restricted c2."""
    _value, matrix_citation = _quoted('merged_decomposition_matrix')
    square, square_citation = _quoted('c1_v1_squared')
    constants = chern_constants()
    rows = [
        SuiteRow.compare(Suite.CHERN, '4x7 merged decomposition matrix',
                         quoted_decomposition_matrix(), merged_decomposition_matrix(),
                         citation=matrix_citation, show=_matrix_text),
        SuiteRow.compare(Suite.CHERN, 'c1(V1)^2', square,
                         (constants.totals['V1'] * constants.totals['V1']).degree4,
                         citation=square_citation),
        SuiteRow.compare(Suite.CHERN, 'Sym^4(V6)', 'V0 + V2 + V3 + V4',
                         ' + '.join(sym_power_defining(4).summands())),
        SuiteRow.compare(Suite.CHERN, 'c2(V4)', 4, constants.c2('V4')),
        SuiteRow.compare(Suite.CHERN, 'c2(V5)', 9, constants.c2('V5')),
        SuiteRow.compare(Suite.CHERN, 'c2(V2 + V3) mod 16', 0,
                         constants.c2_v2_plus_v3.degree4),
    ]
    rng = context.rng()
    nonzero = 0
    for _sample in range(CHERN_SAMPLES):
        column = random_merged_column(rng)
        if verify_monster_divisibility(column).passed and c2_restricted(column):
            nonzero += 1
    rows.append(SuiteRow.compare(
        Suite.CHERN, f"columns with c2 != 0 among {CHERN_SAMPLES} divisible columns", 0, nonzero,
    ))
    return rows


def kunneth_suite(context):
    """Degree-3 U(1)-cohomology of p^2 by the bar complex and by the Kunneth formula."""
    rows = []
    for p in (2, 3):
        group = elementary_abelian(p, 2)
        factor = cyclic_integral_cohomology(p)
        rows.append(SuiteRow.compare(
            Suite.KUNNETH, f"H3(Z{p} x Z{p}, U(1))", kunneth_degree4_Z(factor, factor),
            cohomology_u1(group, 3, budget_seconds=context.budget_seconds, long_running=True),
        ))
    rows.append(SuiteRow.compare(Suite.KUNNETH, 'H3((11:5)^2, U(1))_(11)',
                                 FiniteAbelianGroup.trivial(), square_h3_p_part(11, 5)))
    return rows


def cyclic_suite(context):
    """H^1(Z_n, U(1)) = Z_n and H^2 = 0 for n <= 8; H^3(Z_p, U(1)) = Z_p."""
    rows = []
    for n in range(2, 9):
        group = cyclic(n)
        rows.append(SuiteRow.compare(Suite.CYCLIC, f"H1(Z{n}, U(1))",
                                     FiniteAbelianGroup.cyclic(n), cohomology_u1(group, 1)))
        rows.append(SuiteRow.compare(Suite.CYCLIC, f"H2(Z{n}, U(1))",
                                     FiniteAbelianGroup.trivial(), cohomology_u1(group, 2)))
    for p in (2, 3, 5):
        rows.append(SuiteRow.compare(Suite.CYCLIC, f"H3(Z{p}, U(1))",
                                     FiniteAbelianGroup.cyclic(p), cohomology_u1(cyclic(p), 3)))
    return rows


def identify(group, candidates):
    """Name of the first candidate with the same fingerprint, else the group's own name."""
    for name, candidate in candidates.items():
        if candidate.fingerprint() == group.fingerprint():
            return name
    return str(group)


def tdual_configurations():
    """(J, |n|, generator multipliers) over Z2, Z2^2 and S3."""
    z2, klein, s3 = cyclic(2), elementary_abelian(2, 2), symmetric(3)
    return [
        (z2, 2, None), (z2, 4, [3]), (z2, 3, [2]),
        (klein, 2, None), (klein, 4, [3, 1]),
        (s3, 2, None), (s3, 3, [2, 1]), (s3, 4, [3, 1]),
    ]


def z2_example():
    """n = J = Z2 with kappa(1, 1) = 1 and alpha = 0, beta solved."""
    z2 = cyclic(2)
    module = CyclicModule.trivial(z2, 2)
    return complete_datum(module, Cochain(z2, module, 2, [1]), Cochain.zero(z2, module.dual(), 2))


def tdual_suite(context):
    """Random data validate and dualize involutively; the Z2 example gives Z4 and Z2^2."""
    rng = context.rng(1)
    configurations = tdual_configurations()
    invalid = not_involutive = 0
    for i in range(TDUAL_SAMPLES):
        group, order, multipliers = configurations[i % len(configurations)]
        datum = random_datum(group, order, rng, multipliers)
        if validate(datum) is not None:
            invalid += 1
            continue
        dual = dualize(datum)
        if validate(dual) is not None:
            invalid += 1
        elif dualize(dual) != datum:
            not_involutive += 1
    example = z2_example()
    candidates = {'Z4': cyclic(4), 'Z2 x Z2': elementary_abelian(2, 2)}
    rows = [
        SuiteRow.compare(Suite.TDUAL, f"invalid data or duals among {TDUAL_SAMPLES}", 0, invalid),
        SuiteRow.compare(Suite.TDUAL, 'dualize(dualize(D)) != D', 0, not_involutive),
        SuiteRow.compare(Suite.TDUAL, 'n = J = Z2, kappa != 0, alpha = 0: G', 'Z4',
                         identify(total_group(example), candidates)),
        SuiteRow.compare(Suite.TDUAL, 'n = J = Z2, kappa != 0, alpha = 0: dual G', 'Z2 x Z2',
                         identify(dual_total_group(example), candidates)),
    ]
    return rows


def oracle_cases():
    """(group, MatrixRep on its table) of order <= 24 and dimension <= 6."""
    groups = (cyclic(4), cyclic(6), dihedral(6), dihedral(8), dicyclic(8), dicyclic(12),
              elementary_abelian(2, 2), elementary_abelian(3, 2), symmetric(3), alternating(4),
              symmetric(4))
    cases = []
    for group in groups:
        cases.append((group, MatrixRep.trivial(group, 2)))
        cases.append((group, MatrixRep.trivial(group, 3)))
    for group in (symmetric(3), alternating(4), symmetric(4)):
        cases.append((group, MatrixRep.permutation(group, 2)))
        cases.append((group, MatrixRep.permutation(group, 3)))
    for group in (cyclic(4), cyclic(6), symmetric(3)):
        cases.append((group, MatrixRep.regular(group, 2)))
        cases.append((group, MatrixRep.regular(group, 3)))
    cases.append((symmetric(4), alt2(MatrixRep.permutation(symmetric(4), 3))))
    return cases


def oracle_suite(context):
    """Fox-calculus H^1 against the bar complex on every corpus case."""
    rows = []
    for group, rep in oracle_cases():
        presentation = presentation_from_table(group)
        dimension = h1_dimension(presentation, rep.on_presentation(presentation))
        rows.append(SuiteRow.compare(
            Suite.ORACLE, f"H1({group}, {rep}) mod {rep.modulus}",
            cohomology_module(group, rep, 1),
            FiniteAbelianGroup.elementary(rep.modulus, dimension),
        ))
    return rows


def q16_suite(context):
    """H^3 of the binary dihedral group of order 16 with U(1) coefficients."""
    if not context.long_running:
        raise ValidationError(_('The q16 suite runs only with --long-running.'))
    value, citation = _quoted('q16_h3_u1')
    computed = cohomology_u1(dicyclic(16), 3, budget_seconds=context.budget_seconds,
                             long_running=True)
    return [SuiteRow.compare(Suite.Q16, 'H3(Q16, U(1))', FiniteAbelianGroup.parse(value),
                             computed, citation=citation)]


SUITES = {
    Suite.LARGE_PRIMES: large_primes_suite,
    Suite.SMALL_PRIMES: small_primes_suite,
    Suite.CO1_H1: co1_h1_suite,
    Suite.CHERN: chern_suite,
    Suite.KUNNETH: kunneth_suite,
    Suite.CYCLIC: cyclic_suite,
    Suite.TDUAL: tdual_suite,
    Suite.ORACLE: oracle_suite,
    Suite.Q16: q16_suite,
}


def expand_suites(names):
    """Suite values in request order; 'all' stands for every default suite."""
    expanded = []
    for name in names:
        for suite in (DEFAULT_SUITES if name == Suite.ALL else (Suite(name),)):
            if suite not in expanded:
                expanded.append(suite)
    return expanded


def run_suite(suite, context):
    rows = SUITES[Suite(suite)](context)
    failed = sum(not row.match for row in rows)
    if failed:
        logger.warning(f"Suite {suite}: {failed} of {len(rows)} rows do not match")
    else:
        logger.info(f"Suite {suite}: all {len(rows)} rows match")
    return rows


def run_suites(names, context, workers=1):
    """
    Run suites, in parallel with workers > 1; rows come back in suite order.

    Returns:
        List of SuiteRow
    """
    suites = expand_suites(names)
    if workers > 1 and len(suites) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda suite: run_suite(suite, context), suites))
    else:
        results = [run_suite(suite, context) for suite in suites]
    return [row for rows in results for row in rows]


def default_context(seed=None, budget_seconds=None, long_running=False):
    return SuiteContext(
        seed=settings.WORKBENCH_RANDOM_SEED if seed is None else seed,
        budget_seconds=budget_seconds,
        long_running=long_running,
    )
