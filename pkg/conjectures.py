# conjectures.py
"""Checker registry for the inertia conjectures and the theorems used as tests.

Every checker returns ``CheckResult`` objects carrying the two sides of its
inequality (``lhs <= rhs``), the margin ``rhs - lhs`` and a verdict.
Checkers that only need the inertia take an ``Inertia`` so spectrum
fixtures go through the same code as constructed graphs.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from config import CYCLE_LIMIT, ENERGY_TOLERANCE, EXACT_LIMIT, LARGE_LAMBDA_SLACK
from constructions import SpectrumSpec, inertia_from_spectrum, line_graph, srg_parameters, srg_spectrum
from graph import (
    Graph, adjacency_matrix, complement, is_connected, is_tree, iter_bits, laplacian_matrix, write_graph6
)
from inertia import Inertia, check_energy_bounds, count_eigenvalues_in_interval, graph_inertia, shifted_inertia
from reduction import is_cograph, is_reduced, is_self_complementary
from utils import ceil_half, setup_logging

logger = setup_logging(__name__)

HOLDS = "holds"
TIGHT = "tight"
VIOLATED = "violated"
NOT_APPLICABLE = "not_applicable"

# n(k) and n+(k) for reduced graphs with n- = k
TORGASEV_TABLE = {1: (2, 1), 2: (6, 3), 3: (14, 6)}


class CycleLimitError(ValueError):
    """Order above the cycle-enumeration limit."""


class UnknownCheckError(ValueError):
    """Check id not in the registry."""


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    verdict: str
    lhs: Optional[int] = None
    rhs: Optional[int] = None
    margin: Optional[int] = None
    note: str = ""

    def to_dict(self) -> Dict:
        data = {
            'check': self.check_id,
            'verdict': self.verdict,
            'lhs': self.lhs,
            'rhs': self.rhs,
            'margin': self.margin,
        }
        if self.note:
            data['note'] = self.note
        return data


def compare(check_id: str, lhs: int, rhs: int, note: str = "") -> CheckResult:
    """Verdict for ``lhs <= rhs``."""
    margin = rhs - lhs
    if margin < 0:
        verdict = VIOLATED
    elif margin == 0:
        verdict = TIGHT
    else:
        verdict = HOLDS
    return CheckResult(check_id, verdict, lhs, rhs, margin, note)


def not_applicable(check_id: str, note: str) -> CheckResult:
    return CheckResult(check_id, NOT_APPLICABLE, note=note)


@dataclass(frozen=True)
class CycleCounts:
    """Odd cycles by length mod 4: ``c3`` for 3 (mod 4), ``c5`` for 1 (mod 4)."""

    c1: int
    c3: int
    c5: int


@dataclass
class ConjectureReport:
    graph_id: str
    order: int
    size: Optional[int]
    inertia: Inertia
    results: List[CheckResult]
    reduced: Optional[bool]
    elapsed: Optional[float] = None
    line: Optional[int] = None

    @property
    def signature(self) -> int:
        return self.inertia.signature

    @property
    def rank(self) -> int:
        return self.inertia.rank

    def tight_checks(self) -> List[str]:
        return [r.check_id for r in self.results if r.verdict == TIGHT]

    def conjecture_violations(self) -> List[CheckResult]:
        return [r for r in self.results if r.verdict == VIOLATED and r.check_id not in PROVEN_IDS]

    def theorem_violations(self) -> List[CheckResult]:
        return [r for r in self.results if r.verdict == VIOLATED and r.check_id in PROVEN_IDS]

    def result(self, check_id: str) -> CheckResult:
        for r in self.results:
            if r.check_id == check_id:
                return r
        raise KeyError(check_id)

    def to_dict(self) -> Dict:
        data = {'graph': self.graph_id}
        if self.line is not None:
            data['line'] = self.line
        data.update({
            'order': self.order,
            'size': self.size,
            'inertia': self.inertia.to_dict(),
            'signature': self.signature,
            'rank': self.rank,
            'reduced': self.reduced,
            'results': [r.to_dict() for r in self.results],
        })
        if self.elapsed is not None:
            data['elapsed'] = round(self.elapsed, 6)
        return data


# ---------------------------------------------------------------------------
# inertia-level checks

def check_main(i: Inertia) -> CheckResult:
    """2n+ <= n-(n- + 1)."""
    return compare('main', 2 * i.n_plus, i.n_minus * (i.n_minus + 1))


def check_signature_form(i: Inertia) -> CheckResult:
    """s <= C(n-, 2); same verdict as ``check_main`` on every triple."""
    return compare('signature_form', i.signature, i.n_minus * (i.n_minus - 1) // 2)


def check_weaker_conjecture(i: Inertia) -> CheckResult:
    """2n <= (n - n+)(n - n+ + 3)."""
    n = i.order
    k = n - i.n_plus
    return compare('weaker', 2 * n, k * (k + 3))


def check_absolute_bound(s: SpectrumSpec) -> List[CheckResult]:
    """2n <= f(f + 3) and 2n <= g(g + 3) for a primitive three-eigenvalue spectrum ``d^1, r^f, s^g``."""
    ids = ('absolute_bound.f', 'absolute_bound.g')
    pairs = s.pairs
    if len(pairs) != 3 or pairs[0][1] != 1:
        return [not_applicable(c, "needs exactly three distinct eigenvalues, the largest simple") for c in ids]
    (_, _), (r, f), (low, g) = pairs
    if not (r.is_positive and (low + 1).is_negative):
        return [not_applicable(c, "imprimitive spectrum (needs r > 0 and s < -1)") for c in ids]
    n = s.order
    return [compare(ids[0], 2 * n, f * (f + 3)), compare(ids[1], 2 * n, g * (g + 3))]


# ---------------------------------------------------------------------------
# graph-level checks

def check_line_graph_conjecture(g: Graph, allow_approximate: bool = False) -> CheckResult:
    """n+(L(G)) <= n-(L(G)) + 1 for connected G."""
    if not is_connected(g) or g.order == 0:
        return not_applicable('line_graph', "graph is disconnected")
    li = graph_inertia(line_graph(g), allow_approximate)
    note = "dense: m >= 2n - 1" if g.size >= 2 * g.order - 1 else ""
    return compare('line_graph', li.n_plus, li.n_minus + 1, note)


def count_cycles_mod4(g: Graph, limit: int = CYCLE_LIMIT) -> CycleCounts:
    """Count simple cycles of odd length, each once.

    Paths are grown from the least vertex of the cycle through larger
    vertices only (subset DP), so every cycle is found exactly twice, once
    per direction.

    Raises:
        CycleLimitError: order above ``limit``
    """
    n = g.order
    if n > limit:
        raise CycleLimitError(f"Order {n} exceeds cycle-enumeration limit {limit}")
    by_length = [0] * (n + 1)
    for start in range(n):
        above = ~((1 << (start + 1)) - 1)
        # paths of one length at a time: mask -> {end vertex: count}
        paths: Dict[int, Dict[int, int]] = {1 << start: {start: 1}}
        while paths:
            grown: Dict[int, Dict[int, int]] = {}
            for mask, ends in paths.items():
                length = bin(mask).count("1")
                for v, ways in ends.items():
                    if length >= 3 and g.rows[v] >> start & 1:
                        by_length[length] += ways
                    for w in iter_bits(g.rows[v] & above & ~mask):
                        bucket = grown.setdefault(mask | (1 << w), {})
                        bucket[w] = bucket.get(w, 0) + ways
            paths = grown
    c3 = sum(by_length[k] for k in range(3, n + 1) if k % 4 == 3) // 2
    c5 = sum(by_length[k] for k in range(5, n + 1) if k % 4 == 1) // 2
    return CycleCounts(c3 + c5, c3, c5)


def check_ma_yang_li(g: Graph, i: Inertia) -> List[CheckResult]:
    """-c3 <= s <= c5 (conjectured) and |s| <= c1 (proven).

    The conjectured bound is reported on its binding side.
    """
    counts = count_cycles_mod4(g)
    s = i.signature
    if counts.c5 - s <= s + counts.c3:
        two_sided = compare('ma_yang_li', s, counts.c5, f"upper side; c3={counts.c3}")
    else:
        two_sided = compare('ma_yang_li', -counts.c3, s, f"lower side; c5={counts.c5}")
    return [two_sided, compare('ma_yang_li.odd_cycles', abs(s), counts.c1)]


def check_torgasev(g: Graph, i: Inertia, reduced: Optional[bool] = None) -> CheckResult:
    """Order and n+ bounds for reduced graphs with n- in {1, 2, 3}."""
    if not (is_reduced(g) if reduced is None else reduced) or g.order == 0:
        return not_applicable('torgasev', "graph is not reduced")
    if i.n_minus not in TORGASEV_TABLE:
        return not_applicable('torgasev', f"tabulated only for n- in 1..3, got {i.n_minus}")
    max_order, max_plus = TORGASEV_TABLE[i.n_minus]
    if g.order > max_order:
        return compare('torgasev', g.order, max_order, "order bound")
    return compare('torgasev', i.n_plus, max_plus, f"order {g.order} <= {max_order}")


def check_mohammadian_order(g: Graph, i: Inertia, reduced: Optional[bool] = None) -> CheckResult:
    """n <= 2^(n- + 1) - 2 for reduced graphs."""
    if not (is_reduced(g) if reduced is None else reduced) or g.order == 0:
        return not_applicable('mohammadian_order', "graph is not reduced")
    return compare('mohammadian_order', g.order, 2 ** (i.n_minus + 1) - 2)


def rank_order_limit(r: int) -> int:
    if r % 2 == 0:
        return 2 ** ((r + 2) // 2) - 2
    return 5 * 2 ** ((r - 3) // 2) - 2


def check_rank_order_bound(g: Graph, i: Inertia, reduced: Optional[bool] = None) -> CheckResult:
    """n <= m(r) for reduced graphs of rank r >= 2."""
    if not (is_reduced(g) if reduced is None else reduced) or g.order == 0:
        return not_applicable('rank_order', "graph is not reduced")
    if i.rank < 2:
        return not_applicable('rank_order', f"rank {i.rank} < 2")
    return compare('rank_order', g.order, rank_order_limit(i.rank))


def check_graph_absolute_bound(g: Graph) -> List[CheckResult]:
    params = srg_parameters(g)
    if params is None:
        return [not_applicable(c, "not strongly regular") for c in ('absolute_bound.f', 'absolute_bound.g')]
    return check_absolute_bound(srg_spectrum(*params))


def check_energy(g: Graph, allow_approximate: bool = False, tolerance: float = ENERGY_TOLERANCE) -> CheckResult:
    """n+ <= n-(2|λn| - 1), tightened by 1.1 when λ1 >= 3.3, plus rank <= E <= 2|λn|n-.

    A failing energy bound is reported through an integer pair that keeps
    the margin negative.
    """
    if g.order == 0:
        return not_applicable('energy', "empty graph")
    report = check_energy_bounds(g, tolerance, allow_approximate)
    note = f"E={report.energy:.6f} lambda_min={report.lambda_min:.6f}"
    if not report.holds_lower:
        return compare('energy', report.n_plus + report.n_minus, math.floor(report.energy + tolerance),
                       f"{note}; E < n+ + n-")
    if not report.holds_upper:
        return compare('energy', math.ceil(report.energy - tolerance),
                       math.floor(2 * abs(report.lambda_min) * report.n_minus), f"{note}; E > 2|lambda_min| n-")
    if report.holds_strong is not None:
        rhs = math.floor(report.lemma_rhs - LARGE_LAMBDA_SLACK + tolerance)
        return compare('energy', report.n_plus, rhs, f"{note}; lambda_max >= 3.3")
    return compare('energy', report.n_plus, math.floor(report.lemma_rhs + tolerance), note)


def check_tree_laplacian(g: Graph) -> CheckResult:
    """A tree has at least ceil(n/2) Laplacian eigenvalues in [0, 2)."""
    if not is_tree(g):
        return not_applicable('tree_laplacian', "not a tree")
    count = count_eigenvalues_in_interval(laplacian_matrix(g), 0, 2, include_a=True)
    return compare('tree_laplacian', ceil_half(g.order), count)


def check_cograph_inertia(g: Graph, i: Inertia) -> CheckResult:
    """Cographs: no eigenvalue in (-1, 0) and n+ <= n-."""
    if not is_cograph(g):
        return not_applicable('cograph_inertia', "contains an induced P4")
    gap = count_eigenvalues_in_interval(adjacency_matrix(g), -1, 0)
    if gap:
        return compare('cograph_inertia', gap, 0, "eigenvalues in (-1, 0)")
    return compare('cograph_inertia', i.n_plus, i.n_minus)


def check_self_complementary(g: Graph, i: Inertia) -> CheckResult:
    """Self-complementary graphs satisfy n+ <= n- + 1."""
    if not is_self_complementary(g):
        return not_applicable('self_complementary', "not self-complementary")
    return compare('self_complementary', i.n_plus, i.n_minus + 1)


def check_line_graph_floor(g: Graph, allow_approximate: bool = False) -> CheckResult:
    """λmin(L(G)) >= -2 with -2 of multiplicity at least m - n."""
    lg = line_graph(g)
    shifted = shifted_inertia(adjacency_matrix(lg), -2, allow_approximate=allow_approximate)
    if shifted.n_minus:
        return compare('line_graph_floor', shifted.n_minus, 0, "eigenvalues below -2")
    return compare('line_graph_floor', g.size - g.order, shifted.n_zero)


def check_line_graph_bound(g: Graph, allow_approximate: bool = False) -> CheckResult:
    """n+(L(G)) <= min(3n-(L(G)), n-(L(G))(n-(L(G)) + 1)/2)."""
    li = graph_inertia(line_graph(g), allow_approximate)
    k = li.n_minus
    return compare('line_graph_bound', li.n_plus, min(3 * k, k * (k + 1) // 2))


def check_complement_inertia(g: Graph, i: Inertia, allow_approximate: bool = False) -> CheckResult:
    """n+(G) + n+(Gc) <= n + 1 and n - 1 <= n-(G) + n-(Gc), binding side reported."""
    ci = graph_inertia(complement(g), allow_approximate)
    n = g.order
    plus = i.n_plus + ci.n_plus
    minus = i.n_minus + ci.n_minus
    if n + 1 - plus <= minus - (n - 1):
        return compare('complement_inertia', plus, n + 1, "positive side")
    return compare('complement_inertia', n - 1, minus, "negative side")


# ---------------------------------------------------------------------------
# registry

@dataclass
class CheckContext:
    """One subject of a run: a graph, or a spectrum fixture with no graph."""

    inertia: Inertia
    graph: Optional[Graph] = None
    spectrum: Optional[SpectrumSpec] = None
    allow_approximate: bool = False
    _reduced: Optional[bool] = field(default=None, repr=False)

    @property
    def reduced(self) -> Optional[bool]:
        if self.graph is None:
            return None
        if self._reduced is None:
            self._reduced = is_reduced(self.graph)
        return self._reduced


@dataclass(frozen=True)
class Check:
    name: str
    result_ids: Tuple[str, ...]
    run: Callable[[CheckContext], List[CheckResult]]
    needs_graph: bool = True


def _absolute_bound(ctx: CheckContext) -> List[CheckResult]:
    if ctx.spectrum is not None:
        return check_absolute_bound(ctx.spectrum)
    return check_graph_absolute_bound(ctx.graph)


CHECKS: Dict[str, Check] = {c.name: c for c in (
    Check('main', ('main',), lambda ctx: [check_main(ctx.inertia)], needs_graph=False),
    Check('signature_form', ('signature_form',), lambda ctx: [check_signature_form(ctx.inertia)], needs_graph=False),
    Check('weaker', ('weaker',), lambda ctx: [check_weaker_conjecture(ctx.inertia)], needs_graph=False),
    Check('absolute_bound', ('absolute_bound.f', 'absolute_bound.g'), _absolute_bound, needs_graph=False),
    Check('line_graph', ('line_graph',),
          lambda ctx: [check_line_graph_conjecture(ctx.graph, ctx.allow_approximate)]),
    Check('ma_yang_li', ('ma_yang_li', 'ma_yang_li.odd_cycles'),
          lambda ctx: check_ma_yang_li(ctx.graph, ctx.inertia)),
    Check('torgasev', ('torgasev',), lambda ctx: [check_torgasev(ctx.graph, ctx.inertia, ctx.reduced)]),
    Check('mohammadian_order', ('mohammadian_order',),
          lambda ctx: [check_mohammadian_order(ctx.graph, ctx.inertia, ctx.reduced)]),
    Check('rank_order', ('rank_order',), lambda ctx: [check_rank_order_bound(ctx.graph, ctx.inertia, ctx.reduced)]),
    Check('energy', ('energy',), lambda ctx: [check_energy(ctx.graph, ctx.allow_approximate)]),
    Check('tree_laplacian', ('tree_laplacian',), lambda ctx: [check_tree_laplacian(ctx.graph)]),
    Check('cograph_inertia', ('cograph_inertia',), lambda ctx: [check_cograph_inertia(ctx.graph, ctx.inertia)]),
    Check('self_complementary', ('self_complementary',),
          lambda ctx: [check_self_complementary(ctx.graph, ctx.inertia)]),
    Check('line_graph_floor', ('line_graph_floor',),
          lambda ctx: [check_line_graph_floor(ctx.graph, ctx.allow_approximate)]),
    Check('line_graph_bound', ('line_graph_bound',),
          lambda ctx: [check_line_graph_bound(ctx.graph, ctx.allow_approximate)]),
    Check('complement_inertia', ('complement_inertia',),
          lambda ctx: [check_complement_inertia(ctx.graph, ctx.inertia, ctx.allow_approximate)]),
)}

CONJECTURE_IDS = frozenset({
    'main', 'signature_form', 'weaker', 'rank_order', 'mohammadian_order', 'line_graph', 'ma_yang_li',
})
PROVEN_IDS = frozenset(
    result_id for check in CHECKS.values() for result_id in check.result_ids
) - CONJECTURE_IDS


def parse_checks(text: str) -> Tuple[str, ...]:
    """``"main,weaker"`` or ``"all"`` to registry names, in registry order."""
    requested = {part.strip() for part in text.split(",") if part.strip()}
    if not requested:
        raise UnknownCheckError("No checks given")
    if "all" in requested:
        return tuple(CHECKS)
    unknown = sorted(requested - set(CHECKS))
    if unknown:
        raise UnknownCheckError(f"Unknown check ids {unknown}; choose from {sorted(CHECKS)} or 'all'")
    return tuple(name for name in CHECKS if name in requested)


def _run(ctx: CheckContext, enabled: Iterable[str]) -> List[CheckResult]:
    results = []
    for name in enabled:
        check = CHECKS[name]
        if check.needs_graph and ctx.graph is None:
            results.extend(not_applicable(c, "spectrum fixture has no graph") for c in check.result_ids)
            continue
        try:
            results.extend(check.run(ctx))
        except (ValueError, ArithmeticError, RuntimeError) as e:
            logger.debug(f"Check {name} not applicable: {e}")
            results.extend(not_applicable(c, str(e)) for c in check.result_ids)
    return results


def run_all_checks(g: Graph, enabled: Iterable[str] = ('main',), graph_id: Optional[str] = None,
                   allow_approximate: bool = False, exact_limit: int = EXACT_LIMIT) -> ConjectureReport:
    """Compute the inertia once and run every enabled check.

    Checker failures become ``not_applicable`` results with the error as
    note; only the inertia computation itself may raise.
    """
    i = graph_inertia(g, allow_approximate, exact_limit)
    ctx = CheckContext(i, graph=g, allow_approximate=allow_approximate)
    results = _run(ctx, enabled)
    return ConjectureReport(
        graph_id=graph_id if graph_id is not None else write_graph6(g),
        order=g.order,
        size=g.size,
        inertia=i,
        results=results,
        reduced=ctx.reduced,
    )


def run_spectrum_checks(s: SpectrumSpec, enabled: Iterable[str] = ('main', 'weaker', 'absolute_bound')
                        ) -> ConjectureReport:
    """Inertia-level checks on a spectrum fixture; graph-level checks are not_applicable."""
    i = inertia_from_spectrum(s)
    ctx = CheckContext(i, spectrum=s)
    return ConjectureReport(
        graph_id=s.name or f"spectrum({s.order})",
        order=s.order,
        size=None,
        inertia=i,
        results=_run(ctx, enabled),
        reduced=None,
    )
