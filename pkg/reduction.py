# reduction.py
"""Twins, reduced graphs and the cograph / self-complementary classifiers."""

from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from config import ISOMORPHISM_LIMIT
from graph import Graph, complement, delete_vertices, iter_bits
from utils import setup_logging

logger = setup_logging(__name__)


class IsomorphismLimitError(ValueError):
    """Order above the isomorphism search limit."""


@dataclass(frozen=True)
class TwinClasses:
    """Partitions by open neighbourhood N(v) and closed neighbourhood N[v].

    Classes are sorted and listed by least member.
    """

    open_classes: Tuple[Tuple[int, ...], ...]
    closed_classes: Tuple[Tuple[int, ...], ...]

    def open_pairs(self) -> List[Tuple[int, int]]:
        return [(c[i], c[j]) for c in self.open_classes for i in range(len(c)) for j in range(i + 1, len(c))]

    def closed_pairs(self) -> List[Tuple[int, int]]:
        return [(c[i], c[j]) for c in self.closed_classes for i in range(len(c)) for j in range(i + 1, len(c))]


def _partition(keys: List[int]) -> Tuple[Tuple[int, ...], ...]:
    groups: Dict[int, List[int]] = defaultdict(list)
    for v, key in enumerate(keys):
        groups[key].append(v)
    return tuple(sorted((tuple(members) for members in groups.values()), key=lambda c: c[0]))


def twin_classes(g: Graph) -> TwinClasses:
    return TwinClasses(
        open_classes=_partition(list(g.rows)),
        closed_classes=_partition([row | (1 << v) for v, row in enumerate(g.rows)]),
    )


def is_reduced(g: Graph) -> bool:
    """No open twins and no isolated vertices. Closed twins are allowed."""
    if any(row == 0 for row in g.rows):
        return False
    return len(set(g.rows)) == g.order


def reduce(g: Graph) -> Graph:
    """Delete isolated vertices and all but the least member of every open-twin class, until reduced.

    n+ and n- are preserved; ``origin`` maps each surviving vertex to its label in ``g``.
    """
    current = g
    while current.order and not is_reduced(current):
        drop = {v for v, row in enumerate(current.rows) if row == 0}
        for members in twin_classes(current).open_classes:
            drop.update(members[1:])
        logger.debug(f"Reducing order {current.order}: deleting {sorted(drop)}")
        current = delete_vertices(current, drop)
    if current is g:
        return Graph(g.order, g.rows, tuple(g.label(v) for v in range(g.order)))
    return current


def is_cograph(g: Graph) -> bool:
    """True iff ``g`` has no induced P4.

    Every induced path a-b-c-d has a middle edge bc with a in N(b) minus
    N[c] and d in N(c) minus N[b], and a not adjacent to d.
    """
    for b in range(g.order):
        for c in iter_bits(g.rows[b]):
            ends_b = g.rows[b] & ~g.rows[c] & ~(1 << c)
            ends_c = g.rows[c] & ~g.rows[b] & ~(1 << b)
            if not ends_b or not ends_c:
                continue
            for a in iter_bits(ends_b):
                if ends_c & ~g.rows[a]:
                    return False
    return True


def _refine(g: Graph, h: Graph) -> Optional[Tuple[List[int], List[int]]]:
    """Joint colour refinement of ``g`` and ``h``; None when the colourings already differ."""
    colours_g = g.degrees()
    colours_h = h.degrees()
    classes = len(set(colours_g) | set(colours_h))
    while True:
        sig_g = [(colours_g[v], tuple(sorted(colours_g[u] for u in iter_bits(g.rows[v])))) for v in range(g.order)]
        sig_h = [(colours_h[v], tuple(sorted(colours_h[u] for u in iter_bits(h.rows[v])))) for v in range(h.order)]
        if Counter(sig_g) != Counter(sig_h):
            return None
        names = {sig: i for i, sig in enumerate(sorted(set(sig_g)))}
        colours_g = [names[sig] for sig in sig_g]
        colours_h = [names[sig] for sig in sig_h]
        if len(names) == classes:
            return colours_g, colours_h
        classes = len(names)


def _extend(g: Graph, h: Graph, order: List[int], candidates: Dict[int, List[int]],
            mapping: Dict[int, int], used: int) -> bool:
    if len(mapping) == len(order):
        return True
    v = order[len(mapping)]
    for w in candidates[v]:
        if used >> w & 1:
            continue
        if all(g.has_edge(u, v) == h.has_edge(image, w) for u, image in mapping.items()):
            mapping[v] = w
            if _extend(g, h, order, candidates, mapping, used | (1 << w)):
                return True
            del mapping[v]
    return False


def is_self_complementary(g: Graph, limit: int = ISOMORPHISM_LIMIT) -> bool:
    """True iff ``g`` is isomorphic to its complement.

    Raises:
        IsomorphismLimitError: order above ``limit``
    """
    n = g.order
    if n > limit:
        raise IsomorphismLimitError(f"Order {n} exceeds isomorphism limit {limit}")
    if n % 4 in (2, 3) or 4 * g.size != n * (n - 1):
        return False
    h = complement(g)
    refined = _refine(g, h)
    if refined is None:
        return False
    colours_g, colours_h = refined
    by_colour: Dict[int, List[int]] = defaultdict(list)
    for w, colour in enumerate(colours_h):
        by_colour[colour].append(w)
    candidates = {v: by_colour[colours_g[v]] for v in range(n)}
    order = sorted(range(n), key=lambda v: (len(candidates[v]), v))
    return _extend(g, h, order, candidates, {}, 0)
