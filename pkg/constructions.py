# constructions.py
"""Graph constructions, named families and spectrum fixtures."""

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import sympy

from config import FIXTURES_FILE, MAX_ORDER
from graph import Graph, GraphOrderError, VertexRangeError, complement, iter_bits
from inertia import Inertia
from utils import setup_logging

logger = setup_logging(__name__)


class FamilyParameterError(ValueError):
    """Invalid parameters for a named family."""


class SpectrumSpecError(ValueError):
    """Inconsistent spectrum fixture."""


class FixtureTableError(ValueError):
    """Fixture table unreadable or its checksum does not match."""


def _check_order(order: int) -> None:
    if order > MAX_ORDER:
        raise GraphOrderError(f"Order {order} exceeds maximum {MAX_ORDER}")


# ---------------------------------------------------------------------------
# operations

def line_graph(g: Graph) -> Graph:
    """L(G): one vertex per edge of ``g`` in lexicographic edge order.

    ``origin`` records the source edge of every vertex.
    """
    edges = g.edges()
    _check_order(len(edges))
    incident = [0] * g.order
    for i, (u, v) in enumerate(edges):
        incident[u] |= 1 << i
        incident[v] |= 1 << i
    rows = tuple((incident[u] | incident[v]) & ~(1 << i) for i, (u, v) in enumerate(edges))
    return Graph(len(edges), rows, tuple(edges))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    _check_order(g.order + h.order)
    shift = g.order
    return Graph(g.order + h.order, g.rows + tuple(row << shift for row in h.rows))


def join(g: Graph, h: Graph) -> Graph:
    """G ∨ H: disjoint union plus every edge between the two sides."""
    _check_order(g.order + h.order)
    shift = g.order
    left = (1 << shift) - 1
    right = ((1 << h.order) - 1) << shift
    rows = tuple(row | right for row in g.rows) + tuple((row << shift) | left for row in h.rows)
    return Graph(g.order + h.order, rows)


def tensor_product(g: Graph, h: Graph) -> Graph:
    """G ⊗ H on pairs ``(u, v) -> u * n(H) + v``; adjacent iff both coordinates are."""
    order = g.order * h.order
    _check_order(order)
    m = h.order
    rows = []
    for u in range(g.order):
        for v in range(m):
            row = 0
            for x in iter_bits(g.rows[u]):
                row |= h.rows[v] << (x * m)
            rows.append(row)
    return Graph(order, tuple(rows), tuple((u, v) for u in range(g.order) for v in range(m)))


def kotlov_lovasz_double(g: Graph) -> Graph:
    """The doubling that raises both n+ and n- by one.

    Vertices ``0..n-1`` form V1, ``n..2n-1`` form V2, then ``x = 2n`` and
    ``y = 2n+1``. V1 and V2 each carry the edges of ``g``, ``i`` in V1
    meets ``j`` in V2 when ``ij`` is an edge of ``g`` (never its own copy),
    ``x`` sees all of V2 and ``y``, and ``y`` sees only ``x``.
    """
    n = g.order
    _check_order(2 * n + 2)
    x, y = 2 * n, 2 * n + 1
    rows = []
    for i in range(n):
        rows.append(g.rows[i] | (g.rows[i] << n))
    for i in range(n):
        rows.append(g.rows[i] | (g.rows[i] << n) | (1 << x))
    rows.append((((1 << n) - 1) << n) | (1 << y))
    rows.append(1 << x)
    return Graph(2 * n + 2, tuple(rows))


def add_twin(g: Graph, v: int, closed: bool = False) -> Graph:
    """Append a vertex with the neighbourhood of ``v``; adjacent to ``v`` too when ``closed``."""
    if not 0 <= v < g.order:
        raise VertexRangeError(f"Vertex {v} outside 0..{g.order - 1}")
    _check_order(g.order + 1)
    new = g.order
    twin_row = g.rows[v] | ((1 << v) if closed else 0)
    rows = [row | (1 << new) if twin_row >> u & 1 else row for u, row in enumerate(g.rows)]
    rows.append(twin_row)
    return Graph(g.order + 1, tuple(rows))


# ---------------------------------------------------------------------------
# named families

H1_EDGES = ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (4, 7), (6, 7), (7, 8),
            (1, 7), (3, 6), (0, 6), (6, 8), (5, 8), (2, 8))
H2_EDGES = ((0, 1), (1, 6), (1, 2), (2, 3), (2, 4), (3, 4), (2, 5), (5, 7), (5, 8),
            (6, 8), (3, 6), (0, 4), (0, 7), (6, 7), (3, 7), (4, 8))


def path(n: int) -> Graph:
    if n < 0:
        raise FamilyParameterError("path needs n >= 0")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise FamilyParameterError("cycle needs n >= 3")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def complete(n: int) -> Graph:
    if n < 0:
        raise FamilyParameterError("complete needs n >= 0")
    return complement(Graph.empty(n))


def empty(n: int) -> Graph:
    if n < 0:
        raise FamilyParameterError("empty needs n >= 0")
    return Graph.empty(n)


def complete_multipartite(*parts: int) -> Graph:
    if not parts or any(p < 1 for p in parts):
        raise FamilyParameterError("complete_multipartite needs positive part sizes")
    result = Graph.empty(parts[0])
    for p in parts[1:]:
        result = join(result, Graph.empty(p))
    return result


def complete_bipartite(p: int, q: int) -> Graph:
    return complete_multipartite(p, q)


def star(k: int) -> Graph:
    """K(1,k) with centre 0."""
    if k < 0:
        raise FamilyParameterError("star needs k >= 0")
    return Graph.from_edges(k + 1, ((0, i) for i in range(1, k + 1)))


def triangular(n: int) -> Graph:
    """T(n) = L(K_n)."""
    if n < 2:
        raise FamilyParameterError("triangular needs n >= 2")
    return line_graph(complete(n))


def paley(q: int) -> Graph:
    """Paley graph on Z/qZ for a prime q ≡ 1 (mod 4)."""
    if q < 5 or not sympy.isprime(q):
        raise FamilyParameterError(f"paley needs a prime q (prime powers unsupported), got {q}")
    if q % 4 != 1:
        raise FamilyParameterError(f"paley needs q ≡ 1 (mod 4), got {q}")
    residues = {(x * x) % q for x in range(1, q)}
    return Graph.from_edges(q, ((i, j) for i in range(q) for j in range(i + 1, q) if (j - i) % q in residues))


def petersen() -> Graph:
    return complement(triangular(5))


def circulant(n: int, *jumps: int) -> Graph:
    if n < 1 or not jumps:
        raise FamilyParameterError("circulant needs n >= 1 and at least one jump")
    steps = {j % n for j in jumps} | {(-j) % n for j in jumps}
    steps.discard(0)
    return Graph.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n) if (j - i) % n in steps))


def tadpole(k: int, tail: int) -> Graph:
    """Cycle C_k with a path of ``tail`` extra vertices hanging from vertex 0."""
    if k < 3 or tail < 0:
        raise FamilyParameterError("tadpole needs k >= 3 and tail >= 0")
    edges = [(i, (i + 1) % k) for i in range(k)]
    previous = 0
    for t in range(tail):
        edges.append((previous, k + t))
        previous = k + t
    return Graph.from_edges(k + tail, edges)


def prism(n: int) -> Graph:
    """C_n × K_2: outer cycle 0..n-1, inner cycle n..2n-1, spokes i ~ i+n."""
    if n < 3:
        raise FamilyParameterError("prism needs n >= 3")
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(n + i, n + (i + 1) % n) for i in range(n)]
    edges += [(i, n + i) for i in range(n)]
    return Graph.from_edges(2 * n, edges)


def kayak_paddle(k: int, m: int, length: int) -> Graph:
    """Cycles C_k and C_m whose vertices 0 and k are joined by a path of ``length`` edges."""
    if k < 3 or m < 3 or length < 1:
        raise FamilyParameterError("kayak_paddle needs k, m >= 3 and length >= 1")
    edges = [(i, (i + 1) % k) for i in range(k)]
    edges += [(k + i, k + (i + 1) % m) for i in range(m)]
    inner = list(range(k + m, k + m + length - 1))
    chain = [0] + inner + [k]
    edges += list(zip(chain, chain[1:]))
    return Graph.from_edges(k + m + length - 1, edges)


def fixture_h1() -> Graph:
    return Graph.from_edges(9, H1_EDGES)


def fixture_h2() -> Graph:
    return Graph.from_edges(9, H2_EDGES)


FAMILIES: Dict[str, Callable[..., Graph]] = {
    'path': path,
    'cycle': cycle,
    'complete': complete,
    'empty': empty,
    'complete_bipartite': complete_bipartite,
    'complete_multipartite': complete_multipartite,
    'star': star,
    'triangular': triangular,
    'paley': paley,
    'petersen': petersen,
    'circulant': circulant,
    'tadpole': tadpole,
    'prism': prism,
    'kayak_paddle': kayak_paddle,
    'H1': fixture_h1,
    'H2': fixture_h2,
}


def family(name: str, *params: int) -> Graph:
    """Build a named family member, e.g. ``family("cycle", 5)``."""
    try:
        builder = FAMILIES[name]
    except KeyError:
        raise FamilyParameterError(f"Unknown family {name!r}; choose from {sorted(FAMILIES)}") from None
    try:
        return builder(*params)
    except TypeError as e:
        raise FamilyParameterError(f"Bad parameters for {name}: {params}") from e


# ---------------------------------------------------------------------------
# spectra

@dataclass(frozen=True)
class SpectrumSpec:
    """Explicit spectrum ``λ1^(m1), ..., λk^(mk)`` with strictly decreasing eigenvalues."""

    order: int
    pairs: Tuple[Tuple[sympy.Expr, int], ...]
    name: str = ""
    citation: str = ""
    regular: bool = False

    def __post_init__(self):
        total = 0
        for value, multiplicity in self.pairs:
            if multiplicity < 1:
                raise SpectrumSpecError(f"Multiplicity of {value} must be positive, got {multiplicity}")
            total += multiplicity
        if total != self.order:
            raise SpectrumSpecError(f"Multiplicities sum to {total}, declared order is {self.order}")
        for (a, _), (b, _) in zip(self.pairs, self.pairs[1:]):
            if not (a - b).is_positive:
                raise SpectrumSpecError(f"Eigenvalues must strictly decrease: {a} then {b}")

    @classmethod
    def from_strings(cls, order: int, pairs: Iterable[Tuple[str, int]], **kwargs) -> "SpectrumSpec":
        parsed = []
        for text, multiplicity in pairs:
            try:
                value = sympy.sympify(str(text), rational=True)
            except (sympy.SympifyError, TypeError) as e:
                raise SpectrumSpecError(f"Unreadable eigenvalue {text!r}") from e
            if not value.is_real:
                raise SpectrumSpecError(f"Eigenvalue {text!r} is not a real number")
            parsed.append((value, int(multiplicity)))
        return cls(order, tuple(parsed), **kwargs)

    def distinct(self) -> List[sympy.Expr]:
        return [value for value, _ in self.pairs]


def inertia_from_spectrum(s: SpectrumSpec) -> Inertia:
    plus = sum(m for value, m in s.pairs if value.is_positive)
    minus = sum(m for value, m in s.pairs if value.is_negative)
    return Inertia(plus, s.order - plus - minus, minus)


def srg_parameters(g: Graph) -> Optional[Tuple[int, int, int, int]]:
    """(n, k, λ, μ) when ``g`` is a connected, non-complete strongly regular graph."""
    n = g.order
    if n < 3:
        return None
    degrees = g.degrees()
    k = degrees[0]
    if any(d != k for d in degrees) or k == 0 or k == n - 1:
        return None
    lam = mu = None
    for u in range(n):
        for v in range(u + 1, n):
            common = bin(g.rows[u] & g.rows[v]).count("1")
            if g.has_edge(u, v):
                if lam is None:
                    lam = common
                elif lam != common:
                    return None
            else:
                if mu is None:
                    mu = common
                elif mu != common:
                    return None
    if lam is None or not mu:
        return None
    return n, k, lam, mu


def srg_spectrum(n: int, k: int, lam: int, mu: int) -> SpectrumSpec:
    """Exact spectrum ``k^1, r^f, s^g`` of SRG(n, k, λ, μ)."""
    delta = (lam - mu) ** 2 + 4 * (k - mu)
    root = sympy.sqrt(delta)
    r = sympy.Rational(lam - mu, 2) + root / 2
    s = sympy.Rational(lam - mu, 2) - root / 2
    skew = sympy.Integer(2 * k + (n - 1) * (lam - mu)) / root
    f = sympy.Rational(n - 1, 2) - skew / 2
    g = sympy.Rational(n - 1, 2) + skew / 2
    if not (f.is_Integer and g.is_Integer):
        raise SpectrumSpecError(f"SRG({n},{k},{lam},{mu}) has non-integral multiplicities")
    return SpectrumSpec(n, ((sympy.Integer(k), 1), (r, int(f)), (s, int(g))),
                        name=f"srg({n},{k},{lam},{mu})", regular=True)


# ---------------------------------------------------------------------------
# fixture table

def table_checksum(data: Dict) -> str:
    """sha256 of the canonical JSON form (sorted keys, compact) without the checksum field."""
    body = {key: value for key, value in data.items() if key != 'sha256'}
    canonical = json.dumps(body, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def load_fixture_table(path: Path = FIXTURES_FILE) -> Dict:
    """Load and verify the versioned fixture table."""
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise FixtureTableError(f"Cannot read fixture table {path}: {e}") from e
    claimed = data.get('sha256')
    actual = table_checksum(data)
    if claimed != actual:
        raise FixtureTableError(f"Fixture table checksum mismatch: recorded {claimed}, computed {actual}")
    logger.debug(f"Loaded fixture table version {data.get('version')} from {path}")
    return data


def fixture_spectra(data: Optional[Dict] = None) -> Dict[str, SpectrumSpec]:
    """Spectrum fixtures keyed by name."""
    data = data if data is not None else load_fixture_table()
    spectra = {}
    for entry in data.get('spectra', []):
        try:
            spectra[entry['name']] = SpectrumSpec.from_strings(
                entry['order'], entry['spectrum'],
                name=entry['name'], citation=entry.get('citation', ''),
                regular=bool(entry.get('regular', False)))
        except (KeyError, SpectrumSpecError) as e:
            raise FixtureTableError(f"Corrupt spectrum entry {entry!r}: {e}") from e
    return spectra


@dataclass(frozen=True)
class GraphFixture:
    name: str
    graph: Graph
    inertia: Tuple[int, int, int]
    tight: Tuple[str, ...]


def fixture_graphs(data: Optional[Dict] = None) -> List[GraphFixture]:
    """Buildable fixtures with their expected inertia and tight check ids."""
    data = data if data is not None else load_fixture_table()
    fixtures = []
    for entry in data.get('graphs', []):
        try:
            g = family(entry['family'], *entry.get('params', []))
            fixtures.append(GraphFixture(entry['name'], g, tuple(entry['inertia']),
                                         tuple(entry.get('tight', []))))
        except (KeyError, FamilyParameterError) as e:
            raise FixtureTableError(f"Corrupt graph entry {entry!r}: {e}") from e
    return fixtures


def fixture_tight(data: Optional[Dict] = None) -> Dict[str, Tuple[str, ...]]:
    """Tight check ids claimed for each spectrum fixture."""
    data = data if data is not None else load_fixture_table()
    return {entry['name']: tuple(entry.get('tight', [])) for entry in data.get('spectra', [])}
