# graph.py
"""Simple undirected graphs, graph6/sparse6 I/O and matrix builders.

Vertices are the dense integers ``0..n-1``. Each vertex stores its
neighbourhood as an integer bitmask, which keeps the structural queries
used by the conjecture checks (twins, induced paths, cycles) cheap.
"""

from dataclasses import dataclass, field
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from config import MAX_ORDER

GRAPH6_HEADER = ">>graph6<<"
SPARSE6_HEADER = ">>sparse6<<"
GRAPH6_MAX_ORDER = 68719476735


class Graph6Error(ValueError):
    """Malformed graph6/sparse6 input, reported with the byte offset of the fault."""

    def __init__(self, offset: int, message: str):
        self.offset = offset
        super().__init__(f"byte {offset}: {message}")


class GraphOrderError(ValueError):
    """Order above the configured (or representable) maximum."""


class VertexRangeError(ValueError):
    """Vertex index outside ``0..n-1``."""


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bit_matrix(rows: Sequence[int], order: int) -> np.ndarray:
    """Boolean ``order x order`` matrix with ``m[v, u]`` set iff bit ``u`` of ``rows[v]`` is set."""
    if order == 0:
        return np.zeros((0, 0), dtype=bool)
    width = (order + 7) // 8
    packed = np.frombuffer(b"".join(row.to_bytes(width, "little") for row in rows), dtype=np.uint8)
    return np.unpackbits(packed.reshape(len(rows), width), axis=1, count=order, bitorder="little").astype(bool)


def matrix_rows(m: np.ndarray) -> Tuple[int, ...]:
    """Inverse of ``bit_matrix``: one neighbourhood bitmask per matrix row."""
    packed = np.packbits(np.asarray(m, dtype=bool), axis=1, bitorder="little")
    return tuple(int.from_bytes(r.tobytes(), "little") for r in packed)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph.

    ``rows[v]`` is the neighbourhood bitmask of ``v``. ``origin`` optionally
    records where each vertex came from (an index of a parent graph, or an
    edge pair for line graphs); it does not take part in equality.
    """

    order: int
    rows: Tuple[int, ...]
    origin: Optional[Tuple] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.order < 0:
            raise GraphOrderError(f"Negative order {self.order}")
        if self.order > MAX_ORDER:
            raise GraphOrderError(f"Order {self.order} exceeds maximum {MAX_ORDER}")
        if len(self.rows) != self.order:
            raise ValueError(f"Expected {self.order} rows, got {len(self.rows)}")
        for v, row in enumerate(self.rows):
            if row < 0 or row.bit_length() > self.order:
                raise VertexRangeError(f"Vertex {v} has a neighbour outside 0..{self.order - 1}")
        m = bit_matrix(self.rows, self.order)
        loops = np.flatnonzero(m.diagonal())
        if loops.size:
            raise ValueError(f"Loop at vertex {loops[0]}")
        asymmetric = np.argwhere(m != m.T)
        if asymmetric.size:
            v, u = asymmetric[0]
            raise ValueError(f"Adjacency not symmetric at ({v}, {u})")

    @classmethod
    def from_matrix(cls, m: np.ndarray, origin: Optional[Tuple] = None) -> "Graph":
        """Graph whose adjacency is the boolean (or 0/1) square matrix ``m``."""
        m = np.asarray(m, dtype=bool)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"Expected a square matrix, got shape {m.shape}")
        return cls(m.shape[0], matrix_rows(m), origin)

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[Tuple[int, int]],
                   origin: Optional[Tuple] = None) -> "Graph":
        rows = [0] * order
        for u, v in edges:
            if not (0 <= u < order and 0 <= v < order):
                raise VertexRangeError(f"Edge ({u}, {v}) outside 0..{order - 1}")
            if u == v:
                raise ValueError(f"Loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(order, tuple(rows), origin)

    @classmethod
    def empty(cls, order: int) -> "Graph":
        return cls(order, (0,) * order)

    @property
    def size(self) -> int:
        """Number of edges m(G)."""
        return sum(bin(row).count("1") for row in self.rows) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbours(self, v: int) -> List[int]:
        return list(iter_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return bin(self.rows[v]).count("1")

    def degrees(self) -> List[int]:
        return [bin(row).count("1") for row in self.rows]

    def edges(self) -> List[Tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.order) for v in iter_bits(self.rows[u] >> (u + 1) << (u + 1))]

    def label(self, v: int):
        """Original label of ``v`` (itself when no origin map is recorded)."""
        return self.origin[v] if self.origin is not None else v

    def to_networkx(self):
        import networkx as nx
        g = nx.Graph()
        g.add_nodes_from(range(self.order))
        g.add_edges_from(self.edges())
        return g

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, size={self.size})"


# ---------------------------------------------------------------------------
# graph6 / sparse6

def _decode_size(data: bytes, offset: int) -> Tuple[int, int]:
    """Decode N(n) starting at ``data[0]``; return (n, bytes consumed)."""
    if not data:
        raise Graph6Error(offset, "missing length header")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6Error(offset, "truncated 8-byte length header")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        return n, 8
    if len(data) < 4:
        raise Graph6Error(offset, "truncated 4-byte length header")
    n = 0
    for b in data[1:4]:
        n = (n << 6) | (b - 63)
    return n, 4


def _encode_size(n: int) -> str:
    if n < 0 or n > GRAPH6_MAX_ORDER:
        raise GraphOrderError(f"Order {n} not representable in graph6")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def _check_printable(data: bytes, base: int) -> None:
    for i, b in enumerate(data):
        if not 63 <= b <= 126:
            raise Graph6Error(base + i, f"character {b!r} outside printable range 63..126")


def _unpack6(data: bytes) -> np.ndarray:
    """The 6 data bits of every character, most significant first."""
    chars = np.frombuffer(data, dtype=np.uint8) - 63
    return np.unpackbits(chars.reshape(-1, 1), axis=1)[:, 2:].ravel().astype(bool)


def _pack6(bits: np.ndarray) -> str:
    """Inverse of ``_unpack6``; ``bits`` is zero-padded to a multiple of 6."""
    bits = np.concatenate([bits.astype(np.uint8), np.zeros(-len(bits) % 6, dtype=np.uint8)])
    chunks = np.hstack([np.zeros((len(bits) // 6, 2), dtype=np.uint8), bits.reshape(-1, 6)])
    return (np.packbits(chunks, axis=1).ravel() + 63).tobytes().decode("ascii")


def _split_header(line: str, header: str) -> Tuple[str, int]:
    if line.startswith(header):
        return line[len(header):], len(header)
    return line, 0


def parse_graph6(line: str, max_order: int = MAX_ORDER) -> Graph:
    """Decode one graph6 (or sparse6, when prefixed by ``:``) line.

    An optional ``>>graph6<<`` / ``>>sparse6<<`` header and trailing
    CR/LF are tolerated.
    """
    text = line.rstrip("\r\n")
    if text.startswith(SPARSE6_HEADER) or text.startswith(":"):
        return parse_sparse6(text, max_order)
    text, base = _split_header(text, GRAPH6_HEADER)
    try:
        data = text.encode("ascii")
    except UnicodeEncodeError as e:
        raise Graph6Error(base + e.start, "non-ASCII character") from e
    _check_printable(data, base)

    n, used = _decode_size(data, base)
    if n > max_order:
        raise GraphOrderError(f"Order {n} exceeds maximum {max_order}")
    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    body = data[used:]
    if len(body) != expected:
        raise Graph6Error(base + used + min(len(body), expected),
                          f"expected {expected} data bytes for order {n}, found {len(body)}")

    bits = _unpack6(body)
    if bits[nbits:].any():
        raise Graph6Error(base + used + expected - 1, "nonzero padding bits")

    # column-wise upper triangle == row-major strict lower triangle
    m = np.zeros((n, n), dtype=bool)
    lower, upper = np.tril_indices(n, -1)
    m[lower, upper] = bits[:nbits]
    m[upper, lower] = bits[:nbits]
    return Graph.from_matrix(m)


def parse_sparse6(line: str, max_order: int = MAX_ORDER) -> Graph:
    """Decode a sparse6 line (input only; incremental ``;`` form is rejected)."""
    text, base = _split_header(line.rstrip("\r\n"), SPARSE6_HEADER)
    if not text.startswith(":"):
        raise Graph6Error(base, "sparse6 line must start with ':'")
    try:
        data = text.encode("ascii")[1:]
    except UnicodeEncodeError as e:
        raise Graph6Error(base + e.start, "non-ASCII character") from e
    base += 1
    _check_printable(data, base)
    n, used = _decode_size(data, base)
    if n > max_order:
        raise GraphOrderError(f"Order {n} exceeds maximum {max_order}")

    body = data[used:]
    k = 1
    while (1 << k) < n:
        k += 1
    bits = _unpack6(body).tolist()
    m = np.zeros((n, n), dtype=bool)
    v = 0
    position = 0
    while position + 1 + k <= len(bits):
        x = 0
        for bit in bits[position + 1:position + 1 + k]:
            x = (x << 1) | bit
        if bits[position]:
            v += 1
        byte_offset = base + used + position // 6
        position += 1 + k
        if x >= n or v >= n:
            break
        if x > v:
            v = x
        elif x == v:
            raise Graph6Error(byte_offset, f"loop at vertex {x} not allowed in a simple graph")
        else:
            if m[x, v]:
                raise Graph6Error(byte_offset, f"repeated edge ({x}, {v})")
            m[x, v] = m[v, x] = True
    return Graph.from_matrix(m)


def write_graph6(g: Graph) -> str:
    """Encode ``g`` as graph6 with the minimal-length size header (no header, no newline)."""
    n = g.order
    lower, upper = np.tril_indices(n, -1)
    return _encode_size(n) + _pack6(bit_matrix(g.rows, n)[lower, upper])


# ---------------------------------------------------------------------------
# structural queries

def complement(g: Graph) -> Graph:
    full = (1 << g.order) - 1
    return Graph(g.order, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.rows)))


def induced_subgraph(g: Graph, keep: Iterable[int]) -> Graph:
    """Subgraph induced by ``keep``, relabeled densely in increasing vertex order.

    The result's ``origin`` maps each new vertex to its label in ``g``.
    """
    kept = sorted(set(keep))
    for v in kept:
        if not 0 <= v < g.order:
            raise VertexRangeError(f"Vertex {v} outside 0..{g.order - 1}")
    position = {v: i for i, v in enumerate(kept)}
    rows = []
    for v in kept:
        row = 0
        for u in iter_bits(g.rows[v]):
            if u in position:
                row |= 1 << position[u]
        rows.append(row)
    return Graph(len(kept), tuple(rows), tuple(g.label(v) for v in kept))


def delete_vertices(g: Graph, drop: Iterable[int]) -> Graph:
    """``G - S``: induced subgraph on the complement of ``drop``."""
    removed = set(drop)
    for v in removed:
        if not 0 <= v < g.order:
            raise VertexRangeError(f"Vertex {v} outside 0..{g.order - 1}")
    return induced_subgraph(g, (v for v in range(g.order) if v not in removed))


def connected_components(g: Graph) -> List[List[int]]:
    """Vertex classes of the components, each sorted, ordered by least vertex."""
    seen = 0
    components = []
    for start in range(g.order):
        if seen >> start & 1:
            continue
        reached = 1 << start
        frontier = reached
        while frontier:
            grown = 0
            for v in iter_bits(frontier):
                grown |= g.rows[v]
            frontier = grown & ~reached
            reached |= frontier
        seen |= reached
        components.append(list(iter_bits(reached)))
    return components


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


def is_tree(g: Graph) -> bool:
    return g.order >= 1 and g.size == g.order - 1 and is_connected(g)


def cut_vertices(g: Graph) -> List[int]:
    """Articulation points via iterative lowpoint DFS, sorted."""
    n = g.order
    discovery = [-1] * n
    low = [0] * n
    cuts = set()
    clock = 0
    for root in range(n):
        if discovery[root] != -1:
            continue
        discovery[root] = low[root] = clock
        clock += 1
        root_children = 0
        stack = [(root, -1, iter(g.neighbours(root)))]
        while stack:
            v, parent, children = stack[-1]
            advanced = False
            for w in children:
                if discovery[w] == -1:
                    discovery[w] = low[w] = clock
                    clock += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, iter(g.neighbours(w))))
                    advanced = True
                    break
                if w != parent:
                    low[v] = min(low[v], discovery[w])
            if advanced:
                continue
            stack.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[v])
                if parent != root and low[v] >= discovery[parent]:
                    cuts.add(parent)
        if root_children > 1:
            cuts.add(root)
    return sorted(cuts)


# ---------------------------------------------------------------------------
# matrices

def adjacency_matrix(g: Graph) -> np.ndarray:
    return bit_matrix(g.rows, g.order).astype(np.int64)


def laplacian_matrix(g: Graph) -> np.ndarray:
    """L = D - A."""
    return np.diag(np.array(g.degrees(), dtype=np.int64).reshape(-1)) - adjacency_matrix(g)


def signless_laplacian_matrix(g: Graph) -> np.ndarray:
    """Q = D + A."""
    return np.diag(np.array(g.degrees(), dtype=np.int64).reshape(-1)) + adjacency_matrix(g)


def graph_from_matrix(a: Sequence[Sequence[int]]) -> Graph:
    """Inverse of ``adjacency_matrix`` for 0/1 symmetric matrices with zero diagonal."""
    n = len(a)
    return Graph.from_matrix(np.asarray(a, dtype=bool).reshape(n, n))
