"""Simple undirected graphs on contiguous vertex indices.

Adjacency is stored as one Python int bitmask per vertex, which keeps
set operations (intersection, popcount) cheap for every order this
package works at.  Graphs are immutable after construction; contraction
returns new values.
"""

from __future__ import annotations

import json
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import (
    DisconnectedSet,
    DuplicateEdge,
    IndexOutOfRange,
    LoopEdge,
    MalformedGraph6,
    MinDegreeTooLow,
    MissingEdge,
)


class EdgeRef(NamedTuple):
    """Unordered vertex pair in canonical (u < v) order."""

    u: int
    v: int

    @classmethod
    def of(cls, a: int, b: int) -> "EdgeRef":
        if a == b:
            raise LoopEdge(f"loop at vertex {a}")
        return cls(a, b) if a < b else cls(b, a)


class Graph:
    __slots__ = ("n", "edge_count", "_adj", "_nbrs")

    def __init__(self, n: int, adj: Sequence[int], edge_count: int):
        # internal; use build_graph
        self.n = n
        self._adj = tuple(adj)
        self.edge_count = edge_count
        self._nbrs: tuple | None = None

    # -- queries ---------------------------------------------------------
    def adj_bits(self, v: int) -> int:
        return self._adj[v]

    def neighbors(self, v: int) -> tuple:
        if self._nbrs is None:
            self._nbrs = tuple(_bits_to_tuple(m) for m in self._adj)
        return self._nbrs[v]

    def degree(self, v: int) -> int:
        return bin(self._adj[v]).count("1")

    def degrees(self) -> list:
        return [bin(m).count("1") for m in self._adj]

    def min_degree(self) -> int:
        return min(self.degrees()) if self.n else 0

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and 0 <= u < self.n and 0 <= v < self.n and bool(self._adj[u] >> v & 1)

    def edges(self) -> Iterator[EdgeRef]:
        for u in range(self.n):
            m = self._adj[u] >> (u + 1)
            v = u + 1
            while m:
                if m & 1:
                    yield EdgeRef(u, v)
                m >>= 1
                v += 1

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            m = frontier
            v = 0
            while m:
                if m & 1:
                    nxt |= self._adj[v]
                m >>= 1
                v += 1
            frontier = nxt & ~seen
            seen |= frontier
        return seen == (1 << self.n) - 1

    # -- dunder ----------------------------------------------------------
    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, e={self.edge_count})"


def _bits_to_tuple(m: int) -> tuple:
    out = []
    v = 0
    while m:
        if m & 1:
            out.append(v)
        m >>= 1
        v += 1
    return tuple(out)


def build_graph(n: int, edges: Iterable) -> Graph:
    """Build the simple graph on [0, n) with exactly the given edges."""
    if n < 0:
        raise IndexOutOfRange("vertex count must be non-negative")
    adj = [0] * n
    count = 0
    for a, b in edges:
        if a == b:
            raise LoopEdge(f"loop at vertex {a}")
        if not (0 <= a < n and 0 <= b < n):
            raise IndexOutOfRange(f"edge ({a},{b}) outside [0,{n})")
        if adj[a] >> b & 1:
            raise DuplicateEdge(f"edge ({a},{b}) occurs twice")
        adj[a] |= 1 << b
        adj[b] |= 1 << a
        count += 1
    g = Graph(n, adj, count)
    return g


def _check_edge(g: Graph, e) -> EdgeRef:
    e = EdgeRef.of(e[0], e[1])
    if not g.has_edge(e.u, e.v):
        raise MissingEdge(f"edge {tuple(e)} not in graph")
    return e


def _renumber_drop(g_adj: list, n: int, removed: list) -> list:
    """Drop the given vertices, filling each gap with the current last vertex."""
    adj = list(g_adj)
    for r in sorted(removed, reverse=True):
        last = len(adj) - 1
        mask_r = 1 << r
        mask_last = 1 << last
        for v in range(len(adj)):
            adj[v] &= ~mask_r
        if r != last:
            # move `last` into slot r
            row = adj[last]
            for v in range(len(adj)):
                if adj[v] & mask_last:
                    adj[v] = (adj[v] & ~mask_last) | mask_r
            adj[r] = row & ~mask_r
        adj.pop()
    return adj


def contract_edge(g: Graph, e) -> Graph:
    """Merge the endpoints of e; loops vanish and parallel edges collapse."""
    e = _check_edge(g, e)
    return contract_set(g, {e.u, e.v})


def contract_set(g: Graph, vertices: Iterable) -> Graph:
    """Merge a connected vertex set into its minimum-index vertex."""
    s = sorted(set(vertices))
    if not s:
        raise DisconnectedSet("empty vertex set")
    for v in s:
        if not (0 <= v < g.n):
            raise IndexOutOfRange(f"vertex {v} outside [0,{g.n})")
    mask = 0
    for v in s:
        mask |= 1 << v
    # connectivity of g[s]
    seen = 1 << s[0]
    frontier = seen
    while frontier:
        nxt = 0
        for v in s:
            if frontier >> v & 1:
                nxt |= g.adj_bits(v) & mask
        frontier = nxt & ~seen
        seen |= frontier
    if seen != mask:
        raise DisconnectedSet("induced subgraph on the set is not connected")

    keep = s[0]
    merged = 0
    for v in s:
        merged |= g.adj_bits(v)
    merged &= ~mask
    adj = [g.adj_bits(v) & ~mask for v in range(g.n)]
    adj[keep] = merged
    m = merged
    v = 0
    while m:
        if m & 1:
            adj[v] |= 1 << keep
        m >>= 1
        v += 1
    adj = _renumber_drop(adj, g.n, s[1:])
    count = sum(bin(x).count("1") for x in adj) // 2
    return Graph(len(adj), adj, count)


class DegreeClasses(NamedTuple):
    v3: frozenset
    v4plus: frozenset


def degree_classes(g: Graph) -> DegreeClasses:
    """Partition vertices into degree exactly 3 vs degree >= 4."""
    degs = g.degrees()
    if g.n == 0 or min(degs) < 3:
        raise MinDegreeTooLow("minimum degree below 3")
    v3 = frozenset(v for v, d in enumerate(degs) if d == 3)
    return DegreeClasses(v3, frozenset(range(g.n)) - v3)


# -- graph6 ---------------------------------------------------------------

def _g6_size_bytes(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    raise MalformedGraph6("order too large for this encoder")


def to_graph6(g: Graph) -> bytes:
    """Encode in standard graph6: upper triangle, column order, 6-bit chunks."""
    bits = []
    for v in range(1, g.n):
        col = g.adj_bits(v)
        for u in range(v):
            bits.append(col >> u & 1)
    while len(bits) % 6:
        bits.append(0)
    out = bytearray(_g6_size_bytes(g.n))
    for i in range(0, len(bits), 6):
        c = 0
        for b in bits[i : i + 6]:
            c = c << 1 | b
        out.append(c + 63)
    return bytes(out)


def from_graph6(data) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if not data:
        raise MalformedGraph6("empty record")
    if data[0] == 126:
        if len(data) < 4 or data[1] == 126:
            raise MalformedGraph6("unsupported or truncated size field")
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        body = data[4:]
    else:
        n = data[0] - 63
        body = data[1:]
    if n < 0 or n > 258047:
        raise MalformedGraph6("bad vertex count")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise MalformedGraph6(f"expected {need} payload bytes, got {len(body)}")
    bits = []
    for c in body:
        if not 63 <= c <= 126:
            raise MalformedGraph6(f"byte {c} outside graph6 range")
        bits.extend((c - 63) >> k & 1 for k in range(5, -1, -1))
    edges = []
    i = 0
    for v in range(1, n):
        for u in range(v):
            if bits[i]:
                edges.append((u, v))
            i += 1
    if any(bits[i:]):
        raise MalformedGraph6("nonzero padding bits")
    return build_graph(n, edges)


# -- other export formats -------------------------------------------------

def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        lines.append(f"  {v};")
    for e in g.edges():
        lines.append(f"  {e.u} -- {e.v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_adjacency_json(g: Graph) -> str:
    return json.dumps({"n": g.n, "edges": [[e.u, e.v] for e in g.edges()]}, sort_keys=True)


def from_adjacency_json(text: str) -> Graph:
    data = json.loads(text)
    return build_graph(data["n"], [tuple(e) for e in data["edges"]])
