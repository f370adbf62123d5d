"""Exhaustive minimum-size search with isomorphism rejection.

Graphs are generated by vertex augmentation: each parent class on k
vertices is extended by one new vertex with every admissible
neighborhood, and children are deduplicated by canonical form.  An
edge-budget prune (counting the edges still required to lift every
vertex to the target minimum degree) keeps the levels small.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial
from typing import Optional

from .canon import canonical_form, canonical_graph
from .cycles import is_edge_pancyclic, is_k_edge_proper, is_vertex_pancyclic
from .errors import OrderTooLarge, BadKind
from .graph import Graph, build_graph

HARD_CAP = 11


def _extensions(g: Graph, n: int, max_edges: int, min_degree: int):
    """Admissible neighborhoods for one added vertex on the way to order n
    with at most max_edges edges and final minimum degree min_degree."""
    k = g.n
    remaining_vertices = n - k - 1
    degs = g.degrees()
    for mask in range(1 << k):
        extra = bin(mask).count("1")
        m = g.edge_count + extra
        if m > max_edges:
            continue
        # every future vertex still needs min_degree edge-endpoints and every
        # current deficiency needs one endpoint; each future edge provides two
        if remaining_vertices:
            deficiency = 0
            for v in range(k):
                d = degs[v] + (mask >> v & 1)
                if d < min_degree:
                    deficiency += min_degree - d
            deficiency += max(0, min_degree - extra)
            need = (min_degree * remaining_vertices + deficiency + 1) // 2
            if m + need > max_edges:
                continue
        else:
            if extra < min_degree:
                continue
            ok = True
            for v in range(k):
                if degs[v] + (mask >> v & 1) < min_degree:
                    ok = False
                    break
            if not ok:
                continue
        yield mask


def enumerate_graphs(n: int, m: Optional[int] = None, connected: bool = True,
                     min_degree: int = 0, max_edges: Optional[int] = None,
                     force: bool = False):
    """One representative per isomorphism class of order n, streamed in
    deterministic (canonical-form) order."""
    if n > HARD_CAP and not force:
        raise OrderTooLarge(f"order {n} above the cap {HARD_CAP}")
    if n < 0:
        raise OrderTooLarge("negative order")
    cap = m if m is not None else (max_edges if max_edges is not None else comb(n, 2))
    if n == 0:
        return
    level = {canonical_form(build_graph(1, [])): build_graph(1, [])}
    for size in range(2, n + 1):
        nxt = {}
        for g in level.values():
            base_edges = [(u, v) for v in range(g.n) for u in g.neighbors(v) if u < v]
            for mask in _extensions(g, n, cap, min_degree):
                edges = base_edges + [
                    (v, size - 1) for v in range(size - 1) if mask >> v & 1
                ]
                child = build_graph(size, edges)
                key = canonical_form(child)
                if key not in nxt:
                    nxt[key] = child
        level = nxt
    for key in sorted(level):
        g = level[key]
        if m is not None and g.edge_count != m:
            continue
        if min_degree and g.min_degree() < min_degree:
            continue
        if connected and not g.is_connected():
            continue
        yield canonical_graph(g)


_CHECKS = {
    "edge-pancyclic": (lambda g: is_edge_pancyclic(g), 3),
    "vertex-pancyclic": (lambda g: is_vertex_pancyclic(g), 2),
}


def _property_check(prop: str, k: Optional[int]):
    if prop in _CHECKS:
        return _CHECKS[prop]
    if prop == "k-edge-proper":
        if k is None:
            raise BadKind("k-edge-proper needs k")
        return (lambda g: is_k_edge_proper(g, k) if g.n >= k else
                _too_small_report(prop)), 3
    raise BadKind(f"unknown property {prop!r}")


def _too_small_report(prop):
    from .cycles import PropertyReport

    return PropertyReport(prop, False, first_failure=(None, None))


@dataclass
class SearchOutcome:
    n: int
    property: str
    minimum_edges: Optional[int]
    witness: Optional[Graph]
    exhausted: bool
    counts: dict = field(default_factory=dict)  # m -> classes examined


def min_size(n: int, prop: str, k: Optional[int] = None,
             force: bool = False) -> SearchOutcome:
    """Smallest edge count of an order-n graph with the property, by an
    ascending exhaustive sweep over edge counts."""
    check, min_deg = _property_check(prop, k)
    start = (min_deg * n + 1) // 2
    counts = {}
    for m in range(start, comb(n, 2) + 1):
        classes = 0
        for g in enumerate_graphs(n, m=m, connected=True, min_degree=min_deg,
                                  force=force):
            classes += 1
            if check(g).verdict:
                counts[m] = classes
                return SearchOutcome(n, prop, m, g, True, counts)
        counts[m] = classes
    return SearchOutcome(n, prop, None, None, True, counts)


def certify_no_graph_below(n: int, prop: str, m: int, k: Optional[int] = None,
                           force: bool = False) -> bool:
    """True iff no order-n graph with fewer than m edges has the property
    (full isomorph-free enumeration)."""
    check, min_deg = _property_check(prop, k)
    start = (min_deg * n + 1) // 2
    for edges in range(start, m):
        for g in enumerate_graphs(n, m=edges, connected=True,
                                  min_degree=min_deg, force=force):
            if check(g).verdict:
                return False
    return True


# -- independent counting oracles ----------------------------------------

def count_graph_classes(n: int) -> int:
    """Number of graphs on n vertices up to isomorphism, by Burnside's
    lemma over the pair action of S_n (no graph enumeration involved)."""
    from itertools import permutations

    total = 0
    for perm in permutations(range(n)):
        # count cycles of the induced action on unordered pairs
        seen = set()
        cycles = 0
        for a in range(n):
            for b in range(a + 1, n):
                if (a, b) in seen:
                    continue
                cycles += 1
                x, y = a, b
                while True:
                    x, y = perm[x], perm[y]
                    p = (x, y) if x < y else (y, x)
                    if p in seen or p == (a, b):
                        break
                    seen.add(p)
                seen.add((a, b))
        total += 1 << cycles
    return total // factorial(n)


def count_connected_classes(n: int) -> int:
    """Connected classes on n vertices from the Burnside totals via the
    inverse Euler transform (independent of any graph enumeration)."""
    a = [1] + [count_graph_classes(k) for k in range(1, n + 1)]
    b = [0] * (n + 1)
    c = [0] * (n + 1)
    # a_m = (1/m) sum_{k=1..m} b_k a_{m-k}  with  b_k = sum_{d|k} d c_d
    for m in range(1, n + 1):
        b[m] = m * a[m] - sum(b[k] * a[m - k] for k in range(1, m))
        c[m] = (b[m] - sum(d * c[d] for d in range(1, m) if m % d == 0)) // m
    return c[n]


def count_connected_classes_bruteforce(n: int) -> int:
    """Connected classes on n vertices by scanning every labeled graph and
    keeping lexicographic-minimum representatives.  Exponential; n <= 6."""
    from itertools import permutations

    if n > 6:
        raise OrderTooLarge("brute-force labeled scan capped at n = 6")
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    npairs = len(pairs)
    pair_index = {p: i for i, p in enumerate(pairs)}
    lo_bits = min(8, npairs)
    tables = []
    for perm in permutations(range(n)):
        shift = [0] * npairs
        for i, (a, b) in enumerate(pairs):
            x, y = perm[a], perm[b]
            shift[i] = pair_index[(x, y) if x < y else (y, x)]
        t_lo = [0] * (1 << lo_bits)
        for m in range(1 << lo_bits):
            img = 0
            for i in range(lo_bits):
                if m >> i & 1:
                    img |= 1 << shift[i]
            t_lo[m] = img
        t_hi = [0] * (1 << (npairs - lo_bits))
        for m in range(1 << (npairs - lo_bits)):
            img = 0
            for i in range(npairs - lo_bits):
                if m >> i & 1:
                    img |= 1 << shift[lo_bits + i]
            t_hi[m] = img
        tables.append((t_lo, t_hi))
    lo_mask = (1 << lo_bits) - 1
    count = 0
    for code in range(1 << npairs):
        minimal = True
        for t_lo, t_hi in tables:
            if t_lo[code & lo_mask] | t_hi[code >> lo_bits] < code:
                minimal = False
                break
        if not minimal:
            continue
        edges = [pairs[i] for i in range(npairs) if code >> i & 1]
        if build_graph(n, edges).is_connected():
            count += 1
    return count
