"""Exact decision procedures for cycles of a given length through an edge.

The search is depth-first path extension with sound pruning (residual
breadth-first distance to the target, parity in bipartite residual
components, and degree feasibility for Hamilton targets), so "absent"
answers are proofs of absence.  A per-call wall-clock budget raises
SearchTimeout instead of ever reporting a false negative.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from .errors import LengthOutOfRange, PancylabError
from .graph import EdgeRef, Graph, _check_edge


class SearchTimeout(PancylabError):
    """The (edge, length) search exceeded its time budget."""


@dataclass
class PropertyReport:
    property: str
    verdict: bool
    first_failure: Optional[tuple] = None  # (edge-or-vertex, missing length)
    witness_bundle: dict = field(default_factory=dict)


def _residual_probe(g: Graph, start: int, target: int, blocked: int, budget: int,
                    need_all: int = 0):
    """BFS from start in g minus blocked vertices.

    Returns (dist_to_target, parity_fixed) where parity_fixed is True when
    the component explored is bipartite (every start-target walk then has
    dist's parity).  Returns (None, _) when target is unreachable and
    (-1, _) when need_all contains vertices outside the component.
    """
    frontier = 1 << start
    seen = 1 << start
    odd_cycle = False
    dist = None
    d = 0
    # a same-layer edge in BFS from one source marks an odd cycle; the whole
    # component is explored so "no odd cycle" certifies bipartiteness
    while frontier:
        nxt = 0
        m = frontier
        v = 0
        while m:
            if m & 1:
                nb = g.adj_bits(v) & ~blocked
                if nb & frontier:
                    odd_cycle = True
                nxt |= nb
            m >>= 1
            v += 1
        frontier = nxt & ~seen
        seen |= frontier
        d += 1
        if dist is None and frontier >> target & 1:
            dist = d
    if need_all and (need_all & ~seen):
        return -1, False
    return dist, not odd_cycle


def cycle_through_edge(g: Graph, e, k: int, deterministic: bool = True,
                       budget_ms: Optional[float] = None):
    """A simple cycle of length exactly k through e, or None if none exists."""
    e = _check_edge(g, e)
    if not 3 <= k <= g.n:
        raise LengthOutOfRange(f"length {k} outside [3, {g.n}]")
    start, target = e.u, e.v
    deadline = None if budget_ms is None else time.monotonic() + budget_ms / 1000.0
    # path of k-1 edges from start to target, not revisiting vertices
    path = [start]
    used = 1 << start
    hamilton = k == g.n
    all_mask = (1 << g.n) - 1
    ticks = 0

    if deterministic:
        order = {v: g.neighbors(v) for v in range(g.n)}
    else:
        order = {
            v: tuple(sorted(g.neighbors(v), key=g.degree)) for v in range(g.n)
        }

    def feasible(c: int, remaining: int) -> bool:
        blocked = used & ~(1 << c)
        need_all = (all_mask & ~used) if hamilton else 0
        dist, parity_fixed = _residual_probe(
            g, c, target, blocked, remaining, need_all
        )
        if dist == -1 or dist is None or dist > remaining:
            return False
        if parity_fixed and (remaining - dist) % 2:
            return False
        if hamilton:
            # every unvisited vertex needs two usable ends
            free = all_mask & ~blocked
            m = all_mask & ~used & ~(1 << target)
            v = 0
            while m:
                if m & 1 and bin(g.adj_bits(v) & free).count("1") < 2:
                    return False
                m >>= 1
                v += 1
        return True

    def dfs(c: int, remaining: int) -> bool:
        nonlocal ticks
        ticks += 1
        if deadline is not None and ticks % 256 == 0 and time.monotonic() > deadline:
            raise SearchTimeout(f"budget exceeded for edge {tuple(e)}, k={k}")
        if remaining == 1:
            return bool(g.adj_bits(c) >> target & 1) and (k > 2)
        if not feasible(c, remaining):
            return False
        for w in order[c]:
            if used >> w & 1 or w == target:
                continue
            path.append(w)
            _mark(w)
            if dfs(w, remaining - 1):
                return True
            path.pop()
            _unmark(w)
        return False

    def _mark(w):
        nonlocal used
        used |= 1 << w

    def _unmark(w):
        nonlocal used
        used &= ~(1 << w)

    if dfs(start, k - 1):
        return list(path) + [target]
    return None


def edge_spectrum(g: Graph, e) -> set:
    """All k with a k-cycle through e (exact)."""
    _check_edge(g, e)
    return {k for k in range(3, g.n + 1) if cycle_through_edge(g, e, k) is not None}


def hamilton_through_edge(g: Graph, e):
    e = _check_edge(g, e)
    if g.n < 3:
        return None
    return cycle_through_edge(g, e, g.n)


def _fail(prop, element, k):
    return PropertyReport(prop, False, first_failure=(element, k))


def is_edge_pancyclic(g: Graph, witnesses: bool = False) -> PropertyReport:
    prop = "edge-pancyclic"
    if g.n < 3 or g.edge_count == 0:
        return _fail(prop, None, 3)
    report = PropertyReport(prop, True)
    for e in g.edges():
        for k in range(3, g.n + 1):
            w = cycle_through_edge(g, e, k)
            if w is None:
                return _fail(prop, tuple(e), k)
            if witnesses:
                report.witness_bundle[(tuple(e), k)] = w
    return report


def cycle_through_vertex(g: Graph, v: int, k: int):
    for w in g.neighbors(v):
        cyc = cycle_through_edge(g, (v, w), k)
        if cyc is not None:
            return cyc
    return None


def is_vertex_pancyclic(g: Graph, witnesses: bool = False) -> PropertyReport:
    prop = "vertex-pancyclic"
    if g.n < 3 or g.edge_count == 0:
        return _fail(prop, None, 3)
    report = PropertyReport(prop, True)
    for v in range(g.n):
        for k in range(3, g.n + 1):
            w = cycle_through_vertex(g, v, k)
            if w is None:
                return _fail(prop, v, k)
            if witnesses:
                report.witness_bundle[(v, k)] = w
    return report


def is_k_edge_proper(g: Graph, k: int, witnesses: bool = False) -> PropertyReport:
    """Every edge in a cycle of each length 3..k and in a Hamilton cycle."""
    prop = f"k-edge-proper({k})"
    if not 3 <= k <= g.n:
        raise LengthOutOfRange(f"k={k} outside [3, {g.n}]")
    report = PropertyReport(prop, True)
    lengths = list(dict.fromkeys(list(range(3, k + 1)) + [g.n]))
    for e in g.edges():
        for length in lengths:
            w = cycle_through_edge(g, e, length)
            if w is None:
                return _fail(prop, tuple(e), length)
            if witnesses:
                report.witness_bundle[(tuple(e), length)] = w
    return report


def validate_cycle(g: Graph, cycle, e=None, k: Optional[int] = None):
    """Check a vertex sequence is a simple cycle of g (optionally of length
    k through e).  Returns (ok, reason)."""
    if cycle is None:
        return False, "missing"
    if len(cycle) < 3:
        return False, "length"
    if k is not None and len(cycle) != k:
        return False, "length"
    if len(set(cycle)) != len(cycle):
        return False, "distinctness"
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        if not g.has_edge(a, b):
            return False, "adjacency"
    if e is not None:
        e = EdgeRef.of(e[0], e[1])
        pairs = {EdgeRef.of(a, b) for a, b in zip(cycle, cycle[1:] + cycle[:1])}
        if e not in pairs:
            return False, "edge-not-on-cycle"
    return True, "ok"
