"""Independent brute-force cycle enumeration.

Enumerates every simple cycle once, by canonical rotation (smallest
vertex first, smaller second endpoint breaks the direction tie), and
aggregates per-edge length sets.  Deliberately shares no code with the
pruned search in cycles.py so the two can cross-check each other.
"""

from __future__ import annotations

from .graph import EdgeRef, Graph


def all_cycles(g: Graph):
    """Yield every simple cycle as a vertex tuple, each exactly once."""
    n = g.n
    for root in range(n):
        # paths root, a, ..., b with all interior vertices > root and a < b
        stack = [(root, (root,), 1 << root)]
        while stack:
            v, path, used = stack.pop()
            for w in g.neighbors(v):
                if w == root and len(path) >= 3 and path[1] < path[-1]:
                    yield path
                elif w > root and not used >> w & 1:
                    stack.append((w, path + (w,), used | 1 << w))


def spectrum_by_cycle_enumeration(g: Graph) -> dict:
    """Map every edge to the set of cycle lengths it lies on."""
    spectra = {tuple(e): set() for e in g.edges()}
    for cyc in all_cycles(g):
        k = len(cyc)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            spectra[tuple(EdgeRef.of(a, b))].add(k)
    return spectra
