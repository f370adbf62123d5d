"""Canonical labeling by equitable refinement with individualization.

Small self-contained canonizer for the orders the enumeration works at
(n <= 11).  Automorphisms discovered while searching are used to skip
branches that provably lead to the same leaf, which keeps highly
symmetric graphs (complete, complete bipartite) cheap.
"""

from __future__ import annotations

from .graph import Graph, build_graph


def _refine(adj, partition):
    """Equitable refinement: split cells by neighbor counts into other cells.

    Iterates to a fixpoint with every cell as a splitter.  The result is a
    deterministic function of the ordered input partition, which makes it
    isomorphism-invariant.
    """
    cells = [list(c) for c in partition]
    changed = True
    while changed:
        changed = False
        for w in range(len(cells)):
            if w >= len(cells):
                break
            splitter = 0
            for v in cells[w]:
                splitter |= 1 << v
            out = []
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                counts = {}
                for v in cell:
                    c = bin(adj[v] & splitter).count("1")
                    counts.setdefault(c, []).append(v)
                if len(counts) > 1:
                    changed = True
                out.extend(counts[c] for c in sorted(counts))
            cells = out
            if changed:
                break
    return cells


def _leaf_signature(adj, perm):
    """Adjacency rows under the labeling perm[new] = old."""
    n = len(adj)
    pos = [0] * n
    for new, old in enumerate(perm):
        pos[old] = new
    rows = []
    for old in perm:
        m = adj[old]
        r = 0
        v = 0
        while m:
            if m & 1:
                r |= 1 << pos[v]
            m >>= 1
            v += 1
        rows.append(r)
    return tuple(rows)


class _Search:
    def __init__(self, adj):
        self.adj = adj
        self.n = len(adj)
        self.best = None
        self.best_perm = None
        self.autos = []  # automorphisms as tuples perm[old] = image

    def run(self):
        part = _refine(self.adj, [list(range(self.n))])
        self._node(part, [])
        return self.best, self.best_perm

    def _node(self, cells, fixed):
        if all(len(c) == 1 for c in cells):
            perm = [c[0] for c in cells]
            sig = _leaf_signature(self.adj, perm)
            if self.best is None or sig < self.best:
                self.best = sig
                self.best_perm = perm
            elif sig == self.best:
                # perm and best_perm induce an automorphism
                n = self.n
                other = self.best_perm
                auto = [0] * n
                for i in range(n):
                    auto[perm[i]] = other[i]
                self.autos.append(tuple(auto))
            return
        # first smallest non-singleton cell
        target = min((c for c in cells if len(c) > 1), key=len)
        idx = cells.index(target)
        done = set()
        for v in target:
            if v in done:
                continue
            # orbit closure of v under automorphisms fixing `fixed` pointwise
            orbit = {v}
            frontier = [v]
            while frontier:
                x = frontier.pop()
                for a in self.autos:
                    if all(a[f] == f for f in fixed):
                        y = a[x]
                        if y not in orbit:
                            orbit.add(y)
                            frontier.append(y)
            done |= orbit
            new_cells = cells[:idx] + [[v], [x for x in target if x != v]] + cells[idx + 1 :]
            refined = _refine(self.adj, new_cells)
            self._node(refined, fixed + [v])


def canonical_form(g: Graph) -> tuple:
    """Canonical adjacency signature: equal iff graphs are isomorphic."""
    if g.n == 0:
        return (0,)
    sig, _ = _Search([g.adj_bits(v) for v in range(g.n)]).run()
    return (g.n,) + sig


def canonical_graph(g: Graph) -> Graph:
    """The canonically labeled copy of g."""
    if g.n == 0:
        return g
    sig, _ = _Search([g.adj_bits(v) for v in range(g.n)]).run()
    edges = []
    for u in range(g.n):
        m = sig[u] >> (u + 1)
        v = u + 1
        while m:
            if m & 1:
                edges.append((u, v))
            m >>= 1
            v += 1
    return build_graph(g.n, edges)
