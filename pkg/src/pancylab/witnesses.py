"""Constructive cycle witnesses for the full gadget construction.

Every witness is assembled from closed-form path templates over the
block structure (two fans per block, four chord edges per skeleton
chord), so producing a witness costs O(length).  The block interior has
a reflection symmetry (position j <-> 100s+1-j, hub w <-> hub u) that
maps the two hinges onto each other; path templates are implemented for
the first fan and reflected for the second.

Recipe tags: "local" (single-block or chord-local cycles), "ring"
(all blocks traversed), "partial-ring" (one chord arc plus the chord),
"weave" (both arcs threaded through the four chord edges), "lifted"
(a chord-scale arc template, the expansion of a short skeleton cycle),
"fallback" (exact search).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .constructions import LabeledConstruction
from .cycles import SearchTimeout, cycle_through_edge, validate_cycle
from .errors import (
    BadKind,
    CounterexampleError,
    EdgeNotInBlock,
    GapError,
    LengthOutOfRange,
    MissingEdge,
    NoSuchPath,
    ParamOutOfRange,
    RangeUnsatisfiable,
    RecipeInapplicable,
)
from .graph import EdgeRef


@dataclass
class BlockPath:
    block: int
    vertices: list
    length: int


@dataclass
class CoverageReport:
    s: int
    ell: int
    gaps: list = field(default_factory=list)  # undecided (edge, k) pairs
    counterexamples: list = field(default_factory=list)  # proved absent
    tag_counts: dict = field(default_factory=dict)
    pairs: int = 0

    @property
    def complete(self) -> bool:
        return not self.gaps and not self.counterexamples


def _distribute(target, intervals):
    """One value per [lo, hi] interval summing to target, or None."""
    lo = sum(a for a, _ in intervals)
    hi = sum(b for _, b in intervals)
    if not lo <= target <= hi:
        return None
    out = []
    surplus = target - lo
    for a, b in intervals:
        d = min(surplus, b - a)
        out.append(a + d)
        surplus -= d
    return out


class WitnessEngine:
    """Witness builder bound to one full construction."""

    def __init__(self, lc: LabeledConstruction):
        if lc.kind != "full":
            raise BadKind("witness engine needs the full construction")
        self.lc = lc
        self.g = lc.graph
        self.N = lc.base_len
        self.s = lc.s
        self.half = 50 * lc.s
        self.b = lc.block_size  # vertices owned per block: 100s - 1
        self.top = 100 * lc.s  # local position of the far hinge
        self.e4 = {}
        for ci, (i, j) in enumerate(lc.chords):
            for typ, pair in (
                ("a", (self.hinge(i), self.hinge(j))),
                ("b", (self.w(i), self.hinge(j))),
                ("c", (self.w(i), self.w(j))),
                ("d", (self.u(i), self.w(j))),
            ):
                self.e4[EdgeRef.of(*pair)] = (ci, typ)

    # -- coordinates -----------------------------------------------------
    def hinge(self, i):
        return (i % self.N) * self.b

    def w(self, i):
        return (i % self.N) * self.b + self.half - 1

    def u(self, i):
        return (i % self.N) * self.b + self.half

    def classify(self, e):
        """("E4", chord index, type) or ("E3", block, kind, j)."""
        e = EdgeRef.of(e[0], e[1])
        cls = self.lc.edge_class.get(e)
        if cls is None:
            raise MissingEdge(f"edge {tuple(e)} not in the construction")
        if cls == "E4":
            ci, typ = self.e4[e]
            return ("E4", ci, typ)
        candidates = []
        for v in (e.u, e.v):
            candidates.append(v // self.b)
            if v % self.b == 0:  # hinges also close the previous block
                candidates.append((v // self.b - 1) % self.N)
        for i in dict.fromkeys(candidates):
            try:
                kind, j = self._local_kind(i, e)
            except EdgeNotInBlock:
                continue
            return ("E3", i, kind, j)
        raise EdgeNotInBlock(f"edge {tuple(e)} is not a block-interior edge")

    def _local_kind(self, i, e):
        half, top = self.half, self.top

        def loc(v):
            if v == self.hinge(i + 1):
                return top
            if v // self.b != i:
                raise EdgeNotInBlock(f"vertex {v} not in block {i}")
            return v - i * self.b + 1

        j1, j2 = sorted((loc(e.u), loc(e.v)))
        if (j1, j2) == (half, half + 1):
            return "bridge", 0
        if (j1, j2) == (half, half + 2):
            return "bridge2", 0
        if (j1, j2) == (half - 1, half + 1):
            return "bridge3", 0
        if j2 == half and j1 <= half - 1:
            return "Aspoke", j1
        if j1 == half + 1 and j2 >= half + 2:
            return "Bspoke", j2
        if j2 == j1 + 1 and j2 <= half - 1:
            return "Apath", j1
        if j2 == j1 + 1 and half + 2 <= j1:
            return "Bpath", j1
        raise EdgeNotInBlock(f"edge {tuple(e)} is not a block-interior edge")

    def _reflect_j(self, kind, j):
        if kind == "Bpath":
            return self.top - j
        if kind == "Bspoke":
            return self.top + 1 - j
        return 0

    def _mirror(self, i, path):
        """Apply the block reflection j <-> top+1-j to a local path."""
        base = i * self.b
        hi = self.hinge(i)
        hi_next = self.hinge(i + 1)
        out = []
        for v in path:
            j = self.top if v == hi_next else v - base + 1
            mj = self.top + 1 - j
            if mj == self.top:
                out.append(hi_next)
            elif mj == 1:
                out.append(hi)
            else:
                out.append(base + mj - 1)
        return out

    # -- path segments (both endpoints included) -------------------------
    def a_seg(self, i, L):
        """hinge(i) -> w(i), L in [1, half-1]."""
        base = (i % self.N) * self.b
        return list(range(base, base + L)) + [self.w(i)]

    def b_seg(self, i, L):
        """u(i) -> hinge(i+1), L in [1, half-1]."""
        base = (i % self.N) * self.b
        j0 = self.top + 1 - L
        return ([self.u(i)] + list(range(base + j0 - 1, base + self.b))
                + [self.hinge(i + 1)])

    def block_simple(self, i, t):
        """hinge(i) -> hinge(i+1), t in [3, top-1]."""
        la = min(t - 2, self.half - 1)
        lb = t - 1 - la
        return self.a_seg(i, la) + self.b_seg(i, lb)

    def atou(self, i, L):
        """hinge(i) -> u(i) via w, L in [2, half]."""
        return self.a_seg(i, L - 1) + [self.u(i)]

    def n2w(self, i, L):
        """hinge(i+1) -> w(i), L in [2, top-2]; never touches hinge(i)."""
        base = (i % self.N) * self.b
        H = self.hinge(i + 1)
        if L <= self.half:
            # descend the second fan, hop to u, bridge to w
            b0 = self.top + 2 - L
            mid = list(range(base + self.top - 2, base + b0 - 2, -1))
            return [H] + mid + [self.u(i), self.w(i)]
        # descend the second fan, hop to u, cross fans, descend to a spoke
        d1 = min(L - 3, self.half - 2)
        d2 = L - 3 - d1
        b0 = self.top - d1
        y = self.half - 1 - d2
        mid1 = list(range(base + self.top - 2, base + b0 - 2, -1))
        mid2 = list(range(base + self.half - 2, base + y - 2, -1))
        return [H] + mid1 + [self.u(i)] + mid2 + [self.w(i)]

    def w2n(self, i, L):
        """w(i) -> hinge(i+1), L in [2, top-2]; never touches hinge(i)."""
        return list(reversed(self.n2w(i, L)))

    # -- forced block paths ----------------------------------------------
    def forced_interval(self, kind, j):
        """A contiguous interval of realizable lengths for a block path
        through an edge of the given kind (subset of the true set)."""
        half = self.half
        M = self.top - 1
        if kind == "Bpath":
            kind, j = "Apath", self._reflect_j("Bpath", j)
        elif kind == "Bspoke":
            kind, j = "Aspoke", self._reflect_j("Bspoke", j)
        if kind == "Apath":
            return (min(j + 3, half + 3 - j) if j >= 2 else j + 3, M)
        if kind == "Aspoke":
            return (min(j + 2, half + 3 - j) if j >= 2 else j + 2, M)
        if kind == "bridge":
            return (3, M)
        if kind in ("bridge2", "bridge3"):
            return (4, M)
        raise BadKind(kind)

    def _after_w(self, i, x, y, lb):
        """v1..x, w, y..half-1, u, b-tail; length x + half + 1 - y + lb."""
        base = i * self.b
        return (list(range(base, base + x)) + [self.w(i)]
                + list(range(base + y - 1, base + self.half - 1))
                + self.b_seg(i, lb))

    def _forced_a_side(self, i, t, kind, j):
        half = self.half
        base = i * self.b

        if kind == "Apath":
            # F1: ascend over the edge, spoke to w, bridge, b-tail
            x = max(j + 1, t - half)
            if x <= min(half - 1, t - 2):
                return self.a_seg(i, x) + self.b_seg(i, t - 1 - x)
            # F2: w-hop down to y = j, ascend over the edge (j >= 2)
            if j >= 2:
                D = t - half - 1  # (x - j) + lb
                xy = max(1 - j, D - (half - 1))
                if xy <= -1 and 1 <= D - xy <= half - 1:
                    return self._after_w(i, j + xy, j, D - xy)
            return None
        if kind == "Aspoke":
            # S1: spoke at x = j, bridge, b-tail
            lb = t - 1 - j
            if 1 <= lb <= half - 1:
                return self.a_seg(i, j) + self.b_seg(i, lb)
            # S2: spoke at x = j, w-hop up to y > j (needs j <= half-2)
            if j <= half - 2:
                D = t - half - 1  # (j - y) + lb
                dy = max(j - (half - 1), D - (half - 1))
                if dy <= -1 and 1 <= D - dy <= half - 1:
                    return self._after_w(i, j, j - dy, D - dy)
            # S3: w-hop exactly onto y = j (needs j >= 2)
            if j >= 2:
                D = t - half - 1  # (x - j) + lb
                xj = max(1 - j, D - (half - 1))
                if xj <= -1 and 1 <= D - xj <= half - 1:
                    return self._after_w(i, j + xj, j, D - xj)
            return None
        if kind == "bridge":
            if 3 <= t <= self.top - 1:
                return self.block_simple(i, t)
            return None
        if kind == "bridge3":
            # any w-hop route crosses the bridge3 edge into the b-tail
            D = t - half - 1  # (x - y) + lb with x < y <= half-1
            xy = max(2 - half, D - (half - 1))
            if xy <= -1 and 1 <= D - xy <= half - 1:
                y = half - 1
                return self._after_w(i, y + xy, y, D - xy)
            # full first-fan path, bridge3, b-tail
            lb = t - half + 1
            if 1 <= lb <= half - 1:
                return list(range(base, base + half - 1)) + self.b_seg(i, lb)
            return None
        raise BadKind(kind)

    def _forced_block_path(self, i, t, kind, j):
        if not 3 <= t <= self.top - 1:
            return None
        if kind in ("Apath", "Aspoke", "bridge", "bridge3"):
            return self._forced_a_side(i, t, kind, j)
        kind2 = {"Bpath": "Apath", "Bspoke": "Aspoke", "bridge2": "bridge3"}[kind]
        mirror = self._forced_a_side(i, t, kind2, self._reflect_j(kind, j))
        if mirror is None:
            return None
        return list(reversed(self._mirror(i, mirror)))

    def block_path(self, i, t, required_edge=None) -> BlockPath:
        """Path from hinge(i) to hinge(i+1) of exactly t edges, optionally
        through a given block-interior edge."""
        if not 3 <= t <= self.top - 1:
            raise LengthOutOfRange(
                f"block path length {t} outside [3, {self.top - 1}]")
        if required_edge is None:
            return BlockPath(i, self.block_simple(i, t), t)
        e = EdgeRef.of(required_edge[0], required_edge[1])
        kind, j = self._local_kind(i, e)
        path = self._forced_block_path(i, t, kind, j)
        if path is None:
            raise NoSuchPath(
                f"no length-{t} block path through {tuple(e)} (kind {kind})")
        ok, why = self._validate_path(i, path, t, e)
        if not ok:
            raise AssertionError(f"internal template error: {why}")
        return BlockPath(i, path, t)

    def _validate_path(self, i, path, t, e=None):
        if path[0] != self.hinge(i) or path[-1] != self.hinge(i + 1):
            return False, "endpoints"
        if len(path) != t + 1:
            return False, "length"
        if len(set(path)) != len(path):
            return False, "distinctness"
        for a, c in zip(path, path[1:]):
            if not self.g.has_edge(a, c):
                return False, f"adjacency {a}-{c}"
        if e is not None:
            pairs = {EdgeRef.of(a, c) for a, c in zip(path, path[1:])}
            if EdgeRef.of(*e) not in pairs:
                return False, "edge-not-on-path"
        return True, "ok"

    # -- local (small) cycles --------------------------------------------
    def _local_a_side(self, i, kind, j, k):
        half = self.half
        base = i * self.b

        def arange(x, y):  # v^x..v^y ascending, first fan
            return list(range(base + x - 1, base + y))

        def bdesc(c, d):  # v^c..v^d descending, second fan; v^{100s} wraps
            return [self.lc.vid(i, p) for p in range(c, d - 1, -1)]

        if kind == "Apath":
            x = max(1, j + 1 - (k - 2))
            y = x + k - 2
            if y > half - 1:
                y = half - 1
                x = y - (k - 2)
            if 1 <= x <= j < y <= half - 1:
                return [self.w(i)] + arange(x, y)
            return None
        if kind == "Aspoke":
            if j + k - 2 <= half - 1:
                return [self.w(i)] + arange(j, j + k - 2)
            if j - (k - 2) >= 1:
                return [self.w(i)] + arange(j - (k - 2), j)
            # w, j..half-1, u, c..half+2  (k = c - j + 1)
            c = k + j - 1
            if half + 2 <= c <= 2 * half:
                return ([self.w(i)] + arange(j, half - 1) + [self.u(i)]
                        + bdesc(c, half + 2))
            return None
        if kind == "bridge":
            c = half + k - 1  # w, u, c..half+2
            if half + 2 <= c <= 2 * half:
                return [self.w(i), self.u(i)] + bdesc(c, half + 2)
            return None
        if kind == "bridge3":
            x = half + 2 - k  # u, half-1..x, w
            if 1 <= x <= half - 1:
                return ([self.u(i)] + list(reversed(arange(x, half - 1)))
                        + [self.w(i)])
            return None
        raise BadKind(kind)

    def local_cycle(self, e, k):
        """Cycle of length k through e confined to e's block or chord."""
        info = self.classify(e)
        if info[0] == "E4":
            return self._local_chord(info[1], info[2], k)
        _, i, kind, j = info
        if kind in ("Bpath", "Bspoke", "bridge2"):
            kind2 = {"Bpath": "Apath", "Bspoke": "Aspoke",
                     "bridge2": "bridge3"}[kind]
            cyc = self._local_a_side(i, kind2, self._reflect_j(kind, j), k)
            return self._mirror(i, cyc) if cyc is not None else None
        return self._local_a_side(i, kind, j, k)

    def _local_chord(self, ci, typ, k):
        i, j = self.lc.chords[ci]
        half = self.half
        base = i * self.b
        if typ in ("a", "b"):
            # hinge(j), v_i^1..v_i^{k-2}, w_i
            if 3 <= k <= half + 1:
                return ([self.hinge(j)] + list(range(base, base + k - 2))
                        + [self.w(i)])
            return None
        if k == 3:
            return [self.w(j), self.w(i), self.u(i)]
        if 4 <= k <= half + 2:
            # positions 50s+2 .. 50s+k-2; position 100s wraps to the next hinge
            mid = [self.lc.vid(i, p) for p in range(half + 2, half + k - 1)]
            return [self.w(j), self.w(i)] + mid + [self.u(i)]
        return None

    # -- arc templates ----------------------------------------------------
    def _expand_forward(self, blocks, lens):
        out = []
        for i, t in zip(blocks, lens):
            out.extend(self.block_simple(i, t)[:-1])
        return out

    def ring_cycle(self, i, kind, j, k):
        """All blocks traversed forward, block i routed through the edge."""
        lo, hi = self.forced_interval(kind, j)
        lens = _distribute(k, [(lo, hi)] + [(3, self.top - 1)] * (self.N - 1))
        if lens is None:
            return None
        forced = self._forced_block_path(i, lens[0], kind, j)
        if forced is None:
            return None
        blocks = [(i + d) % self.N for d in range(1, self.N)]
        return forced[:-1] + self._expand_forward(blocks, lens[1:])

    def partial_ring_cycle(self, i, kind, j, k, offset=None):
        """One chord arc plus the retained chord edge, block i routed
        through the edge; optionally restricted to one chord offset."""
        lo, hi = self.forced_interval(kind, j)
        for p, q in self.lc.chords:
            for start, arc in ((p, (q - p) % self.N), (q, (p - q) % self.N)):
                if offset is not None and arc != offset:
                    continue
                pos = (i - start) % self.N
                if pos >= arc:
                    continue
                intervals = [(3, self.top - 1)] * arc
                intervals[pos] = (lo, hi)
                lens = _distribute(k - 1, intervals)
                if lens is None:
                    continue
                forced = self._forced_block_path(i, lens[pos], kind, j)
                if forced is None:
                    continue
                out = []
                for d in range(arc):
                    bix = (start + d) % self.N
                    if d == pos:
                        out.extend(forced[:-1])
                    else:
                        out.extend(self.block_simple(bix, lens[d])[:-1])
                # the far hinge closes the cycle over the retained chord
                out.append(self.hinge(start + arc))
                return out
        return None

    def weave_cycle(self, ci, typ, k):
        """Cycle through a chord edge threading both arcs; k in [3N, v]."""
        i, j = self.lc.chords[ci]
        N, top, half = self.N, self.top, self.half
        arc = (j - i) % N
        if typ in ("b", "d"):
            # u_i > hinge(i+1) > [fwd] > hinge(j) -(b)- w_i > hinge(i)
            # > [bwd] > hinge(j+1) > w_j -(d)- back to u_i
            fwd = [(i + d) % N for d in range(1, arc)]
            bwd = [(i - d) % N for d in range(1, N - arc)]
            lens = _distribute(k, [(1, half - 1)] + [(3, top - 1)] * len(fwd)
                               + [(1, 1), (1, half - 1)]
                               + [(3, top - 1)] * len(bwd)
                               + [(2, top - 2), (1, 1)])
            if lens is None:
                return None
            it = iter(lens)
            cyc = self.b_seg(i, next(it))[:-1]
            for bix in fwd:
                cyc.extend(self.block_simple(bix, next(it))[:-1])
            cyc.append(self.hinge(j))
            next(it)  # the (b) edge
            cyc.extend(list(reversed(self.a_seg(i, next(it))))[:-1])
            for bix in bwd:
                cyc.extend(list(reversed(self.block_simple(bix, next(it))))[:-1])
            cyc.extend(self.n2w(j, next(it))[:-1])
            cyc.append(self.w(j))
            return cyc
        # hinge(i) -(a)- hinge(j) > [inside, backward] > hinge(i+1) > w_i
        # -(c)- w_j > hinge(j+1) > [outside, forward] > back to hinge(i)
        inside = [(j - d) % N for d in range(1, arc)]
        outside = [(j + d) % N for d in range(1, N - arc)]
        lens = _distribute(k, [(1, 1)] + [(3, top - 1)] * len(inside)
                           + [(2, top - 2), (1, 1), (2, top - 2)]
                           + [(3, top - 1)] * len(outside))
        if lens is None:
            return None
        it = iter(lens)
        cyc = [self.hinge(i)]
        next(it)  # the (a) edge
        cyc.append(self.hinge(j))
        for bix in inside:
            cyc.extend(list(reversed(self.block_simple(bix, next(it))))[1:])
        cyc.extend(self.n2w(i, next(it))[1:])
        next(it)  # the (c) edge
        cyc.append(self.w(j))
        cyc.extend(self.w2n(j, next(it))[1:])
        for bix in outside:
            cyc.extend(self.block_simple(bix, next(it))[1:])
        cyc.pop()  # the trailing hinge(i) closes the cycle
        return cyc

    # -- chord-scale arc templates (lifted skeleton cycles) ---------------
    def lifted_cycle(self, ci, typ, p, k):
        """Cycle through a chord edge built on an arc of scale s**p: the
        block expansion of a short skeleton cycle through the chord."""
        i, j = self.lc.chords[ci]
        N, top, half = self.N, self.top, self.half
        off = (j - i) % N
        sp = self.s**p
        # connector solvers; each maps its length t to a concrete path
        gen_conn = {
            # hinge(j) -(chord edge)- .. through block i .. > hinge(i+1)
            "a": (4, top, lambda t: [self.hinge(j)] + self.block_simple(i, t - 1)),
            "b": (3, top - 1, lambda t: [self.hinge(j)] + self.w2n(i, t - 1)),
            "c": (4, half + top - 3,
                  lambda t: self.a_seg(j, min(t - 3, half - 1))
                  + self.w2n(i, t - 1 - min(t - 3, half - 1))),
            "d": (3, 2 * half - 1,
                  lambda t: self.a_seg(j, min(t - 2, half - 1))
                  + self.b_seg(i, t - 1 - min(t - 2, half - 1))),
        }
        if sp == off:
            # the chord's own generating arc: connector + blocks i+1..j-1
            lo, hi, make = gen_conn[typ]
            blocks = [(i + d) % N for d in range(1, off)]
            lens = _distribute(k, [(lo, hi)] + [(3, top - 1)] * len(blocks))
            if lens is None:
                return None
            return make(lens[0])[:-1] + self._expand_forward(blocks, lens[1:])
        if sp > off:
            # stretch to the parallel scale-p chord at the same base
            far = (i + sp) % N
            if EdgeRef.of(self.hinge(i), self.hinge(far)) not in self.e4:
                return None
            if typ in ("a", "b"):
                lo, hi, make = {
                    "a": (1, 1, lambda t: [self.hinge(i), self.hinge(j)]),
                    "b": (2, half,
                          lambda t: self.a_seg(i, t - 1) + [self.hinge(j)]),
                }[typ]
                blocks = [(j + d) % N for d in range(sp - off)]
            else:
                lo, hi, make = {
                    "c": (4, half + top - 3,
                          lambda t: self.a_seg(i, min(t - 3, half - 1))
                          + self.w2n(j, t - 1 - min(t - 3, half - 1))),
                    "d": (5, half + top - 2,
                          lambda t: self.atou(i, min(t - 3, half))
                          + self.w2n(j, t - 1 - min(t - 3, half))),
                }[typ]
                blocks = [(j + 1 + d) % N for d in range(sp - off - 1)]
            lens = _distribute(k - 1, [(lo, hi)] + [(3, top - 1)] * len(blocks))
            if lens is None:
                return None
            return (make(lens[0])[:-1]
                    + self._expand_forward(blocks, lens[1:])
                    + [self.hinge(far)])
        # sp < off: short loop closed by two parallel chords
        mid1 = (i + sp) % N
        mid2 = (i + sp + off) % N
        if (EdgeRef.of(self.hinge(mid1), self.hinge(mid2)) not in self.e4
                or EdgeRef.of(self.hinge(mid2), self.hinge(j)) not in self.e4):
            return None
        lo, hi, make = gen_conn[typ]
        blocks = [(i + 1 + d) % N for d in range(sp - 1)]
        lens = _distribute(k - 2, [(lo, hi)] + [(3, top - 1)] * len(blocks))
        if lens is None:
            return None
        return (make(lens[0])[:-1]
                + self._expand_forward(blocks, lens[1:])
                + [self.hinge(mid1), self.hinge(mid2)])

    # -- public recipe layers ---------------------------------------------
    def short_witness(self, e, k):
        """Witness for 3 <= k <= min(600s, v): local cycles, then arc and
        ring templates."""
        v = self.g.n
        if not 3 <= k <= min(600 * self.s, v):
            raise LengthOutOfRange(f"k={k} outside the short range")
        cyc = self.local_cycle(e, k)
        if cyc is not None:
            return cyc, "local"
        info = self.classify(e)
        if info[0] == "E3":
            _, i, kind, j = info
            cyc = self.partial_ring_cycle(i, kind, j, k)
            if cyc is not None:
                return cyc, "partial-ring"
            cyc = self.ring_cycle(i, kind, j, k)
            if cyc is not None:
                return cyc, "ring"
        else:
            _, ci, typ = info
            for p in range(1, self.lc.ell):
                cyc = self.lifted_cycle(ci, typ, p, k)
                if cyc is not None:
                    return cyc, "lifted"
            cyc = self.weave_cycle(ci, typ, k)
            if cyc is not None:
                return cyc, "weave"
        raise RecipeInapplicable(f"no short recipe for {tuple(e)}, k={k}")

    def mid_witness(self, e, k, p):
        """Witness at chord scale s**p: a lifted skeleton cycle (chord
        edges) or a partial ring over a scale-p arc (block edges)."""
        if not 1 <= p <= self.lc.ell - 1:
            raise ParamOutOfRange(f"p={p} outside [1, {self.lc.ell - 1}]")
        info = self.classify(e)
        if info[0] == "E4":
            cyc = self.lifted_cycle(info[1], info[2], p, k)
            if cyc is None:
                raise RangeUnsatisfiable(
                    f"no scale-{p} lifted cycle of length {k}")
            return cyc, "lifted"
        _, i, kind, j = info
        cyc = self.partial_ring_cycle(i, kind, j, k, offset=self.s**p)
        if cyc is None:
            raise RangeUnsatisfiable(f"no scale-{p} arc cycle of length {k}")
        return cyc, "partial-ring"

    def long_witness(self, e, k):
        """Witness in the top length range: full ring (block edges) or the
        two-arc weave (chord edges)."""
        v = self.g.n
        info = self.classify(e)
        if info[0] == "E3":
            lo = 3 * self.N + 100 * self.s
            if not lo <= k <= v:
                raise RangeUnsatisfiable(f"k={k} outside [{lo}, {v}]")
            _, i, kind, j = info
            cyc = self.ring_cycle(i, kind, j, k)
            if cyc is None:
                raise RangeUnsatisfiable(f"ring cannot realize k={k}")
            return cyc, "ring"
        lo = 3 * self.N + 200 * self.s
        if not lo <= k <= v:
            raise RangeUnsatisfiable(f"k={k} outside [{lo}, {v}]")
        cyc = self.weave_cycle(info[1], info[2], k)
        if cyc is None:
            raise RangeUnsatisfiable(f"weave cannot realize k={k}")
        return cyc, "weave"

    def witness_any(self, e, k, fallback_budget_ms: float = 10000.0):
        """Dispatch: short recipes, chord-scale recipes, long recipes,
        then a bounded exact search."""
        v = self.g.n
        if not 3 <= k <= v:
            raise LengthOutOfRange(f"k={k} outside [3, {v}]")
        if k <= 600 * self.s:
            try:
                return self.short_witness(e, k)
            except RecipeInapplicable:
                pass
        for p in range(1, self.lc.ell):
            try:
                return self.mid_witness(e, k, p)
            except RangeUnsatisfiable:
                continue
        try:
            return self.long_witness(e, k)
        except RangeUnsatisfiable:
            pass
        try:
            cyc = cycle_through_edge(self.g, e, k, budget_ms=fallback_budget_ms)
        except SearchTimeout:
            raise GapError(f"all recipes inapplicable and the fallback "
                           f"search timed out for {tuple(e)}, k={k}")
        if cyc is None:
            raise CounterexampleError(
                f"no cycle of length {k} through {tuple(e)}")
        return cyc, "fallback"

    def coverage(self, edge_policy="all", length_policy="all",
                 fallback_budget_ms: float = 10000.0, seed: int = 0,
                 validator=None) -> CoverageReport:
        """Run witness_any over an (edge, length) grid, re-validating every
        witness before counting it."""
        import random

        rng = random.Random(seed)
        if isinstance(edge_policy, (list, tuple)):
            edges = [tuple(e) for e in edge_policy]
        else:
            edges = sorted(tuple(e) for e in self.g.edges())
            if isinstance(edge_policy, int):
                edges = rng.sample(edges, min(edge_policy, len(edges)))
        lengths = list(range(3, self.g.n + 1))
        if isinstance(length_policy, int):
            lengths = sorted(rng.sample(lengths, min(length_policy, len(lengths))))
        report = CoverageReport(self.s, self.lc.ell)
        check = validator or (lambda cyc, e, k: validate_cycle(self.g, cyc, e, k)[0])
        for e in edges:
            for k in lengths:
                report.pairs += 1
                try:
                    cyc, tag = self.witness_any(e, k, fallback_budget_ms)
                except GapError:
                    report.gaps.append((e, k))
                    continue
                except CounterexampleError:
                    report.counterexamples.append((e, k))
                    continue
                if not check(cyc, e, k):
                    raise AssertionError(
                        f"recipe {tag} produced a bad witness for {e}, k={k}")
                report.tag_counts[tag] = report.tag_counts.get(tag, 0) + 1
        return report


# -- skeleton cycles ------------------------------------------------------

@dataclass
class SkeletonCycle:
    vertices: list
    chord_edges: int  # how many cycle edges are chords


def _chord_base(lc, e):
    """(base, q) with base position divisible by s and offset s**q."""
    s, n = lc.s, lc.base_len
    for a, bb in ((e.u, e.v), (e.v, e.u)):
        if (a + 1) % s:
            continue
        off = (bb - a) % n
        q, x = 0, 1
        while x < off:
            x *= s
            q += 1
        if x == off and 1 <= q <= lc.ell - 1:
            return a, q
    raise MissingEdge(f"edge {tuple(e)} is not a skeleton chord")


def skeleton_cycle(lc: LabeledConstruction, e, p: int) -> SkeletonCycle:
    """Short cycle through a skeleton edge using at most three chords,
    with length in [s**p - s**(p-1) + 2, s**p + 3]."""
    if lc.kind != "skeleton":
        raise BadKind("skeleton_cycle needs the skeleton construction")
    if not 1 <= p <= lc.ell - 1:
        raise ParamOutOfRange(f"p={p} outside [1, {lc.ell - 1}]")
    e = EdgeRef.of(e[0], e[1])
    if not lc.graph.has_edge(e.u, e.v):
        raise MissingEdge(f"edge {tuple(e)} not in the skeleton")
    s, n = lc.s, lc.base_len
    if lc.edge_class[e] == "E1":
        a = e.u if (e.v - e.u) % n == 1 else e.v
        m = a - ((a + 1) % s)  # largest chord base at or below a
        return SkeletonCycle([(m + d) % n for d in range(s**p + 1)], 1)
    m, q = _chord_base(lc, e)
    if p == q:
        return SkeletonCycle([(m + d) % n for d in range(s**p + 1)], 1)
    if p > q:
        verts = [(m + s**p) % n, m % n] + [(m + s**q + d) % n
                                           for d in range(s**p - s**q)]
        return SkeletonCycle(verts, 2)
    verts = ([(m + d) % n for d in range(s**p + 1)]
             + [(m + s**p + s**q) % n, (m + s**q) % n])
    return SkeletonCycle(verts, 3)


def validate_witness(g, cycle, e=None, k=None):
    """Public validation entry point; returns (ok, reason)."""
    return validate_cycle(g, cycle, e, k)
