"""Deterministic generators for every graph family used by the lab.

Families: wheels, fans, the three small extremal families (A, B, D), the
fan-chain ring, and the two-stage chorded-cycle construction (skeleton
plus gadget replacement) with full edge-class and block-coordinate
metadata attached.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath

from .errors import DegenerateCycle, ParamOutOfRange, ParamTooSmall
from .graph import EdgeRef, Graph, build_graph


def wheel(n: int) -> Graph:
    """Hub vertex 0 joined to the cycle 1..n-1."""
    if n < 4:
        raise ParamTooSmall("wheel needs n >= 4")
    rim = n - 1
    edges = [(0, i) for i in range(1, n)]
    edges += [(1 + i, 1 + (i + 1) % rim) for i in range(rim)]
    return build_graph(n, edges)


def fan(k: int) -> Graph:
    """Center vertex 0 joined to the path 1..k-1."""
    if k < 3:
        raise ParamTooSmall("fan needs k >= 3")
    edges = [(0, i) for i in range(1, k)]
    edges += [(i, i + 1) for i in range(1, k - 1)]
    return build_graph(k, edges)


def _cycle_with_guards(cycle_len: int, k: int):
    """Cycle v_1..v_cycle_len (ids 0..cycle_len-1) plus k guard vertices
    u_i (ids cycle_len..cycle_len+k-1), u_i joined to v_{2i-1}, v_{2i}, v_{2i+1}."""
    edges = [(i, (i + 1) % cycle_len) for i in range(cycle_len)]
    for i in range(1, k + 1):
        u = cycle_len + i - 1
        for t in (2 * i - 2, 2 * i - 1, 2 * i % cycle_len):
            edges.append((u, t))
    return edges


def family_A(k: int) -> Graph:
    if k < 2:
        raise ParamTooSmall("family A needs k >= 2")
    return build_graph(3 * k, _cycle_with_guards(2 * k, k))


def family_B(k: int) -> Graph:
    if k < 2:
        raise ParamTooSmall("family B needs k >= 2")
    edges = _cycle_with_guards(2 * k + 1, k)
    edges.append((2 * k, 1))  # v_{2k+1} v_2
    return build_graph(3 * k + 1, edges)


def family_D(k: int, variant: int) -> Graph:
    if k < 2:
        raise ParamTooSmall("family D needs k >= 2")
    if variant not in (1, 2):
        raise ParamOutOfRange("variant must be 1 or 2")
    edges = _cycle_with_guards(2 * k + 2, k)
    edges.append((2 * k + 1, 1))  # v_{2k+2} v_2
    if variant == 1:
        edges.append((2 * k, 0))  # v_{2k+1} v_1
    else:
        edges.append((2 * k + 1, 2 * k - 1))  # v_{2k+2} v_{2k}
    return build_graph(3 * k + 2, edges)


def fan_chain(k: int, t: int) -> Graph:
    """Ring of t fan gadgets F_{2k-3}; hinge vertices shared between copies."""
    if k < 4:
        raise ParamTooSmall("fan chain needs k >= 4")
    if t < 3:
        raise ParamTooSmall("fan chain needs t >= 3 (a ring)")
    seg = 2 * k - 4  # vertices per copy: seg-1 path vertices plus one center
    n = t * seg
    edges = []
    for c in range(t):
        base = c * seg
        # path v_1..v_{2k-4}: ids base..base+seg-2, next hinge is (base+seg) % n
        path = [base + i for i in range(seg - 1)] + [(base + seg) % n]
        center = base + seg - 1
        for a, b in zip(path, path[1:]):
            edges.append((a, b))
        for v in path:
            edges.append((center, v))
    return build_graph(n, edges)


# -- chorded-cycle construction ------------------------------------------


def ell_candidates(s: int) -> tuple:
    """(floor, ceil) of s / ln s, computed at high precision."""
    if s < 2:
        raise ParamTooSmall("s >= 2 required")
    with mpmath.workdps(60):
        x = mpmath.mpf(s) / mpmath.ln(s)
        fl = int(mpmath.floor(x))
        ce = int(mpmath.ceil(x))
    return fl, ce


@dataclass(frozen=True)
class ConstructionParams:
    s: int
    ell: int

    def __post_init__(self):
        if self.s < 2:
            raise ParamTooSmall("s >= 2 required")
        if self.ell < 1:
            raise ParamTooSmall("ell >= 1 required")


@dataclass
class LabeledConstruction:
    """A built graph plus construction metadata.

    kind is "skeleton" (cycle plus chords, classes E1/E2) or "full"
    (every cycle edge replaced by a gadget, classes E3/E4).
    """

    graph: Graph
    params: ConstructionParams
    kind: str
    edge_class: dict = field(repr=False)
    chords: list  # oriented (i, j) base pairs, 0-indexed blocks, i "before" j
    chord_slots: int  # chord occurrences generated before duplicate collapse

    @property
    def s(self) -> int:
        return self.params.s

    @property
    def ell(self) -> int:
        return self.params.ell

    @property
    def base_len(self) -> int:
        return self.s**self.ell

    @property
    def block_size(self) -> int:
        return 100 * self.s - 1

    def tau(self, i: int) -> tuple:
        """Window (t1, t2) around base index i (1-indexed): both divisible
        by s, t1 < i < t2, t2 - t1 = 2s."""
        s = self.s
        if not 1 <= i <= self.base_len:
            raise ParamOutOfRange(f"base index {i} outside [1, {self.base_len}]")
        if i % s == 0:
            t1 = i - s
        else:
            t1 = (i // s) * s
        return t1, t1 + 2 * s

    # block coordinates for the full construction ------------------------
    def vid(self, i: int, j: int) -> int:
        """Vertex id of position j in block i (0-indexed block, j in [1, 100s])."""
        b = self.block_size
        if j == b + 1:
            return ((i + 1) % self.base_len) * b
        return i * b + (j - 1)

    def coord(self, v: int) -> tuple:
        b = self.block_size
        return v // b, v % b + 1

    def class_counts(self) -> dict:
        counts = {}
        for cls in self.edge_class.values():
            counts[cls] = counts.get(cls, 0) + 1
        return counts

    def nominal_counts(self) -> dict:
        """The closed-form count formulas (exact big integers)."""
        s, ell = self.s, self.ell
        v = (100 * s - 1) * s**ell
        e1 = s**ell
        e2 = (ell - 1) * s ** (ell - 1)
        return {"v": v, "E1": e1, "E2": e2, "e": 2 * v - e1 + 4 * e2}


def _chords(s: int, ell: int):
    """Oriented chord list of the skeleton, plus pre-collapse slot count."""
    n = s**ell
    slots = 0
    seen = set()
    chords = []
    for i_exp in range(1, ell):
        off = s**i_exp
        for j in range(1, s ** (ell - 1) + 1):
            a = (j * s - 1) % n  # 0-indexed base position of v_{js}
            b = (j * s + off - 1) % n
            slots += 1
            key = (a, b) if a < b else (b, a)
            if key in seen:
                continue
            seen.add(key)
            # orientation: fewer clockwise steps wins, lower index on ties
            fwd = (b - a) % n
            bwd = (a - b) % n
            if fwd < bwd or (fwd == bwd and a < b):
                chords.append((a, b))
            else:
                chords.append((b, a))
    chords.sort()
    return chords, slots


def base_cycle(s: int, ell: int) -> LabeledConstruction:
    """Skeleton: cycle on s^ell vertices plus power-of-s chords."""
    params = ConstructionParams(s, ell)
    n = s**ell
    if n < 3:
        raise DegenerateCycle("cycle length below 3")
    chords, slots = _chords(s, ell)
    edge_class = {}
    edges = []
    for v in range(n):
        e = EdgeRef.of(v, (v + 1) % n)
        edges.append(tuple(e))
        edge_class[e] = "E1"
    for a, b in chords:
        e = EdgeRef.of(a, b)
        edges.append(tuple(e))
        edge_class[e] = "E2"
    return LabeledConstruction(build_graph(n, edges), params, "skeleton", edge_class, chords, slots)


def upper_construction(s: int, ell: int) -> LabeledConstruction:
    """Full construction: every skeleton cycle edge becomes a two-fan gadget,
    every chord becomes four edges between the gadget hubs and hinges."""
    skel = base_cycle(s, ell)
    params = skel.params
    n_base = skel.base_len
    b = 100 * s - 1
    lc = LabeledConstruction(skel.graph, params, "full", {}, skel.chords, skel.chord_slots)
    # lc.graph is a placeholder until the real graph is built below
    edges = []
    edge_class = {}

    def add(u, v, cls):
        e = EdgeRef.of(u, v)
        edges.append(tuple(e))
        edge_class[e] = cls

    half = 50 * s
    for i in range(n_base):
        w = lc.vid(i, half)
        u = lc.vid(i, half + 1)
        # fan A: path 1..50s-1 plus hub w
        for j in range(1, half - 1):
            add(lc.vid(i, j), lc.vid(i, j + 1), "E3")
        for j in range(1, half):
            add(w, lc.vid(i, j), "E3")
        # fan B: path 50s+2..100s plus hub u
        for j in range(half + 2, 100 * s):
            add(lc.vid(i, j), lc.vid(i, j + 1), "E3")
        for j in range(half + 2, 100 * s + 1):
            add(u, lc.vid(i, j), "E3")
        # the three joining edges
        add(w, u, "E3")
        add(w, lc.vid(i, half + 2), "E3")
        add(u, lc.vid(i, half - 1), "E3")
    for i, j in skel.chords:
        add(lc.vid(i, 1), lc.vid(j, 1), "E4")
        add(lc.vid(i, half), lc.vid(j, 1), "E4")
        add(lc.vid(i, half), lc.vid(j, half), "E4")
        add(lc.vid(i, half + 1), lc.vid(j, half), "E4")
    lc.graph = build_graph(n_base * b, edges)
    lc.edge_class = edge_class
    return lc


def gadget(s: int) -> Graph:
    """The stand-alone two-fan gadget H(s) on 100s vertices."""
    if s < 2:
        raise ParamTooSmall("s >= 2 required")
    half = 50 * s
    edges = []
    # fan A: path 0..half-2, hub half-1 ; fan B: path half..2*half-2, hub 2*half-1
    for j in range(half - 2):
        edges.append((j, j + 1))
    for j in range(half - 1):
        edges.append((half - 1, j))
    for j in range(half, 2 * half - 2):
        edges.append((j, j + 1))
    for j in range(half, 2 * half - 1):
        edges.append((2 * half - 1, j))
    edges.append((half - 1, half))  # w u_1
    edges.append((2 * half - 1, half - 2))  # u w_{50s-1}
    edges.append((2 * half - 1, half - 1))  # u w
    return build_graph(100 * s, edges)
