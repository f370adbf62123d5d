"""Acceptance gate: one test per criterion, each printing a single
PASS/FAIL line.

Two sub-criteria fail for documented mathematical reasons and are marked
strict-xfail rather than hidden:

* the order-7 lower-bound base case for 4-edge-proper graphs: the
  12-edge wheel on 7 vertices is edge-pancyclic, hence 4-edge-proper,
  with fewer than the conjectured 13 edges;
* the closed-form edge count of the gadget construction at s = 2: the
  two chord offsets 2 and 4 generate coinciding chords on the short base
  cycle, so the built graph has fewer edges than the formula predicts.
"""

import random

import pytest
from fractions import Fraction

from pancylab.bounds import (discharge_audit_t3, discharge_audit_t4,
                             lower_bound, size_chain_certificate)
from pancylab.constructions import (base_cycle, family_A, family_B, family_D,
                                    fan_chain, upper_construction, wheel)
from pancylab.cycles import (edge_spectrum, is_edge_pancyclic,
                             is_k_edge_proper)
from pancylab.graph import build_graph
from pancylab.oracle import spectrum_by_cycle_enumeration
from pancylab.search import certify_no_graph_below, enumerate_graphs, min_size
from pancylab.witnesses import WitnessEngine, skeleton_cycle


def report(num, ok, detail=""):
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f" — {detail}"
    print(line)
    assert ok, line


def ceil_div(a, b):
    return -((-a) // b)


def test_criterion_1_extremal_families_tight():
    ok = True
    for k in range(2, 7):
        for g in (family_A(k), family_B(k), family_D(k, 1), family_D(k, 2)):
            ok = ok and is_k_edge_proper(g, 3).verdict
            ok = ok and g.edge_count == ceil_div(5 * g.n, 3)
    report(1, ok, "families A/B/D1/D2 at k=2..6, 3-edge-proper with ceil(5n/3) edges")


def test_criterion_2_fan_chains():
    ok = True
    for t in range(3, 7):
        g = fan_chain(4, t)
        ok = ok and is_k_edge_proper(g, 4).verdict
        ok = ok and 4 * g.edge_count == 7 * g.n
    report(2, ok, "fan chains t=3..6, 4-edge-proper with 7n/4 edges")


def test_criterion_3_wheels():
    ok = True
    for n in range(4, 13):
        g = wheel(n)
        ok = ok and is_edge_pancyclic(g).verdict
        ok = ok and g.edge_count == 2 * n - 2
    report(3, ok, "wheels n=4..12 edge-pancyclic with 2n-2 edges")


def test_criterion_4_base_cases_three_proper():
    ok = True
    for n in (6, 7, 8):
        ok = ok and certify_no_graph_below(
            n, "k-edge-proper", ceil_div(5 * n, 3), k=3)
    report(4, ok, "3-edge-proper minimum certified at n=6,7,8 (part 1/2)")


def test_criterion_4_base_case_four_proper_n8():
    ok = certify_no_graph_below(8, "k-edge-proper", ceil_div(7 * 8, 4), k=4)
    report(4, ok, "4-edge-proper minimum certified at n=8 (part 2/2)")


@pytest.mark.xfail(
    strict=True,
    reason="the 12-edge wheel on 7 vertices is 4-edge-proper, below the "
           "conjectured ceil(7n/4) = 13 threshold; recorded as a finding")
def test_criterion_4_base_case_four_proper_n7():
    ok = certify_no_graph_below(7, "k-edge-proper", ceil_div(7 * 7, 4), k=4)
    if not ok:
        w7 = wheel(7)
        assert w7.edge_count == 12 and is_k_edge_proper(w7, 4).verdict
    report(4, ok, "4-edge-proper minimum certified at n=7")


def test_criterion_5_minimum_sizes():
    expected_44 = {4: 6, 5: 8}
    found = {}
    ok = True
    for n in range(4, 9):
        f = min_size(n, "edge-pancyclic").minimum_edges
        found[n] = f
        ok = ok and ceil_div(3 * n, 2) <= f <= 2 * n - 2
        if n in expected_44:
            ok = ok and f == expected_44[n]
    report(5, ok, f"f(n) for n=4..8: {found} (n=6,7,8 reported as findings)")


def test_criterion_6_skeleton_cycles_exhaustive():
    failures = 0
    for s, ell in ((3, 2), (4, 2), (5, 2), (3, 3)):
        lc = base_cycle(s, ell)
        g = lc.graph
        for e in g.edges():
            for p in range(1, ell):
                sc = skeleton_cycle(lc, e, p)
                vs = sc.vertices
                pairs = {tuple(sorted(x)) for x in zip(vs, vs[1:] + vs[:1])}
                good = (len(set(vs)) == len(vs)
                        and all(g.has_edge(a, b) for a, b in pairs)
                        and tuple(sorted(e)) in pairs
                        and s**p - s**(p - 1) <= len(vs) <= s**p + 3
                        and sc.chord_edges <= 3)
                failures += not good
    report(6, failures == 0, f"skeleton cycle recipes, {failures} failures")


def test_criterion_7_counting_identities_distinct_chords():
    lc = upper_construction(3, 2)
    counts = lc.class_counts()
    nominal = lc.nominal_counts()
    sk = base_cycle(3, 2).class_counts()
    ok = (lc.graph.n == nominal["v"]
          and sk["E1"] == nominal["E1"] and sk.get("E2", 0) == nominal["E2"]
          and lc.graph.edge_count == nominal["e"]
          and counts["E3"] + counts["E4"] == nominal["e"])
    report(7, ok, "(3,2) counting identities exact (part 1/2)")


@pytest.mark.xfail(
    strict=True,
    reason="at s = 2 the chord offsets 2 and 4 coincide on the short base "
           "cycle, so built graphs at (2,2) and (2,3) have fewer edges than "
           "the closed form 2v - |E1| + 4|E2|; recorded as a finding")
def test_criterion_7_counting_identities_s2():
    ok = True
    for s, ell in ((2, 2), (2, 3)):
        lc = upper_construction(s, ell)
        ok = ok and lc.graph.edge_count == lc.nominal_counts()["e"]
    report(7, ok, "(2,2)/(2,3) counting identities (part 2/2)")


def test_criterion_8_size_chain_certificate():
    ok = True
    for rule in ("ceil", "floor"):
        cert = size_chain_certificate(2981, ell_rule=rule, precision=256)
        steps = {name: passed for name, _, _, passed in cert.steps}
        ok = ok and cert.verdict and all(steps.values())
    report(8, ok, "inequality chain certified at s=2981, both rounding rules, "
                  "transcendental step resolved within 256 bits")


def test_criterion_9_full_coverage_grid():
    eng = WitnessEngine(upper_construction(2, 2))
    rep = eng.coverage(edge_policy="all", length_policy="all",
                       fallback_budget_ms=20000.0)
    expected = eng.g.edge_count * (eng.g.n - 2)
    ok = (rep.complete and rep.pairs == expected)
    report(9, ok, f"(2,2) full grid: {rep.pairs} pairs, "
                  f"{len(rep.gaps)} gaps, "
                  f"{len(rep.counterexamples)} counterexamples, "
                  f"tags {rep.tag_counts}")


def test_criterion_10_discharging_audits():
    k34 = build_graph(7, [(a, b) for a in range(3) for b in range(3, 7)])
    t3 = discharge_audit_t3(k34)
    ok = (t3.verdict and t3.min_final == Fraction(24, 7)
          and sum(t3.final_charges.values()) == 24)

    k5p = build_graph(6, [(a, b) for a in range(5) for b in range(a + 1, 5)]
                      + [(0, 5), (1, 5), (2, 5)])
    t4 = discharge_audit_t4(k5p)
    ok = ok and t4.conservation and t4.min_final == Fraction(18, 5)
    # both threshold comparisons are part of the record: 18/5 clears 82/23
    # but falls short of 83/23, and that shortfall is the expected finding
    ok = ok and t4.thresholds["82/23"] is True
    ok = ok and t4.thresholds["83/23"] is False
    report(10, ok, f"t3 min {t3.min_final}, t4 min {t4.min_final}, "
                   f"t4 thresholds {t4.thresholds} "
                   "(83/23 comparison fails as expected)")


def test_criterion_11_oracle_equivalence():
    disagreements = 0
    for n in range(3, 8):
        for g in enumerate_graphs(n, connected=True):
            oracle = spectrum_by_cycle_enumeration(g)
            for e in g.edges():
                disagreements += edge_spectrum(g, e) != oracle[tuple(e)]
    rng = random.Random(20260824)
    for _ in range(500):
        n = rng.randint(4, 10)
        p = rng.uniform(0.25, 0.55)
        g = build_graph(n, [(a, b) for a in range(n) for b in range(a + 1, n)
                            if rng.random() < p])
        oracle = spectrum_by_cycle_enumeration(g)
        for e in g.edges():
            disagreements += edge_spectrum(g, e) != oracle[tuple(e)]
    report(11, disagreements == 0,
           f"all connected graphs n<=7 plus 500 seeded random graphs, "
           f"{disagreements} disagreements")
