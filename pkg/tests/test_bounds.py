"""Bound formulas, the big-integer size-chain certificate, and the
exact-rational discharging audits."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pancylab.bounds import (construction_counts, discharge_audit_t3,
                             discharge_audit_t4, g_range, lower_bound,
                             size_chain_certificate)
from pancylab.errors import BadKind, ParamTooSmall
from pancylab.graph import build_graph


def complete_bipartite(a, b):
    return build_graph(a + b, [(x, y) for x in range(a)
                               for y in range(a, a + b)])


class TestLowerBound:
    @given(st.integers(1, 10**6))
    def test_formulas_are_exact_ceilings(self, n):
        import math

        assert lower_bound(n, "3n2") == math.ceil(3 * n / 2)
        assert lower_bound(n, "5n3") == math.ceil(5 * n / 3)
        assert lower_bound(n, "7n4") == math.ceil(7 * n / 4)

    def test_known_values(self):
        assert lower_bound(9, "7n4") == 16
        assert lower_bound(6, "5n3") == 10

    @given(st.integers(1, 10**4), st.integers(4, 50))
    def test_conjecture_formula(self, n, k):
        want = -((-(4 * k - 9) * n) // (2 * k - 4))
        assert lower_bound(n, "conj", k) == want

    def test_conjecture_matches_known_cases_at_small_k(self):
        # k = 4 gives 7n/4; the conjectured formula interpolates it
        for n in range(4, 40):
            assert lower_bound(n, "conj", 4) == lower_bound(n, "7n4")

    def test_bad_inputs(self):
        with pytest.raises(BadKind):
            lower_bound(5, "nope")
        with pytest.raises(BadKind):
            lower_bound(5, "conj", 3)
        with pytest.raises(ParamTooSmall):
            lower_bound(0, "3n2")

    def test_g_range_brackets(self):
        lo, hi = g_range(6)
        assert lo == Fraction(9) and hi == 10


class TestSizeChain:
    def test_passes_at_threshold_scale(self):
        for rule in ("ceil", "floor"):
            cert = size_chain_certificate(2981, ell_rule=rule)
            assert cert.verdict, cert.steps
            names = [s[0] for s in cert.steps]
            assert len(names) == 5
            # the transcendental step resolves within 256 bits
            assert all(ok for _, _, _, ok in cert.steps)

    def test_certificate_records_exact_integers(self):
        cert = size_chain_certificate(2981)
        slack = cert.steps[2]
        assert isinstance(slack[1], int) and isinstance(slack[2], int)
        assert slack[1] >= slack[2]

    def test_fails_below_threshold(self):
        cert = size_chain_certificate(100, ell=12)
        assert not cert.verdict

    def test_log_step_actually_certified(self):
        # e^s > n for a deliberately tiny graph: the enclosure must refuse
        cert = size_chain_certificate(2981, ell=1)
        log_step = cert.steps[3]
        assert not log_step[3]

    def test_counts_match_construction_formulas(self):
        c = construction_counts(3, 2)
        assert c == {"v": 299 * 9, "E1": 9, "E2": 3, "e": 2 * 299 * 9 - 9 + 12}


class TestDischargeT3:
    def test_k34_exact_minimum(self):
        rep = discharge_audit_t3(complete_bipartite(3, 4))
        assert rep.verdict
        assert rep.min_final == Fraction(24, 7)
        assert sum(rep.final_charges.values()) == 24
        assert rep.conservation

    def test_adjacent_degree_three_rejected(self):
        # K4: all degrees 3, V3 not independent
        g = build_graph(4, [(a, b) for a in range(4) for b in range(a + 1, 4)])
        rep = discharge_audit_t3(g)
        assert not rep.verdict and rep.failure[1] == "V3 not independent"


def k5_with_pendant_triangle():
    """K5 plus a sixth vertex joined to a triangle of the K5."""
    edges = [(a, b) for a in range(5) for b in range(a + 1, 5)]
    return build_graph(6, edges + [(0, 5), (1, 5), (2, 5)])


class TestDischargeT4:
    def test_runs_to_completion_with_exact_minimum(self):
        rep = discharge_audit_t4(k5_with_pendant_triangle())
        assert rep.verdict  # conservation holds
        assert rep.min_final == Fraction(18, 5)
        assert rep.conservation

    def test_threshold_comparisons_reported(self):
        rep = discharge_audit_t4(k5_with_pendant_triangle())
        assert rep.thresholds["82/23"] is (Fraction(18, 5) >= Fraction(82, 23))
        assert rep.thresholds["83/23"] is False  # 18/5 < 83/23
        assert rep.thresholds["18/5"] is True

    def test_unclassifiable_vertex_reported(self):
        # C6: every vertex has degree 2 -> degree classes already reject
        from pancylab.errors import MinDegreeTooLow

        g = build_graph(6, [(i, (i + 1) % 6) for i in range(6)])
        with pytest.raises(MinDegreeTooLow):
            discharge_audit_t4(g)

    def test_charge_conservation_generic(self):
        rep = discharge_audit_t4(k5_with_pendant_triangle())
        assert sum(rep.final_charges.values()) == 2 * 13
