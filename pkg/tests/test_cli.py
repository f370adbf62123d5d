"""Command-line adapter: exit-code contract, canonical reports, and
byte-identical deterministic reruns."""

import json
import os

import pytest

from pancylab.cli import (EXIT_FAIL, EXIT_GAP, EXIT_PASS, EXIT_USAGE,
                          canonical_json, main, run)
from pancylab.graph import build_graph, from_graph6, to_graph6


def write_g6(path, g):
    with open(path, "wb") as fh:
        fh.write(to_graph6(g) + b"\n")


def cycle_graph(n):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


class TestExitCodes:
    def test_construct_then_verify(self, tmp_path):
        out = str(tmp_path / "a6.g6")
        assert main(["construct", "--family", "A", "--k", "2",
                     "--out", out]) == EXIT_PASS
        assert main(["verify", "--in", out, "--property", "kproper",
                     "--k", "3"]) == EXIT_PASS

    def test_property_failure_is_one(self, tmp_path, capsys):
        p = str(tmp_path / "c6.g6")
        write_g6(p, cycle_graph(6))
        assert main(["verify", "--in", p, "--property", "ep"]) == EXIT_FAIL
        assert "((0, 1), 3)" in capsys.readouterr().out

    def test_parameter_errors_are_two(self, tmp_path):
        p = str(tmp_path / "c6.g6")
        write_g6(p, cycle_graph(6))
        assert main(["verify", "--in", p, "--property", "kproper"]) == EXIT_USAGE
        assert main(["verify", "--in", str(tmp_path / "nope.g6"),
                     "--property", "ep"]) == EXIT_USAGE
        assert main(["bounds", "--formula", "conj", "--n", "5"]) == EXIT_USAGE
        assert main(["construct", "--family", "G", "--s", "2"]) == EXIT_USAGE
        assert main(["witness", "--s", "2", "--ell", "1", "--edge", "zz",
                     "--length", "5"]) == EXIT_USAGE

    def test_unknown_flag_is_two(self):
        assert main(["bounds", "--no-such-flag"]) == EXIT_USAGE

    def test_bounds_prints_value(self, capsys):
        assert main(["bounds", "--formula", "7n4", "--n", "9"]) == EXIT_PASS
        assert capsys.readouterr().out.strip() == "16"


class TestConstruct:
    def test_graph6_output_loads(self, tmp_path):
        out = str(tmp_path / "w.g6")
        main(["construct", "--family", "wheel", "--n", "7", "--out", out])
        g = from_graph6(open(out, "rb").read().strip())
        assert (g.n, g.edge_count) == (7, 12)

    def test_label_sidecar(self, tmp_path):
        out = str(tmp_path / "g.g6")
        lab = str(tmp_path / "g.json")
        main(["construct", "--family", "G", "--s", "2", "--ell", "2",
              "--out", out, "--labels", lab])
        labels = json.load(open(lab))
        g = from_graph6(open(out, "rb").read().strip())
        assert labels["params"] == {"s": 2, "ell": 2}
        assert labels["block_size"] == 199
        assert len(labels["edge_class"]) == g.edge_count

    def test_all_families_build(self, tmp_path):
        cases = [
            ["--family", "fan", "--k", "5"],
            ["--family", "B", "--k", "3"],
            ["--family", "D1", "--k", "3"],
            ["--family", "D2", "--k", "3"],
            ["--family", "fanchain", "--k", "4", "--t", "3"],
            ["--family", "G1", "--s", "3", "--ell", "2"],
        ]
        for i, extra in enumerate(cases):
            out = str(tmp_path / f"f{i}.g6")
            assert main(["construct"] + extra + ["--out", out]) == EXIT_PASS


class TestReports:
    def test_canonical_json_rationals(self):
        from fractions import Fraction

        text = canonical_json({"x": Fraction(24, 7), "big": 1 << 80})
        data = json.loads(text)
        assert data["x"] == "24/7"
        assert data["big"] == str(1 << 80)
        assert "3.4" not in text  # never decimal

    def test_sorted_keys(self):
        text = canonical_json({"b": 1, "a": 2})
        assert text.index('"a"') < text.index('"b"')

    def test_deterministic_rerun_byte_identical(self, tmp_path):
        rpt = str(tmp_path / "r.json")
        cmd = ["coverage", "--s", "2", "--ell", "2", "--edges", "sample:4",
               "--lengths", "sample:4", "--deterministic", "--report", rpt]
        main(cmd)
        first = open(rpt, "rb").read()
        main(cmd)
        assert open(rpt, "rb").read() == first

    def test_missing_directory_is_io_error(self, tmp_path):
        rpt = str(tmp_path / "no" / "such" / "dir" / "r.json")
        assert main(["bounds", "--formula", "3n2", "--n", "4",
                     "--report", rpt]) == EXIT_USAGE

    def test_run_report_shape(self, tmp_path):
        rpt = str(tmp_path / "r.json")
        report, code = run(["verify", "--in", _k4(tmp_path),
                            "--property", "ep", "--report", rpt])
        assert code == EXIT_PASS
        data = json.load(open(rpt))
        assert set(data) == {"command", "version", "wall_time_ms",
                             "outcome", "exit_code"}
        assert data["outcome"]["verdict"] == "pass"


def _k4(tmp_path):
    p = str(tmp_path / "k4.g6")
    write_g6(p, build_graph(4, [(a, b) for a in range(4)
                                for b in range(a + 1, 4)]))
    return p


class TestThinAdapters:
    def test_verify_matches_library(self, tmp_path):
        from pancylab.cycles import is_edge_pancyclic

        report, _ = run(["verify", "--in", _k4(tmp_path), "--property", "ep"])
        lib = is_edge_pancyclic(build_graph(4, [(a, b) for a in range(4)
                                                for b in range(a + 1, 4)]))
        assert (report["outcome"]["verdict"] == "pass") == lib.verdict

    def test_search_matches_library(self):
        from pancylab.search import min_size

        report, code = run(["search", "--n", "4", "--property", "ep"])
        assert code == EXIT_PASS
        assert report["outcome"]["minimum_edges"] == \
            min_size(4, "edge-pancyclic").minimum_edges

    def test_bounds_theorem_certificate(self):
        report, code = run(["bounds", "--theorem7", "--s", "2981"])
        assert code == EXIT_PASS
        assert report["outcome"]["verdict"] == "pass"
        assert len(report["outcome"]["steps"]) == 5

    def test_audit_matches_library(self, tmp_path):
        p = str(tmp_path / "k34.g6")
        write_g6(p, build_graph(7, [(a, b) for a in range(3)
                                    for b in range(3, 7)]))
        report, code = run(["audit", "--in", p, "--scheme", "t3"])
        assert code == EXIT_PASS
        from fractions import Fraction

        assert report["outcome"]["min_final"] == Fraction(24, 7)

    def test_witness_validates(self):
        report, code = run(["witness", "--s", "2", "--ell", "2",
                            "--edge", "0,1", "--length", "10", "--validate"])
        assert code == EXIT_PASS
        assert report["outcome"]["validated"] is True

    def test_spectrum_complete_vs_incomplete(self, tmp_path):
        assert main(["spectrum", "--in", _k4(tmp_path)]) == EXIT_PASS
        p = str(tmp_path / "c5.g6")
        write_g6(p, cycle_graph(5))
        assert main(["spectrum", "--in", p]) == EXIT_FAIL

    def test_coverage_parallel_matches_serial(self):
        a, code_a = run(["coverage", "--s", "2", "--ell", "2", "--edges",
                         "sample:6", "--lengths", "sample:6", "--jobs", "1",
                         "--deterministic"])
        b, code_b = run(["coverage", "--s", "2", "--ell", "2", "--edges",
                         "sample:6", "--lengths", "sample:6", "--jobs", "3",
                         "--deterministic"])
        assert code_a == code_b == EXIT_PASS
        assert a["outcome"]["pairs"] == b["outcome"]["pairs"]
        assert a["outcome"]["complete"] and b["outcome"]["complete"]
