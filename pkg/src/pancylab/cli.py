"""Command-line entry point.

Every subcommand is a thin adapter over the library: parse arguments,
call one driver, assemble a run report, map the outcome to the exit-code
contract (0 pass/complete, 1 property failure or counterexample, 2
parameter error, 3 timeout or coverage gap), and optionally write the
report as canonical JSON (sorted keys, rationals as "p/q" strings,
oversized integers as decimal strings) so deterministic reruns are
byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .bounds import (discharge_audit_t3, discharge_audit_t4, g_range,
                     lower_bound, size_chain_certificate)
from .constructions import (base_cycle, family_A, family_B, family_D,
                            fan, fan_chain, upper_construction, wheel)
from .cycles import (SearchTimeout, edge_spectrum, is_edge_pancyclic,
                     is_k_edge_proper, is_vertex_pancyclic)
from .errors import PancylabError, UsageError
from .graph import Graph, from_adjacency_json, from_graph6, to_graph6
from .search import min_size
from .witnesses import WitnessEngine, validate_witness

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_GAP = 3


# -- canonical JSON -------------------------------------------------------

def _plain(obj):
    """Recursively convert report payloads to canonical JSON values."""
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) >= 1 << 53 else obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, Graph):
        return to_graph6(obj).decode("ascii")
    if isinstance(obj, bytes):
        return obj.decode("ascii")
    if isinstance(obj, dict):
        return {_key(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_plain(x) for x in items]
    if hasattr(obj, "__dataclass_fields__"):
        return {f: _plain(getattr(obj, f)) for f in obj.__dataclass_fields__}
    return str(obj)


def _key(k):
    if isinstance(k, str):
        return k
    if isinstance(k, (tuple, list)):
        return ",".join(str(x) for x in k)
    return str(k)


def canonical_json(payload) -> str:
    return json.dumps(_plain(payload), sort_keys=True, indent=2) + "\n"


def emit_report(payload, path: str) -> None:
    """Write canonical JSON; missing directories surface as IoError."""
    try:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(canonical_json(payload))
    except OSError as exc:
        raise IoError(str(exc)) from exc


class IoError(PancylabError):
    """Report path not writable."""


# -- shared helpers -------------------------------------------------------

def _read_graph(path: str) -> Graph:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    stripped = data.strip()
    if stripped.startswith(b"{"):
        return from_adjacency_json(stripped.decode("ascii"))
    return from_graph6(stripped.splitlines()[0])


def _parse_edge(text: str) -> tuple:
    try:
        u, v = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"--edge wants 'u,v', got {text!r}") from exc
    return u, v


def _parse_policy(text: str):
    if text == "all":
        return "all"
    if text.startswith("sample:"):
        try:
            return int(text.split(":", 1)[1])
        except ValueError:
            pass
    raise UsageError(f"policy must be 'all' or 'sample:N', got {text!r}")


def _require(args, *names):
    for name in names:
        if getattr(args, name, None) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required here")


_PROPERTY_NAMES = {"ep": "edge-pancyclic", "vp": "vertex-pancyclic",
                   "kproper": "k-edge-proper"}


def _run_property(g: Graph, prop: str, k, witnesses: bool):
    if prop == "ep":
        return is_edge_pancyclic(g, witnesses=witnesses)
    if prop == "vp":
        return is_vertex_pancyclic(g, witnesses=witnesses)
    _require_k(k)
    return is_k_edge_proper(g, k, witnesses=witnesses)


def _require_k(k):
    if k is None:
        raise UsageError("--k is required for kproper")


# -- subcommand drivers ---------------------------------------------------

def _cmd_construct(args):
    fam = args.family
    labels = None
    if fam == "wheel":
        _require(args, "n")
        g = wheel(args.n)
    elif fam == "fan":
        _require(args, "k")
        g = fan(args.k)
    elif fam in ("A", "B"):
        _require(args, "k")
        g = (family_A if fam == "A" else family_B)(args.k)
    elif fam in ("D1", "D2"):
        _require(args, "k")
        g = family_D(args.k, int(fam[1]))
    elif fam == "fanchain":
        _require(args, "k", "t")
        g = fan_chain(args.k, args.t)
    elif fam in ("G1", "G"):
        _require(args, "s", "ell")
        lc = (base_cycle if fam == "G1" else upper_construction)(args.s, args.ell)
        g = lc.graph
        labels = {
            "family": fam,
            "params": {"s": lc.s, "ell": lc.ell},
            "kind": lc.kind,
            "base_len": lc.base_len,
            "block_size": lc.block_size if lc.kind == "full" else None,
            "edge_class": {_key(tuple(e)): c for e, c in lc.edge_class.items()},
            "chords": [list(c) for c in lc.chords],
        }
    else:
        raise UsageError(f"unknown family {fam!r}")
    line = to_graph6(g)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(line + b"\n")
    else:
        sys.stdout.write(line.decode("ascii") + "\n")
    if args.labels:
        if labels is None:
            labels = {"family": fam, "edge_class": None}
        emit_report(labels, args.labels)
    payload = {"n": g.n, "e": g.edge_count, "graph6": line.decode("ascii")}
    return payload, EXIT_PASS, f"{fam}: n={g.n} e={g.edge_count}"


def _cmd_verify(args):
    g = _read_graph(args.input)
    rep = _run_property(g, args.property, args.k, args.witnesses)
    payload = {
        "property": rep.property,
        "verdict": "pass" if rep.verdict else "fail",
        "first_failure": rep.first_failure,
        "n": g.n, "e": g.edge_count,
    }
    if args.witnesses:
        payload["witnesses"] = {_key(k): list(v)
                                for k, v in rep.witness_bundle.items()}
    code = EXIT_PASS if rep.verdict else EXIT_FAIL
    text = f"{rep.property}: {'pass' if rep.verdict else 'fail'}"
    if rep.first_failure is not None:
        text += f" (first failure {rep.first_failure})"
    return payload, code, text


def _cmd_spectrum(args):
    g = _read_graph(args.input)
    if args.edge:
        edges = [_parse_edge(args.edge)]
    else:
        edges = [tuple(e) for e in g.edges()]
    spectra = {_key(e): sorted(edge_spectrum(g, e)) for e in edges}
    full = set(range(3, g.n + 1))
    missing = {e: sorted(full - set(v)) for e, v in spectra.items()}
    payload = {"n": g.n, "spectra": spectra,
               "missing": {e: m for e, m in missing.items() if m}}
    complete = not payload["missing"]
    text = (f"{len(edges)} edge(s); all spectra complete" if complete
            else f"{len(payload['missing'])} edge(s) with missing lengths")
    return payload, EXIT_PASS if complete else EXIT_FAIL, text


def _cmd_witness(args):
    _require(args, "s", "ell", "edge", "length")
    eng = WitnessEngine(upper_construction(args.s, args.ell))
    e = _parse_edge(args.edge)
    try:
        cyc, tag = eng.witness_any(e, args.length,
                                   fallback_budget_ms=args.budget_ms)
    except SearchTimeout:
        return ({"verdict": "gap", "edge": e, "length": args.length},
                EXIT_GAP, "search timed out")
    payload = {"edge": e, "length": args.length, "tag": tag, "cycle": list(cyc)}
    if args.validate:
        ok, reason = validate_witness(eng.g, cyc, e, args.length)
        payload["validated"] = ok
        payload["reason"] = reason
        if not ok:
            return payload, EXIT_FAIL, f"witness INVALID: {reason}"
    return payload, EXIT_PASS, f"{tag} witness, length {len(cyc)}"


def _coverage_chunk(packed):
    s, ell, chunk, length_policy, budget, seed = packed
    eng = WitnessEngine(upper_construction(s, ell))
    return eng.coverage(edge_policy=chunk, length_policy=length_policy,
                        fallback_budget_ms=budget, seed=seed)


def _cmd_coverage(args):
    _require(args, "s", "ell")
    edge_policy = _parse_policy(args.edges)
    length_policy = _parse_policy(args.lengths)
    eng = WitnessEngine(upper_construction(args.s, args.ell))
    jobs = args.jobs or 1
    if jobs > 1:
        import multiprocessing as mp
        import random

        edges = sorted(tuple(e) for e in eng.g.edges())
        if isinstance(edge_policy, int):
            edges = random.Random(args.seed).sample(
                edges, min(edge_policy, len(edges)))
        chunks = [edges[i::jobs] for i in range(jobs) if edges[i::jobs]]
        work = [(args.s, args.ell, c, length_policy, args.budget_ms, args.seed)
                for c in chunks]
        with mp.get_context("fork").Pool(jobs) as pool:
            parts = pool.map(_coverage_chunk, work)
        report = parts[0]
        for part in parts[1:]:
            report.gaps += part.gaps
            report.counterexamples += part.counterexamples
            report.pairs += part.pairs
            for tag, c in part.tag_counts.items():
                report.tag_counts[tag] = report.tag_counts.get(tag, 0) + c
        report.gaps.sort()
        report.counterexamples.sort()
    else:
        report = eng.coverage(edge_policy=edge_policy,
                              length_policy=length_policy,
                              fallback_budget_ms=args.budget_ms,
                              seed=args.seed)
    payload = {
        "s": report.s, "ell": report.ell, "pairs": report.pairs,
        "tag_counts": report.tag_counts,
        "gaps": [list(g) for g in report.gaps],
        "counterexamples": [list(c) for c in report.counterexamples],
        "complete": report.complete,
        "unresolved_by_timeout": len(report.gaps),
    }
    if report.counterexamples:
        return payload, EXIT_FAIL, (f"{len(report.counterexamples)} proved-absence "
                                    f"counterexample(s)")
    if report.gaps:
        return payload, EXIT_GAP, (f"{len(report.gaps)} pair(s) unresolved "
                                   f"after fallback timeout")
    return payload, EXIT_PASS, (f"complete: {report.pairs} pairs, "
                                f"tags {report.tag_counts}")


def _cmd_search(args):
    _require(args, "n", "property")
    prop = _PROPERTY_NAMES[args.property]
    if args.property == "kproper":
        _require_k(args.k)
    out = min_size(args.n, prop, k=args.k, force=args.force)
    payload = {
        "n": out.n, "property": out.property,
        "minimum_edges": out.minimum_edges,
        "witness": out.witness,
        "exhausted": out.exhausted,
        "classes_by_edge_count": {str(m): c for m, c in out.counts.items()},
    }
    if out.minimum_edges is None:
        return payload, EXIT_FAIL, f"no order-{out.n} graph has the property"
    return payload, EXIT_PASS, (f"minimum edges: {out.minimum_edges} "
                                f"(witness {to_graph6(out.witness).decode('ascii')})")


def _cmd_bounds(args):
    if args.theorem7:
        _require(args, "s")
        cert = size_chain_certificate(args.s, ell_rule=args.ell_rule,
                                      ell=args.ell, precision=args.precision)
        payload = {
            "identifier": cert.identifier, "inputs": cert.inputs,
            "steps": [{"name": n, "lhs": l, "rhs": r, "ok": ok}
                      for n, l, r, ok in cert.steps],
            "verdict": "pass" if cert.verdict else "fail",
        }
        code = EXIT_PASS if cert.verdict else EXIT_FAIL
        return payload, code, f"size chain: {'pass' if cert.verdict else 'fail'}"
    _require(args, "formula", "n")
    value = lower_bound(args.n, args.formula, k=args.k)
    payload = {"formula": args.formula, "n": args.n, "k": args.k, "value": value}
    if args.formula == "5n3":
        lo, hi = g_range(args.n)
        payload["g_range"] = {"strict_lower": lo, "upper": hi}
    return payload, EXIT_PASS, str(value)


def _cmd_audit(args):
    g = _read_graph(args.input)
    audit = discharge_audit_t3 if args.scheme == "t3" else discharge_audit_t4
    rep = audit(g)
    payload = {
        "scheme": rep.scheme,
        "verdict": "pass" if rep.verdict else "fail",
        "failure": rep.failure,
        "classes": {str(v): c for v, c in rep.classes.items()},
        "final_charges": {str(v): c for v, c in rep.final_charges.items()},
        "min_final": rep.min_final,
        "conservation": rep.conservation,
        "thresholds": rep.thresholds,
    }
    code = EXIT_PASS if rep.verdict else EXIT_FAIL
    text = f"{rep.scheme}: {'pass' if rep.verdict else 'fail'}"
    if rep.min_final is not None:
        text += f", min charge {rep.min_final}, thresholds {rep.thresholds}"
    return payload, code, text


# -- argument parsing -----------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{message}\n{self.format_usage()}")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="pancylab", description=__doc__)
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(driver=fn)
        p.add_argument("--report", metavar="PATH")
        p.add_argument("--deterministic", action="store_true")
        return p

    p = add("construct", _cmd_construct, help="build a named graph family")
    p.add_argument("--family", required=True,
                   choices=["wheel", "fan", "A", "B", "D1", "D2",
                            "fanchain", "G1", "G"])
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--labels", metavar="PATH")

    p = add("verify", _cmd_verify, help="decide a pancyclicity property")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--property", required=True, choices=["ep", "vp", "kproper"])
    p.add_argument("--k", type=int)
    p.add_argument("--witnesses", action="store_true")
    p.add_argument("--jobs", type=int)
    p.add_argument("--budget-ms", type=float)

    p = add("spectrum", _cmd_spectrum, help="per-edge cycle-length spectra")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--edge", metavar="U,V")

    p = add("witness", _cmd_witness, help="constructive cycle witness")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--edge", metavar="U,V", required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--validate", action="store_true")
    p.add_argument("--budget-ms", type=float, default=10000.0)

    p = add("coverage", _cmd_coverage, help="witness an (edge, length) grid")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--edges", default="all", metavar="all|sample:N")
    p.add_argument("--lengths", default="all", metavar="all|sample:N")
    p.add_argument("--budget-ms", type=float, default=10000.0)
    p.add_argument("--jobs", type=int,
                   default=int(os.environ.get("PANCYLAB_JOBS", "1")))
    p.add_argument("--seed", type=int, default=0)

    p = add("search", _cmd_search, help="exhaustive minimum-size search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--property", required=True, choices=["ep", "vp", "kproper"])
    p.add_argument("--k", type=int)
    p.add_argument("--jobs", type=int)
    p.add_argument("--force", action="store_true")

    p = add("bounds", _cmd_bounds, help="bound formulas and certificates")
    p.add_argument("--formula", choices=["3n2", "5n3", "7n4", "conj"])
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--theorem7", action="store_true",
                   help="certify the size inequality chain")
    p.add_argument("--s", type=int)
    p.add_argument("--ell-rule", dest="ell_rule",
                   choices=["floor", "ceil"], default="ceil")
    p.add_argument("--ell", type=int)
    p.add_argument("--precision", type=int, default=128)

    p = add("audit", _cmd_audit, help="exact-rational discharging audit")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--scheme", required=True, choices=["t3", "t4"])
    return top


# -- entry point ----------------------------------------------------------

def run(argv) -> tuple:
    """Execute one subcommand; returns (run_report_dict, exit_code)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.monotonic()
    try:
        payload, code, text = args.driver(args)
    except UsageError:
        raise
    except SearchTimeout as exc:
        payload, code, text = {"error": str(exc)}, EXIT_GAP, str(exc)
    except PancylabError as exc:
        raise UsageError(str(exc)) from exc
    wall = None if args.deterministic else (time.monotonic() - started) * 1e3
    report = {
        "command": list(argv),
        "version": __version__,
        "wall_time_ms": wall,
        "outcome": payload,
        "exit_code": code,
    }
    if args.report:
        emit_report(report, args.report)
    print(text)
    return report, code


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        _, code = run(argv)
        return code
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IoError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
