#!/usr/bin/env python3
"""
Command-line interface. Every command prints one JSON document on stdout and
exits 0 on success, 1 when a check fails and 2 on usage or input errors.
"""

import argparse
import json
import sys
import time

from chromalg import dnc_engine, enumeration, invariants, spanlab
from chromalg.errors import ChromalgError, UsageError
from chromalg.graph_core import connectivity, bull_graph, kappa_pair_g, kappa_pair_h, parse_graph
from chromalg.logger import setup_logger
from chromalg.models import VerifyAllReport, VerifyEntry, dump
from chromalg.partitions import Partition
from chromalg.symfunc import Basis, SymFunc, chromatic_oracle_m, convert
from config import settings

logger = setup_logger(__name__)

BASES = {"star": Basis.STAR, "m": Basis.MONOMIAL, "e": Basis.ELEMENTARY, "p": Basis.POWER_SUM}

CHECK_NAMES = (
    "2conn",
    "hook",
    "near-hook",
    "sigma",
    "cn-sink",
    "sink-dist",
    "chi-links",
    "leading",
    "universal",
    "kconn",
    "distinguish",
    "acyclic",
)


class JsonArgumentParser(argparse.ArgumentParser):
    """argparse that reports usage errors as JSON instead of text."""

    def error(self, message):
        raise UsageError(message)


def _emit(payload) -> None:
    if isinstance(payload, str):
        print(payload)
    else:
        print(json.dumps(payload, sort_keys=True))


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_expand(args) -> int:
    G = parse_graph(args.graph)
    if args.strategy:
        X = dnc_engine.dnc_expand(G, args.strategy, args.seed)
    else:
        X = dnc_engine.dnc_expand_memo(G)
    payload = convert(X.to_symfunc(), BASES[args.basis]).to_json()
    if args.trace:
        trace = dnc_engine.dnc_trace(G, args.strategy, args.seed)
        with open(args.trace, "w") as f:
            json.dump(trace.to_json(), f, sort_keys=True)
        payload["trace"] = {"file": args.trace, "nodes": trace.node_count(), "leaves": len(trace.leaves())}
    _emit(payload)
    return 0


def cmd_check(args) -> int:
    if args.graph:
        report = invariants.run_check_graph(args.name, parse_graph(args.graph))
    else:
        if args.n is None:
            raise UsageError("check needs --n or --graph")
        report = invariants.run_check(args.name, args.n, args.exhaustive, args.jobs)
    _emit(dump(report))
    return 0 if report.passed else 1


def cmd_span(args) -> int:
    report = spanlab.span_report(args.graph_class, args.n, args.coloops, args.basis_check, args.jobs)
    _emit(dump(report))
    return 0 if report.passed else 1


def cmd_family_basis(args) -> int:
    family = spanlab.parse_family(args.family)
    report = spanlab.change_of_basis_integrality(family, args.n)
    _emit(dump(report))
    return 0 if report.passed else 1


def cmd_enumerate(args) -> int:
    graphs = enumeration.CLASSES[args.graph_class](args.n)
    if args.format == "json":
        items = [G.to_json() for G in graphs]
    else:
        items = [G.graph6() for G in graphs]
    _emit({"class": args.graph_class, "n": args.n, "count": len(items), "graphs": items})
    return 0


def cmd_orient(args) -> int:
    G = parse_graph(args.graph)
    stats = invariants.orientation_stats(G)
    _emit(
        {
            "graph": G.graph6(),
            "total_acyclic": stats.total_acyclic,
            "by_sink_count": {str(k): v for k, v in stats.by_sink_count.items()},
            "unique_sink_at": {str(v): c for v, c in stats.unique_sink_at.items()},
        }
    )
    return 0


def cmd_relations(args) -> int:
    if args.relation == "cut":
        if args.n is None:
            raise UsageError("relations cut needs --n")
        report = spanlab.verify_cut_relations(args.n)
    elif args.case:
        report = spanlab.verify_ab1k(args.case, args.a, args.b, args.k)
    else:
        reports = [spanlab.verify_ab1k(*params) for params in spanlab.AB1K_SMALLEST]
        report = reports[0].model_copy(
            update={
                "parameters": {"cases": "smallest"},
                "passed": all(r.passed for r in reports),
                "results": [r.model_dump(by_alias=True) for r in reports],
            }
        )
    _emit(dump(report))
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------
# verify-all
# ---------------------------------------------------------------------------

BULL_EXPANSION = {(2, 2, 1): -1, (3, 1, 1): 1, (3, 2): 2, (4, 1): -3, (5,): 2}
KAPPA_PAIR_M = {(2, 2, 1, 1): 12, (2, 1, 1, 1, 1): 96, (1, 1, 1, 1, 1, 1): 720}


def _bull():
    X = dnc_engine.dnc_expand(bull_graph())
    return X == dnc_engine.StarExpansion(5, BULL_EXPANSION), repr(X)


def _kappa_pair():
    expected = SymFunc(6, Basis.MONOMIAL, KAPPA_PAIR_M)
    XG, XH = chromatic_oracle_m(kappa_pair_g()), chromatic_oracle_m(kappa_pair_h())
    kappa = (connectivity(kappa_pair_g()), connectivity(kappa_pair_h()))
    return XG == expected and XH == expected and kappa == (3, 2), f"connectivity {kappa}"


def _oracle_equivalence(jobs):
    graphs = [G for n in range(1, settings.bound("connected") + 1) for G in enumeration.all_connected(n)]
    graphs += [T for n in range(1, min(9, settings.bound("trees")) + 1) for T in enumeration.all_trees(n)]
    agree = enumeration.sweep(_dnc_matches_oracle, graphs, jobs, desc="oracle equivalence")
    return all(agree), f"{len(graphs)} graphs, {agree.count(False)} mismatches"


def _dnc_matches_oracle(G) -> bool:
    return convert(dnc_engine.dnc_expand_memo(G).to_symfunc(), Basis.MONOMIAL) == chromatic_oracle_m(G)


def _check(name, bound_name, jobs):
    def run():
        report = invariants.run_check(name, settings.bound(bound_name), exhaustive=True, jobs=jobs)
        return report.passed, f"{report.graphs_checked} graphs, {len(report.counterexamples)} counterexamples"

    return run


def _spans(jobs):
    reports = [spanlab.verify_Tn(n, jobs) for n in range(1, settings.bound("span_trees") + 1)]
    reports += [spanlab.verify_Cn(n, jobs) for n in range(2, settings.bound("span_connected") + 1)]
    failed = [f"{r.graph_class}:{r.n}" for r in reports if not r.passed]
    return not failed, f"failed {failed}" if failed else f"{len(reports)} spans"


def _coloops(jobs):
    reports = [spanlab.span_report("trees", n, True, False, jobs) for n in range(7, settings.bound("span_trees") + 1)]
    reports += [
        spanlab.span_report("connected", n, True, False, jobs) for n in range(4, settings.bound("span_connected") + 1)
    ]
    failed = [f"{r.graph_class}:{r.n}" for r in reports if not r.passed]
    return not failed, f"failed {failed}" if failed else f"{len(reports)} coloop sets"


def _cut_relations():
    reports = [spanlab.verify_cut_relations(n) for n in range(4, min(8, settings.bound("cut_relations")) + 1)]
    return all(r.passed for r in reports), f"n = 4..{3 + len(reports)}"


def _ab1k():
    params = [p for p in spanlab.AB1K_SMALLEST if spanlab.ab1k_vertices(*p) <= settings.bound("ab1k")]
    reports = [spanlab.verify_ab1k(*p) for p in params]
    failed = [r.parameters for r in reports if not r.passed]
    return not failed, f"failed {failed}" if failed else f"{len(reports)} identities"


def _integer_basis():
    top = min(7, settings.bound("family"))
    ok = True
    for name in ("path", "star"):
        family = spanlab.parse_family(name)
        for n in range(1, top + 1):
            r = spanlab.change_of_basis_integrality(family, n)
            ok = ok and r.integral and r.unitriangular and r.inverse_integral
    triangle = spanlab.change_of_basis_integrality(spanlab.parse_family("path@3=K:3"), 3)
    half = triangle.st_n_expansion.get(Partition((3,)).text())
    ok = ok and half == "1/2" and triangle.passed
    return ok, f"st_3 coefficient with G_3 = K_3: {half}"


def _statements(jobs) -> list:
    return [
        ("bull graph star expansion", _bull),
        ("kappa pair: equal X with connectivity 3 and 2", _kappa_pair),
        ("star expansion agrees with the colouring oracle", lambda: _oracle_equivalence(jobs)),
        ("c_{21^{n-2}} != 0 iff 2-connected", _check("2conn", "connected", jobs)),
        ("hook sums", _check("hook", "connected", jobs)),
        ("near-hook sums", _check("near-hook", "span_trees", jobs)),
        ("sigma laws", _check("sigma", "span_trees", jobs)),
        ("leading partitions", _check("leading", "span_trees", jobs)),
        ("tree and connected spans", lambda: _spans(jobs)),
        ("coloop sets", lambda: _coloops(jobs)),
        ("cuttlefish relations", _cut_relations),
        ("Cat_{a1^kb} and Cat_{aaa} identities", _ab1k),
        ("c_n and unique sinks", _check("cn-sink", "graphs", jobs)),
        ("sink distribution", _check("sink-dist", "e_sinks", jobs)),
        ("acyclic orientation count", _check("acyclic", "graphs", jobs)),
        ("universal vertex law", _check("universal", "universal", jobs)),
        ("k-connectivity is not determined by X", _check("kconn", "oracle_m", jobs)),
        ("integer chromatic bases", _integer_basis),
        ("trees have distinct expansions", _check("distinguish", "span_trees", jobs)),
        ("chromatic polynomial derivative links", _check("chi-links", "e_sinks", jobs)),
    ]


def verify_all(max_n=None, jobs=None, fault=None, timing=False) -> VerifyAllReport:
    previous_max_n = settings.MAX_N
    if max_n is not None:
        settings.MAX_N = max_n
    if fault:
        dnc_engine.inject_fault(fault)
    entries = []
    try:
        for statement, run in _statements(jobs):
            start = time.perf_counter()
            try:
                passed, detail = run()
            except ChromalgError as e:
                passed, detail = False, f"{e.code}: {e}"
            seconds = time.perf_counter() - start
            logger.info(f"{statement}: {'pass' if passed else 'FAIL'} in {seconds:.2f}s")
            entries.append(
                VerifyEntry(statement=statement, passed=passed, detail=detail, seconds=round(seconds, 3) if timing else None)
            )
    finally:
        settings.MAX_N = previous_max_n
        dnc_engine.clear_fault()
        dnc_engine.clear_dnc_cache()
    return VerifyAllReport(passed=all(e.passed for e in entries), fault=fault, entries=entries)


def cmd_verify_all(args) -> int:
    report = verify_all(args.max_n, args.jobs, args.inject_fault, args.timing)
    _emit(dump(report))
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> JsonArgumentParser:
    parser = JsonArgumentParser(prog="chromalg", description="Chromatic symmetric functions in the star basis.")
    commands = parser.add_subparsers(dest="command", parser_class=JsonArgumentParser)
    commands.required = True

    p = commands.add_parser("expand", help="Expand X_G in a basis.")
    p.add_argument("--graph", required=True, help="Family spec, JSON edge list or graph6.")
    p.add_argument("--basis", choices=sorted(BASES), default="star")
    p.add_argument("--trace", help="Write the full recursion tree to this JSON file.")
    p.add_argument("--strategy", choices=["max-degree", "first", "last", "random"], help="Edge choice.")
    p.add_argument("--seed", type=int, default=0, help="Seed for --strategy random.")
    p.set_defaults(func=cmd_expand)

    p = commands.add_parser("check", help="Run a relation check.")
    p.add_argument("name", choices=CHECK_NAMES)
    p.add_argument("--n", type=int)
    p.add_argument("--exhaustive", action="store_true", help="Every size from the smallest up to --n.")
    p.add_argument("--graph", help="Check a single graph instead of a class.")
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=cmd_check)

    p = commands.add_parser("span", help="Span dimensions and coloops.")
    p.add_argument("graph_class", choices=["trees", "connected"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--coloops", action="store_true")
    p.add_argument("--basis-check", action="store_true", help="Also check the caterpillar / cuttlefish bases.")
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=cmd_span)

    p = commands.add_parser("family-basis", help="Change of basis from a graph family to stars.")
    p.add_argument("--family", required=True, help='e.g. "path", "star@2=P:2", "P:1;P:2;K:3".')
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_family_basis)

    p = commands.add_parser("enumerate", help="List isomorphism classes.")
    p.add_argument("graph_class", choices=sorted(enumeration.CLASSES))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=["graph6", "json"], default="graph6")
    p.set_defaults(func=cmd_enumerate)

    p = commands.add_parser("orient", help="Acyclic orientation counts.")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_orient)

    p = commands.add_parser("relations", help="Cuttlefish relations and the Cat_{a1^kb} identities.")
    p.add_argument("relation", choices=["cut", "ab1k"])
    p.add_argument("--n", type=int)
    p.add_argument("--case", choices=list(spanlab.AB1K_CASES))
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--b", type=int, default=0)
    p.add_argument("--k", type=int, default=0)
    p.set_defaults(func=cmd_relations)

    p = commands.add_parser("verify-all", help="Run every check at the configured bounds.")
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--inject-fault", choices=list(dnc_engine.FAULTS))
    p.add_argument("--timing", action="store_true", help="Include timings in the JSON report.")
    p.set_defaults(func=cmd_verify_all)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ChromalgError as e:
        _emit({"error": e.to_dict()})
        return 2
    except Exception as e:
        logger.exception("unexpected error")
        _emit({"error": {"code": "internal_error", "message": str(e)}})
        return 2


if __name__ == "__main__":
    sys.exit(main())
