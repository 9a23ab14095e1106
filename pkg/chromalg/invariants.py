"""
Scalar relations and classification laws over star expansions and acyclic
orientations.

Each law is a function of one graph returning None when the law holds and a
Counterexample (graph6 plus both sides) when it does not. Sweeps apply a law
to every graph of an enumerated class and collect a CheckReport.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import asdict, dataclass, field
from math import comb
from typing import Callable, Optional, Union

from chromalg.dnc_engine import StarExpansion, dnc_expand_memo, star_forest_partition
from chromalg.enumeration import CLASSES, all_trees, sweep, tree_distinguish_sweep
from chromalg.errors import PreconditionError, check_bound
from chromalg.graph_core import (
    Graph,
    add_universal_vertex,
    caterpillar,
    connectivity,
    delete_edge,
    kappa_pair_g,
    kappa_pair_h,
    internal_edges,
    is_connected,
    is_isomorphic,
    is_k_connected,
    is_tree,
    is_unicyclic,
    path,
    star,
)
from chromalg.logger import setup_logger
from chromalg.models import CheckReport, Counterexample
from chromalg.partitions import Partition, hook, partitions_of
from chromalg.symfunc import Basis, SymFunc, chromatic_oracle_m, chromatic_polynomial, convert
from config import settings

logger = setup_logger(__name__)


def _witness(G: Graph, expected, actual, detail=None) -> Counterexample:
    return Counterexample(graph=G.graph6(), expected=expected, actual=actual, detail=detail)


def _require_connected(G: Graph, min_n: int):
    if not is_connected(G):
        raise PreconditionError("graph must be connected")
    if G.n < min_n:
        raise PreconditionError(f"graph needs at least {min_n} vertices")


# ---------------------------------------------------------------------------
# Coefficient sums
# ---------------------------------------------------------------------------


def hook_sum(G: Graph) -> int:
    """h(G) = 2 c_{21^{n-2}} + c_{31^{n-3}} + ... + c_n."""
    _require_connected(G, 3)
    X = dnc_expand_memo(G)
    n = G.n
    return 2 * X.coefficient(hook(2, n)) + sum(X.coefficient(hook(k, n)) for k in range(3, n + 1))


def near_hook_sum(T: Graph) -> int:
    """nh(T) = c_{221^{n-4}} + c_{321^{n-5}} + ... + c_{(n-2)2}."""
    if not is_tree(T):
        raise PreconditionError("near-hook sums are defined for trees")
    if T.n < 5:
        raise PreconditionError("near-hook sums need at least five vertices")
    X = dnc_expand_memo(T)
    n = T.n
    return sum(X.coefficient(Partition((k, 2) + (1,) * (n - k - 2))) for k in range(2, n - 1))


def sigma(G: Union[Graph, StarExpansion], ell: int) -> int:
    """Sum of the star coefficients indexed by partitions of length ell."""
    X = G if isinstance(G, StarExpansion) else dnc_expand_memo(G)
    if not 1 <= ell <= X.degree:
        raise PreconditionError(f"length {ell} out of range 1..{X.degree}")
    return sum(c for lam, c in X.coeffs.items() if lam.length == ell)


def is_two_connected_via_star(G: Graph) -> bool:
    _require_connected(G, 3)
    return dnc_expand_memo(G).coefficient(hook(2, G.n)) != 0


def cycle_length_from_star(G: Graph) -> int:
    if not is_unicyclic(G):
        raise PreconditionError("graph must be connected and unicyclic")
    return dnc_expand_memo(G).coefficient((G.n,)) + 1


def leading_partition(f: Union[StarExpansion, SymFunc]) -> Partition:
    """Lexicographically smallest partition with a nonzero coefficient."""
    if not f.coeffs:
        raise PreconditionError("the zero function has no leading partition")
    return min(f.coeffs)


def cycle_vertices(G: Graph) -> list:
    """Vertices left after repeatedly stripping leaves."""
    degree = list(G.degrees)
    alive = set(range(G.n))
    leaves = [v for v in alive if degree[v] <= 1]
    while leaves:
        v = leaves.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in G.neighbours(v):
            if w in alive:
                degree[w] -= 1
                if degree[w] == 1:
                    leaves.append(w)
    return sorted(alive)


# ---------------------------------------------------------------------------
# Orientations
# ---------------------------------------------------------------------------


@dataclass
class OrientationStats:
    total_acyclic: int = 0
    by_sink_count: dict = field(default_factory=dict)
    unique_sink_at: dict = field(default_factory=dict)


def orientation_stats(G: Graph) -> OrientationStats:
    """Enumerate all 2^|E| orientations and count the acyclic ones by sinks."""
    edges = G.sorted_edges()
    check_bound("orientation edge", len(edges), settings.ORIENTATION_MAX_EDGES)
    n = G.n
    full = (1 << n) - 1
    by_sinks = Counter()
    unique = {v: 0 for v in range(n)}
    total = 0

    for bits in range(1 << len(edges)):
        out = [0] * n
        for i, (u, v) in enumerate(edges):
            if bits >> i & 1:
                out[v] |= 1 << u
            else:
                out[u] |= 1 << v

        # peel sinks of the remaining subgraph; stuck means a directed cycle
        remaining = full
        while remaining:
            peeled = False
            for v in range(n):
                if remaining >> v & 1 and not out[v] & remaining:
                    remaining &= ~(1 << v)
                    peeled = True
            if not peeled:
                break
        if remaining:
            continue

        total += 1
        sinks = [v for v in range(n) if out[v] == 0]
        by_sinks[len(sinks)] += 1
        if len(sinks) == 1:
            unique[sinks[0]] += 1

    return OrientationStats(total, dict(sorted(by_sinks.items())), unique)


def check_cn_equals_unique_sink(G: Graph) -> bool:
    return cn_sink_law(G) is None


def check_e_expansion_sinks(G: Graph) -> bool:
    return sink_distribution_law(G) is None


def _length_sums(f: SymFunc) -> dict:
    sums = Counter()
    for lam, c in f.coeffs.items():
        sums[lam.length] += c
    return sums


# ---------------------------------------------------------------------------
# Chromatic polynomial links
# ---------------------------------------------------------------------------


@dataclass
class ChiLinks:
    """Both readings of the 2-connectivity / chi'(1) link, and the chi'(0) link."""

    c_hook: int
    c_n: int
    chi_prime_1: int
    chi_prime_0: int
    root1_multiplicity: int
    literal: bool
    multiplicity: bool
    simple_root: bool
    sink_link: bool

    def holds(self) -> bool:
        """The reading that holds exhaustively: c_{21^{n-2}} != 0 iff chi'(1) != 0, plus |chi'(0)| = c_n."""
        return self.simple_root and self.sink_link


def _root_multiplicity(poly, at: int) -> int:
    mult = 0
    while not poly.is_zero and poly.eval(at) == 0:
        poly = poly.diff()
        mult += 1
    return mult


def chromatic_derivative_links(G: Graph) -> ChiLinks:
    """
    Evaluate the links between c_{21^{n-2}}, c_n and chi_G. The literal
    reading pairs c_{21^{n-2}} != 0 with chi'(1) = 0, the multiplicity
    reading with a root 1 of multiplicity >= 2, and the simple-root reading
    with chi'(1) != 0.
    """
    _require_connected(G, 3)
    X = dnc_expand_memo(G)
    c_hook = X.coefficient(hook(2, G.n))
    c_n = X.coefficient((G.n,))
    poly = chromatic_polynomial(G)
    derivative = poly.diff()
    d1, d0 = int(derivative.eval(1)), int(derivative.eval(0))
    mult = _root_multiplicity(poly, 1)
    nonzero = c_hook != 0
    return ChiLinks(
        c_hook=c_hook,
        c_n=c_n,
        chi_prime_1=d1,
        chi_prime_0=d0,
        root1_multiplicity=mult,
        literal=nonzero == (d1 == 0),
        multiplicity=nonzero == (mult >= 2),
        simple_root=nonzero == (d1 != 0),
        sink_link=abs(d0) == c_n,
    )


def check_chromatic_derivative_links(G: Graph) -> bool:
    """True when G satisfies the chi-derivative links in the simple-root reading."""
    return chromatic_derivative_links(G).holds()


def chi_links_sweep(n_values, jobs=None) -> CheckReport:
    """
    Run the chi-derivative links over every connected graph with n in
    n_values. Passes when exactly one of the competing readings (literal /
    multiplicity against simple-root) holds on every graph and the chi'(0)
    link always holds.
    """
    graphs = [G for n in n_values for G in CLASSES["connected"](n) if n >= 3]
    links = sweep(chromatic_derivative_links, graphs, jobs, desc="chi links")
    holds = {
        "literal": all(x.literal for x in links),
        "multiplicity": all(x.multiplicity for x in links),
        "simple_root": all(x.simple_root for x in links),
        "sink_link": all(x.sink_link for x in links),
    }
    literal_side = holds["literal"] and holds["multiplicity"]
    exactly_one = literal_side != holds["simple_root"]
    passing = "simple_root" if holds["simple_root"] else "literal" if literal_side else None

    witnesses = []
    for G, x in zip(graphs, links):
        if len(witnesses) >= 5:
            break
        if not x.literal or not x.sink_link:
            witnesses.append(
                _witness(
                    G,
                    {"chi_prime_1_zero": x.c_hook != 0, "abs_chi_prime_0": x.c_n},
                    {"chi_prime_1": x.chi_prime_1, "c_hook": x.c_hook, "chi_prime_0": x.chi_prime_0},
                    detail="literal reading fails" if x.sink_link else "chi'(0) link fails",
                )
            )
    passed = exactly_one and holds["sink_link"]
    return CheckReport(
        check="chi-links",
        n=max(n_values) if n_values else None,
        passed=passed,
        graphs_checked=len(graphs),
        counterexamples=[] if passed else witnesses,
        notes={"formulations": holds, "passing_formulation": passing, "failing_examples": [w.graph for w in witnesses]},
    )


# ---------------------------------------------------------------------------
# Universal vertices and connectivity
# ---------------------------------------------------------------------------


def universal_vertex_m_law(G: Graph) -> bool:
    return universal_law(G) is None


def kconn_indistinguishable_pair(k: int) -> tuple:
    """Two (k+3)-vertex graphs with equal X but connectivity k and k-1."""
    if k < 3:
        raise PreconditionError("the construction starts at k = 3")
    if k > 5:
        raise PreconditionError("k is limited to 5")
    G, H = kappa_pair_g(), kappa_pair_h()
    for _ in range(k - 3):
        G, H = add_universal_vertex(G), add_universal_vertex(H)
    return G, H


def kconn_check(k: int) -> CheckReport:
    G, H = kconn_indistinguishable_pair(k)
    XG, XH = chromatic_oracle_m(G), chromatic_oracle_m(H)
    kg, kh = connectivity(G), connectivity(H)
    counterexamples = []
    if XG != XH:
        counterexamples.append(_witness(G, XH.to_json(), XG.to_json(), detail=f"X differs from {H.graph6()}"))
    if (kg, kh) != (k, k - 1):
        counterexamples.append(_witness(G, [k, k - 1], [kg, kh], detail="connectivities"))
    return CheckReport(
        check="kconn",
        n=k + 3,
        passed=not counterexamples,
        graphs_checked=2,
        counterexamples=counterexamples,
        notes={"graphs": [G.graph6(), H.graph6()], "connectivity": [kg, kh]},
    )


# ---------------------------------------------------------------------------
# Laws (G -> Counterexample | None)
# ---------------------------------------------------------------------------


def hook_law(G: Graph) -> Optional[Counterexample]:
    expected = int(is_isomorphic(G, star(G.n)))
    actual = hook_sum(G)
    return None if actual == expected else _witness(G, expected, actual, "hook sum")


def near_hook_law(T: Graph) -> Optional[Counterexample]:
    n = T.n
    if is_isomorphic(T, caterpillar((n - 2, 2))):
        expected = 1
    elif is_isomorphic(T, path(n)):
        expected = (-1) ** (n - 1)
    else:
        expected = 0
    actual = near_hook_sum(T)
    return None if actual == expected else _witness(T, expected, actual, "near-hook sum")


def sigma_tree_law(T: Graph) -> Optional[Counterexample]:
    X = dnc_expand_memo(T)
    expected = [1] + [0] * (T.n - 1)
    actual = [sigma(X, ell) for ell in range(1, T.n + 1)]
    return None if actual == expected else _witness(T, expected, actual, "sigma by length")


def sigma_unicyclic_law(G: Graph) -> Optional[Counterexample]:
    X = dnc_expand_memo(G)
    c = len(cycle_vertices(G))
    expected = [(-1) ** (ell - 1) * comb(c - 1, ell) for ell in range(1, G.n + 1)]
    actual = [sigma(X, ell) for ell in range(1, G.n + 1)]
    return None if actual == expected else _witness(G, expected, actual, f"sigma by length, cycle {c}")


def cycle_length_law(G: Graph) -> Optional[Counterexample]:
    expected = len(cycle_vertices(G))
    actual = cycle_length_from_star(G)
    return None if actual == expected else _witness(G, expected, actual, "cycle length")


def two_connected_law(G: Graph) -> Optional[Counterexample]:
    expected = is_k_connected(G, 2)
    actual = is_two_connected_via_star(G)
    return None if actual == expected else _witness(G, expected, actual, "c_{21^{n-2}} != 0 vs 2-connected")


def tree_leading_law(T: Graph) -> Optional[Counterexample]:
    forest = Graph(T.n, T.edges - set(internal_edges(T)))
    expected = star_forest_partition(forest)
    actual = leading_partition(dnc_expand_memo(T))
    return None if actual == expected else _witness(T, expected.text(), actual.text(), "leading partition")


def single_branching_cycle_vertex(G: Graph) -> Optional[int]:
    """The cycle vertex v when every non-cycle vertex hangs from v, else None."""
    branching = [v for v in cycle_vertices(G) if G.degree(v) > 2]
    return branching[0] if len(branching) == 1 else None


def unicyclic_leading_law(G: Graph) -> Optional[Counterexample]:
    """Only meaningful when single_branching_cycle_vertex(G) exists; run_law filters the rest."""
    v = single_branching_cycle_vertex(G)
    if v is None:
        return None
    cyc = cycle_vertices(G)
    u = min(w for w in G.neighbours(v) if w in cyc)
    T = delete_edge(G, (u, v))
    expected = leading_partition(dnc_expand_memo(T))
    actual = leading_partition(dnc_expand_memo(G))
    return None if actual == expected else _witness(G, expected.text(), actual.text(), "leading partition vs G - e")


def cn_sink_law(G: Graph) -> Optional[Counterexample]:
    """c_n equals the unique-sink count at every vertex, and d_n = n c_n."""
    c_n = dnc_expand_memo(G).coefficient((G.n,))
    stats = orientation_stats(G)
    counts = sorted(set(stats.unique_sink_at.values()))
    if counts != [c_n]:
        return _witness(G, c_n, stats.unique_sink_at, "unique-sink counts")
    if G.n <= settings.bound("e_sinks"):
        d_n = convert(dnc_expand_memo(G).to_symfunc(), Basis.ELEMENTARY).coefficient((G.n,))
        if d_n != G.n * c_n:
            return _witness(G, G.n * c_n, str(d_n), "e_n coefficient")
    return None


def sink_distribution_law(G: Graph) -> Optional[Counterexample]:
    check_bound("e-expansion sink check vertex", G.n, settings.bound("e_sinks"))
    e = convert(dnc_expand_memo(G).to_symfunc(), Basis.ELEMENTARY)
    sums = _length_sums(e)
    stats = orientation_stats(G)
    expected = {k: stats.by_sink_count.get(k, 0) for k in range(1, G.n + 1)}
    actual = {k: int(sums.get(k, 0)) for k in range(1, G.n + 1)}
    return None if actual == expected else _witness(G, expected, actual, "sink counts by length")


def acyclic_count_law(G: Graph) -> Optional[Counterexample]:
    expected = orientation_stats(G).total_acyclic
    actual = abs(chromatic_polynomial(G, -1))
    return None if actual == expected else _witness(G, expected, actual, "|chi(-1)|")


def connected_cn_law(G: Graph) -> Optional[Counterexample]:
    expected = is_connected(G)
    actual = dnc_expand_memo(G).coefficient((G.n,)) != 0
    return None if actual == expected else _witness(G, expected, actual, "c_n != 0 vs connected")


def tree_unit_law(G: Graph) -> Optional[Counterexample]:
    expected = is_tree(G)
    actual = dnc_expand_memo(G).coefficient((G.n,)) == 1
    return None if actual == expected else _witness(G, expected, actual, "c_n == 1 vs tree")


def universal_law(G: Graph) -> Optional[Counterexample]:
    """m-coefficients of G plus a universal vertex are a_1(lambda) b_{lambda - 1}(G)."""
    check_bound("universal-vertex law vertex", G.n, settings.bound("universal"))
    b = chromatic_oracle_m(G)
    joined = chromatic_oracle_m(add_universal_vertex(G))
    law = {}
    for lam in partitions_of(G.n + 1):
        a1 = lam.num_ones
        law[lam] = a1 * b.coefficient(lam.remove_one()) if a1 else 0
    expected = SymFunc(G.n + 1, Basis.MONOMIAL, law)
    return None if joined == expected else _witness(G, expected.to_json()["coeffs"], joined.to_json()["coeffs"], "m-coefficients")


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------

Law = Callable[[Graph], Optional[Counterexample]]

CLASS_PREDICATES = {
    "trees": is_tree,
    "connected": is_connected,
    "unicyclic": is_unicyclic,
    "graphs": lambda G: True,
}

# check name -> list of (law name, graph class, smallest n, law)
CHECKS = {
    "2conn": [("two-connected", "connected", 3, two_connected_law)],
    "hook": [("hook-sum", "connected", 3, hook_law)],
    "near-hook": [("near-hook-sum", "trees", 5, near_hook_law)],
    "sigma": [
        ("sigma-trees", "trees", 1, sigma_tree_law),
        ("sigma-unicyclic", "unicyclic", 3, sigma_unicyclic_law),
        ("cycle-length", "unicyclic", 3, cycle_length_law),
    ],
    "cn-sink": [
        ("cn-unique-sink", "graphs", 1, cn_sink_law),
        ("cn-connected", "graphs", 1, connected_cn_law),
        ("cn-tree", "graphs", 1, tree_unit_law),
    ],
    "sink-dist": [("sink-distribution", "graphs", 1, sink_distribution_law)],
    "acyclic": [("acyclic-count", "graphs", 1, acyclic_count_law)],
    "leading": [
        ("tree-leading", "trees", 1, tree_leading_law),
        ("unicyclic-leading", "unicyclic", 3, unicyclic_leading_law),
    ],
    "universal": [("universal-vertex", "graphs", 1, universal_law)],
}

SPECIAL_CHECKS = ("chi-links", "kconn", "distinguish")

# laws that only apply to part of their graph class; the rest is counted as skipped
LAW_SCOPES = {
    unicyclic_leading_law: lambda G: single_branching_cycle_vertex(G) is not None,
}


def run_law(name: str, law: Law, graphs, n=None, jobs=None) -> CheckReport:
    """Apply a module-level law to every graph and collect the counterexamples."""
    graphs = list(graphs)
    scope = LAW_SCOPES.get(law)
    notes = {}
    if scope is not None:
        in_scope = [G for G in graphs if scope(G)]
        notes["skipped"] = len(graphs) - len(in_scope)
        graphs = in_scope
    results = sweep(law, graphs, jobs, desc=name)
    counterexamples = [r for r in results if r is not None]
    for c in counterexamples:
        logger.warning(f"{name}: counterexample {c.graph}")
    return CheckReport(
        check=name,
        n=n,
        passed=not counterexamples,
        graphs_checked=len(graphs),
        counterexamples=counterexamples,
        notes=notes,
    )


def merge_reports(check: str, n, reports: list) -> CheckReport:
    return CheckReport(
        check=check,
        n=n,
        passed=all(r.passed for r in reports),
        graphs_checked=sum(r.graphs_checked for r in reports),
        counterexamples=[c for r in reports for c in r.counterexamples],
        notes={r.check: {"pass": r.passed, "graphs_checked": r.graphs_checked, **r.notes} for r in reports},
    )


def achievable_leading_partitions(n: int) -> CheckReport:
    """Leading partitions over all trees equal {lambda : lambda = (n) or lambda_2 >= 2}."""
    achieved = {leading_partition(dnc_expand_memo(T)) for T in all_trees(n)}
    predicted = {lam for lam in partitions_of(n) if lam.length == 1 or lam[1] >= 2}
    counterexamples = []
    for lam in sorted(achieved ^ predicted, reverse=True):
        counterexamples.append(
            Counterexample(graph="", expected=lam in predicted, actual=lam in achieved, detail=lam.text())
        )
    return CheckReport(
        check="achievable-leading",
        n=n,
        passed=not counterexamples,
        graphs_checked=len(all_trees(n)),
        counterexamples=counterexamples,
        notes={"partitions": len(predicted)},
    )


def _sizes(smallest: int, n: int, exhaustive: bool) -> list:
    if not exhaustive:
        return [n] if n >= smallest else []
    return list(range(max(smallest, 1), n + 1))


def run_check(name: str, n: int, exhaustive: bool = False, jobs=None) -> CheckReport:
    """Sweep the named check over its graph classes at size n (or every size up to n)."""
    if name == "chi-links":
        sizes = _sizes(3, n, exhaustive)
        return chi_links_sweep([s for s in sizes if s <= settings.bound("connected")] if exhaustive else sizes, jobs)
    if name == "kconn":
        # the pair for connectivity k has k + 3 vertices
        ks = range(3, min(n - 3, 5) + 1) if exhaustive else [n - 3]
        return merge_reports(name, n, [kconn_check(k) for k in ks])
    if name == "distinguish":
        if not exhaustive:
            return tree_distinguish_sweep(n, jobs)
        return merge_reports(name, n, [tree_distinguish_sweep(k, jobs) for k in range(1, n + 1)])
    if name not in CHECKS:
        raise PreconditionError(f"unknown check {name!r}")

    reports = []
    for law_name, graph_class, smallest, law in CHECKS[name]:
        sizes = _sizes(smallest, n, exhaustive)
        if exhaustive:
            # an exhaustive sweep stops at the class bound instead of failing
            sizes = [s for s in sizes if s <= settings.bound(graph_class)]
        for size in sizes:
            graphs = CLASSES[graph_class](size)
            reports.append(run_law(f"{law_name}[n={size}]", law, graphs, size, jobs))
    if name == "leading":
        sizes = [s for s in _sizes(1, n, exhaustive) if s <= 9]
        reports.extend(achievable_leading_partitions(size) for size in sizes)
    return merge_reports(name, n, reports)


def run_check_graph(name: str, G: Graph) -> CheckReport:
    """Apply every law of a check that fits the given graph."""
    if name == "chi-links":
        links = chromatic_derivative_links(G)
        return CheckReport(
            check=name,
            n=G.n,
            passed=links.holds(),
            graphs_checked=1,
            notes={"graph": G.graph6(), **asdict(links)},
        )
    if name not in CHECKS:
        raise PreconditionError(f"check {name!r} does not run on a single graph")
    reports = []
    for law_name, graph_class, smallest, law in CHECKS[name]:
        if G.n >= smallest and CLASS_PREDICATES[graph_class](G):
            reports.append(run_law(law_name, law, [G], G.n, jobs=1))
    if not reports:
        raise PreconditionError(f"check {name!r} does not apply to this graph")
    return merge_reports(name, G.n, reports)
