"""
Isomorphism-class enumeration of small graphs.

Classes are grown by extension closure: every tree on n vertices comes from
a tree on n-1 vertices by adding a leaf, and every connected graph comes
from a spanning tree by adding edges. Each layer is deduplicated by
canonical key, and every list is returned sorted by canonical key with each
representative in canonical form.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache

from tqdm import tqdm

from chromalg.dnc_engine import dnc_expand_memo
from chromalg.errors import PreconditionError, check_bound
from chromalg.graph_core import Graph, canonical_form, canonical_key, is_connected
from chromalg.logger import setup_logger
from chromalg.models import CheckReport, Counterexample
from config import settings

logger = setup_logger(__name__)


def _add(classes: dict, G: Graph):
    key = canonical_key(G)
    if key not in classes:
        classes[key] = canonical_form(G)


def _ordered(classes: dict) -> tuple:
    return tuple(classes[k] for k in sorted(classes))


def _non_edges(G: Graph):
    for u in range(G.n):
        for v in range(u + 1, G.n):
            if (u, v) not in G.edges:
                yield (u, v)


@lru_cache(maxsize=None)
def _trees(n: int) -> tuple:
    if n == 1:
        return (Graph(1),)
    classes = {}
    for T in _trees(n - 1):
        for v in range(n - 1):
            _add(classes, Graph(n, T.edges | {(v, n - 1)}))
    return _ordered(classes)


def all_trees(n: int) -> list:
    """All free trees on n vertices, one per isomorphism class."""
    if n < 1:
        raise PreconditionError("trees need at least one vertex")
    check_bound("tree enumeration", n, settings.bound("trees"))
    return list(_trees(n))


def _closure(start: tuple) -> tuple:
    """Everything reachable from the start classes by adding edges."""
    seen = {}
    layer = {}
    for G in start:
        _add(layer, G)
    while layer:
        seen.update(layer)
        nxt = {}
        for G in layer.values():
            for e in _non_edges(G):
                H = Graph(G.n, G.edges | {e})
                key = canonical_key(H)
                if key not in seen and key not in nxt:
                    nxt[key] = canonical_form(H)
        layer = nxt
    return _ordered(seen)


@lru_cache(maxsize=None)
def _graphs(n: int) -> tuple:
    return _closure((Graph(n),))


@lru_cache(maxsize=None)
def _connected(n: int) -> tuple:
    if n == 1:
        return (Graph(1),)
    return _closure(_trees(n))


def all_graphs(n: int) -> list:
    """Every graph on n vertices up to isomorphism, connected or not."""
    if n < 1:
        raise PreconditionError("graphs need at least one vertex")
    check_bound("graph enumeration", n, settings.bound("graphs"))
    return list(_graphs(n))


def all_connected(n: int) -> list:
    if n < 1:
        raise PreconditionError("graphs need at least one vertex")
    check_bound("connected-graph enumeration", n, settings.bound("connected"))
    graphs = list(_connected(n))
    logger.debug(f"{len(graphs)} connected graphs on {n} vertices")
    return graphs


@lru_cache(maxsize=None)
def _unicyclic(n: int) -> tuple:
    classes = {}
    for T in _trees(n):
        for e in _non_edges(T):
            _add(classes, Graph(n, T.edges | {e}))
    return _ordered(classes)


def all_unicyclic(n: int) -> list:
    """Connected graphs with exactly one cycle."""
    if n < 3:
        raise PreconditionError("unicyclic graphs need at least three vertices")
    check_bound("unicyclic enumeration", n, settings.bound("unicyclic"))
    return list(_unicyclic(n))


def is_caterpillar(T: Graph) -> bool:
    """A tree whose non-leaf vertices induce a path."""
    spine = [v for v in range(T.n) if T.degree(v) > 1]
    if len(spine) <= 1:
        return True
    body = T.induced(spine)
    return is_connected(body) and max(body.degrees) <= 2


def caterpillars(n: int) -> list:
    check_bound("caterpillar enumeration", n, settings.bound("caterpillars"))
    return [T for T in all_trees(n) if is_caterpillar(T)]


CLASSES = {
    "trees": all_trees,
    "connected": all_connected,
    "unicyclic": all_unicyclic,
    "caterpillars": caterpillars,
    "graphs": all_graphs,
}


class GraphClassIterator:
    """Iterate one representative per isomorphism class of a named class."""

    def __init__(self, tag: str, n: int):
        if tag not in CLASSES:
            raise PreconditionError(f"unknown graph class {tag!r}")
        self.tag = tag
        self.n = n
        self.cursor = 0
        self._graphs = CLASSES[tag](n)

    def __iter__(self):
        return self

    def __next__(self) -> Graph:
        if self.cursor >= len(self._graphs):
            raise StopIteration
        G = self._graphs[self.cursor]
        self.cursor += 1
        return G

    def __len__(self):
        return len(self._graphs)


# ---------------------------------------------------------------------------
# Independent oracles
# ---------------------------------------------------------------------------


def prufer_decode(sequence, n: int) -> Graph:
    """Labelled tree on 0..n-1 from a Prufer sequence of length n-2."""
    if n == 1:
        return Graph(1)
    degree = [1] * n
    for x in sequence:
        degree[x] += 1
    edges = []
    for x in sequence:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [w for w in range(n) if degree[w] == 1]
    edges.append((u, v))
    return Graph.from_edges(n, edges)


def prufer_trees(n: int) -> list:
    """Free trees by canonical dedup of all n^(n-2) labelled trees."""
    check_bound("Prufer enumeration", n, 8)
    classes = {}
    for sequence in itertools.product(range(n), repeat=max(n - 2, 0)):
        _add(classes, prufer_decode(sequence, n))
    return list(_ordered(classes))


def brute_force_classes(n: int, connected_only: bool = False) -> list:
    """Dedup of all 2^C(n,2) labelled graphs."""
    check_bound("brute-force enumeration", n, 6)
    pairs = list(itertools.combinations(range(n), 2))
    classes = {}
    for mask in range(1 << len(pairs)):
        G = Graph.from_edges(n, (pairs[i] for i in range(len(pairs)) if mask >> i & 1))
        if connected_only and not is_connected(G):
            continue
        _add(classes, G)
    return list(_ordered(classes))


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------


def sweep(func, graphs, jobs=None, desc=None) -> list:
    """
    Apply a picklable function to every graph, in order. With jobs > 1 the
    list is split across a process pool.
    """
    jobs = settings.JOBS if jobs is None else jobs
    graphs = list(graphs)
    progress = dict(total=len(graphs), desc=desc, disable=not settings.PROGRESS, leave=False)
    if jobs > 1 and len(graphs) > 1:
        chunk = max(1, len(graphs) // (jobs * 4))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(tqdm(pool.map(func, graphs, chunksize=chunk), **progress))
    return [func(G) for G in tqdm(graphs, **progress)]


def _star_vector(G: Graph) -> tuple:
    return tuple(dnc_expand_memo(G).vector())


def tree_distinguish_sweep(n: int, jobs=None) -> CheckReport:
    """Check that non-isomorphic trees on n vertices have distinct star expansions."""
    check_bound("tree distinguishing sweep", n, settings.bound("span_trees"))
    trees = all_trees(n)
    vectors = sweep(_star_vector, trees, jobs, desc=f"trees n={n}")
    first_seen = {}
    collisions = []
    for T, vec in zip(trees, vectors):
        if vec in first_seen:
            other = first_seen[vec]
            collisions.append(
                Counterexample(graph=T.graph6(), expected="distinct", actual=other.graph6(), detail="equal expansions")
            )
        else:
            first_seen[vec] = T
    if collisions:
        logger.warning(f"{len(collisions)} tree collisions at n={n}")
    return CheckReport(
        check="distinguish",
        n=n,
        passed=not collisions,
        graphs_checked=len(trees),
        counterexamples=collisions,
        notes={"distinct_expansions": len(first_seen)},
    )
