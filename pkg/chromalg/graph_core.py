"""
Simple graphs, the deletion / near-contraction transformations, connectivity,
named families and canonical labelling.

Vertices are always 0..n-1. Edges are stored as (u, v) tuples with u < v.
"""

from __future__ import annotations

import json
import re
from collections import Counter, deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from typing import Iterable

import networkx as nx
import numpy as np

from chromalg.errors import (
    CanonicalizationBoundError,
    ConstraintError,
    EdgeNotInGraphError,
    GraphSpecError,
)
from chromalg.logger import setup_logger
from config import settings

logger = setup_logger(__name__)


class EdgeKind(Enum):
    LEAF = "leaf"
    INTERNAL = "internal"


def normalize_edge(u: int, v: int) -> tuple:
    u, v = int(u), int(v)
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on the vertices 0..n-1."""

    n: int
    edges: frozenset = frozenset()

    def __post_init__(self):
        if self.n < 0:
            raise GraphSpecError(f"vertex count must be non-negative: {self.n}")
        normalized = set()
        for e in self.edges:
            u, v = normalize_edge(*e)
            if u == v:
                raise GraphSpecError(f"loops are not allowed: {(u, v)}")
            if u < 0 or v >= self.n:
                raise GraphSpecError(f"edge {(u, v)} out of range for n={self.n}")
            normalized.add((u, v))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable = ()) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges))

    @cached_property
    def adjacency(self) -> tuple:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def degrees(self) -> tuple:
        return tuple(len(a) for a in self.adjacency)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return self.degrees[v]

    def neighbours(self, v: int) -> frozenset:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return normalize_edge(u, v) in self.edges

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def components(self) -> list:
        """Vertex lists of the connected components, ordered by smallest vertex."""
        seen = [False] * self.n
        comps = []
        for start in range(self.n):
            if seen[start]:
                continue
            seen[start] = True
            comp = [start]
            queue = deque([start])
            while queue:
                v = queue.popleft()
                for w in self.adjacency[v]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph, relabelled 0..k-1 in increasing vertex order."""
        vertices = sorted(vertices)
        index = {v: i for i, v in enumerate(vertices)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph.from_edges(len(vertices), edges)

    def remove_vertices(self, vertices: Iterable[int]) -> "Graph":
        drop = set(vertices)
        return self.induced(v for v in range(self.n) if v not in drop)

    def relabel(self, order: list) -> "Graph":
        """Vertex order[i] becomes vertex i."""
        position = {v: i for i, v in enumerate(order)}
        return Graph.from_edges(self.n, ((position[u], position[v]) for u, v in self.edges))

    def disjoint_union(self, other: "Graph") -> "Graph":
        shifted = ((u + self.n, v + self.n) for u, v in other.edges)
        return Graph.from_edges(self.n + other.n, list(self.edges) + list(shifted))

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(range(self.n))
        G.add_edges_from(self.edges)
        return G

    def graph6(self) -> str:
        return to_graph6(self)

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


# ---------------------------------------------------------------------------
# DNC transformations
# ---------------------------------------------------------------------------


def _require_edge(G: Graph, e) -> tuple:
    e = normalize_edge(*e)
    if e not in G.edges:
        raise EdgeNotInGraphError(e)
    return e


def delete_edge(G: Graph, e) -> Graph:
    e = _require_edge(G, e)
    return Graph(G.n, G.edges - {e})


def contract_edge(G: Graph, e) -> Graph:
    """
    Contract e = {u, v}. The merged vertex keeps the smaller label u, labels
    above v shift down by one, and parallel edges collapse.
    """
    u, v = _require_edge(G, e)

    def relabel(w):
        if w == v:
            return u
        return w if w < v else w - 1

    edges = set()
    for a, b in G.edges:
        a, b = relabel(a), relabel(b)
        if a != b:
            edges.add(normalize_edge(a, b))
    return Graph(G.n - 1, frozenset(edges))


def dot_contract(G: Graph, e) -> Graph:
    """Contraction plus a new isolated vertex labelled n-1."""
    contracted = contract_edge(G, e)
    return Graph(G.n, contracted.edges)


def leaf_contract(G: Graph, e) -> Graph:
    """Dot-contraction plus an edge from the merged vertex to the new vertex."""
    u, _ = normalize_edge(*e)
    dotted = dot_contract(G, e)
    return Graph(G.n, dotted.edges | {(u, G.n - 1)})


def edge_kind(G: Graph, e) -> EdgeKind:
    u, v = _require_edge(G, e)
    if G.degree(u) == 1 or G.degree(v) == 1:
        return EdgeKind.LEAF
    return EdgeKind.INTERNAL


def internal_edges(G: Graph) -> list:
    """Internal edges in increasing (u, v) order."""
    deg = G.degrees
    return [e for e in G.sorted_edges() if deg[e[0]] > 1 and deg[e[1]] > 1]


# ---------------------------------------------------------------------------
# Connectivity
# ---------------------------------------------------------------------------


def is_connected(G: Graph) -> bool:
    if G.n == 0:
        return False
    return len(G.components()) == 1


def connectivity(G: Graph) -> int:
    """Vertex connectivity; K_n has connectivity n-1 and n <= 1 gives 0."""
    if G.n <= 1 or not is_connected(G):
        return 0
    return nx.node_connectivity(G.to_networkx())


def is_k_connected(G: Graph, k: int) -> bool:
    """At least k+1 vertices and no k-1 vertex deletion disconnects G."""
    if G.n < k + 1:
        return False
    if k <= 0:
        return True
    return connectivity(G) >= k


def is_tree(G: Graph) -> bool:
    return is_connected(G) and G.num_edges == G.n - 1


def is_unicyclic(G: Graph) -> bool:
    return is_connected(G) and G.num_edges == G.n


def add_universal_vertex(G: Graph) -> Graph:
    """Join a new vertex n to every vertex of G."""
    return Graph(G.n + 1, G.edges | {(v, G.n) for v in range(G.n)})


# ---------------------------------------------------------------------------
# Named families
# ---------------------------------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph(n)


def star(n: int) -> Graph:
    if n < 1:
        raise ConstraintError("a star needs at least one vertex")
    return Graph.from_edges(n, ((0, i) for i in range(1, n)))


def path(n: int) -> Graph:
    if n < 1:
        raise ConstraintError("a path needs at least one vertex")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ConstraintError(f"a cycle needs at least three vertices, got {n}")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def complete(n: int) -> Graph:
    if n < 1:
        raise ConstraintError("a complete graph needs at least one vertex")
    return Graph.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def spine_with_leaves(alpha) -> Graph:
    """
    Path v_0..v_{l-1} with alpha[i] - 1 pendant leaves at v_i.

    Unlike caterpillar() this accepts end parts equal to 1, which some
    relations need (a part of 1 at an end just extends the spine).
    """
    alpha = [int(a) for a in alpha]
    if not alpha or any(a < 1 for a in alpha):
        raise ConstraintError(f"spine parts must be positive: {alpha}")
    spine = len(alpha)
    edges = [(i, i + 1) for i in range(spine - 1)]
    nxt = spine
    for i, a in enumerate(alpha):
        for _ in range(a - 1):
            edges.append((i, nxt))
            nxt += 1
    return Graph.from_edges(nxt, edges)


def caterpillar(alpha) -> Graph:
    """Cat_alpha; the end parts must be at least 2."""
    alpha = [int(a) for a in alpha]
    if not alpha:
        raise ConstraintError("caterpillar needs a non-empty composition")
    if alpha[0] < 2 or alpha[-1] < 2:
        raise ConstraintError(f"caterpillar end parts must be >= 2: {alpha}")
    return spine_with_leaves(alpha)


def cuttlefish(c: int, leaves: int) -> Graph:
    """Cut_{c,l}: a c-cycle with l leaves on vertex 0."""
    if c < 3:
        raise ConstraintError(f"cuttlefish cycle length must be >= 3, got {c}")
    if leaves < 0:
        raise ConstraintError("leaf count must be non-negative")
    edges = [(i, (i + 1) % c) for i in range(c)]
    edges += [(0, c + j) for j in range(leaves)]
    return Graph.from_edges(c + leaves, edges)


def bull_graph() -> Graph:
    """Triangle 1-2-3 with pendant 0 on vertex 1 and pendant 4 on vertex 3."""
    return Graph.from_edges(5, [(0, 1), (1, 2), (1, 3), (2, 3), (3, 4)])


def kappa_pair_g() -> Graph:
    return Graph.from_edges(
        6,
        [(0, 1), (1, 3), (2, 3), (0, 2), (1, 5), (3, 5), (3, 4), (1, 4), (4, 5), (0, 4), (2, 4)],
    )


def kappa_pair_h() -> Graph:
    return Graph.from_edges(
        6,
        [(0, 1), (1, 4), (4, 3), (3, 2), (0, 2), (0, 3), (3, 5), (1, 5), (1, 2), (0, 4), (2, 4)],
    )


_FIXED = {"fig1": bull_graph, "fig2g": kappa_pair_g, "fig2h": kappa_pair_h}
_SIZED = {"st": star, "p": path, "c": cycle, "k": complete, "e": empty_graph}
_FAMILY_RE = re.compile(r"^([A-Za-z]+)\s*:\s*([0-9,\s]+)$")


def make_family(spec: str) -> Graph:
    """
    Build a named graph from a spec such as "St:7", "Cat:3,1,1,2", "Cut:4,3"
    or "Fig1".
    """
    text = spec.strip()
    if text.lower() in _FIXED:
        return _FIXED[text.lower()]()

    match = _FAMILY_RE.match(text)
    if not match:
        raise GraphSpecError(f"malformed family spec: {spec!r}")
    name = match.group(1).lower()
    try:
        args = [int(a) for a in match.group(2).split(",") if a.strip()]
    except ValueError:
        raise GraphSpecError(f"malformed family arguments: {spec!r}")

    if name in _SIZED:
        if len(args) != 1:
            raise GraphSpecError(f"{match.group(1)} takes one size argument: {spec!r}")
        return _SIZED[name](args[0])
    if name == "cat":
        return caterpillar(args)
    if name == "cut":
        if len(args) != 2:
            raise GraphSpecError(f"Cut takes two arguments c,l: {spec!r}")
        return cuttlefish(*args)
    raise GraphSpecError(f"unknown family {match.group(1)!r}")


def is_family_spec(text: str) -> bool:
    text = text.strip()
    return text.lower() in _FIXED or _FAMILY_RE.match(text) is not None


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def to_graph6(G: Graph) -> str:
    if G.n > 62:
        raise GraphSpecError("graph6 support is limited to n <= 62")
    return nx.to_graph6_bytes(G.to_networkx(), header=False).decode("ascii").strip()


def from_graph6(text: str) -> Graph:
    try:
        H = nx.from_graph6_bytes(text.strip().encode("ascii"))
    except Exception as e:
        raise GraphSpecError(f"invalid graph6 string {text!r}: {e}")
    return Graph.from_edges(H.number_of_nodes(), H.edges())


def from_json(data) -> Graph:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise GraphSpecError(f"invalid JSON edge list: {e}")
    if not isinstance(data, dict) or "n" not in data:
        raise GraphSpecError('JSON graphs look like {"n": 3, "edges": [[0, 1], [1, 2]]}')
    try:
        return Graph.from_edges(int(data["n"]), (tuple(e) for e in data.get("edges", [])))
    except (TypeError, ValueError) as e:
        raise GraphSpecError(f"invalid JSON edge list: {e}")


def parse_graph(text: str) -> Graph:
    """Accept a family spec, a JSON edge list or a graph6 string."""
    text = text.strip()
    if not text:
        raise GraphSpecError("empty graph spec")
    if is_family_spec(text):
        return make_family(text)
    if text.startswith("{"):
        try:
            return from_json(text)
        except GraphSpecError:
            pass
    return from_graph6(text)


# ---------------------------------------------------------------------------
# Canonical labelling
# ---------------------------------------------------------------------------


def _refine(adj, colours):
    """Colour refinement until the partition is stable."""
    n = len(adj)
    while True:
        signatures = [
            (colours[v], tuple(sorted(colours[u] for u in adj[v]))) for v in range(n)
        ]
        index = {s: i for i, s in enumerate(sorted(set(signatures)))}
        refined = [index[s] for s in signatures]
        if len(index) == len(set(colours)):
            return refined
        colours = refined


def _twins(adj, u, v) -> bool:
    return adj[u] - {v} == adj[v] - {u}


def _certificate(matrix, order) -> bytes:
    n = len(order)
    sub = matrix[np.ix_(order, order)]
    bits = sub[np.triu_indices(n, 1)]
    return bytes([n]) + np.packbits(bits).tobytes()


def _search(adj, matrix, colours, best):
    colours = _refine(adj, colours)
    n = len(adj)
    cells = Counter(colours)
    if len(cells) == n:
        order = sorted(range(n), key=colours.__getitem__)
        cert = _certificate(matrix, order)
        if best[0] is None or cert < best[0]:
            best[0] = cert
            best[1] = order
        return

    target = min(c for c, size in cells.items() if size > 1)
    cell = [v for v in range(n) if colours[v] == target]

    # twins in the target cell are swapped by an automorphism fixing the colouring
    reps = []
    for v in cell:
        if not any(_twins(adj, v, r) for r in reps):
            reps.append(v)

    for v in reps:
        individualized = [2 * c + 1 for c in colours]
        individualized[v] = 2 * colours[v]
        _search(adj, matrix, individualized, best)


@lru_cache(maxsize=65536)
def _canonical(G: Graph):
    if G.n > settings.CANON_BOUND:
        raise CanonicalizationBoundError(G.n, settings.CANON_BOUND)
    if G.n == 0:
        return bytes([0]), []
    matrix = np.zeros((G.n, G.n), dtype=np.uint8)
    for u, v in G.edges:
        matrix[u, v] = matrix[v, u] = 1
    best = [None, None]
    _search(G.adjacency, matrix, [0] * G.n, best)
    return best[0], best[1]


def canonical_key(G: Graph) -> bytes:
    """Byte string equal for two graphs iff they are isomorphic."""
    return _canonical(G)[0]


def canonical_form(G: Graph) -> Graph:
    """The relabelling of G whose adjacency gives canonical_key(G)."""
    _, order = _canonical(G)
    return G.relabel(order)


def is_isomorphic(G: Graph, H: Graph) -> bool:
    if G.n != H.n or G.num_edges != H.num_edges:
        return False
    if sorted(G.degrees) != sorted(H.degrees):
        return False
    return canonical_key(G) == canonical_key(H)
