"""
Star-basis expansion of chromatic symmetric functions by
deletion / near-contraction:

    X_G = X_{G - e} - X_{(G/e) + dot} + X_{(G/e) + leaf}

for an internal edge e. A graph with no internal edge is a star forest and
contributes st_lambda, lambda its component sizes.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

from chromalg.errors import CanonicalizationBoundError, PreconditionError, check_bound
from chromalg.graph_core import (
    Graph,
    canonical_key,
    contract_edge,
    delete_edge,
    dot_contract,
    internal_edges,
    leaf_contract,
)
from chromalg.logger import setup_logger
from chromalg.partitions import Partition, partitions_of
from chromalg.symfunc import Basis, SymFunc
from config import settings

logger = setup_logger(__name__)


@dataclass(frozen=True, eq=False)
class StarExpansion:
    """X_G = sum c_lambda st_lambda with integer coefficients."""

    degree: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, value in self.coeffs.items():
            lam = key if isinstance(key, Partition) else Partition(key)
            value = int(value)
            if value:
                clean[lam] = value
        object.__setattr__(self, "coeffs", dict(sorted(clean.items(), reverse=True)))

    @classmethod
    def unit(cls, lam) -> "StarExpansion":
        lam = Partition(lam)
        return cls(lam.size, {lam: 1})

    def coefficient(self, lam) -> int:
        return self.coeffs.get(Partition(lam), 0)

    def __eq__(self, other):
        if not isinstance(other, StarExpansion):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, tuple(self.coeffs.items())))

    def __add__(self, other):
        merged = defaultdict(int, self.coeffs)
        for k, v in other.coeffs.items():
            merged[k] += v
        return StarExpansion(self.degree, merged)

    def __neg__(self):
        return StarExpansion(self.degree, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "StarExpansion":
        return StarExpansion(self.degree, {k: c * v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        """Star-basis product: st_lambda * st_mu = st_{lambda union mu}."""
        if not isinstance(other, StarExpansion):
            return self.scale(other)
        product = defaultdict(int)
        for lam, a in self.coeffs.items():
            for mu, b in other.coeffs.items():
                product[lam.union(mu)] += a * b
        return StarExpansion(self.degree + other.degree, product)

    __rmul__ = scale

    def vector(self) -> list:
        return [self.coefficient(lam) for lam in partitions_of(self.degree)]

    def to_symfunc(self) -> SymFunc:
        return SymFunc(self.degree, Basis.STAR, self.coeffs)

    @classmethod
    def from_symfunc(cls, f: SymFunc) -> "StarExpansion":
        if f.basis != Basis.STAR:
            raise PreconditionError("expected a star-basis symmetric function")
        for c in f.coeffs.values():
            if c.denominator != 1:
                raise PreconditionError("star coefficients are not integral")
        return cls(f.degree, {k: int(c) for k, c in f.coeffs.items()})

    def to_json(self) -> dict:
        return self.to_symfunc().to_json()

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*st[{lam.text()}]" for lam, c in self.coeffs.items())


ONE = StarExpansion(0, {Partition(): 1})
ST1 = StarExpansion.unit((1,))


def star_forest_partition(G: Graph) -> Partition:
    """
    Component sizes of a graph without internal edges. Each vertex of degree
    >= 2 is a star centre; edges between two degree-1 vertices are St_2;
    isolated vertices are St_1.
    """
    deg = G.degrees
    parts = [d + 1 for d in deg if d >= 2]
    parts += [2 for u, v in G.edges if deg[u] == 1 and deg[v] == 1]
    parts += [1 for d in deg if d == 0]
    return Partition(sorted(parts, reverse=True))


# ---------------------------------------------------------------------------
# Edge strategies
# ---------------------------------------------------------------------------


EdgeStrategy = Callable[[Graph, list], tuple]


def _max_degree(G: Graph, edges: list) -> tuple:
    deg = G.degrees
    return min(edges, key=lambda e: (-(deg[e[0]] + deg[e[1]]), e))


def _first(G: Graph, edges: list) -> tuple:
    return edges[0]


def _last(G: Graph, edges: list) -> tuple:
    return edges[-1]


def random_strategy(seed: int = 0) -> EdgeStrategy:
    rng = random.Random(seed)

    def choose(G: Graph, edges: list) -> tuple:
        return rng.choice(edges)

    return choose


STRATEGIES = {
    "max-degree": _max_degree,
    "first": _first,
    "last": _last,
}


def resolve_strategy(strategy: Union[str, EdgeStrategy, None], seed: int = 0) -> EdgeStrategy:
    if strategy is None:
        return _max_degree
    if callable(strategy):
        return strategy
    if strategy == "random":
        return random_strategy(seed)
    if strategy not in STRATEGIES:
        raise PreconditionError(f"unknown edge strategy {strategy!r}")
    return STRATEGIES[strategy]


# ---------------------------------------------------------------------------
# Fault injection
# ---------------------------------------------------------------------------

_FAULT = {"kind": None}
FAULTS = ("negate-top",)


def inject_fault(kind: str):
    """Corrupt every top-level expansion; used to sanity-check the verifier."""
    if kind not in FAULTS:
        raise PreconditionError(f"unknown fault {kind!r}")
    _FAULT["kind"] = kind
    logger.warning(f"fault injection enabled: {kind}")


def clear_fault():
    _FAULT["kind"] = None


def _apply_fault(result: StarExpansion) -> StarExpansion:
    if _FAULT["kind"] == "negate-top" and result.degree > 0:
        top = Partition((result.degree,))
        coeffs = dict(result.coeffs)
        if top in coeffs:
            coeffs[top] = -coeffs[top]
        return StarExpansion(result.degree, coeffs)
    return result


# ---------------------------------------------------------------------------
# Plain recursion
# ---------------------------------------------------------------------------


def _expand(G: Graph, choose: EdgeStrategy) -> StarExpansion:
    coeffs = defaultdict(int)
    stack = [(G, 1)]
    while stack:
        graph, sign = stack.pop()
        edges = internal_edges(graph)
        if not edges:
            coeffs[star_forest_partition(graph)] += sign
            continue
        e = choose(graph, edges)
        stack.append((delete_edge(graph, e), sign))
        stack.append((dot_contract(graph, e), -sign))
        stack.append((leaf_contract(graph, e), sign))
    return StarExpansion(G.n, coeffs)


def dnc_expand(G: Graph, strategy: Union[str, EdgeStrategy, None] = None, seed: int = 0) -> StarExpansion:
    """
    Star expansion of X_G by the deletion / near-contraction recursion.

    Args:
        G: the graph (n >= 1)
        strategy: "max-degree" (default), "first", "last", "random" or a
            callable picking one edge from the list of internal edges
        seed: seed for the random strategy

    Returns:
        StarExpansion of X_G
    """
    if G.n < 1:
        raise PreconditionError("dnc_expand needs at least one vertex")
    return _apply_fault(_expand(G, resolve_strategy(strategy, seed)))


# ---------------------------------------------------------------------------
# Memoized recursion
# ---------------------------------------------------------------------------


class _Memo:
    def __init__(self):
        self.table = {}
        self.hits = 0
        self.misses = 0

    def clear(self):
        self.table.clear()
        self.hits = 0
        self.misses = 0


_MEMO = _Memo()


def dnc_cache_info() -> dict:
    return {"hits": _MEMO.hits, "misses": _MEMO.misses, "size": len(_MEMO.table)}


def clear_dnc_cache():
    _MEMO.clear()


def _split(G: Graph):
    """(number of isolated vertices, list of connected components with >= 2 vertices)."""
    isolated = 0
    parts = []
    for comp in G.components():
        if len(comp) == 1:
            isolated += 1
        else:
            parts.append(G.induced(comp))
    return isolated, parts


def _expand_connected(G: Graph, key: bytes) -> StarExpansion:
    """Post-order over an explicit stack; children are factored into components."""
    stack = [(G, key, None)]
    while stack:
        graph, k, children = stack.pop()

        if children is not None:
            total = StarExpansion(graph.n, {})
            for sign, isolated, keys in children:
                term = StarExpansion.unit((1,) * isolated) if isolated else ONE
                for ck in keys:
                    term = term * _MEMO.table[ck]
                total = total + term.scale(sign)
            _MEMO.table[k] = total
            continue

        if k in _MEMO.table:
            continue
        _MEMO.misses += 1

        edges = internal_edges(graph)
        if not edges:
            _MEMO.table[k] = StarExpansion.unit(star_forest_partition(graph))
            continue

        e = _max_degree(graph, edges)
        contracted = contract_edge(graph, e)
        plan = []
        pending = []
        for sign, child in ((1, delete_edge(graph, e)), (-1, contracted), (1, leaf_contract(graph, e))):
            isolated, parts = _split(child)
            if sign == -1:
                # the dot-contraction is the contraction plus one isolated vertex
                isolated += 1
            keys = []
            for part in parts:
                ck = canonical_key(part)
                keys.append(ck)
                if ck in _MEMO.table:
                    _MEMO.hits += 1
                else:
                    pending.append((part, ck))
            plan.append((sign, isolated, keys))

        stack.append((graph, k, plan))
        for part, ck in pending:
            stack.append((part, ck, None))

    return _MEMO.table[key]


def _expand_memo(G: Graph) -> StarExpansion:
    isolated, parts = _split(G)
    result = StarExpansion.unit((1,) * isolated) if isolated else ONE
    for part in parts:
        key = canonical_key(part)
        if key in _MEMO.table:
            _MEMO.hits += 1
            expansion = _MEMO.table[key]
        else:
            expansion = _expand_connected(part, key)
        result = result * expansion
    return result


def dnc_expand_memo(G: Graph) -> StarExpansion:
    """Same result as dnc_expand, memoized on canonical keys of connected pieces."""
    if G.n < 1:
        raise PreconditionError("dnc_expand needs at least one vertex")
    try:
        result = _expand_memo(G)
    except CanonicalizationBoundError as e:
        logger.debug(f"{e}; falling back to the unmemoized recursion")
        result = _expand(G, _max_degree)
    return _apply_fault(result)


def chromatic_star(G: Graph) -> StarExpansion:
    """Default entry point used by the sweeps."""
    return dnc_expand_memo(G)


# ---------------------------------------------------------------------------
# Traces
# ---------------------------------------------------------------------------


@dataclass
class DncNode:
    graph: Graph
    edge: Optional[tuple] = None
    delete: Optional["DncNode"] = None
    dot: Optional["DncNode"] = None
    leaf: Optional["DncNode"] = None

    @property
    def is_leaf(self) -> bool:
        return self.edge is None

    @property
    def star(self) -> Optional[Partition]:
        return star_forest_partition(self.graph) if self.is_leaf else None


@dataclass
class DncTrace:
    root: DncNode
    strategy: str = "max-degree"

    def leaves(self) -> list:
        """(sign, star-forest partition) for every leaf, depth first."""
        out = []
        stack = [(self.root, 1)]
        while stack:
            node, sign = stack.pop()
            if node.is_leaf:
                out.append((sign, node.star))
                continue
            stack.append((node.leaf, sign))
            stack.append((node.dot, -sign))
            stack.append((node.delete, sign))
        return out

    def fold(self) -> StarExpansion:
        coeffs = defaultdict(int)
        for sign, lam in self.leaves():
            coeffs[lam] += sign
        return StarExpansion(self.root.graph.n, coeffs)

    def node_count(self) -> int:
        count = 0
        stack = [self.root]
        while stack:
            node = stack.pop()
            count += 1
            if not node.is_leaf:
                stack.extend((node.delete, node.dot, node.leaf))
        return count

    def to_json(self) -> dict:
        def encode(node):
            if node.is_leaf:
                return {"graph": node.graph.graph6(), "star": node.star.text()}
            return {
                "graph": node.graph.graph6(),
                "edge": list(node.edge),
                "delete": encode(node.delete),
                "dot": encode(node.dot),
                "leaf": encode(node.leaf),
            }

        return {"strategy": self.strategy, "root": encode(self.root)}


def dnc_trace(G: Graph, edge_strategy: Union[str, EdgeStrategy, None] = None, seed: int = 0) -> DncTrace:
    """Full ternary DNC tree of G (n <= trace bound)."""
    check_bound("trace vertex", G.n, settings.bound("trace"))
    choose = resolve_strategy(edge_strategy, seed)
    root = DncNode(G)
    stack = [root]
    while stack:
        node = stack.pop()
        edges = internal_edges(node.graph)
        if not edges:
            continue
        e = choose(node.graph, edges)
        node.edge = e
        node.delete = DncNode(delete_edge(node.graph, e))
        node.dot = DncNode(dot_contract(node.graph, e))
        node.leaf = DncNode(leaf_contract(node.graph, e))
        stack.extend((node.delete, node.dot, node.leaf))
    name = edge_strategy if isinstance(edge_strategy, str) else "max-degree" if edge_strategy is None else "custom"
    return DncTrace(root, name)
