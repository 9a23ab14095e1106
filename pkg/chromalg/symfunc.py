"""
Homogeneous symmetric functions in the monomial, elementary, power-sum and
star bases, with exact Fraction coefficients.

Power sums are the carrier: every transition matrix is built to or from the
p basis and cached per (degree, source, target).
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb

import networkx as nx
import sympy

from chromalg.errors import PartitionError, PreconditionError, check_bound
from chromalg.graph_core import Graph
from chromalg.linalg import RationalMatrix
from chromalg.logger import setup_logger
from chromalg.partitions import Partition, parse_partition, partitions_of
from config import settings

logger = setup_logger(__name__)

T = sympy.Symbol("t")


class Basis(str, Enum):
    MONOMIAL = "m"
    ELEMENTARY = "e"
    POWER_SUM = "p"
    STAR = "star"


MULTIPLICATIVE = (Basis.ELEMENTARY, Basis.POWER_SUM, Basis.STAR)


def format_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text) -> Fraction:
    return Fraction(str(text))


@dataclass(frozen=True, eq=False)
class SymFunc:
    """Degree-n symmetric function as a sparse map partition -> Fraction."""

    degree: int
    basis: Basis
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, value in self.coeffs.items():
            lam = key if isinstance(key, Partition) else Partition(key)
            if lam.size != self.degree:
                raise PartitionError(f"{lam.text()} is not a partition of {self.degree}")
            value = Fraction(value)
            if value != 0:
                clean[lam] = clean.get(lam, Fraction(0)) + value
        clean = {k: v for k, v in clean.items() if v != 0}
        object.__setattr__(self, "basis", Basis(self.basis))
        object.__setattr__(self, "coeffs", dict(sorted(clean.items(), reverse=True)))

    @classmethod
    def unit(cls, lam, basis: Basis) -> "SymFunc":
        lam = Partition(lam)
        return cls(lam.size, basis, {lam: 1})

    @classmethod
    def zero(cls, degree: int, basis: Basis) -> "SymFunc":
        return cls(degree, basis, {})

    def coefficient(self, lam) -> Fraction:
        return self.coeffs.get(Partition(lam), Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> list:
        return list(self.coeffs)

    def vector(self) -> list:
        """Coefficients over partitions_of(degree)."""
        return [self.coefficient(lam) for lam in partitions_of(self.degree)]

    @classmethod
    def from_vector(cls, degree: int, basis: Basis, values) -> "SymFunc":
        return cls(degree, basis, dict(zip(partitions_of(degree), values)))

    def __eq__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        return self.degree == other.degree and self.basis == other.basis and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, self.basis, tuple(self.coeffs.items())))

    def _aligned(self, other):
        if self.degree != other.degree:
            raise PreconditionError("cannot add symmetric functions of different degrees")
        return other if other.basis == self.basis else convert(other, self.basis)

    def __add__(self, other):
        other = self._aligned(other)
        merged = defaultdict(Fraction, self.coeffs)
        for k, v in other.coeffs.items():
            merged[k] += v
        return SymFunc(self.degree, self.basis, merged)

    def __neg__(self):
        return SymFunc(self.degree, self.basis, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SymFunc":
        c = Fraction(c)
        return SymFunc(self.degree, self.basis, {k: c * v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, SymFunc):
            return multiply(self, other)
        return self.scale(other)

    __rmul__ = scale

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "basis": self.basis.value,
            "coeffs": {lam.text(): format_rational(c) for lam, c in self.coeffs.items()},
        }

    @classmethod
    def from_json(cls, data: dict) -> "SymFunc":
        coeffs = {parse_partition(k): parse_rational(v) for k, v in data["coeffs"].items()}
        return cls(int(data["degree"]), Basis(data["basis"]), coeffs)

    def __repr__(self):
        name = {"m": "m", "e": "e", "p": "p", "star": "st"}[self.basis.value]
        if not self.coeffs:
            return "0"
        terms = [f"{c}*{name}[{lam.text()}]" for lam, c in self.coeffs.items()]
        return " + ".join(terms)


# ---------------------------------------------------------------------------
# Transition matrices
# ---------------------------------------------------------------------------


def _concat(lam, mu) -> Partition:
    return Partition(sorted(tuple(lam) + tuple(mu), reverse=True))


@lru_cache(maxsize=None)
def star_in_powersums(k: int) -> dict:
    """st_k = sum_j (-1)^j C(k-1, j) p_{(j+1) 1^{k-1-j}}."""
    result = {}
    for j in range(k):
        lam = Partition((j + 1,) + (1,) * (k - 1 - j))
        result[lam] = (-1) ** j * comb(k - 1, j)
    return result


def _star_forest_in_powersums(lam) -> dict:
    terms = {Partition(): 1}
    for part in lam:
        nxt = defaultdict(int)
        for mu, a in terms.items():
            for nu, b in star_in_powersums(part).items():
                nxt[_concat(mu, nu)] += a * b
        terms = nxt
    return terms


def _powersum_monomial_coefficient(lam, mu) -> int:
    """Ways to drop the parts of lam into bins of sizes mu (coefficient of x^mu in p_lam)."""

    @lru_cache(maxsize=None)
    def count(i, remaining):
        if i == len(lam):
            return int(not any(remaining))
        part = lam[i]
        total = 0
        for j, r in enumerate(remaining):
            if r >= part:
                total += count(i + 1, remaining[:j] + (r - part,) + remaining[j + 1:])
        return total

    return count(0, tuple(mu))


def _elementary_monomial_coefficient(lam, mu) -> int:
    """0-1 matrices with row sums lam and column sums mu (coefficient of x^mu in e_lam)."""

    @lru_cache(maxsize=None)
    def count(i, remaining):
        if i == len(lam):
            return int(not any(remaining))
        open_cols = [j for j, r in enumerate(remaining) if r > 0]
        total = 0
        for chosen in itertools.combinations(open_cols, lam[i]):
            nxt = list(remaining)
            for j in chosen:
                nxt[j] -= 1
            total += count(i + 1, tuple(nxt))
        return total

    return count(0, tuple(mu))


def _matrix_from(n, entry) -> RationalMatrix:
    parts = partitions_of(n)
    rows = [[entry(lam, mu) for mu in parts] for lam in parts]
    return RationalMatrix(rows, parts, parts, ncols=len(parts))


@lru_cache(maxsize=None)
def transition_matrix(n: int, source: Basis, target: Basis) -> RationalMatrix:
    """
    Matrix whose row lam holds the target-basis coefficients of the source
    basis element indexed by lam. Rows and columns follow partitions_of(n).
    """
    source, target = Basis(source), Basis(target)
    if source == target:
        return RationalMatrix.identity(len(partitions_of(n)), list(partitions_of(n)))

    if source == Basis.POWER_SUM:
        if target == Basis.MONOMIAL:
            logger.debug(f"building p->m transition matrix for n={n}")
            return _matrix_from(n, _powersum_monomial_coefficient)
        return transition_matrix(n, target, Basis.POWER_SUM).inverse()

    if source == Basis.MONOMIAL:
        to_p = transition_matrix(n, Basis.POWER_SUM, Basis.MONOMIAL).inverse()
    elif source == Basis.ELEMENTARY:
        to_m = _matrix_from(n, _elementary_monomial_coefficient)
        to_p = to_m @ transition_matrix(n, Basis.MONOMIAL, Basis.POWER_SUM)
    else:
        to_p = _matrix_from(n, lambda lam, mu: _star_forest_in_powersums(lam).get(mu, 0))

    if target == Basis.POWER_SUM:
        return to_p
    return to_p @ transition_matrix(n, Basis.POWER_SUM, target)


def convert(f: SymFunc, target: Basis) -> SymFunc:
    target = Basis(target)
    if f.basis == target:
        return f
    matrix = transition_matrix(f.degree, f.basis, target)
    return SymFunc.from_vector(f.degree, target, matrix.vecmul(f.vector()))


def multiply(f: SymFunc, g: SymFunc) -> SymFunc:
    """
    Product of f and g, returned in the basis of f. The p, e and star bases
    are multiplicative, so products there concatenate index partitions; a
    monomial input is multiplied through power sums.
    """
    carrier = f.basis if f.basis in MULTIPLICATIVE else Basis.POWER_SUM
    a, b = convert(f, carrier), convert(g, carrier)
    product = defaultdict(Fraction)
    for lam, x in a.coeffs.items():
        for mu, y in b.coeffs.items():
            product[_concat(lam, mu)] += x * y
    result = SymFunc(f.degree + g.degree, carrier, product)
    return convert(result, f.basis)


# ---------------------------------------------------------------------------
# Brute-force chromatic oracles
# ---------------------------------------------------------------------------


def chromatic_oracle_p(G: Graph) -> SymFunc:
    """
    X_G = sum over edge subsets S of (-1)^|S| p_{lambda(S)}, lambda(S) the
    component sizes of (V, S). Subsets are folded edge by edge into signed
    counts per set partition of V, so equal partitions are summed once.
    """
    check_bound("edge-subset oracle edge", G.num_edges, settings.ORACLE_P_MAX_EDGES)

    # each state labels every vertex by the smallest vertex of its block
    states = {tuple(range(G.n)): 1}
    for u, v in G.sorted_edges():
        nxt = defaultdict(int)
        for labels, count in states.items():
            nxt[labels] += count
            a, b = labels[u], labels[v]
            if a != b:
                lo, hi = min(a, b), max(a, b)
                merged = tuple(lo if x == hi else x for x in labels)
            else:
                merged = labels
            nxt[merged] -= count
        states = {k: c for k, c in nxt.items() if c}

    coeffs = defaultdict(int)
    for labels, count in states.items():
        sizes = sorted(Counter(labels).values(), reverse=True)
        coeffs[Partition(sizes)] += count
    return SymFunc(G.n, Basis.POWER_SUM, coeffs)


def chromatic_oracle_m(G: Graph) -> SymFunc:
    """
    Coefficient of m_lambda = number of proper colourings with colour i used
    exactly lambda_i times, i.e. ordered sequences of disjoint independent
    sets of sizes lambda_1, ..., lambda_l covering V.
    """
    check_bound("colouring oracle vertex", G.n, settings.bound("oracle_m"))
    n = G.n
    adj_mask = [sum(1 << w for w in G.neighbours(v)) for v in range(n)]

    independent = [True] * (1 << n)
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        independent[mask] = independent[rest] and not (adj_mask[low] & rest)

    by_size = defaultdict(list)
    for mask in range(1 << n):
        if independent[mask]:
            by_size[bin(mask).count("1")].append(mask)

    full = (1 << n) - 1
    coeffs = {}
    for lam in partitions_of(n):

        @lru_cache(maxsize=None)
        def count(j, remaining, lam=lam):
            if j == len(lam):
                return int(remaining == 0)
            return sum(count(j + 1, remaining & ~s) for s in by_size[lam[j]] if s & remaining == s)

        coeffs[lam] = count(0, full)
    return SymFunc(n, Basis.MONOMIAL, coeffs)


# ---------------------------------------------------------------------------
# Chromatic polynomial
# ---------------------------------------------------------------------------


def _chromatic_function(G: Graph) -> SymFunc:
    if G.num_edges <= settings.ORACLE_P_MAX_EDGES:
        return chromatic_oracle_p(G)
    from chromalg.dnc_engine import dnc_expand_memo

    return dnc_expand_memo(G).to_symfunc()


def chromatic_polynomial(source, t=None):
    """
    Chromatic polynomial from the power-sum expansion: p_k -> t, so
    chi(t) = sum_lambda c_lambda t^{l(lambda)}.

    Args:
        source: a Graph or a SymFunc in any basis
        t: optional integer at which to evaluate

    Returns:
        sympy Poly in t, or its value at t when t is given
    """
    f = _chromatic_function(source) if isinstance(source, Graph) else source
    f = convert(f, Basis.POWER_SUM)
    expr = sum(
        (sympy.Rational(c.numerator, c.denominator) * T ** lam.length for lam, c in f.coeffs.items()),
        sympy.Integer(0),
    )
    poly = sympy.Poly(expr, T)
    if t is None:
        return poly
    return _to_number(poly.eval(t))


def chromatic_polynomial_dc(G: Graph) -> sympy.Poly:
    """Deletion-contraction chromatic polynomial, for cross-checking."""
    expr = nx.chromatic_polynomial(G.to_networkx())
    expr = sympy.sympify(expr).subs(sympy.Symbol("x"), T)
    return sympy.Poly(expr, T)


def chromatic_value(G: Graph, t: int):
    return chromatic_polynomial(G, t)


def chromatic_derivative(source, at: int):
    """chi'(at), by exact differentiation."""
    poly = chromatic_polynomial(source)
    return _to_number(poly.diff(T).eval(at))


def _to_number(value):
    value = sympy.Rational(value)
    if value.q == 1:
        return int(value.p)
    return Fraction(int(value.p), int(value.q))
