"""Intersection calculus on weighted dual graphs of curves on a smooth surface.

A graph is a resolution: integral self-intersections, edges with multiplicity.
Contracting a negative definite set of non-retained curves produces rational
intersection numbers on the (singular) contracted surface; every closed form in
the catalog is checked against the numbers computed here.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import AmbiguousAnchor, NotAChain, NotNegativeDefinite, SelfLoopForbidden, UnknownVertex
from .exact_arith import RationalMatrix, solve_linear_system
from .hj_quotient import CyclicQuotient, chain_to_type


@dataclass(frozen=True)
class Curve:
    self_intersection: int
    genus: int = 0
    retained: bool = False


class DualGraph:
    """Vertices keep insertion order; edges form a multiset of unordered pairs."""

    def __init__(self, vertices: Mapping[str, Curve] | None = None, edges: Iterable[tuple[str, str]] = ()):
        self.vertices: dict[str, Curve] = {}
        self._edges: Counter = Counter()
        for vid, curve in (vertices or {}).items():
            self.add_curve(vid, curve.self_intersection, genus=curve.genus, retained=curve.retained)
        for u, v in edges:
            self.add_edge(u, v)

    # -- construction -----------------------------------------------------

    def add_curve(self, vid: str, self_intersection: int, *, genus: int = 0, retained: bool = False) -> str:
        if vid in self.vertices:
            raise ValueError(f"duplicate curve id {vid!r}")
        if isinstance(self_intersection, bool) or not isinstance(self_intersection, int):
            raise TypeError("self-intersections of input curves are integers")
        if genus < 0:
            raise ValueError("genus must be nonnegative")
        self.vertices[vid] = Curve(self_intersection, genus, retained)
        return vid

    def add_edge(self, u: str, v: str, multiplicity: int = 1) -> None:
        if u == v:
            raise SelfLoopForbidden(f"edge {u} {u} is a self-loop")
        for w in (u, v):
            if w not in self.vertices:
                raise UnknownVertex(f"edge endpoint {w!r} is not a curve")
        if multiplicity < 1:
            raise ValueError("edge multiplicity must be positive")
        self._edges[frozenset((u, v))] += multiplicity

    def add_chain(self, prefix: str, weights: Sequence[int], start: int = 1) -> list[str]:
        """Add a chain of curves ``prefix{start}``, ... with self-intersections ``-w``."""
        ids = []
        for k, w in enumerate(weights):
            ids.append(self.add_curve(f"{prefix}{start + k}", -w))
        for u, v in zip(ids, ids[1:]):
            self.add_edge(u, v)
        return ids

    # -- queries ----------------------------------------------------------

    def _check(self, vid: str) -> None:
        if vid not in self.vertices:
            raise UnknownVertex(f"unknown curve {vid!r}")

    def dot(self, u: str, v: str) -> int:
        self._check(u)
        self._check(v)
        if u == v:
            return self.vertices[u].self_intersection
        return self._edges.get(frozenset((u, v)), 0)

    def edges(self) -> list[tuple[str, str, int]]:
        order = {v: i for i, v in enumerate(self.vertices)}
        out = []
        for pair, mult in self._edges.items():
            u, v = sorted(pair, key=order.__getitem__)
            out.append((u, v, mult))
        out.sort(key=lambda e: (order[e[0]], order[e[1]]))
        return out

    def neighbours(self, vid: str) -> list[str]:
        self._check(vid)
        return [v for v in self.vertices if v != vid and self._edges.get(frozenset((vid, v)), 0)]

    def retained(self) -> list[str]:
        return [v for v, c in self.vertices.items() if c.retained]

    def exceptional(self) -> list[str]:
        return [v for v, c in self.vertices.items() if not c.retained]

    def components(self, subset: Iterable[str]) -> list[list[str]]:
        """Connected components of the induced subgraph, in vertex order."""
        subset = set(subset)
        for v in subset:
            self._check(v)
        seen: set[str] = set()
        out = []
        for start in self.vertices:
            if start not in subset or start in seen:
                continue
            comp, stack = [], [start]
            seen.add(start)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self.neighbours(x):
                    if y in subset and y not in seen:
                        seen.add(y)
                        stack.append(y)
            order = list(self.vertices)
            out.append(sorted(comp, key=order.index))
        return out

    def clusters(self, keep: Iterable[str] = ()) -> list[list[str]]:
        """Connected components of the non-retained curves not listed in ``keep``."""
        keep = set(keep)
        return self.components(v for v in self.exceptional() if v not in keep)

    def divisor_dot(self, a: Mapping[str, Fraction], b: Mapping[str, Fraction]) -> Fraction:
        return sum((Fraction(ca) * cb * self.dot(u, v) for u, ca in a.items() for v, cb in b.items()), Fraction(0))

    def copy(self) -> "DualGraph":
        g = DualGraph(self.vertices)
        g._edges = Counter(self._edges)
        return g

    def __eq__(self, other):
        if not isinstance(other, DualGraph):
            return NotImplemented
        return list(self.vertices.items()) == list(other.vertices.items()) and self._edges == other._edges

    __hash__ = None

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph \"{name}\" {{"]
        for vid, c in self.vertices.items():
            style = ", style=filled" if c.retained else ""
            lines.append(f"  \"{vid}\" [label=\"{vid}({c.self_intersection})\"{style}];")
        for u, v, mult in self.edges():
            for _ in range(mult):
                lines.append(f"  \"{u}\" -- \"{v}\";")
        lines.append("}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# operations


def _as_divisor(divisor) -> dict[str, Fraction]:
    if isinstance(divisor, str):
        return {divisor: Fraction(1)}
    if isinstance(divisor, Mapping):
        return {k: Fraction(v) for k, v in divisor.items()}
    out: dict[str, Fraction] = {}
    for k in divisor:
        out[k] = out.get(k, Fraction(0)) + 1
    return out


def _cluster_list(g: DualGraph, cluster: Iterable[str]) -> list[str]:
    cl = list(cluster)
    for v in cl:
        g._check(v)
    if len(set(cl)) != len(cl):
        raise ValueError("cluster lists a curve twice")
    return cl


def intersection_matrix(g: DualGraph, subset: Iterable[str]) -> RationalMatrix:
    sub = _cluster_list(g, subset)
    if not sub:
        raise ValueError("empty subset")
    return RationalMatrix([[g.dot(u, v) for v in sub] for u in sub])


def is_negative_definite(g: DualGraph, subset: Iterable[str]) -> bool:
    return intersection_matrix(g, subset).is_negative_definite()


def pullback(g: DualGraph, divisor, cluster: Iterable[str]) -> dict[str, Fraction]:
    """Coefficients gamma with (D + sum gamma_i E_i) . E_j = 0 on the cluster."""
    cl = _cluster_list(g, cluster)
    d = _as_divisor(divisor)
    for v in d:
        g._check(v)
        if v in cl:
            raise ValueError(f"divisor curve {v!r} lies in the contracted cluster")
    m = intersection_matrix(g, cl)
    if not m.is_negative_definite():
        raise NotNegativeDefinite(f"cluster {cl} is not negative definite")
    rhs = [-sum((c * g.dot(u, e) for u, c in d.items()), Fraction(0)) for e in cl]
    gamma = dict(zip(cl, solve_linear_system(m, rhs)))
    total = dict(d)
    total.update(gamma)
    for e in cl:
        if g.divisor_dot(total, {e: 1}) != 0:
            raise AssertionError("pullback residual is nonzero")
    return gamma


def _check_clusters(g: DualGraph, clusters) -> list[list[str]]:
    out = [_cluster_list(g, c) for c in clusters]
    seen: set[str] = set()
    for c in out:
        if seen & set(c):
            raise ValueError("clusters overlap")
        seen |= set(c)
    return out


def _pullback_all(g: DualGraph, divisor: dict[str, Fraction], clusters) -> dict[str, Fraction]:
    total = dict(divisor)
    for cl in clusters:
        if any(g.dot(u, e) for u in divisor for e in cl):
            total.update(pullback(g, divisor, cl))
        elif not is_negative_definite(g, cl):
            raise NotNegativeDefinite(f"cluster {cl} is not negative definite")
    return total


def pair_intersection_contracted(g: DualGraph, a_divisor, b_divisor, clusters=()) -> Fraction:
    """A . B after contracting ``clusters``, computed as A . (B + sum gamma(B) E)."""
    clusters = _check_clusters(g, clusters)
    a, b = _as_divisor(a_divisor), _as_divisor(b_divisor)
    return g.divisor_dot(a, _pullback_all(g, b, clusters))


def self_intersection_contracted(g: DualGraph, divisor, clusters=()) -> Fraction:
    return pair_intersection_contracted(g, divisor, divisor, clusters)


def canonical_on_resolution(g: DualGraph, vid: str) -> int:
    """K_U . C by adjunction for a smooth curve of the declared genus."""
    c = g.vertices[vid]
    return 2 * c.genus - 2 - c.self_intersection


def canonical_intersection_contracted(g: DualGraph, divisor, clusters=()) -> Fraction:
    """K . D on the contracted surface, as K_U . (pullback of D)."""
    clusters = _check_clusters(g, clusters)
    d = _as_divisor(divisor)
    total = _pullback_all(g, d, clusters)
    return sum((c * canonical_on_resolution(g, v) for v, c in total.items()), Fraction(0))


def discrepancies(g: DualGraph, cluster: Iterable[str]) -> dict[str, Fraction]:
    """d with K_U = f*K + sum d_i E_i over one contracted cluster."""
    cl = _cluster_list(g, cluster)
    m = intersection_matrix(g, cl)
    if not m.is_negative_definite():
        raise NotNegativeDefinite(f"cluster {cl} is not negative definite")
    return dict(zip(cl, solve_linear_system(m, [canonical_on_resolution(g, e) for e in cl])))


def different_at_cluster(g: DualGraph, retained_curve: str, cluster: Iterable[str]) -> Fraction:
    cl = _cluster_list(g, cluster)
    g._check(retained_curve)
    if not any(g.dot(retained_curve, e) for e in cl):
        raise ValueError(f"{retained_curve!r} does not meet the cluster")
    c = pullback(g, retained_curve, cl)
    d = discrepancies(g, cl)
    return sum(((c[e] - d[e]) * g.dot(retained_curve, e) for e in cl), Fraction(0))


def chain_order(g: DualGraph, cluster: Iterable[str]) -> list[str]:
    """The cluster's curves in path order, or NotAChain."""
    cl = _cluster_list(g, cluster)
    if not cl:
        raise NotAChain("empty cluster")
    inside = set(cl)
    nbrs = {v: [w for w in g.neighbours(v) if w in inside] for v in cl}
    for v in cl:
        if any(g.dot(v, w) > 1 for w in nbrs[v]) or len(nbrs[v]) > 2:
            raise NotAChain(f"cluster {cl} is not a chain")
    ends = [v for v in cl if len(nbrs[v]) <= 1]
    if len(cl) == 1:
        return cl
    if len(ends) != 2 or len(g.components(cl)) != 1:
        raise NotAChain(f"cluster {cl} is not a chain")
    path = [ends[0]]
    while len(path) < len(cl):
        nxt = [w for w in nbrs[path[-1]] if w not in path]
        path.append(nxt[0])
    return path


def cluster_quotient_type(g: DualGraph, cluster: Iterable[str], anchor: str) -> CyclicQuotient:
    path = chain_order(g, cluster)
    g._check(anchor)
    touching = [v for v in path if g.dot(anchor, v)]
    if len(touching) != 1 or g.dot(anchor, touching[0]) != 1:
        raise AmbiguousAnchor(f"{anchor!r} must meet the chain once, at one end")
    if touching[0] == path[-1]:
        path.reverse()
    elif touching[0] != path[0]:
        raise AmbiguousAnchor(f"{anchor!r} meets the chain away from its ends")
    return chain_to_type([-g.vertices[v].self_intersection for v in path])


def chain_graph(weights: Sequence[int], anchor: str = "C", at_end: str = "first") -> DualGraph:
    """A retained anchor curve attached to one end of a chain ``E1..Em``."""
    g = DualGraph()
    g.add_curve(anchor, -1, retained=True)
    ids = g.add_chain("E", weights)
    g.add_edge(anchor, ids[0] if at_end == "first" else ids[-1])
    return g
