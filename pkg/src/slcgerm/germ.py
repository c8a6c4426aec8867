"""Germs of nonnormal surfaces along a proper curve, and the degree of L_C.

A germ is described by its double-curve components, the special points on
them and (optionally) extended dual graphs of the normalization.  The degree
of the locally free part of T^1_qG restricted to a component is

    deg L_C = C~^2 + p + 2 c1 + 2 c2 + sum alpha3 + sum alpha4,

and the proof path recomputes it from graph-derived beta/delta values.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .catalog.invariants import point_invariants
from .catalog.oracle import oracle_beta_delta
from .catalog.types import (
    CLASS_C1,
    CLASS_C2,
    CLASS_M,
    CLASS_PINCH,
    CLASS_U3,
    CLASS_V4,
    CLASS_W4,
    DegCusp4,
    Slt,
    census_class,
    legal_roles,
    smoothing_target,
    type_label,
)
from .dual_graph import (
    DualGraph,
    canonical_intersection_contracted,
    chain_order,
    cluster_quotient_type,
    is_negative_definite,
    self_intersection_contracted,
)
from .errors import (
    AmbiguousAnchor,
    NotAChain,
    OracleUnavailable,
    RequiresGraph,
    ValidationFailed,
)

THEOREM = "theorem"
EXAMPLE = "example"
CONVENTIONS = (THEOREM, EXAMPLE)

U4_CLASSES = (CLASS_W4, CLASS_V4, CLASS_M)


# ---------------------------------------------------------------------------
# data model


@dataclass(frozen=True)
class AssertedSelfIntersection:
    value: Fraction


@dataclass(frozen=True)
class FromGraph:
    graph_id: str
    divisor: tuple[str, ...]


@dataclass
class GermComponent:
    id: str
    genus: int = 0
    normalization: AssertedSelfIntersection | FromGraph | None = None


@dataclass(frozen=True)
class Incidence:
    component: str
    role: str | None = None


@dataclass
class PointIncidence:
    id: str
    type: object
    incidences: tuple[Incidence, ...]
    branches: int = 1


@dataclass
class Assumptions:
    h2_tangent_vanishes: bool = False
    modification_of_isolated_singularity: bool = False


@dataclass
class GermDescription:
    name: str
    components: list[GermComponent] = field(default_factory=list)
    points: list[PointIncidence] = field(default_factory=list)
    graphs: dict[str, DualGraph] = field(default_factory=dict)
    assumptions: Assumptions = field(default_factory=Assumptions)

    def component(self, cid: str) -> GermComponent:
        for c in self.components:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def component_ids(self) -> list[str]:
        return sorted(c.id for c in self.components)

    def incidences_on(self, cid: str) -> list[tuple[PointIncidence, Incidence]]:
        """Every (point, incidence) pair on ``cid``, ordered by point id."""
        out = [(pt, inc) for pt in self.points for inc in pt.incidences if inc.component == cid]
        return sorted(out, key=lambda pair: pair[0].id)


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    code: str
    message: str

    def __str__(self):
        return f"{self.severity}: {self.code}: {self.message}"


def _error(code, message):
    return Diagnostic("error", code, message)


def _warning(code, message):
    return Diagnostic("warning", code, message)


def _check_point(pt: PointIncidence, component_ids: set[str]) -> list[Diagnostic]:
    out = []
    where = f"point {pt.id}"
    for inc in pt.incidences:
        if inc.component not in component_ids:
            out.append(_error("DanglingReference", f"{where} lies on unknown component {inc.component!r}"))
    expected = 1 + pt.type.infinite_count()
    if len(pt.incidences) != expected:
        out.append(
            _error(
                "IllegalIncidence",
                f"{where} ({type_label(pt.type)}) needs {expected} incident component(s), got {len(pt.incidences)}",
            )
        )
        return out
    roles = Counter(inc.role for inc in pt.incidences if inc.role is not None)
    allowed = legal_roles(pt.type)
    if allowed:
        if roles != allowed or any(inc.role is None for inc in pt.incidences):
            wanted = ", ".join(sorted(allowed.elements()))
            out.append(_error("IllegalIncidence", f"{where} needs the component roles {{{wanted}}}"))
            return out
    elif roles:
        out.append(_error("IllegalIncidence", f"{where} ({type_label(pt.type)}) takes no component role"))
        return out
    if pt.branches not in (1, 2):
        out.append(_error("IllegalIncidence", f"{where}: branches must be 1 or 2"))
    elif pt.branches == 2:
        classes = {census_class(pt.type, inc.role) for inc in pt.incidences}
        if not classes <= {CLASS_C1, CLASS_C2, CLASS_M}:
            out.append(
                _error(
                    "IllegalIncidence",
                    f"{where} ({type_label(pt.type)}) cannot carry two branches of one component",
                )
            )
    return out


def _normal_key(n: int, a: int) -> tuple[int, frozenset]:
    """A cyclic quotient type up to reversal of the chain and to a -> -a."""
    inv = pow(a, -1, n)
    return n, frozenset({a, n - a, inv, n - inv})


def _anchored_chain_types(g: DualGraph, divisor) -> list[tuple[int, int]]:
    out = []
    for cluster in g.clusters():
        anchors = [c for c in divisor if any(g.dot(c, e) for e in cluster)]
        if len(anchors) != 1:
            continue
        try:
            chain_order(g, cluster)
            q = cluster_quotient_type(g, cluster, anchors[0])
        except (NotAChain, AmbiguousAnchor):
            continue
        out.append((q.n, q.a))
    return out


def _check_graph_component(g: GermDescription, comp: GermComponent) -> list[Diagnostic]:
    nd = comp.normalization
    out = []
    if nd.graph_id not in g.graphs:
        return [_error("DanglingReference", f"component {comp.id} refers to missing graph {nd.graph_id!r}")]
    graph = g.graphs[nd.graph_id]
    if not 1 <= len(nd.divisor) <= 2 or len(set(nd.divisor)) != len(nd.divisor):
        out.append(
            _error(
                "IllegalDivisor",
                f"component {comp.id}: C~ must be one or two distinct curves (C~ -> C has degree 2)",
            )
        )
    for curve in nd.divisor:
        if curve not in graph.vertices:
            out.append(_error("DanglingReference", f"component {comp.id}: graph {nd.graph_id} has no curve {curve!r}"))
        elif not graph.vertices[curve].retained:
            out.append(_error("IllegalDivisor", f"component {comp.id}: curve {curve!r} is not retained"))
    if out:
        return out
    for cluster in graph.clusters():
        if not is_negative_definite(graph, cluster):
            out.append(
                _error("NotNegativeDefinite", f"graph {nd.graph_id}: cluster {cluster} is not negative definite")
            )
    if out:
        return out
    # census against graph: slt points should show up as anchored chains
    seen = {_normal_key(n, a) for n, a in _anchored_chain_types(graph, nd.divisor)}
    for pt, _ in g.incidences_on(comp.id):
        if isinstance(pt.type, Slt) and _normal_key(pt.type.n, pt.type.a) not in seen:
            out.append(
                _warning(
                    "UnverifiedCensus",
                    f"point {pt.id} ({type_label(pt.type)}) has no matching chain in graph {nd.graph_id}",
                )
            )
    return out


def validate(g: GermDescription) -> list[Diagnostic]:
    """Structural checks; problems are collected, never raised."""
    out: list[Diagnostic] = []
    ids = Counter(c.id for c in g.components)
    for cid, count in sorted(ids.items()):
        if count > 1:
            out.append(_error("DuplicateId", f"component {cid!r} is declared {count} times"))
    pids = Counter(p.id for p in g.points)
    for pid, count in sorted(pids.items()):
        if count > 1:
            out.append(_error("DuplicateId", f"point {pid!r} is declared {count} times"))
    for comp in g.components:
        if isinstance(comp.genus, bool) or not isinstance(comp.genus, int) or comp.genus < 0:
            out.append(_error("InvalidGenus", f"component {comp.id}: genus must be a nonnegative integer"))
        nd = comp.normalization
        if nd is None:
            out.append(_error("MissingSelfIntersection", f"component {comp.id} has no normalization data"))
        elif isinstance(nd, FromGraph):
            out.extend(_check_graph_component(g, comp))
    component_ids = set(ids)
    for pt in g.points:
        out.extend(_check_point(pt, component_ids))
    return out


def errors_of(diagnostics) -> list[Diagnostic]:
    return [d for d in diagnostics if d.severity == "error"]


def require_valid(g: GermDescription) -> None:
    errs = errors_of(validate(g))
    if errs:
        raise ValidationFailed(errs)


# ---------------------------------------------------------------------------
# intersection numbers of C~


def _graph_data(g: GermDescription, cid: str):
    nd = g.component(cid).normalization
    if not isinstance(nd, FromGraph):
        raise RequiresGraph(f"component {cid} has an asserted self-intersection; K.C~ needs a graph")
    graph = g.graphs[nd.graph_id]
    return graph, {c: 1 for c in nd.divisor}


def ctilde_sq(g: GermDescription, cid: str) -> Fraction:
    nd = g.component(cid).normalization
    if isinstance(nd, AssertedSelfIntersection):
        return Fraction(nd.value)
    graph, divisor = _graph_data(g, cid)
    return self_intersection_contracted(graph, divisor, graph.clusters())


def k_dot_ctilde(g: GermDescription, cid: str) -> Fraction:
    graph, divisor = _graph_data(g, cid)
    return canonical_intersection_contracted(graph, divisor, graph.clusters())


def k_dot_c(g: GermDescription, cid: str) -> Fraction:
    """K_H . C = (K + C~) . C~ / 2, the 2 being the degree of C~ -> C."""
    return (k_dot_ctilde(g, cid) + ctilde_sq(g, cid)) / 2


# ---------------------------------------------------------------------------
# degree of L_C


@dataclass(frozen=True)
class Census:
    p: int = 0
    c1: int = 0
    c2: int = 0
    u3: int = 0
    u4: int = 0
    m: int = 0


@dataclass(frozen=True)
class DegreeReport:
    component: str
    ctilde_sq: Fraction
    census: Census
    alpha_sum: Fraction
    degree_theorem: Fraction
    degree_example_convention: Fraction
    degree_proof_path: Fraction | None
    torsion_summands: tuple[str, ...]

    @property
    def convention_flagged(self) -> bool:
        """The two conventions differ exactly when U3 is nonempty."""
        return self.census.u3 > 0

    def degree(self, convention: str = THEOREM) -> Fraction:
        if convention == THEOREM:
            return self.degree_theorem
        if convention == EXAMPLE:
            return self.degree_example_convention
        raise ValueError(f"unknown convention {convention!r}")


def census(g: GermDescription, cid: str) -> Census:
    counts = Counter(census_class(pt.type, inc.role) for pt, inc in g.incidences_on(cid))
    return Census(
        p=counts[CLASS_PINCH],
        c1=counts[CLASS_C1],
        c2=counts[CLASS_C2],
        u3=counts[CLASS_U3],
        u4=sum(counts[c] for c in U4_CLASSES),
        m=counts[CLASS_M],
    )


def _alpha_sum(g: GermDescription, cid: str) -> Fraction:
    total = Fraction(0)
    for pt, inc in g.incidences_on(cid):
        if census_class(pt.type, inc.role) in (CLASS_U3, *U4_CLASSES):
            total += point_invariants(pt.type, inc.role).alpha
    return total


def degree_L_proof_path(g: GermDescription, cid: str) -> Fraction:
    """d = (C~^2 - sum delta) + sum beta + p + 2c1 + 2c2 + 2c3 + c4, with beta and delta read off graphs."""
    sq = ctilde_sq(g, cid)
    beta = delta = Fraction(0)
    for pt, inc in g.incidences_on(cid):
        b, d = oracle_beta_delta(pt.type, inc.role)
        beta += b
        delta += d
    c = census(g, cid)
    chat_sq = sq - delta
    return chat_sq + beta + c.p + 2 * c.c1 + 2 * c.c2 + 2 * c.u3 + c.u4


def torsion_report(g: GermDescription, cid: str) -> list[str]:
    return sorted({pt.id for pt, _ in g.incidences_on(cid) if isinstance(pt.type, DegCusp4)})


def degree_L(g: GermDescription, cid: str) -> DegreeReport:
    sq = ctilde_sq(g, cid)
    c = census(g, cid)
    alpha = _alpha_sum(g, cid)
    theorem = sq + c.p + 2 * c.c1 + 2 * c.c2 + alpha
    try:
        proof = degree_L_proof_path(g, cid)
    except OracleUnavailable:
        proof = None
    return DegreeReport(
        component=cid,
        ctilde_sq=sq,
        census=c,
        alpha_sum=alpha,
        degree_theorem=theorem,
        degree_example_convention=theorem - c.u3,
        degree_proof_path=proof,
        torsion_summands=tuple(torsion_report(g, cid)),
    )


# ---------------------------------------------------------------------------
# genus of the double cover C' -> C


@dataclass(frozen=True)
class GenusBookkeeping:
    pa_C: int
    pa_Cprime: Fraction
    ram_smooth: int
    nodes: int

    @property
    def consistent(self) -> bool:
        return self.pa_Cprime.denominator == 1


def genus_bookkeeping(g: GermDescription, cid: str) -> GenusBookkeeping:
    """2 p_a(C') - 2 = 2 (2 p_a(C) - 2) + p + 2 (c1 + c2 + m)."""
    pa = g.component(cid).genus
    c = census(g, cid)
    nodes = c.c1 + c.c2 + c.m
    rhs = 2 * (2 * pa - 2) + c.p + 2 * nodes
    return GenusBookkeeping(pa, Fraction(rhs + 2, 2), c.p, nodes)


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class Verdict:
    kind: str  # globally_smoothable | not_smoothable | extremal_neighborhood | inconclusive
    convention: str
    degrees: tuple[tuple[str, Fraction], ...] = ()
    targets: tuple[tuple[str, str], ...] = ()
    witness: str | None = None
    witness_degree: Fraction | None = None
    k_dot_c: tuple[tuple[str, Fraction], ...] = ()
    missing: tuple[str, ...] = ()


GLOBALLY_SMOOTHABLE = "globally_smoothable"
NOT_SMOOTHABLE = "not_smoothable"
EXTREMAL_NEIGHBORHOOD = "extremal_neighborhood"
INCONCLUSIVE = "inconclusive"


def _k_values(g: GermDescription, cids) -> tuple[tuple[str, Fraction], ...] | None:
    out = []
    for cid in cids:
        try:
            out.append((cid, k_dot_c(g, cid)))
        except RequiresGraph:
            return None
    return tuple(out)


def verdict(g: GermDescription, convention: str = THEOREM) -> Verdict:
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    require_valid(g)
    cids = g.component_ids()
    missing = []
    if not g.assumptions.h2_tangent_vanishes:
        missing.append("h2_tangent_vanishes")
    if any(g.component(cid).genus != 0 for cid in cids):
        missing.append("rational_components")
    if missing:
        return Verdict(INCONCLUSIVE, convention, missing=tuple(missing))
    degrees = tuple((cid, degree_L(g, cid).degree(convention)) for cid in cids)
    for cid, d in degrees:
        if d < 0:
            return Verdict(NOT_SMOOTHABLE, convention, degrees, witness=cid, witness_degree=d)
    targets = tuple(
        (pt.id, str(smoothing_target(pt.type))) for pt in sorted(g.points, key=lambda pt: pt.id)
    )
    if g.assumptions.modification_of_isolated_singularity:
        ks = _k_values(g, cids)
        if ks is not None and all(k < 0 for _, k in ks):
            return Verdict(EXTREMAL_NEIGHBORHOOD, convention, degrees, targets, k_dot_c=ks)
    return Verdict(GLOBALLY_SMOOTHABLE, convention, degrees, targets)


__all__ = [
    "Assumptions",
    "AssertedSelfIntersection",
    "Census",
    "DegreeReport",
    "Diagnostic",
    "FromGraph",
    "GenusBookkeeping",
    "GermComponent",
    "GermDescription",
    "Incidence",
    "PointIncidence",
    "Verdict",
    "census",
    "ctilde_sq",
    "degree_L",
    "degree_L_proof_path",
    "genus_bookkeeping",
    "k_dot_c",
    "k_dot_ctilde",
    "torsion_report",
    "validate",
    "verdict",
]
