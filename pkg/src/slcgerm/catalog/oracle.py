"""Recompute point invariants from the extended dual graphs and compare."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from ..dual_graph import pair_intersection_contracted, pullback, self_intersection_contracted
from ..errors import OracleUnavailable, OutOfCatalog
from . import invariants as inv
from .graphs import ResolutionGraph, resolution_graph
from .types import (
    CLASS_M,
    CLASS_U3,
    CLASS_V4,
    CLASS_W4,
    DegCusp4,
    census_class,
    gamma_sq,
    germ_triple,
    is_inf,
    type_label,
    v4_triple,
)


@dataclass(frozen=True)
class GraphNumbers:
    """Intersection numbers read off a resolution graph."""

    hat_sq: dict  # kept curve -> self-intersection on the partial normalization
    hat_dot: dict  # (kept, kept) -> intersection
    c_dot: dict  # kept curve -> C-hat . curve
    gamma: dict  # kept curve -> coefficient in the pullback of C-tilde
    beta: Fraction
    delta: Fraction


def graph_numbers(rg: ResolutionGraph) -> GraphNumbers:
    g, c = rg.graph, rg.curve
    hat_clusters = g.clusters(keep=rg.keep)
    all_clusters = g.clusters()
    hat_sq = {k: self_intersection_contracted(g, k, hat_clusters) for k in rg.keep}
    hat_dot = {}
    for i, u in enumerate(rg.keep):
        for v in rg.keep[i + 1:]:
            hat_dot[(u, v)] = pair_intersection_contracted(g, u, v, hat_clusters)
    c_dot = {k: pair_intersection_contracted(g, c, k, hat_clusters) for k in rg.keep}
    gamma = {}
    for cluster in all_clusters:
        if any(k in cluster for k in rg.keep):
            coeffs = pullback(g, c, cluster) if any(g.dot(c, e) for e in cluster) else {}
            for k in rg.keep:
                if k in cluster:
                    gamma[k] = coeffs.get(k, Fraction(0))
    f0 = {k: 1 for k in rg.keep}
    if rg.keep:
        beta = pair_intersection_contracted(g, f0, f0, hat_clusters) + 2 * pair_intersection_contracted(
            g, c, f0, hat_clusters
        )
    else:
        beta = Fraction(0)
    delta = self_intersection_contracted(g, c, all_clusters) - self_intersection_contracted(g, c, hat_clusters)
    return GraphNumbers(hat_sq, hat_dot, c_dot, gamma, beta, delta)


def cycle_gamma_sq(rg: ResolutionGraph) -> int:
    """Gamma^2 = sum F_i^2 + 2n - 2 over the n exceptional curves of a cycle."""
    g = rg.graph
    ex = g.exceptional()
    return sum(g.vertices[e].self_intersection for e in ex) + 2 * len(ex) - 2


@lru_cache(maxsize=4096)
def oracle_beta_delta(t, role: str | None = None) -> tuple[Fraction, Fraction]:
    """(beta, delta) of a point read off its extended dual graph."""
    cls = census_class(t, role)
    if cls not in (CLASS_U3, CLASS_W4, CLASS_V4, CLASS_M):
        return Fraction(0), Fraction(0)
    try:
        rg = resolution_graph(t, role)
    except OutOfCatalog as exc:
        raise OracleUnavailable(str(exc)) from None
    if rg.unverifiable:
        raise OracleUnavailable(f"{rg.case}: the partial normalization is not a graph computation")
    n = graph_numbers(rg)
    return n.beta, n.delta


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    computed: Fraction
    expected: Fraction
    source: str

    @property
    def agree(self) -> bool:
        return self.computed == self.expected


@dataclass
class OracleReport:
    case: str
    checks: list[Check] = field(default_factory=list)
    unchecked: dict[str, Fraction] = field(default_factory=dict)

    @property
    def disagreements(self) -> list[Check]:
        return [c for c in self.checks if not c.agree]

    @property
    def ok(self) -> bool:
        return not self.disagreements


def verify_point_invariants(t, role: str | None = None) -> OracleReport:
    cls = census_class(t, role)
    if cls not in (CLASS_U3, CLASS_W4, CLASS_V4, CLASS_M):
        raise OracleUnavailable(f"{type_label(t)} has no exceptional curves to check")
    rg = resolution_graph(t, role)
    report = OracleReport(rg.case + (f" [{role}]" if role else ""))
    report.unchecked.update(rg.unverifiable)
    if rg.unverifiable:
        return report
    n = graph_numbers(rg)
    add = report.checks.append
    for curve, value in rg.stated.items():
        add(Check(f"stated {curve}^2", n.hat_sq[curve], value, "stated value"))
    pinv = inv.point_invariants(t, role)
    if t.infinite_count() == 0:
        add(Check("Gamma^2 (cycle)", Fraction(cycle_gamma_sq(rg)), Fraction(gamma_sq(t)), "cycle identity"))

    if cls == CLASS_U3:
        kw = dict(p=t.p, q=t.q)
        add(Check("F^2", n.hat_sq["F"], inv.evaluate_finite(inv.F3_SQ, **kw), "closed form"))
        add(Check("C.F", n.c_dot["F"], inv.evaluate_finite(inv.C_DOT_F3, **kw), "closed form"))
        add(Check("beta3", n.beta, pinv.beta, "closed form"))
        add(Check("delta3", n.delta, pinv.delta, "closed form"))
        add(Check("alpha3 = beta3 - delta3 + 2", n.beta - n.delta + 2, pinv.alpha, "identity"))
        return report

    if cls == CLASS_M:
        add(Check("beta", n.beta, Fraction(0), "no curve survives"))
        add(Check("delta", n.delta, Fraction(0), "no curve survives"))
        add(Check("alpha4 = 1", pinv.alpha, Fraction(1), "closed form"))
        return report

    if cls == CLASS_V4:
        _, q, r = v4_triple(t, role)
        kept = rg.f2 if rg.f2 is not None else rg.f1
        add(Check("F^2", n.hat_sq[kept], inv.evaluate_finite(inv.F2_SQ, q=q, r=r), "closed form"))
        add(Check("beta4'", n.beta, pinv.beta, "closed form"))
        add(Check("delta4'", n.delta, pinv.delta, "closed form"))
        add(Check("alpha4 = beta4' - delta4' + 1", n.beta - n.delta + 1, pinv.alpha, "identity"))
        return report

    p, q, r = germ_triple(t, role)
    kw = dict(p=p, q=q, r=r)
    f1, f2 = rg.f1, rg.f2
    add(Check("F1^2", n.hat_sq[f1], inv.evaluate_finite(inv.F1_SQ, **kw), "closed form"))
    add(Check("F2^2", n.hat_sq[f2], inv.evaluate_finite(inv.F2_SQ, **kw), "closed form"))
    f12 = n.hat_dot.get((f1, f2), n.hat_dot.get((f2, f1)))
    add(Check("F1.F2", f12, inv.evaluate_finite(inv.F1_DOT_F2, **kw), "closed form"))
    add(Check("C.F1", n.c_dot[f1], inv.evaluate_finite(inv.C_DOT_F1, **kw), "closed form"))
    add(Check("C.F2", n.c_dot[f2], inv.evaluate_finite(inv.C_DOT_F2, **kw), "closed form"))
    add(Check("beta4", n.beta, pinv.beta, "closed form"))
    add(Check("delta4", n.delta, pinv.delta, "closed form"))
    add(Check("alpha4 = beta4 - delta4 + 1", n.beta - n.delta + 1, pinv.alpha, "identity"))
    if not any(is_inf(x) for x in (p, q, r)):
        sol = inv.gamma_system_T4(p, q, r)
        add(Check("gamma1", n.gamma[f1], sol.gamma1, "linear system"))
        add(Check("gamma2", n.gamma[f2], sol.gamma2, "linear system"))
        add(Check("delta4 (linear system)", sol.delta4, pinv.delta, "closed form"))
        rows = inv.gamma_system_T4_rederived_coefficients(p, q, r)
        add(Check("delta4 (cleared rows)", inv.solve_gamma_rows(p, q, rows).delta4, pinv.delta, "closed form"))
    return report


@dataclass(frozen=True)
class TypoConfirmation:
    printed_delta4: Fraction
    rederived_delta4: Fraction
    closed_form_delta4: Fraction

    @property
    def confirmed(self) -> bool:
        return self.printed_delta4 != self.closed_form_delta4 and self.rederived_delta4 == self.closed_form_delta4


def confirm_known_typo(p: int = 3, q: int = 3, r: int = 3) -> TypoConfirmation:
    """Compare the printed pullback system with the one assembled from the intersection numbers."""
    closed = inv.point_invariants(DegCusp4(p, q, r)).delta
    return TypoConfirmation(
        inv.gamma_system_T4_printed(p, q, r).delta4,
        inv.gamma_system_T4(p, q, r).delta4,
        closed,
    )


__all__ = [
    "Check",
    "GraphNumbers",
    "OracleReport",
    "TypoConfirmation",
    "confirm_known_typo",
    "cycle_gamma_sq",
    "graph_numbers",
    "oracle_beta_delta",
    "verify_point_invariants",
]
