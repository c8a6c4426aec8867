"""Deterministic text reports: a human part, then a ``[machine]`` block of ``key = value`` lines."""
from __future__ import annotations

from .catalog.graphs import ResolutionGraph
from .catalog.oracle import graph_numbers
from .catalog.types import CokernelPresentation, QuotientRing, normal_form, type_label
from .dual_graph import (
    DualGraph,
    chain_graph,
    different_at_cluster,
    intersection_matrix,
    is_negative_definite,
    pullback,
)
from .errors import RequiresGraph
from .exact_arith import render
from .germ import (
    EXAMPLE,
    DegreeReport,
    Diagnostic,
    GermDescription,
    Verdict,
    genus_bookkeeping,
    k_dot_c,
)
from .hj_quotient import CyclicQuotient, conjugate_type, diff_closed_form, discrepancy_vector, hj_expand

MACHINE = "[machine]"


class Report:
    def __init__(self):
        self.human: list[str] = []
        self.machine: list[tuple[str, str]] = []

    def say(self, line: str = "") -> None:
        self.human.append(line)

    def put(self, key: str, value) -> None:
        self.machine.append((key, _value(value)))

    def text(self) -> str:
        lines = list(self.human)
        if lines and lines[-1] != "":
            lines.append("")
        lines.append(MACHINE)
        lines += [f"{k} = {v}" if v != "" else f"{k} =" for k, v in self.machine]
        return "\n".join(lines) + "\n"


def _value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, (list, tuple)):
        return ",".join(_value(x) for x in v)
    if isinstance(v, (int,)) or hasattr(v, "denominator"):
        return render(v)
    return str(v)


def parse_machine_block(text: str) -> list[tuple[str, str]]:
    """The ``key = value`` pairs after the ``[machine]`` header, in order."""
    _, sep, tail = text.partition(MACHINE + "\n")
    if not sep:
        return []
    out = []
    for line in tail.splitlines():
        key, _, value = line.partition("=")
        out.append((key.strip(), value.strip()))
    return out


# ---------------------------------------------------------------------------


def check_report(g: GermDescription, diagnostics: list[Diagnostic]) -> Report:
    r = Report()
    r.say(f"germ {g.name}: {len(g.components)} component(s), {len(g.points)} point(s), {len(g.graphs)} graph(s)")
    for d in diagnostics:
        r.say(str(d))
    errors = sum(d.severity == "error" for d in diagnostics)
    r.say("ok" if not errors else "invalid")
    r.put("germ", g.name)
    r.put("errors", errors)
    r.put("warnings", len(diagnostics) - errors)
    for k, d in enumerate(diagnostics, start=1):
        r.put(f"diagnostic.{k}", f"{d.severity} {d.code}")
    return r


def _census_text(c) -> str:
    return f"p={c.p} c1={c.c1} c2={c.c2} U3={c.u3} U4={c.u4}"


def degree_report(g: GermDescription, reports: list[DegreeReport], convention: str) -> Report:
    r = Report()
    r.say(f"germ {g.name}, convention {convention}")
    r.put("germ", g.name)
    r.put("convention", convention)
    for rep in reports:
        c = rep.census
        gb = genus_bookkeeping(g, rep.component)
        r.say(f"component {rep.component}")
        r.say(f"  C~^2 = {render(rep.ctilde_sq)}")
        r.say(f"  census: {_census_text(c)}")
        r.say(f"  sum of alpha over U3 and U4 = {render(rep.alpha_sum)}")
        r.say(f"  deg L_C = {render(rep.degree_theorem)}")
        if rep.convention_flagged:
            r.say(
                f"  deg L_C with alpha3 - 1 in place of alpha3 = {render(rep.degree_example_convention)}"
                " (differs: U3 is nonempty)"
            )
        if rep.degree_proof_path is None:
            r.say("  proof path: no graph oracle for some point")
        else:
            agree = "agrees" if rep.degree_proof_path == rep.degree_theorem else "DISAGREES"
            r.say(f"  proof path = {render(rep.degree_proof_path)} ({agree})")
        r.say(f"  torsion summands at: {', '.join(rep.torsion_summands) or 'none'}")
        r.say(f"  p_a(C') = {render(gb.pa_Cprime)}" + ("" if gb.consistent else " (census is parity-inconsistent)"))
        r.put("component", rep.component)
        r.put("ctilde_sq", rep.ctilde_sq)
        for key in ("p", "c1", "c2", "u3", "u4", "m"):
            r.put(f"census.{key}", getattr(c, key))
        r.put("alpha_sum", rep.alpha_sum)
        r.put("degree_theorem", rep.degree_theorem)
        r.put("degree_example_convention", rep.degree_example_convention)
        r.put("convention_flagged", rep.convention_flagged)
        r.put("degree_proof_path", rep.degree_proof_path)
        r.put("degree", rep.degree(convention))
        r.put("torsion_summands", list(rep.torsion_summands))
        r.put("pa_Cprime", gb.pa_Cprime)
        r.put("genus_consistent", gb.consistent)
    return r


def verdict_report(g: GermDescription, v: Verdict) -> Report:
    r = Report()
    r.say(f"germ {g.name}, convention {v.convention}")
    r.put("germ", g.name)
    r.put("convention", v.convention)
    r.put("verdict", v.kind)
    if v.kind == "inconclusive":
        r.say(f"inconclusive: missing {', '.join(v.missing)}")
        r.put("missing", list(v.missing))
        return r
    for cid, d in v.degrees:
        r.say(f"deg L_{cid} = {render(d)}")
        r.put(f"degree.{cid}", d)
    for cid in g.component_ids():
        try:
            k = k_dot_c(g, cid)
        except RequiresGraph:
            continue
        r.say(f"K_H.{cid} = {render(k)}")
        r.put(f"k_dot_c.{cid}", k)
    if v.kind == "not_smoothable":
        r.say(f"not globally smoothable: deg L_{v.witness} = {render(v.witness_degree)} < 0")
        r.put("witness", v.witness)
        r.put("witness_degree", v.witness_degree)
        return r
    if v.kind == "extremal_neighborhood":
        r.say("globally smoothable; K_H.C < 0 on every component, so the smoothing is an extremal neighborhood")
    else:
        r.say("globally smoothable")
    for pid, target in v.targets:
        r.say(f"  {pid} smooths to {target}")
        r.put(f"target.{pid}", target)
    if v.convention == EXAMPLE:
        r.say("note: degrees use alpha3 - 1 in place of alpha3")
    return r


def hj_report(n: int, a: int) -> Report:
    q = CyclicQuotient(n, a)
    chain = hj_expand(q)
    disc = discrepancy_vector(q)
    g = chain_graph(chain.weights)
    diff = different_at_cluster(g, "C", g.exceptional())
    r = Report()
    r.say(f"{q}: chain {chain}")
    r.say(f"discrepancies: {' '.join(render(d) for d in disc)}")
    r.say(f"conjugate: {conjugate_type(q)}")
    r.say(f"Diff at FC_1: {render(diff)} (closed form {render(diff_closed_form(n))})")
    r.put("type", str(q))
    r.put("chain", str(chain))
    r.put("discrepancies", disc)
    r.put("conjugate", str(conjugate_type(q)))
    r.put("diff", diff)
    r.put("diff_closed_form", diff_closed_form(n))
    return r


def _graph_lines(g: DualGraph) -> list[str]:
    out = []
    for vid, c in g.vertices.items():
        out.append(f"  curve {vid} self={c.self_intersection}" + (" retained" if c.retained else ""))
    for u, v, m in g.edges():
        out.append(f"  edge {u} {v}" + (f" x{m}" if m != 1 else ""))
    return out


def cusp_graph_report(t, role, rg: ResolutionGraph) -> Report:
    r = Report()
    nf = normal_form(t, role)
    r.say(f"{type_label(t)}" + (f" as {role}" if role else "") + f": {nf.equation}" + (f", {nf.curve}" if nf.curve else ""))
    r.say(f"graph {rg.case}:")
    for line in _graph_lines(rg.graph):
        r.say(line)
    r.put("case", rg.case)
    r.put("role", role)
    r.put("keep", list(rg.keep))
    for curve, value in rg.stated.items():
        r.say(f"stated: {curve}^ squared = {render(value)}")
        r.put(f"stated.{curve}_sq", value)
    for curve, value in rg.unverifiable.items():
        r.say(f"stated (not a graph computation): {curve}^ squared = {render(value)}")
        r.put(f"unverifiable.{curve}_sq", value)
    if not rg.unverifiable and rg.keep:
        nums = graph_numbers(rg)
        for curve in rg.keep:
            r.say(f"computed: {curve}^ squared = {render(nums.hat_sq[curve])}, C^.{curve}^ = {render(nums.c_dot[curve])}")
            r.put(f"computed.{curve}_sq", nums.hat_sq[curve])
            r.put(f"computed.C_dot_{curve}", nums.c_dot[curve])
        r.put("beta", nums.beta)
        r.put("delta", nums.delta)
    return r


def t1_report(t, presentation) -> Report:
    r = Report()
    r.say(f"T^1 of {type_label(t)}")
    r.put("type", type_label(t))
    if isinstance(presentation, QuotientRing):
        r.say("O / (" + ", ".join(presentation.generators) + ")")
        r.put("shape", "quotient_ring")
        r.put("generators", list(presentation.generators))
    else:
        assert isinstance(presentation, CokernelPresentation)
        r.say("cokernel of the relations:")
        r.put("shape", "cokernel")
        for k, (a, b) in enumerate(presentation.relations, start=1):
            r.say(f"  ({a}, {b})")
            r.put(f"relation.{k}", f"({a}, {b})")
    return r


def graph_report(gid: str, g: DualGraph, pullbacks: list[str]) -> Report:
    r = Report()
    r.say(f"graph {gid}")
    r.put("graph", gid)
    for k, cluster in enumerate(g.clusters(), start=1):
        m = intersection_matrix(g, cluster)
        nd = is_negative_definite(g, cluster)
        r.say(f"cluster {k}: {' '.join(cluster)} ({'negative definite' if nd else 'NOT negative definite'})")
        for row in m.rows:
            r.say("  [" + " ".join(render(x) for x in row) + "]")
        r.put(f"cluster.{k}", cluster)
        r.put(f"cluster.{k}.negative_definite", nd)
        for curve in pullbacks:
            if not any(g.dot(curve, e) for e in cluster):
                continue
            if not nd:
                continue
            coeffs = pullback(g, curve, cluster)
            r.say(f"  pullback of {curve}: " + " ".join(f"{e}:{render(coeffs[e])}" for e in cluster))
            for e in cluster:
                r.put(f"pullback.{curve}.{e}", coeffs[e])
    return r


def sweep_report(result) -> Report:
    r = Report()
    dis = result.disagreements
    r.say(f"{len(result.results)} cases, {result.checks} checks, {len(dis)} disagreement(s)")
    for label, c in dis:
        r.say(f"  {label}: {c.name} graph={render(c.computed)} closed={render(c.expected)} ({c.source})")
    r.say(
        "printed pullback system at (3,3,3): delta4 = "
        f"{render(result.printed_delta4)}; rederived: {render(result.rederived_delta4)}"
    )
    r.put("cases", len(result.results))
    r.put("checks", result.checks)
    r.put("disagreements", len(dis))
    for k, (label, c) in enumerate(dis, start=1):
        r.put(f"disagreement.{k}", f"{label} | {c.name} | {render(c.computed)} | {render(c.expected)}")
    r.put("printed_delta4", result.printed_delta4)
    r.put("rederived_delta4", result.rederived_delta4)
    r.put("known_typo_confirmed", result.known_typo_confirmed)
    return r


__all__ = [
    "MACHINE",
    "Report",
    "check_report",
    "cusp_graph_report",
    "degree_report",
    "graph_report",
    "hj_report",
    "parse_machine_block",
    "sweep_report",
    "t1_report",
    "verdict_report",
]
