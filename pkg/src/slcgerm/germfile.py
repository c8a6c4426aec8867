"""The line-oriented germ file format.

    germ "Example"
    assume h2_tangent_vanishes = true
    assume modification = false
    graph G {
      curve C1 self=-6 retained
      curve E1 self=-2
      edge C1 E1
      edge C1 C2 x2
    }
    component C genus=0 graph=G:C1+C2
    component D genus=0 selfint=-5/3
    point P type=cusp4 p=3 q=inf r=4 on=C:p_inf_r,D:r_inf_p
    point Q type=cusp1 on=C branches=2

A component may omit its normalization data and receive it later from a
``selfint <id> = <rational>`` line.  ``#`` starts a comment.
"""
from __future__ import annotations

import shlex

from .catalog.types import (
    ROLES,
    DegCusp1,
    DegCusp2,
    DegCusp3,
    DegCusp4,
    NormalCrossing,
    Pinch,
    Slt,
    parse_extnat,
)
from .dual_graph import DualGraph
from .errors import DomainError, GermParseError, SelfLoopForbidden
from .exact_arith import parse_rational, render
from .germ import (
    AssertedSelfIntersection,
    Assumptions,
    FromGraph,
    GermComponent,
    GermDescription,
    Incidence,
    PointIncidence,
)

TYPE_PARAMS = {
    "nc": (),
    "pinch": (),
    "slt": ("n", "a"),
    "cusp1": (),
    "cusp2": ("n",),
    "cusp3": ("p", "q"),
    "cusp4": ("p", "q", "r"),
}
_CONSTRUCTORS = {
    "nc": NormalCrossing,
    "pinch": Pinch,
    "slt": Slt,
    "cusp1": DegCusp1,
    "cusp2": DegCusp2,
    "cusp3": DegCusp3,
    "cusp4": DegCusp4,
}
_ASSUMPTION_KEYS = {
    "h2_tangent_vanishes": "h2_tangent_vanishes",
    "modification": "modification_of_isolated_singularity",
}


def make_type(kind: str, params: dict):
    """Build a singularity type from its file keyword and string parameters."""
    if kind not in TYPE_PARAMS:
        raise DomainError(f"unknown point type {kind!r}")
    names = TYPE_PARAMS[kind]
    missing = [n for n in names if n not in params]
    extra = sorted(set(params) - set(names))
    if missing:
        raise DomainError(f"type {kind} needs parameter(s) {', '.join(missing)}")
    if extra:
        raise DomainError(f"type {kind} takes no parameter(s) {', '.join(extra)}")
    if kind == "slt":
        values = [int(params[n]) for n in names]
    else:
        values = [parse_extnat(params[n]) for n in names]
    return _CONSTRUCTORS[kind](*values)


def type_params(t) -> list[tuple[str, str]]:
    return [(name, str(getattr(t, name))) for name in TYPE_PARAMS[t.kind]]


def _key_values(tokens, lineno, allowed, flags=()):
    values, seen_flags = {}, set()
    for tok in tokens:
        if "=" not in tok:
            if tok in flags:
                seen_flags.add(tok)
                continue
            raise GermParseError(lineno, f"unexpected token {tok!r}")
        key, _, value = tok.partition("=")
        if key not in allowed:
            raise GermParseError(lineno, f"unknown key {key!r}")
        if key in values:
            raise GermParseError(lineno, f"key {key!r} given twice")
        if value == "":
            raise GermParseError(lineno, f"key {key!r} has no value")
        values[key] = value
    return values, seen_flags


def _parse_bool(text, lineno):
    if text == "true":
        return True
    if text == "false":
        return False
    raise GermParseError(lineno, f"expected true or false, got {text!r}")


def _parse_int(text, lineno, what):
    try:
        return int(text)
    except ValueError:
        raise GermParseError(lineno, f"{what} must be an integer, got {text!r}") from None


class _Parser:
    def __init__(self):
        self.name = None
        self.assumptions = Assumptions()
        self.components: list[GermComponent] = []
        self.points: list[PointIncidence] = []
        self.graphs: dict[str, DualGraph] = {}
        self.graph: tuple[str, DualGraph] | None = None
        self.graph_line = 0

    def line(self, lineno, tokens):
        head, rest = tokens[0], tokens[1:]
        if self.graph is not None:
            return self.graph_line_(lineno, head, rest)
        handler = {
            "germ": self.germ,
            "assume": self.assume,
            "component": self.component,
            "graph": self.open_graph,
            "point": self.point,
            "selfint": self.selfint,
        }.get(head)
        if handler is None:
            raise GermParseError(lineno, f"unknown statement {head!r}")
        handler(lineno, rest)

    def germ(self, lineno, rest):
        if len(rest) != 1:
            raise GermParseError(lineno, 'expected germ "<name>"')
        if self.name is not None:
            raise GermParseError(lineno, "germ name given twice")
        self.name = rest[0]

    def assume(self, lineno, rest):
        text = " ".join(rest).replace(" ", "")
        key, sep, value = text.partition("=")
        if not sep:
            raise GermParseError(lineno, "expected assume <key> = true|false")
        if key not in _ASSUMPTION_KEYS:
            raise GermParseError(lineno, f"unknown assumption {key!r}")
        setattr(self.assumptions, _ASSUMPTION_KEYS[key], _parse_bool(value, lineno))

    def component(self, lineno, rest):
        if not rest:
            raise GermParseError(lineno, "component needs an id")
        cid = rest[0]
        kv, _ = _key_values(rest[1:], lineno, {"genus", "selfint", "graph"})
        if "selfint" in kv and "graph" in kv:
            raise GermParseError(lineno, "give either selfint= or graph=, not both")
        genus = _parse_int(kv.get("genus", "0"), lineno, "genus")
        nd = None
        if "selfint" in kv:
            nd = AssertedSelfIntersection(self._rational(kv["selfint"], lineno))
        elif "graph" in kv:
            gid, sep, divisor = kv["graph"].partition(":")
            curves = tuple(divisor.split("+")) if divisor else ()
            if not sep or not gid or not curves or "" in curves:
                raise GermParseError(lineno, "expected graph=<gid>:<curve>[+<curve>...]")
            nd = FromGraph(gid, curves)
        self.components.append(GermComponent(cid, genus, nd))

    def selfint(self, lineno, rest):
        text = " ".join(rest)
        cid, sep, value = text.partition("=")
        cid = cid.strip()
        if not sep or not cid:
            raise GermParseError(lineno, "expected selfint <component> = <rational>")
        matches = [c for c in self.components if c.id == cid]
        if not matches:
            raise GermParseError(lineno, f"selfint for undeclared component {cid!r}")
        comp = matches[-1]
        if comp.normalization is not None:
            raise GermParseError(lineno, f"component {cid!r} already has normalization data")
        comp.normalization = AssertedSelfIntersection(self._rational(value.strip(), lineno))

    @staticmethod
    def _rational(text, lineno):
        try:
            return parse_rational(text)
        except (ValueError, ZeroDivisionError, DomainError):
            raise GermParseError(lineno, f"not a rational number: {text!r}") from None

    def point(self, lineno, rest):
        if not rest:
            raise GermParseError(lineno, "point needs an id")
        pid = rest[0]
        kv, _ = _key_values(rest[1:], lineno, {"type", "n", "a", "p", "q", "r", "on", "branches"})
        if "type" not in kv or "on" not in kv:
            raise GermParseError(lineno, "point needs type= and on=")
        params = {k: v for k, v in kv.items() if k in ("n", "a", "p", "q", "r")}
        try:
            t = make_type(kv["type"], params)
        except (DomainError, ValueError) as exc:
            raise GermParseError(lineno, str(exc)) from None
        incidences = []
        for item in kv["on"].split(","):
            cid, sep, role = item.partition(":")
            if not cid:
                raise GermParseError(lineno, f"bad incidence {item!r}")
            if sep and role not in ROLES:
                raise GermParseError(lineno, f"unknown role {role!r}")
            incidences.append(Incidence(cid, role if sep else None))
        branches = _parse_int(kv.get("branches", "1"), lineno, "branches")
        self.points.append(PointIncidence(pid, t, tuple(incidences), branches))

    def open_graph(self, lineno, rest):
        if len(rest) != 2 or rest[1] != "{":
            raise GermParseError(lineno, "expected graph <id> {")
        if rest[0] in self.graphs:
            raise GermParseError(lineno, f"graph {rest[0]!r} defined twice")
        self.graph = (rest[0], DualGraph())
        self.graph_line = lineno

    def graph_line_(self, lineno, head, rest):
        gid, g = self.graph
        if head == "}":
            if rest:
                raise GermParseError(lineno, "unexpected text after }")
            self.graphs[gid] = g
            self.graph = None
            return
        if head == "curve":
            if not rest:
                raise GermParseError(lineno, "curve needs an id")
            kv, flags = _key_values(rest[1:], lineno, {"self", "genus"}, flags=("retained",))
            if "self" not in kv:
                raise GermParseError(lineno, "curve needs self=<int>")
            if rest[0] in g.vertices:
                raise GermParseError(lineno, f"curve {rest[0]!r} defined twice")
            g.add_curve(
                rest[0],
                _parse_int(kv["self"], lineno, "self"),
                genus=_parse_int(kv.get("genus", "0"), lineno, "genus"),
                retained="retained" in flags,
            )
            return
        if head == "edge":
            if len(rest) not in (2, 3):
                raise GermParseError(lineno, "expected edge <id> <id> [x<multiplicity>]")
            mult = 1
            if len(rest) == 3:
                if not rest[2].startswith("x"):
                    raise GermParseError(lineno, f"bad multiplicity {rest[2]!r}")
                mult = _parse_int(rest[2][1:], lineno, "multiplicity")
                if mult < 1:
                    raise GermParseError(lineno, "multiplicity must be positive")
            u, v = rest[0], rest[1]
            if u == v:
                raise SelfLoopForbidden(f"line {lineno}: edge {u} {v} is a self-loop")
            for w in (u, v):
                if w not in g.vertices:
                    raise GermParseError(lineno, f"edge mentions undeclared curve {w!r}")
            g.add_edge(u, v, mult)
            return
        raise GermParseError(lineno, f"unknown graph statement {head!r}")

    def finish(self, lineno):
        if self.graph is not None:
            raise GermParseError(self.graph_line, f"graph {self.graph[0]!r} is never closed")
        if self.name is None:
            raise GermParseError(lineno, 'missing germ "<name>" line')
        return GermDescription(self.name, self.components, self.points, self.graphs, self.assumptions)


def parse_germ_file(text: str) -> GermDescription:
    parser = _Parser()
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        try:
            tokens = shlex.split(raw, comments=True)
        except ValueError as exc:
            raise GermParseError(lineno, str(exc)) from None
        if tokens:
            parser.line(lineno, tokens)
    return parser.finish(lineno)


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _bool(flag: bool) -> str:
    return "true" if flag else "false"


def emit_germ_file(g: GermDescription) -> str:
    """The normalized text of a germ; parse(emit(g)) reproduces g."""
    lines = [f"germ {_quote(g.name)}"]
    lines.append(f"assume h2_tangent_vanishes = {_bool(g.assumptions.h2_tangent_vanishes)}")
    lines.append(f"assume modification = {_bool(g.assumptions.modification_of_isolated_singularity)}")
    for gid, graph in g.graphs.items():
        lines.append(f"graph {gid} {{")
        for vid, curve in graph.vertices.items():
            extra = f" genus={curve.genus}" if curve.genus else ""
            flag = " retained" if curve.retained else ""
            lines.append(f"  curve {vid} self={curve.self_intersection}{extra}{flag}")
        for u, v, mult in graph.edges():
            lines.append(f"  edge {u} {v}" + (f" x{mult}" if mult != 1 else ""))
        lines.append("}")
    for comp in g.components:
        nd = comp.normalization
        text = f"component {comp.id} genus={comp.genus}"
        if isinstance(nd, AssertedSelfIntersection):
            text += f" selfint={render(nd.value)}"
        elif isinstance(nd, FromGraph):
            text += f" graph={nd.graph_id}:{'+'.join(nd.divisor)}"
        lines.append(text)
    for pt in g.points:
        parts = [f"point {pt.id}", f"type={pt.type.kind}"]
        parts += [f"{k}={v}" for k, v in type_params(pt.type)]
        parts.append("on=" + ",".join(i.component + (f":{i.role}" if i.role else "") for i in pt.incidences))
        if pt.branches != 1:
            parts.append(f"branches={pt.branches}")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


__all__ = ["emit_germ_file", "make_type", "parse_germ_file", "type_params"]
