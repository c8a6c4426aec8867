"""Extended dual graphs of the germ curve over each catalogued singularity.

Every builder returns the graph of a smooth surface containing the strict
transform ``C`` of the germ curve (retained) together with the exceptional
curves over the point.  ``keep`` lists the exceptional curves that survive on
the partial normalization; all other exceptional curves are contracted there.
The self-intersection of ``C`` is a placeholder (0): only differences and
intersections local to the point are meaningful.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..dual_graph import DualGraph
from ..errors import OutOfCatalog
from ..hj_quotient import CyclicQuotient, hj_expand
from .types import (
    ROLE_INF_INF_INF,
    ROLE_INF_INF_P,
    ROLE_P_INF_INF,
    ROLE_P_INF_R,
    ROLE_PQ_INF,
    DegCusp1,
    DegCusp2,
    DegCusp3,
    DegCusp4,
    NormalCrossing,
    Pinch,
    Slt,
    germ_triple,
    is_inf,
    legal_roles,
)

CURVE = "C"


@dataclass
class ResolutionGraph:
    case: str
    graph: DualGraph
    curve: str = CURVE
    keep: tuple[str, ...] = ()
    f1: str | None = None
    f2: str | None = None
    stated: dict[str, Fraction] = field(default_factory=dict)
    unverifiable: dict[str, Fraction] = field(default_factory=dict)


def _base(*others: str) -> DualGraph:
    g = DualGraph()
    g.add_curve(CURVE, 0, retained=True)
    for other in others:
        g.add_curve(other, 0, retained=True)
    return g


def _chain(g: DualGraph, prefix: str, count: int, weight: int = 2) -> list[str]:
    """Curves ``prefix1 .. prefix{count}``; the caller links them."""
    return [g.add_curve(f"{prefix}{k}", -weight) for k in range(1, count + 1)]


def _path(g: DualGraph, ids) -> None:
    ids = list(ids)
    for u, v in zip(ids, ids[1:]):
        g.add_edge(u, v)


def _middle(g: DualGraph, r: int, start: str, stop: str, prefix: str = "D") -> list[str]:
    """The chain [3, 2^(r-3), 3] (or [4] when r = 2) named ``start .. stop``, unlinked."""
    if r == 2:
        g.add_curve(start, -4)
        return [start]
    g.add_curve(start, -3)
    inner = _chain(g, prefix, r - 3)
    g.add_curve(stop, -3)
    return [start, *inner, stop]


def _hat_t4(p, r) -> Fraction:
    return Fraction(-1) - Fraction(1, p - 2) + Fraction(2 * r - 3, 4 * r - 4)


# -- T3 ----------------------------------------------------------------------


def _t3(p, q) -> ResolutionGraph:
    if is_inf(p) and not is_inf(q):
        p, q = q, p
    if is_inf(p):
        g = _base("C1", "C2")
        g.add_curve("F", -1)
        g.add_edge("C1", "F")
        g.add_edge("F", "C2")
        g.add_edge(CURVE, "C1")
        g.add_edge(CURVE, "C2")
        return ResolutionGraph("T3_{inf,inf}", g, keep=("F",), f1="F", stated={"F": Fraction(-1)})
    if is_inf(q):
        g = _base("C1")
        a = _chain(g, "A", p - 1)
        g.add_curve("F", -2)
        _path(g, [CURVE, *reversed(a), "F", "C1"])
        return ResolutionGraph(f"T3_{{{p},inf}}", g, keep=("F",), f1="F", stated={"F": -1 - Fraction(1, p)})
    g = _base()
    a = _chain(g, "A", p - 1)
    g.add_curve("F", -3)
    b = _chain(g, "B", q - 1)
    if a or b:
        _path(g, [CURVE, *reversed(a), "F", *b, CURVE])
    else:
        g.add_edge(CURVE, "F", 2)
    stated = {"F": -1 - Fraction(1, p) - Fraction(1, q)}
    return ResolutionGraph(f"T3_{{{p},{q}}}", g, keep=("F",), f1="F", stated=stated)


# -- T4 ----------------------------------------------------------------------


def _t4_finite(p, q, r) -> ResolutionGraph:
    g = _base()
    e = _chain(g, "E", p - 2)
    mid = _middle(g, r, "F1" if r > 2 else "F", "F2")
    b = _chain(g, "B", q - 2)
    ring = [CURVE, *reversed(e), *mid, *b, CURVE]
    if len(ring) == 3:
        g.add_edge(CURVE, mid[0], 2)
    else:
        _path(g, ring)
    keep, stated = [], {}
    if e:
        keep.append("E1")
        stated["E1"] = _hat_t4(p, r)
    if b:
        keep.append("B1")
        stated["B1"] = _hat_t4(q, r)
    return ResolutionGraph(
        f"T4_{{{p},{q},{r}}}", g, keep=tuple(keep), f1="E1" if e else None, f2="B1" if b else None, stated=stated
    )


def _t4_pq_inf(p, q) -> ResolutionGraph:
    g = _base("C1")
    e = _chain(g, "E", p - 2)
    g.add_curve("F1", -2)
    g.add_curve("F2", -2)
    b = _chain(g, "B", q - 2)
    _path(g, [CURVE, *reversed(e), "F1", "C1", "F2", *b, CURVE])
    keep, stated = [], {}
    if e:
        keep.append("E1")
        stated["E1"] = Fraction(-p, 2 * (p - 2))
    if b:
        keep.append("B1")
        stated["B1"] = Fraction(-q, 2 * (q - 2))
    return ResolutionGraph(
        f"T4_{{{p},{q},inf}}", g, keep=tuple(keep), f1="E1" if e else None, f2="B1" if b else None, stated=stated
    )


def _t4_p_inf_r(p, r) -> ResolutionGraph:
    # C plays the curve met at both ends; the blow-up of the point where the
    # last exceptional curve meets C2 produces the (-1)-curve F1.
    g = _base("C2")
    b = _chain(g, "B", p - 2)
    mid = _middle(g, r, "F", f"E{r - 2}", prefix="E")
    g.add_curve("F1", -1)
    _path(g, [CURVE, *reversed(b), *mid, "F1", "C2", CURVE])
    keep, stated = [], {}
    if b:
        keep.append("B1")
        stated["B1"] = _hat_t4(p, r)
    keep.append("F1")
    stated["F1"] = -1 + Fraction(2 * r - 3, 4 * r - 4)
    return ResolutionGraph(
        f"T4_{{{p},inf,{r}}}", g, keep=tuple(keep), f1="B1" if b else None, f2="F1", stated=stated
    )


def _t4_p_inf_inf(p) -> ResolutionGraph:
    g = _base("C2", "C3")
    e = _chain(g, "E", p - 2)
    g.add_curve("F", -2)
    g.add_curve("F1", -2)
    g.add_curve("B", -1)
    _path(g, [CURVE, *reversed(e), "F", "C2", "F1", "B", "C3", CURVE])
    keep, stated = [], {}
    if e:
        keep.append("E1")
        stated["E1"] = Fraction(-p, 2 * (p - 2))
    keep.append("B")
    stated["B"] = Fraction(-1, 2)
    return ResolutionGraph(
        f"T4_{{{p},inf,inf}}", g, keep=tuple(keep), f1="E1" if e else None, f2="B", stated=stated
    )


def _t4_inf_inf_p(p) -> ResolutionGraph:
    # the germ curve is the third branch; it meets no exceptional curve
    g = _base("C1", "C2")
    g.add_curve("B1", -1)
    if p == 2:
        g.add_curve("F", -4)
        mid = ["F"]
    else:
        g.add_curve(f"E{p - 2}", -3)
        inner = [g.add_curve(f"E{k}", -2) for k in range(p - 3, 0, -1)]
        g.add_curve("F", -3)
        mid = [f"E{p - 2}", *inner, "F"]
    g.add_curve("B2", -1)
    _path(g, ["C1", "B1", *mid, "B2", "C2", CURVE, "C1"])
    hat = -1 + Fraction(2 * p - 3, 4 * p - 4)
    return ResolutionGraph(
        f"T4_{{inf,inf,{p}}}", g, keep=("B1", "B2"), f1="B1", f2="B2", stated={"B1": hat, "B2": hat}
    )


def _t4_inf_inf_inf() -> ResolutionGraph:
    g = _base("C1", "C2", "C3")
    _path(g, [CURVE, "C1", "C2", "C3", CURVE])
    half = Fraction(-1, 2)
    return ResolutionGraph("T4_{inf,inf,inf}", g, unverifiable={"E1": half, "E2": half})


# -- the rest -----------------------------------------------------------------


def _two_branches(case: str) -> ResolutionGraph:
    g = _base("C'")
    g.add_edge(CURVE, "C'")
    return ResolutionGraph(case, g)


def _slt(n, a) -> ResolutionGraph:
    g = _base()
    for prefix, b in (("R", a), ("S", n - a)):
        ids = g.add_chain(prefix, list(hj_expand(CyclicQuotient(n, b)).weights))
        g.add_edge(CURVE, ids[0])
    return ResolutionGraph(f"slt(n={n},a={a})", g)


def resolution_graph(t, role: str | None = None) -> ResolutionGraph:
    if isinstance(t, (NormalCrossing, Pinch)):
        return ResolutionGraph(t.kind, _base())
    if isinstance(t, DegCusp1):
        return _two_branches("T1")
    if isinstance(t, DegCusp2):
        return _two_branches(f"T2_{t.n}")
    if isinstance(t, Slt):
        return _slt(t.n, t.a)
    if isinstance(t, DegCusp3):
        return _t3(t.p, t.q)
    if not isinstance(t, DegCusp4):
        raise OutOfCatalog(f"no resolution graph for {t!r}")
    a, b, c = germ_triple(t, role)
    if not legal_roles(t):
        return _t4_finite(a, b, c)
    if role == ROLE_PQ_INF:
        return _t4_pq_inf(a, b)
    if role == ROLE_P_INF_R:
        return _t4_p_inf_r(a, c)
    if role == ROLE_P_INF_INF:
        return _t4_p_inf_inf(a)
    if role == ROLE_INF_INF_P:
        return _t4_inf_inf_p(c)
    if role == ROLE_INF_INF_INF:
        return _t4_inf_inf_inf()
    raise OutOfCatalog(f"no extended dual graph is catalogued for role {role!r} of {t!r}")
