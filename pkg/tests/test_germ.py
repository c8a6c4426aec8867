import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from slcgerm.catalog.types import INF, DegCusp1, DegCusp2, DegCusp3, DegCusp4, NormalCrossing, Pinch, Slt, cusp4
from slcgerm.errors import RequiresGraph, ValidationFailed
from slcgerm.germ import (
    AssertedSelfIntersection,
    Assumptions,
    FromGraph,
    GermComponent,
    GermDescription,
    Incidence,
    PointIncidence,
    ctilde_sq,
    degree_L,
    degree_L_proof_path,
    genus_bookkeeping,
    k_dot_c,
    torsion_report,
    validate,
    verdict,
)

F = Fraction


def germ(selfint, *points, h2=True, modification=False, genus=0):
    pts = [PointIncidence(f"P{k}", t, (Incidence("C"),)) for k, t in enumerate(points)]
    return GermDescription(
        "synthetic",
        [GermComponent("C", genus, AssertedSelfIntersection(F(selfint)))],
        pts,
        {},
        Assumptions(h2, modification),
    )


def codes(g):
    return [d.code for d in validate(g) if d.severity == "error"]


def test_example1(example1):
    assert validate(example1) == []
    assert ctilde_sq(example1, "C") == -3
    rep = degree_L(example1, "C")
    assert rep.degree_theorem == -1
    assert rep.degree_proof_path == -1
    assert rep.torsion_summands == ()
    assert k_dot_c(example1, "C") == F(1, 6)
    v = verdict(example1)
    assert (v.kind, v.witness, v.witness_degree) == ("not_smoothable", "C", -1)


def test_example2(example2):
    assert validate(example2) == []
    assert ctilde_sq(example2, "C") == F(-2, 3)
    rep = degree_L(example2, "C")
    assert rep.degree_theorem == 1
    assert rep.degree_example_convention == 0
    assert rep.convention_flagged
    assert rep.degree_proof_path == 1
    assert k_dot_c(example2, "C") == F(-1, 9)
    v = verdict(example2, "example")
    assert v.kind == "extremal_neighborhood"
    assert v.k_dot_c == (("C", F(-1, 9)),)


def test_asserted_pass_through():
    assert ctilde_sq(germ(-5), "C") == -5
    assert degree_L(germ(7, NormalCrossing()), "C").degree_theorem == 7
    with pytest.raises(RequiresGraph):
        k_dot_c(germ(-5), "C")


def test_synthetic_t4_both_paths():
    g = germ(0, DegCusp4(3, 3, 3))
    rep = degree_L(g, "C")
    assert rep.degree_theorem == F(2, 3)
    assert degree_L_proof_path(g, "C") == F(2, 3)
    assert torsion_report(g, "C") == ["P0"]


def test_torsion_sorted():
    g = germ(0, DegCusp4(3, 4, 5), Pinch(), DegCusp4(3, 3, 3), Pinch())
    g.points.reverse()
    assert torsion_report(g, "C") == ["P0", "P2"]


def test_slt_over_counted():
    g = GermDescription(
        "bad",
        [GermComponent("C", 0, AssertedSelfIntersection(F(-1))), GermComponent("D", 0, AssertedSelfIntersection(F(-1)))],
        [PointIncidence("P", Slt(9, 5), (Incidence("C"), Incidence("D")), branches=2)],
    )
    assert "IllegalIncidence" in codes(g)


def test_dangling_graph():
    g = GermDescription("bad", [GermComponent("C", 0, FromGraph("nope", ("C1",)))])
    assert codes(g) == ["DanglingReference"]
    g2 = germ(-1)
    g2.points.append(PointIncidence("Q", Pinch(), (Incidence("Z"),)))
    assert "DanglingReference" in codes(g2)


def test_role_checks():
    g = GermDescription(
        "roles",
        [GermComponent(c, 0, AssertedSelfIntersection(F(-1))) for c in "CD"],
        [PointIncidence("P", cusp4(3, INF, 4), (Incidence("C", "p_inf_r"), Incidence("D", "p_inf_r")))],
    )
    assert "IllegalIncidence" in codes(g)
    g.points[0] = PointIncidence("P", cusp4(3, INF, 4), (Incidence("C", "p_inf_r"), Incidence("D", "r_inf_p")))
    assert codes(g) == []
    c, d = degree_L(g, "C"), degree_L(g, "D")
    # limits in q of (4(3+q)-4)/(12q-3-q) and (3(4+q)-4)/(12q-4-q)
    assert c.alpha_sum == F(4, 11)
    assert d.alpha_sum == F(3, 11)
    assert c.degree_proof_path == c.degree_theorem
    assert d.degree_proof_path is None


def test_genus_bookkeeping():
    lone = genus_bookkeeping(germ(0, Pinch()), "C")
    assert not lone.consistent
    ex1 = genus_bookkeeping(germ(0, DegCusp2(4)), "C")
    assert ex1.pa_Cprime == 0 and ex1.nodes == 1
    two = genus_bookkeeping(germ(0, Pinch(), Pinch(), DegCusp1()), "C")
    assert two.pa_Cprime == 1


def test_verdicts():
    assert verdict(germ(-1, h2=False)).kind == "inconclusive"
    assert verdict(germ(-1, genus=1)).missing == ("rational_components",)
    v = verdict(germ(0, Pinch(), Pinch(), Slt(5, 2)))
    assert v.kind == "globally_smoothable"
    assert dict(v.targets)["P2"] == "cyclic_quotient_3fold 1/5(2,3,1)"
    with pytest.raises(ValidationFailed):
        verdict(GermDescription("bad", [GermComponent("C", 0, FromGraph("nope", ("C1",)))]))


FINITE_TYPES = st.one_of(
    st.just(NormalCrossing()),
    st.just(Pinch()),
    st.just(DegCusp1()),
    st.builds(DegCusp2, st.integers(2, 8)),
    st.builds(DegCusp3, st.integers(1, 8), st.integers(1, 8)),
    st.builds(DegCusp4, st.integers(2, 8), st.integers(2, 8), st.integers(2, 8)),
    st.builds(lambda n, a: Slt(n, a), st.just(7), st.integers(1, 6)),
)


@given(st.fractions(-10, 10, max_denominator=12), st.lists(FINITE_TYPES, max_size=6))
def test_conventions_and_monotonicity(sq, types):
    g = germ(sq, *types)
    rep = degree_L(g, "C")
    assert rep.degree_theorem - rep.degree_example_convention == rep.census.u3
    assert len(rep.torsion_summands) == sum(isinstance(t, DegCusp4) for t in types)
    before = verdict(g).kind
    after = verdict(germ(sq + 1, *types)).kind
    assert not (before == "globally_smoothable" and after == "not_smoothable")


def test_random_census_paths_agree():
    rng = random.Random(1234)
    for _ in range(50):
        types = [rng.choice([Pinch(), DegCusp3(rng.randint(1, 8), rng.randint(1, 8)),
                             DegCusp4(rng.randint(2, 8), rng.randint(2, 8), rng.randint(2, 8))])
                 for _ in range(rng.randint(0, 5))]
        g = germ(F(rng.randint(-30, 30), rng.randint(1, 6)), *types)
        rep = degree_L(g, "C")
        assert rep.degree_proof_path == rep.degree_theorem
