"""Acceptance criteria 1-9, exact equality throughout.

Each criterion is computed once by ``outcome(k)``; the pytest functions assert on
it and the terminal summary (see conftest.py) prints one PASS/FAIL line per
criterion.  Run this file directly to get the same lines without pytest.

Expected values are written out from the closed forms below, not read back
from the package.
"""
from __future__ import annotations

import io
import os
import random
import subprocess
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from itertools import permutations
from math import gcd

import pytest

from slcgerm.catalog.graphs import resolution_graph
from slcgerm.catalog.invariants import ALPHA4, F1_SQ, F2_SQ, alpha4, evaluate, gamma_system_T4, gamma_system_T4_printed
from slcgerm.catalog.oracle import graph_numbers
from slcgerm.catalog.types import INF, DegCusp1, DegCusp2, DegCusp3, DegCusp4, NormalCrossing, Pinch, Slt
from slcgerm.cli import corpus_files, run_command
from slcgerm.dual_graph import chain_graph, cluster_quotient_type, different_at_cluster
from slcgerm.exact_arith import ExtRational
from slcgerm.germ import (
    AssertedSelfIntersection,
    GermComponent,
    GermDescription,
    Incidence,
    PointIncidence,
    ctilde_sq,
    degree_L,
    degree_L_proof_path,
    k_dot_c,
    verdict,
)
from slcgerm.germfile import emit_germ_file, parse_germ_file
from slcgerm.hj_quotient import CyclicQuotient, chain_to_type, conjugate_type, discrepancy_vector, hj_expand
from slcgerm.report import parse_machine_block

F = Fraction


@dataclass
class Outcome:
    number: int
    title: str
    failures: list[str] = field(default_factory=list)
    checked: int = 0
    note: str = ""

    def expect(self, label, computed, expected):
        self.checked += 1
        if computed != expected:
            self.failures.append(f"{label}: got {computed}, expected {expected}")

    @property
    def ok(self) -> bool:
        return not self.failures and self.checked > 0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        text = f"criterion {self.number}: {status}  {self.title} ({self.checked} exact checks)"
        if self.failures:
            text += "; first failure: " + self.failures[0]
        if self.note:
            text += "; " + self.note
        return text


def _germ(name):
    return parse_germ_file(corpus_files()[name])


# -- closed forms, transcribed independently of the package ------------------


def e1_sq(p, q, r):
    return -1 - F(1, p - 2) + F(2 * r - 3, 4 * r - 4)


def b1_sq(p, q, r):
    return -1 - F(1, q - 2) + F(2 * r - 3, 4 * r - 4)


def f1_dot_f2(p, q, r):
    return F(1, 4 * r - 4)


def alpha4_closed(p, q, r):
    return F(r * (p + q) - 4, r * p * q - p - q)


def beta4_closed(p, q, r):
    return -1 + F(1, p - 2) + F(1, q - 2)


def delta4_closed(p, q, r):
    return F(1, p - 2) + F(1, q - 2) - alpha4_closed(p, q, r)


def f3_sq(p, q):
    return -1 - F(1, p) - F(1, q)


def delta3_closed(p, q):
    return F((p + q) ** 2, p * q * (p + q + p * q))


def alpha3_closed(p, q):
    return 1 + F(p + q, p * q + p + q)


# -- the criteria --------------------------------------------------------------


def criterion_1() -> Outcome:
    o = Outcome(1, "Example 1 fixture")
    g = _germ("example1.germ")
    o.expect("C~^2", ctilde_sq(g, "C"), -3)
    o.expect("degree_theorem", degree_L(g, "C").degree_theorem, -1)
    o.expect("k_dot_c", k_dot_c(g, "C"), F(1, 6))
    v = verdict(g)
    o.expect("verdict", (v.kind, v.witness, v.witness_degree), ("not_smoothable", "C", -1))
    return o


def criterion_2() -> Outcome:
    o = Outcome(2, "Example 2 fixture")
    g = _germ("example2.germ")
    graph = g.graphs["U"]
    o.expect("C~^2", ctilde_sq(g, "C"), F(-2, 3))
    o.expect("cluster at C1", cluster_quotient_type(graph, ["B1", "B2"], "C1"), CyclicQuotient(9, 5))
    # the 1/n(1,-a) partner of 1/9(1,5)
    o.expect("cluster at C2", cluster_quotient_type(graph, ["A1", "A2", "A3", "A4"], "C2"), CyclicQuotient(9, 9 - 5))
    o.expect("middle cluster", cluster_quotient_type(graph, ["M"], "C1"), CyclicQuotient(3, 1))
    o.expect("clusters", sorted(map(tuple, graph.clusters())), [("A1", "A2", "A3", "A4"), ("B1", "B2"), ("M",)])
    rep = degree_L(g, "C")
    o.expect("degree_example_convention", rep.degree_example_convention, 0)
    o.expect("degree_theorem", rep.degree_theorem, 1)
    o.expect("convention_flagged", rep.convention_flagged, True)
    k = k_dot_c(g, "C")
    o.expect("k_dot_c", k, F(-1, 9))
    o.expect("k_dot_c < 0", k < 0, True)
    o.expect("verdict (example convention)", verdict(g, "example").kind, "extremal_neighborhood")
    return o


def criterion_3() -> Outcome:
    o = Outcome(3, "finite T4 oracle sweep, 3<=p,q<=8, 2<=r<=8")
    for p in range(3, 9):
        for q in range(3, 9):
            for r in range(2, 9):
                t = DegCusp4(p, q, r)
                n = graph_numbers(resolution_graph(t))
                key = f"({p},{q},{r})"
                o.expect(f"E1^2 {key}", n.hat_sq["E1"], e1_sq(p, q, r))
                o.expect(f"B1^2 {key}", n.hat_sq["B1"], b1_sq(p, q, r))
                o.expect(f"F1.F2 {key}", n.hat_dot[("E1", "B1")], f1_dot_f2(p, q, r))
                o.expect(f"C.F1 {key}", n.c_dot["E1"], F(1, p - 2))
                o.expect(f"C.F2 {key}", n.c_dot["B1"], F(1, q - 2))
                o.expect(f"beta4 {key}", n.beta, beta4_closed(p, q, r))
                o.expect(f"graph delta4 {key}", n.delta, delta4_closed(p, q, r))
                o.expect(f"gamma-system delta4 {key}", gamma_system_T4(p, q, r).delta4, delta4_closed(p, q, r))
                o.expect(f"alpha4 identity {key}", alpha4(p, q, r), n.beta - n.delta + 1)
                o.expect(f"alpha4 closed {key}", alpha4(p, q, r), alpha4_closed(p, q, r))
    return o


def criterion_4() -> Outcome:
    o = Outcome(4, "T3 oracle sweep, 1<=p,q<=8")
    for p in range(1, 9):
        for q in range(1, 9):
            n = graph_numbers(resolution_graph(DegCusp3(p, q)))
            key = f"({p},{q})"
            o.expect(f"F^2 {key}", n.hat_sq["F"], f3_sq(p, q))
            o.expect(f"delta3 {key}", n.delta, delta3_closed(p, q))
            o.expect(f"alpha3 identity {key}", alpha3_closed(p, q), n.beta - n.delta + 2)
    return o


PRINTED_CLAIM = F(16, 21)


def criterion_5() -> Outcome:
    o = Outcome(5, "printed pullback system at (3,3,3)")
    closed = delta4_closed(3, 3, 3)
    printed = gamma_system_T4_printed(3, 3, 3).delta4
    rederived = gamma_system_T4(3, 3, 3).delta4
    o.expect("closed-form delta4", closed, F(4, 3))
    o.expect("rederived delta4", rederived, F(4, 3))
    o.expect("printed differs from closed form", printed != closed, True)
    o.expect("printed delta4", printed, PRINTED_CLAIM)
    if o.failures:
        o.note = (
            f"the printed rows 8-16g1+g2=0, 8+g1-16g2=0 give g1=g2=8/15 and delta4={printed}; "
            f"the disagreement with {closed} is confirmed but the stated value {PRINTED_CLAIM} is not reproducible"
        )
    return o


def criterion_6() -> Outcome:
    o = Outcome(6, "HJ suite, n<=60")
    for n in range(2, 61):
        for a in range(1, n):
            if gcd(a, n) != 1:
                continue
            q = CyclicQuotient(n, a)
            chain = hj_expand(q)
            key = f"1/{n}(1,{a})"
            o.expect(f"round trip {key}", chain_to_type(chain), q)
            o.expect(f"reversal {key}", chain_to_type(chain.reversed()), CyclicQuotient(n, pow(a, -1, n)))
            o.expect(f"conjugate involution {key}", conjugate_type(conjugate_type(q)), q)
            o.expect(f"negative definite {key}", chain.intersection_matrix().is_negative_definite(), True)
            o.expect(f"first discrepancy {key}", discrepancy_vector(q)[0], F(a - n + 1, n))
            g = chain_graph(chain.weights)
            o.expect(f"different {key}", different_at_cluster(g, "C", g.exceptional()), 1 - F(1, n))
    return o


def criterion_7() -> Outcome:
    o = Outcome(7, "limit coherence")
    for p in range(3, 12):
        for q in range(3, 12):
            stated = F(-p, 2 * (p - 2))
            o.expect(f"E1^2 as r->inf ({p},{q})", evaluate(F1_SQ, p=p, q=q, r=INF), ExtRational(stated))
            o.expect(f"B1^2 as r->inf ({p},{q})", evaluate(F2_SQ, p=q, q=p, r=INF), ExtRational(stated))
    for r in range(2, 40):
        o.expect(f"alpha4(2,2,{r})", alpha4(2, 2, r), 1)
    o.expect("alpha4(inf,inf,inf)", alpha4(INF, INF, INF), 0)
    grid = [2, 3, 5, 8, INF]
    for p in grid:
        for q in grid:
            for r in grid:
                values = {evaluate(ALPHA4, p, q, r, order) for order in permutations(("p", "q", "r"))}
                o.expect(f"alpha4 order invariance ({p},{q},{r})", len(values), 1)
    return o


def _random_type(rng):
    kind = rng.randrange(7)
    if kind == 0:
        return NormalCrossing()
    if kind == 1:
        return Pinch()
    if kind == 2:
        return DegCusp1()
    if kind == 3:
        return DegCusp2(rng.randint(2, 8))
    if kind == 4:
        return DegCusp3(rng.randint(1, 8), rng.randint(1, 8))
    if kind == 5:
        return DegCusp4(rng.randint(2, 8), rng.randint(2, 8), rng.randint(2, 8))
    n = rng.randint(2, 8)
    return Slt(n, rng.choice([a for a in range(1, n) if gcd(a, n) == 1]))


def random_germ(rng, index):
    types = [_random_type(rng) for _ in range(rng.randint(0, 6))]
    points = [PointIncidence(f"P{k}", t, (Incidence("C"),)) for k, t in enumerate(types)]
    sq = F(rng.randint(-40, 40), rng.randint(1, 9))
    return GermDescription(f"random {index}", [GermComponent("C", 0, AssertedSelfIntersection(sq))], points)


def criterion_8() -> Outcome:
    o = Outcome(8, "proof path equals theorem on 200 random germs")
    rng = random.Random(20260419)
    for i in range(200):
        g = random_germ(rng, i)
        o.expect(f"germ {i}", degree_L_proof_path(g, "C"), degree_L(g, "C").degree_theorem)
    return o


def _run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(argv, out, err)
    return code, out.getvalue()


def _subprocess(argv, seed):
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    proc = subprocess.run(
        [sys.executable, "-m", "slcgerm.cli", *argv], capture_output=True, env=env, check=False
    )
    return proc.returncode, proc.stdout


def criterion_9(tmp_dir) -> Outcome:
    o = Outcome(9, "CLI determinism and corpus round trip")
    for name, text in corpus_files().items():
        path = os.path.join(tmp_dir, name)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        g = parse_germ_file(text)
        emitted = emit_germ_file(g)
        o.expect(f"round trip {name}", parse_germ_file(emitted), g)
        o.expect(f"emit idempotent {name}", emit_germ_file(parse_germ_file(emitted)), emitted)
        for cmd in (["degree", path], ["verdict", path], ["check", path]):
            first, second = _subprocess(cmd, 1), _subprocess(cmd, 2)
            o.expect(f"{' '.join(cmd[:1])} {name} across runs", first, second)
            o.expect(f"{' '.join(cmd[:1])} {name} in-process", _run(cmd)[1].encode(), first[1])
    code1, one = _run(["verify", "--pmax", "8", "--qmax", "8", "--rmax", "8", "--jobs", "1"])
    code8, eight = _run(["verify", "--pmax", "8", "--qmax", "8", "--rmax", "8", "--jobs", "8"])
    o.expect("verify --jobs 1 vs --jobs 8", eight, one)
    o.expect("verify exit code", (code1, code8), (0, 0))
    machine = dict(parse_machine_block(one))
    o.expect("verify disagreements", machine.get("disagreements"), "0")
    o.expect("verify known typo", machine.get("known_typo_confirmed"), "true")
    code, text = _run(["degree", os.path.join(tmp_dir, "example1.germ")])
    o.expect("degree example1 machine line", "degree_theorem = -1" in text.splitlines(), True)
    code, text = _run(["verdict", os.path.join(tmp_dir, "example2.germ"), "--convention=example"])
    lines = text.splitlines()
    o.expect("verdict example2", ("verdict = extremal_neighborhood" in lines, "k_dot_c.C = -1/9" in lines), (True, True))
    return o


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
}

# filled as the tests run; conftest.py prints it in the terminal summary
RESULTS: dict[int, Outcome] = {}


@cache
def outcome(number: int) -> Outcome:
    result = CRITERIA[number]()
    RESULTS[number] = result
    return result


@pytest.mark.parametrize("number", [1, 2, 3, 4, 6, 7, 8])
def test_criterion(number):
    o = outcome(number)
    assert o.ok, o.failures[:5]


def test_criterion_5_disagreement_exists():
    outcome(5)
    printed = gamma_system_T4_printed(3, 3, 3).delta4
    rederived = gamma_system_T4(3, 3, 3).delta4
    assert printed != delta4_closed(3, 3, 3)
    assert rederived == delta4_closed(3, 3, 3) == F(4, 3)


@pytest.mark.xfail(strict=True, reason="the printed coefficients give 16/15 at (3,3,3), not the stated 16/21")
def test_criterion_5_stated_value():
    assert outcome(5).ok


def test_criterion_9(tmp_path):
    o = criterion_9(str(tmp_path))
    RESULTS[9] = o
    assert o.ok, o.failures[:5]


if __name__ == "__main__":
    import tempfile

    lines = [outcome(k).line() for k in CRITERIA]
    with tempfile.TemporaryDirectory() as tmp:
        lines.append(criterion_9(tmp).line())
    print("\n".join(lines))
