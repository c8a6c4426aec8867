import io

import pytest

from slcgerm.cli import EXIT_DISAGREEMENT, corpus_files, run_command
from slcgerm.report import parse_machine_block


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def machine(text):
    return dict(parse_machine_block(text))


@pytest.fixture
def corpus(tmp_path):
    code, out, _ = run("examples", "--out", str(tmp_path))
    assert code == 0
    assert out.count("wrote ") == len(corpus_files())
    return tmp_path


def test_degree_example1(corpus):
    code, out, _ = run("degree", str(corpus / "example1.germ"))
    assert code == 0
    m = machine(out)
    assert m["degree_theorem"] == "-1"
    assert m["ctilde_sq"] == "-3"
    assert m["census.p"] == "0" and m["census.c1"] == "1"


def test_degree_example2_conventions(corpus):
    _, theorem, _ = run("degree", str(corpus / "example2.germ"))
    _, example, _ = run("degree", str(corpus / "example2.germ"), "--convention=example")
    assert machine(theorem)["degree"] == "1"
    assert machine(example)["degree"] == "0"
    assert machine(example)["convention_flagged"] == "true"
    assert "alpha3 - 1" in theorem


def test_verdicts(corpus):
    code, out, _ = run("verdict", str(corpus / "example2.germ"), "--convention=example")
    m = machine(out)
    assert code == 0
    assert m["verdict"] == "extremal_neighborhood"
    assert m["k_dot_c.C"] == "-1/9"
    _, out, _ = run("verdict", str(corpus / "example1.germ"))
    assert machine(out)["verdict"] == "not_smoothable"
    assert machine(out)["witness"] == "C"


def test_multi_component_report(corpus):
    _, out, _ = run("degree", str(corpus / "roles.germ"))
    pairs = parse_machine_block(out)
    assert [v for k, v in pairs if k == "component"] == ["C", "D"]
    assert [v for k, v in pairs if k == "degree"] == ["-7/11", "-46/33"]
    _, out, _ = run("degree", str(corpus / "roles.germ"), "--component", "D")
    assert [v for k, v in parse_machine_block(out) if k == "component"] == ["D"]
    code, _, err = run("degree", str(corpus / "roles.germ"), "--component", "Z")
    assert code == 1 and "no component" in err


def test_hj():
    code, out, _ = run("hj", "9", "5")
    m = machine(out)
    assert code == 0
    assert m["chain"] == "[2,5]"
    assert m["discrepancies"] == "-1/3,-2/3"
    assert m["diff"] == m["diff_closed_form"] == "8/9"
    assert run("hj", "9", "3")[0] == 1


def test_cusp_graph_and_t1():
    code, out, _ = run("cusp-graph", "cusp4", "3", "3", "3")
    m = machine(out)
    assert code == 0
    assert m["computed.E1_sq"] == m["stated.E1_sq"] == "-13/8"
    assert m["delta"] == "4/3"
    code, out, _ = run("cusp-graph", "cusp4", "3", "3", "3", "--dot")
    assert code == 0 and out.startswith("graph ")
    assert run("cusp-graph", "cusp4", "3", "inf", "4")[0] == 64
    assert run("cusp-graph", "cusp4", "3", "inf", "4", "--role", "p_inf_r")[0] == 0
    code, out, _ = run("t1", "cusp3", "p=2", "q=3")
    assert machine(out)["generators"] == "2*x-y*z,3*y^2-x*z,x*y"


def test_graph_pullback(corpus):
    code, out, _ = run("graph", str(corpus / "example2.germ"), "--pullback", "C1")
    m = machine(out)
    assert code == 0
    assert (m["pullback.C1.B1"], m["pullback.C1.B2"], m["pullback.C1.M"]) == ("5/9", "1/9", "1/3")


def test_check_reports_errors(tmp_path):
    bad = tmp_path / "bad.germ"
    bad.write_text('germ "bad"\ncomponent C genus=0 graph=G:C1\n', encoding="utf-8")
    code, out, _ = run("check", str(bad))
    assert code == 1
    assert machine(out)["diagnostic.1"] == "error DanglingReference"


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["nope"],
        ["hj", "9"],
        ["degree", "x.germ", "--convention=other"],
        ["cusp-graph", "cusp9"],
        ["verify", "--pmax", "2", "--qmax", "3", "--rmax", "3"],
    ],
)
def test_usage_errors(argv):
    code, _, err = run(*argv)
    assert code == 64
    assert err


def test_domain_errors(tmp_path):
    assert run("degree", str(tmp_path / "missing.germ"))[0] == 1
    loop = tmp_path / "loop.germ"
    loop.write_text('germ "x"\ngraph G {\n  curve a self=-2\n  edge a a\n}\n', encoding="utf-8")
    code, _, err = run("check", str(loop))
    assert code == 1 and "line 4" in err


def test_small_sweep_is_deterministic():
    one = run("verify", "--pmax", "4", "--qmax", "4", "--rmax", "3", "--jobs", "1")
    four = run("verify", "--pmax", "4", "--qmax", "4", "--rmax", "3", "--jobs", "4")
    assert one == four
    m = machine(one[1])
    assert one[0] == 0 and m["disagreements"] == "0"
    assert m["printed_delta4"] == "16/15" and m["rederived_delta4"] == "4/3"
    assert EXIT_DISAGREEMENT == 2


def test_disagreement_exit_code(monkeypatch):
    from fractions import Fraction

    import slcgerm.cli as cli
    from slcgerm.catalog.oracle import Check
    from slcgerm.sweep import CaseResult, SweepCase, SweepResult

    bad = Check("F1^2", Fraction(-1), Fraction(-2), "closed form")
    fake = SweepResult(
        (CaseResult(SweepCase("T4 W4", (3, 3, 3)), "T4_{3,3,3}", 1, (bad,)),),
        Fraction(16, 15),
        Fraction(4, 3),
        True,
    )
    monkeypatch.setattr(cli, "run_sweep", lambda *a, **k: fake)
    code, out, _ = run("verify", "--pmax", "3", "--qmax", "3", "--rmax", "3")
    assert code == 2
    assert machine(out)["disagreement.1"] == "T4_{3,3,3} | F1^2 | -1 | -2"
