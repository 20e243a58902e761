import json
import os
import random
import subprocess
import sys

import pytest

from conftest import QUIVERS
from necklace import cli, hopf
from necklace.generate import random_element
from necklace.report import CheckResult
from necklace.suites import SUITES, run_suite

LOOP1 = str(QUIVERS / "loop1.qv")
LOOP2 = str(QUIVERS / "loop2.qv")
A2 = str(QUIVERS / "a2loop.qv")


@pytest.fixture(autouse=True)
def single_worker(monkeypatch):
    monkeypatch.delenv("NECKLACE_WORKERS", raising=False)


def run(capsys, *argv):
    status = cli.main(list(argv))
    out = capsys.readouterr()
    return status, out.out.rstrip("\n"), out.err


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["star", "-q", LOOP1, "(e)", "(e*)"], "(e)&(e*) + 1/2 h @v"),
        (["star", "-q", LOOP1, "(e*)", "(e)"], "(e)&(e*) - 1/2 h @v"),
        (["antipode", "-q", LOOP1, "(e)&(e*)"], "(e)&(e*)"),
        (["antipode", "-q", LOOP1, "(e) + @v"], "-@v - (e)"),
        (["counit", "-q", LOOP1, "3 + h (e e*)"], "3"),
        (["coprod", "-q", LOOP1, "(e)"], "1 ⊗ (e) + (e) ⊗ 1"),
        (["bracket", "-q", LOOP1, "(e)", "(e*)"], "@v"),
        (["cobracket", "-q", A2, "(a a*)"], "@1 ⊗ @2 - @2 ⊗ @1"),
        (["phiw", "-q", LOOP1, "(e e*)"], "1/2 (e,1)(e*,2) + 1/2 (e,2)(e*,1)"),
        (["trace", "-q", LOOP1, "(e)", "--dims", "2"], "M[e][1][1] + M[e][2][2]"),
        (["trace", "-q", A2, "@2", "--dims", "1=1,2=3"], "3"),
        (["rho", "-q", LOOP1, "(e e*)", "--dims", "1"], "-1/2 h - h M[e][1][1]*d/dM[e][1][1]"),
        (["rho", "-q", LOOP1, "(e,2)(e*,1)", "--dims", "1"], "-h - h M[e][1][1]*d/dM[e][1][1]"),
    ],
)
def test_operations(capsys, argv, expected):
    status, out, _ = run(capsys, *argv)
    assert (status, out) == (0, expected)


def test_check_example(capsys):
    status, out, _ = run(capsys, "check", "assoc", "-q", LOOP1, "--trials", "100", "--seed", "7", "--max-edges", "6")
    assert status == 0
    assert out == "assoc: ok, 100 cases (random, max-edges 6, seed 7)"


@pytest.mark.parametrize("suite", SUITES)
def test_every_suite_runs(capsys, suite):
    status, out, _ = run(capsys, "check", suite, "-q", A2, "--trials", "5", "--max-edges", "3")
    assert status == 0 and out.startswith(f"{suite}: ok, 5 cases")


def test_exhaustive_flag(capsys):
    status, out, _ = run(capsys, "check", "counit", "-q", LOOP1, "--exhaustive", "--max-edges", "3")
    assert status == 0 and "exhaustive" in out


def test_counterexample_exit_1(capsys, monkeypatch):
    calls = []

    def broken(p, r, s):
        calls.append(p)
        return CheckResult("associativity", len(calls) != 3, 1, "lhs = 1\nrhs = 2")

    monkeypatch.setattr(hopf, "check_associativity", broken)
    status, out, _ = run(capsys, "check", "assoc", "-q", LOOP1, "--trials", "10")
    assert status == 1
    assert out.startswith("assoc: 1 of 10 cases FAILED")
    assert "case 2" in out and "rhs = 2" in out
    calls.clear()
    status, out, _ = run(capsys, "check", "assoc", "-q", LOOP1, "--trials", "10", "--format", "json")
    data = json.loads(out)
    assert status == 1 and data["failures"] == 1 and data["first_failure"]["case"] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["star", "-q", LOOP1, "(e", "(e*)"],
        ["star", "-q", LOOP1, "(f)", "(e*)"],
        ["antipode", "-q", A2, "(a b)"],
        ["trace", "-q", LOOP1, "(e)", "--dims", "1,2"],
        ["trace", "-q", LOOP1, "(e)", "--dims", "x"],
        ["trace", "-q", A2, "(b)", "--dims", "w=1"],
        ["rho", "-q", LOOP1, "(e,1)(e*,1)", "--dims", "1"],
        ["bracket", "-q", LOOP1, "(e)&(e)", "(e*)"],
        ["star", "-q", "/nonexistent.qv", "(e)", "(e)"],
        ["check", "assoc", "-q", LOOP1, "--trials", "-1"],
    ],
)
def test_bad_input_exit_2(capsys, argv):
    status, out, err = run(capsys, *argv)
    assert status == 2 and out == "" and err.startswith("error: ")


def test_bad_quiver_file(capsys, tmp_path):
    bad = tmp_path / "bad.qv"
    bad.write_text("vertices: v\nedges: e: v -> w\n")
    status, _, err = run(capsys, "star", "-q", str(bad), "(e)", "(e)")
    assert status == 2 and "line 2" in err


def test_json_outputs(capsys):
    status, out, _ = run(capsys, "star", "-q", LOOP1, "(e)", "(e*)", "--format", "json")
    assert json.loads(out) == [
        {"coefficient": {"1": "1/2"}, "monomial": "@v"},
        {"coefficient": {"0": "1"}, "monomial": "(e)&(e*)"},
    ]
    _, out, _ = run(capsys, "coprod", "-q", LOOP1, "(e)", "--format", "json")
    assert {tuple(t["tensor"]) for t in json.loads(out)} == {("1", "(e)"), ("(e)", "1")}
    _, out, _ = run(capsys, "counit", "-q", LOOP1, "h", "--format", "json")
    assert json.loads(out) == {"coefficient": {"1": "1"}}
    _, out, _ = run(capsys, "rho", "-q", LOOP1, "(e,1)(e*,2)", "--dims", "1", "--format", "json")
    assert json.loads(out)[0]["derivations"] == [["d/dM[e][1][1]", 1]]
    _, out, _ = run(capsys, "check", "counit", "-q", LOOP1, "--trials", "3", "--format", "json")
    assert json.loads(out)["failures"] == 0


def test_random_element_bounds(any_quiver):
    assert str(random_element(1, any_quiver)) == str(random_element(1, any_quiver))
    for seed in range(40):
        x = random_element(seed, any_quiver, max_edges=0)
        assert all(all(n[0] < 0 for n in m) for m, _ in x.items())
        y = random_element(random.Random(seed), any_quiver, max_edges=4)
        for m, c in y.items():
            assert sum(len(n) for n in m if n[0] >= 0) <= 4
            assert c.degree <= 2
            assert all(abs(q.numerator) <= 8 and q.denominator <= 8 for _, q in c.items())


def test_suite_independent_of_workers(a2loop):
    one = run_suite(a2loop, "bialgebra", trials=12, seed=3, max_edges=4, workers=1)
    four = run_suite(a2loop, "bialgebra", trials=12, seed=3, max_edges=4, workers=4)
    assert one == four


COMMANDS = [
    ["star", "-q", LOOP2, "(e f e*) + h (f)", "(e* f*)&@v"],
    ["coprod", "-q", A2, "(a a* b)&(b*)"],
    ["phiw", "-q", LOOP1, "(e e e*)"],
    ["rho", "-q", A2, "(a* b a)", "--dims", "2,1"],
    ["check", "bialgebra", "-q", LOOP2, "--trials", "8", "--seed", "5"],
    ["check", "transport", "-q", A2, "--trials", "6", "--max-edges", "3", "--format", "json"],
]


def _cli(argv, workers):
    env = dict(os.environ, NECKLACE_WORKERS=str(workers))
    proc = subprocess.run([sys.executable, "-m", "necklace.cli", *argv], capture_output=True, env=env, check=False)
    return proc.returncode, proc.stdout


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: a[0] + "-" + a[1])
def test_byte_identical(argv):
    outs = {_cli(argv, 1) for _ in range(3)} | {_cli(argv, 4)}
    assert len(outs) == 1
    assert next(iter(outs))[0] == 0
