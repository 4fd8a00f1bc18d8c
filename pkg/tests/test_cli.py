from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from setfeat.cli import main
from setfeat.constraints import Containment
from setfeat.semantics import Model, satisfies
from setfeat.syntax import load


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_check_clash(corpus):
    assert run("check", str(corpus / "clash_atoms.term")) == (1, "INCONSISTENT clash=1 var=x\n", "")


def test_check_consistent(corpus):
    assert run("check", str(corpus / "feat_atom.term")) == (0, "CONSISTENT\n", "")


def test_check_is_deterministic(corpus):
    path = str(corpus / "subcat.term")
    assert run("check", path) == run("check", path)


def test_check_corpus(corpus):
    code, out, _ = run("check", str(corpus / "subcat.term"))
    assert code == 1
    assert out.splitlines() == [
        "subcat_principle: CONSISTENT",
        "subcat_principle_n: CONSISTENT",
        "subcat_shared: INCONSISTENT clash=5 var=x",
        "subcat_distinct: CONSISTENT",
    ]
    assert run("check", str(corpus / "subcat.term"), "--clause", "subcat_principle")[0] == 0


def test_sat_encode_check():
    assert run("sat-encode", "--check", "(a \\/ ~a)") == (0, "solver=CONSISTENT sat=TRUE AGREE\n", "")
    assert run("sat-encode", "--check", "a /\\ ~a") == (0, "solver=INCONSISTENT sat=FALSE AGREE\n", "")
    code, out, _ = run("sat-encode", "--check", "--scheme", "direct", "a \\/ ~a")
    assert (code, out) == (1, "solver=INCONSISTENT sat=TRUE DISAGREE\n")


def test_sat_encode_dimacs(tmp_path):
    path = tmp_path / "f.cnf"
    path.write_text("p cnf 2 2\n1 2 0\n-1 0\n")
    assert run("sat-encode", "--check", "--dimacs", str(path))[1] == "solver=CONSISTENT sat=TRUE AGREE\n"
    code, out, _ = run("sat-encode", "--dimacs", str(path))
    assert code == 0 and out.startswith("(")


def test_model_golden(corpus, tmp_path):
    target = tmp_path / "m.json"
    code, out, _ = run("model", str(corpus / "feat_atom.term"), "-o", str(target))
    assert (code, out) == (0, "CONSISTENT\n")
    golden = (corpus / "feat_atom.model.json").read_text()
    assert target.read_text() == golden
    m = Model.from_json(json.loads(golden))
    assert satisfies(m, [Containment("x", load(corpus / "feat_atom.term"))])


def test_model_of_inconsistent_term(corpus):
    assert run("model", str(corpus / "clash_atoms.term")) == (1, "INCONSISTENT clash=1 var=x\n", "")


def test_model_needs_a_clause(corpus):
    code, _, err = run("model", str(corpus / "subcat.term"))
    assert code == 2 and "--clause" in err


def test_trace(corpus):
    code, out, _ = run("trace", str(corpus / "clash_atoms.term"))
    assert (code, out) == (1, "DConj @ x\nclose clash=1 var=x\nINCONSISTENT clash=1 var=x\n")


def test_check_with_trace_flag(corpus):
    code, out, _ = run("check", "--trace", str(corpus / "clash_atoms.term"))
    assert out.splitlines()[0] == "INCONSISTENT clash=1 var=x"
    assert "  DConj @ x" in out.splitlines()


def test_translate_fol(corpus, tmp_path):
    target = tmp_path / "out.p"
    assert run("translate-fol", str(corpus / "feat_atom.term"), "-o", str(target))[0] == 0
    text = target.read_text()
    assert "fof(tr_1, hypothesis, '$n1' = a)." in text
    assert "fof(ax_1, axiom, ![Y]: ~f(a, Y))." in text


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["check"],
    ["check", "/nonexistent/file.term"],
    ["sat-encode"],
    ["sat-encode", "a /\\"],
    ["check", "--max-steps", "0", "x.term"],
])
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_parse_error_exit(tmp_path):
    path = tmp_path / "bad.term"
    path.write_text("f: {a,")
    code, out, err = run("check", str(path))
    assert code == 2 and out == "" and "bad.term:1:" in err


def test_step_budget_exit(corpus):
    code, _, err = run("check", "--max-steps", "2", str(corpus / "subcat.term"))
    assert code == 3 and "undecided" in err


def test_seed_and_root_flags(corpus):
    path = str(corpus / "clash_atoms.term")
    assert run("check", "--seed", "7", "--root", "r", path)[1] == "INCONSISTENT clash=1 var=r\n"


def test_module_entry_point(corpus):
    proc = subprocess.run([sys.executable, "-m", "setfeat.cli", "check", str(corpus / "clash_atoms.term")],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert proc.stdout == "INCONSISTENT clash=1 var=x\n"
