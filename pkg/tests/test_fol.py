from __future__ import annotations

import pytest

from setfeat import fol
from setfeat.fol import FAll, FEq, FImp, FNot, FRel, Sym
from setfeat.syntax import parse
from setfeat.terms import desugar


def tr(text, root="x"):
    return fol.translate(root, desugar(parse(text)))


def lines(out):
    return [line for line in fol.to_text(out).splitlines() if line.startswith("fof(")]


def test_atom():
    out = tr("a")
    assert [c.formula for c in out.formulas] == [FEq(Sym("x", "var"), Sym("a", "atom"))]
    assert lines(out) == ["fof(tr_1, hypothesis, '$x' = a)."]


def test_feature_gets_functionality_clause():
    assert lines(tr("f: $y")) == [
        "fof(tr_1, hypothesis, f('$x', '$y')).",
        "fof(tr_2, hypothesis, ![Y]: (f('$x', Y) => '$y' = Y)).",
    ]


def test_union_three_clauses():
    assert lines(tr("f: g($y) union h($z)")) == [
        "fof(tr_1, hypothesis, ![Y]: (f('$x', Y) => (g('$y', Y) | h('$z', Y)))).",
        "fof(tr_2, hypothesis, ![Y]: (g('$y', Y) => f('$x', Y))).",
        "fof(tr_3, hypothesis, ![Y]: (h('$z', Y) => f('$x', Y))).",
    ]


def test_set_description_cover_clause():
    assert lines(tr("f: {$y, $z}"))[-1] == "fof(tr_3, hypothesis, ![Y]: (f('$x', Y) => (Y = '$y' | Y = '$z')))."


def test_disjointness():
    assert lines(tr("f($y) != g($z)")) == ["fof(tr_1, hypothesis, ![Y, Z]: ((f('$y', Y) & g('$z', Z)) => Y != Z))."]


def test_axioms():
    ax = fol.axioms(parse("f: a"))
    assert [c.formula for c in ax] == [FAll(("Y",), FNot(FRel("f", Sym("a", "atom"), Sym("Y", "bound"))))]
    assert "a != b" in fol.to_text(tr("a & b"))
    assert fol.axioms(parse("f: $y")) == []


def test_extrapolated_cases_are_flagged():
    out = tr("C & #c")
    assert all(c.extrapolated for c in out.formulas)
    assert all(line.endswith("% extrapolated") for line in lines(out))
    assert not any(c.extrapolated for c in tr("f: {$y, $z}").clauses)


@pytest.mark.parametrize("text, sat", [
    ("a", True),
    ("a & b", False),
    ("f: {a, b}=", True),
    ("f: a & all f: !a", False),
    ("f: {$x1, $x2}= & all f: a", False),
    ("f: $y & g($y) != g($y) & $y & g: a", False),
])
def test_sb_satisfiable(text, sat):
    out = tr(text, root="r")
    assert fol.sb_satisfiable(out) is sat
    assert fol.in_sb_class(fol.prenex(out))


def test_ground_budget():
    with pytest.raises(fol.GroundBudgetExceeded):
        fol.sb_satisfiable(tr("f: {$a1, $a2, $a3} & f($a1) != f($a2)"), budget=10)


def test_root_must_be_fresh():
    with pytest.raises(ValueError):
        tr("$x")


def test_prefix_classes():
    y = Sym("Y", "bound")
    body = FImp(FRel("f", Sym("x", "var"), y), FEq(y, Sym("a", "atom")))
    assert fol.is_universal(FAll(("Y",), body))
    assert fol.quantifier_free(body)
    assert fol.in_sb_class(FAll(("Y",), body))
