from __future__ import annotations

from setfeat.constraints import (
    ConstraintSystem,
    Containment,
    Disjunctive,
    entails,
    equiv_classes,
    substitute,
    succ,
)
from setfeat.syntax import parse


def C(var, text):
    return Containment(var, parse(text))


def system(*pairs):
    return ConstraintSystem([C(v, t) for v, t in pairs])


def test_feature_entails_exists_and_forall():
    cs = system(("x", "f: $y"))
    assert entails(cs, C("x", "some f: $y"))
    assert entails(cs, C("x", "all f: $y"))
    assert not entails(cs, C("x", "some f: $z"))


def test_transitivity_and_symmetry():
    cs = system(("x", "$y"), ("y", "$z"))
    assert entails(cs, C("x", "$z"))
    assert entails(cs, C("z", "$x"))


def test_reflexivity_only_on_empty_system():
    cs = ConstraintSystem()
    assert entails(cs, C("x", "$x"))
    assert not entails(cs, C("x", "$y"))


def test_negation_symmetry():
    cs = system(("x", "!$y"))
    assert entails(cs, C("y", "!$x"))


def test_set_member_gives_exists():
    cs = system(("x", "f: {$x1, $x2}"))
    assert entails(cs, C("x", "some f: $x1"))
    assert not entails(cs, C("x", "f: $x1"))


def test_membership_only_closure():
    # nothing beyond the eight rules: no propagation of atoms through equality
    cs = system(("x", "$y"), ("y", "a"))
    assert entails(cs, C("y", "a"))
    assert not entails(cs, C("x", "a"))


def test_succ():
    assert succ(system(("x", "f: {$x1, $x2}")), "x", "f") == {"x1", "x2"}
    assert succ(system(("x", "f: $y")), "x", "f") == {"y"}
    assert succ(ConstraintSystem(), "x", "f") == frozenset()


def test_succ_is_literal():
    # x = u does not carry u's successors over to x under the deduction rules
    cs = system(("x", "$u"), ("u", "f: $y"))
    assert succ(cs, "u", "f") == {"y"}
    assert succ(cs, "x", "f") == frozenset()


def test_substitute():
    cs = system(("x", "f: $x"), ("z", "g: $x"))
    assert substitute(cs, "x", "y") == system(("y", "f: $y"), ("z", "g: $y"))
    assert substitute(system(("x", "$y")), "x", "y") == system(("y", "$y"))
    dis = ConstraintSystem([Disjunctive("x", ("x1", "x2"))])
    assert substitute(dis, "x1", "y") == ConstraintSystem([Disjunctive("x", ("y", "x2"))])


def test_equiv_classes():
    assert equiv_classes(system(("x", "$y"), ("y", "$z"))) == [frozenset({"x", "y", "z"})]
    assert equiv_classes(ConstraintSystem(), ["x", "y"]) == [frozenset({"x"}), frozenset({"y"})]
    assert equiv_classes(system(("x", "$y"), ("u", "$v"))) == [frozenset({"u", "v"}), frozenset({"x", "y"})]


def test_dump_is_sorted_and_parseable():
    cs = system(("y", "g: a"), ("x", "f: $y"))
    assert cs.dump() == "$x = f: $y.\n$y = g: a.\n"
