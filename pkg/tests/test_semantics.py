from __future__ import annotations

import json
import random

import pytest

from setfeat.constraints import Containment, Disjunctive
from setfeat.generators import SMALL, props, random_term
from setfeat.semantics import (
    Assignment,
    Interpretation,
    Model,
    UninterpretedName,
    denote,
    enumerate_models,
    find_model,
    find_model_sat,
    holds,
    random_model,
    satisfies,
)
from setfeat.solver import model_bound
from setfeat.syntax import parse
from setfeat.terms import Conj, Exists, Feature, Forall, Not, desugar


def small_model(relations=None, variables=None):
    interp = Interpretation(["a", "b", "e1", "e2"], {"a": "a", "b": "b"}, relations or {})
    return Model(interp, Assignment(variables or {}))


def test_atom_constraint():
    m = small_model(variables={"x": "a"})
    assert satisfies(m, [Containment("x", parse("a"))])
    assert not satisfies(m, [Containment("x", parse("b"))])


def test_disjunctive_constraint():
    m = small_model(variables={"x": "e1", "x1": "e2", "x2": "e1"})
    assert satisfies(m, [Disjunctive("x", ("x1", "x2"))])
    assert not satisfies(m, [Disjunctive("x", ("x1",))])


def test_feature_needs_a_single_successor():
    m = small_model({"f": {("e1", "a"), ("e1", "b")}}, {"x": "e1", "y": "a"})
    assert not satisfies(m, [Containment("x", parse("f: $y"))])
    assert satisfies(m, [Containment("x", parse("some f: $y"))])
    assert satisfies(m, [Containment("x", parse("f: {a, b}="))])
    assert satisfies(m, [Containment("x", parse("f: {a, b, a}"))])
    assert not satisfies(m, [Containment("x", parse("f: {a, b, a}="))])


def test_set_operations():
    rel = {"f": {("e1", "a"), ("e1", "b")}, "g": {("e2", "a")}, "h": {("e2", "b")}}
    m = small_model(rel, {"x": "e1", "y": "e2"})
    assert holds(m, "e1", parse("f: g($y) union h($y)"))
    assert holds(m, "e1", parse("f: g($y) dunion h($y)"))
    assert not holds(m, "e1", parse("f: g($y) isect h($y)"))
    assert holds(m, "e2", parse("g: g($y) isect g($y)"))
    assert holds(m, "e1", parse("f: >= g($y)"))
    assert holds(m, "e1", parse("g($y) != h($y)"))
    assert not holds(m, "e1", parse("f($x) != g($y)"))


def test_unknown_name():
    with pytest.raises(UninterpretedName):
        holds(small_model(), "a", parse("$z"))


def test_enumerate_examples():
    m = enumerate_models(parse("a"), root="r")
    assert m.var("r") == m.atom("a")
    for bound in (1, 2, 3):
        assert enumerate_models(parse("f: a & all f: !a"), bound=bound) is None
    m = enumerate_models(parse("f: {a, b}="), root="r")
    assert len(m.succ("f", m.var("r"))) == 2


def test_engines_agree():
    rng = random.Random(5)
    for _ in range(60):
        t = desugar(random_term(rng, max_size=6))
        bound = min(3, model_bound(t, "r"))
        lazy = enumerate_models(t, root="r", bound=bound, engine="lazy")
        sat = enumerate_models(t, root="r", bound=bound, engine="sat")
        assert (lazy is None) == (sat is None), t
    with pytest.raises(ValueError):
        enumerate_models(parse("a"), engine="magic")


def test_found_models_are_models():
    for text in ["f: {$y, $z}= & $y & some f: !$y", "f: g($u) union h($v) & some f: C", "#c & !#d & f: #d"]:
        cs = [Containment("r", parse(text))]
        for m in (find_model(cs), find_model_sat(cs)):
            m.check()
            assert satisfies(m, cs)


def test_denotation_laws_on_random_models():
    rng = random.Random(2)
    for _ in range(200):
        s, t = desugar(random_term(rng, 5)), desugar(random_term(rng, 5))
        p = rng.choice(props(SMALL))
        m = random_model(rng, [Containment("r", Conj(s, Conj(t, p)))])
        universe = frozenset(m.interp.universe)
        assert denote(Conj(s, t), m) == denote(s, m) & denote(t, m)
        if not isinstance(p, Not):
            assert denote(Not(p), m) == universe - denote(p, m)
        for f in ("f", "g"):
            assert denote(Feature(f, p), m) <= denote(Exists(f, p), m) & denote(Forall(f, p), m)


def test_json_round_trip():
    m = find_model_sat([Containment("r", parse("f: {a, $y} & #c & some g: C"))])
    data = json.loads(m.dumps())
    assert set(data) == {"universe", "atoms", "relations", "assignment"}
    assert set(data["assignment"]) == {"vars", "consts", "concepts"}
    assert Model.from_json(data).dumps() == m.dumps()


def test_check_rejects_bad_structures():
    bad = Model(Interpretation(["a", "e"], {"a": "a"}, {"f": {("a", "e")}}), Assignment())
    with pytest.raises(ValueError):
        bad.check()
    bad = Model(Interpretation(["e1", "e2"]), Assignment(constants={"c": "e1", "d": "e1"}))
    with pytest.raises(ValueError):
        bad.check()
