from __future__ import annotations

from setfeat.cnf import CNF, FALSE, TRUE, value


def test_folding():
    cnf = CNF()
    x = cnf.var("x")
    assert cnf.and_([x, TRUE]) == x
    assert cnf.and_([x, FALSE]) is FALSE
    assert cnf.or_([x, TRUE]) is TRUE
    assert cnf.or_([]) is FALSE
    assert cnf.var("x") == x


def test_exactly_one():
    cnf = CNF()
    xs = [cnf.var(i) for i in range(3)]
    cnf.exactly_one(xs)
    model = cnf.solve()
    assert sum(value(model, v) for v in xs) == 1
    cnf.clause([-xs[0]])
    cnf.clause([-xs[1]])
    cnf.clause([-xs[2]])
    assert cnf.solve() is None


def test_gates():
    cnf = CNF()
    a, b = cnf.var("a"), cnf.var("b")
    g = cnf.and_([a, b])
    cnf.clause([g])
    model = cnf.solve()
    assert value(model, a) and value(model, b)


def test_empty_clause_is_unsat():
    cnf = CNF()
    cnf.clause([FALSE])
    assert cnf.solve() is None


def test_no_variables():
    assert CNF().solve() == {}
