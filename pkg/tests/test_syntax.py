from __future__ import annotations

import random

import pytest

from setfeat.generators import MICRO, SMALL, all_terms, random_term
from setfeat.syntax import ParseError, TermKindError, TermValidationError, load, parse, parse_corpus, render
from setfeat.terms import Atom, Conj, Feature, FixedSet, Superset, Union


def test_parse_fixed_set():
    assert parse("f: {a, b}=") == FixedSet("f", (Atom("a"), Atom("b")))


def test_parse_union():
    assert parse("subcat: cdtrs($x) union n($y)") == Union("subcat", "cdtrs", "x", "n", "y")


def test_forall_over_compound_is_reported():
    with pytest.raises(TermValidationError):
        parse("all f: (g: a)")


def test_render_basics():
    assert render(Feature("f", Atom("a"))) == "f: a"
    assert render(Conj(Atom("a"), Atom("b"))) == "(a & b)"
    assert render(Superset("f", "g", "x")) == "f: >= g($x)"


def test_conjunction_is_left_associative():
    t = parse("a & b & c")
    assert t == Conj(Conj(Atom("a"), Atom("b")), Atom("c"))


def test_feature_chain_binds_tighter_than_conj():
    t = parse("f: g: a & b")
    assert t == Conj(Feature("f", Feature("g", Atom("a"))), Atom("b"))


def test_kind_clash_in_one_term():
    with pytest.raises(TermKindError):
        parse("a & a: b")


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse("f: {a,\n  ")
    assert info.value.line == 2


@pytest.mark.parametrize("text", ["", "f:", "f: {}", "& a", "f: a b", "some : a", "$x !="])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_comments_are_skipped():
    assert parse("% leading\nf: a % trailing") == Feature("f", Atom("a"))


def test_round_trip_micro_small_terms():
    for t in all_terms(4, MICRO):
        assert parse(render(t)) == t


def test_round_trip_random_terms():
    rng = random.Random(3)
    for _ in range(300):
        t = random_term(rng, max_size=10, sig=SMALL)
        assert parse(render(t)) == t


def test_corpus_clauses():
    clauses = parse_corpus("one = a.\n% comment\ntwo = f: {a, b}.")
    assert list(clauses) == ["one", "two"]
    with pytest.raises(ParseError):
        parse_corpus("one = a. one = b.")


def test_load_corpus_and_single(corpus):
    assert isinstance(load(corpus / "subcat.term"), dict)
    assert load(corpus / "feat_atom.term") == Feature("f", Atom("a"))
