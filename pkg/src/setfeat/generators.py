"""Exhaustive and random term generation over small signatures."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from .terms import (
    Atom,
    Concept,
    Conj,
    Const,
    DisjointUnion,
    Disjointness,
    Exists,
    Feature,
    FixedSet,
    Forall,
    Intersection,
    Not,
    SetDesc,
    Signature,
    Superset,
    Term,
    Union,
    Var,
)

# one relation, two atoms, one constant, one concept, two variables
MICRO = Signature(
    variables=frozenset({"x", "y"}),
    relations=frozenset({"f"}),
    constants=frozenset({"c"}),
    atoms=frozenset({"a", "b"}),
    concepts=frozenset({"C"}),
)

SMALL = Signature(
    variables=frozenset({"x", "y", "z"}),
    relations=frozenset({"f", "g"}),
    constants=frozenset({"c", "d"}),
    atoms=frozenset({"a", "b"}),
    concepts=frozenset({"C", "D"}),
)


def _user_concepts(sig: Signature) -> list[str]:
    # Top and Bot are in every signature; the generators leave them out
    return sorted(sig.concepts - {"Top", "Bot"})


def primitives(sig: Signature) -> list[Term]:
    return ([Var(v) for v in sorted(sig.variables)] + [Atom(a) for a in sorted(sig.atoms)]
            + [Const(c) for c in sorted(sig.constants)] + [Concept(C) for C in _user_concepts(sig)])


def props(sig: Signature) -> list[Term]:
    prims = primitives(sig)
    return prims + [Not(p) for p in prims]


def _set_ops(sig: Signature) -> list[Term]:
    rels, vs = sorted(sig.relations), sorted(sig.variables)
    out: list[Term] = []
    for cls in (Union, Intersection, DisjointUnion):
        for f, g, x, h, y in itertools.product(rels, rels, vs, rels, vs):
            out.append(cls(f, g, x, h, y))
    for g, x, h, y in itertools.product(rels, vs, rels, vs):
        out.append(Disjointness(g, x, h, y))
    return out


def terms_of_size(n: int, sig: Signature = MICRO) -> tuple[Term, ...]:
    """Every well-formed term over ``sig`` with exactly ``n`` nodes."""
    return _terms_of_size(n, sig)


@lru_cache(maxsize=None)
def _terms_of_size(n: int, sig: Signature) -> tuple[Term, ...]:
    if n < 1:
        return ()
    rels = sorted(sig.relations)
    out: list[Term] = []
    if n == 1:
        out += primitives(sig)
    if n == 2:
        out += [Not(p) for p in primitives(sig)]
        out += [Superset(f, g, x) for f in rels for g in rels for x in sorted(sig.variables)]
    if n == 3:
        out += _set_ops(sig)
    for body in _terms_of_size(n - 1, sig):
        for f in rels:
            out.append(Feature(f, body))
            out.append(Exists(f, body))
            if isinstance(body, (Var, Atom, Const, Concept)) or (isinstance(body, Not)):
                out.append(Forall(f, body))
    for elems in _sequences(n - 1, sig):
        for f in rels:
            out.append(SetDesc(f, elems))
            out.append(FixedSet(f, elems))
    for k in range(1, n - 1):
        for left in _terms_of_size(k, sig):
            for right in _terms_of_size(n - 1 - k, sig):
                out.append(Conj(left, right))
    return tuple(out)


@lru_cache(maxsize=None)
def _sequences(n: int, sig: Signature) -> tuple[tuple[Term, ...], ...]:
    """Non-empty element lists whose sizes sum to ``n``."""
    out: list[tuple[Term, ...]] = []
    for k in range(1, n + 1):
        for head in _terms_of_size(k, sig):
            if k == n:
                out.append((head,))
            for tail in _sequences(n - k, sig):
                out.append((head, *tail))
    return tuple(out)


def all_terms(max_size: int, sig: Signature = MICRO):
    for n in range(1, max_size + 1):
        yield from terms_of_size(n, sig)


def count_terms(max_size: int, sig: Signature = MICRO) -> int:
    return sum(len(terms_of_size(n, sig)) for n in range(1, max_size + 1))


def random_term(rng: random.Random, max_size: int = 8, sig: Signature = SMALL) -> Term:
    """A random well-formed term with at most ``max_size`` nodes."""
    return _random(rng, rng.randint(1, max_size), sig)


def _random(rng: random.Random, budget: int, sig: Signature) -> Term:
    rels = sorted(sig.relations)
    vs = sorted(sig.variables)
    choices = ["prim"]
    if budget >= 2:
        choices += ["not", "feat", "exists", "forall", "set", "fixed", "superset"]
    if budget >= 3:
        choices += ["conj", "conj", "setop"]
    kind = rng.choice(choices)
    if kind == "prim":
        return rng.choice(primitives(sig))
    if kind == "not":
        return Not(rng.choice(primitives(sig)))
    if kind == "superset":
        return Superset(rng.choice(rels), rng.choice(rels), rng.choice(vs))
    if kind == "setop":
        if rng.random() < 0.25:
            return Disjointness(rng.choice(rels), rng.choice(vs), rng.choice(rels), rng.choice(vs))
        cls = rng.choice((Union, Intersection, DisjointUnion))
        return cls(rng.choice(rels), rng.choice(rels), rng.choice(vs), rng.choice(rels), rng.choice(vs))
    f = rng.choice(rels)
    if kind == "forall":
        pool = props(sig) if budget >= 3 else primitives(sig)
        return Forall(f, rng.choice(pool))
    if kind in ("feat", "exists"):
        body = _random(rng, rng.randint(1, budget - 1), sig)
        return Feature(f, body) if kind == "feat" else Exists(f, body)
    if kind in ("set", "fixed"):
        remaining = budget - 1
        elems = []
        while remaining > 0 and (not elems or rng.random() < 0.5):
            k = rng.randint(1, min(remaining, 3))
            elems.append(_random(rng, k, sig))
            remaining -= k
        return SetDesc(f, tuple(elems)) if kind == "set" else FixedSet(f, tuple(elems))
    k = rng.randint(1, budget - 2)
    return Conj(_random(rng, k, sig), _random(rng, rng.randint(1, budget - 1 - k), sig))


def random_node_term(rng: random.Random, sig: Signature = SMALL, parts: tuple[int, int] = (2, 4)) -> Term:
    """A conjunction of constraints on one object.

    Pieces share one relation and a few variables, so set descriptions,
    quantifiers and set operations meet each other far more often than in
    random_term; used to exercise rule interactions.
    """
    rels = sorted(sig.relations)
    vs = sorted(sig.variables)
    f = rng.choice(rels)
    pool = props(sig)

    def small():
        return rng.choice(pool) if rng.random() < 0.7 else _random(rng, 2, sig)

    def piece():
        k = rng.randrange(9)
        if k == 0:
            return Feature(f, small())
        if k == 1:
            return Exists(f, small())
        if k == 2:
            return Forall(f, rng.choice(pool))
        if k in (3, 4):
            cls = SetDesc if k == 3 else FixedSet
            return cls(f, tuple(small() for _ in range(rng.randint(1, 3))))
        if k == 5:
            cls = rng.choice((Union, Intersection, DisjointUnion))
            return cls(f, rng.choice(rels), rng.choice(vs), rng.choice(rels), rng.choice(vs))
        if k == 6:
            return Superset(f, rng.choice(rels), rng.choice(vs))
        if k == 7:
            return Disjointness(f, rng.choice(vs), rng.choice(rels), rng.choice(vs))
        return rng.choice(pool)

    out = piece()
    for _ in range(rng.randint(*parts) - 1):
        out = Conj(out, piece())
    return out
