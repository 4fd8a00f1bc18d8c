"""Constraint systems and the syntactic entailment relation.

A system is a set of containment constraints ``x = T`` and disjunctive
constraints ``x = x1 | ... | xn``. Entailment is the closure of exactly
eight deduction rules:

1. every member of the system is entailed
2. ``x = x``
3. ``x = y`` gives ``y = x``
4. ``x = y`` and ``y = z`` give ``x = z``
5. ``x = !y`` gives ``y = !x``
6. ``x = f: y`` gives ``x = some f: y``
7. ``x = f: y`` gives ``x = all f: y``
8. ``x = f: {..., y, ...}`` gives ``x = some f: y``

The closure is answered from indexes built once per (immutable) system.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable

from .syntax import render
from .terms import (
    Disjointness,
    Exists,
    Feature,
    FixedSet,
    Forall,
    Intersection,
    Not,
    SetDesc,
    Superset,
    Term,
    Union,
    DisjointUnion,
    Var,
    Atom,
    Const,
    Concept,
    Conj,
    free_vars,
)


@dataclass(frozen=True)
class Containment:
    var: str
    term: Term


@dataclass(frozen=True)
class Disjunctive:
    var: str
    choices: tuple[str, ...]

    def __post_init__(self):
        if not self.choices:
            raise ValueError("disjunctive constraint needs at least one choice")


Constraint = Containment | Disjunctive


@lru_cache(maxsize=None)
def constraint_text(c: Constraint) -> str:
    if isinstance(c, Containment):
        return f"${c.var} = {render(c.term)}"
    return f"${c.var} = " + " | ".join("$" + v for v in c.choices)


@lru_cache(maxsize=None)
def constraint_vars(c: Constraint) -> frozenset[str]:
    if isinstance(c, Containment):
        return free_vars(c.term) | {c.var}
    return frozenset((c.var, *c.choices))


def _sort_key(c: Constraint) -> str:
    return constraint_text(c)


def _var_body(term: Term) -> str | None:
    return term.name if isinstance(term, Var) else None


class _UnionFind:
    def __init__(self):
        self.parent: dict[str, str] = {}

    def find(self, x: str) -> str:
        parent = self.parent
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(x, x) != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: str, b: str) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


class ConstraintSystem:
    """An immutable set of constraints plus the fresh-variable counter."""

    __slots__ = ("constraints", "counter", "__dict__")

    def __init__(self, constraints: Iterable[Constraint] = (), counter: int = 0):
        self.constraints = frozenset(constraints)
        self.counter = counter

    def __iter__(self):
        return iter(self.ordered)

    def __len__(self) -> int:
        return len(self.constraints)

    def __contains__(self, c) -> bool:
        return c in self.constraints

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConstraintSystem):
            return NotImplemented
        return self.constraints == other.constraints

    def __hash__(self) -> int:
        return hash(self.constraints)

    def __repr__(self) -> str:
        return f"ConstraintSystem({{{'; '.join(constraint_text(c) for c in self.ordered)}}})"

    def replace(self, remove: Iterable[Constraint] = (), add: Iterable[Constraint] = ()) -> ConstraintSystem:
        new = (self.constraints - frozenset(remove)) | frozenset(add)
        return ConstraintSystem(new, self.counter)

    @cached_property
    def ordered(self) -> tuple[Constraint, ...]:
        return tuple(sorted(self.constraints, key=_sort_key))

    @cached_property
    def variables(self) -> frozenset[str]:
        out: set[str] = set()
        for c in self.constraints:
            out |= constraint_vars(c)
        return frozenset(out)

    @cached_property
    def index(self) -> _Index:
        return _Index(self)

    def dump(self) -> str:
        """One surface-syntax clause per line, ``$x = T.``"""
        return "".join(constraint_text(c) + ".\n" for c in self.ordered)


class _Index:
    """Derived views of a system used by entailment and the solver."""

    def __init__(self, cs: ConstraintSystem):
        self.uf = _UnionFind()
        self.terms: dict[str, set[Term]] = defaultdict(set)
        self.succ: dict[tuple[str, str], set[str]] = defaultdict(set)
        self.feats: dict[str, list[tuple[str, str]]] = defaultdict(list)
        self.exists: dict[str, list[tuple[str, str]]] = defaultdict(list)
        self.forall_var: dict[str, list[tuple[str, str]]] = defaultdict(list)
        self.forall_prop: dict[str, list[tuple[str, Term]]] = defaultdict(list)
        self.sets: dict[str, list[SetDesc]] = defaultdict(list)
        self.fixed: dict[str, list[FixedSet]] = defaultdict(list)
        self.unions: list[tuple[str, Union]] = []
        self.isects: list[tuple[str, Intersection]] = []
        self.supersets: list[tuple[str, Superset]] = []
        self.disjoint: list[tuple[str, Disjointness]] = []
        self.var_eqs: list[Containment] = []
        self.disjunctions: list[Disjunctive] = []
        self.occurrences: dict[str, int] = defaultdict(int)
        for c in cs.ordered:
            for v in constraint_vars(c):
                self.occurrences[v] += 1
            if isinstance(c, Disjunctive):
                self.disjunctions.append(c)
                continue
            x, t = c.var, c.term
            self.terms[x].add(t)
            if isinstance(t, Var):
                self.var_eqs.append(c)
                self.uf.union(x, t.name)
            elif isinstance(t, Feature) and isinstance(t.body, Var):
                self.feats[x].append((t.rel, t.body.name))
                self.succ[x, t.rel].add(t.body.name)
            elif isinstance(t, Exists) and isinstance(t.body, Var):
                self.exists[x].append((t.rel, t.body.name))
                self.succ[x, t.rel].add(t.body.name)
            elif isinstance(t, Forall):
                if isinstance(t.body, Var):
                    self.forall_var[x].append((t.rel, t.body.name))
                else:
                    self.forall_prop[x].append((t.rel, t.body))
            elif isinstance(t, SetDesc):
                for e in t.elems:
                    if isinstance(e, Var):
                        self.succ[x, t.rel].add(e.name)
                if all(isinstance(e, Var) for e in t.elems):
                    self.sets[x].append(t)
            elif isinstance(t, FixedSet) and all(isinstance(e, Var) for e in t.elems):
                self.fixed[x].append(t)
            elif isinstance(t, Union):
                self.unions.append((x, t))
            elif isinstance(t, Intersection):
                self.isects.append((x, t))
            elif isinstance(t, Superset):
                self.supersets.append((x, t))
            elif isinstance(t, Disjointness):
                self.disjoint.append((x, t))

    def same(self, x: str, y: str) -> bool:
        return x == y or self.uf.find(x) == self.uf.find(y)

    def has(self, x: str, t: Term) -> bool:
        return t in self.terms.get(x, ())

    def succ_of(self, x: str, rel: str) -> set[str]:
        return self.succ.get((x, rel), set())

    def entails(self, x: str, t: Term) -> bool:
        if isinstance(t, Var):
            return self.same(x, t.name)
        if self.has(x, t):
            return True
        if isinstance(t, Not) and isinstance(t.arg, Var):
            return self.has(t.arg.name, Not(Var(x)))
        if isinstance(t, Exists) and isinstance(t.body, Var):
            return t.body.name in self.succ_of(x, t.rel)
        if isinstance(t, Forall) and isinstance(t.body, Var):
            return (t.rel, t.body.name) in self.feats.get(x, ())
        return False


def entails(cs: ConstraintSystem, goal: Constraint) -> bool:
    """Decide ``cs |- goal`` under the eight deduction rules."""
    if isinstance(goal, Disjunctive):
        return goal in cs
    return cs.index.entails(goal.var, goal.term)


def succ(cs: ConstraintSystem, x: str, rel: str) -> frozenset[str]:
    return frozenset(cs.index.succ_of(x, rel))


def _rename(name: str, old: str, new: str) -> str:
    return new if name == old else name


def substitute_term(term: Term, old: str, new: str) -> Term:
    if isinstance(term, Var):
        return Var(new) if term.name == old else term
    if isinstance(term, (Atom, Const, Concept)):
        return term
    if isinstance(term, Not):
        return Not(substitute_term(term.arg, old, new))
    if isinstance(term, (Feature, Exists, Forall)):
        return type(term)(term.rel, substitute_term(term.body, old, new))
    if isinstance(term, (SetDesc, FixedSet)):
        return type(term)(term.rel, tuple(substitute_term(e, old, new) for e in term.elems))
    if isinstance(term, (Union, Intersection, DisjointUnion)):
        return type(term)(term.rel, term.left_rel, _rename(term.left_var, old, new),
                          term.right_rel, _rename(term.right_var, old, new))
    if isinstance(term, Superset):
        return Superset(term.rel, term.sub_rel, _rename(term.var, old, new))
    if isinstance(term, Disjointness):
        return Disjointness(term.left_rel, _rename(term.left_var, old, new),
                            term.right_rel, _rename(term.right_var, old, new))
    if isinstance(term, Conj):
        return Conj(substitute_term(term.left, old, new), substitute_term(term.right, old, new))
    raise TypeError(f"not a term: {term!r}")


def substitute_constraint(c: Constraint, old: str, new: str) -> Constraint:
    if old not in constraint_vars(c):
        return c
    if isinstance(c, Disjunctive):
        return Disjunctive(_rename(c.var, old, new), tuple(_rename(v, old, new) for v in c.choices))
    return Containment(_rename(c.var, old, new), substitute_term(c.term, old, new))


def substitute(cs: ConstraintSystem, x: str, y: str) -> ConstraintSystem:
    """Replace every occurrence of variable ``x`` by ``y``.

    Constraints that become identical are merged, so the result may be
    smaller than ``cs``.
    """
    if x == y:
        raise ValueError("substitute needs two distinct variables")
    return ConstraintSystem((substitute_constraint(c, x, y) for c in cs.constraints), cs.counter)


def equiv_classes(cs: ConstraintSystem, variables: Iterable[str] = ()) -> list[frozenset[str]]:
    """Partition of variables by entailed equality, sorted by representative."""
    index = cs.index
    groups: dict[str, set[str]] = defaultdict(set)
    for v in cs.variables | frozenset(variables):
        groups[index.uf.find(v)].add(v)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def representative(cls: Iterable[str]) -> str:
    return min(cls)
