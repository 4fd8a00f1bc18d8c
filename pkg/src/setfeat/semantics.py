"""Finite interpretations, the denotation function, and model enumeration.

This module is the ground truth the solver is tested against. It reads
terms directly through their set-theoretic meaning and never consults the
rewrite rules.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable

from .constraints import ConstraintSystem, Containment, Disjunctive
from .terms import (
    BOT,
    TOP,
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
    Superset,
    Term,
    Union,
    Var,
    names,
)


class UninterpretedName(KeyError):
    pass


class OracleBudgetExceeded(RuntimeError):
    """Model enumeration gave up; the oracle has no verdict."""


@dataclass
class Interpretation:
    universe: list[str]
    atoms: dict[str, str] = field(default_factory=dict)
    relations: dict[str, set[tuple[str, str]]] = field(default_factory=dict)

    def check(self) -> None:
        images = list(self.atoms.values())
        if len(set(images)) != len(images):
            raise ValueError("atoms must denote distinct elements")
        atom_elems = set(images)
        for rel, pairs in self.relations.items():
            for src, dst in pairs:
                if src in atom_elems:
                    raise ValueError(f"atom element {src!r} has a {rel}-successor")
        universe = set(self.universe)
        for e in images:
            if e not in universe:
                raise ValueError(f"atom image {e!r} outside the universe")


@dataclass
class Assignment:
    variables: dict[str, str] = field(default_factory=dict)
    constants: dict[str, str] = field(default_factory=dict)
    concepts: dict[str, set[str]] = field(default_factory=dict)


@dataclass
class Model:
    interp: Interpretation
    assign: Assignment

    def __post_init__(self):
        self._succ: dict[tuple[str, str], frozenset[str]] | None = None

    # world protocol used by holds()

    def succ(self, rel: str, e: str) -> frozenset[str]:
        if self._succ is None:
            table: dict[tuple[str, str], set[str]] = {}
            for r, pairs in self.interp.relations.items():
                for src, dst in pairs:
                    table.setdefault((r, src), set()).add(dst)
            self._succ = {k: frozenset(v) for k, v in table.items()}
        return self._succ.get((rel, e), frozenset())

    def var(self, name: str) -> str:
        try:
            return self.assign.variables[name]
        except KeyError:
            raise UninterpretedName(f"variable {name!r}") from None

    def const(self, name: str) -> str:
        try:
            return self.assign.constants[name]
        except KeyError:
            raise UninterpretedName(f"constant {name!r}") from None

    def atom(self, name: str) -> str:
        try:
            return self.interp.atoms[name]
        except KeyError:
            raise UninterpretedName(f"atom {name!r}") from None

    def member(self, concept: str, e: str) -> bool:
        if concept == TOP:
            return True
        if concept == BOT:
            return False
        try:
            return e in self.assign.concepts[concept]
        except KeyError:
            raise UninterpretedName(f"concept {concept!r}") from None

    def check(self) -> None:
        """Raise ValueError unless the model meets the structural requirements."""
        self.interp.check()
        universe = set(self.interp.universe)
        if not universe:
            raise ValueError("empty universe")
        consts = list(self.assign.constants.values())
        if len(set(consts)) != len(consts):
            raise ValueError("constants must denote distinct elements")
        for e in itertools.chain(self.assign.variables.values(), consts):
            if e not in universe:
                raise ValueError(f"{e!r} outside the universe")
        for c, ext in self.assign.concepts.items():
            if not set(ext) <= universe:
                raise ValueError(f"concept {c!r} not a subset of the universe")
        if self.assign.concepts.get(BOT, set()):
            raise ValueError("Bot must denote the empty set")
        if TOP in self.assign.concepts and set(self.assign.concepts[TOP]) != universe:
            raise ValueError("Top must denote the universe")

    def to_json(self) -> dict:
        return {
            "universe": sorted(self.interp.universe),
            "atoms": dict(sorted(self.interp.atoms.items())),
            "relations": {r: sorted([list(p) for p in pairs])
                          for r, pairs in sorted(self.interp.relations.items())},
            "assignment": {
                "vars": dict(sorted(self.assign.variables.items())),
                "consts": dict(sorted(self.assign.constants.items())),
                "concepts": {c: sorted(ext) for c, ext in sorted(self.assign.concepts.items())},
            },
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> Model:
        interp = Interpretation(
            universe=list(data["universe"]),
            atoms=dict(data.get("atoms", {})),
            relations={r: {tuple(p) for p in pairs} for r, pairs in data.get("relations", {}).items()},
        )
        a = data.get("assignment", {})
        assign = Assignment(
            variables=dict(a.get("vars", {})),
            constants=dict(a.get("consts", {})),
            concepts={c: set(ext) for c, ext in a.get("concepts", {}).items()},
        )
        return cls(interp, assign)


def holds(world, e: str, term: Term) -> bool:
    """Is ``e`` in the denotation of ``term``?"""
    if isinstance(term, Var):
        return e == world.var(term.name)
    if isinstance(term, Atom):
        return e == world.atom(term.name)
    if isinstance(term, Const):
        return e == world.const(term.name)
    if isinstance(term, Concept):
        return world.member(term.name, e)
    if isinstance(term, Not):
        return not holds(world, e, term.arg)
    if isinstance(term, Conj):
        return holds(world, e, term.left) and holds(world, e, term.right)
    if isinstance(term, Feature):
        s = world.succ(term.rel, e)
        return len(s) == 1 and holds(world, next(iter(s)), term.body)
    if isinstance(term, Exists):
        return any(holds(world, d, term.body) for d in sorted(world.succ(term.rel, e)))
    if isinstance(term, Forall):
        return all(holds(world, d, term.body) for d in sorted(world.succ(term.rel, e)))
    if isinstance(term, SetDesc):
        return _covers(world, world.succ(term.rel, e), term.elems, fixed=False)
    if isinstance(term, FixedSet):
        s = world.succ(term.rel, e)
        return len(s) == len(term.elems) and _covers(world, s, term.elems, fixed=True)
    if isinstance(term, Union):
        return world.succ(term.rel, e) == (world.succ(term.left_rel, world.var(term.left_var))
                                           | world.succ(term.right_rel, world.var(term.right_var)))
    if isinstance(term, Intersection):
        return world.succ(term.rel, e) == (world.succ(term.left_rel, world.var(term.left_var))
                                           & world.succ(term.right_rel, world.var(term.right_var)))
    if isinstance(term, DisjointUnion):
        left = world.succ(term.left_rel, world.var(term.left_var))
        right = world.succ(term.right_rel, world.var(term.right_var))
        return not (left & right) and world.succ(term.rel, e) == left | right
    if isinstance(term, Superset):
        return world.succ(term.rel, e) >= world.succ(term.sub_rel, world.var(term.var))
    if isinstance(term, Disjointness):
        left = world.succ(term.left_rel, world.var(term.left_var))
        right = world.succ(term.right_rel, world.var(term.right_var))
        return not (left & right)
    raise TypeError(f"not a term: {term!r}")


def _covers(world, succs: frozenset[str], elems, fixed: bool) -> bool:
    # f(e) = {e1..en} with ei in [[Ti]]; for fixed sets the ei are distinct
    ordered = sorted(succs)
    candidates = [[d for d in ordered if holds(world, d, t)] for t in elems]
    if any(not c for c in candidates):
        return False
    if fixed:
        return any(len(set(pick)) == len(elems) for pick in itertools.product(*candidates))
    return any(set(pick) == succs for pick in itertools.product(*candidates))


def denote(term: Term, m: Model) -> frozenset[str]:
    return frozenset(e for e in m.interp.universe if holds(m, e, term))


def satisfies_constraint(m, c) -> bool:
    if isinstance(c, Containment):
        return holds(m, m.var(c.var), c.term)
    if isinstance(c, Disjunctive):
        v = m.var(c.var)
        return any(v == m.var(x) for x in c.choices)
    raise TypeError(f"not a constraint: {c!r}")


def satisfies(m, cs: ConstraintSystem | Iterable) -> bool:
    return all(satisfies_constraint(m, c) for c in cs)


# Bounded model enumeration.
#
# Successor sets, variable values, constant values and concept memberships
# are decided lazily: evaluation raises _Need for the first undecided
# ingredient and the search branches on it. Fresh elements nobody has
# touched yet are interchangeable, so only the first untouched one is ever
# tried as a new value.

class _Need(Exception):
    def __init__(self, key):
        self.key = key


class _Partial:
    def __init__(self, atoms: dict[str, str], decisions: dict):
        self.atoms = atoms
        self.atom_elems = frozenset(atoms.values())
        self.d = decisions

    def succ(self, rel, e):
        if e in self.atom_elems:
            return frozenset()
        key = ("succ", rel, e)
        if key not in self.d:
            raise _Need(key)
        return self.d[key]

    def var(self, name):
        key = ("var", name)
        if key not in self.d:
            raise _Need(key)
        return self.d[key]

    def const(self, name):
        key = ("const", name)
        if key not in self.d:
            raise _Need(key)
        return self.d[key]

    def atom(self, name):
        try:
            return self.atoms[name]
        except KeyError:
            raise UninterpretedName(f"atom {name!r}") from None

    def member(self, concept, e):
        if concept == TOP:
            return True
        if concept == BOT:
            return False
        key = ("mem", concept, e)
        if key not in self.d:
            raise _Need(key)
        return self.d[key]


def _touched(decisions: dict, atom_elems) -> set[str]:
    out = set(atom_elems)
    for key, value in decisions.items():
        kind = key[0]
        if kind in ("var", "const"):
            out.add(value)
        elif kind == "succ":
            out.add(key[2])
            out |= value
        elif kind == "mem":
            out.add(key[2])
    return out


def _options(key, decisions, universe, atom_elems):
    touched = _touched(decisions, atom_elems)
    seen = [e for e in universe if e in touched]
    fresh = [e for e in universe if e not in touched]
    kind = key[0]
    if kind == "var":
        return seen + fresh[:1]
    if kind == "const":
        taken = {v for k, v in decisions.items() if k[0] == "const"}
        return [e for e in seen + fresh[:1] if e not in taken]
    if kind == "mem":
        return [True, False]
    if kind == "succ":
        out = []
        for k in range(len(seen) + 1):
            for base in itertools.combinations(seen, k):
                for t in range(len(fresh) + 1):
                    out.append(frozenset(base) | frozenset(fresh[:t]))
        out.sort(key=len)
        return out
    raise AssertionError(key)


def _collect(constraints) -> dict[str, set[str]]:
    found = {"variable": set(), "atom": set(), "constant": set(), "concept": set(), "relation": set()}
    for c in constraints:
        if isinstance(c, Containment):
            found["variable"].add(c.var)
            for kind, name in names(c.term):
                found[kind].add(name)
        else:
            found["variable"].update((c.var, *c.choices))
    return found


def find_model(constraints: Iterable, bound: int = 3, budget: int = 200_000,
               extra_atoms: Iterable[str] = ()) -> Model | None:
    """Search for a model of ``constraints``.

    The universe holds one element per occurring atom and ``bound`` extra
    elements beyond one per occurring constant. Returns the first model in
    a fixed search order, or None when none exists within the bound.
    Raises OracleBudgetExceeded after ``budget`` search nodes.
    """
    constraints = list(constraints)
    found = _collect(constraints)
    atom_names = sorted(found["atom"] | set(extra_atoms))
    atoms = {a: a for a in atom_names}
    n_fresh = len(found["constant"]) + bound
    universe = atom_names + [f"@{i}" for i in range(1, n_fresh + 1)]
    if not universe:
        return None
    atom_elems = frozenset(atoms.values())

    def check(world) -> bool:
        return all(satisfies_constraint(world, c) for c in constraints)

    nodes = 0
    stack: list[dict] = [{}]
    while stack:
        decisions = stack.pop()
        nodes += 1
        if nodes > budget:
            raise OracleBudgetExceeded(f"more than {budget} search nodes")
        world = _Partial(atoms, decisions)
        try:
            ok = check(world)
        except _Need as need:
            opts = _options(need.key, decisions, universe, atom_elems)
            for value in reversed(opts):
                stack.append({**decisions, need.key: value})
            continue
        if ok:
            return _complete(decisions, universe, atoms, found)
    return None


def _complete(decisions, universe, atoms, found) -> Model:
    relations: dict[str, set[tuple[str, str]]] = {r: set() for r in found["relation"]}
    variables, constants = {}, {}
    concepts: dict[str, set[str]] = {c: set() for c in found["concept"] if c not in (TOP, BOT)}
    for key, value in decisions.items():
        if key[0] == "succ":
            relations.setdefault(key[1], set()).update((key[2], d) for d in value)
        elif key[0] == "var":
            variables[key[1]] = value
        elif key[0] == "const":
            constants[key[1]] = value
        elif key[0] == "mem" and value:
            concepts.setdefault(key[1], set()).add(key[2])
    for v in found["variable"]:
        variables.setdefault(v, universe[0])
    free = [e for e in universe if e not in set(constants.values())]
    for c in sorted(found["constant"] - constants.keys()):
        constants[c] = free.pop()
    return Model(Interpretation(list(universe), dict(atoms), relations),
                 Assignment(variables, constants, concepts))


def enumerate_models(term: Term, root: str = "_0", bound: int = 3, budget: int = 200_000,
                     engine: str = "sat") -> Model | None:
    """A model with ``root`` in the denotation of ``term``, or None.

    ``engine`` picks the SAT-backed search or the lazy enumerator; both are
    exhaustive over the same bounded universes.
    """
    if engine == "sat":
        return find_model_sat([Containment(root, term)], bound=bound)
    if engine == "lazy":
        return find_model([Containment(root, term)], bound=bound, budget=budget)
    raise ValueError(f"unknown engine {engine!r}")


# SAT-backed bounded model search.
#
# The same denotation clauses as holds(), read as propositional constraints
# over a fixed finite universe. Compound terms occur only positively
# (negation is restricted to primitives), so each "e is in [[T]]" literal
# only needs to imply its definition. Models are re-checked with holds().

class _Encoder:
    def __init__(self, universe: list[str], atoms: dict[str, str], found: dict[str, set[str]]):
        from .cnf import CNF

        self.cnf = CNF()
        self.universe = universe
        self.atoms = atoms
        self.atom_elems = set(atoms.values())
        self.found = found
        self.memo: dict[tuple[str, Term], object] = {}
        cnf = self.cnf
        for x in sorted(found["variable"]):
            cnf.exactly_one([cnf.var(("var", x, e)) for e in universe])
        consts = sorted(found["constant"])
        for c in consts:
            cnf.exactly_one([cnf.var(("const", c, e)) for e in universe])
        for e in universe:
            cnf.at_most_one([cnf.var(("const", c, e)) for c in consts])

    def edge(self, rel: str, e: str, d: str):
        from .cnf import FALSE

        if e in self.atom_elems:
            return FALSE
        return self.cnf.var(("edge", rel, e, d))

    def var(self, x: str, e: str):
        return self.cnf.var(("var", x, e))

    def image(self, rel: str, x: str, d: str):
        """Literal for: d is an rel-successor of the value of x."""
        key = ("img", rel, x, d)
        if key not in self.cnf.names:
            lit = self.cnf.or_([self.cnf.and_([self.var(x, u), self.edge(rel, u, d)]) for u in self.universe])
            self.cnf.names[key] = lit
        return self.cnf.names[key]

    def iff(self, a, b) -> None:
        from .cnf import neg

        self.cnf.clause([neg(a), b])
        self.cnf.clause([a, neg(b)])

    def holds(self, e: str, term: Term):
        key = (e, term)
        if key not in self.memo:
            self.memo[key] = self._holds(e, term)
        return self.memo[key]

    def _holds(self, e: str, t: Term):
        from .cnf import FALSE, TRUE, neg

        cnf, U = self.cnf, self.universe
        if isinstance(t, Var):
            return self.var(t.name, e)
        if isinstance(t, Atom):
            return TRUE if self.atoms.get(t.name) == e else FALSE
        if isinstance(t, Const):
            return cnf.var(("const", t.name, e))
        if isinstance(t, Concept):
            if t.name == TOP:
                return TRUE
            if t.name == BOT:
                return FALSE
            return cnf.var(("mem", t.name, e))
        if isinstance(t, Not):
            if isinstance(t.arg, (Var, Atom, Const, Concept)):
                return neg(self.holds(e, t.arg))
            raise ValueError("negation of a compound term")
        h = cnf.var()
        if isinstance(t, Conj):
            cnf.implies(h, [self.holds(e, t.left)])
            cnf.implies(h, [self.holds(e, t.right)])
        elif isinstance(t, Feature):
            edges = [self.edge(t.rel, e, d) for d in U]
            cnf.implies(h, edges)
            cnf.at_most_one([cnf.and_([h, x]) for x in edges])
            for d, x in zip(U, edges):
                cnf.clause([-h, neg(x), self.holds(d, t.body)])
        elif isinstance(t, Exists):
            cnf.implies(h, [cnf.and_([self.edge(t.rel, e, d), self.holds(d, t.body)]) for d in U])
        elif isinstance(t, Forall):
            for d in U:
                cnf.clause([-h, neg(self.edge(t.rel, e, d)), self.holds(d, t.body)])
        elif isinstance(t, (SetDesc, FixedSet)):
            choice = [[cnf.var() for _ in U] for _ in t.elems]
            for i, ti in enumerate(t.elems):
                cnf.implies(h, choice[i])
                cnf.at_most_one(choice[i])
                for j, d in enumerate(U):
                    cnf.implies(choice[i][j], [self.edge(t.rel, e, d)])
                    cnf.implies(choice[i][j], [self.holds(d, ti)])
            for j, d in enumerate(U):
                cnf.clause([-h, neg(self.edge(t.rel, e, d)), *(choice[i][j] for i in range(len(t.elems)))])
                if isinstance(t, FixedSet):
                    cnf.at_most_one([choice[i][j] for i in range(len(t.elems))])
        elif isinstance(t, (Union, Intersection, DisjointUnion)):
            for d in U:
                left = self.image(t.left_rel, t.left_var, d)
                right = self.image(t.right_rel, t.right_var, d)
                here = self.edge(t.rel, e, d)
                target = cnf.and_([left, right]) if isinstance(t, Intersection) else cnf.or_([left, right])
                cnf.clause([-h, neg(here), target])
                cnf.clause([-h, here, neg(target)])
                if isinstance(t, DisjointUnion):
                    cnf.clause([-h, neg(left), neg(right)])
        elif isinstance(t, Superset):
            for d in U:
                cnf.clause([-h, neg(self.image(t.sub_rel, t.var, d)), self.edge(t.rel, e, d)])
        elif isinstance(t, Disjointness):
            for d in U:
                cnf.clause([-h, neg(self.image(t.left_rel, t.left_var, d)),
                            neg(self.image(t.right_rel, t.right_var, d))])
        else:
            raise TypeError(f"not a term: {t!r}")
        return h

    def constrain(self, c) -> None:
        cnf = self.cnf
        for e in self.universe:
            if isinstance(c, Containment):
                cnf.implies(self.var(c.var, e), [self.holds(e, c.term)])
            else:
                cnf.implies(self.var(c.var, e), [self.var(x, e) for x in c.choices])

    def decode(self, sol) -> Model:
        from .cnf import value

        U = self.universe
        variables = {x: next(e for e in U if value(sol, self.var(x, e))) for x in self.found["variable"]}
        constants = {c: next(e for e in U if value(sol, self.cnf.var(("const", c, e))))
                     for c in self.found["constant"]}
        concepts = {C: {e for e in U if ("mem", C, e) in self.cnf.names and value(sol, self.cnf.names["mem", C, e])}
                    for C in self.found["concept"] if C not in (TOP, BOT)}
        relations: dict[str, set[tuple[str, str]]] = {f: set() for f in self.found["relation"]}
        for key, lit in self.cnf.names.items():
            if key[0] == "edge" and value(sol, lit):
                relations.setdefault(key[1], set()).add((key[2], key[3]))
        return Model(Interpretation(list(U), dict(self.atoms), relations),
                     Assignment(variables, constants, concepts))


def find_model_sat(constraints: Iterable, bound: int = 3, extra_atoms: Iterable[str] = ()) -> Model | None:
    """Like find_model, but decided by a SAT solver over the full universe.

    Universe: one element per occurring atom, one per occurring constant,
    and ``bound`` further elements.
    """
    constraints = list(constraints)
    found = _collect(constraints)
    atom_names = sorted(found["atom"] | set(extra_atoms))
    atoms = {a: a for a in atom_names}
    universe = atom_names + [f"@{i}" for i in range(1, len(found["constant"]) + bound + 1)]
    if not universe:
        return None
    enc = _Encoder(universe, atoms, found)
    for c in constraints:
        enc.constrain(c)
    sol = enc.cnf.solve()
    if sol is None:
        return None
    model = enc.decode(sol)
    if not satisfies(model, constraints):
        raise AssertionError("SAT model fails the denotation check")
    return model


def random_model(rng, constraints: Iterable, extra: int = 2, density: float = 0.35) -> Model:
    """A random structure interpreting every name in ``constraints``.

    Atoms denote themselves and have no successors; every other pair is
    related with probability ``density``.
    """
    constraints = list(constraints)
    found = _collect(constraints)
    atom_names = sorted(found["atom"])
    fresh = [f"@{i}" for i in range(1, len(found["constant"]) + extra + 1)]
    universe = atom_names + fresh
    relations = {
        r: {(s, d) for s in fresh for d in universe if rng.random() < density}
        for r in sorted(found["relation"])
    }
    variables = {v: rng.choice(universe) for v in sorted(found["variable"])}
    constants = dict(zip(sorted(found["constant"]), rng.sample(universe, len(found["constant"]))))
    concepts = {C: {e for e in universe if rng.random() < 0.5}
                for C in sorted(found["concept"] - {TOP, BOT})}
    return Model(Interpretation(universe, {a: a for a in atom_names}, relations),
                 Assignment(variables, constants, concepts))
