"""Consistency checking by constraint rewriting.

A term T is checked by rewriting the system ``{root = T}``: decomposition
into basic constraints first, then simplification to a normal form with
depth-first search over the two branching rules. A clash-free normal form
yields a model; a clash in every branch means T is inconsistent.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable

from .constraints import (
    ConstraintSystem,
    Containment,
    Disjunctive,
    constraint_text,
    substitute,
)
from .semantics import Assignment, Interpretation, Model
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
    desugar,
    free_vars,
    names,
)

DECOMPOSITION_RULES = ("DFeat", "DForall", "DSet", "DSetF", "DConj")
DETERMINISTIC_RULES = (
    "SEquals", "SConst", "SFeat", "SExists", "SForallE", "SSetF", "SSet", "SDup",
    "SForall", "SSetE", "SSetSet", "Subset", "UnionLeft", "UnionRight", "IsectDown", "IsectUp",
)
BRANCHING_RULES = ("SDis", "UnionDown")
RULES = DECOMPOSITION_RULES + DETERMINISTIC_RULES + BRANCHING_RULES


class StepBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Clash:
    condition: int
    witness: str
    detail: tuple = ()

    def __str__(self) -> str:
        return f"clash={self.condition} var={self.witness}"


@dataclass(frozen=True)
class SolverConfig:
    max_steps: int = 10**6
    seed: int | None = None
    trace: bool = False

    def __post_init__(self):
        if self.max_steps < 1:
            raise ValueError("max_steps must be positive")

    @property
    def branch_order(self) -> str:
        return "deterministic" if self.seed is None else f"randomized({self.seed})"


@dataclass(frozen=True)
class Consistent:
    normal_form: ConstraintSystem
    model: Model
    trace: tuple[str, ...] = ()
    steps: int = 0
    root: str = "x"

    consistent = True


@dataclass(frozen=True)
class Inconsistent:
    clashes_per_branch: tuple[Clash, ...]
    branches_explored: int
    trace: tuple[str, ...] = ()
    steps: int = 0
    root: str = "x"

    consistent = False


SolveResult = Consistent | Inconsistent


# step results

@dataclass(frozen=True)
class Unchanged:
    pass


@dataclass(frozen=True)
class Deterministic:
    system: ConstraintSystem
    rule: str
    var: str


@dataclass(frozen=True)
class Branch:
    systems: tuple[ConstraintSystem, ...]
    rule: str
    var: str


# decomposition

def _fresh(counter: int, taken: set[str]) -> tuple[str, int]:
    while True:
        counter += 1
        name = f"_{counter}"
        if name not in taken:
            taken.add(name)
            return name, counter


def to_basic(cs: ConstraintSystem, trace: list[str] | None = None) -> ConstraintSystem:
    """Apply the decomposition rules until none applies."""
    counter = cs.counter
    taken = set(cs.variables)
    out: set = set()
    work = list(reversed(cs.ordered))
    while work:
        c = work.pop()
        if not isinstance(c, Containment):
            out.add(c)
            continue
        x, t = c.var, c.term
        rule = None
        new: list = []
        if isinstance(t, DisjointUnion):
            new = [Containment(x, desugar(t))]
            rule = "DConj"
        elif isinstance(t, Conj):
            new = [Containment(x, t.left), Containment(x, t.right)]
            rule = "DConj"
        elif isinstance(t, (Feature, Exists)) and not isinstance(t.body, Var):
            y, counter = _fresh(counter, taken)
            new = [Containment(x, type(t)(t.rel, Var(y))), Containment(y, t.body)]
            rule = "DFeat"
        elif isinstance(t, Forall) and isinstance(t.body, (Atom, Const)):
            y, counter = _fresh(counter, taken)
            new = [Containment(x, Forall(t.rel, Var(y))), Containment(y, t.body)]
            rule = "DForall"
        elif isinstance(t, (SetDesc, FixedSet)) and not all(isinstance(e, Var) for e in t.elems):
            fresh = []
            for e in t.elems:
                y, counter = _fresh(counter, taken)
                fresh.append(Var(y))
            new = [Containment(x, SetDesc(t.rel, tuple(fresh)))]
            if isinstance(t, FixedSet):
                new.append(Containment(x, FixedSet(t.rel, tuple(fresh))))
            new += [Containment(v.name, e) for v, e in zip(fresh, t.elems)]
            rule = "DSet" if isinstance(t, SetDesc) else "DSetF"
        elif isinstance(t, FixedSet) and Containment(x, SetDesc(t.rel, t.elems)) not in out:
            # all-variable fixed set: make sure the plain companion exists
            out.add(c)
            new = [Containment(x, SetDesc(t.rel, t.elems))]
            rule = "DSetF"
        if rule is None:
            out.add(c)
            continue
        if trace is not None:
            trace.append(f"{rule} @ {x}")
        work.extend(reversed(new))
    return ConstraintSystem(out, counter)


def is_basic(cs: ConstraintSystem) -> bool:
    return to_basic(cs) == cs


# class-level view used by clash detection and model extraction

class _Classes:
    def __init__(self, cs: ConstraintSystem):
        idx = cs.index
        self.idx = idx
        find = idx.uf.find
        self.find = find
        self.atoms: dict[str, dict[str, str]] = defaultdict(dict)
        self.consts: dict[str, dict[str, str]] = defaultdict(dict)
        self.concepts: dict[str, dict[str, str]] = defaultdict(dict)
        self.neg: dict[str, list[tuple[Term, str]]] = defaultdict(list)
        self.succ: dict[tuple[str, str], set[str]] = defaultdict(set)
        self.has_succ: dict[str, str] = {}
        for c in cs.ordered:
            if not isinstance(c, Containment):
                continue
            x, t = c.var, c.term
            r = find(x)
            if isinstance(t, Atom):
                self.atoms[r].setdefault(t.name, x)
            elif isinstance(t, Const):
                self.consts[r].setdefault(t.name, x)
            elif isinstance(t, Concept):
                self.concepts[r].setdefault(t.name, x)
            elif isinstance(t, Not):
                self.neg[r].append((t.arg, x))
        for (x, rel), ys in idx.succ.items():
            if ys:
                r = find(x)
                self.succ[r, rel] |= {find(y) for y in ys}
                if r not in self.has_succ or x < self.has_succ[r]:
                    self.has_succ[r] = x

    def succ_of(self, x: str, rel: str) -> set[str]:
        return self.succ.get((self.find(x), rel), set())


def detect_clash(cs: ConstraintSystem) -> Clash | None:
    """First clash by condition number, then witness variable."""
    clashes = all_clashes(cs, first=True)
    return clashes[0] if clashes else None


def all_clashes(cs: ConstraintSystem, first: bool = False) -> list[Clash]:
    k = _Classes(cs)
    found: list[Clash] = []

    def emit(cond, witness, *detail):
        found.append(Clash(cond, witness, tuple(detail)))

    for r in sorted(k.atoms):
        names_ = sorted(k.atoms[r])
        if len(names_) > 1:
            a1, a2 = names_[:2]
            emit(1, min(k.atoms[r][a1], k.atoms[r][a2]),
                 Containment(k.atoms[r][a1], Atom(a1)), Containment(k.atoms[r][a2], Atom(a2)))
    if found and first:
        return found[:1]
    for r in sorted(k.consts):
        names_ = sorted(k.consts[r])
        if len(names_) > 1:
            c1, c2 = names_[:2]
            emit(2, min(k.consts[r][c1], k.consts[r][c2]),
                 Containment(k.consts[r][c1], Const(c1)), Containment(k.consts[r][c2], Const(c2)))
    if found and first:
        return found[:1]
    cond3: list[Clash] = []
    for r in sorted(set(k.neg) | set(k.concepts)):
        for arg, x in k.neg.get(r, ()):
            hit = None
            if isinstance(arg, Var) and k.find(arg.name) == r:
                hit = Containment(x, arg)
            elif isinstance(arg, Atom) and arg.name in k.atoms.get(r, {}):
                hit = Containment(k.atoms[r][arg.name], arg)
            elif isinstance(arg, Const) and arg.name in k.consts.get(r, {}):
                hit = Containment(k.consts[r][arg.name], arg)
            elif isinstance(arg, Concept) and (arg.name == TOP or arg.name in k.concepts.get(r, {})):
                hit = Containment(k.concepts[r].get(arg.name, x), arg)
            if hit is not None:
                cond3.append(Clash(3, x, (hit, Containment(x, Not(arg)))))
        if BOT in k.concepts.get(r, {}):
            x = k.concepts[r][BOT]
            cond3.append(Clash(3, x, (Containment(x, Concept(BOT)),)))
    found += sorted(cond3, key=lambda c: c.witness)
    if found and first:
        return found[:1]
    for r in sorted(k.atoms):
        if r in k.has_succ:
            x = k.has_succ[r]
            a = sorted(k.atoms[r])[0]
            emit(4, x, Containment(k.atoms[r][a], Atom(a)))
    if found and first:
        return found[:1]
    cond5 = []
    for x, d in k.idx.disjoint:
        shared = k.succ_of(d.left_var, d.left_rel) & k.succ_of(d.right_var, d.right_rel)
        if shared:
            cond5.append(Clash(5, d.left_var, (Containment(x, d), min(shared))))
    found += sorted(cond5, key=lambda c: (c.witness, str(c.detail)))
    if found and first:
        return found[:1]
    cond6 = []
    for x in sorted(k.idx.fixed):
        for t in k.idx.fixed[x]:
            n = len(t.elems)
            distinct = {k.find(e.name) for e in t.elems}
            if len(distinct) < n or len(k.succ_of(x, t.rel)) < n:
                cond6.append(Clash(6, x, (Containment(x, t),)))
    found += cond6
    return found[:1] if first else found


# simplification rules
#
# Each rule function takes (cs, idx) and returns None when it does not
# apply, or (rule-id, variable, result) where result is a system for the
# deterministic rules and a tuple of systems for the branching ones.

def _eq(x: str, y: str) -> Containment:
    return Containment(x, Var(y))


def _adding(cs, idx, rule, x, adds, removes=()):
    adds = [c for c in adds if not (isinstance(c, Containment) and c.term == Var(c.var))]
    new = cs.replace(removes, adds)
    if new == cs:
        return None
    return rule, x, new


def _r_sequals(cs, idx):
    for c in idx.var_eqs:
        x, y = c.var, c.term.name
        if x == y:
            return "SEquals", x, cs.replace([c])
        if idx.occurrences[x] >= 2:
            rest = ConstraintSystem(cs.constraints - {c}, cs.counter)
            new = substitute(rest, x, y)
            new = ConstraintSystem(
                {d for d in new.constraints if not (isinstance(d, Containment) and d.term == Var(d.var))} | {c},
                cs.counter,
            )
            if new != cs:
                return "SEquals", x, new
    return None


def _r_sconst(cs, idx):
    holders: dict[Term, list[str]] = defaultdict(list)
    for x in sorted(idx.terms):
        for t in idx.terms[x]:
            if isinstance(t, (Atom, Const)):
                holders[t].append(x)
    for t in sorted(holders, key=lambda t: (type(t).__name__, t.name)):
        xs = sorted(holders[t])
        if len(xs) >= 2:
            x, y = xs[0], xs[1]
            return "SConst", y, cs.replace([Containment(y, t)], [_eq(x, y)])
    return None


def _r_sfeat(cs, idx):
    for x in sorted(idx.feats):
        for f, y in sorted(idx.feats[x]):
            for t in sorted(idx.terms[x], key=repr):
                if isinstance(t, (Feature, Exists, Forall)) and t.rel == f and isinstance(t.body, Var):
                    z = t.body.name
                    if isinstance(t, Feature) and z == y:
                        continue
                    res = _adding(cs, idx, "SFeat", x, [_eq(y, z)], [Containment(x, t)])
                    if res:
                        return res
    return None


def _r_sexists(cs, idx):
    for x in sorted(idx.exists):
        for f, y in sorted(idx.exists[x]):
            for g, z in sorted(idx.forall_var.get(x, ())):
                if g == f:
                    return _adding(cs, idx, "SExists", x,
                                   [Containment(x, Feature(f, Var(y))), _eq(y, z)],
                                   [Containment(x, Exists(f, Var(y))), Containment(x, Forall(f, Var(z)))])
    return None


def _is_cbar(p: Term) -> bool:
    return isinstance(p, Concept) or (isinstance(p, Not) and isinstance(p.arg, (Concept, Atom, Const, Var)))


def _r_sforalle(cs, idx):
    for x in sorted(idx.forall_prop):
        for f, p in sorted(idx.forall_prop[x], key=repr):
            if not _is_cbar(p):
                continue
            for y in sorted(idx.succ_of(x, f)):
                if not idx.entails(y, p):
                    return "SForallE", x, cs.replace((), [Containment(y, p)])
    return None


def _r_ssetf(cs, idx):
    for x in sorted(idx.sets):
        owners = [(f, y, Feature(f, Var(y))) for f, y in idx.feats.get(x, ())]
        owners += [(f, y, Forall(f, Var(y))) for f, y in idx.forall_var.get(x, ())]
        for f, y, owner in sorted(owners, key=repr):
            for s in idx.sets[x]:
                if s.rel != f:
                    continue
                adds = [Containment(x, Feature(f, Var(y)))] + [_eq(y, e.name) for e in s.elems]
                res = _adding(cs, idx, "SSetF", x, adds, [Containment(x, s), Containment(x, owner)])
                if res:
                    return res
    return None


def _r_sset(cs, idx):
    for x in sorted(idx.sets):
        for s in sorted(idx.sets[x], key=repr):
            if len(s.elems) == 1:
                return "SSet", x, cs.replace([Containment(x, s)], [Containment(x, Feature(s.rel, s.elems[0]))])
    return None


def _r_sdup(cs, idx):
    for x in sorted(idx.sets):
        for s in sorted(idx.sets[x], key=repr):
            uniq = tuple(dict.fromkeys(s.elems))
            if len(uniq) < len(s.elems):
                return "SDup", x, cs.replace([Containment(x, s)], [Containment(x, SetDesc(s.rel, uniq))])
    return None


def _r_sforall(cs, idx):
    for x in sorted(idx.forall_prop):
        for f, p in sorted(idx.forall_prop[x], key=repr):
            if not _is_cbar(p):
                continue
            for s in sorted(idx.sets.get(x, ()), key=repr):
                if s.rel != f:
                    continue
                missing = [e.name for e in s.elems if not idx.entails(e.name, p)]
                if missing:
                    adds = [Containment(e.name, p) for e in s.elems]
                    return "SForall", x, cs.replace([Containment(x, Forall(f, p))], adds)
    return None


def _r_ssete(cs, idx):
    for x in sorted(idx.exists):
        for f, y in sorted(idx.exists[x]):
            for s in sorted(idx.sets.get(x, ()), key=repr):
                if s.rel != f:
                    continue
                choices = tuple(e.name for e in s.elems)
                if any(idx.same(y, e) for e in choices):
                    continue
                d = Disjunctive(y, choices)
                if d not in cs:
                    return "SSetE", x, cs.replace((), [d])
    return None


def _r_ssetset(cs, idx):
    for x in sorted(idx.sets):
        sets = sorted(idx.sets[x], key=lambda s: (len(s.elems), repr(s)))
        for i, small in enumerate(sets):
            for large in sets[i + 1:]:
                if large.rel != small.rel:
                    continue
                xs = tuple(e.name for e in small.elems)
                ys = tuple(e.name for e in large.elems)
                adds = [Disjunctive(v, ys) for v in xs if v not in ys]
                adds += [Disjunctive(v, xs) for v in ys if v not in xs]
                return "SSetSet", x, cs.replace([Containment(x, large)], adds)
    return None


def _r_subset(cs, idx):
    for x, t in idx.supersets:
        for yi in sorted(idx.succ_of(t.var, t.sub_rel)):
            if not idx.entails(x, Exists(t.rel, Var(yi))):
                return "Subset", x, cs.replace((), [Containment(x, Exists(t.rel, Var(yi)))])
    return None


def _r_union_side(cs, idx, left: bool):
    for x, t in idx.unions:
        sup = Superset(t.rel, t.left_rel, t.left_var) if left else Superset(t.rel, t.right_rel, t.right_var)
        if not idx.has(x, sup):
            return ("UnionLeft" if left else "UnionRight"), x, cs.replace((), [Containment(x, sup)])
    return None


def _r_isectdown(cs, idx):
    for x, t in idx.isects:
        for xi in sorted(idx.succ_of(x, t.rel)):
            g = Exists(t.left_rel, Var(xi))
            h = Exists(t.right_rel, Var(xi))
            if not idx.entails(t.left_var, g) or not idx.entails(t.right_var, h):
                return "IsectDown", x, cs.replace((), [Containment(t.left_var, g), Containment(t.right_var, h)])
    return None


def _r_isectup(cs, idx):
    for x, t in idx.isects:
        common = idx.succ_of(t.left_var, t.left_rel) & idx.succ_of(t.right_var, t.right_rel)
        for xi in sorted(common):
            if not idx.entails(x, Exists(t.rel, Var(xi))):
                return "IsectUp", x, cs.replace((), [Containment(x, Exists(t.rel, Var(xi)))])
    return None


def _r_sdis(cs, idx):
    for d in idx.disjunctions:
        if any(idx.same(d.var, c) for c in d.choices):
            continue
        branches = tuple(cs.replace((), [_eq(d.var, c)]) for c in d.choices)
        return "SDis", d.var, branches
    return None


def _r_uniondown(cs, idx):
    for x, t in idx.unions:
        for xi in sorted(idx.succ_of(x, t.rel)):
            g = Exists(t.left_rel, Var(xi))
            h = Exists(t.right_rel, Var(xi))
            if not idx.entails(t.left_var, g) and not idx.entails(t.right_var, h):
                return "UnionDown", x, (cs.replace((), [Containment(t.left_var, g)]),
                                        cs.replace((), [Containment(t.right_var, h)]))
    return None


_DETERMINISTIC = (
    _r_sequals, _r_sconst, _r_sfeat, _r_sexists, _r_sforalle, _r_ssetf, _r_sset, _r_sdup,
    _r_sforall, _r_ssete, _r_ssetset, _r_subset,
    lambda cs, idx: _r_union_side(cs, idx, True),
    lambda cs, idx: _r_union_side(cs, idx, False),
    _r_isectdown, _r_isectup,
)
_BRANCHING = (_r_sdis, _r_uniondown)


def simplify_step(cs: ConstraintSystem) -> Unchanged | Deterministic | Branch:
    """Apply the first applicable simplification rule in priority order."""
    idx = cs.index
    for rule in _DETERMINISTIC:
        res = rule(cs, idx)
        if res is not None:
            name, var, new = res
            return Deterministic(new, name, var)
    for rule in _BRANCHING:
        res = rule(cs, idx)
        if res is not None:
            name, var, systems = res
            return Branch(systems, name, var)
    return Unchanged()


def is_normal_form(cs: ConstraintSystem) -> bool:
    return isinstance(simplify_step(cs), Unchanged)


# search

def default_root(term: Term) -> str:
    used = free_vars(term)
    if "x" not in used:
        return "x"
    i = 0
    while f"_{i}" in used:
        i += 1
    return f"_{i}"


def solve(term: Term, root: str | None = None, config: SolverConfig | None = None,
          extra_atoms: Iterable[str] = ()) -> SolveResult:
    """Decide consistency of ``term`` from the system ``{root = term}``."""
    config = config or SolverConfig()
    term = desugar(term)
    root = root if root is not None else default_root(term)
    if root in free_vars(term):
        raise ValueError(f"root variable {root!r} occurs in the term")
    atoms = sorted({n for k, n in names(term) if k == "atom"} | set(extra_atoms))
    return solve_system(ConstraintSystem([Containment(root, term)]), config, root=root, extra_atoms=atoms)


def solve_system(cs: ConstraintSystem, config: SolverConfig | None = None, root: str = "x",
                 extra_atoms: Iterable[str] = ()) -> SolveResult:
    config = config or SolverConfig()
    rng = random.Random(config.seed) if config.seed is not None else None
    trace: list[str] | None = [] if config.trace else None
    basic = to_basic(cs, trace)
    steps = len(trace) if trace is not None else _decomposition_steps(cs)
    allowed = basic.variables
    clashes: list[Clash] = []
    branches = 1
    # stack of (system, label); label marks a branch opening for the trace
    stack: list[tuple[ConstraintSystem, str | None]] = [(basic, None)]
    while stack:
        current, label = stack.pop()
        if label is not None and trace is not None:
            trace.append(f"open {label}")
        while True:
            clash = detect_clash(current)
            if clash is not None:
                clashes.append(clash)
                if trace is not None:
                    trace.append(f"close {clash}")
                break
            step = simplify_step(current)
            if isinstance(step, Unchanged):
                model = extract_model(current, extra_atoms)
                return Consistent(current, model, tuple(trace or ()), steps, root)
            steps += 1
            if steps > config.max_steps:
                raise StepBudgetExceeded(f"more than {config.max_steps} rule applications")
            if trace is not None:
                trace.append(f"{step.rule} @ {step.var}")
            if isinstance(step, Deterministic):
                current = step.system
            else:
                order = list(range(len(step.systems)))
                if rng is not None:
                    rng.shuffle(order)
                k = len(order)
                for pos in reversed(range(1, k)):
                    i = order[pos]
                    stack.append((step.systems[i], f"{step.rule} @ {step.var} [{i + 1}/{k}]"))
                branches += k - 1
                current = step.systems[order[0]]
                if trace is not None:
                    trace.append(f"open {step.rule} @ {step.var} [{order[0] + 1}/{k}]")
            if not current.variables <= allowed:
                raise AssertionError("simplification introduced a new variable")
    return Inconsistent(tuple(clashes), branches, tuple(trace or ()), steps, root)


def _decomposition_steps(cs: ConstraintSystem) -> int:
    t: list[str] = []
    to_basic(cs, t)
    return len(t)


# models

def extract_model(cs: ConstraintSystem, extra_atoms: Iterable[str] = ()) -> Model:
    """The canonical model of a clash-free normal form.

    One element per equivalence class of variables, named ``$rep`` after
    the least member, except that a class entailed equal to an atom is
    that atom. Unbound constants get elements ``#c`` of their own.
    """
    if detect_clash(cs) is not None:
        raise ValueError("system contains a clash")
    if not is_normal_form(cs):
        raise ValueError("system is not in normal form")
    k = _Classes(cs)
    variables = sorted(cs.variables)
    members: dict[str, list[str]] = defaultdict(list)
    for v in variables:
        members[k.find(v)].append(v)
    atom_names = set(extra_atoms)
    const_names: set[str] = set()
    concept_names: set[str] = set()
    rel_names: set[str] = set()
    for c in cs.constraints:
        if isinstance(c, Containment):
            for kind, n in names(c.term):
                if kind == "atom":
                    atom_names.add(n)
                elif kind == "constant":
                    const_names.add(n)
                elif kind == "concept":
                    concept_names.add(n)
                elif kind == "relation":
                    rel_names.add(n)
    elem: dict[str, str] = {}
    for r, vs in members.items():
        atoms = k.atoms.get(r)
        elem[r] = sorted(atoms)[0] if atoms else "$" + min(vs)
    universe = sorted(atom_names) + sorted({e for e in elem.values() if e not in atom_names})
    var_map = {v: elem[k.find(v)] for v in variables}
    const_map: dict[str, str] = {}
    for r in sorted(k.consts):
        for c in k.consts[r]:
            const_map[c] = elem[r]
    for c in sorted(const_names - const_map.keys()):
        const_map[c] = "#" + c
        universe.append("#" + c)
    concepts: dict[str, set[str]] = {C: set() for C in concept_names - {TOP, BOT}}
    for r in k.concepts:
        for C in k.concepts[r]:
            if C not in (TOP, BOT):
                concepts.setdefault(C, set()).add(elem[r])
    relations: dict[str, set[tuple[str, str]]] = {f: set() for f in rel_names}
    for (r, f), ys in k.succ.items():
        for y in ys:
            relations.setdefault(f, set()).add((elem[r], elem[y]))
    interp = Interpretation(universe, {a: a for a in sorted(atom_names)}, relations)
    return Model(interp, Assignment(var_map, const_map, concepts))


def trace_text(result: SolveResult) -> str:
    return "".join(line + "\n" for line in result.trace)


def dump_result(result: SolveResult) -> str:
    if isinstance(result, Consistent):
        return "CONSISTENT"
    clash = result.clashes_per_branch[0] if result.clashes_per_branch else None
    return f"INCONSISTENT {clash}" if clash else "INCONSISTENT"


def model_bound(term: Term, root: str | None = None) -> int:
    """Fresh elements that always suffice for a model of ``{root = term}``.

    The canonical model built from a normal form has at most one element
    per variable of the decomposed system, and simplification never adds
    variables, so that count is a complete search bound.
    """
    term = desugar(term)
    root = root if root is not None else default_root(term)
    return len(to_basic(ConstraintSystem([Containment(root, term)])).variables)


__all__ = [
    "Branch", "Clash", "Consistent", "Deterministic", "Inconsistent", "RULES", "SolveResult",
    "SolverConfig", "StepBudgetExceeded", "Unchanged", "all_clashes", "constraint_text",
    "default_root", "detect_clash", "dump_result", "extract_model", "is_basic", "is_normal_form",
    "model_bound", "simplify_step", "solve", "solve_system", "to_basic", "trace_text",
]
