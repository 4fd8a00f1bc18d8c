"""Translation into function-free first-order logic with an exists-forall prefix.

``translate`` follows the standard structural translation clause by
clause. Cases it leaves open (variables, constants, concepts, universal
quantification over anything but an atom or negated atom, fixed-cardinality
sets, intersection, superset) are filled in the same style and marked
``extrapolated``.

Every existential introduced by the translation sits at the top level,
because universal role quantification only ranges over primitive bodies.
Free logic variables of the output are therefore Skolem constants, and
each emitted formula is a block of universal quantifiers over a
quantifier-free matrix.

``sb_satisfiable`` decides the result by its finite-model property: a
model exists iff one exists whose elements are all named by constant
symbols. The ground problem over that domain is handed to a SAT solver.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

from .cnf import CNF, FALSE, TRUE, neg
from .terms import (
    BOT,
    TOP,
    Atom,
    Concept,
    Conj,
    Const,
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


class GroundBudgetExceeded(RuntimeError):
    """The ground problem is larger than the configured budget."""


# symbols and formulas

@dataclass(frozen=True)
class Sym:
    name: str
    kind: str  # "var" (existential), "atom", "const" or "bound"


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class FTrue(Formula):
    pass


@dataclass(frozen=True)
class FFalse(Formula):
    pass


@dataclass(frozen=True)
class FRel(Formula):
    rel: str
    left: Sym
    right: Sym


@dataclass(frozen=True)
class FPred(Formula):
    concept: str
    arg: Sym


@dataclass(frozen=True)
class FEq(Formula):
    left: Sym
    right: Sym


@dataclass(frozen=True)
class FNot(Formula):
    arg: Formula


@dataclass(frozen=True)
class FAnd(Formula):
    args: tuple[Formula, ...]


@dataclass(frozen=True)
class FOr(Formula):
    args: tuple[Formula, ...]


@dataclass(frozen=True)
class FImp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class FAll(Formula):
    vars: tuple[str, ...]
    body: Formula


@dataclass(frozen=True)
class FEx(Formula):
    vars: tuple[str, ...]
    body: Formula


def neq(a: Sym, b: Sym) -> Formula:
    return FNot(FEq(a, b))


@dataclass(frozen=True)
class Clause:
    name: str
    formula: Formula
    extrapolated: bool = False
    source: str = ""


@dataclass
class TranslationOutput:
    root: str
    existentials: tuple[str, ...]
    formulas: list[Clause]
    axioms: list[Clause]
    symbols: dict[str, frozenset[str]] = field(default_factory=dict)

    @property
    def clauses(self) -> list[Clause]:
        return self.formulas + self.axioms

    @property
    def extrapolated(self) -> list[str]:
        return [c.name for c in self.formulas if c.extrapolated]


# translation

class _Translator:
    def __init__(self, taken: set[str]):
        self.taken = set(taken)
        self.counter = 0
        self.existentials: list[str] = []
        self.out: list[tuple[Formula, bool]] = []

    def fresh(self) -> Sym:
        while True:
            self.counter += 1
            name = f"n{self.counter}"
            if name not in self.taken:
                self.taken.add(name)
                self.existentials.append(name)
                return Sym(name, "var")

    def arg(self, t: Term) -> Sym:
        """Reuse a variable argument, otherwise introduce and constrain a new one."""
        if isinstance(t, Var):
            return Sym(t.name, "var")
        y = self.fresh()
        self.emit(y, t)
        return y

    def add(self, formula: Formula, extrapolated: bool) -> None:
        self.out.append((formula, extrapolated))

    def emit(self, x: Sym, t: Term) -> None:
        Y = Sym("Y", "bound")
        Z = Sym("Z", "bound")
        if isinstance(t, Conj):
            self.emit(x, t.left)
            self.emit(x, t.right)
        elif isinstance(t, (Var, Atom, Const, Concept, Not)):
            formula, printed = primitive(x, t)
            self.add(formula, not printed)
        elif isinstance(t, Feature):
            y = self.arg(t.body)
            self.add(FRel(t.rel, x, y), False)
            self.add(FAll(("Y",), FImp(FRel(t.rel, x, Y), FEq(y, Y))), False)
        elif isinstance(t, Exists):
            y = self.arg(t.body)
            self.add(FRel(t.rel, x, y), False)
        elif isinstance(t, Forall):
            body, _ = primitive(Y, t.body)
            base = t.body.arg if isinstance(t.body, Not) else t.body
            self.add(FAll(("Y",), FImp(FRel(t.rel, x, Y), body)), not isinstance(base, Atom))
        elif isinstance(t, (SetDesc, FixedSet)):
            fixed = isinstance(t, FixedSet)
            members = [self.arg(e) for e in t.elems]
            for m in members:
                self.add(FRel(t.rel, x, m), fixed)
            self.add(FAll(("Y",), FImp(FRel(t.rel, x, Y), _or([FEq(Y, m) for m in members]))), fixed)
            if fixed:
                for a, b in itertools.combinations(members, 2):
                    self.add(neq(a, b), True)
        elif isinstance(t, Union):
            y, z = Sym(t.left_var, "var"), Sym(t.right_var, "var")
            self.add(FAll(("Y",), FImp(FRel(t.rel, x, Y), FOr((FRel(t.left_rel, y, Y), FRel(t.right_rel, z, Y))))), False)
            self.add(FAll(("Y",), FImp(FRel(t.left_rel, y, Y), FRel(t.rel, x, Y))), False)
            self.add(FAll(("Y",), FImp(FRel(t.right_rel, z, Y), FRel(t.rel, x, Y))), False)
        elif isinstance(t, Intersection):
            y, z = Sym(t.left_var, "var"), Sym(t.right_var, "var")
            self.add(FAll(("Y",), FImp(FRel(t.rel, x, Y), FRel(t.left_rel, y, Y))), True)
            self.add(FAll(("Y",), FImp(FRel(t.rel, x, Y), FRel(t.right_rel, z, Y))), True)
            self.add(FAll(("Y",), FImp(FAnd((FRel(t.left_rel, y, Y), FRel(t.right_rel, z, Y))),
                                       FRel(t.rel, x, Y))), True)
        elif isinstance(t, Superset):
            y = Sym(t.var, "var")
            self.add(FAll(("Y",), FImp(FRel(t.sub_rel, y, Y), FRel(t.rel, x, Y))), True)
        elif isinstance(t, Disjointness):
            y, z = Sym(t.left_var, "var"), Sym(t.right_var, "var")
            self.add(FAll(("Y", "Z"), FImp(FAnd((FRel(t.left_rel, y, Y), FRel(t.right_rel, z, Z))),
                                           neq(Y, Z))), False)
        else:
            raise TypeError(f"cannot translate {t!r}")


def _or(args: list[Formula]) -> Formula:
    return args[0] if len(args) == 1 else FOr(tuple(args))


def primitive(x: Sym, t: Term) -> tuple[Formula, bool]:
    """Quantifier-free translation of ``x = P``; the flag says whether it is printed."""
    if isinstance(t, Var):
        return FEq(x, Sym(t.name, "var")), False
    if isinstance(t, Atom):
        return FEq(x, Sym(t.name, "atom")), True
    if isinstance(t, Const):
        return FEq(x, Sym(t.name, "const")), False
    if isinstance(t, Concept):
        if t.name == TOP:
            return FTrue(), False
        if t.name == BOT:
            return FFalse(), False
        return FPred(t.name, x), False
    if isinstance(t, Not):
        inner, printed = primitive(x, t.arg)
        return FNot(inner), printed
    raise TypeError(f"not a primitive: {t!r}")


def translate(root: str, term: Term) -> TranslationOutput:
    term = desugar(term)
    if root in free_vars(term):
        raise ValueError(f"root variable {root!r} occurs in the term")
    tr = _Translator(free_vars(term) | {root})
    tr.emit(Sym(root, "var"), term)
    existentials = sorted(free_vars(term) | {root}) + tr.existentials
    formulas = [Clause(f"tr_{i}", f, ex) for i, (f, ex) in enumerate(tr.out, 1)]
    symbols = {k: frozenset(n for kk, n in names(term) if kk == k)
               for k in ("relation", "atom", "constant", "concept")}
    return TranslationOutput(root, tuple(existentials), formulas, axioms(term), symbols)


def axioms(term: Term) -> list[Clause]:
    atoms = sorted({n for k, n in names(term) if k == "atom"})
    rels = sorted({n for k, n in names(term) if k == "relation"})
    consts = sorted({n for k, n in names(term) if k == "constant"})
    out: list[tuple[Formula, bool]] = []
    Y = Sym("Y", "bound")
    for a in atoms:
        for f in rels:
            out.append((FAll(("Y",), FNot(FRel(f, Sym(a, "atom"), Y))), False))
    for a, b in itertools.combinations(atoms, 2):
        out.append((neq(Sym(a, "atom"), Sym(b, "atom")), False))
    for c, d in itertools.combinations(consts, 2):
        out.append((neq(Sym(c, "const"), Sym(d, "const")), True))
    return [Clause(f"ax_{i}", f, ex) for i, (f, ex) in enumerate(out, 1)]


# prefix class

def quantifier_free(f: Formula) -> bool:
    if isinstance(f, (FAll, FEx)):
        return False
    if isinstance(f, FNot):
        return quantifier_free(f.arg)
    if isinstance(f, (FAnd, FOr)):
        return all(quantifier_free(a) for a in f.args)
    if isinstance(f, FImp):
        return quantifier_free(f.left) and quantifier_free(f.right)
    return True


def is_universal(f: Formula) -> bool:
    """A universal block over a quantifier-free matrix (or just the matrix)."""
    while isinstance(f, FAll):
        f = f.body
    return quantifier_free(f)


def in_sb_class(f: Formula) -> bool:
    """Exists-forall prefix over a quantifier-free matrix."""
    while isinstance(f, FEx):
        f = f.body
    return is_universal(f)


def _rename_bound(f: Formula, mapping: dict[str, str]) -> Formula:
    def sym(s: Sym) -> Sym:
        return Sym(mapping[s.name], "bound") if s.kind == "bound" else s

    if isinstance(f, FRel):
        return FRel(f.rel, sym(f.left), sym(f.right))
    if isinstance(f, FPred):
        return FPred(f.concept, sym(f.arg))
    if isinstance(f, FEq):
        return FEq(sym(f.left), sym(f.right))
    if isinstance(f, FNot):
        return FNot(_rename_bound(f.arg, mapping))
    if isinstance(f, (FAnd, FOr)):
        return type(f)(tuple(_rename_bound(a, mapping) for a in f.args))
    if isinstance(f, FImp):
        return FImp(_rename_bound(f.left, mapping), _rename_bound(f.right, mapping))
    return f


def prenex(out: TranslationOutput, with_axioms: bool = True) -> Formula:
    """The whole output as one sentence with an exists-forall prefix."""
    universals: list[str] = []
    matrices: list[Formula] = []
    clauses = out.clauses if with_axioms else out.formulas
    for c in clauses:
        f = c.formula
        mapping = {}
        while isinstance(f, FAll):
            for v in f.vars:
                universals.append(f"Y{len(universals) + 1}")
                mapping[v] = universals[-1]
            f = f.body
        matrices.append(_rename_bound(f, mapping))
    body: Formula = FAnd(tuple(matrices)) if matrices else FTrue()
    if universals:
        body = FAll(tuple(universals), body)
    existentials = tuple(out.existentials) + tuple(
        sorted({n for c in clauses for n in _free_syms(c.formula, "var")} - set(out.existentials)))
    return FEx(existentials, body) if existentials else body


def _free_syms(f: Formula, kind: str) -> set[str]:
    if isinstance(f, FRel):
        return {s.name for s in (f.left, f.right) if s.kind == kind}
    if isinstance(f, FPred):
        return {f.arg.name} if f.arg.kind == kind else set()
    if isinstance(f, FEq):
        return {s.name for s in (f.left, f.right) if s.kind == kind}
    if isinstance(f, FNot):
        return _free_syms(f.arg, kind)
    if isinstance(f, (FAnd, FOr)):
        return set().union(*(_free_syms(a, kind) for a in f.args)) if f.args else set()
    if isinstance(f, FImp):
        return _free_syms(f.left, kind) | _free_syms(f.right, kind)
    if isinstance(f, (FAll, FEx)):
        return _free_syms(f.body, kind)
    return set()


# text format

_PLAIN = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


def _quote(name: str) -> str:
    return name if _PLAIN.match(name) else "'" + name.replace("\\", "\\\\").replace("'", "\\'") + "'"


def _sym_text(s: Sym) -> str:
    if s.kind == "bound":
        return s.name
    prefix = {"var": "$", "atom": "", "const": "#"}[s.kind]
    return _quote(prefix + s.name)


def formula_text(f: Formula) -> str:
    if isinstance(f, FTrue):
        return "$true"
    if isinstance(f, FFalse):
        return "$false"
    if isinstance(f, FRel):
        return f"{_quote(f.rel)}({_sym_text(f.left)}, {_sym_text(f.right)})"
    if isinstance(f, FPred):
        return f"{_quote(f.concept)}({_sym_text(f.arg)})"
    if isinstance(f, FEq):
        return f"{_sym_text(f.left)} = {_sym_text(f.right)}"
    if isinstance(f, FNot):
        if isinstance(f.arg, FEq):
            return f"{_sym_text(f.arg.left)} != {_sym_text(f.arg.right)}"
        return f"~{formula_text(f.arg)}"
    if isinstance(f, FAnd):
        return "(" + " & ".join(formula_text(a) for a in f.args) + ")"
    if isinstance(f, FOr):
        return "(" + " | ".join(formula_text(a) for a in f.args) + ")"
    if isinstance(f, FImp):
        return f"({formula_text(f.left)} => {formula_text(f.right)})"
    if isinstance(f, FAll):
        return f"![{', '.join(f.vars)}]: {formula_text(f.body)}"
    if isinstance(f, FEx):
        return f"?[{', '.join(f.vars)}]: {formula_text(f.body)}"
    raise TypeError(f"not a formula: {f!r}")


def to_text(out: TranslationOutput) -> str:
    lines = [
        f"% root: {_quote('$' + out.root)}",
        "% existentials (Skolem constants): " + ", ".join(_quote("$" + v) for v in out.existentials),
    ]
    for c in out.clauses:
        role = "hypothesis" if c.name.startswith("tr_") else "axiom"
        tag = "  % extrapolated" if c.extrapolated else ""
        lines.append(f"fof({c.name}, {role}, {formula_text(c.formula)}).{tag}")
    return "\n".join(lines) + "\n"


# ground satisfiability

def sb_satisfiable(out: TranslationOutput, budget: int = 200_000) -> bool:
    """Decide the translation plus axioms by grounding over a named domain.

    Raises GroundBudgetExceeded when the ground problem would exceed
    ``budget`` instances.
    """
    clauses = out.clauses
    consts: list[Sym] = []
    seen: set[Sym] = set()
    for v in out.existentials:
        s = Sym(v, "var")
        seen.add(s)
        consts.append(s)
    for c in clauses:
        for s in sorted(_all_syms(c.formula), key=lambda s: (s.kind, s.name)):
            if s.kind != "bound" and s not in seen:
                seen.add(s)
                consts.append(s)
    n = max(1, len(consts))
    cost = sum(n ** _n_bound(c.formula) for c in clauses)
    if cost > budget:
        raise GroundBudgetExceeded(f"{cost} ground instances exceed the budget of {budget}")
    g = _Grounder(consts, n)
    for c in clauses:
        g.assert_formula(c.formula)
    return g.cnf.solve() is not None


def _all_syms(f: Formula) -> set[Sym]:
    if isinstance(f, FRel):
        return {f.left, f.right}
    if isinstance(f, FPred):
        return {f.arg}
    if isinstance(f, FEq):
        return {f.left, f.right}
    if isinstance(f, FNot):
        return _all_syms(f.arg)
    if isinstance(f, (FAnd, FOr)):
        return set().union(*(_all_syms(a) for a in f.args)) if f.args else set()
    if isinstance(f, FImp):
        return _all_syms(f.left) | _all_syms(f.right)
    if isinstance(f, (FAll, FEx)):
        return _all_syms(f.body)
    return set()


def _n_bound(f: Formula) -> int:
    k = 0
    while isinstance(f, FAll):
        k += len(f.vars)
        f = f.body
    return k


class _Grounder:
    def __init__(self, consts: list[Sym], n: int):
        self.cnf = CNF()
        self.consts = consts
        self.n = n
        self.index = {s: i for i, s in enumerate(consts)}
        cnf = self.cnf
        # constant i denotes an element with index <= i (symmetry breaking)
        for i, s in enumerate(consts):
            cnf.exactly_one([self.at(s, d) for d in range(min(i + 1, n))])
        # an element is in the domain iff some constant names it
        self.used = []
        for d in range(n):
            u = cnf.or_([self.at(s, d) for s in consts])
            self.used.append(u)

    def at(self, s: Sym, d: int):
        if d > self.index[s]:
            return FALSE
        return self.cnf.var(("at", s, d))

    def rel(self, f: str, d: int, e: int):
        return self.cnf.var(("rel", f, d, e))

    def pred(self, c: str, d: int):
        return self.cnf.var(("pred", c, d))

    def elems(self, s: Sym, env: dict[str, int]) -> list[tuple[object, int]]:
        """(condition, element) pairs for where ``s`` may denote."""
        if s.kind == "bound":
            return [(TRUE, env[s.name])]
        return [(self.at(s, d), d) for d in range(self.n) if self.at(s, d) is not FALSE]

    def lit(self, f: Formula, env: dict[str, int]):
        cnf = self.cnf
        if isinstance(f, FTrue):
            return TRUE
        if isinstance(f, FFalse):
            return FALSE
        if isinstance(f, FRel):
            return cnf.or_([cnf.and_([ca, cb, self.rel(f.rel, da, db)])
                            for ca, da in self.elems(f.left, env) for cb, db in self.elems(f.right, env)])
        if isinstance(f, FPred):
            return cnf.or_([cnf.and_([ca, self.pred(f.concept, da)]) for ca, da in self.elems(f.arg, env)])
        if isinstance(f, FEq):
            return cnf.or_([cnf.and_([ca, cb]) for ca, da in self.elems(f.left, env)
                            for cb, db in self.elems(f.right, env) if da == db])
        if isinstance(f, FNot):
            return neg(self.lit(f.arg, env))
        if isinstance(f, FAnd):
            return cnf.and_([self.lit(a, env) for a in f.args])
        if isinstance(f, FOr):
            return cnf.or_([self.lit(a, env) for a in f.args])
        if isinstance(f, FImp):
            return cnf.or_([neg(self.lit(f.left, env)), self.lit(f.right, env)])
        raise TypeError(f"not quantifier-free: {f!r}")

    def assert_formula(self, f: Formula) -> None:
        bound: list[str] = []
        while isinstance(f, FAll):
            bound.extend(f.vars)
            f = f.body
        if not quantifier_free(f):
            raise ValueError("formula outside the exists-forall class")
        for ds in itertools.product(range(self.n), repeat=len(bound)):
            env = dict(zip(bound, ds))
            guards = [neg(self.used[d]) for d in ds]
            self.cnf.clause([*guards, self.lit(f, env)])
