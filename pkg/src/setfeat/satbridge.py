"""Propositional satisfiability as term consistency.

Each propositional variable ``a`` becomes the logic variable ``$xa``; a
root object has an f-successor whose f-values are exactly ``{true, false}``
and include every ``$xa``, so each ``$xa`` is one of the two atoms.

Two evaluation schemes are provided. ``tau`` is the textbook
construction. It breaks as soon as a formula contains negation or
disjunction: its auxiliary variables ``$xi`` are forced to be atoms, yet
it also places ``some f:`` constraints on them, and atoms have no
successors. ``gate_tau`` keeps the same truth-assignment part but
evaluates every connective through a set-equation gate whose output is a
fresh ``$xi``:

    ~S       some f: (v(S) & !$xi)                   $xi differs from v(S)
    S \\/ T   some f: (f: {v(S), v(T), false} & f: {$xi, false})
    S /\\ T   some f: (f: {v(S), v(T), true} & f: {$xi, true})

The last two hold exactly when ``{v(S), v(T), false} = {$xi, false}``
(resp. with ``true``), which pins ``$xi`` to the disjunction (conjunction)
of the two inputs. ``encode`` uses the gate scheme unless asked otherwise.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .terms import Atom, Exists, Feature, Not, SetDesc, Term, Var, conj

RESERVED = {"true", "false"}
MAX_TRUTH_TABLE_VARS = 20


class PropFormula:
    __slots__ = ()

    def __and__(self, other: PropFormula) -> PropFormula:
        return PAnd(self, other)

    def __or__(self, other: PropFormula) -> PropFormula:
        return POr(self, other)

    def __invert__(self) -> PropFormula:
        return PNot(self)


@dataclass(frozen=True)
class PVar(PropFormula):
    name: str


@dataclass(frozen=True)
class PNot(PropFormula):
    arg: PropFormula


@dataclass(frozen=True)
class PAnd(PropFormula):
    left: PropFormula
    right: PropFormula


@dataclass(frozen=True)
class POr(PropFormula):
    left: PropFormula
    right: PropFormula


def prop_vars(phi: PropFormula) -> list[str]:
    """Variables in order of first occurrence."""
    out: dict[str, None] = {}

    def walk(p):
        if isinstance(p, PVar):
            out.setdefault(p.name)
        elif isinstance(p, PNot):
            walk(p.arg)
        else:
            walk(p.left)
            walk(p.right)

    walk(phi)
    return list(out)


def evaluate(phi: PropFormula, row: dict[str, bool]) -> bool:
    if isinstance(phi, PVar):
        return row[phi.name]
    if isinstance(phi, PNot):
        return not evaluate(phi.arg, row)
    if isinstance(phi, PAnd):
        return evaluate(phi.left, row) and evaluate(phi.right, row)
    return evaluate(phi.left, row) or evaluate(phi.right, row)


def truth_table_sat(phi: PropFormula) -> bool:
    names = sorted(prop_vars(phi))
    if len(names) > MAX_TRUTH_TABLE_VARS:
        raise ValueError(f"too many variables for a truth table ({len(names)})")
    for bits in itertools.product((False, True), repeat=len(names)):
        if evaluate(phi, dict(zip(names, bits))):
            return True
    return False


def prop_size(phi: PropFormula) -> int:
    if isinstance(phi, PVar):
        return 1
    if isinstance(phi, PNot):
        return 1 + prop_size(phi.arg)
    return 1 + prop_size(phi.left) + prop_size(phi.right)


def prop_depth(phi: PropFormula) -> int:
    if isinstance(phi, PVar):
        return 1
    if isinstance(phi, PNot):
        return 1 + prop_depth(phi.arg)
    return 1 + max(prop_depth(phi.left), prop_depth(phi.right))


# concrete syntax: a, ~p, p /\ q, p \/ q, parentheses

_PTOK = re.compile(r"\s*(?:(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>/\\|\\/|[~()]))")


class PropParseError(ValueError):
    pass


def parse_prop(text: str) -> PropFormula:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _PTOK.match(text, pos)
        if m is None or m.end() == pos:
            raise PropParseError(f"unexpected character at column {pos + 1}: {text[pos:pos + 1]!r}")
        toks.append(m.group("id") or m.group("op"))
        pos = m.end()
    toks.append(None)
    i = 0

    def peek():
        return toks[i]

    def take(expected=None):
        nonlocal i
        tok = toks[i]
        if expected is not None and tok != expected:
            raise PropParseError(f"expected {expected!r}, found {tok or 'end of input'!r}")
        i += 1
        return tok

    def disj():
        left = conj_()
        while peek() == "\\/":
            take()
            left = POr(left, conj_())
        return left

    def conj_():
        left = unary()
        while peek() == "/\\":
            take()
            left = PAnd(left, unary())
        return left

    def unary():
        tok = peek()
        if tok == "~":
            take()
            return PNot(unary())
        if tok == "(":
            take()
            inner = disj()
            take(")")
            return inner
        if tok is None or tok in ("/\\", "\\/", ")"):
            raise PropParseError(f"expected a formula, found {tok or 'end of input'!r}")
        take()
        return PVar(tok)

    phi = disj()
    if peek() is not None:
        raise PropParseError(f"unexpected {peek()!r} after formula")
    return phi


def render_prop(phi: PropFormula) -> str:
    if isinstance(phi, PVar):
        return phi.name
    if isinstance(phi, PNot):
        return "~" + render_prop(phi.arg)
    op = "/\\" if isinstance(phi, PAnd) else "\\/"
    return f"({render_prop(phi.left)} {op} {render_prop(phi.right)})"


def read_dimacs(text: str) -> PropFormula:
    """A CNF in DIMACS format; variable n is named ``vn``."""
    clauses: list[list[int]] = []
    current: list[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line[0] in "cp%":
            continue
        for tok in line.split():
            n = int(tok)
            if n == 0:
                if current:
                    clauses.append(current)
                current = []
            else:
                current.append(n)
    if current:
        clauses.append(current)
    if not clauses:
        raise PropParseError("no clauses")

    def lit(n: int) -> PropFormula:
        v = PVar(f"v{abs(n)}")
        return v if n > 0 else PNot(v)

    out = None
    for clause in clauses:
        c = lit(clause[0])
        for n in clause[1:]:
            c = POr(c, lit(n))
        out = c if out is None else PAnd(out, c)
    return out


# encodings

REL = "f"
TRUE, FALSE = Atom("true"), Atom("false")


@dataclass(frozen=True)
class Encoding:
    term: Term
    var_map: dict
    eval_vars: tuple[str, ...]
    scheme: str = "gate"


def logic_var(name: str) -> str:
    if name in RESERVED:
        raise ValueError(f"propositional variable {name!r} collides with a reserved atom")
    return "x" + name


def _check_names(phi: PropFormula) -> dict[str, str]:
    return {a: logic_var(a) for a in prop_vars(phi)}


def tau(phi: PropFormula) -> tuple[Term, tuple[str, ...]]:
    """The textbook evaluation term and its auxiliary variables."""
    _check_names(phi)
    fresh: list[str] = []

    def walk(p) -> Term:
        if isinstance(p, PVar):
            return Var(logic_var(p.name))
        if isinstance(p, PAnd):
            return conj(walk(p.left), walk(p.right))
        if isinstance(p, POr):
            s, t = walk(p.left), walk(p.right)
            fresh.append(f"x{len(fresh) + 1}")
            xi = Var(fresh[-1])
            return conj(xi, Exists(REL, conj(SetDesc(REL, (s, t)), Exists(REL, xi))))
        s = walk(p.arg)
        fresh.append(f"x{len(fresh) + 1}")
        xi = Var(fresh[-1])
        return conj(xi, Exists(REL, conj(s, Not(xi))))

    return walk(phi), tuple(fresh)


def gate_tau(phi: PropFormula) -> tuple[Term, tuple[Term, ...], tuple[str, ...]]:
    """Output variable term, gate side constraints, auxiliary variables."""
    _check_names(phi)
    fresh: list[str] = []
    sides: list[Term] = []

    def walk(p) -> Var:
        if isinstance(p, PVar):
            return Var(logic_var(p.name))
        if isinstance(p, PNot):
            s = walk(p.arg)
            fresh.append(f"x{len(fresh) + 1}")
            xi = Var(fresh[-1])
            sides.append(Exists(REL, conj(s, Not(xi))))
            return xi
        s, t = walk(p.left), walk(p.right)
        fresh.append(f"x{len(fresh) + 1}")
        xi = Var(fresh[-1])
        unit = FALSE if isinstance(p, POr) else TRUE
        sides.append(Exists(REL, conj(SetDesc(REL, (s, t, unit)), SetDesc(REL, (xi, unit)))))
        return xi

    out = walk(phi)
    return out, tuple(sides), tuple(fresh)


def delta(phi: PropFormula, eval_vars: tuple[str, ...] = ()) -> Term:
    names = sorted(_check_names(phi).values())
    parts: list[Term] = [SetDesc(REL, (TRUE, FALSE))]
    parts += [Exists(REL, Var(v)) for v in names]
    parts += [Exists(REL, Var(v)) for v in eval_vars]
    return conj(*parts)


def encode(phi: PropFormula, scheme: str = "gate") -> Encoding:
    var_map = _check_names(phi)
    if scheme == "direct":
        t, fresh = tau(phi)
        term = conj(Exists(REL, delta(phi, fresh)), Exists(REL, conj(TRUE, t)))
    elif scheme == "gate":
        out, sides, fresh = gate_tau(phi)
        term = conj(Exists(REL, delta(phi, fresh)), Exists(REL, conj(TRUE, out)), *sides)
    else:
        raise ValueError(f"unknown scheme {scheme!r}")
    return Encoding(term, var_map, fresh, scheme)


def assignment_from_model(enc: Encoding, model) -> dict[str, bool]:
    """Read the truth assignment off a model of the encoding."""
    return {a: model.var(x) == model.atom("true") for a, x in enc.var_map.items()}


# formula families

def all_formulas(names=("a", "b", "c"), depth: int = 3) -> list[PropFormula]:
    """Every formula over ``names`` with structural depth at most ``depth``.

    A variable has depth 1.
    """
    level: list[PropFormula] = [PVar(n) for n in names]
    for _ in range(depth - 1):
        prev = level
        level = [PVar(n) for n in names]
        level += [PNot(p) for p in prev]
        level += [PAnd(p, q) for p in prev for q in prev]
        level += [POr(p, q) for p in prev for q in prev]
    return level


def random_formula(rng, n_vars: int = 6, max_depth: int = 4) -> PropFormula:
    names = [chr(ord("a") + i) for i in range(n_vars)]

    def gen(d):
        if d <= 1 or rng.random() < 0.25:
            return PVar(rng.choice(names))
        k = rng.random()
        if k < 0.2:
            return PNot(gen(d - 1))
        cls = PAnd if k < 0.6 else POr
        return cls(gen(d - 1), gen(d - 1))

    return gen(max_depth)
