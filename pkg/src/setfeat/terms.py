"""Feature terms with set descriptions: signature, term algebra, validation.

Terms are immutable dataclasses. Names are stored without their lexical
sigils (``$x`` is ``Var("x")``, ``#c`` is ``Const("c")``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

TOP = "Top"
BOT = "Bot"

KINDS = ("variable", "relation", "constant", "atom", "concept")


class KindError(ValueError):
    """A name was used with two different lexical kinds."""


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Atom(Term):
    name: str


@dataclass(frozen=True)
class Const(Term):
    name: str


@dataclass(frozen=True)
class Concept(Term):
    name: str


@dataclass(frozen=True)
class Not(Term):
    """Negation; well-formed only over Var, Atom, Const or Concept."""

    arg: Term


@dataclass(frozen=True)
class Feature(Term):
    rel: str
    body: Term


@dataclass(frozen=True)
class Exists(Term):
    rel: str
    body: Term


@dataclass(frozen=True)
class Forall(Term):
    rel: str
    body: Term


@dataclass(frozen=True)
class SetDesc(Term):
    rel: str
    elems: tuple[Term, ...]


@dataclass(frozen=True)
class FixedSet(Term):
    rel: str
    elems: tuple[Term, ...]


@dataclass(frozen=True)
class Union(Term):
    rel: str
    left_rel: str
    left_var: str
    right_rel: str
    right_var: str


@dataclass(frozen=True)
class Intersection(Term):
    rel: str
    left_rel: str
    left_var: str
    right_rel: str
    right_var: str


@dataclass(frozen=True)
class DisjointUnion(Term):
    rel: str
    left_rel: str
    left_var: str
    right_rel: str
    right_var: str


@dataclass(frozen=True)
class Superset(Term):
    rel: str
    sub_rel: str
    var: str


@dataclass(frozen=True)
class Disjointness(Term):
    left_rel: str
    left_var: str
    right_rel: str
    right_var: str


@dataclass(frozen=True)
class Conj(Term):
    left: Term
    right: Term


PRIMITIVES = (Var, Atom, Const, Concept)
SET_OPS = (Union, Intersection, DisjointUnion)


def is_primitive(term: Term) -> bool:
    return isinstance(term, PRIMITIVES)


def is_prop(term: Term) -> bool:
    """True for the restricted class allowed under ``all f:``."""
    if isinstance(term, Not):
        return is_primitive(term.arg)
    return is_primitive(term)


def conj(*terms: Term) -> Term:
    """Left-associated conjunction of one or more terms."""
    if not terms:
        raise ValueError("conj() needs at least one term")
    out = terms[0]
    for t in terms[1:]:
        out = Conj(out, t)
    return out


def conjuncts(term: Term) -> list[Term]:
    if isinstance(term, Conj):
        return conjuncts(term.left) + conjuncts(term.right)
    return [term]


@dataclass(frozen=True)
class Signature:
    variables: frozenset[str] = frozenset()
    relations: frozenset[str] = frozenset()
    constants: frozenset[str] = frozenset()
    atoms: frozenset[str] = frozenset()
    concepts: frozenset[str] = field(default=frozenset({TOP, BOT}))

    def __post_init__(self) -> None:
        for kind in KINDS:
            object.__setattr__(self, _plural(kind), frozenset(getattr(self, _plural(kind))))
        object.__setattr__(self, "concepts", self.concepts | {TOP, BOT})
        seen: dict[str, str] = {}
        for kind in KINDS:
            for name in getattr(self, _plural(kind)):
                if name in seen and seen[name] != kind:
                    raise KindError(f"name {name!r} declared as {seen[name]} and {kind}")
                seen[name] = kind

    def kind_of(self, name: str) -> str | None:
        for kind in KINDS:
            if name in getattr(self, _plural(kind)):
                return kind
        return None

    def declare(self, kind: str, name: str) -> Signature:
        current = self.kind_of(name)
        if current == kind:
            return self
        if current is not None:
            raise KindError(f"name {name!r} is a {current}, cannot reuse it as a {kind}")
        return self.merge(Signature(**{_plural(kind): frozenset({name})}))

    def merge(self, other: Signature) -> Signature:
        return Signature(**{
            _plural(k): getattr(self, _plural(k)) | getattr(other, _plural(k)) for k in KINDS
        })

    @classmethod
    def from_term(cls, term: Term) -> Signature:
        buckets: dict[str, set[str]] = {_plural(k): set() for k in KINDS}
        for kind, name in names(term):
            buckets[_plural(kind)].add(name)
        return cls(**{k: frozenset(v) for k, v in buckets.items()})


def _plural(kind: str) -> str:
    return "variables" if kind == "variable" else kind + "s"


def names(term: Term) -> Iterator[tuple[str, str]]:
    """Yield ``(kind, name)`` for every name occurrence, in syntactic order."""
    if isinstance(term, Var):
        yield "variable", term.name
    elif isinstance(term, Atom):
        yield "atom", term.name
    elif isinstance(term, Const):
        yield "constant", term.name
    elif isinstance(term, Concept):
        yield "concept", term.name
    elif isinstance(term, Not):
        yield from names(term.arg)
    elif isinstance(term, (Feature, Exists, Forall)):
        yield "relation", term.rel
        yield from names(term.body)
    elif isinstance(term, (SetDesc, FixedSet)):
        yield "relation", term.rel
        for e in term.elems:
            yield from names(e)
    elif isinstance(term, SET_OPS):
        yield "relation", term.rel
        yield "relation", term.left_rel
        yield "variable", term.left_var
        yield "relation", term.right_rel
        yield "variable", term.right_var
    elif isinstance(term, Superset):
        yield "relation", term.rel
        yield "relation", term.sub_rel
        yield "variable", term.var
    elif isinstance(term, Disjointness):
        yield "relation", term.left_rel
        yield "variable", term.left_var
        yield "relation", term.right_rel
        yield "variable", term.right_var
    elif isinstance(term, Conj):
        yield from names(term.left)
        yield from names(term.right)
    else:
        raise TypeError(f"not a term: {term!r}")


def free_vars(term: Term) -> frozenset[str]:
    return frozenset(n for k, n in names(term) if k == "variable")


def atoms_of(term: Term) -> frozenset[str]:
    return frozenset(n for k, n in names(term) if k == "atom")


def relations_of(term: Term) -> frozenset[str]:
    return frozenset(n for k, n in names(term) if k == "relation")


def size(term: Term) -> int:
    """Node count of the syntax tree.

    Every constructor is a node and so is every variable, atom, constant
    or concept occurrence, including the variable arguments of set
    operations. Relation symbols label nodes and are not counted.
    """
    if is_primitive(term):
        return 1
    if isinstance(term, Not):
        return 1 + size(term.arg)
    if isinstance(term, (Feature, Exists, Forall)):
        return 1 + size(term.body)
    if isinstance(term, (SetDesc, FixedSet)):
        return 1 + sum(size(e) for e in term.elems)
    if isinstance(term, SET_OPS) or isinstance(term, Disjointness):
        return 3
    if isinstance(term, Superset):
        return 2
    if isinstance(term, Conj):
        return 1 + size(term.left) + size(term.right)
    raise TypeError(f"not a term: {term!r}")


class Violation(NamedTuple):
    subterm: Term
    rule: str

    def __str__(self) -> str:
        return f"{self.rule}: {self.subterm!r}"


def validate(term: Term, sig: Signature | None = None) -> list[Violation]:
    """Return every way ``term`` departs from the grammar over ``sig``.

    An empty list means the term is well formed. With ``sig=None`` only
    the structural rules are checked.
    """
    out: list[Violation] = []
    _validate(term, sig, out)
    return out


def _check_name(sig, kind, name, term, out):
    if sig is None:
        return
    actual = sig.kind_of(name)
    if actual is None:
        out.append(Violation(term, f"undeclared {kind} {name!r}"))
    elif actual != kind:
        out.append(Violation(term, f"{name!r} is a {actual}, used as a {kind}"))


def _validate(term: Term, sig: Signature | None, out: list[Violation]) -> None:
    if isinstance(term, Var):
        _check_name(sig, "variable", term.name, term, out)
    elif isinstance(term, Atom):
        _check_name(sig, "atom", term.name, term, out)
    elif isinstance(term, Const):
        _check_name(sig, "constant", term.name, term, out)
    elif isinstance(term, Concept):
        _check_name(sig, "concept", term.name, term, out)
    elif isinstance(term, Not):
        if not is_primitive(term.arg):
            out.append(Violation(term, "negation of a non-primitive term"))
        _validate(term.arg, sig, out)
    elif isinstance(term, (Feature, Exists)):
        _check_name(sig, "relation", term.rel, term, out)
        _validate(term.body, sig, out)
    elif isinstance(term, Forall):
        _check_name(sig, "relation", term.rel, term, out)
        if not is_prop(term.body):
            out.append(Violation(term, "Forall body not in P"))
        _validate(term.body, sig, out)
    elif isinstance(term, (SetDesc, FixedSet)):
        _check_name(sig, "relation", term.rel, term, out)
        if not term.elems:
            out.append(Violation(term, "empty set description"))
        for e in term.elems:
            _validate(e, sig, out)
    elif isinstance(term, Conj):
        _validate(term.left, sig, out)
        _validate(term.right, sig, out)
    elif isinstance(term, (*SET_OPS, Superset, Disjointness)):
        for kind, name in names(term):
            _check_name(sig, kind, name, term, out)
    else:
        out.append(Violation(term, "unknown node"))


def desugar(term: Term) -> Term:
    """Rewrite every disjoint union into disjointness plus union."""
    if isinstance(term, DisjointUnion):
        return Conj(
            Disjointness(term.left_rel, term.left_var, term.right_rel, term.right_var),
            Union(term.rel, term.left_rel, term.left_var, term.right_rel, term.right_var),
        )
    if isinstance(term, Not):
        return term
    if isinstance(term, (Feature, Exists, Forall)):
        body = desugar(term.body)
        return term if body is term.body else type(term)(term.rel, body)
    if isinstance(term, (SetDesc, FixedSet)):
        elems = tuple(desugar(e) for e in term.elems)
        if all(a is b for a, b in zip(elems, term.elems)):
            return term
        return type(term)(term.rel, elems)
    if isinstance(term, Conj):
        left, right = desugar(term.left), desugar(term.right)
        if left is term.left and right is term.right:
            return term
        return Conj(left, right)
    return term
