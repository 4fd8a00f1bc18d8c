"""A small CNF builder over pycosat, with constant folding.

Literals are non-zero ints; TRUE and FALSE are folded away before any
clause reaches the solver.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import pycosat

TRUE = "T"
FALSE = "F"


class CNF:
    def __init__(self):
        self.nvars = 0
        self.clauses: list[list[int]] = []
        self.names: dict[object, int] = {}
        self.unsat = False

    def var(self, key: object = None) -> int:
        if key is not None and key in self.names:
            return self.names[key]
        self.nvars += 1
        if key is not None:
            self.names[key] = self.nvars
        return self.nvars

    def clause(self, lits: Iterable) -> None:
        out = []
        for lit in lits:
            if lit is TRUE:
                return
            if lit is FALSE:
                continue
            out.append(lit)
        if not out:
            self.unsat = True
        self.clauses.append(out)

    def implies(self, a, lits: Iterable) -> None:
        """a -> (l1 | l2 | ...)"""
        if a is FALSE:
            return
        self.clause([neg(a), *lits])

    def and_(self, lits: Sequence):
        lits = [l for l in lits if l is not TRUE]
        if any(l is FALSE for l in lits):
            return FALSE
        if not lits:
            return TRUE
        if len(lits) == 1:
            return lits[0]
        g = self.var()
        for l in lits:
            self.clause([-g, l])
        self.clause([g, *(-l for l in lits)])
        return g

    def or_(self, lits: Sequence):
        lits = [l for l in lits if l is not FALSE]
        if any(l is TRUE for l in lits):
            return TRUE
        if not lits:
            return FALSE
        if len(lits) == 1:
            return lits[0]
        g = self.var()
        self.clause([-g, *lits])
        for l in lits:
            self.clause([g, -l])
        return g

    def at_most_one(self, lits: Sequence) -> None:
        lits = [l for l in lits if l is not FALSE]
        for i, a in enumerate(lits):
            for b in lits[i + 1:]:
                self.clause([neg(a), neg(b)])

    def exactly_one(self, lits: Sequence) -> None:
        self.clause(lits)
        self.at_most_one(lits)

    def solve(self) -> dict[int, bool] | None:
        if self.unsat:
            return None
        sol = pycosat.solve([c for c in self.clauses], vars=self.nvars)
        if sol == "UNSAT":
            return None
        if sol == "UNKNOWN":
            raise RuntimeError("SAT solver gave up")
        return {abs(l): l > 0 for l in sol}


def neg(lit):
    if lit is TRUE:
        return FALSE
    if lit is FALSE:
        return TRUE
    return -lit


def value(model: dict[int, bool], lit) -> bool:
    if lit is TRUE:
        return True
    if lit is FALSE:
        return False
    return model.get(abs(lit), False) == (lit > 0)
