"""Consistency checking for feature terms with set descriptions."""

from __future__ import annotations

from .constraints import ConstraintSystem, Containment, Disjunctive, entails, succ
from .semantics import Model, denote, find_model, enumerate_models, holds, satisfies
from .solver import Clash, Consistent, Inconsistent, SolverConfig, solve
from .syntax import ParseError, parse, render
from .terms import Signature, desugar, free_vars, validate

__version__ = "0.1.0"

__all__ = [
    "Clash", "ConstraintSystem", "Consistent", "Containment", "Disjunctive", "Inconsistent",
    "Model", "ParseError", "Signature", "SolverConfig", "denote", "desugar", "entails",
    "enumerate_models", "find_model", "free_vars", "holds", "parse", "render", "satisfies",
    "solve", "succ", "validate",
]
