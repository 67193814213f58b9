"""Core data model: formulas, vocabularies, weights and problems.

All formula nodes are frozen dataclasses, so they are hashable and can be
shared freely between threads.  The only variables that ever appear in a
formula are ``x`` and ``y``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Union

VARIABLES = ("x", "y")

# Fresh predicates introduced by the normalizer start with this character;
# user input must never contain it.
RESERVED_PREFIX = "$"


class ProblemError(Exception):
    """Base class for everything that can go wrong with an input problem."""


class ParseError(ProblemError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        if line:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class ValidationError(ProblemError):
    pass


class UnsupportedError(ProblemError):
    pass


# ---------------------------------------------------------------------------
# Formula AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[str, ...]

    def __str__(self):
        return f"{self.pred}({','.join(self.args)})"


@dataclass(frozen=True)
class Top:
    def __str__(self):
        return "true"


@dataclass(frozen=True)
class Bottom:
    def __str__(self):
        return "false"


@dataclass(frozen=True)
class Not:
    body: "Formula"

    def __str__(self):
        return f"~{self.body}"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return f"({self.left} & {self.right})"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return f"({self.left} | {self.right})"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return f"({self.left} -> {self.right})"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return f"({self.left} <-> {self.right})"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"

    def __str__(self):
        return f"forall {self.var} ({self.body})"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"

    def __str__(self):
        return f"exists {self.var} ({self.body})"


@dataclass(frozen=True)
class Counting:
    """A counting quantifier over a single variable: exists[<cmp><bound>] v."""
    cmp: str  # "=", "<=" or ">="
    bound: int
    var: str
    body: "Formula"

    def __str__(self):
        return f"exists[{self.cmp}{self.bound}] {self.var} ({self.body})"


Formula = Union[Atom, Top, Bottom, Not, And, Or, Implies, Iff,
                Forall, Exists, Counting]

TRUE = Top()
FALSE = Bottom()


def free_variables(f: Formula) -> frozenset[str]:
    if isinstance(f, Atom):
        return frozenset(f.args)
    if isinstance(f, (Top, Bottom)):
        return frozenset()
    if isinstance(f, Not):
        return free_variables(f.body)
    if isinstance(f, (And, Or, Implies, Iff)):
        return free_variables(f.left) | free_variables(f.right)
    if isinstance(f, (Forall, Exists, Counting)):
        return free_variables(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def conjuncts(f: Formula) -> list[Formula]:
    """Flatten a conjunction tree into a list (left-to-right)."""
    if isinstance(f, And):
        return conjuncts(f.left) + conjuncts(f.right)
    return [f]


def conjoin(parts: list[Formula]) -> Formula:
    parts = [p for p in parts if not isinstance(p, Top)]
    if not parts:
        return TRUE
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def is_quantifier_free(f: Formula) -> bool:
    if isinstance(f, (Atom, Top, Bottom)):
        return True
    if isinstance(f, Not):
        return is_quantifier_free(f.body)
    if isinstance(f, (And, Or, Implies, Iff)):
        return is_quantifier_free(f.left) and is_quantifier_free(f.right)
    return False


def other_variable(v: str) -> str:
    return "y" if v == "x" else "x"


# ---------------------------------------------------------------------------
# Vocabulary, weights and problems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Predicate:
    name: str
    arity: int


@dataclass
class Vocabulary:
    predicates: list[Predicate] = field(default_factory=list)

    def __post_init__(self):
        names = [p.name for p in self.predicates]
        if len(names) != len(set(names)):
            raise ValidationError("duplicate predicate declaration")
        for p in self.predicates:
            if p.arity not in (1, 2):
                raise ValidationError(
                    f"predicate {p.name} has arity {p.arity}; only 1 and 2 "
                    "are supported")

    def arity(self, name: str) -> int:
        for p in self.predicates:
            if p.name == name:
                return p.arity
        raise ValidationError(f"undeclared predicate: {name}")

    def has(self, name: str) -> bool:
        return any(p.name == name for p in self.predicates)

    def names(self) -> list[str]:
        return [p.name for p in self.predicates]

    def extended(self, name: str, arity: int) -> "Vocabulary":
        return Vocabulary(self.predicates + [Predicate(name, arity)])


Rational = Fraction


@dataclass
class WeightTable:
    """Per-predicate symmetric weights (w, wBar); missing entries are (1, 1)."""
    weights: dict[str, tuple[Fraction, Fraction]] = field(default_factory=dict)

    def get(self, name: str) -> tuple[Fraction, Fraction]:
        return self.weights.get(name, (Fraction(1), Fraction(1)))

    def with_entry(self, name, w, w_bar) -> "WeightTable":
        new = dict(self.weights)
        new[name] = (Fraction(w), Fraction(w_bar))
        return WeightTable(new)


@dataclass(frozen=True)
class DagAxiom:
    relation: str
    source: Optional[str] = None
    sink: Optional[str] = None


@dataclass(frozen=True)
class CardinalityConstraint:
    terms: tuple[str, ...]
    cmp: str  # "=", "<=" or ">="
    bound: int

    def satisfied(self, counts: dict[str, int]) -> bool:
        total = sum(counts[t] for t in self.terms)
        if self.cmp == "=":
            return total == self.bound
        if self.cmp == "<=":
            return total <= self.bound
        return total >= self.bound

    def __str__(self):
        lhs = " + ".join(f"|{t}|" for t in self.terms)
        return f"{lhs} {self.cmp} {self.bound}"


@dataclass
class Problem:
    vocabulary: Vocabulary
    weights: WeightTable
    sentence: Formula
    dag_axiom: Optional[DagAxiom] = None
    constraints: list[CardinalityConstraint] = field(default_factory=list)

    def replace(self, **kw) -> "Problem":
        base = dict(vocabulary=self.vocabulary, weights=self.weights,
                    sentence=self.sentence, dag_axiom=self.dag_axiom,
                    constraints=self.constraints)
        base.update(kw)
        return Problem(**base)

    def validate(self):
        """Check arity/declaration consistency of the whole problem."""
        _check_formula(self.sentence, self.vocabulary, bound=frozenset())
        if free_variables(self.sentence):
            raise ValidationError("sentence has free variables")
        if self.dag_axiom is not None:
            ax = self.dag_axiom
            if self.vocabulary.arity(ax.relation) != 2:
                raise ValidationError(
                    f"acyclic relation {ax.relation} must be binary")
            for unary in (ax.source, ax.sink):
                if unary is not None and self.vocabulary.arity(unary) != 1:
                    raise ValidationError(
                        f"source/sink predicate {unary} must be unary")
        for c in self.constraints:
            for t in c.terms:
                self.vocabulary.arity(t)  # raises if undeclared
            if c.bound < 0:
                raise ValidationError("constraint bound must be non-negative")


def _check_formula(f: Formula, voc: Vocabulary, bound: frozenset[str]):
    if isinstance(f, Atom):
        if voc.arity(f.pred) != len(f.args):
            raise ValidationError(
                f"arity mismatch for {f.pred}: got {len(f.args)} arguments")
        for a in f.args:
            if a not in VARIABLES:
                raise ValidationError(f"unknown term {a}; terms must be x or y")
            if a not in bound:
                raise ValidationError(f"free variable {a} in {f}")
    elif isinstance(f, (Top, Bottom)):
        pass
    elif isinstance(f, Not):
        _check_formula(f.body, voc, bound)
    elif isinstance(f, (And, Or, Implies, Iff)):
        _check_formula(f.left, voc, bound)
        _check_formula(f.right, voc, bound)
    elif isinstance(f, (Forall, Exists)):
        _check_formula(f.body, voc, bound | {f.var})
    elif isinstance(f, Counting):
        if f.bound < 0:
            raise ValidationError("counting quantifier bound must be >= 0")
        inner_free = free_variables(f.body)
        if inner_free - {f.var} :
            raise ValidationError(
                "counting quantifier body must have exactly one free variable")
        _check_formula(f.body, voc, bound | {f.var})
    else:
        raise TypeError(f"not a formula: {f!r}")
