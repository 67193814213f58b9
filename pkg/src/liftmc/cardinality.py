"""Cardinality constraints via symbolic per-predicate atom counts.

Every predicate mentioned in a constraint gets an indeterminate as its
positive weight and 1 as its negative weight.  Any counting routine run
under this weight assignment then returns a polynomial whose monomial
exponents are the per-predicate true-atom counts; filtering the monomials
against the constraints and substituting the real weights yields the
constrained count.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .rings import Polynomial, RingElement
from .syntax import (CardinalityConstraint, Problem, WeightTable)


def constrained_predicates(constraints: Sequence[CardinalityConstraint]) \
        -> tuple[str, ...]:
    names = sorted({t for c in constraints for t in c.terms})
    return tuple(names)


def attach_indeterminates(problem: Problem):
    """Weight lookup placing an indeterminate on each constrained predicate.

    Returns ``(weight_of, vars)`` where ``weight_of(name)`` yields ring
    elements and ``vars`` is the fixed indeterminate order (empty when the
    problem has no constraints, in which case the lookup is numeric).
    """
    vars = constrained_predicates(problem.constraints)
    weights = problem.weights
    if not vars:
        return weights.get, vars
    one = Polynomial.constant(1, vars)

    def weight_of(name: str):
        if name in vars:
            return Polynomial.variable(name, vars), one
        w, w_bar = weights.get(name)
        return (Polynomial.constant(w, vars),
                Polynomial.constant(w_bar, vars))

    return weight_of, vars


def mu_satisfies(exps: tuple[int, ...], vars: tuple[str, ...],
                 constraints: Sequence[CardinalityConstraint]) -> bool:
    counts = dict(zip(vars, exps))
    return all(c.satisfied(counts) for c in constraints)


def filter_and_substitute(value: RingElement,
                          constraints: Sequence[CardinalityConstraint],
                          weights: WeightTable,
                          n: int,
                          arity_of) -> Fraction:
    """Keep the monomials satisfying every constraint and substitute the
    real weights: coefficient * prod_P w(P)^mu_P * wBar(P)^(n^a_P - mu_P).
    """
    if not isinstance(value, Polynomial):
        if constraints:
            raise ValueError(
                "constrained filtering needs a polynomial count")
        return Fraction(value)
    vars = value.vars
    ground_atoms = {p: n ** arity_of(p) for p in vars}
    total = Fraction(0)
    for exps, coeff in value.monomials():
        if not mu_satisfies(exps, vars, constraints):
            continue
        term = coeff
        for p, mu in zip(vars, exps):
            w, w_bar = weights.get(p)
            if mu > ground_atoms[p]:
                raise ValueError(
                    f"monomial exponent {mu} exceeds the number of ground "
                    f"atoms of {p}")
            term *= w ** mu
            term *= w_bar ** (ground_atoms[p] - mu)
        total += term
    return total
