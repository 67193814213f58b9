"""Glue: from a parsed problem to an exact count."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cardinality import attach_indeterminates, filter_and_substitute
from .cells import CellTable, build_cell_table
from .dag import DagProblem, DagSolver
from .fo2 import wfomc_fo2, sparse_compositions, wfomc_fo2_k
from .normalize import matrix_of, normalize
from .rings import Polynomial, RingElement
from .syntax import And, Atom, Not, Problem


@dataclass
class EngineResult:
    count: Fraction
    per_cardinality: Optional[dict] = None


def build_tables(problem: Problem):
    """Cell tables for an already-normalized problem.

    Returns ``(table, dag_problem_or_None, vars, weight_of)``.
    """
    weight_of, vars = attach_indeterminates(problem)
    matrix = matrix_of(problem)
    if problem.dag_axiom is None:
        table = build_cell_table(problem.vocabulary, matrix, weight_of)
        return table, None, vars
    rel = problem.dag_axiom.relation
    # Acyclicity rules out self-loops; prune them from the one-types.
    pruned = And(matrix, Not(Atom(rel, ("x", "x"))))
    cells = build_cell_table(problem.vocabulary, pruned, weight_of,
                             dag_relation=rel)
    prime_matrix = And(pruned, Not(Atom(rel, ("x", "y"))))
    cells_prime = build_cell_table(problem.vocabulary, prime_matrix,
                                   weight_of)
    return cells, DagProblem(rel, cells, cells_prime), vars


def count(problem: Problem, n: int, per_k: bool = False) -> EngineResult:
    """Run the full pipeline on a raw problem."""
    if n == 0:
        # The empty structure is the only world; quantifier elimination
        # would lose vacuously false existentials here, so evaluate it
        # directly.
        from .oracle import oracle_wfomc
        value = oracle_wfomc(problem, 0)
        return EngineResult(value, {(): value} if per_k else None)
    norm = normalize(problem)
    table, dag_problem, vars = build_tables(norm)
    arity_of = norm.vocabulary.arity

    def finish(value: RingElement) -> Fraction:
        if vars and not isinstance(value, Polynomial):
            value = Polynomial.constant(value, vars)
        return filter_and_substitute(value, norm.constraints, norm.weights,
                                     n, arity_of)

    if dag_problem is not None:
        solver = DagSolver(dag_problem)
        if per_k:
            raw = solver.per_cardinality(n)
            per = {k: finish(v) for k, v in raw.items()}
            return EngineResult(sum(per.values(), Fraction(0)), per)
        return EngineResult(finish(solver.total(n)))

    if per_k:
        per = {}
        for k in sparse_compositions(n, table.valid_indices, table.u):
            per[k] = finish(wfomc_fo2_k(table, k))
        return EngineResult(sum(per.values(), Fraction(0)), per)
    return EngineResult(finish(wfomc_fo2(table, n)))
