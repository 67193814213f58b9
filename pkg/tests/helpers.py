"""Shared test utilities: independent brute-force enumerators and a
random problem generator.

The enumerators here deliberately do not reuse the package's oracle; they
are the second opinion for the derived expected values.
"""

from __future__ import annotations

import random
from fractions import Fraction

from liftmc.syntax import (And, Atom, CardinalityConstraint, DagAxiom,
                           Implies, Iff, Not, Or, Predicate, Problem, TRUE,
                           Vocabulary, WeightTable)


# ---------------------------------------------------------------------------
# Independent digraph enumeration
# ---------------------------------------------------------------------------

def has_cycle(n: int, edges: set[tuple[int, int]]) -> bool:
    """DFS-based cycle check (independent of the package's Kahn pass)."""
    color = [0] * n  # 0 unseen, 1 on stack, 2 done

    def dfs(v: int) -> bool:
        color[v] = 1
        for a, b in edges:
            if a == v:
                if color[b] == 1:
                    return True
                if color[b] == 0 and dfs(b):
                    return True
        color[v] = 2
        return False

    if any(a == b for a, b in edges):
        return True
    return any(color[v] == 0 and dfs(v) for v in range(n))


def all_loop_free_digraphs(n: int):
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    for bits in range(1 << len(pairs)):
        yield {pairs[i] for i in range(len(pairs)) if (bits >> i) & 1}


def brute_force_dag_count(n: int) -> int:
    return sum(1 for edges in all_loop_free_digraphs(n)
               if not has_cycle(n, edges))


def source_sink_grid(n: int) -> dict[tuple[int, int], int]:
    """DAG counts by (number of sources, number of sinks)."""
    grid: dict[tuple[int, int], int] = {}
    for edges in all_loop_free_digraphs(n):
        if has_cycle(n, edges):
            continue
        has_in = [False] * n
        has_out = [False] * n
        for a, b in edges:
            has_out[a] = True
            has_in[b] = True
        key = (n - sum(has_in), n - sum(has_out))
        grid[key] = grid.get(key, 0) + 1
    return grid


# ---------------------------------------------------------------------------
# Random problems
# ---------------------------------------------------------------------------

WEIGHT_POOL = [Fraction(1), Fraction(2), Fraction(1, 2), Fraction(-1)]

_MATRIX_ATOMS = [Atom("U", ("x",)), Atom("U", ("y",)),
                 Atom("R", ("x", "y")), Atom("R", ("y", "x")),
                 Atom("R", ("x", "x")), Atom("R", ("y", "y"))]


def random_matrix(rng: random.Random, depth: int = 3, unary: bool = True):
    atoms = _MATRIX_ATOMS if unary else _MATRIX_ATOMS[2:]
    if depth == 0 or rng.random() < 0.3:
        atom = rng.choice(atoms)
        return Not(atom) if rng.random() < 0.5 else atom
    op = rng.choice([And, Or, Implies, Iff, "not"])
    if op == "not":
        return Not(random_matrix(rng, depth - 1, unary))
    return op(random_matrix(rng, depth - 1, unary),
              random_matrix(rng, depth - 1, unary))


def random_problem(rng: random.Random, allow_axiom: bool = True,
                   allow_constraint: bool = True) -> Problem:
    """Universally quantified sentence over {U/1, R/2} with random weights,
    optionally an acyclicity axiom and one cardinality constraint."""
    unary = rng.random() < 0.7
    preds = ([Predicate("U", 1)] if unary else []) + [Predicate("R", 2)]
    weights = WeightTable()
    for p in preds:
        weights = weights.with_entry(p.name, rng.choice(WEIGHT_POOL),
                                     rng.choice(WEIGHT_POOL))
    from liftmc.syntax import Forall
    sentence = Forall("x", Forall("y", random_matrix(rng, unary=unary)))
    axiom = DagAxiom("R") if allow_axiom and rng.random() < 0.5 else None
    constraints = []
    if allow_constraint and rng.random() < 0.5:
        target = rng.choice([p.name for p in preds])
        cmp = rng.choice(["=", "<=", ">="])
        bound = rng.randrange(0, 5)
        constraints.append(CardinalityConstraint((target,), cmp, bound))
    return Problem(Vocabulary(preds), weights, sentence, axiom, constraints)


def random_quantified_problem(rng: random.Random) -> Problem:
    """Problem mixing universal, existential and counting quantifiers."""
    from liftmc.syntax import Counting, Exists, Forall
    preds = [Predicate("U", 1), Predicate("R", 2)]
    weights = WeightTable()
    for p in preds:
        weights = weights.with_entry(p.name, rng.choice(WEIGHT_POOL),
                                     rng.choice(WEIGHT_POOL))
    parts = [Forall("x", Forall("y", random_matrix(rng, depth=2)))]
    roll = rng.random()
    if roll < 0.45:
        body = random_matrix(rng, depth=1, unary=True)
        parts.append(Forall("x", Exists("y", body)))
    elif roll < 0.7:
        body = rng.choice([Atom("U", ("x",)), Not(Atom("U", ("x",))),
                           Atom("R", ("x", "x"))])
        parts.append(Exists("x", body))
    if rng.random() < 0.6:
        cmp = rng.choice(["=", "<=", ">="])
        bound = rng.randrange(0, 4)
        body = rng.choice([Atom("U", ("x",)), Atom("R", ("x", "x"))])
        parts.append(Counting(cmp, bound, "x", body))
    sentence = parts[0]
    for p in parts[1:]:
        sentence = And(sentence, p)
    return Problem(Vocabulary(preds), weights, sentence, None, [])


def solve_linear_system(rows: list[list[Fraction]],
                        rhs: list[Fraction]) -> list[Fraction]:
    """Exact Gaussian elimination for the interpolation cross-check."""
    size = len(rows)
    a = [list(map(Fraction, row)) + [Fraction(v)]
         for row, v in zip(rows, rhs)]
    for col in range(size):
        pivot = next(r for r in range(col, size) if a[r][col] != 0)
        a[col], a[pivot] = a[pivot], a[col]
        inv = a[col][col]
        a[col] = [v / inv for v in a[col]]
        for r in range(size):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [v - factor * w for v, w in zip(a[r], a[col])]
    return [a[r][size] for r in range(size)]
