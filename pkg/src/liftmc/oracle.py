"""Grounded brute-force counter for tiny domains.

Enumerates every truth assignment to the ground atoms, checks the
sentence (quantifiers by direct iteration, counting quantifiers by
counting witnesses), the acyclicity axiom, source/sink semantics and all
cardinality constraints, and adds up the symmetric weights.  Deliberately
simple; this is the trusted reference for everything else.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .syntax import (And, Atom, Bottom, Counting, Exists, Forall, Formula,
                     Iff, Implies, Not, Or, Problem, ProblemError, Top)

ATOM_CAP = 24


class OracleCapError(ProblemError):
    pass


def is_acyclic(edges: Iterable[tuple[int, int]], n: int) -> bool:
    """True iff the digraph on [0..n) has no directed cycle (self-loops
    count as cycles).  Decided by repeated zero-indegree elimination."""
    succ = [set() for _ in range(n)]
    indeg = [0] * n
    for a, b in edges:
        if b not in succ[a]:
            succ[a].add(b)
            indeg[b] += 1
    queue = [v for v in range(n) if indeg[v] == 0]
    removed = 0
    while queue:
        v = queue.pop()
        removed += 1
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return removed == n


class _Grounding:
    def __init__(self, problem: Problem, n: int):
        self.problem = problem
        self.n = n
        self.index: dict[tuple, int] = {}
        self.atoms: list[tuple] = []
        for p in problem.vocabulary.predicates:
            if p.arity == 1:
                for c in range(n):
                    self._add((p.name, c))
            else:
                for c in range(n):
                    for d in range(n):
                        self._add((p.name, c, d))
        if len(self.atoms) > ATOM_CAP:
            raise OracleCapError(
                f"{len(self.atoms)} ground atoms exceed the oracle cap of "
                f"{ATOM_CAP}")

    def _add(self, key):
        self.index[key] = len(self.atoms)
        self.atoms.append(key)

    def truth(self, world: int, key) -> bool:
        return bool((world >> self.index[key]) & 1)


def _eval(f: Formula, g: _Grounding, world: int, env: dict[str, int]) -> bool:
    if isinstance(f, Atom):
        key = (f.pred,) + tuple(env[a] for a in f.args)
        return g.truth(world, key)
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Not):
        return not _eval(f.body, g, world, env)
    if isinstance(f, And):
        return _eval(f.left, g, world, env) and _eval(f.right, g, world, env)
    if isinstance(f, Or):
        return _eval(f.left, g, world, env) or _eval(f.right, g, world, env)
    if isinstance(f, Implies):
        return (not _eval(f.left, g, world, env)) or \
            _eval(f.right, g, world, env)
    if isinstance(f, Iff):
        return _eval(f.left, g, world, env) == _eval(f.right, g, world, env)
    if isinstance(f, Forall):
        return all(_eval(f.body, g, world, {**env, f.var: c})
                   for c in range(g.n))
    if isinstance(f, Exists):
        return any(_eval(f.body, g, world, {**env, f.var: c})
                   for c in range(g.n))
    if isinstance(f, Counting):
        hits = sum(1 for c in range(g.n)
                   if _eval(f.body, g, world, {**env, f.var: c}))
        if f.cmp == "=":
            return hits == f.bound
        if f.cmp == "<=":
            return hits <= f.bound
        return hits >= f.bound
    raise TypeError(f"not a formula: {f!r}")


def _axiom_holds(problem: Problem, g: _Grounding, world: int) -> bool:
    ax = problem.dag_axiom
    if ax is None:
        return True
    n = g.n
    edges = [(c, d) for c in range(n) for d in range(n)
             if g.truth(world, (ax.relation, c, d))]
    if not is_acyclic(edges, n):
        return False
    if ax.source is not None:
        has_in = [False] * n
        for _c, d in edges:
            has_in[d] = True
        for c in range(n):
            if g.truth(world, (ax.source, c)) == has_in[c]:
                return False
    if ax.sink is not None:
        has_out = [False] * n
        for c, _d in edges:
            has_out[c] = True
        for c in range(n):
            if g.truth(world, (ax.sink, c)) == has_out[c]:
                return False
    return True


def _constraints_hold(problem: Problem, g: _Grounding, world: int) -> bool:
    if not problem.constraints:
        return True
    counts: dict[str, int] = {}
    for idx, key in enumerate(g.atoms):
        if (world >> idx) & 1:
            counts[key[0]] = counts.get(key[0], 0) + 1
    for c in problem.constraints:
        full = {t: counts.get(t, 0) for t in c.terms}
        if not c.satisfied(full):
            return False
    return True


def oracle_wfomc(problem: Problem, n: int) -> Fraction:
    """Exact weighted count by full enumeration of ground worlds."""
    if n < 0:
        raise ValueError("negative domain size")
    g = _Grounding(problem, n)
    num_atoms = len(g.atoms)
    pos_w = []
    neg_w = []
    for key in g.atoms:
        w, w_bar = problem.weights.get(key[0])
        pos_w.append(w)
        neg_w.append(w_bar)
    total = Fraction(0)
    for world in range(1 << num_atoms):
        if not _eval(problem.sentence, g, world, {}):
            continue
        if not _axiom_holds(problem, g, world):
            continue
        if not _constraints_hold(problem, g, world):
            continue
        weight = Fraction(1)
        for idx in range(num_atoms):
            weight *= pos_w[idx] if (world >> idx) & 1 else neg_w[idx]
        total += weight
    return total
