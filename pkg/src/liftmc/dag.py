"""Counting under the acyclicity axiom.

``count_dags`` is the classical inclusion-exclusion recurrence for labeled
DAGs.  ``DagSolver`` generalizes it: a dynamic program over one-type
cardinality vectors where the block of zero-indegree elements is counted
by the edge-free variant of the sentence and glued to the rest through the
reverse-edge-free pair weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .cells import CellTable
from .fo2 import CardinalityVector, sparse_compositions, wfomc_fo2_k
from .rings import RingElement


def count_dags(n: int) -> int:
    """Number of labeled DAGs on n nodes, a_0 = 1."""
    if n < 0:
        raise ValueError("negative node count")
    a = [1]
    for i in range(1, n + 1):
        total = 0
        for l in range(i):
            term = math.comb(i, l) * (1 << (l * (i - l))) * a[l]
            total += term if (i - l + 1) % 2 == 0 else -term
        a.append(total)
    return a[n]


def count_dags_table(n: int) -> list[int]:
    """a_0 .. a_n as a list."""
    a = [1]
    for i in range(1, n + 1):
        total = 0
        for l in range(i):
            term = math.comb(i, l) * (1 << (l * (i - l))) * a[l]
            total += term if (i - l + 1) % 2 == 0 else -term
        a.append(total)
    return a


@dataclass
class DagProblem:
    """Cell tables for a sentence conjoined with Acyclic(R).

    ``cells`` is built from the matrix with the self-loop pruning conjunct
    ~R(x,x); ``cells_prime`` additionally forbids all R edges; ``rij_dag``
    (stored on ``cells``) forbids only the reverse edge.
    """
    relation: str
    cells: CellTable
    cells_prime: CellTable

    @property
    def rij_dag(self):
        return self.cells.rij_dag


@dataclass
class DagSolver:
    problem: DagProblem
    table: dict[CardinalityVector, RingElement] = field(default_factory=dict)
    use_l_form: bool = False

    def _zero(self) -> CardinalityVector:
        return (0,) * self.problem.cells.u

    def slice_count(self, m: int, k: CardinalityVector) -> RingElement:
        """Weighted count of models where a fixed m-subset of the domain
        has zero indegree, with overall one-type cardinalities k."""
        size = sum(k)
        if not 1 <= m <= size:
            raise ValueError("block size out of range")
        prime = self.problem.cells_prime
        r = self.problem.rij_dag
        total: RingElement = Fraction(0)
        positions = [i for i, ki in enumerate(k) if ki]
        for k1 in _bounded_vectors(k, positions, m):
            k2 = tuple(a - b for a, b in zip(k, k1))
            rest = self.table.get(k2)
            if rest is None:
                raise KeyError(f"table entry for {k2} missing")
            if rest == 0:
                continue
            part: RingElement = wfomc_fo2_k(prime, k1)
            if part == 0:
                continue
            for i in positions:
                if not k1[i]:
                    continue
                for j in positions:
                    e = k1[i] * k2[j]
                    if e:
                        part = part * r[i][j] ** e
            total = total + part * rest
        return total

    def entry(self, k: CardinalityVector) -> RingElement:
        """wfomc of (sentence & Acyclic) at cardinality vector k; fills all
        smaller table entries first."""
        self._fill_below(k)
        return self.table[k]

    def _fill_below(self, k: CardinalityVector):
        cells = self.problem.cells
        positions = [i for i, ki in enumerate(k) if ki]
        for i in positions:
            if not cells.valid[i]:
                # Invalid one-types can never be realized.
                self.table[k] = Fraction(0)
                return
        zero = self._zero()
        if zero not in self.table:
            self.table[zero] = Fraction(1)
        total_size = sum(k)
        for size in range(1, total_size + 1):
            for p in _bounded_vectors(k, positions, size):
                if p not in self.table:
                    self.table[p] = self._compute(p)

    def _compute(self, p: CardinalityVector) -> RingElement:
        size = sum(p)
        total: RingElement = Fraction(0)
        if self.use_l_form:
            for l in range(size):
                m = size - l
                term = self.slice_count(m, p) * math.comb(size, l)
                total = total + (term if (size - l + 1) % 2 == 0 else -term)
        else:
            for m in range(1, size + 1):
                term = self.slice_count(m, p) * math.comb(size, m)
                total = total + (term if (m + 1) % 2 == 0 else -term)
        return total

    def total(self, n: int) -> RingElement:
        """Sum over all cardinality vectors of size n."""
        if n < 0:
            raise ValueError("negative domain size")
        cells = self.problem.cells
        result: RingElement = Fraction(0)
        for k in sparse_compositions(n, cells.valid_indices, cells.u):
            result = result + self.entry(k)
        return result

    def per_cardinality(self, n: int):
        cells = self.problem.cells
        out = {}
        for k in sparse_compositions(n, cells.valid_indices, cells.u):
            out[k] = self.entry(k)
        return out


def _bounded_vectors(bound: CardinalityVector, positions: list[int],
                     total: int):
    """Vectors p <= bound (component-wise), zero outside ``positions``,
    with |p| = total, in lexicographic order."""
    vec = [0] * len(bound)

    def rec(idx: int, remaining: int):
        if idx == len(positions):
            if remaining == 0:
                yield tuple(vec)
            return
        pos = positions[idx]
        tail_room = sum(bound[p] for p in positions[idx + 1:])
        lo = max(0, remaining - tail_room)
        hi = min(bound[pos], remaining)
        for value in range(lo, hi + 1):
            vec[pos] = value
            yield from rec(idx + 1, remaining - value)
        vec[pos] = 0

    yield from rec(0, total)


def wfomc_dag_k(problem: DagProblem, k: CardinalityVector,
                use_l_form: bool = False) -> RingElement:
    return DagSolver(problem, use_l_form=use_l_form).entry(k)


def wfomc_dag(problem: DagProblem, n: int,
              use_l_form: bool = False) -> RingElement:
    return DagSolver(problem, use_l_form=use_l_form).total(n)
