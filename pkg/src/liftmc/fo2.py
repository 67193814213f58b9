"""Closed-form model counting for universally quantified two-variable
sentences, per one-type cardinality vector and summed over all vectors.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator, Sequence

from .cells import CellTable
from .rings import RingElement

CardinalityVector = tuple[int, ...]


def multinomial(k: Sequence[int]) -> int:
    """|k|! / prod(k_i!), exactly."""
    total = 0
    result = 1
    for part in k:
        if part < 0:
            raise ValueError("negative cardinality")
        total += part
        result *= math.comb(total, part)
    return result


def compositions(total: int, length: int) -> Iterator[CardinalityVector]:
    """All length-tuples of non-negative integers summing to total, in
    lexicographic order."""
    if length == 0:
        if total == 0:
            yield ()
        return
    if length == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in compositions(total - head, length - 1):
            yield (head,) + rest


def sparse_compositions(total: int, positions: Sequence[int],
                        length: int) -> Iterator[CardinalityVector]:
    """Compositions of ``total`` that are zero outside ``positions``."""
    for packed in compositions(total, len(positions)):
        vec = [0] * length
        for pos, value in zip(positions, packed):
            vec[pos] = value
        yield tuple(vec)


def wfomc_fo2_k(table: CellTable, k: CardinalityVector) -> RingElement:
    """Weighted count of models with one-type cardinality vector k."""
    if len(k) != table.u:
        raise ValueError("cardinality vector length mismatch")
    for i, ki in enumerate(k):
        if ki and not table.valid[i]:
            return Fraction(0)
    result: RingElement = Fraction(multinomial(k))
    occupied = [i for i, ki in enumerate(k) if ki]
    for i in occupied:
        result = result * table.wi[i] ** k[i]
    for a, i in enumerate(occupied):
        for j in occupied[a:]:
            if i == j:
                e = k[i] * (k[i] - 1) // 2
            else:
                e = k[i] * k[j]
            if e:
                result = result * table.rij[i][j] ** e
    return result


def wfomc_fo2(table: CellTable, n: int) -> RingElement:
    """Weighted count over all cardinality vectors of size n."""
    if n < 0:
        raise ValueError("negative domain size")
    total: RingElement = Fraction(0)
    for k in sparse_compositions(n, table.valid_indices, table.u):
        total = total + wfomc_fo2_k(table, k)
    return total
