"""Enumeration of element types and pair tables, and their weight sums.

A one-type is a complete truth assignment to the atoms over a single
element (unary atoms U(x) plus reflexive atoms R(x,x)); a two-table is a
complete assignment to the mixed atoms R(x,y), R(y,x).  Both are indexed
by their bitmask in a fixed order derived from the declaration order of
the vocabulary, so indices are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .rings import RingElement
from .syntax import (And, Atom, Bottom, Formula, Not, Or, Top, Vocabulary)

# (pred, reflexive?) descriptors of single-variable atoms.
OneAtom = tuple[str, bool]


def one_type_atoms(voc: Vocabulary) -> list[OneAtom]:
    atoms = []
    for p in voc.predicates:
        atoms.append((p.name, p.arity == 2))
    return atoms


def mixed_atom_preds(voc: Vocabulary) -> list[str]:
    return [p.name for p in voc.predicates if p.arity == 2]


def enumerate_one_types(voc: Vocabulary) -> list[int]:
    """All one-types as bitmasks over the single-variable atoms."""
    return list(range(1 << len(one_type_atoms(voc))))


def enumerate_two_tables(voc: Vocabulary) -> list[int]:
    """All two-tables as bitmasks over the mixed atoms.

    Binary predicate number p contributes bit 2p for R(x,y) and bit 2p+1
    for R(y,x).
    """
    return list(range(1 << (2 * len(mixed_atom_preds(voc)))))


@dataclass
class CellTable:
    vocabulary: Vocabulary
    one_atoms: list[OneAtom]
    mixed_preds: list[str]
    u: int
    b: int
    valid: list[bool]              # one-type satisfies the matrix at (x,x)
    wi: list[RingElement]
    vl: list[RingElement]
    rij: list[list[RingElement]]
    rij_dag: Optional[list[list[RingElement]]] = None

    @property
    def valid_indices(self) -> list[int]:
        return [i for i in range(self.u) if self.valid[i]]


class _PairAssignment:
    """Complete truth assignment for a pair of elements given (i, j, l)."""

    __slots__ = ("one_index", "mixed_index", "i_bits", "j_bits", "l_bits")

    def __init__(self, table_atoms: list[OneAtom], mixed_preds: list[str],
                 i_bits: int, j_bits: int, l_bits: int):
        self.one_index = {}
        for idx, (pred, refl) in enumerate(table_atoms):
            self.one_index[(pred, refl)] = idx
        self.mixed_index = {pred: k for k, pred in enumerate(mixed_preds)}
        self.i_bits = i_bits
        self.j_bits = j_bits
        self.l_bits = l_bits

    def atom_value(self, atom: Atom, side_of: dict[str, int]) -> bool:
        """Truth of an atom; side 1 is the i element, side 2 the j element."""
        if len(atom.args) == 1:
            side = side_of[atom.args[0]]
            bit = self.one_index[(atom.pred, False)]
            bits = self.i_bits if side == 1 else self.j_bits
            return bool((bits >> bit) & 1)
        s1, s2 = side_of[atom.args[0]], side_of[atom.args[1]]
        if s1 == s2:
            bit = self.one_index[(atom.pred, True)]
            bits = self.i_bits if s1 == 1 else self.j_bits
            return bool((bits >> bit) & 1)
        k = self.mixed_index[atom.pred]
        bit = 2 * k if (s1, s2) == (1, 2) else 2 * k + 1
        return bool((self.l_bits >> bit) & 1)


def _holds(f: Formula, assignment: _PairAssignment,
           side_of: dict[str, int]) -> bool:
    if isinstance(f, Atom):
        return assignment.atom_value(f, side_of)
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Not):
        return not _holds(f.body, assignment, side_of)
    if isinstance(f, And):
        return (_holds(f.left, assignment, side_of)
                and _holds(f.right, assignment, side_of))
    if isinstance(f, Or):
        return (_holds(f.left, assignment, side_of)
                or _holds(f.right, assignment, side_of))
    # Implies/Iff survive if the caller skipped NNF.
    from .syntax import Implies, Iff
    if isinstance(f, Implies):
        return ((not _holds(f.left, assignment, side_of))
                or _holds(f.right, assignment, side_of))
    if isinstance(f, Iff):
        return (_holds(f.left, assignment, side_of)
                == _holds(f.right, assignment, side_of))
    raise ValueError(f"matrix is not quantifier-free: {f}")


_BOTH = [{"x": 1, "y": 1}, {"x": 1, "y": 2}, {"x": 2, "y": 1},
         {"x": 2, "y": 2}]


def two_type_consistent(voc: Vocabulary, i_bits: int, j_bits: int,
                        l_bits: int, matrix: Formula,
                        forbid_reverse_edge: Optional[str] = None) -> bool:
    """Whether the pair description (i, j, l) satisfies the matrix at all
    four variable instantiations; optionally also requires the reverse
    edge of the named relation to be absent (R(y,x) false in l)."""
    assignment = _PairAssignment(one_type_atoms(voc), mixed_atom_preds(voc),
                                 i_bits, j_bits, l_bits)
    if forbid_reverse_edge is not None:
        k = assignment.mixed_index[forbid_reverse_edge]
        if (l_bits >> (2 * k + 1)) & 1:
            return False
    return all(_holds(matrix, assignment, side_of) for side_of in _BOTH)


def one_type_valid(voc: Vocabulary, i_bits: int, matrix: Formula) -> bool:
    """Whether a one-type satisfies the matrix instantiated at (x,x)."""
    assignment = _PairAssignment(one_type_atoms(voc), mixed_atom_preds(voc),
                                 i_bits, i_bits, 0)
    return _holds(matrix, assignment, {"x": 1, "y": 1})


def build_cell_table(voc: Vocabulary, matrix: Formula, weight_of,
                     dag_relation: Optional[str] = None) -> CellTable:
    """Build all weight parameters for a quantifier-free matrix.

    ``weight_of(name) -> (w, wBar)`` supplies ring elements, so the same
    table construction serves numeric and symbolic runs.  When
    ``dag_relation`` is given, the additional matrix restricted to absent
    reverse edges is computed as well.
    """
    one_atoms = one_type_atoms(voc)
    mixed = mixed_atom_preds(voc)
    u = 1 << len(one_atoms)
    b = 1 << (2 * len(mixed))

    valid = [one_type_valid(voc, i, matrix) for i in range(u)]

    wi: list[RingElement] = []
    for i in range(u):
        w = Fraction(1)
        for bit, (pred, _refl) in enumerate(one_atoms):
            pw, nw = weight_of(pred)
            w = w * (pw if (i >> bit) & 1 else nw)
        wi.append(w)

    vl: list[RingElement] = []
    for l in range(b):
        w = Fraction(1)
        for k, pred in enumerate(mixed):
            pw, nw = weight_of(pred)
            w = w * (pw if (l >> (2 * k)) & 1 else nw)
            w = w * (pw if (l >> (2 * k + 1)) & 1 else nw)
        vl.append(w)

    zero = Fraction(0)
    rij = [[zero] * u for _ in range(u)]
    rij_dag = [[zero] * u for _ in range(u)] if dag_relation else None
    # Entries are only consumed for valid one-types; skipping the others
    # keeps the construction cheap when most one-types are contradictory.
    valid_idx = [i for i in range(u) if valid[i]]
    for i in valid_idx:
        for j in valid_idx:
            total = zero
            total_dag = zero
            for l in range(b):
                if two_type_consistent(voc, i, j, l, matrix):
                    total = total + vl[l]
                    if dag_relation is not None and two_type_consistent(
                            voc, i, j, l, matrix,
                            forbid_reverse_edge=dag_relation):
                        total_dag = total_dag + vl[l]
            rij[i][j] = total
            if rij_dag is not None:
                rij_dag[i][j] = total_dag

    return CellTable(voc, one_atoms, mixed, u, b, valid, wi, vl, rij, rij_dag)


def numeric_weight_lookup(weights):
    def weight_of(name):
        return weights.get(name)
    return weight_of
