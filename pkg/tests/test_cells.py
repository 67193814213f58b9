import random
from fractions import Fraction

from liftmc.cells import (build_cell_table, enumerate_one_types,
                          enumerate_two_tables, numeric_weight_lookup,
                          one_type_atoms)
from liftmc.normalize import matrix_of, normalize
from liftmc.parser import parse

from helpers import random_problem


def table_for(text, dag_relation=None):
    p = normalize(parse(text))
    return build_cell_table(p.vocabulary, matrix_of(p),
                            numeric_weight_lookup(p.weights),
                            dag_relation=dag_relation)


def test_single_binary_predicate_dimensions():
    # {R/2}: one reflexive atom -> u = 2, two mixed atoms -> b = 4
    p = parse("predicate R/2\nsentence forall x forall y true")
    assert enumerate_one_types(p.vocabulary) == [0, 1]
    assert enumerate_two_tables(p.vocabulary) == [0, 1, 2, 3]
    t = table_for("predicate R/2\nsentence forall x forall y true")
    assert (t.u, t.b) == (2, 4)
    assert t.valid == [True, True]
    assert all(t.rij[i][j] == 4 for i in range(2) for j in range(2))


def test_rij_dag_drops_reverse_edges():
    t = table_for("predicate R/2\nsentence forall x forall y true",
                  dag_relation="R")
    # only l with R(y,x) false survive: 2 of 4
    assert all(t.rij_dag[i][j] == 2 for i in range(2) for j in range(2))


def test_unary_weights_enter_wi():
    t = table_for("predicate U/1 weight 3 1/2\n"
                  "sentence forall x forall y true")
    assert sorted(t.wi) == [Fraction(1, 2), Fraction(3)]


def test_validity_filter():
    t = table_for("predicate R/2\nsentence forall x forall y ~R(x,x)")
    # the one-type with R(x,x) true violates the matrix at (x,x)
    assert t.valid == [True, False]
    assert t.valid_indices == [0]


def test_rij_symmetry_under_table_transpose():
    # r_ij equals r_ji with the two mixed directions swapped; for any
    # matrix invariant under swapping x and y the table is symmetric.
    t = table_for("predicate R/2\n"
                  "sentence forall x forall y (R(x,y) <-> R(y,x))")
    for i in t.valid_indices:
        for j in t.valid_indices:
            assert t.rij[i][j] == t.rij[j][i]


def test_rij_transpose_identity_random():
    rng = random.Random(20260823)
    for _ in range(15):
        prob = random_problem(rng, allow_axiom=False, allow_constraint=False)
        norm = normalize(prob)
        t = build_cell_table(norm.vocabulary, matrix_of(norm),
                             numeric_weight_lookup(norm.weights))
        for i in t.valid_indices:
            for j in t.valid_indices:
                assert t.rij[i][j] == t.rij[j][i]


def test_bit_order_matches_declaration_order():
    p = parse("predicate A/1\npredicate R/2\npredicate B/1\nsentence true")
    assert one_type_atoms(p.vocabulary) == [("A", False), ("R", True),
                                            ("B", False)]


def test_vl_is_product_of_mixed_atom_weights():
    t = table_for("predicate R/2 weight 2 1\n"
                  "sentence forall x forall y true")
    # l = 0..3: neither, R(x,y), R(y,x), both
    assert t.vl == [Fraction(1), Fraction(2), Fraction(2), Fraction(4)]
