import random
from fractions import Fraction

import pytest

from liftmc import count, oracle_wfomc, parse
from liftmc.cardinality import (attach_indeterminates, constrained_predicates,
                                filter_and_substitute, mu_satisfies)
from liftmc.cells import build_cell_table
from liftmc.fo2 import wfomc_fo2
from liftmc.normalize import matrix_of, normalize
from liftmc.rings import Polynomial
from liftmc.syntax import CardinalityConstraint

from helpers import random_problem


def test_constrained_predicates_sorted_unique():
    cs = [CardinalityConstraint(("R", "P"), "=", 1),
          CardinalityConstraint(("P",), "<=", 2)]
    assert constrained_predicates(cs) == ("P", "R")


def test_mu_satisfies():
    cs = [CardinalityConstraint(("P", "R"), ">=", 3),
          CardinalityConstraint(("P",), "<=", 1)]
    assert mu_satisfies((1, 2), ("P", "R"), cs)
    assert not mu_satisfies((2, 2), ("P", "R"), cs)
    assert not mu_satisfies((1, 1), ("P", "R"), cs)


def test_symbolic_count_is_binomial_expansion():
    # free {R/2} with X on R: the count at n is (1 + X)^(n^2)
    p = parse("predicate R/2\nconstraint |R| = 2\n"
              "sentence forall x forall y true")
    weight_of, vars = attach_indeterminates(p)
    norm = normalize(p)
    t = build_cell_table(norm.vocabulary, matrix_of(norm), weight_of)
    value = wfomc_fo2(t, 2)
    x = Polynomial.variable("R", vars)
    assert value == (1 + x) ** 4
    # filtering |R| = 2 keeps the middle coefficient
    got = filter_and_substitute(value, p.constraints, p.weights, 2,
                                lambda name: 2)
    assert got == 6
    got = filter_and_substitute(value, [CardinalityConstraint(("R",), "=", 0)],
                                p.weights, 2, lambda name: 2)
    assert got == 1
    got = filter_and_substitute(value, [CardinalityConstraint(("R",), "=", 9)],
                                p.weights, 2, lambda name: 2)
    assert got == 0


def test_substitution_uses_both_weights():
    p = parse("predicate R/2 weight 3 1/2\nconstraint |R| <= 1\n"
              "sentence forall x forall y true")
    # n = 1: one ground atom, worlds mu=0 and mu=1
    assert count(p, 1).count == Fraction(1, 2) + 3
    assert count(p, 1).count == oracle_wfomc(p, 1)


def test_exponent_overflow_rejected():
    x = Polynomial.variable("R", ("R",))
    with pytest.raises(ValueError):
        filter_and_substitute(x ** 3, [CardinalityConstraint(("R",), ">=", 0)],
                              parse("predicate R/2\nsentence true").weights,
                              1, lambda name: 2)


def test_plain_fraction_passthrough():
    assert filter_and_substitute(Fraction(7, 2), [], None, 3,
                                 lambda name: 1) == Fraction(7, 2)


def test_joint_constraint_matches_oracle():
    p = parse("predicate U/1 weight 2 1\npredicate R/2\n"
              "constraint |U| + |R| = 3\n"
              "sentence forall x forall y (R(x,y) -> U(x))")
    for n in (1, 2, 3):
        assert count(p, n).count == oracle_wfomc(p, n)


def test_random_constrained_problems_match_oracle():
    rng = random.Random(99)
    for _ in range(20):
        prob = random_problem(rng, allow_axiom=False, allow_constraint=True)
        for n in (1, 2, 3):
            assert count(prob, n).count == oracle_wfomc(prob, n)
