"""Reduction of the full input language to universally quantified form.

``normalize`` turns an arbitrary problem into one whose sentence has the
shape ``forall x forall y (matrix)`` with a quantifier-free matrix, at the
cost of fresh unary predicates and extra cardinality constraints:

  * source/sink axioms become biconditionals with an inner existential,
  * counting quantifiers become cardinality constraints on a fresh
    definition predicate,
  * existential subformulas are eliminated by pairing a definition
    predicate (weights (1, 1)) with a cancellation predicate
    (weights (1, -1)).

The model count over any domain size is preserved exactly, including with
negative weights, and each step is modular (adding an independent conjunct
commutes with the reduction).
"""

from __future__ import annotations

from fractions import Fraction

from .syntax import (And, Atom, Bottom, Counting, CardinalityConstraint,
                     DagAxiom, Exists, FALSE, Forall, Formula, Iff, Implies,
                     Not, Or, Problem, TRUE, Top, UnsupportedError,
                     conjoin, conjuncts, free_variables, is_quantifier_free,
                     other_variable)


# ---------------------------------------------------------------------------
# Negation normal form
# ---------------------------------------------------------------------------

def to_nnf(f: Formula) -> Formula:
    """Push negations to atoms and eliminate -> and <->."""
    if isinstance(f, (Atom, Top, Bottom)):
        return f
    if isinstance(f, And):
        return _mk_and(to_nnf(f.left), to_nnf(f.right))
    if isinstance(f, Or):
        return _mk_or(to_nnf(f.left), to_nnf(f.right))
    if isinstance(f, Implies):
        return _mk_or(to_nnf(Not(f.left)), to_nnf(f.right))
    if isinstance(f, Iff):
        return _mk_and(_mk_or(to_nnf(Not(f.left)), to_nnf(f.right)),
                       _mk_or(to_nnf(f.left), to_nnf(Not(f.right))))
    if isinstance(f, Forall):
        return Forall(f.var, to_nnf(f.body))
    if isinstance(f, Exists):
        return Exists(f.var, to_nnf(f.body))
    if isinstance(f, Counting):
        return Counting(f.cmp, f.bound, f.var, to_nnf(f.body))
    if isinstance(f, Not):
        g = f.body
        if isinstance(g, Atom):
            return f
        if isinstance(g, Top):
            return FALSE
        if isinstance(g, Bottom):
            return TRUE
        if isinstance(g, Not):
            return to_nnf(g.body)
        if isinstance(g, And):
            return _mk_or(to_nnf(Not(g.left)), to_nnf(Not(g.right)))
        if isinstance(g, Or):
            return _mk_and(to_nnf(Not(g.left)), to_nnf(Not(g.right)))
        if isinstance(g, Implies):
            return _mk_and(to_nnf(g.left), to_nnf(Not(g.right)))
        if isinstance(g, Iff):
            return to_nnf(Not(And(Or(Not(g.left), g.right),
                                  Or(g.left, Not(g.right)))))
        if isinstance(g, Forall):
            return Exists(g.var, to_nnf(Not(g.body)))
        if isinstance(g, Exists):
            return Forall(g.var, to_nnf(Not(g.body)))
        if isinstance(g, Counting):
            raise UnsupportedError(
                "negated counting quantifier; run lower_counting first")
    raise TypeError(f"not a formula: {f!r}")


def _mk_and(a: Formula, b: Formula) -> Formula:
    if isinstance(a, Bottom) or isinstance(b, Bottom):
        return FALSE
    if isinstance(a, Top):
        return b
    if isinstance(b, Top):
        return a
    return And(a, b)


def _mk_or(a: Formula, b: Formula) -> Formula:
    if isinstance(a, Top) or isinstance(b, Top):
        return TRUE
    if isinstance(a, Bottom):
        return b
    if isinstance(b, Bottom):
        return a
    return Or(a, b)


# ---------------------------------------------------------------------------
# Fresh-name bookkeeping
# ---------------------------------------------------------------------------

class _FreshNames:
    def __init__(self, problem: Problem):
        self.problem = problem
        self.counters = {"skolem": 0, "def": 0, "count": 0}

    def fresh(self, kind: str, w, w_bar) -> str:
        while True:
            name = f"${kind}{self.counters[kind]}"
            self.counters[kind] += 1
            if not self.problem.vocabulary.has(name):
                break
        self.problem = self.problem.replace(
            vocabulary=self.problem.vocabulary.extended(name, 1),
            weights=self.problem.weights.with_entry(name, w, w_bar))
        return name


# ---------------------------------------------------------------------------
# Source / sink lowering
# ---------------------------------------------------------------------------

def lower_source_sink(problem: Problem) -> Problem:
    """Rewrite source/sink slots of the acyclic axiom as biconditionals.

    Source holds exactly of the zero-indegree elements of the acyclic
    relation, Sink of the zero-outdegree ones.
    """
    ax = problem.dag_axiom
    if ax is None or (ax.source is None and ax.sink is None):
        return problem
    extra = []
    rel = ax.relation
    if ax.source is not None:
        extra.append(Forall("x", Iff(Atom(ax.source, ("x",)),
                                     Not(Exists("y", Atom(rel, ("y", "x")))))))
    if ax.sink is not None:
        extra.append(Forall("x", Iff(Atom(ax.sink, ("x",)),
                                     Not(Exists("y", Atom(rel, ("x", "y")))))))
    sentence = conjoin([problem.sentence] + extra)
    return problem.replace(sentence=sentence, dag_axiom=DagAxiom(rel))


# ---------------------------------------------------------------------------
# Counting-quantifier lowering
# ---------------------------------------------------------------------------

def lower_counting(problem: Problem) -> Problem:
    """Replace counting quantifiers by cardinality constraints.

    Each top-level conjunct ``exists[cmp k] v. body(v)`` becomes the
    definitional conjunct ``forall v (P(v) <-> body(v))`` for a fresh unary
    predicate P plus the constraint ``|P| cmp k``.
    """
    names = _FreshNames(problem)
    new_constraints = list(problem.constraints)
    out = []
    for c in conjuncts(problem.sentence):
        if isinstance(c, Counting):
            body_free = free_variables(c.body)
            if body_free - {c.var}:
                raise UnsupportedError(
                    "counting quantifier body with two free variables is "
                    "not supported")
            pred = names.fresh("count", Fraction(1), Fraction(1))
            out.append(Forall(c.var, Iff(Atom(pred, (c.var,)), c.body)))
            new_constraints.append(
                CardinalityConstraint((pred,), c.cmp, c.bound))
        else:
            if _contains_counting(c):
                raise UnsupportedError(
                    "counting quantifiers are only supported as top-level "
                    "conjuncts of the sentence")
            out.append(c)
    return names.problem.replace(sentence=conjoin(out) if out else TRUE,
                                 constraints=new_constraints)


def _contains_counting(f: Formula) -> bool:
    if isinstance(f, Counting):
        return True
    if isinstance(f, (Atom, Top, Bottom)):
        return False
    if isinstance(f, Not):
        return _contains_counting(f.body)
    if isinstance(f, (And, Or, Implies, Iff)):
        return _contains_counting(f.left) or _contains_counting(f.right)
    return _contains_counting(f.body)


# ---------------------------------------------------------------------------
# Skolemization
# ---------------------------------------------------------------------------

class _Skolemizer:
    """Eliminates quantifiers from an NNF sentence, conjunct by conjunct.

    Inner existential subformulas ``exists v. b`` (with at most one free
    variable u) are replaced by an atom Z(u) where Z is an exact
    definition: the emitted clauses

        forall u,v: Z(u) | ~b        (witness forces Z)
        forall u:   Z(u) | S(u)
        forall u,v: S(u) | ~b        (witness forces S)

    with weights Z:(1,1), S:(1,-1) cancel every world in which Z does not
    match the truth of the existential, so Z can be used at any position.
    Inner universals go through the same machinery via ~exists~.  An
    existential that is itself a whole conjunct (possibly under a
    universal prefix) only needs the cancellation predicate:
    ``forall u exists v. b`` becomes ``forall u,v (S(u) | ~b)``.

    Subformulas are cached, so repeated existentials share predicates.
    """

    def __init__(self, problem: Problem):
        self.names = _FreshNames(problem)
        self.clauses: list[Formula] = []
        self.cache: dict[Formula, Formula] = {}

    def run(self) -> Problem:
        sentence = self.names.problem.sentence
        parts = []
        for c in conjuncts(sentence):
            parts.append(self._conjunct(c))
        matrix = conjoin(parts + self.clauses)
        if not is_quantifier_free(matrix):
            raise UnsupportedError(f"could not normalize conjunct: {matrix}")
        sentence = Forall("x", Forall("y", matrix))
        return self.names.problem.replace(sentence=sentence)

    def _conjunct(self, c: Formula) -> Formula:
        prefix: list[str] = []
        while isinstance(c, Forall):
            if c.var in prefix:
                raise UnsupportedError(
                    f"repeated quantified variable {c.var}")
            prefix.append(c.var)
            c = c.body
        if isinstance(c, Exists):
            inner = self._eliminate(c.body)
            return self._drop_form(c.var, inner)
        return self._eliminate(c)

    def _drop_form(self, var: str, body: Formula) -> Formula:
        """One-predicate form for a prefix-position existential."""
        fv = free_variables(Exists(var, body))
        u = next(iter(fv)) if fv else other_variable(var)
        s = self.names.fresh("skolem", Fraction(1), Fraction(-1))
        return _mk_or(Atom(s, (u,)), to_nnf(Not(body)))

    def _eliminate(self, f: Formula) -> Formula:
        """Replace every quantified subformula of an NNF formula by atoms."""
        if isinstance(f, (Atom, Top, Bottom, Not)):
            return f
        if isinstance(f, And):
            return _mk_and(self._eliminate(f.left),
                           self._eliminate(f.right))
        if isinstance(f, Or):
            return _mk_or(self._eliminate(f.left),
                          self._eliminate(f.right))
        if isinstance(f, Forall):
            # forall v. b == ~exists v. ~b; the definition atom is exact,
            # so the rewriting is sound at any position.
            body = self._eliminate(f.body)
            z = self._define_exists(f.var, to_nnf(Not(body)))
            return Not(z)
        if isinstance(f, Exists):
            body = self._eliminate(f.body)
            return self._define_exists(f.var, body)
        if isinstance(f, Counting):
            raise UnsupportedError(
                "counting quantifier remains; run lower_counting first")
        raise TypeError(f"not an NNF formula: {f!r}")

    def _define_exists(self, var: str, body: Formula) -> Formula:
        key = Exists(var, body)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        fv = free_variables(key)
        u = next(iter(fv)) if fv else other_variable(var)
        z = self.names.fresh("def", Fraction(1), Fraction(1))
        s = self.names.fresh("skolem", Fraction(1), Fraction(-1))
        neg_body = to_nnf(Not(body))
        z_atom = Atom(z, (u,))
        self.clauses.append(_mk_or(z_atom, neg_body))
        self.clauses.append(_mk_or(z_atom, Atom(s, (u,))))
        self.clauses.append(_mk_or(Atom(s, (u,)), neg_body))
        self.cache[key] = z_atom
        return z_atom


def skolemize(problem: Problem) -> Problem:
    """Eliminate all quantifiers; the sentence must already be in NNF."""
    if _contains_counting(problem.sentence):
        raise UnsupportedError(
            "counting quantifiers remain; run lower_counting first")
    return _Skolemizer(problem).run()


# ---------------------------------------------------------------------------
# Full pipeline
# ---------------------------------------------------------------------------

def normalize(problem: Problem) -> Problem:
    """Full reduction to ``forall x forall y (matrix)`` form."""
    problem.validate()
    problem = lower_source_sink(problem)
    problem = lower_counting(problem)
    problem = problem.replace(sentence=to_nnf(problem.sentence))
    problem = skolemize(problem)
    return problem


def matrix_of(problem: Problem) -> Formula:
    """The quantifier-free matrix of a normalized problem."""
    s = problem.sentence
    while isinstance(s, Forall):
        s = s.body
    if not is_quantifier_free(s):
        raise ValueError("problem is not normalized")
    return s
