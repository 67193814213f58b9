"""Parser for the line-oriented problem format.

A problem file contains predicate declarations, at most one acyclicity
axiom, cardinality constraints and exactly one sentence::

    # comments start with '#'
    predicate R/2 weight 1 1
    predicate Src/1
    axiom acyclic(R, Src, _)
    constraint |Src| = 2
    sentence forall x forall y (R(x,y) -> ~R(y,x))

Formula operators, loosest to tightest: ``<->``, ``->``, ``|``, ``&``,
``~``.  Quantifiers (``forall v.``, ``exists v.``, ``exists[=k] v.``,
``exists[<=k] v.``, ``exists[>=k] v.``) extend as far to the right as
possible; the dot is optional.  Terms are the variables ``x`` and ``y``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .syntax import (Atom, And, Bottom, Counting, CardinalityConstraint,
                     DagAxiom, Exists, Forall, FALSE, Iff, Implies, Not, Or,
                     ParseError, Predicate, Problem, RESERVED_PREFIX, TRUE,
                     Top, ValidationError, Vocabulary, WeightTable)

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<int>\d+)
  | (?P<op><->|->|<=|>=|[~&|().,=/+\[\]_-])
""", re.VERBOSE)


class _Token:
    __slots__ = ("kind", "text", "line", "column")

    def __init__(self, kind, text, line, column):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column


def _tokenize(text: str, line_no: int) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos] == RESERVED_PREFIX:
            raise ParseError("'$' is reserved for generated predicates",
                             line_no, pos + 1)
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}",
                             line_no, pos + 1)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(_Token(kind, m.group(), line_no, pos + 1))
        pos = m.end()
    return tokens


class _TokenStream:
    def __init__(self, tokens: list[_Token], line_no: int):
        self.tokens = tokens
        self.line_no = line_no
        self.index = 0

    def peek(self) -> _Token | None:
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return None

    def next(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of line", self.line_no,
                             self.tokens[-1].column if self.tokens else 1)
        self.index += 1
        return tok

    def accept(self, text: str) -> bool:
        tok = self.peek()
        if tok is not None and tok.text == text:
            self.index += 1
            return True
        return False

    def expect(self, text: str) -> _Token:
        tok = self.peek()
        if tok is None or tok.text != text:
            got = tok.text if tok else "end of line"
            col = tok.column if tok else 1
            raise ParseError(f"expected {text!r}, got {got!r}",
                             self.line_no, col)
        self.index += 1
        return tok

    def done(self):
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"trailing input {tok.text!r}", self.line_no,
                             tok.column)


def _parse_int(ts: _TokenStream) -> int:
    tok = ts.next()
    if tok.kind != "int":
        raise ParseError(f"expected an integer, got {tok.text!r}",
                         ts.line_no, tok.column)
    return int(tok.text)


def _parse_rational(ts: _TokenStream) -> Fraction:
    sign = 1
    if ts.accept("-"):
        sign = -1
    num = _parse_int(ts)
    if ts.accept("/"):
        den = _parse_int(ts)
        if den == 0:
            raise ParseError("zero denominator", ts.line_no, 1)
        return Fraction(sign * num, den)
    return Fraction(sign * num)


def _parse_name(ts: _TokenStream) -> _Token:
    tok = ts.next()
    if tok.kind != "name":
        raise ParseError(f"expected a name, got {tok.text!r}",
                         ts.line_no, tok.column)
    return tok


# -- formula grammar -------------------------------------------------------

_QUANT_WORDS = {"forall", "exists"}


def _parse_formula(ts: _TokenStream):
    return _parse_iff(ts)


def _parse_iff(ts: _TokenStream):
    left = _parse_implies(ts)
    while ts.accept("<->"):
        right = _parse_implies(ts)
        left = Iff(left, right)
    return left


def _parse_implies(ts: _TokenStream):
    left = _parse_or(ts)
    if ts.accept("->"):
        right = _parse_implies(ts)
        return Implies(left, right)
    return left


def _parse_or(ts: _TokenStream):
    left = _parse_and(ts)
    while ts.accept("|"):
        left = Or(left, _parse_and(ts))
    return left


def _parse_and(ts: _TokenStream):
    left = _parse_unary(ts)
    while ts.accept("&"):
        left = And(left, _parse_unary(ts))
    return left


def _parse_unary(ts: _TokenStream):
    tok = ts.peek()
    if tok is None:
        raise ParseError("unexpected end of line", ts.line_no, 1)
    if tok.text == "~":
        ts.next()
        return Not(_parse_unary(ts))
    if tok.text == "(":
        ts.next()
        inner = _parse_formula(ts)
        ts.expect(")")
        return inner
    if tok.text in _QUANT_WORDS:
        return _parse_quantifier(ts)
    if tok.text == "true":
        ts.next()
        return TRUE
    if tok.text == "false":
        ts.next()
        return FALSE
    if tok.kind == "name":
        return _parse_atom(ts)
    raise ParseError(f"unexpected token {tok.text!r}", ts.line_no, tok.column)


def _parse_quantifier(ts: _TokenStream):
    word = ts.next()
    cmp = None
    bound = None
    if word.text == "exists" and ts.accept("["):
        tok = ts.next()
        if tok.text in ("=", "<=", ">="):
            cmp = tok.text
        else:
            raise ParseError(f"expected =, <= or >=, got {tok.text!r}",
                             ts.line_no, tok.column)
        bound = _parse_int(ts)
        ts.expect("]")
    var_tok = _parse_name(ts)
    if var_tok.text not in ("x", "y"):
        raise ParseError(f"quantified variable must be x or y, "
                         f"got {var_tok.text!r}", ts.line_no, var_tok.column)
    ts.accept(".")
    body = _parse_formula(ts)
    if cmp is not None:
        return Counting(cmp, bound, var_tok.text, body)
    if word.text == "forall":
        return Forall(var_tok.text, body)
    return Exists(var_tok.text, body)


def _parse_atom(ts: _TokenStream):
    name = _parse_name(ts)
    ts.expect("(")
    args = [_parse_term(ts)]
    while ts.accept(","):
        args.append(_parse_term(ts))
    ts.expect(")")
    return Atom(name.text, tuple(args))


def _parse_term(ts: _TokenStream) -> str:
    tok = _parse_name(ts)
    if tok.text not in ("x", "y"):
        raise ParseError(f"terms must be the variables x or y, "
                         f"got {tok.text!r}", ts.line_no, tok.column)
    return tok.text


# -- file structure ---------------------------------------------------------

def parse(text: str) -> Problem:
    """Parse a problem file and validate it against its declarations."""
    predicates: list[Predicate] = []
    weights = WeightTable()
    axiom: DagAxiom | None = None
    constraints: list[CardinalityConstraint] = []
    sentence = None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        ts = _TokenStream(_tokenize(line, line_no), line_no)
        head = ts.next()
        if head.text == "predicate":
            name = _parse_name(ts)
            ts.expect("/")
            arity = _parse_int(ts)
            w = w_bar = Fraction(1)
            if ts.accept("weight"):
                w = _parse_rational(ts)
                w_bar = _parse_rational(ts)
            ts.done()
            if any(p.name == name.text for p in predicates):
                raise ParseError(f"predicate {name.text} declared twice",
                                 line_no, name.column)
            predicates.append(Predicate(name.text, arity))
            weights = weights.with_entry(name.text, w, w_bar)
        elif head.text == "axiom":
            ts.expect("acyclic")
            ts.expect("(")
            rel = _parse_name(ts).text
            source = sink = None
            if ts.accept(","):
                source = _parse_slot(ts)
                ts.expect(",")
                sink = _parse_slot(ts)
            ts.expect(")")
            ts.done()
            if axiom is not None:
                raise ParseError("more than one acyclic axiom", line_no, 1)
            axiom = DagAxiom(rel, source, sink)
        elif head.text == "constraint":
            constraints.append(_parse_constraint(ts))
        elif head.text == "sentence":
            if sentence is not None:
                raise ParseError("more than one sentence", line_no, 1)
            sentence = _parse_formula(ts)
            ts.done()
        else:
            raise ParseError(f"unknown statement {head.text!r}",
                             line_no, head.column)

    if sentence is None:
        raise ParseError("problem has no sentence")

    try:
        voc = Vocabulary(predicates)
        problem = Problem(voc, weights, sentence, axiom, constraints)
        problem.validate()
    except ValidationError:
        raise
    return problem


def _parse_slot(ts: _TokenStream) -> str | None:
    if ts.accept("_"):
        return None
    return _parse_name(ts).text


def _parse_constraint(ts: _TokenStream) -> CardinalityConstraint:
    terms = [_parse_card_term(ts)]
    while ts.accept("+"):
        terms.append(_parse_card_term(ts))
    tok = ts.next()
    if tok.text not in ("=", "<=", ">="):
        raise ParseError(f"expected =, <= or >=, got {tok.text!r}",
                         ts.line_no, tok.column)
    bound = _parse_int(ts)
    ts.done()
    return CardinalityConstraint(tuple(terms), tok.text, bound)


def _parse_card_term(ts: _TokenStream) -> str:
    ts.expect("|")
    name = _parse_name(ts).text
    ts.expect("|")
    return name


def parse_file(path) -> Problem:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())
