"""Exact ring elements: rationals and sparse multivariate polynomials.

The counting code is ring-generic; it only uses ``+``, ``*`` and integer
powers.  Plain counts are ``fractions.Fraction``; when cardinality
constraints are present the weights of constrained predicates become
polynomial indeterminates and every intermediate value is a `Polynomial`
over a fixed tuple of variable names.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

RingElement = Union[int, Fraction, "Polynomial"]


class Polynomial:
    """Sparse multivariate polynomial with exact rational coefficients.

    Terms are kept in a dict mapping exponent tuples (one entry per
    variable in ``vars``) to nonzero Fraction coefficients.  Instances are
    immutable by convention.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple[str, ...], terms: dict):
        self.vars = vars
        self.terms = {e: c for e, c in terms.items() if c != 0}

    @classmethod
    def constant(cls, value, vars: tuple[str, ...]) -> "Polynomial":
        value = Fraction(value)
        zero = (0,) * len(vars)
        return cls(vars, {zero: value} if value else {})

    @classmethod
    def variable(cls, name: str, vars: tuple[str, ...]) -> "Polynomial":
        exps = tuple(1 if v == name else 0 for v in vars)
        if name not in vars:
            raise ValueError(f"unknown polynomial variable {name}")
        return cls(vars, {exps: Fraction(1)})

    # -- helpers ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.vars != self.vars:
                raise ValueError("polynomials over different variables")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.vars)
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial."""
        if not self.terms:
            return Fraction(0)
        zero = (0,) * len(self.vars)
        if set(self.terms) != {zero}:
            raise ValueError("polynomial is not constant")
        return self.terms[zero]

    def coefficient(self, exps: tuple[int, ...]) -> Fraction:
        return self.terms.get(exps, Fraction(0))

    def monomials(self):
        """Deterministic iteration over (exponents, coefficient) pairs."""
        return sorted(self.terms.items())

    def evaluate(self, values: dict) -> Fraction:
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            term = coeff
            for var, e in zip(self.vars, exps):
                if e:
                    term *= Fraction(values[var]) ** e
            total += term
        return total

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return Polynomial(self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Polynomial(self.vars, {})
            return Polynomial(self.vars,
                              {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return Polynomial(self.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.constant(1, self.vars)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            zero = (0,) * len(self.vars)
            if not self.terms:
                return other == 0
            return set(self.terms) == {zero} and self.terms[zero] == other
        if isinstance(other, Polynomial):
            return self.vars == other.vars and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, coeff in self.monomials():
            factors = [str(coeff)]
            for var, e in zip(self.vars, exps):
                if e == 1:
                    factors.append(var)
                elif e > 1:
                    factors.append(f"{var}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)


def as_fraction(value: RingElement) -> Fraction:
    """Collapse a ring element known to be constant into a Fraction."""
    if isinstance(value, Polynomial):
        return value.constant_value()
    return Fraction(value)


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)
