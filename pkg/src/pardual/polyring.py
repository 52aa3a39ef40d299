"""Exact sparse multivariate polynomial arithmetic over the rationals.

The variable set is a fixed eight-slot registry: the source-plane pair
(x1, x2), the homogenizing variable x3, the gradient-direction triple
(eta, xi, psi) and the image-plane pair (x, y).  A monomial is a sorted
tuple of (variable, exponent) pairs with no zero exponents; a polynomial
maps monomials to nonzero Fraction coefficients.  Values are immutable
and every operation is a pure function, so everything here is safe to
share across threads.  No float ever enters the arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Mapping

VarId = int

X1, X2, X3, ETA, XI, PSI, X, Y = range(8)
VAR_NAMES = ("x1", "x2", "x3", "eta", "xi", "psi", "x", "y")
VAR_BY_NAME = {name: index for index, name in enumerate(VAR_NAMES)}
NUM_VARS = len(VAR_NAMES)

# A monomial: ((VarId, exponent), ...) sorted by VarId, all exponents > 0.
Monomial = tuple
ONE_MONOMIAL: Monomial = ()


def mono_degree(mono: Monomial) -> int:
    return sum(exp for _, exp in mono)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for var, exp in b:
        exps[var] = exps.get(var, 0) + exp
    return tuple(sorted(exps.items()))


def mono_div(a: Monomial, b: Monomial) -> Monomial | None:
    """a / b, or None when b does not divide a."""
    exps = dict(a)
    for var, exp in b:
        rest = exps.get(var, 0) - exp
        if rest < 0:
            return None
        if rest:
            exps[var] = rest
        else:
            exps.pop(var, None)
    return tuple(sorted(exps.items()))


def mono_exponents(mono: Monomial) -> tuple[int, ...]:
    """Dense exponent vector over the full registry, for ordering."""
    exps = [0] * NUM_VARS
    for var, exp in mono:
        exps[var] = exp
    return tuple(exps)


def _mono_key(mono: Monomial) -> tuple:
    # Graded lexicographic: total degree first, ties by the exponent
    # vector in registry order (x1 before x2 before ... before y).
    return (mono_degree(mono), mono_exponents(mono))


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction | int] | None = None):
        data: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                value = Fraction(coeff)
                if value:
                    data[mono] = value
        self._terms = data

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def constant(cls, value: Fraction | int) -> "Polynomial":
        return cls({ONE_MONOMIAL: Fraction(value)})

    @classmethod
    def variable(cls, var: VarId) -> "Polynomial":
        if not 0 <= var < NUM_VARS:
            raise ValueError(f"variable index {var} outside the registry")
        return cls({((var, 1),): Fraction(1)})

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Polynomial.constant(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def _coerced(self, other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other)
        return None

    def __add__(self, other) -> "Polynomial":
        rhs = self._coerced(other)
        if rhs is None:
            return NotImplemented
        result = dict(self._terms)
        for mono, coeff in rhs._terms.items():
            total = result.get(mono, Fraction(0)) + coeff
            if total:
                result[mono] = total
            else:
                result.pop(mono, None)
        out = Polynomial()
        out._terms = result
        return out

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        out = Polynomial()
        out._terms = {mono: -coeff for mono, coeff in self._terms.items()}
        return out

    def __sub__(self, other) -> "Polynomial":
        rhs = self._coerced(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other) -> "Polynomial":
        lhs = self._coerced(other)
        if lhs is None:
            return NotImplemented
        return lhs + (-self)

    def __mul__(self, other) -> "Polynomial":
        rhs = self._coerced(other)
        if rhs is None:
            return NotImplemented
        if not self._terms or not rhs._terms:
            return Polynomial()
        result: dict[Monomial, Fraction] = {}
        for mono_a, coeff_a in self._terms.items():
            for mono_b, coeff_b in rhs._terms.items():
                mono = mono_mul(mono_a, mono_b)
                total = result.get(mono, Fraction(0)) + coeff_a * coeff_b
                if total:
                    result[mono] = total
                else:
                    result.pop(mono, None)
        out = Polynomial()
        out._terms = result
        return out

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = Polynomial.constant(1)
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __repr__(self) -> str:
        from . import polyparse

        return f"Polynomial({polyparse.print_poly(self)!r})"


def constant(value: Fraction | int) -> Polynomial:
    return Polynomial.constant(value)


def variable(var: VarId) -> Polynomial:
    return Polynomial.variable(var)


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def variables(p: Polynomial) -> frozenset[VarId]:
    return frozenset(var for mono in p.terms for var, _ in mono)


def sorted_terms(p: Polynomial) -> list[tuple[Monomial, Fraction]]:
    """Terms in canonical order: graded-lex, highest first."""
    return sorted(p.terms.items(), key=lambda item: _mono_key(item[0]), reverse=True)


def total_degree(p: Polynomial) -> int:
    if not p:
        raise ValueError("total degree of the zero polynomial is undefined")
    return max(mono_degree(mono) for mono in p.terms)


def is_homogeneous(p: Polynomial) -> bool:
    degrees = {mono_degree(mono) for mono in p.terms}
    return len(degrees) <= 1


def partial_derivative(p: Polynomial, var: VarId) -> Polynomial:
    result: dict[Monomial, Fraction] = {}
    for mono, coeff in p.terms.items():
        exps = dict(mono)
        exp = exps.get(var)
        if not exp:
            continue
        if exp == 1:
            del exps[var]
        else:
            exps[var] = exp - 1
        result[tuple(sorted(exps.items()))] = coeff * exp
    return Polynomial(result)


def homogenize(p: Polynomial, new_var: VarId) -> Polynomial:
    """Lift p to a homogeneous polynomial of its total degree using new_var."""
    if not p:
        raise ValueError("cannot homogenize the zero polynomial")
    if new_var in variables(p):
        raise ValueError(f"homogenizing variable {VAR_NAMES[new_var]} already occurs")
    n = total_degree(p)
    result: dict[Monomial, Fraction] = {}
    for mono, coeff in p.terms.items():
        missing = n - mono_degree(mono)
        if missing:
            mono = tuple(sorted((dict(mono) | {new_var: missing}).items()))
        result[mono] = coeff
    return Polynomial(result)


def dehomogenize(p: Polynomial, var: VarId) -> Polynomial:
    """Substitute var = 1."""
    result: dict[Monomial, Fraction] = {}
    for mono, coeff in p.terms.items():
        stripped = tuple(pair for pair in mono if pair[0] != var)
        total = result.get(stripped, Fraction(0)) + coeff
        if total:
            result[stripped] = total
        else:
            result.pop(stripped, None)
    return Polynomial(result)


def substitute(p: Polynomial, bindings: Mapping[VarId, Polynomial]) -> Polynomial:
    """Simultaneous substitution of polynomials for variables, fully expanded."""
    if not bindings:
        return p
    powers: dict[tuple[VarId, int], Polynomial] = {}

    def power(var: VarId, exp: int) -> Polynomial:
        key = (var, exp)
        if key not in powers:
            powers[key] = bindings[var] ** exp
        return powers[key]

    result = Polynomial()
    for mono, coeff in p.terms.items():
        kept = tuple(pair for pair in mono if pair[0] not in bindings)
        term = Polynomial({kept: coeff})
        for var, exp in mono:
            if var in bindings:
                term = term * power(var, exp)
        result = result + term
    return result


def content_and_primitive(p: Polynomial) -> tuple[Fraction, Polynomial]:
    """Split p = content * primitive, the primitive part having coprime
    integer coefficients and a positive leading coefficient under the
    canonical graded-lex order."""
    if not p:
        raise ValueError("the zero polynomial has no content/primitive split")
    numerators = gcd(*(coeff.numerator for coeff in p.terms.values()))
    denominators = lcm(*(coeff.denominator for coeff in p.terms.values()))
    content = Fraction(numerators, denominators)
    leading = max(p.terms, key=_mono_key)
    if p.terms[leading] < 0:
        content = -content
    scale = 1 / content
    primitive = Polynomial({mono: coeff * scale for mono, coeff in p.terms.items()})
    return content, primitive


def divide_out_variable_power(p: Polynomial, var: VarId) -> tuple[int, Polynomial]:
    """Remove the largest power of var dividing every term; returns (k, p / var^k)."""
    if not p:
        raise ValueError("cannot strip a variable power from the zero polynomial")
    k = min(dict(mono).get(var, 0) for mono in p.terms)
    if k == 0:
        return 0, p
    result: dict[Monomial, Fraction] = {}
    for mono, coeff in p.terms.items():
        exps = dict(mono)
        rest = exps[var] - k
        if rest:
            exps[var] = rest
        else:
            del exps[var]
        result[tuple(sorted(exps.items()))] = coeff
    return k, Polynomial(result)


def evaluate_exact(p: Polynomial, point: Mapping[VarId, Fraction | int]) -> Fraction:
    total = Fraction(0)
    for mono, coeff in p.terms.items():
        term = coeff
        for var, exp in mono:
            if var not in point:
                raise ValueError(f"variable {VAR_NAMES[var]} is unbound")
            term *= Fraction(point[var]) ** exp
        total += term
    return total


def evaluate_float(p: Polynomial, point: Mapping[VarId, float]) -> float:
    # Terms are summed in canonical order so residuals are bit-reproducible.
    total = 0.0
    for mono, coeff in sorted_terms(p):
        term = float(coeff)
        for var, exp in mono:
            if var not in point:
                raise ValueError(f"variable {VAR_NAMES[var]} is unbound")
            term *= float(point[var]) ** exp
        total += term
    return total


def exact_divide(p: Polynomial, d: Polynomial) -> Polynomial:
    """Quotient p / d when the division is exact in the ring; raises otherwise."""
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    if not p:
        return Polynomial()
    d_lead = max(d.terms, key=_mono_key)
    d_lead_coeff = d.terms[d_lead]
    remainder = dict(p.terms)
    quotient: dict[Monomial, Fraction] = {}
    while remainder:
        r_lead = max(remainder, key=_mono_key)
        q_mono = mono_div(r_lead, d_lead)
        if q_mono is None:
            raise ValueError("inexact polynomial division")
        q_coeff = remainder[r_lead] / d_lead_coeff
        quotient[q_mono] = q_coeff
        for mono, coeff in d.terms.items():
            target = mono_mul(q_mono, mono)
            total = remainder.get(target, Fraction(0)) - q_coeff * coeff
            if total:
                remainder[target] = total
            else:
                remainder.pop(target, None)
    return Polynomial(quotient)
