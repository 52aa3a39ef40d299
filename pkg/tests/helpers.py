"""Shared test utilities: hypothesis strategies for random polynomials."""

from fractions import Fraction

from hypothesis import strategies as st

from pardual.polyring import NUM_VARS, X1, X2, Polynomial


@st.composite
def monomials(draw, variables=(X1, X2), max_degree=4):
    remaining = max_degree
    exps = {}
    for var in variables:
        e = draw(st.integers(min_value=0, max_value=remaining))
        if e:
            exps[var] = e
            remaining -= e
    return tuple(sorted(exps.items()))


@st.composite
def polynomials(draw, variables=(X1, X2), max_terms=8, max_degree=4,
                min_coeff=-9, max_coeff=9):
    n_terms = draw(st.integers(min_value=0, max_value=max_terms))
    terms = {}
    for _ in range(n_terms):
        mono = draw(monomials(variables=variables, max_degree=max_degree))
        coeff = draw(st.integers(min_value=min_coeff, max_value=max_coeff))
        terms[mono] = Fraction(coeff)
    return Polynomial(terms)


def nonzero_polynomials(variables=(X1, X2), **kwargs):
    return polynomials(variables=variables, **kwargs).filter(bool)


all_variable_polynomials = polynomials(variables=tuple(range(NUM_VARS)), max_degree=6)
