from __future__ import annotations

from hypothesis import strategies as st

from recpoly import MultiPoly

VARS = ("x", "y", "z")


@st.composite
def multipolys(draw, variables: tuple[str, ...] = VARS, max_terms: int = 6,
               max_exp: int = 4, coeff_bound: int = 10**6):
    n_terms = draw(st.integers(min_value=0, max_value=max_terms))
    terms = {}
    for _ in range(n_terms):
        exps = tuple(
            draw(st.integers(min_value=0, max_value=max_exp)) for _ in variables
        )
        terms[exps] = draw(st.integers(min_value=-coeff_bound, max_value=coeff_bound))
    return MultiPoly(variables, terms)


@st.composite
def integer_points(draw, variables: tuple[str, ...] = VARS, bound: int = 9):
    return {v: draw(st.integers(min_value=-bound, max_value=bound)) for v in variables}
