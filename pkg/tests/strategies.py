"""Hypothesis strategies for exact finite distributions."""

from fractions import Fraction

from hypothesis import strategies as st

from negdep import make_pmf

_VALUES = [Fraction(0), Fraction(1), Fraction(2), Fraction(1, 2), Fraction(-1)]


@st.composite
def finite_distributions(draw, min_dim=1, max_dim=3, max_atoms=5, values=None):
    """Distributions with small supports and exact random weights."""
    pool = values if values is not None else _VALUES
    dim = draw(st.integers(min_dim, max_dim))
    vectors = draw(
        st.lists(
            st.tuples(*[st.sampled_from(pool) for _ in range(dim)]),
            min_size=1,
            max_size=max_atoms,
            unique=True,
        )
    )
    weights = draw(
        st.lists(st.integers(1, 9), min_size=len(vectors), max_size=len(vectors))
    )
    total = sum(weights)
    return make_pmf(dim, [(v, Fraction(w, total)) for v, w in zip(vectors, weights)])


@st.composite
def distribution_pairs(draw, dim=2, max_atoms=4, values=None):
    """Two distributions of the same dimension (for order comparisons)."""
    d1 = draw(finite_distributions(min_dim=dim, max_dim=dim, max_atoms=max_atoms, values=values))
    d2 = draw(finite_distributions(min_dim=dim, max_dim=dim, max_atoms=max_atoms, values=values))
    return d1, d2
