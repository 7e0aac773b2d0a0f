"""Shared hypothesis strategies for the test suite."""

from hypothesis import strategies as st

from kacpoly.laurent import LaurentPolynomial, RationalFunction
from kacpoly.quiver import Arrow, Quiver

coefficients = st.integers(min_value=-6, max_value=6)
exponents = st.integers(min_value=-5, max_value=5)


def laurent_polys(min_size=0, max_size=4):
    return st.dictionaries(exponents, coefficients, min_size=min_size, max_size=max_size).map(
        LaurentPolynomial
    )


def nonzero_laurent_polys(max_size=4):
    return laurent_polys(min_size=1, max_size=max_size).filter(bool)


def rational_functions():
    return st.builds(
        lambda n, d: RationalFunction(n, d),
        laurent_polys(max_size=3),
        nonzero_laurent_polys(max_size=3),
    )


@st.composite
def small_quivers(draw, max_vertices=3, max_arrows=4):
    n = draw(st.integers(min_value=1, max_value=max_vertices))
    n_arrows = draw(st.integers(min_value=0, max_value=max_arrows))
    arrows = tuple(
        Arrow(
            f"a{k}",
            draw(st.integers(min_value=0, max_value=n - 1)),
            draw(st.integers(min_value=0, max_value=n - 1)),
        )
        for k in range(n_arrows)
    )
    return Quiver(n, arrows)


@st.composite
def quivers_with_vectors(draw, max_entry=3):
    q = draw(small_quivers())
    gamma = tuple(
        draw(st.integers(min_value=0, max_value=max_entry)) for _ in range(q.n_vertices)
    )
    return q, gamma


def partitions(max_weight=8):
    return st.integers(min_value=0, max_value=max_weight).flatmap(
        lambda n: st.sampled_from(_partition_list(n))
    )


def _partition_list(n):
    from kacpoly.partitions import partitions_of

    return list(partitions_of(n))
