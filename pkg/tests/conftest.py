import pytest
from hypothesis import strategies as st

from z2z4 import MixedVector, Shape


@st.composite
def shapes(draw, max_alpha=6, max_beta=6):
    a = draw(st.integers(0, max_alpha))
    b = draw(st.integers(0 if a else 1, max_beta))
    return Shape(a, b)


@st.composite
def vectors(draw, shape=None, count=1):
    shape = shape or draw(shapes())
    vs = [MixedVector(shape, draw(st.integers(0, shape.size - 1))) for _ in range(count)]
    return vs[0] if count == 1 else vs


@st.composite
def vector_tuples(draw, count, max_alpha=6, max_beta=6):
    shape = draw(shapes(max_alpha, max_beta))
    return [MixedVector(shape, draw(st.integers(0, shape.size - 1))) for _ in range(count)]


@pytest.fixture(scope="session")
def cstar():
    from z2z4 import build_cstar

    return build_cstar()


@pytest.fixture(scope="session")
def cstar_dual(cstar):
    return cstar.dual()
