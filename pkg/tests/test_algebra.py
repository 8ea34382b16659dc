import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import reference as ref
from conftest import vector_tuples, vectors
from z2z4 import MixedVector, Shape
from z2z4.algebra import (
    BinaryVector,
    add,
    co_support,
    distance,
    gray_map,
    hamming_distance,
    inner_product,
    inverse_gray_map,
    negate,
    order,
    sigma,
    support,
    weight,
)
from z2z4.errors import DimensionError

V = MixedVector.parse
H1 = V("110|112310")
H2 = V("011|011231")


def test_parse_and_print():
    assert str(H1) == "110|112310"
    assert H1.binary_part == (1, 1, 0)
    assert H1.quaternary_part == (1, 1, 2, 3, 1, 0)
    assert str(V(" 10 | 23 ")) == "10|23"
    assert V("|1230").alpha == 0
    assert V("101|").beta == 0


@pytest.mark.parametrize("bad", ["11011", "1|2|3", "2|0", "1|4", "a|1"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        V(bad)


def test_shape_invariants():
    with pytest.raises(DimensionError):
        Shape(0, 0)
    with pytest.raises(DimensionError):
        Shape(-1, 2)


def test_add_examples():
    assert add(H1, V("000|000000")) == H1
    assert add(V("0|3"), V("0|1")) == V("0|0")
    assert H1 - H2 == V("101|101123") == sigma(H2)


def test_add_shape_mismatch():
    with pytest.raises(DimensionError):
        add(V("0|1"), V("00|1"))


def test_negate_examples():
    assert negate(V("0|1")) == V("0|3")
    assert negate(V("1|2")) == V("1|2")
    assert negate(V("000|000")) == V("000|000")


def test_gray_examples():
    assert gray_map(V("|2")).bits == (1, 1)
    assert gray_map(V("000|000000")) == BinaryVector(15, 0)
    assert gray_map(V("1|3")).bits == (1, 1, 0)
    assert [gray_map(V(f"|{s}")).bits for s in range(4)] == [(0, 0), (0, 1), (1, 1), (1, 0)]


def test_weight_examples():
    assert weight(V("000|000000")) == 0
    assert weight(H1) == 8
    assert weight(V("000|200000")) == 2


def test_distance_examples():
    assert distance(H1, H1) == 0
    assert distance(V("0|1"), V("0|3")) == 2


def test_distance_matches_gray_random():
    rng = random.Random(7)
    for _ in range(1000):
        s = Shape(rng.randint(0, 8), rng.randint(0, 8) or 1)
        a, b = (MixedVector(s, rng.randrange(s.size)) for _ in range(2))
        assert distance(a, b) == hamming_distance(gray_map(a), gray_map(b))


def test_gray_isometry_exhaustive_small():
    for alpha, beta in product(range(3), range(3)):
        if alpha + beta == 0:
            continue
        s = Shape(alpha, beta)
        vecs = [MixedVector(s, v) for v in range(s.size)]
        for a in vecs:
            for b in vecs:
                assert distance(a, b) == hamming_distance(gray_map(a), gray_map(b))


def test_inner_product_examples(cstar):
    assert inner_product(V("1|3"), V("1|1")) == 1
    assert inner_product(V("11|"), V("11|")) == 0
    for w in cstar.codewords():
        assert inner_product(w, H1) == 0 and inner_product(w, H2) == 0
    assert len(cstar.codewords()) == 2048


def test_sigma_examples():
    assert sigma(H1) == H2
    v = V("100|200000")
    assert sigma(v, 6) == v
    assert sigma(v, 0) == v
    assert sigma(V("10|"), 1) == V("01|")
    assert sigma(V("|0123"), 1) == V("|3012")


def test_order_examples():
    assert order(V("000|000000")) == 1
    assert order(V("000|200000")) == 2
    assert order(H1) == 4
    assert order(V("1|")) == 2


def test_support_examples():
    z = BinaryVector.from_bits((0, 0, 0))
    assert support(z) == frozenset() and co_support(z) == {1, 2, 3}
    x = BinaryVector.from_bits((1, 1, 0))
    assert support(x) == {1, 2} and co_support(x) == {3}


def test_inverse_gray_roundtrip():
    s = Shape(2, 3)
    for v in range(s.size):
        mv = MixedVector(s, v)
        assert inverse_gray_map(gray_map(mv), s) == mv


# -- agreement with the symbol-level reference --------------------------------


@given(vector_tuples(2))
def test_packed_ops_match_reference(pair):
    a, b = pair
    ra, rb = ref.sym(a), ref.sym(b)
    assert ref.sym(a + b) == ref.add(ra, rb)
    assert ref.sym(-a) == ref.neg(ra)
    assert weight(a) == ref.weight(ra)
    assert gray_map(a).bits == ref.gray(ra)
    assert inner_product(a, b) == ref.inner(ra, rb)
    assert ref.sym(sigma(a)) == ref.shift(ra)
    assert ref.sym(3 * a) == ref.neg(ra)


# -- algebraic invariants ------------------------------------------------------


@given(vector_tuples(2))
def test_gray_isometry(pair):
    a, b = pair
    assert distance(a, b) == hamming_distance(gray_map(a), gray_map(b))
    assert weight(a) == distance(a, a.shape.zero())


@given(vector_tuples(2), st.integers(0, 20))
def test_sigma_additive(pair, k):
    a, b = pair
    assert sigma(a + b, k) == sigma(a, k) + sigma(b, k)


@given(vectors())
def test_sigma_full_period(v):
    k = max(v.alpha, 1) * max(v.beta, 1)
    assert sigma(v, k) == v


@given(vector_tuples(3))
def test_inner_product_symmetric_bilinear(triple):
    a, b, c = triple
    assert inner_product(a, b) == inner_product(b, a)
    assert inner_product(a, b + c) == (inner_product(a, b) + inner_product(a, c)) % 4


@given(vectors())
def test_order_properties(v):
    o = order(v)
    assert o in (1, 2, 4)
    assert (o * v) == v.shape.zero()
    assert order(sigma(v)) == o
    assert add(v, negate(v)) == v.shape.zero()


@settings(max_examples=50)
@given(vectors())
def test_support_partition(v):
    g = gray_map(v)
    assert support(g) | co_support(g) == set(range(1, g.length + 1))
    assert not support(g) & co_support(g)
    assert len(support(g)) == g.weight()
