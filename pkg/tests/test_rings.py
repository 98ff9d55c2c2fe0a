import itertools

import pytest
from hypothesis import given, strategies as st

from moddiv.errors import InfiniteRingError, InvariantViolation, ParseError
from moddiv.rings import (
    annihilator_gens,
    elem_arith,
    enumerate_ring,
    is_unit,
    is_zero_divisor,
    parse_ring,
    try_divide_elem,
)

FINITE = [
    "Z/6", "Z/8", "Z/12", "GF(5)", "GF(4)", "GF(9)", "GF(2)[x]/(x^2)",
    "GF(3)[x]/(x^2)", "GF(2)[x,y]/(x,y)^2", "Z/4 x GF(3)", "Z/2 x Z/2",
    "Z/4[x]/(x^2)",
]


def test_z6_division_picks_smallest_quotient():
    R = parse_ring("Z/6")
    assert try_divide_elem(R, 2, 4) == 2
    assert try_divide_elem(R, 1, 2) is None


def test_z6_annihilator_of_two():
    R = parse_ring("Z/6")
    assert annihilator_gens(R, 2) == [3]


def test_annihilator_in_square_zero_ring():
    R = parse_ring("GF(2)[x,y]/(x,y)^2")
    x = R.from_json("x")
    span = {R.zero}
    for g in annihilator_gens(R, x):
        span |= {R.add(s, g) for s in span}
    assert span == {R.from_json(e) for e in ("0", "x", "y", "x+y")}


def test_integer_division_and_annihilators():
    Z = parse_ring("Z")
    assert try_divide_elem(Z, 12, -4) == -3
    assert try_divide_elem(Z, 7, 2) is None
    assert annihilator_gens(Z, 3) == []
    assert annihilator_gens(Z, 0) == [1]
    assert is_zero_divisor(Z, 0) and not is_zero_divisor(Z, 5)


def test_polynomial_division():
    R = parse_ring("GF(2)[x]")
    assert try_divide_elem(R, R.from_json([1, 0, 1]), R.from_json([1, 1])) == R.from_json([1, 1])
    assert try_divide_elem(R, R.from_json([1, 0, 1]), R.from_json([0, 1])) is None


@pytest.mark.parametrize("desc,order", [
    ("Z/12", 12), ("GF(4)", 4), ("GF(9)", 9), ("GF(2)[x,y]/(x,y)^2", 8), ("Z/4 x GF(3)", 12),
])
def test_orders(desc, order):
    R = parse_ring(desc)
    assert R.order() == order
    assert len(list(enumerate_ring(R))) == order


def test_infinite_ring_refuses_enumeration():
    with pytest.raises(InfiniteRingError):
        list(enumerate_ring(parse_ring("Z")))


@pytest.mark.parametrize("desc", ["Z/0", "GF(6)", "GF(2)[x]/(x^2+", "Q", ""])
def test_bad_descriptors(desc):
    with pytest.raises((ParseError, InvariantViolation)):
        parse_ring(desc)


def test_non_associative_table_names_the_triple():
    # e1*e1 = e2, e1*e2 = 0, e2*e2 = e1: (e1*e1)*e2 = e1 but e1*(e1*e2) = 0
    desc = {"table": {"base": "GF(2)", "dim": 3, "one": [1, 0, 0], "mul": [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 1, 0], [0, 0, 1], [0, 0, 0]],
        [[0, 0, 1], [0, 0, 0], [0, 1, 0]],
    ]}}
    with pytest.raises(InvariantViolation, match=r"associative on basis triple \(\d, \d, \d\)"):
        parse_ring(desc)


def test_table_ring_matches_sugar():
    desc = {"table": {"base": "GF(2)", "dim": 2, "one": [1, 0], "mul": [
        [[1, 0], [0, 1]],
        [[0, 1], [0, 0]],
    ]}}
    R = parse_ring(desc)
    S = parse_ring("GF(2)[x]/(x^2)")
    assert R.order() == S.order() == 4
    assert sum(is_unit(R, a) for a in enumerate_ring(R)) == sum(is_unit(S, a) for a in enumerate_ring(S)) == 2


@pytest.mark.parametrize("desc", FINITE)
def test_ring_axioms_exhaustive(desc):
    R = parse_ring(desc)
    els = list(enumerate_ring(R))
    assert len(els) <= 64
    one, zero = R.one, R.zero
    for a in els:
        assert R.add(a, zero) == a and R.mul(a, one) == a
        assert R.add(a, R.neg(a)) == zero
    for a, b in itertools.product(els, repeat=2):
        assert R.add(a, b) == R.add(b, a)
        assert R.mul(a, b) == R.mul(b, a)
    sample = els if len(els) <= 16 else els[::3]
    for a, b, c in itertools.product(sample, repeat=3):
        assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
        assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
        assert R.add(R.add(a, b), c) == R.add(a, R.add(b, c))


@pytest.mark.parametrize("desc", FINITE)
def test_units_and_zero_divisors_partition(desc):
    R = parse_ring(desc)
    els = list(enumerate_ring(R))
    for a in els:
        zd = any(R.mul(a, b) == R.zero for b in els if b != R.zero)
        assert is_zero_divisor(R, a) == zd
        assert is_unit(R, a) != zd


@pytest.mark.parametrize("desc", FINITE)
def test_division_and_annihilators_against_enumeration(desc):
    R = parse_ring(desc)
    els = list(enumerate_ring(R))
    for a, b in itertools.product(els, repeat=2):
        c = try_divide_elem(R, a, b)
        if c is None:
            assert all(R.mul(b, x) != a for x in els)
        else:
            assert R.mul(b, c) == a
    for a in els:
        ann = {x for x in els if R.mul(a, x) == R.zero}
        span = {R.zero}
        for g in annihilator_gens(R, a):
            assert R.mul(a, g) == R.zero
            span = {R.add(s, R.mul(r, g)) for s in span for r in els} | span
        assert span == ann


ints = st.integers(-10**6, 10**6)


@given(ints, ints)
def test_integer_division_property(a, b):
    Z = parse_ring("Z")
    c = try_divide_elem(Z, a, b)
    if b == 0:
        assert (c is not None) == (a == 0)
    elif a % b == 0:
        assert c == a // b
    else:
        assert c is None


@given(st.lists(st.integers(0, 2), min_size=1, max_size=6), st.lists(st.integers(0, 2), min_size=1, max_size=4))
def test_poly_product_is_divisible(a, b):
    R = parse_ring("GF(3)[x]")
    a, b = R.from_json(a), R.from_json(b)
    prod = elem_arith(R, "mul", a, b)
    if b != R.zero:
        assert try_divide_elem(R, prod, b) == a
