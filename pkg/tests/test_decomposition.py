import pytest
from hypothesis import given, strategies as st

from moddiv.decomposition import (
    invariant_factors,
    local_shape,
    modules_isomorphic,
    snf_exponents,
    split_lemma_dec,
)
from moddiv.errors import HypothesisViolation
from moddiv.modules import FPModule, compose, direct_sum, enumerate_elements, identity_hom
from moddiv.rings import parse_ring

from conftest import mat, module
from test_modules import small_modules

Z = parse_ring("Z")


@pytest.mark.parametrize("rows,gens,factors,rank", [
    ([[2, 0], [0, 3]], 2, [6], 0),
    ([[4]], 1, [4], 0),
    (None, 2, [], 2),
])
def test_invariant_factors(rows, gens, factors, rank):
    M = FPModule(Z, gens, mat(Z, rows)) if rows else FPModule.free(Z, gens)
    assert invariant_factors(M) == (factors, rank)


def test_split_over_z8():
    R = parse_ring("Z/8")
    M = direct_sum([FPModule.cyclic(R, [2]), FPModule.free(R, 1)])
    dec = split_lemma_dec(M, 2, 3)
    assert dec.exponents == (1,)
    assert dec.rank == 1
    assert all(dec.ladder)
    js = dec.to_json()
    assert js["factors"] == [{"p": 2, "exponent": 1, "multiplicity": 1}]
    assert js["remainderRank"] == 1


def test_free_module_has_no_cyclic_factors():
    R = parse_ring("Z/8")
    dec = split_lemma_dec(FPModule.free(R, 2), 2, 3)
    assert dec.exponents == () and dec.rank == 2


def test_split_over_truncated_polynomials():
    R = parse_ring("GF(2)[x]/(x^2)")
    x = R.from_json("x")
    M = direct_sum([FPModule.cyclic(R, [x]), FPModule.free(R, 1)])
    assert len(list(enumerate_elements(M))) == 8
    dec = split_lemma_dec(M, x, 2)
    assert dec.exponents == (1,) and dec.rank == 1


def test_iso_certificate_composes_to_identity():
    R = parse_ring("Z/9")
    M = FPModule(R, 2, mat(R, [[3, 0], [6, 0]]))
    dec = split_lemma_dec(M, 3, 2)
    phi, psi = dec.iso
    assert compose(psi, phi).equals(identity_hom(M))
    assert compose(phi, psi).equals(identity_hom(phi.target))


@pytest.mark.parametrize("desc,p,n", [("Z/12", 2, 2), ("Z/8", 2, 2), ("Z/8", 4, 1), ("Z", 2, 1)])
def test_bad_local_shapes(desc, p, n):
    R = parse_ring(desc)
    with pytest.raises(HypothesisViolation):
        local_shape(R, R.check(p), n)


def test_isomorphism_examples():
    assert modules_isomorphic(module(Z, 1, [[6]]), direct_sum([module(Z, 1, [[2]]), module(Z, 1, [[3]])]))
    assert not modules_isomorphic(module(Z, 1, [[4]]), direct_sum([module(Z, 1, [[2]]), module(Z, 1, [[2]])]))
    R4 = parse_ring("Z/4")
    a = FPModule.cyclic(R4, [2])
    b = FPModule.cyclic(R4, [2, 0])
    assert modules_isomorphic(a, b) and modules_isomorphic(a, b, method="search")


LOCAL = [("Z/8", "2", 3), ("Z/9", "3", 2), ("GF(2)[x]/(x^3)", "x", 3), ("Z/4", "2", 2), ("GF(3)[x]/(x^2)", "x", 2)]


@pytest.mark.parametrize("desc,p,n", LOCAL)
@given(data=st.data())
def test_decomposition_properties(desc, p, n, data):
    R = parse_ring(desc)
    p = R.from_json(int(p) if p.isdigit() else p)
    M = data.draw(small_modules(R, max_gens=3, max_rel=3))
    dec = split_lemma_dec(M, p, n)
    shape = local_shape(R, p, n)
    assert dec.all_exponents() == [e for e in snf_exponents(M, shape) if e > 0]
    assert all(dec.ladder)
    size = 1
    for e in dec.all_exponents():
        size *= len(list(enumerate_elements(FPModule.cyclic(R, [shape.power(e)]))))
    assert size == len(list(enumerate_elements(M)))


@pytest.mark.parametrize("desc", ["Z/4", "Z/6", "GF(2)[x]/(x^2)"])
@given(data=st.data())
def test_isomorphism_test_agrees_with_search(desc, data):
    R = parse_ring(desc)
    M = data.draw(small_modules(R))
    N = data.draw(small_modules(R))
    assert modules_isomorphic(M, N) == modules_isomorphic(M, N, method="search")
