import itertools

import pytest
from hypothesis import given, strategies as st

from moddiv.errors import BudgetExceeded, DimensionMismatch, RingMismatch
from moddiv.linalg import RingMatrix
from moddiv.modules import (
    FPModule,
    ModuleHom,
    direct_sum,
    enumerate_elements,
    enumerate_homs,
    express_in,
    hom_space_generators,
    hom_validate,
    is_zero_elem,
    module_new,
    quotient_by_ideal,
    submodule_presentation,
    torsion_gens,
)
from moddiv.rings import parse_ring

from conftest import hom, mat, module

Z = parse_ring("Z")
T = parse_ring("GF(2)[x,y]/(x,y)^2")
X, Y = T.from_json("x"), T.from_json("y")


def span(M, vectors):
    """Element set of the submodule generated by ``vectors`` (canonical reps)."""
    R = M.ring
    reps = list(enumerate_elements(M))

    def canon(v):
        return next(w for w in reps if M.equal(v, w))

    out = {tuple(R.zero for _ in range(M.gens))}
    for v in vectors:
        out |= {tuple(R.add(a, R.mul(c, b)) for a, b in zip(s, v)) for s in out for c in R.elements()}
    return {canon(v) for v in out}


def test_construction_examples():
    assert module_new(Z, mat(Z, [[4]])).relations == mat(Z, [[4]])
    S = direct_sum([module(Z, 1, [[2]]), module(Z, 1, [[8]])])
    assert S.relations == mat(Z, [[2, 0], [0, 8]])
    assert quotient_by_ideal(FPModule.free(Z, 1), [6]).relations == mat(Z, [[6]])


def test_zero_elements():
    Z4 = module(Z, 1, [[4]])
    assert is_zero_elem(Z4, (4,))
    assert not is_zero_elem(Z4, (2,))
    Ry = FPModule.cyclic(T, [Y])
    assert is_zero_elem(Ry, (Y,))
    assert not is_zero_elem(Ry, (X,))


def test_hom_validation():
    Z2, Z4 = module(Z, 1, [[2]]), module(Z, 1, [[4]])
    assert hom_validate(hom(Z2, Z4, [[1]])) == (False, 0)
    assert hom_validate(hom(Z2, Z4, [[2]])) == (True, None)
    f = ModuleHom(FPModule.cyclic(T, [Y]), FPModule.free(T, 1), RingMatrix.from_rows(T, [[X]]))
    assert hom_validate(f)[0]


def test_hom_shape_and_ring_checks():
    with pytest.raises(DimensionMismatch):
        ModuleHom(FPModule.free(Z, 2), FPModule.free(Z, 1), mat(Z, [[1]]))
    R6 = parse_ring("Z/6")
    with pytest.raises(RingMismatch):
        ModuleHom(FPModule.free(Z, 1), FPModule.free(R6, 1), mat(Z, [[1]]))


def test_torsion_examples():
    Z4 = module(Z, 1, [[4]])
    assert {v[0] % 4 for v in torsion_gens(Z4, 2)} == {2}
    assert torsion_gens(FPModule.free(Z, 1), 2) == []
    Ry = FPModule.cyclic(T, [Y])
    gens = torsion_gens(Ry, X, verify=True)
    assert span(Ry, gens) == span(Ry, [(X,), (Y,)])
    assert len(span(Ry, gens)) == 2


def test_enumeration_counts():
    R4 = parse_ring("Z/4")
    assert len(list(enumerate_elements(FPModule.free(R4, 1)))) == 4
    homs = list(enumerate_homs(FPModule.cyclic(R4, [2]), FPModule.free(R4, 1)))
    assert [h.matrix.entries[0][0] for h in homs] == [0, 2]
    homs = list(enumerate_homs(FPModule.cyclic(T, [Y]), FPModule.free(T, 1)))
    assert {h.matrix.entries[0][0] for h in homs} == {T.zero, X, Y, T.add(X, Y)}


def test_enumeration_budget():
    R = parse_ring("Z/8")
    with pytest.raises(BudgetExceeded):
        list(enumerate_elements(FPModule.free(R, 8)))


def test_submodule_presentation_and_express():
    Z8 = module(Z, 1, [[8]])
    sub = submodule_presentation(Z8, [(2,)])
    # 2 generates a copy of Z/4
    assert sub.is_zero((4,)) and not sub.is_zero((2,))
    assert express_in(Z8, [(2,)], (6,)) is not None
    assert express_in(Z8, [(2,)], (3,)) is None
    a = express_in(Z8, [(2,)], (6,))
    assert Z8.equal((2 * a[0],), (6,))


FINITE = ["Z/4", "Z/6", "GF(2)[x]/(x^2)", "GF(2)[x,y]/(x,y)^2", "Z/2 x GF(3)"]


@st.composite
def small_modules(draw, R, max_gens=2, max_rel=2):
    els = R.element_list
    g = draw(st.integers(1, max_gens))
    k = draw(st.integers(0, max_rel))
    cols = [tuple(draw(st.sampled_from(els)) for _ in range(g)) for _ in range(k)]
    if not cols:
        return FPModule.free(R, g)
    return FPModule(R, g, RingMatrix.from_columns(R, cols, g))


@pytest.mark.parametrize("desc", FINITE)
@given(data=st.data())
def test_direct_sum_cardinality(desc, data):
    R = parse_ring(desc)
    M = data.draw(small_modules(R))
    N = data.draw(small_modules(R, max_gens=1))
    S = direct_sum([M, N])
    assert len(list(enumerate_elements(S))) == len(list(enumerate_elements(M))) * len(list(enumerate_elements(N)))


@pytest.mark.parametrize("desc", FINITE)
@given(data=st.data())
def test_torsion_sound_and_complete(desc, data):
    R = parse_ring(desc)
    M = data.draw(small_modules(R))
    r = data.draw(st.sampled_from(R.element_list))
    gens = torsion_gens(M, r)
    for t in gens:
        assert M.is_zero(tuple(R.mul(r, a) for a in t))
    killed = {v for v in enumerate_elements(M) if M.is_zero(tuple(R.mul(r, a) for a in v))}
    assert span(M, gens) == killed


@pytest.mark.parametrize("desc", FINITE)
@given(data=st.data())
def test_hom_space_closure(desc, data):
    R = parse_ring(desc)
    M = data.draw(small_modules(R))
    N = data.draw(small_modules(R, max_gens=1))
    homs = list(enumerate_homs(M, N))
    for h in homs:
        assert hom_validate(h)[0]
    # every generator-image assignment passing validation is enumerated once
    reps = list(enumerate_elements(N))
    valid = [
        imgs for imgs in itertools.product(reps, repeat=M.gens)
        if hom_validate(ModuleHom(M, N, RingMatrix.from_columns(R, imgs, N.gens)))[0]
    ]
    assert len(valid) == len(homs)
    # sums and scalar multiples of homs are homs
    a, b = data.draw(st.sampled_from(homs)), data.draw(st.sampled_from(homs))
    c = data.draw(st.sampled_from(R.element_list))
    assert hom_validate(a + b.scale(c))[0]
    # the generators of Hom(M, N) are homs and generate all of them
    gens = [ModuleHom(M, N, G) for G in hom_space_generators(M, N)]
    for g in gens:
        assert hom_validate(g)[0]
    reached = {ModuleHom(M, N, RingMatrix.zeros(R, N.gens, M.gens))}
    for g in gens:
        reached |= {h + g.scale(x) for h in reached for x in R.element_list}
    canon = lambda h: tuple(next(i for i, w in enumerate(reps) if N.equal(h.image(M.basis_vector(j)), w))
                            for j in range(M.gens))  # noqa: E731
    assert {canon(h) for h in reached} == {canon(h) for h in homs}
