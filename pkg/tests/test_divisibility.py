import pytest
from hypothesis import given, strategies as st

from moddiv.divisibility import (
    divide,
    is_seemingly_divisible,
    oracle_divide,
    seeming_vs_divisible,
    verify_certificate,
)
from moddiv.gallery import step2_counterexample
from moddiv.linalg import RingMatrix
from moddiv.modules import FPModule, ModuleHom, hom_validate, zero_hom
from moddiv.rings import parse_ring

from conftest import hom, module
from test_modules import small_modules

Z = parse_ring("Z")
T = parse_ring("GF(2)[x,y]/(x,y)^2")
X, Y = T.from_json("x"), T.from_json("y")


def step2_map():
    return ModuleHom(FPModule.cyclic(T, [Y]), FPModule.free(T, 1), RingMatrix.from_rows(T, [[X]]))


def test_seeming_examples():
    Z1 = FPModule.free(Z, 1)
    assert is_seemingly_divisible(hom(Z1, Z1, [[2]]), 2).verdict
    rep = is_seemingly_divisible(hom(module(Z, 1, [[2]]), module(Z, 1, [[4]]), [[2]]), 2)
    assert not rep.verdict and not rep.kills_torsion and rep.image_divisible
    assert is_seemingly_divisible(step2_map(), X).verdict


def test_divide_examples():
    Z1 = FPModule.free(Z, 1)
    cert = divide(hom(Z1, Z1, [[6]]), 3)
    assert cert.g.matrix.entries == ((2,),)
    Z2 = module(Z, 1, [[2]])
    cert = divide(hom(Z2, Z2, [[1]]), 3)
    assert cert.divisible and cert.g.equals(hom(Z2, Z2, [[1]]))
    cert = divide(step2_map(), X)
    assert not cert.divisible and cert.reason == "linear-system-infeasible"


def test_oracle_examples():
    R4 = parse_ring("Z/4")
    M, N = FPModule.cyclic(R4, [2]), FPModule.free(R4, 1)
    cert = oracle_divide(zero_hom(M, N), 2)
    assert cert.divisible and cert.g.is_zero()
    cert = oracle_divide(step2_map(), X)
    assert not cert.divisible and cert.reason == "oracle-exhausted" and cert.count == 4
    N = FPModule.free(R4, 1)
    cert = oracle_divide(hom(N, N, [[2]]), 2)
    assert cert.g.matrix.entries == ((1,),)


def test_comparison_examples():
    assert seeming_vs_divisible(step2_map(), X).status == "counterexample"
    Z1 = FPModule.free(Z, 1)
    for r in (0, 1, 2, 5):
        assert seeming_vs_divisible(zero_hom(Z1, module(Z, 1, [[3]])), r).status == "agree"


def test_step2_helper_matches_direct_construction():
    f, r = step2_counterexample(T, X, Y)
    assert r == X
    assert f.matrix == step2_map().matrix


def test_certificate_round_trip():
    Z1 = FPModule.free(Z, 1)
    good = divide(hom(Z1, Z1, [[6]]), 3).to_json()
    assert good["verdict"] == "divisible" and verify_certificate(good)
    bad = divide(step2_map(), X).to_json()
    assert bad["verdict"] == "notDivisible" and verify_certificate(bad)
    forged = dict(good)
    forged["checkable"] = dict(good["checkable"], g=hom(Z1, Z1, [[3]]).to_json())
    assert not verify_certificate(forged)


z_small = st.integers(-6, 6)


@st.composite
def z_instances(draw):
    g = draw(st.integers(1, 3))
    h = draw(st.integers(1, 3))
    M = module(Z, g, [[draw(z_small) for _ in range(g)] for _ in range(draw(st.integers(0, 2)))])
    N = module(Z, h, [[draw(z_small) for _ in range(h)] for _ in range(draw(st.integers(0, 2)))])
    rows = [[draw(z_small) for _ in range(g)] for _ in range(h)]
    return M, N, rows


@given(z_instances(), st.integers(-6, 6))
def test_divisible_is_seemingly_divisible_over_z(inst, r):
    M, N, rows = inst
    f = hom(M, N, rows)
    if not hom_validate(f)[0]:
        return
    cmp = seeming_vs_divisible(f, r)
    # over Z both notions coincide
    assert cmp.status == "agree"
    assert cmp.certificate.divisible == cmp.seeming.verdict
    fr = f.scale(r)
    assert divide(fr, r).divisible


@given(z_instances(), st.sampled_from([1, -1]))
def test_unit_always_divides(inst, u):
    M, N, rows = inst
    f = hom(M, N, rows)
    if hom_validate(f)[0]:
        cert = divide(f, u)
        assert cert.divisible and cert.g.scale(u).equals(f)


@given(z_instances())
def test_division_by_zero(inst):
    M, N, rows = inst
    f = hom(M, N, rows)
    if hom_validate(f)[0]:
        assert divide(f, 0).divisible == f.is_zero()


FINITE = ["Z/4", "Z/8", "GF(2)[x]/(x^2)", "GF(2)[x,y]/(x,y)^2", "Z/2 x GF(3)", "GF(4)"]


@pytest.mark.parametrize("desc", FINITE)
@given(data=st.data())
def test_divide_agrees_with_oracle(desc, data):
    R = parse_ring(desc)
    M = data.draw(small_modules(R))
    N = data.draw(small_modules(R, max_gens=2, max_rel=1))
    els = R.element_list
    rows = [[data.draw(st.sampled_from(els)) for _ in range(M.gens)] for _ in range(N.gens)]
    f = ModuleHom(M, N, RingMatrix.from_rows(R, rows, M.gens))
    if not hom_validate(f)[0]:
        return
    r = data.draw(st.sampled_from(els))
    fast, slow = divide(f, r), oracle_divide(f, r)
    assert fast.divisible == slow.divisible
    if fast.divisible:
        assert fast.g.scale(r).equals(f)
        assert is_seemingly_divisible(f, r).verdict
