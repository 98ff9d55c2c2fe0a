import pytest
from hypothesis import given, strategies as st

from moddiv.errors import HypothesisViolation
from moddiv.divisibility import divide
from moddiv.homological import TwoTermComplex, homology_maps, null_homotopy, obstruction_class
from moddiv.linalg import RingMatrix
from moddiv.modules import FPModule, ModuleHom, hom_validate, identity_hom, zero_hom
from moddiv.rings import parse_ring

from conftest import hom, module
from test_divisibility import step2_map, z_instances

Z = parse_ring("Z")
T = parse_ring("GF(2)[x,y]/(x,y)^2")


def test_complex_homology():
    C = TwoTermComplex(module(Z, 1, [[4]]), 2)
    assert C.h0().is_zero((2,)) and not C.h0().is_zero((1,))
    assert C.h1().is_zero((2,)) and not C.h1().is_zero((1,))


def test_multiplication_on_free_z():
    Z1 = FPModule.free(Z, 1)
    hm = homology_maps(hom(Z1, Z1, [[2]]), 2)
    assert hm.h0_zero and hm.h1_zero and hm.cone_applicable
    assert hm.h1.source.gens == 0


def test_torsion_obstruction_detected_in_h1():
    f = hom(module(Z, 1, [[2]]), module(Z, 1, [[4]]), [[2]])
    hm = homology_maps(f, 2)
    assert hm.h0_zero and not hm.h1_zero
    assert null_homotopy(f, 2) is None
    assert not divide(f, 2).divisible


def test_identity_on_z3():
    Z3 = module(Z, 1, [[3]])
    hm = homology_maps(identity_hom(Z3), 3)
    assert not hm.h0_zero and not hm.h1_zero
    assert hm.h0.matrix == RingMatrix.identity(Z, 1)
    # H1 is generated by the class of 1 and maps to itself
    assert hm.h1.equals(identity_hom(hm.h1.source))


def test_null_homotopies():
    Z1 = FPModule.free(Z, 1)
    h = null_homotopy(hom(Z1, Z1, [[2]]), 2)
    assert h.matrix == RingMatrix.identity(Z, 1)
    P = parse_ring("GF(2)[x]")
    x = P.from_json("x")
    M = FPModule.cyclic(P, [P.from_json([0, 0, 1])])
    h = null_homotopy(ModuleHom(M, M, RingMatrix.from_rows(P, [[x]])), x)
    assert h.equals(identity_hom(M))


def test_null_homotopy_rejects_zero_divisors():
    R4 = parse_ring("Z/4")
    M = FPModule.free(R4, 1)
    with pytest.raises(HypothesisViolation):
        null_homotopy(zero_hom(M, M), 2)


def test_obstruction_examples():
    Z1 = FPModule.free(Z, 1)
    rep = obstruction_class(hom(Z1, Z1, [[4]]), 4)
    assert rep.ext_class == "zero" and rep.homotopy_status == "yes"
    assert rep.homotopy.matrix == RingMatrix.identity(Z, 1)
    rep = obstruction_class(zero_hom(Z1, module(Z, 1, [[6]])), 3)
    assert rep.ext_class == "zero" and rep.homotopy.is_zero()
    rep = obstruction_class(zero_hom(Z1, Z1), 0)
    assert rep.ext_class == "notComputed" and rep.reason == "unsupported coefficient ring"
    rep = obstruction_class(hom(module(Z, 1, [[2]]), module(Z, 1, [[4]]), [[2]]), 2)
    assert rep.ext_class == "notComputed" and rep.reason == "homology maps nonzero"


def test_obstruction_of_counterexample_is_nonzero():
    rep = obstruction_class(step2_map(), T.from_json("x"))
    assert rep.h0_zero and rep.h1_zero
    assert rep.ext_class == "nonzero"
    assert rep.homotopy_status == "notApplicable"
    js = rep.to_json()
    assert js["extClass"] == "nonzero" and "cocycle" in js


@given(z_instances(), st.sampled_from([2, 3, 4, 5, 6]))
def test_class_vanishes_exactly_for_divisible_maps(inst, r):
    M, N, rows = inst
    f = hom(M, N, rows)
    if not hom_validate(f)[0]:
        return
    rep = obstruction_class(f, r)
    divisible = divide(f, r).divisible
    if rep.ext_class != "notComputed":
        assert (rep.ext_class == "zero") == divisible
        # over Z a seemingly divisible map is divisible
        assert rep.ext_class == "zero"
    assert (rep.homotopy_status == "yes") == divisible
