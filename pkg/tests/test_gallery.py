import pytest
from hypothesis import given, settings, strategies as st

from moddiv.divisibility import oracle_divide, seeming_vs_divisible
from moddiv.errors import HypothesisViolation
from moddiv.gallery import (
    CATALOG,
    SizeBounds,
    classify_finite_ring,
    gallery_build,
    idempotents,
    nilpotents,
    probe_ring,
    split_through_factors,
    step2_counterexample,
)
from moddiv.modules import ModuleHom
from moddiv.rings import parse_ring

T = parse_ring("GF(2)[x,y]/(x,y)^2")


def test_classify_z12():
    cls = classify_finite_ring(parse_ring("Z/12"))
    assert sorted(f.size for f in cls.factors) == [3, 4]
    assert all(f.principal for f in cls.factors)
    assert cls.predicted_sp and cls.iso_checked
    assert {f.idempotent for f in cls.factors} == {4, 9}


def test_classify_field():
    cls = classify_finite_ring(parse_ring("GF(4)"))
    assert len(cls.factors) == 1
    f = cls.factors[0]
    assert len(f.maximal_ideal) == 1 and f.principal and f.residue_field_size == 4


def test_classify_square_zero_ring():
    cls = classify_finite_ring(T)
    (f,) = cls.factors
    assert len(f.maximal_ideal) == 4
    assert len(f.generators) == 2 and not f.principal
    assert f.residue_field_size == 2
    assert not cls.predicted_sp


def test_classify_needs_two_generators_even_when_m2_nonzero():
    cls = classify_finite_ring(parse_ring("GF(2)[x,y]/(x^2,y^2)"))
    assert len(cls.factors[0].generators) == 2


def test_nilpotents_and_idempotents():
    R = parse_ring("Z/12")
    assert nilpotents(R) == [0, 6]
    assert sorted(idempotents(R)) == [0, 1, 4, 9]


def test_step2_on_square_zero_ring():
    f, r = step2_counterexample(T, T.from_json("x"), T.from_json("y"))
    assert f.target.gens == 1 and f.target.relations.cols == 0
    cmp = seeming_vs_divisible(f, r)
    assert cmp.status == "counterexample"
    assert oracle_divide(f, r).count == 4


def test_step2_with_nonzero_m_squared():
    R = parse_ring("GF(2)[x,y]/(x^2,y^2)")
    f, r = step2_counterexample(R, R.from_json("x"), R.from_json("y"))
    assert f.target.relations.entries == ((R.from_json("x*y"),),)
    assert seeming_vs_divisible(f, r).status == "counterexample"
    assert not oracle_divide(f, r).divisible


def test_step2_refuses_principal_rings():
    with pytest.raises(HypothesisViolation):
        step2_counterexample(parse_ring("Z/4"), 2)


def test_step2_rejects_bad_parameters():
    with pytest.raises(HypothesisViolation):
        step2_counterexample(T, T.from_json("x"), T.from_json("x"))
    with pytest.raises(HypothesisViolation):
        step2_counterexample(T, T.one, T.from_json("y"))


def test_probe_field_is_clean():
    v = probe_ring(parse_ring("GF(3)"), trials=100, seed=0)
    assert v.counterexample is None and v.trials == 100 and not v.disagreements


def test_probe_principal_ring_is_clean():
    v = probe_ring(parse_ring("Z/8"), trials=150, seed=7)
    assert v.counterexample is None and v.oracle_checks > 0 and not v.disagreements


def test_probe_finds_counterexample_in_step2_phase():
    v = probe_ring(T, trials=10, seed=0)
    assert v.phase == "step2" and v.counterexample["index"] == 0
    assert v.trials == 0


def test_probe_is_deterministic():
    R = parse_ring("Z/4 x GF(3)")
    a = probe_ring(R, trials=40, seed=3).to_json()
    b = probe_ring(R, trials=40, seed=3).to_json()
    assert a == b


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_scenarios_meet_expectations(name):
    sc = gallery_build(name)
    f = ModuleHom.from_json(sc["homs"]["f"])
    r = f.ring.from_json(sc["r"])
    exp = sc["expected"]
    cmp = seeming_vs_divisible(f, r)
    assert cmp.status == exp["status"]
    assert cmp.seeming.verdict == exp["seeming"]
    assert cmp.certificate.divisible == exp["divisible"]
    if "predictedSP" in exp:
        assert classify_finite_ring(f.ring).predicted_sp == exp["predictedSP"]
    if "counterexampleFactor" in exp:
        e = f.ring.from_json(exp["counterexampleFactor"])
        statuses = dict(split_through_factors(f, r))
        assert statuses[e] == "counterexample"
        assert sum(s == "counterexample" for s in statuses.values()) == 1


def test_unknown_scenario():
    with pytest.raises(HypothesisViolation):
        gallery_build("no-such-scenario")


BASES = ["GF(2)", "GF(3)", "Z/4"]
MONOMIAL_RINGS = [
    "GF(2)[x]/(x^3)", "GF(3)[x]/(x^2)", "GF(2)[x,y]/(x,y)^2", "GF(2)[x,y]/(x^2,y^2)",
    "GF(3)[x,y]/(x,y)^2", "GF(2)[x,y]/(x^2,x*y,y^3)", "GF(2)[x,y,z]/(x,y,z)^2",
]


@pytest.mark.slow
@pytest.mark.parametrize("desc", MONOMIAL_RINGS)
def test_classifier_agrees_with_probe(desc):
    R = parse_ring(desc)
    v = probe_ring(R, trials=30, seed=11, bounds=SizeBounds(max_module_size=512))
    assert not v.disagreements
    assert (v.counterexample is None) == v.predicted_sp
    if not v.predicted_sp:
        assert v.phase == "step2"


@settings(max_examples=15)
@given(st.sampled_from(["Z/4", "GF(2)", "Z/9", "GF(2)[x]/(x^2)"]),
       st.sampled_from(["GF(3)", "GF(2)[x,y]/(x,y)^2", "Z/8"]),
       st.integers(0, 10**6))
def test_product_reduction(left, right, seed):
    R = parse_ring(f"{left} x {right}")
    v = probe_ring(R, trials=15, seed=seed, bounds=SizeBounds(max_module_size=1024))
    assert not v.disagreements
    if v.counterexample is not None:
        f = ModuleHom.from_json(v.counterexample["hom"])
        r = f.ring.from_json(v.counterexample["r"])
        statuses = split_through_factors(f, r)
        assert any(s == "counterexample" for _, s in statuses)
    assert (v.counterexample is None) == v.predicted_sp
