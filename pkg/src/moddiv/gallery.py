"""Finite rings: classification, the step2 counterexample and random probes.

A finite commutative ring is the product of the local rings ``R e`` over its
primitive idempotents ``e``.  Seeming divisibility equals divisibility over
``R`` exactly when every such factor is a principal ideal ring, which for a
finite local ring means its maximal ideal is principal.  ``probe_ring`` tests
that prediction empirically against the solver and the exhaustive oracle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .divisibility import Comparison, oracle_divide, seeming_vs_divisible
from .errors import BudgetExceeded, HypothesisViolation, InfiniteRingError, InternalError
from .linalg import RingMatrix
from .modules import (
    FPModule,
    ModuleHom,
    hom_from_images,
    hom_space_generators,
    quotient_by_ideal,
)
from .rings import Ring, parse_ring

RING_BUDGET = 4096
MODULE_BUDGET = 4096


# -- ideals by scan -------------------------------------------------------------

def ideal_span(R: Ring, gens) -> frozenset:
    """All elements of the ideal generated by ``gens`` (finite ``R``)."""
    span = {R.zero}
    elems = R.element_list
    for g in gens:
        if g in span:
            continue
        multiples = {R.mul(a, g) for a in elems}
        span = {R.add(s, m) for s in span for m in multiples}
    return frozenset(span)


def _check_finite(R: Ring, max_ring_size: int):
    if not R.is_finite:
        raise InfiniteRingError(f"{R} is infinite")
    if R.order() > max_ring_size:
        raise BudgetExceeded(f"ring {R}", R.order(), max_ring_size)


def nilpotents(R: Ring) -> list:
    """Nilpotent elements in canonical order; for finite commutative rings this is ``J``."""
    out = []
    n = R.order()
    k = max(1, n.bit_length())
    for a in R.element_list:
        if R.is_zero(R.power(a, k)):
            out.append(a)
    return out


def idempotents(R: Ring) -> list:
    return [a for a in R.element_list if R.mul(a, a) == a]


def primitive_idempotents(R: Ring) -> list:
    """Nonzero idempotents with no idempotent strictly below them."""
    ids = [e for e in idempotents(R) if not R.is_zero(e)]
    prim = []
    for e in ids:
        below = [f for f in ids if f != e and R.mul(f, e) == f]
        if not below:
            prim.append(e)
    return prim


@dataclass(frozen=True)
class LocalFactor:
    idempotent: object
    size: int
    maximal_ideal: frozenset
    generators: tuple  # a minimal-length generating set found greedily
    principal: bool
    residue_field_size: int

    def to_json(self, R: Ring) -> dict:
        return {
            "idempotent": R.to_json(self.idempotent),
            "size": self.size,
            "maximalIdealSize": len(self.maximal_ideal),
            "maximalIdealGens": [R.to_json(g) for g in self.generators],
            "isPrincipal": self.principal,
            "residueFieldSize": self.residue_field_size,
        }


@dataclass(frozen=True)
class RingClassification:
    ring: Ring
    factors: tuple
    iso_checked: bool

    @property
    def predicted_sp(self) -> bool:
        return all(f.principal for f in self.factors)

    def to_json(self) -> dict:
        R = self.ring
        return {
            "ring": R.descriptor(),
            "size": R.order(),
            "localFactors": [f.to_json(R) for f in self.factors],
            "isoCertified": self.iso_checked,
            "predictedSP": self.predicted_sp,
        }


def _square(R: Ring, ideal: frozenset) -> frozenset:
    return ideal_span(R, [R.mul(a, b) for a in ideal for b in ideal if a <= b])


def _minimal_generators(R: Ring, ideal: frozenset) -> tuple:
    """Generators of ``ideal`` lifting a basis of ``ideal/ideal²``, greedily in canonical order.

    In a local ring this is a minimal generating set (Nakayama); the ideal is
    principal iff one element suffices.
    """
    if len(ideal) == 1:
        return ()
    sq = _square(R, ideal)
    chosen: list = []
    span = sq
    for g in sorted(ideal):
        if g not in span:
            chosen.append(g)
            span = ideal_span(R, chosen + sorted(sq))
            if span == ideal:
                break
    if ideal_span(R, chosen) != ideal:
        raise InternalError("lift of a basis of m/m^2 does not generate m")
    return tuple(chosen)


def classify_finite_ring(R: Ring, max_ring_size: int = RING_BUDGET) -> RingClassification:
    """Split ``R`` into local factors and decide principality of each maximal ideal."""
    _check_finite(R, max_ring_size)
    J = set(nilpotents(R))
    prim = primitive_idempotents(R)
    factors = []
    for e in prim:
        corner = frozenset(R.mul(e, a) for a in R.element_list)
        m = frozenset(a for a in corner if a in J)
        gens = _minimal_generators(R, m)
        factors.append(LocalFactor(e, len(corner), m, gens, len(gens) <= 1, len(corner) // len(m)))
    iso = _certify_product(R, prim, factors)
    return RingClassification(R, tuple(factors), iso)


def _certify_product(R: Ring, prim, factors) -> bool:
    """``a ↦ (a e_1, …, a e_k)`` is a ring isomorphism onto ``∏ R e_i``.

    Complete orthogonal idempotents make it a ring map; it is checked to be
    injective on every element and the sizes to multiply to ``|R|``.
    """
    total = R.zero
    for e in prim:
        total = R.add(total, e)
    if total != R.one:
        raise InternalError("primitive idempotents do not sum to 1")
    for i, e in enumerate(prim):
        for f in prim[i + 1:]:
            if not R.is_zero(R.mul(e, f)):
                raise InternalError("primitive idempotents are not orthogonal")
    size = 1
    for f in factors:
        size *= f.size
    if size != R.order():
        raise InternalError("local factor sizes do not multiply to |R|")
    seen = set()
    for a in R.element_list:
        key = tuple(R.mul(a, e) for e in prim)
        if key in seen:
            raise InternalError("element map to the product is not injective")
        seen.add(key)
    return True


def _factor_of(cls: RingClassification, e) -> LocalFactor:
    for f in cls.factors:
        if f.idempotent == e:
            return f
    raise HypothesisViolation(f"{cls.ring.format(e)} is not a primitive idempotent")


# -- the step2 construction -----------------------------------------------------

def _local_data(R: Ring, idempotent):
    cls = classify_finite_ring(R)
    if idempotent is None:
        if len(cls.factors) != 1:
            raise HypothesisViolation(
                f"{R} is not local ({len(cls.factors)} local factors); pass the idempotent of one"
            )
        return cls.factors[0]
    return _factor_of(cls, R.check(idempotent))


def step2_counterexample(R: Ring, t=None, y=None, idempotent=None) -> tuple[ModuleHom, object]:
    """``f: R/(y) → R/m²``, ``1 ↦ t``, with ``r = t``.

    Needs ``t ∈ m∖m²`` and ``y ∈ m∖(t)``; a missing ``t`` or ``y`` is the first
    admissible one in canonical order.  When ``m² = 0`` the target is ``R``.
    For a non-local ring the construction happens inside the local factor
    ``R e`` named by ``idempotent``: both modules are also killed by ``1-e``.
    """
    loc = _local_data(R, idempotent)
    e = loc.idempotent
    m = loc.maximal_ideal
    m2 = _square(R, m)
    if t is None:
        t = next((a for a in sorted(m) if a not in m2), None)
        if t is None:
            raise HypothesisViolation("no t in m \\ m^2 exists (m = m^2)")
    t = R.check(t)
    if t not in m:
        raise HypothesisViolation(f"t = {R.format(t)} is not in the maximal ideal")
    if t in m2:
        raise HypothesisViolation(f"t = {R.format(t)} lies in m^2")
    tR = ideal_span(R, [t])
    if y is None:
        y = next((a for a in sorted(m) if a not in tR), None)
        if y is None:
            raise HypothesisViolation("no y in m \\ (t) exists: m is principal")
    y = R.check(y)
    if y not in m:
        raise HypothesisViolation(f"y = {R.format(y)} is not in the maximal ideal")
    if y in tR:
        raise HypothesisViolation(f"y = {R.format(y)} lies in (t)")
    comp = [] if e == R.one else [R.sub(R.one, e)]
    M = FPModule.cyclic(R, [y] + comp)
    m2_gens = list(_minimal_generators(R, m2)) if len(m2) > 1 else []
    N = FPModule.cyclic(R, m2_gens + comp) if (m2_gens or comp) else FPModule.free(R, 1)
    return hom_from_images(M, N, [(t,)]), t


# -- probing ----------------------------------------------------------------------

@dataclass
class SizeBounds:
    max_gens: int = 2
    max_relations: int = 2
    max_module_size: int = MODULE_BUDGET


@dataclass
class ProbeVerdict:
    ring: Ring
    seed: int
    trials: int = 0
    step2_instances: int = 0
    oracle_checks: int = 0
    disagreements: list = field(default_factory=list)
    counterexample: dict | None = None
    phase: str | None = None
    predicted_sp: bool | None = None

    def to_json(self) -> dict:
        return {
            "ring": self.ring.descriptor(),
            "seed": self.seed,
            "trials": self.trials,
            "step2Instances": self.step2_instances,
            "oracleChecks": self.oracle_checks,
            "disagreements": self.disagreements,
            "counterexample": self.counterexample,
            "phase": self.phase,
            "predictedSP": self.predicted_sp,
        }


def _record(cmp: Comparison, r, index, phase) -> dict:
    f = cmp.certificate.f
    return {
        "phase": phase,
        "index": index,
        "hom": f.to_json(),
        "r": f.ring.to_json(r),
        "seeming": cmp.seeming.to_json(f.ring),
        "division": cmp.certificate.to_json(),
    }


def random_module(R: Ring, rng: random.Random, gens: int, max_relations: int) -> FPModule:
    """Random presentation; entries are mostly non-units so the module rarely collapses."""
    k = rng.randint(0, max_relations)
    nonunits = [a for a in R.element_list if not R.is_unit(a)]

    def entry():
        if nonunits and rng.random() < 0.75:
            return rng.choice(nonunits)
        return R.random_element(rng)

    entries = tuple(tuple(entry() for _ in range(k)) for _ in range(gens))
    return FPModule(R, gens, RingMatrix(R, gens, k, entries))


def random_hom(M: FPModule, N: FPModule, rng: random.Random) -> ModuleHom:
    """Uniform over ``Hom(M, N)`` for finite rings: random combination of generators."""
    R = M.ring
    mat = RingMatrix.zeros(R, N.gens, M.gens)
    for G in hom_space_generators(M, N):
        mat = mat + G.scale(R.random_element(rng))
    return ModuleHom(M, N, mat)


def _pick_gens(R: Ring, rng: random.Random, bounds: SizeBounds) -> tuple[int, int]:
    """Generator counts with ``|R|^(gM·gN)`` within the module budget."""
    q = R.order()
    pairs = [
        (a, b)
        for a in range(1, bounds.max_gens + 1)
        for b in range(1, bounds.max_gens + 1)
        if q ** (a * b) <= bounds.max_module_size
    ]
    if not pairs:
        raise BudgetExceeded(f"modules over {R}", q, bounds.max_module_size)
    return rng.choice(pairs)


def _scalar_pool(R: Ring) -> list:
    pool = [a for a in R.element_list if not R.is_zero(a) and not R.is_unit(a)]
    return pool or list(R.element_list)


def _check(cmp: Comparison, r, verdict: ProbeVerdict, oracle_check: bool, label):
    if oracle_check:
        oracle = oracle_divide(cmp.certificate.f, r)
        verdict.oracle_checks += 1
        if oracle.divisible != cmp.certificate.divisible:
            verdict.disagreements.append({"at": label, "solver": cmp.certificate.divisible,
                                          "oracle": oracle.divisible})


def probe_ring(
    R: Ring,
    trials: int = 100,
    seed: int = 0,
    bounds: SizeBounds | None = None,
    oracle_check: bool = True,
    max_ring_size: int = RING_BUDGET,
) -> ProbeVerdict:
    """Search for a seemingly divisible map that is not divisible.

    The deterministic step2 phase runs first over every admissible ``(t, y)``
    in each non-principal local factor; then ``trials`` random instances drawn
    from ``random.Random(seed)``.  Returns at the first counterexample.
    """
    bounds = bounds or SizeBounds()
    _check_finite(R, max_ring_size)
    cls = classify_finite_ring(R, max_ring_size)
    verdict = ProbeVerdict(R, seed, predicted_sp=cls.predicted_sp)
    for loc in cls.factors:
        if loc.principal:
            continue
        e = None if len(cls.factors) == 1 else loc.idempotent
        m = loc.maximal_ideal
        m2 = _square(R, m)
        for t in sorted(m - m2):
            tR = ideal_span(R, [t])
            for y in sorted(m - tR):
                f, r = step2_counterexample(R, t, y, e)
                cmp = seeming_vs_divisible(f, r)
                verdict.step2_instances += 1
                _check(cmp, r, verdict, oracle_check, ("step2", verdict.step2_instances - 1))
                if cmp.status == "counterexample":
                    verdict.counterexample = _record(cmp, r, verdict.step2_instances - 1, "step2")
                    verdict.phase = "step2"
                    return verdict
    rng = random.Random(seed)
    pool = _scalar_pool(R)
    for i in range(trials):
        gM, gN = _pick_gens(R, rng, bounds)
        M = random_module(R, rng, gM, bounds.max_relations)
        N = random_module(R, rng, gN, bounds.max_relations)
        f = random_hom(M, N, rng)
        r = rng.choice(pool)
        cmp = seeming_vs_divisible(f, r)
        verdict.trials += 1
        _check(cmp, r, verdict, oracle_check, ("random", i))
        if cmp.status == "counterexample":
            verdict.counterexample = _record(cmp, r, i, "random")
            verdict.phase = "random"
            return verdict
    return verdict


def split_through_factors(f: ModuleHom, r, cls: RingClassification | None = None) -> list[tuple]:
    """Status of ``f`` and ``r`` restricted to each local factor ``R e``.

    The restriction replaces ``M`` and ``N`` by ``M/(1-e)M`` and ``N/(1-e)N``.
    Returns ``(idempotent, status)`` pairs; ``f`` is a counterexample iff
    some restriction is one.
    """
    R = f.ring
    cls = cls or classify_finite_ring(R)
    out = []
    for loc in cls.factors:
        c = R.sub(R.one, loc.idempotent)
        fe = ModuleHom(quotient_by_ideal(f.source, [c]), quotient_by_ideal(f.target, [c]), f.matrix)
        out.append((loc.idempotent, seeming_vs_divisible(fe, r).status))
    whole = seeming_vs_divisible(f, r).status
    if (whole == "counterexample") != any(s == "counterexample" for _, s in out):
        raise InternalError(f"product reduction fails: whole {whole}, factors {out}")
    return out


# -- catalog ----------------------------------------------------------------------

def _scenario(name, R, homs: dict, r, expected: dict) -> dict:
    mods = {}
    hom_json = {}
    for key, h in homs.items():
        mods[f"{key}.source"] = h.source.to_json()
        mods[f"{key}.target"] = h.target.to_json()
        hom_json[key] = h.to_json()
    return {
        "name": name,
        "ring": R.descriptor(),
        "modules": mods,
        "homs": hom_json,
        "r": R.to_json(r),
        "expected": expected,
    }


def _prop_thomas_basic():
    R = parse_ring("Z")
    M = FPModule(R, 2, RingMatrix.from_rows(R, [[4], [0]]))  # Z/4 + Z
    N = FPModule(R, 2, RingMatrix.from_rows(R, [[8, 0], [0, 2]]))  # Z/8 + Z/2
    # g: e1 -> (2, 0), e2 -> (1, 1); f = 2g
    f = hom_from_images(M, N, [(4, 0), (2, 2)])
    return _scenario("prop-thomas-basic", R, {"f": f}, 2, {
        "seeming": True, "divisible": True, "status": "agree", "extClass": "zero",
    })


def _step2_minimal():
    R = parse_ring("GF(2)[x,y]/(x^2,xy,y^2)")
    f, r = step2_counterexample(R, R.from_json("x"), R.from_json("y"))
    return _scenario("step2-minimal", R, {"f": f}, r, {
        "seeming": True, "divisible": False, "status": "counterexample",
        "oracleCount": 4, "predictedSP": False,
    })


def _vnr_product():
    R = parse_ring("GF(2) x GF(3) x GF(5)")
    r = R.from_json([0, 1, 0])
    F = FPModule.free(R, 1)
    f = hom_from_images(F, F, [(R.from_json([0, 2, 0]),)])
    return _scenario("vnr-product", R, {"f": f}, r, {
        "seeming": True, "divisible": True, "status": "agree",
        "predictedSP": True, "probeCounterexample": None,
    })


def _principal_chain():
    R = parse_ring("Z/4 x GF(2)[x]/(x^3)")
    r = R.from_json([2, "x"])
    F = FPModule.free(R, 1)
    M = FPModule.cyclic(R, [R.from_json([2, "x^2"])])
    f = hom_from_images(M, F, [(R.from_json([0, "x^2"]),)])
    return _scenario("principal-chain", R, {"f": f}, r, {
        "seeming": True, "divisible": True, "status": "agree",
        "predictedSP": True, "probeCounterexample": None,
    })


def _product_split():
    R = parse_ring("Z/4 x GF(2)[x,y]/(x,y)^2")
    e = R.from_json([0, "1"])
    f, r = step2_counterexample(R, R.from_json([0, "x"]), R.from_json([0, "y"]), e)
    return _scenario("product-split", R, {"f": f}, r, {
        "seeming": True, "divisible": False, "status": "counterexample",
        "counterexampleFactor": R.to_json(e), "predictedSP": False,
    })


CATALOG = {
    "prop-thomas-basic": _prop_thomas_basic,
    "step2-minimal": _step2_minimal,
    "vnr-product": _vnr_product,
    "principal-chain": _principal_chain,
    "product-split": _product_split,
}


def gallery_build(name: str) -> dict:
    try:
        builder = CATALOG[name]
    except KeyError:
        raise HypothesisViolation(
            f"unknown gallery scenario {name!r}; known: {', '.join(sorted(CATALOG))}"
        ) from None
    return builder()


__all__ = [
    "CATALOG",
    "LocalFactor",
    "ProbeVerdict",
    "RingClassification",
    "SizeBounds",
    "classify_finite_ring",
    "gallery_build",
    "ideal_span",
    "idempotents",
    "nilpotents",
    "primitive_idempotents",
    "probe_ring",
    "random_hom",
    "random_module",
    "split_through_factors",
    "step2_counterexample",
]
