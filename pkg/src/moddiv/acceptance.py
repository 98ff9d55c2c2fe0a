"""The nine acceptance checks, shared by ``moddiv suite`` and the test-suite.

Each ``criterion_k`` returns a :class:`CriterionResult`; ``passed`` is false
on any mismatch or exception and the first few failures are kept in
``failures``.  Instances are generated from explicit seeds so every run
sees the same data.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache

from .decomposition import check_certificate, snf_exponents, split_lemma_dec
from .divisibility import divide, is_seemingly_divisible, oracle_divide
from .gallery import classify_finite_ring, probe_ring, split_through_factors, step2_counterexample
from .homological import homology_maps, null_homotopy, obstruction_class
from .linalg import RingMatrix, determinant, hnf, snf, solve_linear
from .modules import FPModule, ModuleHom, enumerate_homs, hom_space_generators, hom_validate
from .rings import Integers, PolyOverPrimeField, parse_ring

MAX_FAILURES = 5


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool = True
    checked: int = 0
    seconds: float = 0.0
    details: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def fail(self, what):
        self.passed = False
        if len(self.failures) < MAX_FAILURES:
            self.failures.append(str(what))

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] criterion {self.number}: {self.title} ({self.checked} checks, {self.seconds:.1f}s)"

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed,
            "checked": self.checked,
            "seconds": round(self.seconds, 3),
            "details": self.details,
            "failures": self.failures,
        }


# -- instance generators --------------------------------------------------------

Z_SCALARS = (0, 1, 2, 3, 4, 6, 12)


def _random_hom(M: FPModule, N: FPModule, coeff) -> ModuleHom:
    R = M.ring
    mat = RingMatrix.zeros(R, N.gens, M.gens)
    for G in hom_space_generators(M, N):
        mat = mat + G.scale(coeff())
    return ModuleHom(M, N, mat)


def _random_presentation(R, rng, max_gens, max_rels, entry) -> FPModule:
    g = rng.randint(1, max_gens)
    k = rng.randint(0, max_rels)
    return FPModule(R, g, RingMatrix(R, g, k, tuple(tuple(entry() for _ in range(k)) for _ in range(g))))


@lru_cache(maxsize=4)
def z_instances(pairs: int = 1000, seed: int = 1):
    """``(f, r)`` over ℤ: for each module pair a random hom ``h`` and ``f ∈ {h, r h}``."""
    R = Integers()
    rng = random.Random(seed)
    out = []
    for _ in range(pairs):
        M = _random_presentation(R, rng, 4, 4, lambda: rng.randint(-50, 50))
        N = _random_presentation(R, rng, 4, 4, lambda: rng.randint(-50, 50))
        h = _random_hom(M, N, lambda: rng.randint(-3, 3))
        for r in Z_SCALARS:
            out.append((h, r))
            out.append((h.scale(r), r))
    return tuple(out)


def _poly_scalars(R: PolyOverPrimeField):
    xs = ["0", "1", "x", "x^2", "x^2+x"] + [str(c) for c in range(2, R.p)]
    return [R.from_json(s) for s in xs]


@lru_cache(maxsize=4)
def poly_instances(pairs_per_prime: int = 120, seed: int = 2):
    """``(f, r)`` over ``F_2[x]`` and ``F_3[x]``, built like :func:`z_instances`."""
    out = []
    for p in (2, 3):
        R = PolyOverPrimeField(p)
        rng = random.Random(seed * 100 + p)

        def poly(deg=2):
            return R.check(tuple(_trim([rng.randrange(p) for _ in range(rng.randint(0, deg + 1))], p)))

        for _ in range(pairs_per_prime):
            M = _random_presentation(R, rng, 3, 3, poly)
            N = _random_presentation(R, rng, 3, 3, poly)
            h = _random_hom(M, N, lambda: poly(1))
            for r in _poly_scalars(R):
                out.append((h, r))
                out.append((h.scale(r), r))
    return tuple(out)


def _trim(c, p):
    from .polys import trim

    return trim(c, p)


# -- criteria -------------------------------------------------------------------

def _dedekind(result: CriterionResult, instances):
    seeming_true = 0
    for f, r in instances:
        result.checked += 1
        try:
            s = is_seemingly_divisible(f, r).verdict
            cert = divide(f, r)
            if cert.divisible:
                g = cert.g
                if not (hom_validate(g)[0] and g.scale(r).equals(f)):
                    result.fail(f"divisor fails re-verification for r={r}")
            if s != cert.divisible:
                result.fail(f"seeming={s} but divisible={cert.divisible} for r={r}: {f.to_json()}")
            seeming_true += s
        except Exception as exc:  # noqa: BLE001 - every exception is a failure here
            result.fail(f"{type(exc).__name__}: {exc}")
    result.details["seeminglyDivisible"] = seeming_true


def criterion_1(pairs: int = 1000, seed: int = 1, limit: float = 60.0) -> CriterionResult:
    res = CriterionResult(1, "seeming divisibility equals divisibility over Z")
    t = time.perf_counter()
    insts = z_instances(pairs, seed)
    _dedekind(res, insts)
    res.seconds = time.perf_counter() - t
    res.details.update({"pairs": pairs, "scalars": list(Z_SCALARS), "limitSeconds": limit})
    if res.seconds > limit:
        res.fail(f"runtime {res.seconds:.1f}s exceeds {limit}s")
    return res


def criterion_2(pairs_per_prime: int = 120, seed: int = 2) -> CriterionResult:
    res = CriterionResult(2, "seeming divisibility equals divisibility over F_2[x] and F_3[x]")
    t = time.perf_counter()
    insts = poly_instances(pairs_per_prime, seed)
    _dedekind(res, insts)
    res.seconds = time.perf_counter() - t
    if res.checked < 500:
        res.fail(f"only {res.checked} instances")
    return res


PRINCIPAL_PANEL = ("Z/4", "Z/6", "Z/8", "Z/9", "GF(2)[x]/(x^3)", "Z/4 x GF(3)")


def criterion_3(trials: int = 500, seed: int = 3) -> CriterionResult:
    res = CriterionResult(3, "finite principal rings: no counterexample, solver agrees with oracle")
    t = time.perf_counter()
    for desc in PRINCIPAL_PANEL:
        try:
            v = probe_ring(parse_ring(desc), trials=trials, seed=seed, oracle_check=True)
        except Exception as exc:  # noqa: BLE001
            res.fail(f"{desc}: {type(exc).__name__}: {exc}")
            continue
        res.checked += v.oracle_checks
        res.details[desc] = {"trials": v.trials, "oracleChecks": v.oracle_checks,
                             "disagreements": len(v.disagreements),
                             "counterexample": v.counterexample is not None}
        if v.counterexample is not None:
            res.fail(f"{desc}: counterexample {v.counterexample}")
        if v.disagreements:
            res.fail(f"{desc}: solver/oracle disagreements {v.disagreements[:2]}")
        if v.trials != trials:
            res.fail(f"{desc}: ran {v.trials} of {trials} trials")
    res.seconds = time.perf_counter() - t
    return res


STEP2_CASES = (
    ("GF(2)[x,y]/(x^2,xy,y^2)", "x", "y", 4),
    ("GF(2)[x,y]/(x^2,y^2)", "x", "y", None),
)


def criterion_4(limit: float = 1.0) -> CriterionResult:
    res = CriterionResult(4, "step2 counterexample realized and oracle-confirmed")
    t0 = time.perf_counter()
    for desc, t_name, y_name, expected_count in STEP2_CASES:
        t = time.perf_counter()
        R = parse_ring(desc)
        f, r = step2_counterexample(R, R.from_json(t_name), R.from_json(y_name))
        seeming = is_seemingly_divisible(f, r).verdict
        cert = divide(f, r)
        oracle = oracle_divide(f, r)
        homs = sum(1 for _ in enumerate_homs(f.source, f.target))
        took = time.perf_counter() - t
        res.checked += 1
        res.details[desc] = {"seeming": seeming, "divisible": cert.divisible,
                             "oracleCount": oracle.count, "homCount": homs, "seconds": round(took, 4)}
        if not seeming:
            res.fail(f"{desc}: not seemingly divisible")
        if cert.divisible or oracle.divisible:
            res.fail(f"{desc}: divisible")
        if oracle.count != homs or (expected_count is not None and homs != expected_count):
            res.fail(f"{desc}: oracle scanned {oracle.count} of {homs} homs")
        if took > limit:
            res.fail(f"{desc}: {took:.2f}s exceeds {limit}s")
    res.seconds = time.perf_counter() - t0
    return res


DICHOTOMY_PANEL = (
    "Z/8", "Z/12", "GF(4)", "GF(2)[x]/(x^3)", "GF(2)[x,y]/(x,y)^2",
    "GF(2)[x,y]/(x^2,y^2)", "GF(3)[x,y]/(x,y)^2", "Z/4 x GF(2)[x,y]/(x,y)^2",
)


def criterion_5(trials: int = 200, seed: int = 5) -> CriterionResult:
    res = CriterionResult(5, "classifier and probe agree on the ring panel")
    t = time.perf_counter()
    for desc in DICHOTOMY_PANEL:
        R = parse_ring(desc)
        cls = classify_finite_ring(R)
        v = probe_ring(R, trials=trials, seed=seed, oracle_check=True)
        res.checked += 1
        info = {"predictedSP": cls.predicted_sp, "phase": v.phase,
                "counterexample": v.counterexample is not None}
        if cls.predicted_sp and v.counterexample is not None:
            res.fail(f"{desc}: principal but probe found a counterexample")
        if not cls.predicted_sp and v.phase != "step2":
            res.fail(f"{desc}: non-principal but no step2 counterexample")
        if v.disagreements:
            res.fail(f"{desc}: solver/oracle disagreements")
        if v.counterexample is not None and len(cls.factors) > 1:
            f = ModuleHom.from_json(v.counterexample["hom"])
            r = R.from_json(v.counterexample["r"])
            split = split_through_factors(f, r, cls)
            carriers = [e for e, s in split if s == "counterexample"]
            principal = {loc.idempotent: loc.principal for loc in cls.factors}
            info["carriers"] = [R.to_json(e) for e in carriers]
            if not carriers or any(principal[e] for e in carriers):
                res.fail(f"{desc}: counterexample does not split through a non-principal factor")
        res.details[desc] = info
    res.seconds = time.perf_counter() - t
    return res


def criterion_6() -> CriterionResult:
    res = CriterionResult(6, "null-homotopy iff divisible; seeming iff zero on homology")
    t = time.perf_counter()
    for f, r in z_instances() + poly_instances():
        R = f.ring
        try:
            s = is_seemingly_divisible(f, r).verdict
            hm = homology_maps(f, r)
            if s != (hm.h0_zero and hm.h1_zero):
                res.fail(f"seeming={s} but homology zero=({hm.h0_zero},{hm.h1_zero})")
            if not R.is_zero_divisor(r):
                h = null_homotopy(f, r)
                d = divide(f, r).divisible
                if (h is not None) != d:
                    res.fail(f"null-homotopy {h is not None} but divisible {d}")
            res.checked += 1
        except Exception as exc:  # noqa: BLE001
            res.fail(f"{type(exc).__name__}: {exc}")
    res.seconds = time.perf_counter() - t
    return res


def criterion_7() -> CriterionResult:
    res = CriterionResult(7, "obstruction class vanishes for prime r over Z")
    t = time.perf_counter()
    applicable = 0
    for f, r in z_instances():
        if r not in (2, 3):
            continue
        try:
            hm = homology_maps(f, r)
            if not (hm.h0_zero and hm.h1_zero):
                continue
            applicable += 1
            rep = obstruction_class(f, r)
            if rep.ext_class != "zero":
                res.fail(f"class {rep.ext_class} for r={r}: {f.to_json()}")
            if not divide(f, r).divisible:
                res.fail(f"not divisible for r={r}")
            res.checked += 1
        except Exception as exc:  # noqa: BLE001
            res.fail(f"{type(exc).__name__}: {exc}")
    res.details["applicable"] = applicable
    if applicable == 0:
        res.fail("no instance with both homology maps zero")
    res.seconds = time.perf_counter() - t
    return res


DECOMPOSITION_PANEL = (("Z/8", "2", 3), ("Z/27", "3", 3), ("GF(2)[x]/(x^3)", "x", 3))


def criterion_8(count: int = 100, seed: int = 8, limit: float = 120.0) -> CriterionResult:
    res = CriterionResult(8, "splitting agrees with invariant factors")
    t = time.perf_counter()
    for desc, p, n in DECOMPOSITION_PANEL:
        R = parse_ring(desc)
        p = R.from_json(int(p) if p.isdigit() else p)
        rng = random.Random(seed)
        nonunits = [a for a in R.element_list if not R.is_unit(a)]
        for _ in range(count):
            M = _random_presentation(
                R, rng, 4, 4,
                lambda: rng.choice(nonunits) if rng.random() < 0.7 else R.random_element(rng),
            )
            try:
                dec = split_lemma_dec(M, p, n)
                check_certificate(dec)
                expected = [e for e in snf_exponents(M, dec.shape) if e > 0]
                if dec.all_exponents() != expected:
                    res.fail(f"{desc}: split {dec.all_exponents()} vs SNF {expected}")
                if not all(dec.ladder):
                    res.fail(f"{desc}: remainder fails the freeness ladder {dec.ladder}")
                res.checked += 1
            except Exception as exc:  # noqa: BLE001
                res.fail(f"{desc}: {type(exc).__name__}: {exc}")
    res.seconds = time.perf_counter() - t
    if res.seconds > limit:
        res.fail(f"runtime {res.seconds:.1f}s exceeds {limit}s")
    return res


# -- criterion 9: linear algebra ---------------------------------------------------

def determinantal_divisors(rows: list[list[int]]) -> list[int]:
    """``[D_1, D_2, …]``: gcd of all ``k×k`` minors, by memoised Laplace expansion.

    Independent of elimination: minors on row set ``S`` and column set ``T``
    expand along the first row of ``S``.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    memo: dict = {}

    def minor(rs: tuple, cs: tuple) -> int:
        if not rs:
            return 1
        key = (rs, cs)
        if key in memo:
            return memo[key]
        i = rs[0]
        rest = rs[1:]
        total = 0
        for k, j in enumerate(cs):
            a = rows[i][j]
            if a:
                sub = minor(rest, cs[:k] + cs[k + 1:])
                total += -a * sub if k % 2 else a * sub
        memo[key] = total
        return total

    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rs in itertools.combinations(range(m), k):
            for cs in itertools.combinations(range(n), k):
                g = math.gcd(g, minor(rs, cs))
        out.append(g)
    return out


def _check_snf(A: RingMatrix, res: CriterionResult):
    R = A.ring
    nf = snf(A)
    D, U, V = nf.D, nf.U, nf.V
    if U @ A @ V != D:
        res.fail(f"SNF reconstruction fails for {A.entries}")
    if abs(determinant(U)) != 1 or abs(determinant(V)) != 1:
        res.fail("SNF transform not unimodular")
    diag = [D[i, i] for i in range(min(A.rows, A.cols))]
    if any(D[i, j] != 0 for i in range(A.rows) for j in range(A.cols) if i != j):
        res.fail("SNF not diagonal")
    if any(d < 0 for d in diag):
        res.fail("SNF diagonal not canonical")
    for a, b in zip(diag, diag[1:]):
        if (a == 0 and b != 0) or (a != 0 and b % a):
            res.fail(f"SNF chain broken: {diag}")
    dd = determinantal_divisors([list(r) for r in A.entries])
    prev = 1
    for k, Dk in enumerate(dd):
        expect = 0 if Dk == 0 else Dk // prev
        if diag[k] != expect:
            res.fail(f"d_{k + 1} = {diag[k]} but determinantal ratio {expect}")
            break
        if Dk == 0:
            break
        prev = Dk


def _check_hnf(A: RingMatrix, res: CriterionResult):
    nf = hnf(A)
    D, V = nf.D, nf.V
    if A @ V != D:
        res.fail("HNF reconstruction fails")
    if abs(determinant(V)) != 1:
        res.fail("HNF transform not unimodular")
    last = -1
    for c, (i, j) in enumerate(nf.pivots):
        if j != c or i <= last:
            res.fail(f"HNF pivots not echelon: {nf.pivots}")
            break
        last = i
        piv = D[i, j]
        if piv <= 0:
            res.fail("HNF pivot not positive")
        if any(D[r, j] != 0 for r in range(i)):
            res.fail("HNF column nonzero above pivot")
        if any(not 0 <= D[i, k] < piv for k in range(c)):
            res.fail("HNF entries left of pivot not reduced")
    rank = len(nf.pivots)
    if any(D[r, k] != 0 for r in range(A.rows) for k in range(rank, A.cols)):
        res.fail("HNF has nonzero columns beyond the rank")


SOLVE_RINGS = ("Z/6", "Z/4", "GF(2)[x]/(x^2)", "GF(2)[x,y]/(x^2,xy,y^2)", "Z/2 x Z/3", "GF(3)")


def _span_closure(R, vectors, n) -> set:
    span = {tuple(R.zero for _ in range(n))}
    for v in vectors:
        multiples = [tuple(R.mul(a, c) for c in v) for a in R.element_list]
        span = {tuple(R.add(x, y) for x, y in zip(s, mv)) for s in span for mv in multiples}
    return span


def _check_solve(R, rng: random.Random, res: CriterionResult):
    q = R.order()
    n = rng.randint(1, 3)
    while q ** n > 10**4:
        n -= 1
    m = rng.randint(1, 3)
    A = RingMatrix(R, m, n, tuple(tuple(R.random_element(rng) for _ in range(n)) for _ in range(m)))
    if rng.random() < 0.5:
        x = tuple(R.random_element(rng) for _ in range(n))
        b = A @ RingMatrix.column_vector(R, x)
    else:
        b = RingMatrix.column_vector(R, [R.random_element(rng) for _ in range(m)])
    truth = {
        x for x in itertools.product(R.element_list, repeat=n)
        if A @ RingMatrix.column_vector(R, x) == b
    }
    sol = solve_linear(A, b)
    if sol is None:
        if truth:
            res.fail(f"solver says none over {R}, enumeration finds {len(truth)}")
        return
    x0 = sol[0].column(0)
    if A @ sol[0] != b:
        res.fail(f"particular solution wrong over {R}")
    kern = _span_closure(R, [k.column(0) for k in sol[1]], n)
    found = {tuple(R.add(a, c) for a, c in zip(x0, k)) for k in kern}
    if found != truth:
        res.fail(f"solution set mismatch over {R}: {len(found)} vs {len(truth)}")


def criterion_9(count: int = 1000, seed: int = 9, solve_count: int = 300) -> CriterionResult:
    res = CriterionResult(9, "SNF/HNF substrate and solver completeness")
    t = time.perf_counter()
    Z = Integers()
    rng = random.Random(seed)
    for _ in range(count):
        m, n = rng.randint(1, 8), rng.randint(1, 8)
        style = rng.random()
        if style < 0.2:
            # low rank: product of thin factors
            k = rng.randint(1, min(m, n))
            B = [[rng.randint(-30, 30) for _ in range(k)] for _ in range(m)]
            C = [[rng.randint(-30, 30) for _ in range(n)] for _ in range(k)]
            rows = [[sum(B[i][t] * C[t][j] for t in range(k)) for j in range(n)] for i in range(m)]
        else:
            rows = [[rng.randint(-10**6, 10**6) for _ in range(n)] for _ in range(m)]
        A = RingMatrix(Z, m, n, tuple(tuple(r) for r in rows))
        try:
            _check_snf(A, res)
            _check_hnf(A, res)
        except Exception as exc:  # noqa: BLE001
            res.fail(f"{type(exc).__name__}: {exc}")
        res.checked += 1
    for desc in SOLVE_RINGS:
        R = parse_ring(desc)
        for _ in range(solve_count // len(SOLVE_RINGS)):
            try:
                _check_solve(R, rng, res)
            except Exception as exc:  # noqa: BLE001
                res.fail(f"{desc}: {type(exc).__name__}: {exc}")
            res.checked += 1
    res.seconds = time.perf_counter() - t
    return res


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
}


def run_suite(numbers=None) -> list[CriterionResult]:
    numbers = sorted(numbers or CRITERIA)
    return [CRITERIA[k]() for k in numbers]


__all__ = [
    "CRITERIA",
    "CriterionResult",
    "determinantal_divisors",
    "poly_instances",
    "run_suite",
    "z_instances",
] + [f"criterion_{k}" for k in CRITERIA]
