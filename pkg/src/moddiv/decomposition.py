"""Structure of modules over principal rings.

Two independent routes.  ``invariant_factors`` reads the diagonal of a Smith
form (after lifting ``E/(n)``-modules to ``E``).  ``split_lemma_dec`` works
inside a local ring ``R = E/(p^n)``: as long as some ``x`` satisfies
``p^(m-1) x = 0`` but ``x ∉ pM``, the cyclic submodule ``Rx ≅ R/p^(m-1)``
splits off through a retraction found by a linear solve.  What is left has
no such element for any ``m ≤ n`` and is free; a ladder of injectivity
checks mod ``p^k`` certifies that.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from . import polys
from .errors import HypothesisViolation, InternalError, UnsupportedRing
from .linalg import RingMatrix, in_span, snf, solve_linear
from .modules import (
    FPModule,
    ModuleHom,
    compose,
    direct_sum,
    direct_sum_homs,
    enumerate_homs,
    element_table,
    hom_validate,
    identity_hom,
    torsion_gens,
)
from .rings import Integers, PolyOverPrimeField, PolyQuotient, _Residues, is_prime


# -- invariant factors ----------------------------------------------------------

def base_ring(R):
    """The Euclidean ring a quotient ``E/(n)`` is lifted to, or ``R`` itself."""
    if isinstance(R, (Integers, PolyOverPrimeField)):
        return R
    if isinstance(R, _Residues):
        return Integers()
    if isinstance(R, PolyQuotient):
        return PolyOverPrimeField(R.p)
    raise UnsupportedRing(f"{R} is not Euclidean or a quotient of one")


def lift_module(M: FPModule) -> FPModule:
    """The same abelian group as a module over the Euclidean ring ``E``.

    For ``R = E/(n)`` the relations are lifted entrywise and ``n e_j`` is
    appended for every generator.
    """
    R = M.ring
    B = base_ring(R)
    if B is R:
        return M
    n = R.lattice()[0][0]
    cols = [[R.lift(a)[0] for a in col] for col in M.relations.columns()]
    for j in range(M.gens):
        cols.append([n if i == j else B.zero for i in range(M.gens)])
    if not cols:
        return FPModule.free(B, M.gens)
    return FPModule(B, M.gens, RingMatrix.from_columns(B, cols, M.gens))


def invariant_factors(M: FPModule) -> tuple[list, int]:
    """``(factors, free_rank)``: the non-unit nonzero Smith diagonal and the rank."""
    R = M.ring
    if not isinstance(R, (Integers, PolyOverPrimeField)):
        raise UnsupportedRing(f"invariant factors need a Euclidean ring, not {R}")
    if M.relations.cols == 0:
        return [], M.gens
    D = snf(M.relations).D
    diag = [D[i, i] for i in range(min(D.rows, D.cols))]
    nonzero = [d for d in diag if not R.is_zero(d)]
    factors = [d for d in nonzero if not R.is_unit(d)]
    return factors, M.gens - len(nonzero)


def modules_isomorphic(M: FPModule, N: FPModule, method: str = "auto") -> bool:
    """Exact isomorphism test.

    ``auto`` compares invariant factors over ``ℤ``, ``F_p[x]`` and their
    quotients (through the lift), and otherwise searches for a bijective hom
    and its inverse.  ``search`` forces the exhaustive route.
    """
    if M.ring != N.ring:
        return False
    R = M.ring
    if method == "auto":
        try:
            B = base_ring(R)
        except UnsupportedRing:
            B = None
        if B is not None:
            return invariant_factors(lift_module(M)) == invariant_factors(lift_module(N))
    return isomorphism_by_search(M, N) is not None


def isomorphism_by_search(M: FPModule, N: FPModule):
    """First ``(φ, ψ)`` of mutually inverse homs in enumeration order, or ``None``."""
    tM, tN = element_table(M), element_table(N)
    if len(tM) != len(tN):
        return None
    for phi in enumerate_homs(M, N):
        image = tN.span_of([phi.matrix.column(j) for j in range(M.gens)])
        if len(image) != len(tN):
            continue
        psi = _inverse(phi)
        if psi is None:
            raise InternalError("surjective hom between equal finite sets has no inverse")
        return phi, psi
    return None


def _inverse(phi: ModuleHom) -> ModuleHom | None:
    from .divisibility import lift_along

    return lift_along(identity_hom(phi.target), phi)


# -- splitting ------------------------------------------------------------------

@dataclass(frozen=True)
class LocalShape:
    """``R = E/(p^n)`` with ``p`` prime/irreducible in ``E``."""

    ring: object
    p: object  # element of R
    n: int

    def power(self, k: int):
        return self.ring.power(self.p, k)


def local_shape(R, p, n: int) -> LocalShape:
    """Validate that ``R`` is ``E/(p^n)``; raise otherwise."""
    p = R.check(p)
    if n < 1:
        raise HypothesisViolation("exponent n must be positive")
    if isinstance(R, _Residues):
        ok = is_prime(p) and p**n == R.modulus
    elif isinstance(R, PolyQuotient):
        lp = polys.trim(p, R.p)
        ok = (
            len(lp) >= 2
            and lp[-1] == 1
            and polys.is_irreducible(lp, R.p)
            and polys.power(lp, n, R.p) == R.modulus
        )
    else:
        ok = False
    if not ok:
        raise HypothesisViolation(
            f"{R} is not of the shape E/(p^n) with p={R.format(p)}, n={n}"
        )
    return LocalShape(R, p, n)


@dataclass(frozen=True)
class Decomposition:
    shape: LocalShape
    exponents: tuple  # exponent of each split cyclic summand R/p^m, in order found
    remainder: FPModule
    rank: int
    ladder: tuple  # injectivity mod p^k of the basis map, k = 1..n
    basis: tuple  # elements of the remainder lifting a basis of remainder/p
    iso: tuple  # (φ: M → S, ψ: S → M), S = ⊕ R/p^m ⊕ remainder
    source: FPModule = field(repr=False, default=None)

    @property
    def summands(self) -> FPModule:
        return self.iso[0].target

    def factor_records(self) -> list[dict]:
        R = self.shape.ring
        counts = Counter(self.exponents)
        return [
            {"p": R.to_json(self.shape.p), "exponent": m, "multiplicity": counts[m]}
            for m in sorted(counts)
        ]

    def all_exponents(self) -> list[int]:
        """Cyclic factor exponents including ``n`` once per free summand of the remainder."""
        return sorted(list(self.exponents) + [self.shape.n] * self.rank)

    def to_json(self) -> dict:
        phi, psi = self.iso
        return {
            "factors": self.factor_records(),
            "remainder": self.remainder.to_json(),
            "remainderRank": self.rank,
            "freenessLadder": list(self.ladder),
            "iso": {"phi": phi.to_json(), "psi": psi.to_json()},
        }


def _in_pM(M: FPModule, p, x) -> bool:
    R = M.ring
    G = RingMatrix.scalar(R, M.gens, p).hstack(M.relations)
    return in_span(RingMatrix.column_vector(R, x), G)


def _witness(M: FPModule, shape: LocalShape, m: int):
    """First generator of ``M[p^(m-1)]`` outside ``pM``, or ``None``.

    The torsion submodule lies in ``pM`` iff all its generators do, so
    checking generators suffices.
    """
    for x in torsion_gens(M, shape.power(m - 1)):
        if not _in_pM(M, shape.p, x):
            return x
    return None


def _retraction(M: FPModule, x, q):
    """Row ``a`` with ``a·rel ∈ (q)`` columnwise and ``a·x ≡ 1 mod q``, or ``None``."""
    R = M.ring
    g, k = M.gens, M.relations.cols
    # unknowns: a (g), slack per relation (k), slack for a·x (1)
    rows = []
    for c in range(k):
        row = [M.relations[j, c] for j in range(g)] + [R.zero] * (k + 1)
        row[g + c] = q
        rows.append(row)
    rows.append(list(x) + [R.zero] * k + [q])
    A = RingMatrix(R, k + 1, g + k + 1, tuple(tuple(r) for r in rows))
    b = RingMatrix.column_vector(R, [R.zero] * k + [R.one])
    sol = solve_linear(A, b, keep=g)
    return None if sol is None else sol[0].column(0)


def _split_once(M: FPModule, x, shape: LocalShape, m: int):
    """Split ``M ≅ R/p^(m-1) ⊕ M/Rx``; returns ``(C, rest, φ, ψ)``."""
    R = M.ring
    q = shape.power(m - 1)
    a = _retraction(M, x, q)
    if a is None:
        raise InternalError(f"no retraction onto the cyclic summand generated by {x}")
    C = FPModule.cyclic(R, [q])
    rest = FPModule(R, M.gens, M.relations.hstack(RingMatrix.column_vector(R, x)))
    S = direct_sum([C, rest])
    g = M.gens
    # φ: e_j ↦ (a_j, e_j)
    phi_cols = [(a[j],) + tuple(R.one if i == j else R.zero for i in range(g)) for j in range(g)]
    phi = ModuleHom(M, S, RingMatrix.from_columns(R, phi_cols, 1 + g) if g else RingMatrix.zeros(R, 1, 0))
    # ψ: 1 ↦ x, e_j ↦ e_j - a_j x
    psi_cols = [tuple(x)]
    for j in range(g):
        psi_cols.append(tuple(
            R.sub(R.one if i == j else R.zero, R.mul(a[j], x[i])) for i in range(g)
        ))
    psi = ModuleHom(S, M, RingMatrix.from_columns(R, psi_cols, g))
    for h in (phi, psi):
        ok, bad = hom_validate(h)
        if not ok:
            raise InternalError(f"splitting map fails on relation {bad}")
    return C, rest, phi, psi


def _basis_mod_p(M: FPModule, p) -> list[tuple]:
    """Generators of ``M`` whose images form a basis of ``M/pM`` (greedy)."""
    R = M.ring
    chosen: list[tuple] = []
    for j in range(M.gens):
        e = M.basis_vector(j)
        G = RingMatrix.scalar(R, M.gens, p).hstack(M.relations)
        if chosen:
            G = G.hstack(RingMatrix.from_columns(R, chosen, M.gens))
        if not in_span(RingMatrix.column_vector(R, e), G):
            chosen.append(e)
    return chosen


def freeness_ladder(M: FPModule, shape: LocalShape) -> tuple[list[tuple], list[bool]]:
    """Basis lift of ``M/pM`` and, for ``k = 1..n``, whether ``(R/p^k)^s → M/p^k M`` is injective.

    Surjectivity holds by construction (a basis mod ``p`` generates).  The map
    is injective mod ``p^k`` when every kernel vector of
    ``[B | rel | p^k I]`` has its ``B``-block in ``p^k R^s``.
    """
    R = M.ring
    B = _basis_mod_p(M, shape.p)
    s = len(B)
    ladder = []
    for k in range(1, shape.n + 1):
        pk = shape.power(k)
        if s == 0:
            ladder.append(True)
            continue
        A = RingMatrix.from_columns(R, B, M.gens).hstack(M.relations, RingMatrix.scalar(R, M.gens, pk))
        _, kernel = solve_linear(A, RingMatrix.zeros(R, M.gens, 1), keep=s)
        ok = all(
            R.try_divide(v[i, 0], pk) is not None for v in kernel for i in range(s)
        )
        ladder.append(ok)
    # full generation: every generator is a combination of B modulo relations
    if s:
        G = RingMatrix.from_columns(R, B, M.gens).hstack(M.relations)
        for j in range(M.gens):
            if not in_span(RingMatrix.column_vector(R, M.basis_vector(j)), G):
                raise InternalError("basis of M/pM does not generate M")
    return B, ladder


def split_lemma_dec(M: FPModule, p, n: int) -> Decomposition:
    """Split cyclic summands ``R/p^(m-1)`` off ``M`` for ``m = 2..n``.

    Returns the exponents found, the remainder (free over ``R``), the
    freeness ladder and an isomorphism pair between ``M`` and the sum.
    """
    R = M.ring
    shape = local_shape(R, p, n)
    head = FPModule.free(R, 0)  # sum of the split cyclic modules so far
    rest = M
    phi = identity_hom(M)
    psi = identity_hom(M)
    exponents = []
    for m in range(2, n + 1):
        while True:
            x = _witness(rest, shape, m)
            if x is None:
                break
            C, nxt, f1, g1 = _split_once(rest, x, shape, m)
            step_phi = direct_sum_homs([identity_hom(head), f1])
            step_psi = direct_sum_homs([identity_hom(head), g1])
            new_head = direct_sum([head, C])
            target = direct_sum([new_head, nxt])
            phi = ModuleHom(M, target, compose(step_phi, phi).matrix)
            psi = ModuleHom(target, M, psi.matrix @ step_psi.matrix)
            head, rest = new_head, nxt
            exponents.append(m - 1)
    basis, ladder = freeness_ladder(rest, shape)
    dec = Decomposition(shape, tuple(exponents), rest, len(basis), tuple(ladder), tuple(basis), (phi, psi), M)
    check_certificate(dec)
    return dec


def check_certificate(dec: Decomposition) -> None:
    """Both compositions of the iso pair are identities, as homs."""
    phi, psi = dec.iso
    for h in (phi, psi):
        ok, bad = hom_validate(h)
        if not ok:
            raise InternalError(f"iso certificate map fails on relation {bad}")
    if not compose(psi, phi).equals(identity_hom(phi.source)):
        raise InternalError("ψ∘φ is not the identity")
    if not compose(phi, psi).equals(identity_hom(phi.target)):
        raise InternalError("φ∘ψ is not the identity")


def snf_exponents(M: FPModule, shape: LocalShape) -> list[int]:
    """Exponents ``e`` of the cyclic factors ``R/p^e`` read off the Smith form of the lift."""
    R = M.ring
    B = base_ring(R)
    factors, rank = invariant_factors(lift_module(M))
    if rank:
        raise InternalError("lift of a module over a finite ring has free part")
    lp = R.lift(shape.p)[0]
    out = []
    for d in factors:
        e = 0
        while True:
            q = B.try_divide(d, lp)
            if q is None:
                break
            d, e = q, e + 1
        if not B.is_unit(d):
            raise InternalError(f"invariant factor has a part prime to p: {d}")
        out.append(e)
    return sorted(out)


__all__ = [
    "Decomposition",
    "base_ring",
    "check_certificate",
    "freeness_ladder",
    "invariant_factors",
    "isomorphism_by_search",
    "lift_module",
    "local_shape",
    "modules_isomorphic",
    "snf_exponents",
    "split_lemma_dec",
]
