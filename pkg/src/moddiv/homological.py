"""Two-term complexes ``[M --r--> M]`` and what a hom does to them.

For a hom ``f: M → N`` and a scalar ``r`` the chain map ``f`` between the
complexes ``[M --r--> M]`` and ``[N --r--> N]`` has two homology maps

    H0(f): M/rM → N/rN        H1(f): M[r] → N[r]

and ``f`` vanishes on homology exactly when it is seemingly divisible.  When
``r`` is a non-zero divisor these complexes model ``M ⊗^L R/r``, and ``f`` is
divisible exactly when the chain map is null-homotopic; the homotopy is the
divisor itself.

The obstruction class lives in ``Ext^1_{R/r}(M/rM, N[r])``.  Choose ``w_j`` with
``f(e_j) = r w_j``; the relation ``ρ`` of ``M`` is sent to ``W(ρ)``, which lies
in ``N[r]`` because ``r W(ρ) = f(ρ) = 0``.  Changing the ``w_j`` by torsion
changes this cocycle by a coboundary, and the cocycle is a coboundary exactly
when some choice of ``w_j`` kills every relation, i.e. when ``f`` is divisible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .divisibility import lift_along, multiplication_hom
from .errors import HypothesisViolation, InternalError
from .linalg import RingMatrix, reduce_modulo, solve_linear
from .modules import (
    FPModule,
    ModuleHom,
    express_in,
    hom_validate,
    quotient_by_ideal,
    submodule_presentation,
    torsion_gens,
)


@dataclass(frozen=True)
class TwoTermComplex:
    """The complex ``module --r--> module`` in degrees 1 and 0."""

    module: FPModule
    r: object

    def h0(self) -> FPModule:
        return quotient_by_ideal(self.module, [self.r])

    def h1_gens(self) -> list[tuple]:
        return torsion_gens(self.module, self.r)

    def h1(self) -> FPModule:
        return submodule_presentation(self.module, self.h1_gens())


@dataclass(frozen=True)
class HomologyMaps:
    h0: ModuleHom
    h1: ModuleHom
    h1_source_gens: tuple
    h1_target_gens: tuple
    cone_applicable: bool

    @property
    def h0_zero(self) -> bool:
        return self.h0.is_zero()

    @property
    def h1_zero(self) -> bool:
        return self.h1.is_zero()

    def to_json(self) -> dict:
        R = self.h0.ring
        return {
            "h0": self.h0.to_json(),
            "h1": self.h1.to_json(),
            "h0Zero": self.h0_zero,
            "h1Zero": self.h1_zero,
            "h1SourceGens": [[R.to_json(a) for a in v] for v in self.h1_source_gens],
            "h1TargetGens": [[R.to_json(a) for a in v] for v in self.h1_target_gens],
            "coneApplicable": self.cone_applicable,
        }


def homology_maps(f: ModuleHom, r) -> HomologyMaps:
    """The maps ``f`` induces on ``H0`` and ``H1`` of the two complexes.

    ``H1(f)`` is expressed in the torsion generators of the target; the
    expression always exists since ``f(M[r]) ⊆ N[r]``.
    """
    R = f.ring
    r = R.check(r)
    M, N = f.source, f.target
    h0 = ModuleHom(quotient_by_ideal(M, [r]), quotient_by_ideal(N, [r]), f.matrix)
    src_gens = torsion_gens(M, r)
    tgt_gens = torsion_gens(N, r)
    H1M = submodule_presentation(M, src_gens)
    H1N = submodule_presentation(N, tgt_gens)
    cols = []
    for t in src_gens:
        coeffs = express_in(N, tgt_gens, f.image(t))
        if coeffs is None:
            raise InternalError(f"image of torsion element {t} is not torsion")
        cols.append(coeffs)
    if cols:
        mat = RingMatrix.from_columns(R, cols, H1N.gens)
    else:
        mat = RingMatrix.zeros(R, H1N.gens, H1M.gens)
    h1 = ModuleHom(H1M, H1N, mat)
    return HomologyMaps(h0, h1, tuple(src_gens), tuple(tgt_gens), not R.is_zero_divisor(r))


def null_homotopy(f: ModuleHom, r) -> ModuleHom | None:
    """A homotopy ``h`` with ``f = r·h`` (same system as division), or ``None``.

    Only meaningful for a non-zero divisor ``r``; anything else raises.
    """
    R = f.ring
    r = R.check(r)
    if R.is_zero_divisor(r):
        raise HypothesisViolation(
            f"null_homotopy needs a non-zero divisor; {R.format(r)} is a zero divisor in {R}"
        )
    return lift_along(f, multiplication_hom(f.target, r))


@dataclass(frozen=True)
class ObstructionReport:
    h0_zero: bool
    h1_zero: bool
    homotopy: ModuleHom | None
    homotopy_status: str  # "yes" | "no" | "notApplicable"
    ext_class: str  # "zero" | "nonzero" | "notComputed"
    reason: str | None = None
    cocycle: RingMatrix | None = None

    def to_json(self) -> dict:
        out = {
            "h0Zero": self.h0_zero,
            "h1Zero": self.h1_zero,
            "nullHomotopic": self.homotopy_status,
            "homotopy": self.homotopy.to_json() if self.homotopy is not None else None,
            "extClass": self.ext_class,
        }
        if self.reason is not None:
            out["reason"] = self.reason
        if self.cocycle is not None:
            out["cocycle"] = self.cocycle.to_json()
        return out


def _quotient_finite(R, r) -> bool:
    if R.is_finite:
        return True
    return not R.is_zero(r)


def _cocycle(f: ModuleHom, r):
    """``(W, Φ)``: chosen lifts ``w_j`` as columns, and ``Φ`` stacking ``W(ρ_c)``."""
    R = f.ring
    M, N = f.source, f.target
    A = RingMatrix.scalar(R, N.gens, r).hstack(N.relations)
    sol = solve_linear(A, f.matrix, keep=N.gens)
    if sol is None:
        return None, None
    W = sol[0]
    images = W @ M.relations  # column c is W(ρ_c) in N
    stacked = tuple(
        (images.entries[i][c],) for c in range(images.cols) for i in range(N.gens)
    )
    return W, RingMatrix(R, images.cols * N.gens, 1, stacked)


def _coboundaries(f: ModuleHom, r) -> RingMatrix:
    """Generators of ``{ρ ↦ ψ(ρ)}`` for ``ψ`` into ``N[r]``, plus the relations of ``N``."""
    R = f.ring
    M, N = f.source, f.target
    gN, kM = N.gens, M.relations.cols
    rel = M.relations.entries
    gens = []
    for t in torsion_gens(N, r):
        for j in range(M.gens):
            gens.append(tuple(R.mul(rel[j][c], t[i]) for c in range(kM) for i in range(gN)))
    for c in range(kM):
        for col in N.relations.columns():
            v = [R.zero] * (kM * gN)
            v[c * gN:(c + 1) * gN] = col
            gens.append(tuple(v))
    rows = kM * gN
    if not gens:
        return RingMatrix.zeros(R, rows, 0)
    return RingMatrix.from_columns(R, gens, rows)


def obstruction_class(f: ModuleHom, r) -> ObstructionReport:
    """Homology maps, null-homotopy and the ``Ext^1`` class of ``f`` for ``r``.

    The class is reported only when both homology maps vanish and ``R/r`` is
    finite; its representative is reduced modulo coboundaries, so the class is
    zero exactly when the reduced cocycle is.
    """
    R = f.ring
    r = R.check(r)
    hm = homology_maps(f, r)
    if hm.cone_applicable:
        h = null_homotopy(f, r)
        status = "yes" if h is not None else "no"
    else:
        h, status = None, "notApplicable"

    def report(ext, reason=None, cocycle=None):
        return ObstructionReport(hm.h0_zero, hm.h1_zero, h, status, ext, reason, cocycle)

    if not (hm.h0_zero and hm.h1_zero):
        return report("notComputed", "homology maps nonzero")
    if not _quotient_finite(R, r):
        return report("notComputed", "unsupported coefficient ring")
    _, phi = _cocycle(f, r)
    if phi is None:
        raise InternalError("H0(f) vanishes but the image is not divisible")
    if phi.rows == 0:
        rep = phi
    else:
        rep = reduce_modulo(phi, _coboundaries(f, r))
    zero = rep.is_zero()
    divisible = lift_along(f, multiplication_hom(f.target, r)) is not None
    if zero != divisible:
        raise InternalError(f"obstruction class {'zero' if zero else 'nonzero'} but divisible={divisible}")
    if status != "notApplicable" and (status == "yes") != zero:
        raise InternalError("null-homotopy disagrees with the obstruction class")
    return report("zero") if zero else report("nonzero", cocycle=rep)


__all__ = [
    "HomologyMaps",
    "ObstructionReport",
    "TwoTermComplex",
    "homology_maps",
    "null_homotopy",
    "obstruction_class",
]
