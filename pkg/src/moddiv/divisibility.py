"""Seeming divisibility and genuine divisibility of module homomorphisms.

``f: M → N`` is *seemingly* divisible by ``r`` when it kills the
``r``-torsion of ``M`` and its image lies in ``rN``; it is divisible when
``f = r·g`` for a homomorphism ``g``.  Divisible implies seemingly divisible,
so the only possible disagreement is a seemingly divisible map with no
divisor.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalError
from .linalg import RingMatrix, solve_linear
from .modules import (
    FPModule,
    ModuleHom,
    element_table,
    hom_validate,
    torsion_gens,
    _hom_images,
)


@dataclass(frozen=True)
class SeemingReport:
    kills_torsion: bool
    image_divisible: bool
    torsion_witness: tuple | None = None
    image_witness: int | None = None

    @property
    def verdict(self) -> bool:
        return self.kills_torsion and self.image_divisible

    def to_json(self, ring) -> dict:
        return {
            "verdict": self.verdict,
            "killsTorsion": self.kills_torsion,
            "imageDivisible": self.image_divisible,
            "torsionWitness": None if self.torsion_witness is None
            else [ring.to_json(a) for a in self.torsion_witness],
            "imageWitness": self.image_witness,
        }


@dataclass(frozen=True)
class DivisionCertificate:
    f: ModuleHom
    r: object
    g: ModuleHom | None = None
    reason: str | None = None  # "linear-system-infeasible" | "oracle-exhausted"
    count: int | None = None

    @property
    def divisible(self) -> bool:
        return self.g is not None

    def to_json(self) -> dict:
        R = self.f.ring
        out = {"verdict": "divisible" if self.divisible else "notDivisible"}
        if not self.divisible:
            out["reason"] = self.reason
            if self.count is not None:
                out["count"] = self.count
        out["checkable"] = {
            "f": self.f.to_json(),
            "r": R.to_json(self.r),
            "g": self.g.to_json() if self.g is not None else None,
        }
        return out


def multiplication_hom(N: FPModule, r) -> ModuleHom:
    return ModuleHom(N, N, RingMatrix.scalar(N.ring, N.gens, r))


def lift_along(f: ModuleHom, p: ModuleHom) -> ModuleHom | None:
    """A hom ``h`` with ``p ∘ h == f``, or ``None``.

    Unknowns are the matrix ``H`` of ``h`` (column-major), then ``X`` and
    ``Y`` for the two membership conditions::

        P H_j + rel(N) X_j = F_j               (p ∘ h = f on generator j)
        sum_j rel(M)[j, c] H_j - rel(L) Y_c = 0  (h kills relation c of M)

    where ``p: L → N``.  The returned ``H`` is the canonical solution.
    """
    M, N, L = f.source, f.target, p.source
    if p.target != N:
        raise ValueError("lift_along: p must land in the target of f")
    R = f.ring
    gM, gN, gL = M.gens, N.gens, L.gens
    kM, kN, kL = M.relations.cols, N.relations.cols, L.relations.cols
    nH = gL * gM
    nX = kN * gM
    nY = kL * kM
    rows = gN * gM + gL * kM
    cols = nH + nX + nY
    z = R.zero
    A = [[z] * cols for _ in range(rows)]
    b = [z] * rows
    P = p.matrix.entries
    relN = N.relations.entries
    relL = L.relations.entries
    relM = M.relations.entries
    F = f.matrix.entries
    for j in range(gM):
        r0 = j * gN
        for i in range(gN):
            row = A[r0 + i]
            for k in range(gL):
                row[j * gL + k] = P[i][k]
            for c in range(kN):
                row[nH + j * kN + c] = relN[i][c]
            b[r0 + i] = F[i][j]
    base = gN * gM
    for c in range(kM):
        r0 = base + c * gL
        for i in range(gL):
            row = A[r0 + i]
            for j in range(gM):
                row[j * gL + i] = relM[j][c]
            for e in range(kL):
                row[nH + nX + c * kL + e] = R.neg(relL[i][e])
    system = RingMatrix(R, rows, cols, tuple(tuple(r) for r in A))
    rhs = RingMatrix(R, rows, 1, tuple((x,) for x in b))
    sol = solve_linear(system, rhs, keep=nH)
    if sol is None:
        return None
    x = sol[0].column(0)
    images = [x[j * gL:(j + 1) * gL] for j in range(gM)]
    H = RingMatrix.from_columns(R, images, gL) if gM else RingMatrix.zeros(R, gL, 0)
    return ModuleHom(M, L, H)


def is_seemingly_divisible(f: ModuleHom, r) -> SeemingReport:
    R = f.ring
    r = R.check(r)
    M, N = f.source, f.target
    kills, t_wit = True, None
    for t in torsion_gens(M, r):
        if not N.is_zero(f.image(t)):
            kills, t_wit = False, t
            break
    divisible, i_wit = True, None
    if M.gens and N.gens:
        A = RingMatrix.scalar(R, N.gens, r).hstack(N.relations)
        if solve_linear(A, f.matrix, keep=0) is None:
            divisible = False
            for j in range(M.gens):
                if solve_linear(A, f.matrix.column_matrix(j), keep=0) is None:
                    i_wit = j
                    break
    return SeemingReport(kills, divisible, t_wit, i_wit)


def divide(f: ModuleHom, r) -> DivisionCertificate:
    """Decide ``f = r·g`` by one linear system; a returned ``g`` is re-verified."""
    R = f.ring
    r = R.check(r)
    g = lift_along(f, multiplication_hom(f.target, r))
    if g is None:
        return DivisionCertificate(f, r, reason="linear-system-infeasible")
    ok, bad = hom_validate(g)
    if not ok or not g.scale(r).equals(f):
        raise InternalError(f"divide produced an invalid divisor (bad relation {bad})")
    return DivisionCertificate(f, r, g)


def oracle_divide(f: ModuleHom, r) -> DivisionCertificate:
    """Scan every hom ``g: M → N`` for ``r·g == f``; first hit in enumeration order."""
    R = f.ring
    r = R.check(r)
    M, N = f.source, f.target
    table = element_table(N)
    targets = [table.index(f.matrix.column(j)) for j in range(M.gens)]
    count = 0
    for images in _hom_images(M, N):
        count += 1
        if all(
            table.index(tuple(R.mul(r, a) for a in img)) == t
            for img, t in zip(images, targets)
        ):
            g = ModuleHom(M, N, RingMatrix.from_columns(R, images, N.gens)) if M.gens \
                else ModuleHom(M, N, RingMatrix.zeros(R, N.gens, 0))
            return DivisionCertificate(f, r, g)
    return DivisionCertificate(f, r, reason="oracle-exhausted", count=count)


@dataclass(frozen=True)
class Comparison:
    status: str  # "agree" | "counterexample"
    seeming: SeemingReport
    certificate: DivisionCertificate

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "seeming": self.seeming.to_json(self.certificate.f.ring),
            "division": self.certificate.to_json(),
        }


def seeming_vs_divisible(f: ModuleHom, r) -> Comparison:
    seeming = is_seemingly_divisible(f, r)
    cert = divide(f, r)
    if cert.divisible and not seeming.verdict:
        raise InternalError(
            f"divisible map reported not seemingly divisible: {seeming} for r={r!r}"
        )
    status = "counterexample" if seeming.verdict and not cert.divisible else "agree"
    return Comparison(status, seeming, cert)


def verify_certificate(obj: dict) -> bool:
    """Re-check a serialized :class:`DivisionCertificate`."""
    block = obj["checkable"]
    f = ModuleHom.from_json(block["f"])
    R = f.ring
    r = R.from_json(block["r"])
    if obj["verdict"] == "divisible":
        g = ModuleHom.from_json(block["g"], R)
        if g.source != f.source or g.target != f.target:
            return False
        return hom_validate(g)[0] and g.scale(r).equals(f)
    return not divide(f, r).divisible


__all__ = [
    "Comparison",
    "DivisionCertificate",
    "SeemingReport",
    "divide",
    "is_seemingly_divisible",
    "lift_along",
    "multiplication_hom",
    "oracle_divide",
    "seeming_vs_divisible",
    "verify_certificate",
]
