"""Finitely presented modules, their elements and homomorphisms.

A module is the cokernel of its relation matrix: generators are implicit
indices and every *column* of ``relations`` is one relation.  A hom is the
matrix whose column ``j`` is the image of generator ``j``.

Equality of elements and of homs is decided by membership in the column span
of the target relations (:func:`moddiv.linalg.in_span`), never by a normal
form, so it is correct over table rings too.  The enumeration routines at the
bottom use ring arithmetic only; they are the independent oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    CANDIDATE_BUDGET,
    ELEMENT_BUDGET,
    BudgetExceeded,
    DimensionMismatch,
    InfiniteRingError,
    RingMismatch,
    budget,
)
from .linalg import RingMatrix, block_diag, in_span, solve_linear
from .rings import Ring, parse_ring


@dataclass(frozen=True)
class FPModule:
    ring: Ring
    gens: int
    relations: RingMatrix

    def __post_init__(self):
        if self.relations.ring != self.ring:
            raise RingMismatch(f"relations over {self.relations.ring}, module over {self.ring}")
        if self.relations.rows != self.gens:
            raise DimensionMismatch(
                f"relation matrix has {self.relations.rows} rows for {self.gens} generators"
            )

    @classmethod
    def free(cls, R: Ring, n: int) -> FPModule:
        return cls(R, n, RingMatrix.zeros(R, n, 0))

    @classmethod
    def cyclic(cls, R: Ring, ideal_gens) -> FPModule:
        """``R/I`` for the ideal generated by ``ideal_gens``."""
        ideal_gens = list(ideal_gens)
        return cls(R, 1, RingMatrix(R, 1, len(ideal_gens), (tuple(ideal_gens),)))

    def vector(self, coords) -> RingMatrix:
        coords = tuple(self.ring.check(c) for c in coords)
        if len(coords) != self.gens:
            raise DimensionMismatch(f"{len(coords)} coordinates for {self.gens} generators")
        return RingMatrix.column_vector(self.ring, coords)

    def basis_vector(self, j: int) -> tuple:
        R = self.ring
        return tuple(R.one if i == j else R.zero for i in range(self.gens))

    def is_zero(self, coords) -> bool:
        if self.gens == 0:
            return True
        return in_span(RingMatrix.column_vector(self.ring, coords), self.relations)

    def equal(self, v, w) -> bool:
        R = self.ring
        return self.is_zero(tuple(R.sub(a, b) for a, b in zip(v, w)))

    def to_json(self) -> dict:
        return {"ring": self.ring.descriptor(), "gens": self.gens, "relations": self.relations.to_json()}

    @classmethod
    def from_json(cls, obj: dict, ring: Ring | None = None) -> FPModule:
        R = ring if ring is not None else parse_ring(obj["ring"])
        gens = int(obj["gens"])
        rel = obj.get("relations")
        if rel is None:
            relations = RingMatrix.zeros(R, gens, 0)
        elif isinstance(rel, list):
            # bare list of relation columns
            relations = RingMatrix.from_columns(R, [[R.from_json(a) for a in c] for c in rel], gens)
        else:
            relations = RingMatrix.from_json(rel, R)
        return cls(R, gens, relations)

    def __str__(self):
        return f"coker({self.relations.rows}x{self.relations.cols} over {self.ring})"


@dataclass(frozen=True)
class ModuleElement:
    module: FPModule
    coords: tuple

    def is_zero(self) -> bool:
        return self.module.is_zero(self.coords)


@dataclass(frozen=True)
class ModuleHom:
    source: FPModule
    target: FPModule
    matrix: RingMatrix

    def __post_init__(self):
        if self.source.ring != self.target.ring or self.matrix.ring != self.source.ring:
            raise RingMismatch("hom source, target and matrix must share a ring")
        if (self.matrix.rows, self.matrix.cols) != (self.target.gens, self.source.gens):
            raise DimensionMismatch(
                f"hom matrix is {self.matrix.rows}x{self.matrix.cols}, "
                f"expected {self.target.gens}x{self.source.gens}"
            )

    @property
    def ring(self) -> Ring:
        return self.source.ring

    def image(self, coords) -> tuple:
        return (self.matrix @ RingMatrix.column_vector(self.ring, coords)).column(0)

    def scale(self, r) -> ModuleHom:
        return ModuleHom(self.source, self.target, self.matrix.scale(r))

    def __add__(self, other: ModuleHom) -> ModuleHom:
        return ModuleHom(self.source, self.target, self.matrix + other.matrix)

    def __sub__(self, other: ModuleHom) -> ModuleHom:
        return ModuleHom(self.source, self.target, self.matrix - other.matrix)

    def is_zero(self) -> bool:
        """Every generator maps to zero in the target."""
        if self.matrix.cols == 0 or self.target.gens == 0:
            return True
        return in_span(self.matrix, self.target.relations)

    def equals(self, other: ModuleHom) -> bool:
        return (self - other).is_zero()

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "matrix": self.matrix.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict, ring: Ring | None = None) -> ModuleHom:
        if ring is None and "ring" in obj:
            ring = parse_ring(obj["ring"])
        src = FPModule.from_json(obj["source"], ring)
        R = src.ring
        tgt = FPModule.from_json(obj["target"], R)
        mat = obj["matrix"]
        if isinstance(mat, list):
            matrix = RingMatrix(R, tgt.gens, src.gens, tuple(tuple(R.from_json(a) for a in r) for r in mat))
        else:
            matrix = RingMatrix.from_json(mat, R)
        return cls(src, tgt, matrix)


def compose(g: ModuleHom, f: ModuleHom) -> ModuleHom:
    """``g ∘ f``."""
    return ModuleHom(f.source, g.target, g.matrix @ f.matrix)


def identity_hom(M: FPModule) -> ModuleHom:
    return ModuleHom(M, M, RingMatrix.identity(M.ring, M.gens))


def zero_hom(M: FPModule, N: FPModule) -> ModuleHom:
    return ModuleHom(M, N, RingMatrix.zeros(M.ring, N.gens, M.gens))


def hom_from_images(M: FPModule, N: FPModule, images) -> ModuleHom:
    return ModuleHom(M, N, RingMatrix.from_columns(M.ring, images, N.gens))


# -- construction ------------------------------------------------------------

def module_new(R: Ring, relations: RingMatrix) -> FPModule:
    return FPModule(R, relations.rows, relations)


def direct_sum(modules: list[FPModule]) -> FPModule:
    if not modules:
        raise ValueError("direct_sum of an empty list has no ring")
    R = modules[0].ring
    for M in modules:
        if M.ring != R:
            raise RingMismatch(f"cannot sum modules over {R} and {M.ring}")
    rel = block_diag(R, [M.relations for M in modules])
    return FPModule(R, sum(M.gens for M in modules), rel)


def direct_sum_homs(homs: list[ModuleHom]) -> ModuleHom:
    R = homs[0].ring
    return ModuleHom(
        direct_sum([h.source for h in homs]),
        direct_sum([h.target for h in homs]),
        block_diag(R, [h.matrix for h in homs]),
    )


def quotient_by_ideal(M: FPModule, ideal_gens) -> FPModule:
    """``M / I M``: append ``r * e_j`` for every ideal generator ``r``."""
    R = M.ring
    blocks = [RingMatrix.scalar(R, M.gens, R.check(r)) for r in ideal_gens]
    return FPModule(R, M.gens, M.relations.hstack(*blocks))


def quotient_by_elements(M: FPModule, vectors) -> FPModule:
    """``M`` modulo the submodule generated by ``vectors`` (coordinate tuples)."""
    vectors = list(vectors)
    if not vectors:
        return M
    extra = RingMatrix.from_columns(M.ring, vectors, M.gens)
    return FPModule(M.ring, M.gens, M.relations.hstack(extra))


def submodule_presentation(M: FPModule, vectors) -> FPModule:
    """Presentation of the submodule generated by ``vectors``.

    Its generators are the given vectors; its relations are the kernel of
    ``R^k → M``, i.e. the solutions of ``[T | relations] (a; b) = 0``.
    """
    R = M.ring
    vectors = list(vectors)
    k = len(vectors)
    if k == 0:
        return FPModule.free(R, 0)
    T = RingMatrix.from_columns(R, vectors, M.gens)
    sys = T.hstack(M.relations)
    _, kernel = solve_linear(sys, RingMatrix.zeros(R, M.gens, 1), keep=k)
    rel = RingMatrix.from_columns(R, [v.column(0) for v in kernel], k) if kernel else RingMatrix.zeros(R, k, 0)
    return FPModule(R, k, rel)


def express_in(M: FPModule, vectors, v) -> tuple | None:
    """Coefficients ``a`` with ``sum a_i vectors_i == v`` in ``M``, or ``None``."""
    R = M.ring
    vectors = list(vectors)
    T = RingMatrix.from_columns(R, vectors, M.gens) if vectors else RingMatrix.zeros(R, M.gens, 0)
    sol = solve_linear(T.hstack(M.relations), RingMatrix.column_vector(R, v), keep=len(vectors))
    return None if sol is None else sol[0].column(0)


def hom_space_generators(M: FPModule, N: FPModule) -> list[RingMatrix]:
    """Matrices generating ``Hom(M, N)`` as a module (up to hom equality).

    Solves ``H rel(M) = rel(N) X`` for ``(H, X)`` and keeps the ``H`` block of
    a kernel basis; every hom is an ``R``-combination of the returned ones.
    """
    R = M.ring
    gM, gN, kM, kN = M.gens, N.gens, M.relations.cols, N.relations.cols
    nH = gN * gM
    if nH == 0:
        return []
    rows = gN * kM
    cols = nH + kN * kM
    A = [[R.zero] * cols for _ in range(rows)]
    relM, relN = M.relations.entries, N.relations.entries
    for c in range(kM):
        for i in range(gN):
            row = A[c * gN + i]
            for j in range(gM):
                row[j * gN + i] = relM[j][c]
            for e in range(kN):
                row[nH + c * kN + e] = R.neg(relN[i][e])
    if rows == 0:
        return [
            RingMatrix.from_columns(R, [
                tuple(R.one if (jj == j and ii == i) else R.zero for ii in range(gN))
                for jj in range(gM)
            ], gN)
            for j in range(gM) for i in range(gN)
        ]
    system = RingMatrix(R, rows, cols, tuple(tuple(r) for r in A))
    _, kernel = solve_linear(system, RingMatrix.zeros(R, rows, 1), keep=nH)
    out = []
    for v in kernel:
        x = v.column(0)
        out.append(RingMatrix.from_columns(R, [x[j * gN:(j + 1) * gN] for j in range(gM)], gN))
    return out


# -- predicates ----------------------------------------------------------------

def is_zero_elem(M: FPModule, v) -> bool:
    if isinstance(v, ModuleElement):
        v = v.coords
    return M.is_zero(tuple(v))


def hom_validate(f: ModuleHom) -> tuple[bool, int | None]:
    """``(True, None)`` if well defined, else ``(False, j)`` for the first bad relation column."""
    src, tgt = f.source, f.target
    if src.relations.cols == 0:
        return True, None
    images = f.matrix @ src.relations
    if tgt.gens == 0 or in_span(images, tgt.relations):
        return True, None
    for j in range(images.cols):
        if not in_span(images.column_matrix(j), tgt.relations):
            return False, j
    raise AssertionError("span check disagrees with columnwise check")  # pragma: no cover


def torsion_gens(M: FPModule, r, verify: bool = False) -> list[tuple]:
    """Generators of ``M[r] = {v : r v = 0}`` as coordinate tuples (nonzero in ``M``)."""
    R = M.ring
    r = R.check(r)
    g = M.gens
    if g == 0:
        return []
    sys = RingMatrix.scalar(R, g, r).hstack(M.relations)
    _, kernel = solve_linear(sys, RingMatrix.zeros(R, g, 1), keep=g)
    gens = []
    for k in kernel:
        v = k.column(0)
        if not M.is_zero(v) and v not in gens:
            gens.append(v)
    if verify and R.is_finite:
        _verify_torsion(M, r, gens)
    return gens


def _verify_torsion(M: FPModule, r, gens):
    from .errors import InternalError

    table = element_table(M)
    R = M.ring
    span = table.span_of(gens)
    for idx, v in enumerate(table.reps):
        rv = tuple(R.mul(r, a) for a in v)
        killed = table.index(rv) == 0
        if killed != (idx in span):
            raise InternalError(f"torsion generators incomplete or unsound at element {v}")


# -- enumeration (oracle substrate) --------------------------------------------

class ElementTable:
    """All elements of a finite module, with canonical representatives.

    ``reps`` lists one coordinate vector per element, in canonical order
    (first vector of each coset in lexicographic order); ``index`` maps any
    coordinate vector to the position of its element.  Built from ring
    arithmetic alone.
    """

    def __init__(self, M: FPModule):
        R = M.ring
        if not R.is_finite:
            raise InfiniteRingError(f"cannot enumerate modules over {R}")
        self.module = M
        g = M.gens
        ambient = R.order() ** g
        bound = budget(CANDIDATE_BUDGET)
        if ambient > bound:
            raise BudgetExceeded(f"coordinate space of {M}", ambient, bound)
        elems = R.element_list
        zero = tuple(R.zero for _ in range(g))
        span = {zero}
        for col in M.relations.columns():
            new = set()
            for a in elems:
                av = tuple(R.mul(a, c) for c in col)
                for s in span:
                    new.add(tuple(R.add(x, y) for x, y in zip(s, av)))
            span = new
        self.relation_span = span
        size = ambient // len(span)
        ebound = budget(ELEMENT_BUDGET)
        if size > ebound:
            raise BudgetExceeded(f"element count of {M}", size, ebound)
        index: dict = {}
        reps = []
        for v in itertools.product(elems, repeat=g):
            if v in index:
                continue
            k = len(reps)
            reps.append(v)
            for s in span:
                index[tuple(R.add(x, y) for x, y in zip(v, s))] = k
        self.reps = reps
        self._index = index

    def __len__(self):
        return len(self.reps)

    def index(self, v) -> int:
        return self._index[tuple(v)]

    def span_of(self, vectors) -> set[int]:
        """Indices of the elements of the submodule generated by ``vectors``."""
        R = self.module.ring
        elems = R.element_list
        reached = {0}
        for vec in vectors:
            new = set()
            multiples = {self.index(tuple(R.mul(a, c) for c in vec)) for a in elems}
            for s in reached:
                for m in multiples:
                    new.add(self.index(tuple(R.add(x, y) for x, y in zip(self.reps[s], self.reps[m]))))
            reached = new
        return reached


@lru_cache(maxsize=256)
def element_table(M: FPModule) -> ElementTable:
    return ElementTable(M)


def enumerate_elements(M: FPModule):
    return iter(element_table(M).reps)


def enumerate_homs(M: FPModule, N: FPModule):
    """Every hom ``M → N`` exactly once, in lexicographic order of generator images."""
    for images in _hom_images(M, N):
        yield hom_from_images(M, N, images) if M.gens else zero_hom(M, N)


def _hom_images(M: FPModule, N: FPModule):
    """Generator-image lists of all homs ``M → N``.

    Candidates are tuples of canonical target elements; a relation of ``M`` is
    checked as soon as all generators in its support have been assigned.
    """
    if M.ring != N.ring:
        raise RingMismatch("enumerate_homs over different rings")
    R = M.ring
    table = element_table(N)
    g = M.gens
    count = len(table) ** g
    bound = budget(CANDIDATE_BUDGET)
    if count > bound:
        raise BudgetExceeded(f"candidate homs {M} -> {N}", count, bound)
    z = R.zero
    # relation c is checkable once generator max(support(c)) is assigned
    ready: list[list[tuple]] = [[] for _ in range(g)]
    for c in M.relations.columns():
        support = [j for j, a in enumerate(c) if a != z]
        if support:
            ready[max(support)].append(c)
    zero_vec = tuple(z for _ in range(N.gens))
    reps = table.reps

    def relation_ok(c, images):
        acc = zero_vec
        for a, img in zip(c, images):
            if a != z:
                acc = tuple(R.add(x, R.mul(a, y)) for x, y in zip(acc, img))
        return table.index(acc) == 0

    def extend(images):
        j = len(images)
        if j == g:
            yield images
            return
        for rep in reps:
            cand = images + [rep]
            if all(relation_ok(c, cand) for c in ready[j]):
                yield from extend(cand)

    return extend([])
