"""Exact dense linear algebra over the supported rings.

Everything is lowered onto ℤ or F_p[x] (see :mod:`moddiv.rings`): a system
``A x = b`` over ``R`` becomes a system over the Euclidean domain ``E`` with
one block of unknowns per ring coordinate, plus extra columns for the lattice
that ``R`` is a quotient by.  Products of rings are split into components.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import euclid, polys
from .errors import DimensionMismatch, RingMismatch, UnsupportedRing
from .rings import (
    Integers,
    PolyOverPrimeField,
    PolyQuotient,
    Product,
    Ring,
    _Residues,
    parse_ring,
)


@dataclass(frozen=True)
class RingMatrix:
    ring: Ring
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch(
                f"entries do not form a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, R: Ring, rows, cols: int | None = None) -> RingMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        ents = tuple(tuple(R.check(a) for a in r) for r in rows)
        return cls(R, len(rows), cols, ents)

    @classmethod
    def from_columns(cls, R: Ring, columns, rows: int) -> RingMatrix:
        columns = [list(c) for c in columns]
        ents = tuple(tuple(c[i] for c in columns) for i in range(rows))
        return cls(R, rows, len(columns), ents)

    @classmethod
    def zeros(cls, R: Ring, rows: int, cols: int) -> RingMatrix:
        z = R.zero
        return cls(R, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, R: Ring, n: int) -> RingMatrix:
        return cls(R, n, n, tuple(tuple(R.one if i == j else R.zero for j in range(n)) for i in range(n)))

    @classmethod
    def scalar(cls, R: Ring, n: int, r) -> RingMatrix:
        return cls(R, n, n, tuple(tuple(r if i == j else R.zero for j in range(n)) for i in range(n)))

    @classmethod
    def column_vector(cls, R: Ring, values) -> RingMatrix:
        values = list(values)
        return cls(R, len(values), 1, tuple((v,) for v in values))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    def column_matrix(self, j: int) -> RingMatrix:
        return RingMatrix(self.ring, self.rows, 1, tuple((r[j],) for r in self.entries))

    def transpose(self) -> RingMatrix:
        return RingMatrix(self.ring, self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else tuple(() for _ in range(self.cols)))

    def _same_ring(self, other: RingMatrix):
        if other.ring != self.ring:
            raise RingMismatch(f"matrices over {self.ring} and {other.ring}")

    def __matmul__(self, other: RingMatrix) -> RingMatrix:
        self._same_ring(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        R = self.ring
        z = R.zero
        out = []
        ocols = other.columns()
        for row in self.entries:
            new = []
            for col in ocols:
                acc = z
                for a, b in zip(row, col):
                    if a != z and b != z:
                        acc = R.add(acc, R.mul(a, b))
                new.append(acc)
            out.append(tuple(new))
        return RingMatrix(R, self.rows, other.cols, tuple(out))

    def __add__(self, other: RingMatrix) -> RingMatrix:
        self._same_ring(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in addition")
        R = self.ring
        return RingMatrix(R, self.rows, self.cols, tuple(
            tuple(R.add(a, b) for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)
        ))

    def __neg__(self) -> RingMatrix:
        R = self.ring
        return RingMatrix(R, self.rows, self.cols, tuple(tuple(R.neg(a) for a in r) for r in self.entries))

    def __sub__(self, other: RingMatrix) -> RingMatrix:
        return self + (-other)

    def scale(self, r) -> RingMatrix:
        R = self.ring
        return RingMatrix(R, self.rows, self.cols, tuple(tuple(R.mul(r, a) for a in row) for row in self.entries))

    def is_zero(self) -> bool:
        z = self.ring.zero
        return all(a == z for r in self.entries for a in r)

    def hstack(self, *others: RingMatrix) -> RingMatrix:
        out = [list(r) for r in self.entries]
        cols = self.cols
        for o in others:
            self._same_ring(o)
            if o.rows != self.rows:
                raise DimensionMismatch("row count mismatch in hstack")
            for r, extra in zip(out, o.entries):
                r.extend(extra)
            cols += o.cols
        return RingMatrix(self.ring, self.rows, cols, tuple(tuple(r) for r in out))

    def vstack(self, *others: RingMatrix) -> RingMatrix:
        ents = list(self.entries)
        rows = self.rows
        for o in others:
            self._same_ring(o)
            if o.cols != self.cols:
                raise DimensionMismatch("column count mismatch in vstack")
            ents.extend(o.entries)
            rows += o.rows
        return RingMatrix(self.ring, rows, self.cols, tuple(ents))

    def submatrix(self, rows, cols) -> RingMatrix:
        rows, cols = list(rows), list(cols)
        return RingMatrix(self.ring, len(rows), len(cols), tuple(tuple(self.entries[i][j] for j in cols) for i in rows))

    def component(self, i: int) -> RingMatrix:
        """Projection of a matrix over a product ring onto factor ``i``."""
        R = self.ring
        return RingMatrix(R.factors[i], self.rows, self.cols, tuple(tuple(a[i] for a in r) for r in self.entries))

    def to_json(self) -> dict:
        R = self.ring
        return {
            "ring": R.descriptor(),
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[R.to_json(a) for a in r] for r in self.entries],
        }

    @classmethod
    def from_json(cls, obj: dict, ring: Ring | None = None) -> RingMatrix:
        R = ring if ring is not None else parse_ring(obj["ring"])
        ents = obj.get("entries", [])
        rows = obj.get("rows", len(ents))
        cols = obj.get("cols", len(ents[0]) if ents else 0)
        if len(ents) != rows or any(len(r) != cols for r in ents):
            raise DimensionMismatch(f"entries do not form a {rows}x{cols} matrix")
        return cls(R, rows, cols, tuple(tuple(R.from_json(a) for a in r) for r in ents))

    def pretty(self) -> str:
        R = self.ring
        if self.rows == 0:
            return f"[] ({self.rows}x{self.cols})"
        cells = [[R.format(a) for a in r] for r in self.entries]
        w = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + " ".join(c.rjust(w) for c in r) + "]" for r in cells)


def block_diag(R: Ring, blocks: list[RingMatrix]) -> RingMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[R.zero] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[r0 + i][c0 + j] = b.entries[i][j]
        r0 += b.rows
        c0 += b.cols
    return RingMatrix(R, rows, cols, tuple(tuple(r) for r in out))


@dataclass(frozen=True)
class NormalFormResult:
    D: RingMatrix
    U: RingMatrix
    V: RingMatrix
    pivots: tuple


# -- lowering -----------------------------------------------------------------

def _lower_columns(R: Ring, A: RingMatrix) -> list[list]:
    """E-columns of the lowered matrix (``A.rows*d`` rows, ``A.cols*d`` columns)."""
    d = R.lift_dim
    E = R.euclid
    m = A.rows
    z = E.zero
    cols = []
    for j in range(A.cols):
        blocks = [R.mult_matrix(A.entries[i][j]) if A.entries[i][j] != R.zero else None for i in range(m)]
        for s in range(d):
            col = []
            for blk in blocks:
                if blk is None:
                    col.extend([z] * d)
                else:
                    col.extend(blk[t][s] for t in range(d))
            cols.append(col)
    return cols


def _lattice_columns(R: Ring, count: int) -> list[list]:
    """Columns spanning ``L^count`` inside ``E^(count*d)``."""
    d = R.lift_dim
    z = R.euclid.zero
    out = []
    L = R.lattice()
    for i in range(count):
        for vec in L:
            col = [z] * (count * d)
            col[i * d:(i + 1) * d] = vec
            out.append(col)
    return out


def _lower_vector(R: Ring, values) -> list:
    out = []
    for a in values:
        out.extend(R.lift(a))
    return out


def _raise_vector(R: Ring, vec: list, count: int) -> tuple:
    d = R.lift_dim
    return tuple(R.project(vec[i * d:(i + 1) * d]) for i in range(count))


def _require_lowerable(R: Ring):
    if R.euclid is None:
        raise UnsupportedRing(f"no Euclidean lowering for {R}")


def _solve_simple(A: RingMatrix, b: RingMatrix, keep: int):
    R = A.ring
    _require_lowerable(R)
    E = R.euclid
    d = R.lift_dim
    m_e = A.rows * d
    cols = _lower_columns(R, A)
    cols.extend(_lattice_columns(R, A.rows))
    rhs = [_lower_vector(R, b.column(j)) for j in range(b.cols)]
    sols, kernel = euclid.solve_columns(E, cols, m_e, rhs)
    if any(s is None for s in sols):
        return None
    kd = keep * d
    lattice = [v[:kd] for v in kernel]
    lattice = [v for v in lattice if any(a != E.zero for a in v)]
    lattice.extend(_lattice_columns(R, keep))
    if lattice:
        H, _, pivots = euclid.col_hnf(E, lattice, kd, reduce=True)
        reduced = [euclid.reduce_vector(E, s[:kd], H, pivots) for s in sols]
    else:
        reduced = [s[:kd] for s in sols]
    x0 = [_raise_vector(R, s, keep) for s in reduced]
    kvecs = []
    seen = set()
    for v in kernel:
        w = _raise_vector(R, v[:kd], keep)
        if any(a != R.zero for a in w) and w not in seen:
            seen.add(w)
            kvecs.append(w)
    return x0, kvecs


def _solve_product(A: RingMatrix, b: RingMatrix, keep: int):
    R = A.ring
    parts = []
    for i, _ in enumerate(R.factors):
        res = _solve_any(A.component(i), b.component(i), keep)
        if res is None:
            return None
        parts.append(res)
    nb = b.cols
    x0 = []
    for j in range(nb):
        x0.append(tuple(tuple(parts[i][0][j][k] for i in range(len(parts))) for k in range(keep)))
    kvecs = []
    for i, (_, kern) in enumerate(parts):
        for v in kern:
            kvecs.append(tuple(R.embed(i, a) for a in v))
    return x0, kvecs


def _solve_any(A: RingMatrix, b: RingMatrix, keep: int):
    if isinstance(A.ring, Product):
        return _solve_product(A, b, keep)
    return _solve_simple(A, b, keep)


def solve_linear(A: RingMatrix, b: RingMatrix, keep: int | None = None):
    """Solve ``A x = b`` exactly.

    Returns ``None`` if some column of ``b`` has no solution, otherwise
    ``(x0, kernel)`` where ``x0`` has ``A @ x0 == b`` and ``kernel`` is a list of
    column vectors generating ``{x : A x = 0}``.  The particular solution is
    reduced to a canonical representative modulo the kernel, so it depends only
    on the solution set.  With ``keep``, only the first ``keep`` unknowns are
    returned (and canonicalized); the remaining ones are auxiliary.
    """
    if A.ring != b.ring:
        raise RingMismatch(f"system over {A.ring} with right-hand side over {b.ring}")
    if A.rows != b.rows:
        raise DimensionMismatch(f"A has {A.rows} rows but b has {b.rows}")
    keep = A.cols if keep is None else keep
    R = A.ring
    res = _solve_any(A, b, keep)
    if res is None:
        return None
    x0, kvecs = res
    X = RingMatrix.from_columns(R, x0, keep) if b.cols else RingMatrix.zeros(R, keep, 0)
    kernel = [RingMatrix.column_vector(R, v) for v in kvecs]
    return X, kernel


def reduce_modulo(v: RingMatrix, G: RingMatrix) -> RingMatrix:
    """Canonical representative of each column of ``v`` modulo the span of ``G``'s columns."""
    R = v.ring
    if G.ring != R or G.rows != v.rows:
        raise DimensionMismatch("reduce_modulo: incompatible shapes")
    if isinstance(R, Product):
        comps = [reduce_modulo(v.component(i), G.component(i)) for i in range(len(R.factors))]
        ents = tuple(
            tuple(tuple(c.entries[a][b] for c in comps) for b in range(v.cols)) for a in range(v.rows)
        )
        return RingMatrix(R, v.rows, v.cols, ents)
    _require_lowerable(R)
    E = R.euclid
    m_e = v.rows * R.lift_dim
    lattice = _lower_columns(R, G) + _lattice_columns(R, v.rows)
    out = []
    H, _, pivots = euclid.col_hnf(E, lattice, m_e, reduce=True) if lattice else ([], [], [])
    for j in range(v.cols):
        w = euclid.reduce_vector(E, _lower_vector(R, v.column(j)), H, pivots)
        out.append(_raise_vector(R, w, v.rows))
    return RingMatrix.from_columns(R, out, v.rows)


def in_span(v: RingMatrix, G: RingMatrix) -> bool:
    """Whether every column of ``v`` lies in the column span of ``G``."""
    if v.cols == 0:
        return True
    return solve_linear(G, v, keep=0) is not None


# -- normal forms -------------------------------------------------------------

def _lifted_rows(R: Ring, A: RingMatrix) -> list[list]:
    return [[R.lift(a)[0] for a in r] for r in A.entries]


def _canonical_quotient_unit(R: Ring, a):
    """For ``R = E/(n)``: ``(u, g)`` with ``u`` a unit of ``R``, ``g | n`` canonical, ``u*a = g`` in ``R``."""
    E = R.euclid
    n = R.lattice()[0][0]
    la = R.lift(a)[0]
    g = E.gcd(la, n) if la != E.zero else E.normalize(n)[1]
    g = E.normalize(g)[1]
    if g == E.normalize(n)[1]:
        return R.one, R.zero
    ng = E.exact_div(n, g)
    w = E.divmod(E.exact_div(la, g), ng)[1]
    for t in _e_elements(E):
        cand = E.add(w, E.mul(t, ng))
        cand_r = R.project([cand])
        if R.is_unit(cand_r):
            return R.inverse(cand_r), R.project([g])
    raise AssertionError("no unit lift found")  # pragma: no cover


def _e_elements(E):
    if isinstance(E, euclid.IntegerDomain):
        yield from itertools.count()
        return
    for deg in itertools.count():
        for coeffs in itertools.product(range(E.p), repeat=deg):
            yield polys.trim(coeffs, E.p)


def _check_normal_form_ring(R: Ring):
    if not isinstance(R, (Integers, PolyOverPrimeField, _Residues, PolyQuotient)):
        raise UnsupportedRing(f"normal forms need a Euclidean ring or a quotient of one, not {R}")


def hnf(A: RingMatrix) -> NormalFormResult:
    """Column Hermite form ``A @ V == D`` (``U`` is the identity)."""
    R = A.ring
    _check_normal_form_ring(R)
    E = R.euclid
    lifted = _lifted_rows(R, A)
    cols = [[lifted[i][j] for i in range(A.rows)] for j in range(A.cols)]
    H, V, pivots = euclid.col_hnf(E, cols, A.rows, reduce=True)
    D = RingMatrix.from_columns(R, [[R.project([a]) for a in c] for c in H], A.rows)
    Vm = RingMatrix.from_columns(R, [[R.project([a]) for a in c] for c in V], A.cols)
    return NormalFormResult(D, RingMatrix.identity(R, A.rows), Vm, tuple(pivots))


def snf(A: RingMatrix) -> NormalFormResult:
    """Smith form ``U @ A @ V == D`` with ``d1 | d2 | ...`` canonical."""
    R = A.ring
    _check_normal_form_ring(R)
    E = R.euclid
    S, U, V = euclid.snf(E, _lifted_rows(R, A), A.rows, A.cols)
    proj = lambda rows: [[R.project([a]) for a in r] for r in rows]  # noqa: E731
    Sr, Ur = proj(S), proj(U)
    if R.lattice():
        for t in range(min(A.rows, A.cols)):
            u, g = _canonical_quotient_unit(R, Sr[t][t])
            Sr[t][t] = g
            Ur[t] = [R.mul(u, a) for a in Ur[t]]
    pivots = tuple((t, t) for t in range(min(A.rows, A.cols)) if Sr[t][t] != R.zero)
    return NormalFormResult(
        RingMatrix(R, A.rows, A.cols, tuple(tuple(r) for r in Sr)),
        RingMatrix(R, A.rows, A.rows, tuple(tuple(r) for r in Ur)),
        RingMatrix(R, A.cols, A.cols, tuple(tuple(r) for r in proj(V))),
        pivots,
    )


def determinant(A: RingMatrix):
    R = A.ring
    _check_normal_form_ring(R)
    if A.rows != A.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    return R.project([euclid.det(R.euclid, _lifted_rows(R, A))])
