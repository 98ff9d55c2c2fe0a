"""Normal forms over the two Euclidean domains everything else lowers to.

Matrices here are plain lists.  ``col_hnf`` works on a list of *columns*
(column operations only); ``snf`` works on a list of rows and tracks both
transforms.  Pivot choice is the entry of least Euclidean size, ties broken
by lowest (row, col), which keeps the output deterministic.
"""

from __future__ import annotations

from . import polys


class IntegerDomain:
    name = "Z"
    zero = 0
    one = 1

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def size(self, a) -> int:
        return a if a >= 0 else -a

    def divmod(self, a, b):
        return divmod(a, b)

    def normalize(self, a):
        """Return ``(u, u*a)`` with ``u`` a unit and ``u*a`` the canonical associate."""
        return (-1, -a) if a < 0 else (1, a)

    def is_unit(self, a) -> bool:
        return a == 1 or a == -1

    def exact_div(self, a, b):
        if b == 0:
            return 0 if a == 0 else None
        q, r = divmod(a, b)
        return q if r == 0 else None

    def gcd(self, a, b):
        while b:
            a, b = b, a % b
        return abs(a)

    def __repr__(self):
        return "IntegerDomain()"


class PolyDomain:
    """F_p[x] with elements as coefficient tuples (see :mod:`moddiv.polys`)."""

    zero = ()
    one = (1,)

    def __init__(self, p: int):
        self.p = p
        self.name = f"GF({p})[x]"

    def add(self, a, b):
        return polys.add(a, b, self.p)

    def sub(self, a, b):
        return polys.sub(a, b, self.p)

    def mul(self, a, b):
        return polys.mul(a, b, self.p)

    def neg(self, a):
        return polys.neg(a, self.p)

    def size(self, a) -> int:
        return len(a)

    def divmod(self, a, b):
        return polys.divmod_(a, b, self.p)

    def normalize(self, a):
        u, m = polys.monic(a, self.p)
        return (u,), m

    def is_unit(self, a) -> bool:
        return len(a) == 1

    def exact_div(self, a, b):
        if not b:
            return () if not a else None
        q, r = polys.divmod_(a, b, self.p)
        return q if not r else None

    def gcd(self, a, b):
        return polys.gcd(a, b, self.p)

    def __eq__(self, other):
        return isinstance(other, PolyDomain) and other.p == self.p

    def __hash__(self):
        return hash(("PolyDomain", self.p))

    def __repr__(self):
        return f"PolyDomain({self.p})"


ZZ = IntegerDomain()


def identity(D, n: int) -> list[list]:
    return [[D.one if i == j else D.zero for j in range(n)] for i in range(n)]


def _axpy(D, y: list, q, x: list) -> None:
    """In place ``y -= q*x``."""
    if isinstance(D, IntegerDomain):
        for k, xv in enumerate(x):
            if xv:
                y[k] -= q * xv
        return
    for k, xv in enumerate(x):
        if xv:
            y[k] = D.sub(y[k], D.mul(q, xv))


def _scale(D, x: list, u) -> None:
    for k, xv in enumerate(x):
        x[k] = D.mul(u, xv)


def col_hnf(D, cols: list[list], m: int, reduce: bool = True):
    """Column Hermite form.

    ``cols`` is a list of ``n`` columns of length ``m``; it is copied.  Returns
    ``(H, V, pivots)`` where ``H`` and ``V`` are lists of columns with
    ``A @ V == H``, ``V`` unimodular, and ``pivots`` lists ``(row, col)``.
    Columns ``len(pivots):`` of ``H`` are zero and column ``k`` of ``H`` vanishes
    above its pivot row.  With ``reduce`` the entries left of each pivot are
    reduced to canonical residues, which makes ``H`` unique.
    """
    n = len(cols)
    H = [list(c) for c in cols]
    V = [[D.one if i == j else D.zero for i in range(n)] for j in range(n)]
    pivots = []
    c = 0
    for i in range(m):
        if c == n:
            break
        while True:
            nz = [j for j in range(c, n) if H[j][i] != D.zero]
            if not nz:
                break
            j0 = min(nz, key=lambda j: (D.size(H[j][i]), j))
            if j0 != c:
                H[c], H[j0] = H[j0], H[c]
                V[c], V[j0] = V[j0], V[c]
            piv = H[c][i]
            clean = True
            for j in range(c + 1, n):
                a = H[j][i]
                if a == D.zero:
                    continue
                q, r = D.divmod(a, piv)
                _axpy(D, H[j], q, H[c])
                _axpy(D, V[j], q, V[c])
                if r != D.zero:
                    clean = False
            if clean:
                break
        if c < n and H[c][i] != D.zero:
            u, _ = D.normalize(H[c][i])
            if u != D.one:
                _scale(D, H[c], u)
                _scale(D, V[c], u)
            if reduce:
                piv = H[c][i]
                for k in range(c):
                    a = H[k][i]
                    if a != D.zero:
                        q, _ = D.divmod(a, piv)
                        if q != D.zero:
                            _axpy(D, H[k], q, H[c])
                            _axpy(D, V[k], q, V[c])
            pivots.append((i, c))
            c += 1
    return H, V, pivots


def reduce_vector(D, v: list, H: list[list], pivots) -> list:
    """Canonical representative of ``v`` modulo the column span of a reduced ``H``."""
    v = list(v)
    for i, c in pivots:
        if v[i] != D.zero:
            q, _ = D.divmod(v[i], H[c][i])
            if q != D.zero:
                _axpy(D, v, q, H[c])
    return v


def solve_columns(D, cols: list[list], m: int, rhs: list[list]):
    """Solve ``A x = b`` for each ``b`` in ``rhs``.

    Returns ``(solutions, kernel)``: ``solutions`` holds one vector per right
    hand side or ``None`` where infeasible; ``kernel`` is a basis of the
    integer/polynomial kernel of ``A``.
    """
    n = len(cols)
    H, V, pivots = col_hnf(D, cols, m, reduce=False)
    out = []
    for b in rhs:
        res = list(b)
        y = [D.zero] * n
        ok = True
        for i, c in pivots:
            a = res[i]
            if a == D.zero:
                continue
            q = D.exact_div(a, H[c][i])
            if q is None:
                ok = False
                break
            y[c] = q
            _axpy(D, res, q, H[c])
        if ok and any(a != D.zero for a in res):
            ok = False
        if not ok:
            out.append(None)
            continue
        x = [D.zero] * n
        for c, yc in enumerate(y):
            if yc != D.zero:
                _axpy(D, x, D.neg(yc), V[c])
        out.append(x)
    kernel = V[len(pivots):]
    return out, kernel


def snf(D, rows: list[list], m: int, n: int):
    """Smith form with transforms: returns ``(S, U, V)`` with ``U A V == S``.

    All three are lists of rows.  Diagonal entries are canonical associates
    forming a divisibility chain.
    """
    A = [list(r) for r in rows]
    U = identity(D, m)
    # V is kept as columns for cheap column operations.
    Vc = [[D.one if i == j else D.zero for i in range(n)] for j in range(n)]
    Z = D.zero

    def col_op(j, q, k):  # col_j -= q * col_k
        for row in A:
            if row[k] != Z:
                row[j] = D.sub(row[j], D.mul(q, row[k]))
        _axpy(D, Vc[j], q, Vc[k])

    def swap_cols(a, b):
        for row in A:
            row[a], row[b] = row[b], row[a]
        Vc[a], Vc[b] = Vc[b], Vc[a]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                row = A[i]
                for j in range(t, n):
                    a = row[j]
                    if a != Z:
                        key = (D.size(a), i, j)
                        if best is None or key < best:
                            best = key
            if best is None:
                break
            _, i0, j0 = best
            if i0 != t:
                A[t], A[i0] = A[i0], A[t]
                U[t], U[i0] = U[i0], U[t]
            if j0 != t:
                swap_cols(t, j0)
            piv = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                a = A[i][t]
                if a != Z:
                    q, r = D.divmod(a, piv)
                    _axpy(D, A[i], q, A[t])
                    _axpy(D, U[i], q, U[t])
                    if r != Z:
                        dirty = True
            for j in range(t + 1, n):
                a = A[t][j]
                if a != Z:
                    q, r = D.divmod(a, piv)
                    col_op(j, q, t)
                    if r != Z:
                        dirty = True
            if dirty:
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    a = A[i][j]
                    if a != Z and D.divmod(a, piv)[1] != Z:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            _axpy(D, A[t], D.neg(D.one), A[bad])
            _axpy(D, U[t], D.neg(D.one), U[bad])
        if best is None:
            break
        u, _ = D.normalize(A[t][t])
        if u != D.one:
            _scale(D, A[t], u)
            _scale(D, U[t], u)
    V = [[Vc[j][i] for j in range(n)] for i in range(n)]
    return A, U, V


def det(D, rows: list[list]):
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(rows)
    if n == 0:
        return D.one
    M = [list(r) for r in rows]
    sign = D.one
    prev = D.one
    for k in range(n - 1):
        if M[k][k] == D.zero:
            swap = next((i for i in range(k + 1, n) if M[i][k] != D.zero), None)
            if swap is None:
                return D.zero
            M[k], M[swap] = M[swap], M[k]
            sign = D.neg(sign)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = D.sub(D.mul(M[i][j], M[k][k]), D.mul(M[i][k], M[k][j]))
                M[i][j] = D.exact_div(num, prev)
        prev = M[k][k]
    return D.mul(sign, M[n - 1][n - 1])
