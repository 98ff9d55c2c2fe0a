"""Dense univariate polynomials over a prime field.

A polynomial is a tuple of coefficients in ``[0, p)``, lowest degree first,
with no trailing zeros.  The zero polynomial is ``()``.
"""

from __future__ import annotations

import itertools
import re

Poly = tuple


def trim(coeffs, p: int) -> Poly:
    c = [a % p for a in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(a: Poly) -> int:
    return len(a) - 1


def add(a: Poly, b: Poly, p: int) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    c = list(a)
    for i, x in enumerate(b):
        c[i] = (c[i] + x) % p
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def neg(a: Poly, p: int) -> Poly:
    return tuple((-x) % p for x in a)


def sub(a: Poly, b: Poly, p: int) -> Poly:
    return add(a, neg(b, p), p)


def scale(a: Poly, k: int, p: int) -> Poly:
    k %= p
    if k == 0:
        return ()
    return tuple((x * k) % p for x in a)


def mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return ()
    c = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                c[i + j] += x * y
    return trim(c, p)


def divmod_(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - db, 0)
    for k in range(len(a) - 1, db - 1, -1):
        c = r[k] % p
        if c:
            t = (c * inv) % p
            q[k - db] = t
            for j, y in enumerate(b):
                r[k - db + j] = (r[k - db + j] - t * y) % p
    return trim(q, p), trim(r[:db], p)


def monic(a: Poly, p: int) -> tuple[int, Poly]:
    """Return ``(u, a')`` with ``u`` a unit of F_p and ``u*a == a'`` monic."""
    if not a:
        return 1, ()
    u = pow(a[-1], -1, p)
    return u, scale(a, u, p)


def gcd(a: Poly, b: Poly, p: int) -> Poly:
    while b:
        a, b = b, divmod_(a, b, p)[1]
    return monic(a, p)[1]


def power(a: Poly, e: int, p: int) -> Poly:
    result: Poly = (1,)
    base = a
    while e:
        if e & 1:
            result = mul(result, base, p)
        base = mul(base, base, p)
        e >>= 1
    return result


def is_irreducible(f: Poly, p: int) -> bool:
    """Brute-force irreducibility test; only meant for small degrees."""
    d = degree(f)
    if d < 1:
        return False
    for k in range(1, d // 2 + 1):
        for tail in itertools.product(range(p), repeat=k):
            g = tuple(tail) + (1,)
            if not divmod_(f, g, p)[1]:
                return False
    return True


def smallest_irreducible(p: int, d: int) -> Poly:
    """The lexicographically first monic irreducible polynomial of degree ``d``."""
    for tail in itertools.product(range(p), repeat=d):
        f = tuple(tail) + (1,)
        if is_irreducible(f, p):
            return f
    raise ValueError(f"no irreducible polynomial of degree {d} over GF({p})")


def to_str(a: Poly, var: str = "x") -> str:
    if not a:
        return "0"
    terms = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if not c:
            continue
        if k == 0:
            terms.append(str(c))
        else:
            mono = var if k == 1 else f"{var}^{k}"
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms)


_TERM = re.compile(r"^([+-]?)(\d*)\*?(?:([a-z])(?:\^(\d+))?)?$")


def parse(text: str, p: int, var: str = "x") -> Poly:
    """Parse a sum of terms like ``x^2+2x+1`` (``*`` optional)."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    pieces = re.findall(r"[+-]?[^+-]+", s)
    if "".join(pieces) != s:
        raise ValueError(f"cannot parse polynomial {text!r}")
    coeffs: dict[int, int] = {}
    for piece in pieces:
        m = _TERM.match(piece)
        if not m or (not m.group(2) and not m.group(3)):
            raise ValueError(f"cannot parse term {piece!r} in {text!r}")
        sign, num, v, exp = m.groups()
        if v is not None and v != var:
            raise ValueError(f"unknown variable {v!r} in {text!r}")
        c = int(num) if num else 1
        if sign == "-":
            c = -c
        k = 0 if v is None else (int(exp) if exp else 1)
        coeffs[k] = coeffs.get(k, 0) + c
    top = max(coeffs)
    return trim([coeffs.get(k, 0) for k in range(top + 1)], p)
