"""Computable commutative rings with exact, canonical element arithmetic.

Elements are plain hashable Python values in canonical form: ``int`` for the
integers and residue rings, coefficient tuples for polynomial and table
rings, and tuples of component elements for products.  Python's ordering on
these values is the canonical element order used for enumeration and
tie-breaking.

Every ring also knows how to *lower* itself onto a Euclidean domain ``E``
(ℤ or F_p[x]): an element is a vector in ``E^d``, multiplication by an
element is a ``d×d`` matrix over ``E``, and the ring is ``E^d`` modulo a
lattice.  Products are the one exception and are handled componentwise.
"""

from __future__ import annotations

import itertools
import math
import random
import re
from dataclasses import dataclass, field
from functools import cached_property

from . import euclid, polys
from .errors import (
    InfiniteRingError,
    InvariantViolation,
    ParseError,
    RingMismatch,
    UnsupportedRing,
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % k for k in range(2, math.isqrt(n) + 1))


class Ring:
    """Shared behaviour; concrete rings override the element primitives."""

    is_finite = False
    euclid = None  # lowering domain, None for products
    lift_dim = 1

    # -- element primitives -------------------------------------------------
    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def power(self, a, e: int):
        result = self.one
        for _ in range(e):
            result = self.mul(result, a)
        return result

    def is_zero(self, a) -> bool:
        return a == self.zero

    def order(self) -> int:
        raise InfiniteRingError(f"{self} is infinite")

    def elements(self):
        raise InfiniteRingError(f"cannot enumerate the infinite ring {self}")

    @cached_property
    def element_list(self) -> tuple:
        return tuple(self.elements())

    def random_element(self, rng: random.Random, bound: int = 10):
        return rng.choice(self.element_list)

    # -- derived predicates -------------------------------------------------
    def try_divide(self, a, b):
        """Smallest ``c`` (canonical order) with ``b*c == a``, or ``None``."""
        for c in self.elements():
            if self.mul(b, c) == a:
                return c
        return None

    def inverse(self, a):
        c = self.try_divide(self.one, a)
        if c is None:
            raise ZeroDivisionError(f"{a!r} is not a unit in {self}")
        return c

    def is_unit(self, a) -> bool:
        return self.try_divide(self.one, a) is not None

    def is_zero_divisor(self, a) -> bool:
        """True iff ``a*b == 0`` for some ``b != 0``; finite rings: non-units."""
        return not self.is_unit(a)

    def annihilator_gens(self, a) -> list:
        from .linalg import RingMatrix, solve_linear

        A = RingMatrix(self, 1, 1, ((a,),))
        _, kernel = solve_linear(A, RingMatrix.zeros(self, 1, 1))
        return [v.entries[0][0] for v in kernel]

    # -- serialization ------------------------------------------------------
    def to_json(self, a):
        return a

    def from_json(self, obj):
        return self.check(obj)

    def format(self, a) -> str:
        return str(self.to_json(a))

    def descriptor(self):
        """String descriptor, or a JSON object for rings without sugar."""
        return str(self)

    # -- lowering -----------------------------------------------------------
    def lattice(self) -> list[list]:
        return []


def elem_arith(R: Ring, op: str, a, b=None):
    a = R.check(a)
    if op == "neg":
        return R.neg(a)
    b = R.check(b)
    if op == "add":
        return R.add(a, b)
    if op == "sub":
        return R.sub(a, b)
    if op == "mul":
        return R.mul(a, b)
    raise ValueError(f"unknown operation {op!r}")


def try_divide_elem(R: Ring, a, b):
    return R.try_divide(R.check(a), R.check(b))


def annihilator_gens(R: Ring, x) -> list:
    return R.annihilator_gens(R.check(x))


def enumerate_ring(R: Ring):
    return R.elements()


def is_unit(R: Ring, a) -> bool:
    return R.is_unit(R.check(a))


def is_zero_divisor(R: Ring, a) -> bool:
    return R.is_zero_divisor(R.check(a))


@dataclass(frozen=True)
class Integers(Ring):
    euclid = euclid.ZZ
    zero = 0
    one = 1

    def __str__(self):
        return "Z"

    def check(self, a):
        if isinstance(a, bool) or not isinstance(a, int):
            raise RingMismatch(f"{a!r} is not an element of Z")
        return a

    def from_int(self, k: int):
        return k

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def power(self, a, e):
        return a**e

    def try_divide(self, a, b):
        if b == 0:
            return 0 if a == 0 else None
        q, r = divmod(a, b)
        return q if r == 0 else None

    def is_unit(self, a):
        return a in (1, -1)

    def is_zero_divisor(self, a):
        return a == 0

    def annihilator_gens(self, a):
        return [1] if a == 0 else []

    def random_element(self, rng, bound=10):
        return rng.randint(-bound, bound)

    def lift(self, a):
        return [a]

    def mult_matrix(self, a):
        return [[a]]

    def project(self, v):
        return v[0]


class _Residues(Ring):
    """Shared code for ℤ/n and GF(p); ``modulus`` is provided by subclasses."""

    is_finite = True
    euclid = euclid.ZZ
    zero = 0
    one = 1

    def check(self, a):
        if isinstance(a, bool) or not isinstance(a, int):
            raise RingMismatch(f"{a!r} is not an element of {self}")
        if not 0 <= a < self.modulus:
            raise RingMismatch(f"{a!r} is not a canonical residue of {self}")
        return a

    def from_json(self, obj):
        if isinstance(obj, bool) or not isinstance(obj, int):
            raise RingMismatch(f"{obj!r} is not an element of {self}")
        return obj % self.modulus

    def from_int(self, k):
        return k % self.modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def neg(self, a):
        return (-a) % self.modulus

    def sub(self, a, b):
        return (a - b) % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def power(self, a, e):
        return pow(a, e, self.modulus)

    def order(self):
        return self.modulus

    def elements(self):
        return iter(range(self.modulus))

    def random_element(self, rng, bound=10):
        return rng.randrange(self.modulus)

    def try_divide(self, a, b):
        n = self.modulus
        g = math.gcd(b, n)
        if a % g:
            return None
        m = n // g
        if m == 1:
            return 0
        return (a // g) * pow(b // g, -1, m) % m

    def is_unit(self, a):
        return math.gcd(a, self.modulus) == 1

    def annihilator_gens(self, a):
        n = self.modulus
        gen = n // math.gcd(a, n)
        return [] if gen == n else [gen]

    def lift(self, a):
        return [a]

    def mult_matrix(self, a):
        return [[a]]

    def lattice(self):
        return [[self.modulus]]

    def project(self, v):
        return v[0] % self.modulus


@dataclass(frozen=True)
class IntegersMod(_Residues):
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise InvariantViolation(f"Z/{self.n}: modulus must be at least 2")

    @property
    def modulus(self):
        return self.n

    def __str__(self):
        return f"Z/{self.n}"


@dataclass(frozen=True)
class PrimeField(_Residues):
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise InvariantViolation(f"GF({self.p}): {self.p} is not prime")

    @property
    def modulus(self):
        return self.p

    def __str__(self):
        return f"GF({self.p})"


@dataclass(frozen=True)
class PolyOverPrimeField(Ring):
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise InvariantViolation(f"GF({self.p})[x]: {self.p} is not prime")

    zero = ()
    one = (1,)

    @property
    def euclid(self):
        return euclid.PolyDomain(self.p)

    def __str__(self):
        return f"GF({self.p})[x]"

    def check(self, a):
        if not isinstance(a, tuple) or any(
            isinstance(c, bool) or not isinstance(c, int) or not 0 <= c < self.p for c in a
        ):
            raise RingMismatch(f"{a!r} is not an element of {self}")
        if a and a[-1] == 0:
            raise RingMismatch(f"{a!r} has trailing zero coefficients")
        return a

    def from_json(self, obj):
        if isinstance(obj, str):
            try:
                return polys.parse(obj, self.p)
            except ValueError as exc:
                raise RingMismatch(str(exc)) from None
        if isinstance(obj, int) and not isinstance(obj, bool):
            return polys.trim([obj], self.p)
        if isinstance(obj, list) and all(isinstance(c, int) for c in obj):
            return polys.trim(obj, self.p)
        raise RingMismatch(f"{obj!r} is not an element of {self}")

    def to_json(self, a):
        return list(a)

    def format(self, a):
        return polys.to_str(a)

    def from_int(self, k):
        return polys.trim([k], self.p)

    def add(self, a, b):
        return polys.add(a, b, self.p)

    def neg(self, a):
        return polys.neg(a, self.p)

    def sub(self, a, b):
        return polys.sub(a, b, self.p)

    def mul(self, a, b):
        return polys.mul(a, b, self.p)

    def try_divide(self, a, b):
        return self.euclid.exact_div(a, b)

    def is_unit(self, a):
        return len(a) == 1

    def is_zero_divisor(self, a):
        return not a

    def annihilator_gens(self, a):
        return [self.one] if not a else []

    def random_element(self, rng, bound=3):
        return polys.trim([rng.randrange(self.p) for _ in range(bound + 1)], self.p)

    def lift(self, a):
        return [a]

    def mult_matrix(self, a):
        return [[a]]

    def project(self, v):
        return v[0]


@dataclass(frozen=True)
class PolyQuotient(Ring):
    """GF(p)[x]/(f) with f monic; elements are length-deg(f) coefficient tuples."""

    p: int
    modulus: tuple

    is_finite = True

    def __post_init__(self):
        if not is_prime(self.p):
            raise InvariantViolation(f"{self.p} is not prime")
        f = polys.trim(self.modulus, self.p)
        if f != tuple(self.modulus) or len(f) < 2 or f[-1] != 1:
            raise InvariantViolation(
                f"modulus {self.modulus!r} must be monic of degree >= 1 over GF({self.p})"
            )

    @property
    def deg(self) -> int:
        return len(self.modulus) - 1

    @property
    def euclid(self):
        return euclid.PolyDomain(self.p)

    @property
    def zero(self):
        return (0,) * self.deg

    @property
    def one(self):
        return (1,) + (0,) * (self.deg - 1)

    def __str__(self):
        return f"GF({self.p})[x]/({polys.to_str(self.modulus)})"

    def _pad(self, a: tuple) -> tuple:
        return a + (0,) * (self.deg - len(a))

    def _reduce(self, a: tuple) -> tuple:
        return self._pad(polys.divmod_(a, self.modulus, self.p)[1])

    def check(self, a):
        if (
            not isinstance(a, tuple)
            or len(a) != self.deg
            or any(isinstance(c, bool) or not isinstance(c, int) or not 0 <= c < self.p for c in a)
        ):
            raise RingMismatch(f"{a!r} is not an element of {self}")
        return a

    def from_json(self, obj):
        if isinstance(obj, str):
            try:
                return self._reduce(polys.parse(obj, self.p))
            except ValueError as exc:
                raise RingMismatch(str(exc)) from None
        if isinstance(obj, int) and not isinstance(obj, bool):
            return self.from_int(obj)
        if isinstance(obj, list) and all(isinstance(c, int) for c in obj):
            return self._reduce(polys.trim(obj, self.p))
        raise RingMismatch(f"{obj!r} is not an element of {self}")

    def to_json(self, a):
        return list(a)

    def format(self, a):
        return polys.to_str(polys.trim(a, self.p))

    def from_int(self, k):
        return self._reduce(polys.trim([k], self.p))

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def mul(self, a, b):
        return self._reduce(polys.mul(polys.trim(a, self.p), polys.trim(b, self.p), self.p))

    def order(self):
        return self.p**self.deg

    def elements(self):
        return itertools.product(range(self.p), repeat=self.deg)

    def is_unit(self, a):
        return polys.gcd(polys.trim(a, self.p), self.modulus, self.p) == (1,)

    def annihilator_gens(self, a):
        g = polys.gcd(polys.trim(a, self.p), self.modulus, self.p)
        gen = polys.divmod_(self.modulus, g, self.p)[0]
        return [] if gen == self.modulus else [self._reduce(gen)]

    def random_element(self, rng, bound=10):
        return tuple(rng.randrange(self.p) for _ in range(self.deg))

    def lift(self, a):
        return [polys.trim(a, self.p)]

    def mult_matrix(self, a):
        return [[polys.trim(a, self.p)]]

    def lattice(self):
        return [[self.modulus]]

    def project(self, v):
        return self._reduce(v[0])


def _det_mod(rows, n):
    return euclid.det(euclid.ZZ, rows) % n


@dataclass(frozen=True)
class TableRing(Ring):
    """Free module over ℤ/n or GF(p) with a multiplication table on a basis.

    ``table[i][j]`` is the coefficient vector of ``e_i * e_j``.  ``names`` and
    ``label`` are presentation only (basis monomial names, sugar text).
    """

    base: _Residues
    dim: int
    table: tuple
    one_vector: tuple
    names: tuple | None = field(default=None, compare=False)
    variables: tuple | None = field(default=None, compare=False)
    label: str | None = field(default=None, compare=False)

    is_finite = True
    euclid = euclid.ZZ

    def __post_init__(self):
        if not isinstance(self.base, _Residues):
            raise InvariantViolation("table ring base must be Z/n or GF(p)")
        n, d = self.base.modulus, self.dim
        if d < 1:
            raise InvariantViolation("table ring dimension must be positive")
        tab = tuple(tuple(tuple(c % n for c in self.table[i][j]) for j in range(d)) for i in range(d))
        if any(len(self.table[i]) != d or any(len(v) != d for v in self.table[i]) for i in range(d)):
            raise InvariantViolation("multiplication table must be dim x dim x dim")
        object.__setattr__(self, "table", tab)
        object.__setattr__(self, "one_vector", tuple(c % n for c in self.one_vector))
        basis = [tuple(1 if k == i else 0 for k in range(d)) for i in range(d)]
        for i in range(d):
            for j in range(d):
                if tab[i][j] != tab[j][i]:
                    raise InvariantViolation(f"multiplication not commutative on basis pair ({i}, {j})")
            if self.mul(self.one_vector, basis[i]) != basis[i]:
                raise InvariantViolation(f"one_vector is not an identity for basis element {i}")
        for i, j, k in itertools.product(range(d), repeat=3):
            lhs = self.mul(tab[i][j], basis[k])
            rhs = self.mul(basis[i], tab[j][k])
            if lhs != rhs:
                raise InvariantViolation(f"multiplication not associative on basis triple ({i}, {j}, {k})")

    @property
    def zero(self):
        return (0,) * self.dim

    @property
    def one(self):
        return self.one_vector

    @property
    def lift_dim(self):
        return self.dim

    def __str__(self):
        if self.label:
            return self.label
        return f"Table({self.base}, dim={self.dim})"

    def descriptor(self):
        if self.label:
            return self.label
        return {
            "table": {
                "base": str(self.base),
                "dim": self.dim,
                "mul": [[list(v) for v in row] for row in self.table],
                "one": list(self.one_vector),
            }
        }

    def check(self, a):
        n = self.base.modulus
        if (
            not isinstance(a, tuple)
            or len(a) != self.dim
            or any(isinstance(c, bool) or not isinstance(c, int) or not 0 <= c < n for c in a)
        ):
            raise RingMismatch(f"{a!r} is not an element of {self}")
        return a

    def from_json(self, obj):
        n = self.base.modulus
        if isinstance(obj, str):
            return self.parse_expression(obj)
        if isinstance(obj, int) and not isinstance(obj, bool):
            return self.from_int(obj)
        if isinstance(obj, list) and len(obj) == self.dim and all(isinstance(c, int) for c in obj):
            return tuple(c % n for c in obj)
        raise RingMismatch(f"{obj!r} is not an element of {self}")

    def to_json(self, a):
        return list(a)

    def format(self, a):
        if not self.names:
            return str(list(a))
        terms = []
        for c, name in zip(a, self.names):
            if c:
                if name == "1":
                    terms.append(str(c))
                else:
                    terms.append(name if c == 1 else f"{c}{name}")
        return "+".join(terms) or "0"

    def parse_expression(self, text: str):
        """Evaluate a polynomial expression in the ring variables, e.g. ``x+y``."""
        if not self.variables:
            raise RingMismatch(f"{self} has no named variables")
        gens = {v: self.basis_of_monomial({v: 1}) for v in self.variables}
        s = text.replace(" ", "")
        pieces = re.findall(r"[+-]?[^+-]+", s)
        if not s or "".join(pieces) != s:
            raise RingMismatch(f"cannot parse element {text!r}")
        total = self.zero
        for piece in pieces:
            sign = -1 if piece[0] == "-" else 1
            body = piece.lstrip("+-")
            m = re.match(r"^(\d*)\*?(.*)$", body)
            coef = int(m.group(1)) if m.group(1) else 1
            value = self.from_int(sign * coef)
            for var, exp in _monomial_factors(m.group(2), self.variables, text):
                value = self.mul(value, self.power(gens[var], exp))
            total = self.add(total, value)
        return total

    def basis_of_monomial(self, exps: dict):
        key = tuple(exps.get(v, 0) for v in self.variables)
        idx = self._monomial_index.get(key)
        if idx is None:
            return self.zero
        return tuple(1 if k == idx else 0 for k in range(self.dim))

    @cached_property
    def _monomial_index(self):
        out = {}
        for k, name in enumerate(self.names or ()):
            exps = dict(_monomial_factors("" if name == "1" else name, self.variables, name))
            out[tuple(exps.get(v, 0) for v in self.variables)] = k
        return out

    @cached_property
    def _mult_cache(self):
        return {}

    def from_int(self, k):
        n = self.base.modulus
        return tuple((k * c) % n for c in self.one_vector)

    def add(self, a, b):
        n = self.base.modulus
        return tuple((x + y) % n for x, y in zip(a, b))

    def neg(self, a):
        n = self.base.modulus
        return tuple((-x) % n for x in a)

    def sub(self, a, b):
        n = self.base.modulus
        return tuple((x - y) % n for x, y in zip(a, b))

    def mul(self, a, b):
        n, d, tab = self.base.modulus, self.dim, self.table
        out = [0] * d
        for i, x in enumerate(a):
            if not x:
                continue
            row = tab[i]
            for j, y in enumerate(b):
                if not y:
                    continue
                c = x * y
                for k, t in enumerate(row[j]):
                    if t:
                        out[k] += c * t
        return tuple(v % n for v in out)

    def order(self):
        return self.base.modulus**self.dim

    def elements(self):
        return itertools.product(range(self.base.modulus), repeat=self.dim)

    def random_element(self, rng, bound=10):
        n = self.base.modulus
        return tuple(rng.randrange(n) for _ in range(self.dim))

    def is_unit(self, a):
        return math.gcd(_det_mod(self.mult_matrix(a), self.base.modulus), self.base.modulus) == 1

    def lift(self, a):
        return list(a)

    def mult_matrix(self, a):
        """Matrix of ``v -> a*v`` in the basis; column ``i`` is ``a*e_i``."""
        cache = self._mult_cache
        m = cache.get(a)
        if m is None:
            d = self.dim
            cols = [self.mul(a, tuple(1 if k == i else 0 for k in range(d))) for i in range(d)]
            m = [[cols[i][k] for i in range(d)] for k in range(d)]
            cache[a] = m
        return m

    def lattice(self):
        n, d = self.base.modulus, self.dim
        return [[n if k == i else 0 for k in range(d)] for i in range(d)]

    def project(self, v):
        n = self.base.modulus
        return tuple(c % n for c in v)


@dataclass(frozen=True)
class Product(Ring):
    factors: tuple

    def __post_init__(self):
        flat = []
        for f in self.factors:
            if isinstance(f, Product):
                flat.extend(f.factors)
            elif isinstance(f, Ring):
                flat.append(f)
            else:
                raise InvariantViolation(f"{f!r} is not a ring")
        if not flat:
            raise InvariantViolation("a product needs at least one factor")
        object.__setattr__(self, "factors", tuple(flat))

    @property
    def is_finite(self):
        return all(f.is_finite for f in self.factors)

    @property
    def zero(self):
        return tuple(f.zero for f in self.factors)

    @property
    def one(self):
        return tuple(f.one for f in self.factors)

    def __str__(self):
        return " x ".join(str(f) for f in self.factors)

    def descriptor(self):
        descs = [f.descriptor() for f in self.factors]
        if all(isinstance(d, str) for d in descs):
            return " x ".join(descs)
        return {"product": descs}

    def check(self, a):
        if not isinstance(a, tuple) or len(a) != len(self.factors):
            raise RingMismatch(f"{a!r} is not an element of {self}")
        return tuple(f.check(x) for f, x in zip(self.factors, a))

    def from_json(self, obj):
        if isinstance(obj, int) and not isinstance(obj, bool):
            return self.from_int(obj)
        if not isinstance(obj, list) or len(obj) != len(self.factors):
            raise RingMismatch(f"{obj!r} is not an element of {self}")
        return tuple(f.from_json(x) for f, x in zip(self.factors, obj))

    def to_json(self, a):
        return [f.to_json(x) for f, x in zip(self.factors, a)]

    def format(self, a):
        return "(" + ", ".join(f.format(x) for f, x in zip(self.factors, a)) + ")"

    def from_int(self, k):
        return tuple(f.from_int(k) for f in self.factors)

    def add(self, a, b):
        return tuple(f.add(x, y) for f, x, y in zip(self.factors, a, b))

    def neg(self, a):
        return tuple(f.neg(x) for f, x in zip(self.factors, a))

    def sub(self, a, b):
        return tuple(f.sub(x, y) for f, x, y in zip(self.factors, a, b))

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def order(self):
        return math.prod(f.order() for f in self.factors)

    def elements(self):
        if not self.is_finite:
            raise InfiniteRingError(f"cannot enumerate the infinite ring {self}")
        return itertools.product(*(f.element_list for f in self.factors))

    def random_element(self, rng, bound=10):
        return tuple(f.random_element(rng, bound) for f in self.factors)

    def try_divide(self, a, b):
        out = []
        for f, x, y in zip(self.factors, a, b):
            c = f.try_divide(x, y)
            if c is None:
                return None
            out.append(c)
        return tuple(out)

    def is_unit(self, a):
        return all(f.is_unit(x) for f, x in zip(self.factors, a))

    def is_zero_divisor(self, a):
        return any(f.is_zero_divisor(x) for f, x in zip(self.factors, a))

    def annihilator_gens(self, a):
        gens = []
        for i, (f, x) in enumerate(zip(self.factors, a)):
            for g in f.annihilator_gens(x):
                gens.append(self.embed(i, g))
        return gens

    def embed(self, i: int, x):
        """Element equal to ``x`` in factor ``i`` and zero elsewhere."""
        return tuple(x if k == i else f.zero for k, f in enumerate(self.factors))

    def idempotent(self, i: int):
        return self.embed(i, self.factors[i].one)


# -- descriptor parsing -------------------------------------------------------

def _split_top(text: str, sep_re: str) -> list[str]:
    parts, depth, start = [], 0, 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif depth == 0:
            m = re.match(sep_re, text[i:])
            if m and i > 0:
                parts.append(text[start:i])
                i += m.end()
                start = i
                continue
        i += 1
    parts.append(text[start:])
    return parts


def _monomial_factors(text: str, variables, context: str):
    """Split ``x^2y`` or ``x*y^3`` into ``[(var, exp), ...]``."""
    out = []
    s = text.replace("*", "")
    names = sorted(variables, key=len, reverse=True)
    i = 0
    while i < len(s):
        for v in names:
            if s.startswith(v, i):
                i += len(v)
                m = re.match(r"\^(\d+)", s[i:])
                exp = 1
                if m:
                    exp = int(m.group(1))
                    i += m.end()
                out.append((v, exp))
                break
        else:
            raise ParseError(f"cannot parse monomial {text!r} in {context!r}")
    return out


def _parse_base(text: str) -> _Residues:
    m = re.fullmatch(r"GF\((\d+)\)", text)
    if m:
        return PrimeField(int(m.group(1)))
    m = re.fullmatch(r"Z/(\d+)", text)
    if m:
        return IntegersMod(int(m.group(1)))
    raise ParseError(f"unknown coefficient ring {text!r}")


def _prime_power(q: int):
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            return (p, k) if q == 1 else None
    return None


def monomial_quotient(base: _Residues, variables: list[str], monomials: list[dict], label=None) -> TableRing:
    """Structure constants of ``base[variables]/(monomials)``."""
    k = len(variables)
    gens = [tuple(m.get(v, 0) for v in variables) for m in monomials]

    def in_ideal(e):
        return any(all(e[i] >= g[i] for i in range(k)) for g in gens)

    bounds = []
    for i in range(k):
        pure = [g[i] for g in gens if all(g[j] == 0 for j in range(k) if j != i) and g[i] > 0]
        if not pure:
            raise InvariantViolation(
                f"monomial ideal must contain a power of {variables[i]} (quotient would be infinite)"
            )
        bounds.append(min(pure))
    basis = [e for e in itertools.product(*(range(b) for b in bounds)) if not in_ideal(e)]
    basis.sort(key=lambda e: (sum(e), tuple(-x for x in e)))
    index = {e: i for i, e in enumerate(basis)}
    d = len(basis)
    table = []
    for a in basis:
        row = []
        for b in basis:
            e = tuple(x + y for x, y in zip(a, b))
            vec = [0] * d
            if e in index:
                vec[index[e]] = 1
            row.append(tuple(vec))
        table.append(tuple(row))

    def name(e):
        parts = []
        for v, x in zip(variables, e):
            if x == 1:
                parts.append(v)
            elif x > 1:
                parts.append(f"{v}^{x}")
        return "".join(parts) or "1"

    one = tuple(1 if i == 0 else 0 for i in range(d))
    return TableRing(
        base, d, tuple(table), one,
        names=tuple(name(e) for e in basis), variables=tuple(variables), label=label,
    )


def _parse_single(text: str) -> Ring:
    s = text.strip()
    if s in ("Z", "ZZ"):
        return Integers()
    m = re.fullmatch(r"Z/(\d+)", s)
    if m:
        return IntegersMod(int(m.group(1)))
    m = re.fullmatch(r"GF\((\d+)\)", s)
    if m:
        q = int(m.group(1))
        if is_prime(q):
            return PrimeField(q)
        pk = _prime_power(q)
        if pk is None:
            raise ParseError(f"GF({q}): order must be a prime power")
        p, k = pk
        return PolyQuotient(p, polys.smallest_irreducible(p, k))
    m = re.fullmatch(r"(GF\(\d+\)|Z/\d+)\[([a-z](?:,[a-z])*)\](?:/\((.*)\)(\^(\d+))?)?", s.replace(" ", ""))
    if not m:
        raise ParseError(f"cannot parse ring descriptor {text!r}")
    base_text, var_text, ideal_text, _, power = m.groups()
    base = _parse_base(base_text)
    variables = var_text.split(",")
    if len(variables) == 1 and not power and isinstance(base, PrimeField):
        if ideal_text is None:
            return PolyOverPrimeField(base.p)
        try:
            f = polys.parse(ideal_text, base.p, variables[0])
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        if len(variables) == 1 and variables[0] != "x":
            raise ParseError("univariate polynomial rings use the variable x")
        if not f or f[-1] != 1 or len(f) < 2:
            raise ParseError(f"modulus {ideal_text!r} must be monic of degree >= 1")
        return PolyQuotient(base.p, f)
    if ideal_text is None:
        raise ParseError(f"{text!r}: multivariate rings need a monomial quotient")
    pieces = [p for p in ideal_text.split(",") if p]
    monos = []
    for piece in pieces:
        exps: dict = {}
        for v, e in _monomial_factors(piece, variables, text):
            exps[v] = exps.get(v, 0) + e
        monos.append(exps)
    if power:
        # (v1,...,vk)^N: every monomial of degree N in the listed generators
        N = int(power)
        if not all(len(mo) == 1 and list(mo.values()) == [1] for mo in monos):
            raise ParseError(f"{text!r}: only ideals of variables can be raised to a power")
        gen_vars = [next(iter(mo)) for mo in monos]
        monos = []
        for combo in itertools.combinations_with_replacement(gen_vars, N):
            exps = {}
            for v in combo:
                exps[v] = exps.get(v, 0) + 1
            monos.append(exps)
    return monomial_quotient(base, variables, monos, label=s.replace(" ", ""))


def parse_ring(desc) -> Ring:
    """Parse a ring descriptor string (or JSON object for raw table rings)."""
    if isinstance(desc, Ring):
        return desc
    if isinstance(desc, dict):
        if "table" in desc:
            t = desc["table"]
            try:
                base = _parse_base(t["base"])
                return TableRing(
                    base, int(t["dim"]),
                    tuple(tuple(tuple(v) for v in row) for row in t["mul"]),
                    tuple(t["one"]),
                )
            except (KeyError, TypeError) as exc:
                raise ParseError(f"bad table ring descriptor: {exc}") from None
        if "product" in desc:
            return Product(tuple(parse_ring(d) for d in desc["product"]))
        raise ParseError(f"unknown ring descriptor object {desc!r}")
    if not isinstance(desc, str):
        raise ParseError(f"ring descriptor must be a string, got {desc!r}")
    parts = _split_top(desc.strip(), r"\s+(?:x|×)\s+|×")
    if len(parts) > 1:
        return Product(tuple(_parse_single(p) for p in parts))
    return _parse_single(desc)


def ring_parse(text) -> Ring:
    return parse_ring(text)
