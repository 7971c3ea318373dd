"""Prime and extension field arithmetic, GF(p) and GF(p^m).

Elements are stored as integer codes ``sum(c_i * p**i)`` where ``c_i`` is
the coefficient of ``a**i`` in the polynomial basis, ``a`` being the class
of ``x`` modulo the field's defining polynomial. Code 0 is zero and code 1
is one in every field.

A field is described by an explicit monic irreducible modulus, so the same
``FieldSpec`` always produces the same element numbering:

>>> F8 = field_make(2, 3, [1, 1, 0, 1])        # x^3 + x + 1
>>> a = F8.gen
>>> a * a * a == F8.one + a
True
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    CapExceeded,
    DegreeMismatch,
    DivisionByZero,
    NotABasis,
    NotIrreducible,
    NotPrime,
    SpecMismatch,
)

#: Largest field order accepted by :func:`field_make`.
MAX_ORDER = 2**16
#: Largest order for which dense add/mul tables are built.
TABLE_ORDER = 256


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q = p**m``; raise :class:`NotPrime` if ``q`` is not a prime power."""
    for p in range(2, q + 1):
        if q % p == 0:
            m = 0
            r = q
            while r % p == 0:
                r //= p
                m += 1
            if r != 1 or not is_prime(p):
                break
            return p, m
    raise NotPrime(f"{q} is not a prime power")


# -- polynomials over GF(p), coefficient lists low degree first ------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    mod = _trim([c % p for c in mod])
    dm = len(mod) - 1
    lead_inv = pow(mod[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        shift = len(a) - 1 - dm
        factor = a[-1] * lead_inv % p
        for i, c in enumerate(mod):
            a[shift + i] = (a[shift + i] - factor * c) % p
        _trim(a)
    return a


def _monic_polys(p: int, degree: int) -> Iterable[list[int]]:
    for low in itertools.product(range(p), repeat=degree):
        yield list(reversed(low)) + [1]


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    mod = _trim([c % p for c in modulus])
    deg = len(mod) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(p, d):
            if not _poly_mod(mod, f, p):
                return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """The monic irreducible of degree ``m`` with the smallest integer code.

    Codes read coefficients low degree first, so for ``(2, 3)`` this is
    ``x^3 + x + 1``; for ``m == 1`` it is ``x``.
    """
    if m == 1:
        return (0, 1)
    for code in range(p**m):
        low = [(code // p**i) % p for i in range(m)]
        cand = low + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise NotIrreducible(f"no irreducible of degree {m} over GF({p})")  # pragma: no cover


# -- fields -----------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """GF(p^m) given by a monic irreducible ``modulus`` (low degree first)."""

    p: int
    m: int
    modulus: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        if self.m < 1:
            raise DegreeMismatch(f"extension degree must be >= 1, got {self.m}")
        mod = tuple(int(c) % self.p for c in (self.modulus or default_modulus(self.p, self.m)))
        object.__setattr__(self, "modulus", mod)
        if len(mod) != self.m + 1 or mod[-1] != 1:
            raise DegreeMismatch(f"modulus {list(mod)} is not monic of degree {self.m}")
        if self.p**self.m > MAX_ORDER:
            raise CapExceeded(f"field order {self.p ** self.m} exceeds {MAX_ORDER}")
        if not is_irreducible(mod, self.p):
            raise NotIrreducible(f"{list(mod)} is reducible over GF({self.p})")

    @property
    def order(self) -> int:
        return self.p**self.m

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={list(self.modulus)})"

    # encoding
    def encode(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.m:
            raise DegreeMismatch(f"{len(coeffs)} coefficients for degree-{self.m} field")
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs))

    def decode(self, code: int) -> tuple[int, ...]:
        return tuple((code // self.p**i) % self.p for i in range(self.m))

    # scalar arithmetic on codes
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        return self.encode([(x + y) for x, y in zip(self.decode(a), self.decode(b))])

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.m == 1:
            return (-a) % self.p
        return self.encode([-x for x in self.decode(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a * b) % self.p
        if self.order <= TABLE_ORDER:
            return self._mul_rows[a][b]
        return self._mul_raw(a, b)

    def _mul_raw(self, a: int, b: int) -> int:
        x, y = self.decode(a), self.decode(b)
        prod = [0] * (2 * self.m - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    prod[i + j] += xi * yj
        return self.encode(_poly_mod(prod, self.modulus, self.p))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("zero has no inverse")
        return self.pow(a, self.order - 2)

    def frobenius(self, a: int, k: int = 1) -> int:
        """``a ** (p ** k)``."""
        return self.pow(a, self.p**k)

    # dense tables, used by the lattice kernels
    def _check_table_size(self):
        if self.order > TABLE_ORDER:
            raise CapExceeded(f"tables only built for fields of order <= {TABLE_ORDER}")

    @cached_property
    def mul_table(self) -> np.ndarray:
        self._check_table_size()
        q = self.order
        t = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(a, q):
                t[a, b] = t[b, a] = self._mul_raw(a, b) if self.m > 1 else (a * b) % self.p
        t.setflags(write=False)
        return t

    @cached_property
    def _mul_rows(self) -> list[list[int]]:
        return self.mul_table.tolist()

    @cached_property
    def add_table(self) -> np.ndarray:
        self._check_table_size()
        q = self.order
        t = np.array([[self.add(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
        t.setflags(write=False)
        return t

    @cached_property
    def neg_table(self) -> np.ndarray:
        self._check_table_size()
        t = np.array([self.neg(a) for a in range(self.order)], dtype=np.int64)
        t.setflags(write=False)
        return t

    @cached_property
    def inv_table(self) -> np.ndarray:
        """``inv_table[0]`` is 0 by convention; callers never divide by zero."""
        self._check_table_size()
        t = np.array([0] + [self.inv(a) for a in range(1, self.order)], dtype=np.int64)
        t.setflags(write=False)
        return t

    # element views
    def __call__(self, value) -> "FieldElem":
        return self.elem(value)

    def elem(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.spec != self:
                raise SpecMismatch(f"{value!r} does not belong to {self!r}")
            return value
        if isinstance(value, (list, tuple)):
            return FieldElem(self, self.encode(value))
        value = int(value)
        if not 0 <= value < self.order:
            raise ValueError(f"code {value} out of range for {self!r}")
        return FieldElem(self, value)

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    @property
    def gen(self) -> "FieldElem":
        """The class of ``x``; for prime fields this is the residue of ``-modulus[0]``."""
        if self.m == 1:
            return FieldElem(self, (-self.modulus[0]) % self.p)
        return FieldElem(self, self.p)

    def elements(self) -> list["FieldElem"]:
        return [FieldElem(self, c) for c in range(self.order)]

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, data: dict) -> "FieldSpec":
        return field_make(int(data["p"]), int(data["m"]), data.get("modulus"))


class FieldElem:
    """An element of a :class:`FieldSpec`; arithmetic across specs is refused."""

    __slots__ = ("spec", "value")

    def __init__(self, spec: FieldSpec, value: int):
        self.spec = spec
        self.value = value

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.decode(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.spec != self.spec:
                raise SpecMismatch(f"cannot combine {self.spec!r} and {other.spec!r}")
            return other.value
        if isinstance(other, int):
            return self.spec.elem(other % self.spec.p).value
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.spec, self.spec.add(self.value, b))

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.spec, self.spec.neg(self.value))

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.spec, self.spec.sub(self.value, b))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.spec, self.spec.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.spec, self.spec.mul(self.value, self.spec.inv(b)))

    def __pow__(self, e: int):
        return FieldElem(self.spec, self.spec.pow(self.value, e))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.spec, self.spec.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.spec == other.spec and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.spec.p
        return NotImplemented

    def __hash__(self):
        return hash((self.spec.p, self.spec.modulus, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        if self.spec.m == 1:
            return f"{self.value}"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms) or "0"


def field_make(p: int, m: int, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Build GF(p^m) from an explicit modulus (low degree first)."""
    return FieldSpec(int(p), int(m), tuple(int(c) for c in modulus) if modulus else ())


@lru_cache(maxsize=None)
def GF(q: int) -> FieldSpec:
    """The field of order ``q`` with the default modulus."""
    p, m = prime_power(q)
    return FieldSpec(p, m)


def field_arith(a: FieldElem, b: FieldElem | None, op: str) -> FieldElem:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown field operation {op!r}")


# -- linear algebra over an arbitrary FieldSpec ------------------------------

def row_reduce(F: FieldSpec, rows: Sequence[Sequence[int]], ncols: int | None = None):
    """Reduced row echelon form of a matrix of element codes.

    Returns ``(rref_rows, pivots)``; zero rows are dropped.
    """
    mat = [list(r) for r in rows]
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        piv = next((r for r in range(top, len(mat)) if mat[r][col]), None)
        if piv is None:
            continue
        mat[top], mat[piv] = mat[piv], mat[top]
        inv = F.inv(mat[top][col])
        mat[top] = [F.mul(inv, x) for x in mat[top]]
        for r in range(len(mat)):
            f = mat[r][col]
            if r != top and f:
                mat[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(mat[r], mat[top])]
        pivots.append(col)
        top += 1
        if top == len(mat):
            break
    return [tuple(r) for r in mat[:top]], pivots


def matrix_rank(F: FieldSpec, rows: Sequence[Sequence[int]], ncols: int | None = None) -> int:
    return len(row_reduce(F, rows, ncols)[1])


def nullspace(F: FieldSpec, rows: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Basis of ``{x : rows . x = 0}`` (right kernel), one vector per free column."""
    red, pivots = row_reduce(F, rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for row, pc in zip(red, pivots):
            x[pc] = F.neg(row[f])
        basis.append(tuple(x))
    return basis


def expand_to_base(x: FieldElem, basis: Sequence[FieldElem]) -> tuple[int, ...]:
    """Coordinates of ``x`` over GF(p) with respect to ``basis``.

    ``basis`` must be ``m`` elements of ``x.spec`` that are independent over
    the prime field.
    """
    F = x.spec
    K = GF(F.p)
    if len(basis) != F.m:
        raise NotABasis(f"need {F.m} basis elements, got {len(basis)}")
    for b in basis:
        if b.spec != F:
            raise SpecMismatch("basis element from a different field")
    # augmented system: columns are basis coefficient vectors, last column x
    rows = [[b.coeffs[i] for b in basis] + [x.coeffs[i]] for i in range(F.m)]
    red, pivots = row_reduce(K, rows, F.m + 1)
    if pivots[: F.m] != list(range(F.m)):
        raise NotABasis("basis elements are dependent over the prime field")
    return tuple(red[i][F.m] for i in range(F.m))
