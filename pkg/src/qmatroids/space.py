"""Subspaces of GF(q)^n in canonical form, and the full subspace lattice.

A :class:`Subspace` is stored as its reduced row echelon basis, each row
packed into an integer code with the first coordinate most significant
(``"0001"`` over GF(2) is code 1, ``"1000"`` is code 8). The RREF is unique,
so equality and hashing are plain tuple comparisons, and ``(dim, rows)``
gives the total order used everywhere for deterministic output.

:class:`Lattice` enumerates every subspace once and precomputes the sum,
intersection and orthogonal-complement tables the axiom checkers work with.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _pykernels as pyk
from . import kernels
from .errors import (
    AmbientMismatch,
    CapExceeded,
    DimensionMismatch,
    FieldMismatch,
    KernelNotContained,
    SelfOrthogonalDegenerate,
)
from .gf import GF

#: Default enumeration cap on ``n * log2(q)``.
DEFAULT_CAP = 16
#: Largest lattice for which the N x N pair tables are built.
TABLE_CAP = 6000


@lru_cache(maxsize=None)
def field_tables(q: int):
    """``(add, mul, neg, inv)`` of GF(q) as nested lists."""
    F = GF(q)
    return (F.add_table.tolist(), F.mul_table.tolist(), F.neg_table.tolist(), F.inv_table.tolist())


@lru_cache(maxsize=None)
def _array_tables(q: int):
    F = GF(q)
    return tuple(np.ascontiguousarray(t, dtype=np.int64)
                 for t in (F.add_table, F.mul_table, F.neg_table, F.inv_table))


def _rref(codes: Iterable[int], q: int, n: int) -> tuple[int, ...]:
    if q == 2:
        return tuple(pyk.rref2(list(codes), n))
    return pyk.rref_codes(list(codes), q, n, *field_tables(q))


def check_cap(q: int, n: int, cap: float | None = DEFAULT_CAP) -> None:
    if cap is not None and n * math.log2(q) > cap + 1e-9:
        raise CapExceeded(f"GF({q})^{n} exceeds the enumeration cap n*log2(q) <= {cap}")


def _validate_qn(q: int, n: int) -> None:
    GF(q)  # raises NotPrime for non prime powers
    if n < 0:
        raise DimensionMismatch(f"negative ambient dimension {n}")


def parse_vector(text: str | Sequence[int], q: int, n: int | None = None) -> tuple[int, ...]:
    """Digits from ``"1001"`` (one symbol per coordinate) or a sequence of ints."""
    if isinstance(text, str):
        digits = tuple(int(ch, 36) for ch in text.strip() if ch not in ", ")
    else:
        digits = tuple(int(x) for x in text)
    if n is not None and len(digits) != n:
        raise DimensionMismatch(f"vector {text!r} has length {len(digits)}, expected {n}")
    if any(not 0 <= d < q for d in digits):
        raise FieldMismatch(f"vector {text!r} has entries outside GF({q})")
    return digits


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(q)^n; ``rows`` are the RREF rows as integer codes.

    Build instances with :func:`span` (or the helpers below); the raw
    constructor trusts ``rows`` to already be canonical.

    ``A <= B`` and ``A < B`` test (proper) containment, ``A + B`` is the sum
    and ``A & B`` the intersection.
    """

    q: int
    n: int
    rows: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def key(self) -> tuple[int, ...]:
        return self.rows

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self.rows), self.rows)

    @property
    def basis(self) -> list[tuple[int, ...]]:
        return [tuple(pyk.to_digits(r, self.q, self.n)) for r in self.rows]

    def _check(self, other: "Subspace") -> None:
        if not isinstance(other, Subspace):
            raise TypeError(f"expected a Subspace, got {type(other).__name__}")
        if (self.q, self.n) != (other.q, other.n):
            raise AmbientMismatch(f"GF({self.q})^{self.n} vs GF({other.q})^{other.n}")

    def contains_vector(self, code: int) -> bool:
        return _rref(self.rows + (code,), self.q, self.n) == self.rows if code else True

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains_vector(r) for r in self.rows)

    def __lt__(self, other: "Subspace") -> bool:
        return self.dim < other.dim and self <= other

    def __ge__(self, other: "Subspace") -> bool:
        return other <= self

    def __gt__(self, other: "Subspace") -> bool:
        return other < self

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def perp(self) -> "Subspace":
        return perp(self)

    def vectors(self) -> list[int]:
        """Codes of all ``q**dim`` vectors, sorted."""
        q = self.q
        if q == 2:
            out = [0]
            for r in self.rows:
                out += [v ^ r for v in out]
            return sorted(out)
        add, mul, _, _ = field_tables(q)
        digit_rows = self.basis
        out = []
        for coeffs in itertools.product(range(q), repeat=self.dim):
            v = [0] * self.n
            for c, row in zip(coeffs, digit_rows):
                if c:
                    v = [add[x][mul[c][y]] for x, y in zip(v, row)]
            out.append(pyk.from_digits(v, q))
        return sorted(out)

    def lines(self) -> list["Subspace"]:
        return list(enumerate_lines_in(self))

    def __repr__(self):
        return f"Subspace(q={self.q}, n={self.n}, {self})"

    def __str__(self):
        if self.q <= 36:
            sep = "" if self.q <= 10 else ","
            words = [sep.join(np.base_repr(d, 36).lower() for d in row) for row in self.basis]
        else:
            words = [",".join(map(str, row)) for row in self.basis]
        return "<" + " ".join(words) + ">" if words else "<0>"

    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n, "rref": [list(r) for r in self.basis]}

    @classmethod
    def from_json(cls, data: dict) -> "Subspace":
        return span(int(data["q"]), int(data["n"]), data.get("rref", []))


def span(q: int, n: int, vectors: Iterable[Sequence[int] | str]) -> Subspace:
    """Canonical subspace spanned by ``vectors`` (digit sequences or strings like ``"1001"``)."""
    _validate_qn(q, n)
    codes = [pyk.from_digits(parse_vector(v, q, n), q) for v in vectors]
    return Subspace(q, n, _rref(codes, q, n))


def from_codes(q: int, n: int, codes: Iterable[int]) -> Subspace:
    return Subspace(q, n, _rref([int(c) for c in codes], q, n))


def zero(q: int, n: int) -> Subspace:
    return Subspace(q, n, ())


def whole(q: int, n: int) -> Subspace:
    return Subspace(q, n, tuple(q ** (n - 1 - i) for i in range(n)))


def subspace_sum(A: Subspace, B: Subspace) -> Subspace:
    A._check(B)
    return Subspace(A.q, A.n, _rref(A.rows + B.rows, A.q, A.n))


def intersect(A: Subspace, B: Subspace) -> Subspace:
    """Zassenhaus: reduce ``[[A, A], [B, 0]]``; the zero-left rows give ``A & B``."""
    A._check(B)
    q, n = A.q, A.n
    Q = q**n
    red = _rref([a * Q + a for a in A.rows] + [b * Q for b in B.rows], q, 2 * n)
    return Subspace(q, n, tuple(r for r in red if r < Q))


def perp(A: Subspace) -> Subspace:
    """Orthogonal complement under the standard dot product."""
    q, n = A.q, A.n
    _, _, neg, _ = field_tables(q)
    basis = A.basis
    pivots = [next(i for i, d in enumerate(row) if d) for row in basis]
    vecs = []
    for f in (c for c in range(n) if c not in pivots):
        x = [0] * n
        x[f] = 1
        for row, pc in zip(basis, pivots):
            x[pc] = neg[row[f]]
        vecs.append(pyk.from_digits(x, q))
    return Subspace(q, n, _rref(vecs, q, n))


def dot(u: Sequence[int], v: Sequence[int], q: int) -> int:
    add, mul, _, _ = field_tables(q)
    s = 0
    for a, b in zip(u, v):
        s = add[s][mul[a][b]]
    return s


# -- enumeration ------------------------------------------------------------

def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _rref_of_dim(q: int, n: int, k: int) -> list[tuple[int, ...]]:
    out = []
    for pivots in itertools.combinations(range(n), k):
        free = [(r, c) for r, p in enumerate(pivots) for c in range(p + 1, n) if c not in pivots]
        for values in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for r, p in enumerate(pivots):
                rows[r][p] = 1
            for (r, c), v in zip(free, values):
                rows[r][c] = v
            out.append(tuple(pyk.from_digits(row, q) for row in rows))
    out.sort()
    return out


def enumerate_subspaces(q: int, n: int, dim: int | None = None,
                        cap: float | None = DEFAULT_CAP) -> Iterator[Subspace]:
    """Every subspace of GF(q)^n exactly once, ordered by ``(dim, key)``."""
    _validate_qn(q, n)
    check_cap(q, n, cap)
    dims = range(n + 1) if dim is None else ([dim] if 0 <= dim <= n else [])
    for k in dims:
        for rows in _rref_of_dim(q, n, k):
            yield Subspace(q, n, rows)


def enumerate_lines_in(A: Subspace) -> Iterator[Subspace]:
    """The ``(q**dim - 1)/(q - 1)`` one-dimensional subspaces of ``A``, in key order."""
    q, n = A.q, A.n
    for v in A.vectors():
        # normalized vectors (leading digit 1) are exactly the RREF line generators
        if v and next(x for x in pyk.to_digits(v, q, n) if x) == 1:
            yield Subspace(q, n, (v,))


# -- quotient by a line ------------------------------------------------------

class QuotientMap:
    """The projection ``E -> E/e`` realised concretely as ``GF(q)^(n-1)``.

    With ``g`` the RREF generator of ``e`` and ``p`` its pivot column, a
    vector ``v`` maps to ``v - v[p] * g`` with coordinate ``p`` dropped.
    """

    def __init__(self, e: Subspace):
        if e.dim != 1:
            raise DimensionMismatch(f"quotient needs a 1-dimensional subspace, got dim {e.dim}")
        self.e = e
        self.q, self.n = e.q, e.n
        self.g = e.basis[0]
        self.pivot = next(i for i, d in enumerate(self.g) if d)

    def push_vector(self, v: Sequence[int]) -> tuple[int, ...]:
        add, mul, neg, _ = field_tables(self.q)
        f = neg[v[self.pivot]]
        w = [add[x][mul[f][y]] for x, y in zip(v, self.g)]
        return tuple(w[: self.pivot] + w[self.pivot + 1:])

    def lift_vector(self, w: Sequence[int]) -> tuple[int, ...]:
        return tuple(w[: self.pivot]) + (0,) + tuple(w[self.pivot:])

    def push(self, B: Subspace) -> Subspace:
        self.e._check(B)
        if not self.e <= B:
            raise KernelNotContained(f"{self.e} is not contained in {B}")
        return span(self.q, self.n - 1, [self.push_vector(r) for r in B.basis])

    def pull(self, A: Subspace) -> Subspace:
        if (A.q, A.n) != (self.q, self.n - 1):
            raise AmbientMismatch(f"expected a subspace of GF({self.q})^{self.n - 1}")
        return span(self.q, self.n, [self.lift_vector(r) for r in A.basis] + [self.g])


def quotient(e: Subspace) -> QuotientMap:
    return QuotientMap(e)


def phi_complement(e: Subspace, A: Subspace) -> Subspace:
    """``{a in A : <a, g> = 0}`` for ``e = <g>``, required to have dimension ``dim A - 1``.

    Raises :class:`SelfOrthogonalDegenerate` when ``e`` lies in its own
    complement and the form vanishes on all of ``A``.
    """
    e._check(A)
    if e.dim != 1:
        raise DimensionMismatch("phi_complement needs a 1-dimensional e")
    if not e <= A:
        raise KernelNotContained(f"{e} is not contained in {A}")
    result = A & perp(e)
    if result.dim != A.dim - 1:
        raise SelfOrthogonalDegenerate(f"{e} is self-orthogonal and <., e> vanishes on {A}")
    return result


# -- the full lattice ---------------------------------------------------------

class Lattice:
    """All subspaces of GF(q)^n with index-based sum/intersection/perp tables.

    Index ``i`` refers to ``self.subspaces[i]``; the list is in ``(dim, key)``
    order, so index 0 is the zero space and index ``N - 1`` is ``E``.
    """

    def __init__(self, q: int, n: int, cap: float | None = DEFAULT_CAP):
        self.q, self.n = q, n
        self.subspaces: list[Subspace] = list(enumerate_subspaces(q, n, cap=cap))
        self.index: dict[tuple[int, ...], int] = {S.rows: i for i, S in enumerate(self.subspaces)}
        N = len(self.subspaces)
        self.dims = np.array([S.dim for S in self.subspaces], dtype=np.int64)
        self.dims.setflags(write=False)
        self._bases = np.zeros((N, max(n, 1)), dtype=np.int64)
        for i, S in enumerate(self.subspaces):
            self._bases[i, : S.dim] = S.rows
        keys = [pyk.encode_key(S.rows, q, n) for S in self.subspaces]
        order = sorted(range(N), key=keys.__getitem__)
        self._kernel = kernels.for_lattice(q, n)
        if self._kernel is pyk:
            self._sorted_keys = [keys[i] for i in order]
        else:
            self._sorted_keys = np.array([keys[i] for i in order], dtype=np.int64)
        self._order = np.array(order, dtype=np.int64)

    def __len__(self):
        return len(self.subspaces)

    def __getitem__(self, i: int) -> Subspace:
        return self.subspaces[i]

    def __iter__(self):
        return iter(self.subspaces)

    def __repr__(self):
        return f"Lattice(q={self.q}, n={self.n}, size={len(self)})"

    def index_of(self, S: Subspace) -> int:
        if (S.q, S.n) != (self.q, self.n):
            raise AmbientMismatch(f"{S!r} is not in GF({self.q})^{self.n}")
        return self.index[S.rows]

    @property
    def top(self) -> int:
        return len(self) - 1

    def _tables(self):
        return _array_tables(self.q)

    @cached_property
    def _join_meet(self):
        if len(self) > TABLE_CAP:
            raise CapExceeded(f"{len(self)} subspaces exceed the pair-table cap {TABLE_CAP}")
        join, meet = self._kernel.join_meet(self._bases, self.dims, self.q, self.n,
                                            *self._tables(), self._sorted_keys, self._order)
        join.setflags(write=False)
        meet.setflags(write=False)
        return join, meet

    @property
    def join(self) -> np.ndarray:
        """``join[i, j]`` is the index of ``S_i + S_j``."""
        return self._join_meet[0]

    @property
    def meet(self) -> np.ndarray:
        """``meet[i, j]`` is the index of ``S_i & S_j``."""
        return self._join_meet[1]

    @cached_property
    def le(self) -> np.ndarray:
        """Boolean matrix, ``le[i, j]`` iff ``S_i <= S_j``."""
        m = self.meet == np.arange(len(self))[:, None]
        m.setflags(write=False)
        return m

    @cached_property
    def perp(self) -> np.ndarray:
        p = np.array([self.index[perp(S).rows] for S in self.subspaces], dtype=np.int64)
        p.setflags(write=False)
        return p

    @cached_property
    def lines(self) -> np.ndarray:
        return np.flatnonzero(self.dims == 1)

    @cached_property
    def _below(self) -> list[np.ndarray]:
        return [np.flatnonzero(self.le[:, i]) for i in range(len(self))]

    def below(self, i: int) -> np.ndarray:
        """Indices of all subspaces of ``S_i`` (including ``S_i``), in lattice order."""
        return self._below[i]

    @cached_property
    def _above(self) -> list[np.ndarray]:
        return [np.flatnonzero(self.le[i, :]) for i in range(len(self))]

    def above(self, i: int) -> np.ndarray:
        return self._above[i]

    @cached_property
    def _lines_below(self) -> list[np.ndarray]:
        lines = self.lines
        return [lines[self.le[lines, i]] for i in range(len(self))]

    def lines_below(self, i: int) -> np.ndarray:
        return self._lines_below[i]

    def hyperplanes_below(self, i: int) -> np.ndarray:
        """Codimension-1 subspaces of ``S_i``."""
        b = self.below(i)
        return b[self.dims[b] == self.dims[i] - 1]

    def map_indices(self, T, idxs=None) -> np.ndarray:
        """Index of ``span(S_i * T)`` for each ``i`` (row vectors times ``T``)."""
        if idxs is None:
            idxs = np.arange(len(self), dtype=np.int64)
        T = np.ascontiguousarray(T, dtype=np.int64)
        return self._kernel.map_subspaces(self._bases, self.dims,
                                          np.ascontiguousarray(idxs, dtype=np.int64), T,
                                          self.q, self.n, *self._tables(),
                                          self._sorted_keys, self._order)

    def family_mask(self, family: Iterable[Subspace]) -> np.ndarray:
        mask = np.zeros(len(self), dtype=bool)
        for S in family:
            mask[self.index_of(S)] = True
        return mask

    def subspaces_at(self, idxs: Iterable[int]) -> list[Subspace]:
        return [self.subspaces[int(i)] for i in idxs]


_LATTICES: dict[tuple[int, int], Lattice] = {}


def lattice(q: int, n: int, cap: float | None = DEFAULT_CAP) -> Lattice:
    """Shared :class:`Lattice` for ``(q, n)``; built once per process."""
    check_cap(q, n, cap)
    key = (q, n)
    if key not in _LATTICES:
        _LATTICES[key] = Lattice(q, n, cap=None)
    return _LATTICES[key]
