"""Rank-metric codes over L = GF(p^m) with base field K = GF(p).

Codes are L-linear and given by a generator matrix whose entries are element
codes of L (see :mod:`qmatroids.gf`). A codeword is expanded column by column
over a K-basis of L; its rank support is the row space of that m x n matrix,
a subspace of K^n, and the q-matroid of the code has
``r(J) = dim_L C_J = rank(G Y^T)`` for a generator matrix ``Y`` of ``J``.
"""

from __future__ import annotations

import itertools
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    AmbientMismatch,
    BadParams,
    CapExceeded,
    DimensionMismatch,
    FieldMismatch,
    InternalConsistencyError,
    LengthMismatch,
    NotABasis,
    NotACodeword,
    PointsDependent,
)
from .gf import FieldElem, FieldSpec, GF, field_make, matrix_rank, nullspace, row_reduce
from .qmatroid import AxiomReport, QMatroid, Witness
from .space import DEFAULT_CAP, Subspace, lattice, perp, span

#: Default cap on the number of codewords enumerated by brute force.
CODEWORD_CAP = 1 << 20


def _code(F: FieldSpec, x) -> int:
    if isinstance(x, FieldElem):
        if x.spec != F:
            raise FieldMismatch(f"element of {x.spec} used in {F}")
        return x.value
    if isinstance(x, (list, tuple)):
        if len(x) > F.m or any(not 0 <= c < F.p for c in x):
            raise FieldMismatch(f"{x} is not a coefficient vector of {F}")
        return F.encode(x)
    x = int(x)
    if not 0 <= x < F.order:
        raise FieldMismatch(f"{x} is not an element code of {F}")
    return x


class RankMetricCode:
    """An L-linear code of length ``n`` with a full-rank ``k x n`` generator matrix.

    ``basis`` is the K-basis of L used for expansions (element codes); it
    defaults to the polynomial basis ``1, a, ..., a^(m-1)``.
    """

    def __init__(self, K: FieldSpec, L: FieldSpec, G: Sequence[Sequence], n: int | None = None,
                 basis: Sequence | None = None):
        if K.m != 1:
            raise FieldMismatch(f"the base field must be a prime field, got {K}")
        if L.p != K.p:
            raise FieldMismatch(f"{L} is not an extension of {K}")
        self.K, self.L = K, L
        self.m = L.m
        rows = [tuple(_code(L, x) for x in row) for row in G]
        if n is None:
            if not rows:
                raise LengthMismatch("length n is required for a code with no generators")
            n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise LengthMismatch(f"generator rows must all have length {n}")
        self.n = n
        self.G = tuple(rows)
        self.k = len(rows)
        red, pivots = row_reduce(L, rows, n)
        if len(pivots) != self.k:
            raise DimensionMismatch(f"generator matrix has rank {len(pivots)} < {self.k} rows")
        self.rref = tuple(red)
        self.pivots = tuple(pivots)
        if basis is None:
            basis = [L.p**i for i in range(self.m)]
        self.basis = tuple(_code(L, b) for b in basis)
        if len(self.basis) != self.m:
            raise NotABasis(f"need {self.m} basis elements, got {len(self.basis)}")
        if matrix_rank(K, [L.decode(b) for b in self.basis], self.m) != self.m:
            raise NotABasis("expansion basis is dependent over the base field")

    @property
    def q(self) -> int:
        return self.K.p

    def __repr__(self):
        return f"RankMetricCode(n={self.n}, k={self.k}, over {self.L})"

    def with_basis(self, basis: Sequence) -> "RankMetricCode":
        return RankMetricCode(self.K, self.L, self.G, self.n, basis)

    def same_code(self, other: "RankMetricCode") -> bool:
        """Row-space equality."""
        return (self.L, self.n, self.rref) == (other.L, other.n, other.rref)

    # expansion
    @cached_property
    def _coords(self) -> dict[int, tuple[int, ...]]:
        L, p = self.L, self.L.p
        table = {}
        for coeffs in itertools.product(range(p), repeat=self.m):
            x = 0
            for c, b in zip(coeffs, self.basis):
                if c:
                    x = L.add(x, L.mul(c, b))
            table[x] = coeffs
        return table

    def coordinates(self, x) -> tuple[int, ...]:
        return self._coords[_code(self.L, x)]

    def expand(self, c: Sequence) -> list[tuple[int, ...]]:
        """The m x n matrix over K whose column j holds the coordinates of ``c[j]``."""
        if len(c) != self.n:
            raise LengthMismatch(f"word has length {len(c)}, code has length {self.n}")
        cols = [self.coordinates(x) for x in c]
        return [tuple(col[i] for col in cols) for i in range(self.m)]

    def contains(self, c: Sequence) -> bool:
        if len(c) != self.n:
            return False
        c = [_code(self.L, x) for x in c]
        return matrix_rank(self.L, list(self.rref) + [c], self.n) == self.k

    def rank_support(self, c: Sequence) -> Subspace:
        if len(c) != self.n:
            raise LengthMismatch(f"word has length {len(c)}, code has length {self.n}")
        if not self.contains(c):
            raise NotACodeword(f"{list(c)} is not in the code")
        return span(self.q, self.n, self.expand(c))

    def rank_weight(self, c: Sequence) -> int:
        return self.rank_support(c).dim

    # enumeration
    def size(self) -> int:
        return self.L.order ** self.k

    def codewords(self, cap: int = CODEWORD_CAP) -> Iterator[tuple[int, ...]]:
        if self.size() > cap:
            raise CapExceeded(f"{self.size()} codewords exceed the brute-force cap {cap}")
        L = self.L
        for msg in itertools.product(range(L.order), repeat=self.k):
            word = [0] * self.n
            for a, row in zip(msg, self.G):
                if a:
                    word = [L.add(w, L.mul(a, g)) for w, g in zip(word, row)]
            yield tuple(word)

    def min_rank_distance(self, cap: int = CODEWORD_CAP) -> int:
        """Minimum rank weight of a nonzero codeword; ``n + 1`` for the zero code."""
        best = self.n + 1
        for c in self.codewords(cap):
            if any(c):
                w = span(self.q, self.n, self.expand(c)).dim
                if w < best:
                    best = w
                    if best == 1:
                        break
        return best

    def dual(self) -> "RankMetricCode":
        return dual_code(self)

    # subcodes
    def _Y(self, J: Subspace) -> list[tuple[int, ...]]:
        if (J.q, J.n) != (self.q, self.n):
            raise AmbientMismatch(f"{J!r} is not a subspace of GF({self.q})^{self.n}")
        return J.basis  # prime-field digits are also element codes of L

    def _GYt(self, J: Subspace) -> list[list[int]]:
        L, Y = self.L, self._Y(J)
        out = []
        for g in self.G:
            row = []
            for y in Y:
                s = 0
                for a, b in zip(g, y):
                    if b:
                        s = L.add(s, L.mul(a, b))
                row.append(s)
            out.append(row)
        return out

    def subcode(self, J: Subspace) -> "RankMetricCode":
        """``C(J) = {c in C : c . y = 0 for all y in J}``."""
        M = self._GYt(J)
        t = J.dim
        if t == 0:
            return RankMetricCode(self.K, self.L, self.G, self.n, self.basis)
        # x G is in C(J) iff x (G Y^T) = 0
        Mt = [[M[i][j] for i in range(self.k)] for j in range(t)]
        kernel = nullspace(self.L, Mt, self.k)
        L = self.L
        gens = []
        for x in kernel:
            word = [0] * self.n
            for a, row in zip(x, self.G):
                if a:
                    word = [L.add(w, L.mul(a, g)) for w, g in zip(word, row)]
            gens.append(word)
        return RankMetricCode(self.K, self.L, gens, self.n, self.basis)

    def l_of(self, J: Subspace) -> int:
        return self.subcode(J).k

    def r_of(self, J: Subspace) -> int:
        """``dim C_J``, the rank of ``G Y^T`` over L."""
        if J.dim == 0:
            self._Y(J)
            return 0
        return matrix_rank(self.L, self._GYt(J), J.dim)

    def subcode_by_filter(self, J: Subspace, cap: int = CODEWORD_CAP) -> set[tuple[int, ...]]:
        """Slow oracle for :meth:`subcode`: codewords whose rank support lies in ``J^perp``."""
        Jp = perp(J)
        return {c for c in self.codewords(cap)
                if span(self.q, self.n, self.expand(c)) <= Jp}

    # serialization
    def to_json(self) -> dict:
        return {"K": self.K.to_json(), "L": self.L.to_json(), "n": self.n,
                "G": [[list(self.L.decode(x)) for x in row] for row in self.G]}

    @classmethod
    def from_json(cls, data: dict) -> "RankMetricCode":
        K = FieldSpec.from_json(data["K"])
        L = FieldSpec.from_json(data["L"])
        G = [[tuple(x) if isinstance(x, list) else x for x in row] for row in data["G"]]
        return cls(K, L, G, int(data["n"]))


# -- module-level operations ------------------------------------------------------

def expand(C: RankMetricCode, c: Sequence) -> list[tuple[int, ...]]:
    return C.expand(c)


def rank_support(C: RankMetricCode, c: Sequence) -> Subspace:
    return C.rank_support(c)


def rank_weight(C: RankMetricCode, c: Sequence) -> int:
    return C.rank_weight(c)


def min_rank_distance(C: RankMetricCode, cap: int = CODEWORD_CAP) -> int:
    return C.min_rank_distance(cap)


def dual_code(C: RankMetricCode) -> RankMetricCode:
    """``C^perp``: the null space of ``G`` under the standard bilinear form on L^n."""
    if C.k == 0:
        gens = [[int(i == j) for j in range(C.n)] for i in range(C.n)]
    else:
        gens = nullspace(C.L, C.G, C.n)
    return RankMetricCode(C.K, C.L, gens, C.n, C.basis)


def code_C_of_J(C: RankMetricCode, J: Subspace) -> RankMetricCode:
    return C.subcode(J)


def l_of(C: RankMetricCode, J: Subspace) -> int:
    return C.l_of(J)


def r_of(C: RankMetricCode, J: Subspace) -> int:
    return C.r_of(J)


def matroid_of_code(C: RankMetricCode, cap: float | None = DEFAULT_CAP) -> QMatroid:
    """The q-matroid on K^n with ``r(J) = dim C_J``."""
    Lat = lattice(C.q, C.n, cap=cap)
    return QMatroid(C.q, C.n, [C.r_of(J) for J in Lat], cap=cap)


def gabidulin(q: int, m: int, n: int, k: int, points: Sequence | None = None,
              L: FieldSpec | None = None) -> RankMetricCode:
    """Gabidulin code with ``G[i][j] = points[j] ** (q ** i)``, ``i < k``.

    ``points`` default to ``1, a, ..., a^(n-1)``; they must be independent over GF(q).
    """
    K = GF(q)
    if K.m != 1:
        raise BadParams(f"base field size {q} must be prime")
    if not m >= n >= k >= 1:
        raise BadParams(f"need m >= n >= k >= 1, got m={m}, n={n}, k={k}")
    L = L or field_make(q, m)
    if L.p != q or L.m != m:
        raise FieldMismatch(f"{L} is not GF({q}^{m})")
    pts = [_code(L, x) for x in points] if points is not None else [q**j for j in range(n)]
    if len(pts) != n:
        raise BadParams(f"need {n} evaluation points, got {len(pts)}")
    if matrix_rank(K, [L.decode(x) for x in pts], m) != n:
        raise PointsDependent("evaluation points are dependent over the base field")
    G = [[L.frobenius(x, i) for x in pts] for i in range(k)]
    return RankMetricCode(K, L, G, n)


def check_pJ_and_lJ5(C: RankMetricCode, cap: int = CODEWORD_CAP,
                     lattice_cap: float | None = DEFAULT_CAP) -> dict[str, AxiomReport]:
    """Check, for every J of every dimension t, against brute-force distances:

    ``pJ``: t < d(C^perp) iff r(J) = t for all J of dimension t.
    ``lJ5``: l(J) = k - t when t < d(C^perp), and l(J) = 0 when t > n - d(C).
    """
    d = C.min_rank_distance(cap)
    dd = dual_code(C).min_rank_distance(cap)
    Lat = lattice(C.q, C.n, cap=lattice_cap)
    rs = np.array([C.r_of(J) for J in Lat])
    ls = np.array([C.l_of(J) for J in Lat])
    if not np.array_equal(rs + ls, np.full(len(Lat), C.k)):
        bad = Lat[int(np.flatnonzero(rs + ls != C.k)[0])]
        raise InternalConsistencyError(f"l(J) + r(J) != k at J = {bad}")
    dims = Lat.dims
    pj, pj_count = [], 0
    for t in range(C.n + 1):
        full = bool((rs[dims == t] == t).all())
        if (t < dd) != full:
            pj_count += 1
            if not pj:
                J = Lat[int(np.flatnonzero((dims == t) & (rs != t))[0])] if not full else Lat[
                    int(np.flatnonzero(dims == t)[0])]
                pj.append(Witness((J,), {"t": t, "d_dual": dd}))
    l5, l5_count = [], 0
    for i, J in enumerate(Lat):
        t = int(dims[i])
        bad = (t < dd and ls[i] != C.k - t) or (t > C.n - d and ls[i] != 0)
        if bad:
            l5_count += 1
            if not l5:
                l5.append(Witness((J,), {"t": t, "l": int(ls[i]), "d": d, "d_dual": dd}))
    return {
        "pJ": AxiomReport("pJ", pj_count == 0, tuple(pj), pj_count, certificate={"d": d, "d_dual": dd}),
        "lJ5": AxiomReport("lJ5", l5_count == 0, tuple(l5), l5_count, certificate={"d": d, "d_dual": dd}),
    }
