"""The q-matroid type, its derived families, and the axiom-suite checkers.

A :class:`QMatroid` is a complete rank table indexed like the shared
:class:`~qmatroids.space.Lattice` of its ground space, so every family
(independents, bases, circuits, flats) is a boolean mask over lattice indices
and every exhaustive check is a handful of numpy operations on the lattice's
sum/intersection tables.

The family checkers (:func:`check_independence_axioms`,
:func:`check_basis_axioms`, :func:`check_circuit_axioms`) take raw families
so that non-matroidal inputs can be examined and reported on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

from . import kernels
from .errors import AmbientMismatch, CapExceeded, DimensionMismatch, InternalConsistencyError
from .space import DEFAULT_CAP, Lattice, Subspace, lattice, span

#: Largest |GL(n, q)| that :func:`isomorphic` will search.
GL_CAP = 1 << 15


# -- reports ------------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    """A tuple of subspaces violating an axiom, plus the numbers that show it."""

    spaces: tuple[Subspace, ...]
    values: dict = field(default_factory=dict)

    def __iter__(self):
        return iter(self.spaces)

    def __len__(self):
        return len(self.spaces)

    def __getitem__(self, i):
        return self.spaces[i]

    def __str__(self):
        s = ", ".join(map(str, self.spaces)) if self.spaces else "empty family"
        if self.values:
            s += " [" + ", ".join(f"{k}={v}" for k, v in self.values.items()) + "]"
        return s

    def to_json(self) -> dict:
        return {"spaces": [[list(r) for r in S.basis] for S in self.spaces],
                "values": dict(self.values)}


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of one exhaustive axiom check.

    ``witnesses`` holds the first violation in ``(dim, key)`` order, or all of
    them when the check was run with ``limit=None``; ``count`` is always the
    total number of violations. Checks that establish something by example
    (an isomorphism, say) put it in ``certificate``.
    """

    axiom: str
    holds: bool
    witnesses: tuple[Witness, ...] = ()
    count: int = 0
    certificate: object = None

    def __bool__(self):
        return self.holds

    def __str__(self):
        status = "PASS" if self.holds else "FAIL"
        s = f"({self.axiom}) {status}"
        if not self.holds:
            s += f": {self.count} violation(s); first: {self.witnesses[0]}" if self.witnesses \
                else f": {self.count} violation(s)"
        return s

    def to_json(self) -> dict:
        out = {"axiom": self.axiom, "holds": self.holds, "count": self.count,
               "witnesses": [w.to_json() for w in self.witnesses]}
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


class _Collector:
    def __init__(self, axiom: str, limit: int | None):
        self.axiom, self.limit = axiom, limit
        self.count = 0
        self.witnesses: list[Witness] = []

    def add(self, spaces: Sequence[Subspace], n: int = 1, **values):
        if self.limit is None or len(self.witnesses) < self.limit:
            self.witnesses.append(Witness(tuple(spaces), values))
        self.count += n

    @property
    def full(self) -> bool:
        return self.limit is not None and len(self.witnesses) >= self.limit

    def report(self) -> AxiomReport:
        return AxiomReport(self.axiom, self.count == 0, tuple(self.witnesses), self.count)


def all_hold(reports: dict[str, AxiomReport]) -> bool:
    return all(r.holds for r in reports.values())


# -- the q-matroid type ---------------------------------------------------------

class QMatroid:
    """A rank function on every subspace of GF(q)^n, stored as a table.

    ``ranks[i]`` is the rank of ``lattice(q, n)[i]``. The constructor only
    checks shape and integrality; use :func:`check_rank_axioms` to verify
    (r1)-(r3), or the builders in :mod:`qmatroids.constructions`.
    """

    def __init__(self, q: int, n: int, ranks, cap: float | None = DEFAULT_CAP):
        self.q, self.n = q, n
        self.lattice: Lattice = lattice(q, n, cap=cap)
        arr = np.array(ranks, dtype=np.int64).reshape(-1)
        if arr.shape[0] != len(self.lattice):
            raise DimensionMismatch(
                f"rank table has {arr.shape[0]} entries, GF({q})^{n} has {len(self.lattice)} subspaces")
        arr.setflags(write=False)
        self.ranks = arr

    @classmethod
    def from_function(cls, q: int, n: int, fn: Callable[[Subspace], int],
                      cap: float | None = DEFAULT_CAP) -> "QMatroid":
        L = lattice(q, n, cap=cap)
        return cls(q, n, [fn(S) for S in L], cap=cap)

    # basic access
    def _idx(self, A: Subspace) -> int:
        if not isinstance(A, Subspace):
            raise TypeError(f"expected a Subspace, got {type(A).__name__}")
        if (A.q, A.n) != (self.q, self.n):
            raise AmbientMismatch(f"{A!r} is not a subspace of GF({self.q})^{self.n}")
        return self.lattice.index[A.rows]

    def rank_of(self, A: Subspace) -> int:
        return int(self.ranks[self._idx(A)])

    __call__ = rank_of
    r = rank_of

    @property
    def rank(self) -> int:
        """``r(M) = r(E)``."""
        return int(self.ranks[-1])

    @property
    def dims(self) -> np.ndarray:
        return self.lattice.dims

    def __eq__(self, other):
        if not isinstance(other, QMatroid):
            return NotImplemented
        return (self.q, self.n) == (other.q, other.n) and np.array_equal(self.ranks, other.ranks)

    def __hash__(self):
        return hash((self.q, self.n, self.ranks.tobytes()))

    def __repr__(self):
        return f"QMatroid(q={self.q}, n={self.n}, rank={self.rank})"

    # masks over lattice indices
    @cached_property
    def independent_mask(self) -> np.ndarray:
        return self.ranks == self.dims

    @cached_property
    def basis_mask(self) -> np.ndarray:
        return self.independent_mask & (self.ranks == self.rank)

    @cached_property
    def loop_mask(self) -> np.ndarray:
        return (self.dims == 1) & (self.ranks == 0)

    @cached_property
    def isthmus_mask(self) -> np.ndarray:
        L = self.lattice
        perp_of_bases = L.perp[np.flatnonzero(self.basis_mask)]
        # a line e is an isthmus iff e <= B^perp holds for no basis B
        inside = L.le[:, perp_of_bases].any(axis=1)
        return (self.dims == 1) & ~inside

    @cached_property
    def circuit_mask(self) -> np.ndarray:
        L, ind = self.lattice, self.independent_mask
        out = np.zeros(len(L), dtype=bool)
        for i in np.flatnonzero(~ind):
            out[i] = ind[L.hyperplanes_below(i)].all()
        return out

    @cached_property
    def _null_lines(self) -> np.ndarray:
        """``Z[A, x]`` iff ``r(A + x) == r(A)``, for lattice index A and line number x."""
        L = self.lattice
        return self.ranks[L.join[:, L.lines]] == self.ranks[:, None]

    @cached_property
    def closure_indices(self) -> np.ndarray:
        L = self.lattice
        cur = np.arange(len(L))
        Z = self._null_lines
        for x, line in enumerate(L.lines):
            cur = np.where(Z[:, x], L.join[cur, line], cur)
        cur.setflags(write=False)
        return cur

    @cached_property
    def flat_mask(self) -> np.ndarray:
        return self.closure_indices == np.arange(len(self.lattice))

    def _spaces(self, mask) -> list[Subspace]:
        return self.lattice.subspaces_at(np.flatnonzero(mask))

    # families
    def independents(self) -> list[Subspace]:
        return self._spaces(self.independent_mask)

    def bases(self) -> list[Subspace]:
        return self._spaces(self.basis_mask)

    def loops(self) -> list[Subspace]:
        return self._spaces(self.loop_mask)

    def isthmuses(self) -> list[Subspace]:
        return self._spaces(self.isthmus_mask)

    def circuits(self) -> list[Subspace]:
        return self._spaces(self.circuit_mask)

    def flats(self) -> list[Subspace]:
        return self._spaces(self.flat_mask)

    def closure(self, A: Subspace) -> Subspace:
        return self.lattice[int(self.closure_indices[self._idx(A)])]

    def rank_polynomial(self) -> "RankPolynomial":
        return rank_polynomial(self)

    # serialization
    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n,
                "ranks": [{"rref": [list(r) for r in S.basis], "r": int(v)}
                          for S, v in zip(self.lattice, self.ranks)]}

    @classmethod
    def from_json(cls, data: dict, cap: float | None = DEFAULT_CAP) -> "QMatroid":
        q, n = int(data["q"]), int(data["n"])
        L = lattice(q, n, cap=cap)
        table = np.full(len(L), -1, dtype=np.int64)
        for entry in data["ranks"]:
            S = span(q, n, entry["rref"])
            table[L.index_of(S)] = int(entry["r"])
        if (table < 0).any():
            missing = L[int(np.flatnonzero(table < 0)[0])]
            raise DimensionMismatch(f"rank table is incomplete, e.g. no entry for {missing}")
        return cls(q, n, table, cap=cap)


# -- module-level accessors -------------------------------------------------------

def rank_of(M: QMatroid, A: Subspace) -> int:
    return M.rank_of(A)


def independents(M: QMatroid) -> list[Subspace]:
    return M.independents()


def bases(M: QMatroid) -> list[Subspace]:
    return M.bases()


def loops(M: QMatroid) -> list[Subspace]:
    return M.loops()


def isthmuses(M: QMatroid) -> list[Subspace]:
    return M.isthmuses()


def circuits(M: QMatroid) -> list[Subspace]:
    return M.circuits()


def closure(M: QMatroid, A: Subspace) -> Subspace:
    return M.closure(A)


def flats(M: QMatroid) -> list[Subspace]:
    return M.flats()


def equal(M1: QMatroid, M2: QMatroid) -> bool:
    if (M1.q, M1.n) != (M2.q, M2.n):
        raise AmbientMismatch(f"GF({M1.q})^{M1.n} vs GF({M2.q})^{M2.n}")
    return M1 == M2


# -- rank axioms ----------------------------------------------------------------

def check_rank_axioms(M: QMatroid, limit: int | None = 1) -> dict[str, AxiomReport]:
    """Exhaustive (r1) on every space, (r2) on nested pairs, (r3) on all pairs."""
    L, r, d = M.lattice, M.ranks, M.dims
    S = L.subspaces

    c1 = _Collector("r1", limit)
    for i in np.flatnonzero((r < 0) | (r > d)):
        c1.add((S[i],), r=int(r[i]), dim=int(d[i]))

    c2 = _Collector("r2", limit)
    c3 = _Collector("r3", limit)
    kern = kernels.for_lattice(M.q, M.n)
    rank64 = np.ascontiguousarray(r, dtype=np.int64)
    if limit == 1:
        count, i, j = kern.monotone_scan(rank64, L.meet)
        if count:
            c2.add((S[i], S[j]), n=int(count), r_A=int(r[i]), r_B=int(r[j]))
        count, i, j = kern.submodular_scan(rank64, L.join, L.meet)
        if count:
            c3.add((S[i], S[j]), n=int(count), **_r3_values(M, i, j))
    else:
        nested = L.le & ~np.eye(len(L), dtype=bool) & (r[:, None] > r[None, :])
        for i, j in zip(*np.nonzero(nested)):
            c2.add((S[i], S[j]), r_A=int(r[i]), r_B=int(r[j]))
        bad = np.triu(r[L.join] + r[L.meet] > r[:, None] + r[None, :])
        for i, j in zip(*np.nonzero(bad)):
            c3.add((S[i], S[j]), **_r3_values(M, i, j))
    return {"r1": c1.report(), "r2": c2.report(), "r3": c3.report()}


def _r3_values(M: QMatroid, i: int, j: int) -> dict:
    L, r = M.lattice, M.ranks
    return {"lhs": int(r[L.join[i, j]] + r[L.meet[i, j]]), "rhs": int(r[i] + r[j])}


# -- family helpers -----------------------------------------------------------------

def _family_lattice(family: Iterable[Subspace], q: int, n: int, cap) -> tuple[Lattice, np.ndarray]:
    L = lattice(q, n, cap=cap)
    mask = np.zeros(len(L), dtype=bool)
    for S in family:
        if not isinstance(S, Subspace):
            raise TypeError(f"family members must be Subspace, got {type(S).__name__}")
        if (S.q, S.n) != (q, n):
            raise AmbientMismatch(f"{S!r} does not live in GF({q})^{n}")
        mask[L.index[S.rows]] = True
    return L, mask


def _maximal_within(L: Lattice, mask: np.ndarray) -> list[np.ndarray]:
    """For each lattice element A, the inclusion-maximal members of ``mask`` inside A."""
    out = []
    le = L.le
    for a in range(len(L)):
        inside = np.flatnonzero(mask & le[:, a])
        if len(inside) == 0:
            out.append(inside)
            continue
        sub = le[np.ix_(inside, inside)]
        np.fill_diagonal(sub, False)
        out.append(inside[~sub.any(axis=1)])
    return out


def _exchange_check(L: Lattice, maxima: list[np.ndarray], axiom: str, limit) -> AxiomReport:
    """Shared core of (I4) and (B4).

    For every ordered pair of spaces (A, B) and maxima I of A, J of B, some
    maximum of A + B must lie in I + J.
    """
    N = len(L)
    le, join = L.le, L.join
    S = L.subspaces
    # W[s, t]: some maximum of s lies inside t
    W = np.zeros((N, N), dtype=bool)
    for s in range(N):
        if len(maxima[s]):
            W[s] = le[maxima[s]].any(axis=0)
    col = _Collector(axiom, limit)
    for a in range(N):
        Ia = maxima[a]
        if not len(Ia):
            continue
        for b in range(N):
            Jb = maxima[b]
            if not len(Jb):
                continue
            s = join[a, b]
            IJ = join[np.ix_(Ia, Jb)]
            ok = W[s][IJ]
            if ok.all():
                continue
            bad = np.argwhere(~ok)
            if col.full:
                col.count += len(bad)
                continue
            for x, y in bad:
                i, j = Ia[x], Jb[y]
                col.add((S[a], S[b], S[i], S[j], S[IJ[x, y]]))
    return col.report()


# -- independence axioms ---------------------------------------------------------------

def check_independence_axioms(family: Iterable[Subspace], q: int, n: int, limit: int | None = 1,
                              cap: float | None = DEFAULT_CAP) -> dict[str, AxiomReport]:
    """(I1)-(I4) on a raw family, plus the primed forms (I1') and (I3').

    Witness layouts: (I2) ``(I, A)`` with ``A <= I`` missing from the family;
    (I3) ``(I, J)``; (I4) ``(A, B, I, J, I+J)``.
    """
    L, mask = _family_lattice(family, q, n, cap)
    S, dims, le, join = L.subspaces, L.dims, L.le, L.join
    members = np.flatnonzero(mask)

    c1 = _Collector("I1", limit)
    if not len(members):
        c1.add(())

    c2 = _Collector("I2", limit)
    for i in members:
        for a in L.below(i):
            if not mask[a]:
                c2.add((S[i], S[a]))

    def augmentable(i: int, j: int) -> bool:
        xs = L.lines_below(j)
        xs = xs[~le[xs, i]]
        return bool(mask[join[i, xs]].any())

    c3 = _Collector("I3", limit)
    c3p = _Collector("I3'", limit)
    for i in members:
        for j in members:
            if dims[i] < dims[j] and not augmentable(i, j):
                c3.add((S[i], S[j]))
                if dims[j] == dims[i] + 1:
                    c3p.add((S[i], S[j]))

    c1p = _Collector("I1'", limit)
    if not mask[0]:
        c1p.add((S[0],))

    c4 = _exchange_check(L, _maximal_within(L, mask), "I4", limit)

    reports = {r.axiom: r for r in (c1.report(), c2.report(), c3.report(), c4)}
    primed = {r.axiom: r for r in (c1p.report(), c3p.report())}
    plain_ok = reports["I1"].holds and reports["I2"].holds and reports["I3"].holds
    primed_ok = primed["I1'"].holds and reports["I2"].holds and primed["I3'"].holds
    if plain_ok != primed_ok:
        raise InternalConsistencyError(
            f"(I1)(I2)(I3) {'hold' if plain_ok else 'fail'} but (I1')(I2)(I3') "
            f"{'hold' if primed_ok else 'fail'}")
    reports.update(primed)
    return reports


# -- basis axioms ---------------------------------------------------------------------

def check_basis_axioms(family: Iterable[Subspace], q: int, n: int, limit: int | None = 1,
                       cap: float | None = DEFAULT_CAP) -> dict[str, AxiomReport]:
    """(B1), (B2), (B2'), (B3), (B4), and the consequence that (B3)'s ``y`` avoids ``B1``.

    Witness layouts: (B2) ``(B1, B2)`` with ``B1 < B2``; (B3) ``(B1, B2, A)``;
    (B3y) ``(B1, B2, A, y)``; (B4) ``(A, B, I, J, I+J)``.
    """
    L, mask = _family_lattice(family, q, n, cap)
    S, dims, le, join, meet = L.subspaces, L.dims, L.le, L.join, L.meet
    members = np.flatnonzero(mask)

    c1 = _Collector("B1", limit)
    if not len(members):
        c1.add(())

    c2 = _Collector("B2", limit)
    c2p = _Collector("B2'", limit)
    for i in members:
        for j in members:
            if i != j and le[i, j]:
                c2.add((S[i], S[j]))
            if i < j and dims[i] != dims[j]:
                c2p.add((S[i], S[j]), dims=(int(dims[i]), int(dims[j])))

    c3 = _Collector("B3", limit)
    c3y = _Collector("B3y", limit)
    for b1 in members:
        hyper = L.hyperplanes_below(b1)
        for b2 in members:
            m = meet[b1, b2]
            ys = L.lines_below(b2)
            for a in hyper[le[m, hyper]]:
                found = ys[mask[join[a, ys]]]
                if not len(found):
                    c3.add((S[b1], S[b2], S[a]))
                for y in found[le[found, b1]]:
                    c3y.add((S[b1], S[b2], S[a], S[y]))

    # (B4): maximal intersections of bases with each space
    N = len(L)
    maxima = []
    for a in range(N):
        cand = np.unique(meet[members, a]) if len(members) else np.array([], dtype=np.int64)
        if len(cand):
            sub = le[np.ix_(cand, cand)].copy()
            np.fill_diagonal(sub, False)
            cand = cand[~sub.any(axis=1)]
        maxima.append(cand)
    c4 = _exchange_check(L, maxima, "B4", limit)

    return {r.axiom: r for r in (c1.report(), c2.report(), c2p.report(), c3.report(),
                                 c3y.report(), c4)}


# -- circuit axioms ---------------------------------------------------------------------

def check_circuit_axioms(family: Iterable[Subspace], q: int, n: int, limit: int | None = 1,
                         cap: float | None = DEFAULT_CAP) -> dict[str, AxiomReport]:
    """(C1)-(C3). Witness layouts: (C2) ``(C1, C2)`` with ``C1 < C2``; (C3) ``(C1, C2, x)``."""
    L, mask = _family_lattice(family, q, n, cap)
    S, le, join, meet = L.subspaces, L.le, L.join, L.meet
    members = np.flatnonzero(mask)

    c1 = _Collector("C1", limit)
    if mask[0]:
        c1.add((S[0],))

    c2 = _Collector("C2", limit)
    c3 = _Collector("C3", limit)
    for i in members:
        for j in members:
            if i == j:
                continue
            if le[i, j]:
                c2.add((S[i], S[j]))
            s = join[i, j]
            cands = members[le[members, s]]
            for x in L.lines_below(meet[i, j]):
                if not (~le[x, cands]).any():
                    c3.add((S[i], S[j], S[x]))
    return {r.axiom: r for r in (c1.report(), c2.report(), c3.report())}


# -- closure axioms ---------------------------------------------------------------------------

def check_closure_axioms(M: QMatroid | None = None, closure=None, q: int | None = None,
                         n: int | None = None, limit: int | None = 1,
                         cap: float | None = DEFAULT_CAP) -> dict[str, AxiomReport]:
    """(cl1)-(cl4) for the closure of ``M``, or for an arbitrary closure map.

    ``closure`` may be a callable ``Subspace -> Subspace`` or an array of
    lattice indices; ``q`` and ``n`` are then required when ``M`` is omitted.
    """
    if M is not None:
        q, n = M.q, M.n
    if q is None or n is None:
        raise DimensionMismatch("check_closure_axioms needs M or (q, n)")
    L = lattice(q, n, cap=cap)
    if closure is None:
        if M is None:
            raise DimensionMismatch("no closure map given")
        cl = np.asarray(M.closure_indices)
    elif callable(closure):
        cl = np.array([L.index_of(closure(A)) for A in L], dtype=np.int64)
    else:
        cl = np.asarray(closure, dtype=np.int64)
    S, le, join = L.subspaces, L.le, L.join
    N = len(L)

    c1 = _Collector("cl1", limit)
    for a in np.flatnonzero(~le[np.arange(N), cl]):
        c1.add((S[a], S[cl[a]]))

    c2 = _Collector("cl2", limit)
    nested = le & ~le[cl[:, None], cl[None, :]]
    for a, b in zip(*np.nonzero(nested)):
        c2.add((S[a], S[b]))

    c3 = _Collector("cl3", limit)
    for a in np.flatnonzero(cl[cl] != cl):
        c3.add((S[a], S[cl[a]]))

    c4 = _Collector("cl4", limit)
    lines = L.lines
    for a in range(N):
        ax = join[a, lines]          # A + x for each line x
        cl_ax = cl[ax]
        y_in_clax = le[lines[None, :], cl_ax[:, None]]       # [x, y]
        y_not_in_cla = ~le[lines, cl[a]]                    # [y]
        cl_ay = cl[join[a, lines]]
        x_in_clay = le[lines[:, None], cl_ay[None, :]]      # [x, y]
        bad = y_in_clax & y_not_in_cla[None, :] & ~x_in_clay
        for x, y in zip(*np.nonzero(bad)):
            c4.add((S[a], S[lines[x]], S[lines[y]]))
    return {r.axiom: r for r in (c1.report(), c2.report(), c3.report(), c4.report())}


# -- lemmas --------------------------------------------------------------------------------

def lemma_suite(M: QMatroid, limit: int | None = 1) -> dict[str, AxiomReport]:
    """Consequences of (r1)-(r3) re-verified on the table.

    ``unit``: r(A+x) <= r(A)+1. ``loopsum``: the sum of two loops has rank 0.
    ``p-rank1``: if r(A+x) = r(A) for every line x of B then r(A+B) = r(A).
    ``p-rank2``: r(A+x) = r(A+y) = r(A) implies r(A+x+y) = r(A).
    """
    L, r = M.lattice, M.ranks
    S, join, lines = L.subspaces, L.join, L.lines
    Z = M._null_lines

    cu = _Collector("unit", limit)
    jump = r[join[:, lines]] > r[:, None] + 1
    for a, x in zip(*np.nonzero(jump)):
        cu.add((S[a], S[lines[x]]), r_A=int(r[a]), r_Ax=int(r[join[a, lines[x]]]))

    cl = _Collector("loopsum", limit)
    lp = np.flatnonzero(M.loop_mask)
    for x, y in itertools.combinations(lp, 2):
        if r[join[x, y]] != 0:
            cl.add((S[x], S[y]), r_sum=int(r[join[x, y]]))

    c1 = _Collector("p-rank1", limit)
    line_in = L.le[lines, :].T.astype(np.int64)          # [B, x]
    hyp = ((~Z).astype(np.int64) @ line_in.T) == 0      # [A, B]: every line of B is null for A
    bad = hyp & (r[join] != r[:, None])
    for a, b in zip(*np.nonzero(bad)):
        c1.add((S[a], S[b]), r_A=int(r[a]), r_AB=int(r[join[a, b]]))

    c2 = _Collector("p-rank2", limit)
    for x, y in itertools.combinations(range(len(lines)), 2):
        both = Z[:, x] & Z[:, y]
        axy = join[join[:, lines[x]], lines[y]]
        for a in np.flatnonzero(both & (r[axy] != r)):
            c2.add((S[a], S[lines[x]], S[lines[y]]), r_A=int(r[a]), r_Axy=int(r[axy[a]]))

    return {rep.axiom: rep for rep in (cu.report(), cl.report(), c1.report(), c2.report())}


def run_suites(M: QMatroid, suites: Iterable[str] = ("rank", "indep", "bases", "circuits",
                                                     "closure", "lemmas"),
               limit: int | None = 1) -> dict[str, dict[str, AxiomReport]]:
    """Run named suites against ``M`` and its derived families."""
    out: dict[str, dict[str, AxiomReport]] = {}
    for s in suites:
        if s == "rank":
            out[s] = check_rank_axioms(M, limit)
        elif s == "indep":
            out[s] = check_independence_axioms(M.independents(), M.q, M.n, limit)
        elif s == "bases":
            out[s] = check_basis_axioms(M.bases(), M.q, M.n, limit)
        elif s == "circuits":
            out[s] = check_circuit_axioms(M.circuits(), M.q, M.n, limit)
        elif s == "closure":
            out[s] = check_closure_axioms(M, limit=limit)
        elif s == "lemmas":
            out[s] = lemma_suite(M, limit)
        elif s == "duality":
            from .constructions import check_duality_suite
            out[s] = check_duality_suite(M)
        else:
            raise ValueError(f"unknown suite {s!r}")
    return out


# -- rank polynomial ----------------------------------------------------------------------------

@dataclass(frozen=True)
class RankPolynomial:
    """``sum c[i, j] X^i Y^j`` with integer coefficients."""

    coeffs: dict

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.coeffs.get(tuple(ij), 0)

    def evaluate(self, X, Y):
        return sum(c * X**i * Y**j for (i, j), c in self.coeffs.items())

    def total(self) -> int:
        return sum(self.coeffs.values())

    def terms(self) -> list[tuple[int, int, int]]:
        return [(i, j, c) for (i, j), c in sorted(self.coeffs.items())]

    def __str__(self):
        parts = []
        for i, j, c in sorted(self.terms(), key=lambda t: (-t[0] - t[1], -t[0])):
            mono = "*".join(s for s in (_pow("X", i), _pow("Y", j)) if s)
            parts.append(f"{c}{'*' + mono if mono else ''}" if c != 1 or not mono else mono)
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> list[dict]:
        return [{"i": i, "j": j, "c": c} for i, j, c in self.terms()]


def _pow(v: str, e: int) -> str:
    return "" if e == 0 else v if e == 1 else f"{v}^{e}"


def rank_polynomial(M: QMatroid) -> RankPolynomial:
    i = M.rank - M.ranks
    j = M.dims - M.ranks
    coeffs: dict[tuple[int, int], int] = {}
    for a, b in zip(i.tolist(), j.tolist()):
        coeffs[(a, b)] = coeffs.get((a, b), 0) + 1
    return RankPolynomial(coeffs)


# -- isomorphism --------------------------------------------------------------------------------

def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def _invariants(M: QMatroid):
    return sorted(zip(M.dims.tolist(), M.ranks.tolist()))


def isomorphic(M1: QMatroid, M2: QMatroid, cap: int = GL_CAP) -> np.ndarray | None:
    """An invertible ``T`` with ``r2(A T) = r1(A)`` for every A (row vectors), or None.

    Backtracks over the images of the standard basis vectors; at depth ``j``
    only the subspaces of ``<e_1..e_j>`` that are not inside ``<e_1..e_(j-1)>``
    are newly determined, so they are checked as soon as row ``j`` is fixed.
    """
    if (M1.q, M1.n) != (M2.q, M2.n):
        raise AmbientMismatch(f"GF({M1.q})^{M1.n} vs GF({M2.q})^{M2.n}")
    q, n = M1.q, M1.n
    if gl_order(n, q) > cap:
        raise CapExceeded(f"|GL({n},{q})| = {gl_order(n, q)} exceeds the search cap {cap}")
    if _invariants(M1) != _invariants(M2):
        return None
    L = M1.lattice
    r1, r2 = M1.ranks, M2.ranks
    # level[j]: subspaces inside <e_1..e_j> but not <e_1..e_(j-1)>
    level: list[list[int]] = [[] for _ in range(n + 1)]
    for i, S in enumerate(L):
        depth = 0
        for row in S.rows:
            digits = _digits(row, q, n)
            depth = max(depth, max((c + 1 for c, d in enumerate(digits) if d), default=0))
        level[depth].append(i)
    levels = [np.array(v, dtype=np.int64) for v in level]
    if r1[0] != r2[0]:
        return None
    vectors = [_digits(c, q, n) for c in range(1, q**n)]
    T = np.zeros((n, n), dtype=np.int64)
    from .space import from_codes

    def rec(j: int, images: list[int]) -> bool:
        if j == n:
            return True
        spanned = set(from_codes(q, n, images).vectors()) if images else {0}
        for code, v in enumerate(vectors, start=1):
            if code in spanned:
                continue
            T[j] = v
            if len(levels[j + 1]) and not np.array_equal(
                    r2[L.map_indices(T, levels[j + 1])], r1[levels[j + 1]]):
                continue
            if rec(j + 1, images + [code]):
                return True
        T[j] = 0
        return False

    return T.copy() if rec(0, []) else None


def _digits(code: int, q: int, n: int) -> list[int]:
    out = [0] * n
    for i in range(n - 1, -1, -1):
        code, out[i] = divmod(code, q)
    return out


def apply_map(M: QMatroid, T) -> QMatroid:
    """The q-matroid ``M'`` with ``r'(A T) = r(A)``; ``T`` must be invertible."""
    img = M.lattice.map_indices(np.asarray(T, dtype=np.int64))
    if len(set(img.tolist())) != len(img):
        raise DimensionMismatch("map is not invertible")
    table = np.empty_like(M.ranks)
    table[img] = M.ranks
    return QMatroid(M.q, M.n, table)
