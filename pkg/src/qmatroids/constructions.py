"""Building and transforming q-matroids.

Restriction to a hyperplane ``H`` and contraction of a line ``e`` both land
in an (n-1)-dimensional space, realised as GF(q)^(n-1) through fixed maps:
``H`` is identified with GF(q)^(n-1) through its RREF basis (a vector of
``H`` is sent to its coordinates at the pivot columns), and ``E/e`` through
:class:`~qmatroids.space.QuotientMap`. Statements relating the two are
therefore checked up to isomorphism.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .errors import (
    AmbientMismatch,
    AxiomViolation,
    BadParams,
    DimensionMismatch,
    LoopContraction,
    NoBasisContained,
    NotHyperplane,
    PreconditionViolated,
    RankZero,
)
from .qmatroid import (
    AxiomReport,
    QMatroid,
    Witness,
    check_basis_axioms,
    check_independence_axioms,
    isomorphic,
)
from .space import DEFAULT_CAP, QuotientMap, Subspace, field_tables, lattice, perp, span

_INDEP_AXIOMS = ("I1", "I2", "I3", "I4")
_BASIS_AXIOMS = ("B1", "B2", "B2'", "B3", "B3y", "B4")


def uniform(k: int, n: int, q: int, cap: float | None = DEFAULT_CAP) -> QMatroid:
    """``U_{k,n}`` over GF(q): ``r(A) = min(dim A, k)``."""
    if not 0 <= k <= n:
        raise BadParams(f"uniform q-matroid needs 0 <= k <= n, got k={k}, n={n}")
    L = lattice(q, n, cap=cap)
    return QMatroid(q, n, np.minimum(L.dims, k), cap=cap)


def _rank_from_members(q: int, n: int, mask: np.ndarray) -> np.ndarray:
    L = lattice(q, n, cap=None)
    contained = L.le & mask[:, None]                    # [I, A]: member I inside A
    dims = np.where(contained, L.dims[:, None], -1)
    return dims.max(axis=0)


def from_independents(family: Iterable[Subspace], q: int, n: int, validate: bool = True,
                      cap: float | None = DEFAULT_CAP) -> QMatroid:
    """Rank table ``r(A) = max{dim I : I in family, I <= A}``.

    Raises :class:`AxiomViolation` (carrying the reports) when the family
    fails any of (I1)-(I4).
    """
    family = list(family)
    if validate:
        reports = check_independence_axioms(family, q, n, cap=cap)
        failed = {k: v for k, v in reports.items() if k in _INDEP_AXIOMS and not v.holds}
        if failed:
            raise AxiomViolation(failed)
    L = lattice(q, n, cap=cap)
    return QMatroid(q, n, _rank_from_members(q, n, L.family_mask(family)), cap=cap)


def from_bases(family: Iterable[Subspace], q: int, n: int, validate: bool = True,
               cap: float | None = DEFAULT_CAP) -> QMatroid:
    """The q-matroid whose independent spaces are the subspaces of members of ``family``."""
    family = list(family)
    if validate:
        reports = check_basis_axioms(family, q, n, cap=cap)
        failed = {k: v for k, v in reports.items() if k in _BASIS_AXIOMS and not v.holds}
        if failed:
            raise AxiomViolation(failed)
    L = lattice(q, n, cap=cap)
    down = L.le[:, L.family_mask(family)].any(axis=1)
    return from_independents(L.subspaces_at(np.flatnonzero(down)), q, n,
                             validate=validate, cap=cap)


def dual(M: QMatroid) -> QMatroid:
    """``r*(A) = dim A - r(M) + r(A^perp)`` with the standard dot product."""
    L = M.lattice
    return QMatroid(M.q, M.n, L.dims - M.rank + M.ranks[L.perp])


def truncate(M: QMatroid) -> QMatroid:
    """``r(A) -> min(r(A), r(M) - 1)``."""
    if M.rank == 0:
        raise RankZero("cannot truncate a q-matroid of rank 0")
    return QMatroid(M.q, M.n, np.minimum(M.ranks, M.rank - 1))


def _ranks_via(M: QMatroid, lift, offset: int = 0) -> np.ndarray:
    small = lattice(M.q, M.n - 1, cap=None)
    L = M.lattice
    return np.array([M.ranks[L.index_of(lift(A))] + offset for A in small], dtype=np.int64)


def hyperplane_coordinates(H: Subspace):
    """The maps ``H -> GF(q)^(n-1)`` (pivot coordinates) and back (combine RREF rows)."""
    basis = H.basis
    pivots = [next(i for i, d in enumerate(row) if d) for row in basis]

    def lift(A: Subspace) -> Subspace:
        return span(H.q, H.n, [_combine(H.q, w, basis) for w in A.basis])

    def push(A: Subspace) -> Subspace:
        if not A <= H:
            raise AmbientMismatch(f"{A} is not inside {H}")
        return span(H.q, H.n - 1, [[row[p] for p in pivots] for row in A.basis])

    return push, lift


def _combine(q: int, coeffs, rows) -> list[int]:
    add, mul, _, _ = field_tables(q)
    v = [0] * len(rows[0])
    for c, row in zip(coeffs, rows):
        if c:
            v = [add[x][mul[c][y]] for x, y in zip(v, row)]
    return v


def restrict(M: QMatroid, H: Subspace) -> QMatroid:
    """``M|_H`` on GF(q)^(n-1); ``H`` must be a hyperplane containing a basis."""
    if (H.q, H.n) != (M.q, M.n):
        raise AmbientMismatch(f"{H!r} is not a subspace of GF({M.q})^{M.n}")
    if H.dim != M.n - 1:
        raise NotHyperplane(f"{H} has dimension {H.dim}, expected {M.n - 1}")
    L = M.lattice
    h = L.index_of(H)
    if not (M.basis_mask & L.le[:, h]).any():
        raise NoBasisContained(f"no basis of the q-matroid lies in {H}")
    _, lift = hyperplane_coordinates(H)
    return QMatroid(M.q, M.n - 1, _ranks_via(M, lift))


def restrict_perp(M: QMatroid, e: Subspace) -> QMatroid:
    """``M|_{e^perp}`` for a line ``e``."""
    if e.dim != 1:
        raise DimensionMismatch(f"expected a line, got dimension {e.dim}")
    return restrict(M, perp(e))


def contract(M: QMatroid, e: Subspace) -> QMatroid:
    """``M/e`` on GF(q)^(n-1) = E/e: ``r(A) = r_M(B) - 1`` for the ``B >= e`` over ``A``."""
    if (e.q, e.n) != (M.q, M.n):
        raise AmbientMismatch(f"{e!r} is not a subspace of GF({M.q})^{M.n}")
    if e.dim != 1:
        raise DimensionMismatch(f"expected a line, got dimension {e.dim}")
    if M.rank_of(e) == 0:
        raise LoopContraction(f"{e} is a loop and cannot be contracted")
    pi = QuotientMap(e)
    return QMatroid(M.q, M.n - 1, _ranks_via(M, pi.pull, offset=-1))


# -- duality statements ------------------------------------------------------------

def check_restriction_contraction_duality(M: QMatroid, e: Subspace) -> dict[str, AxiomReport]:
    """``M*/e ~ (M|_{e^perp})*`` and ``(M/e)* ~ M*|_{e^perp}``, each up to isomorphism.

    A passing report carries the isomorphism matrix in ``certificate``.
    """
    if M.rank_of(e) == 0:
        raise PreconditionViolated(f"{e} is a loop")
    if M.isthmus_mask[M.lattice.index_of(e)]:
        raise PreconditionViolated(f"{e} is an isthmus")
    D = dual(M)
    pairs = {
        "dual-contract": (contract(D, e), dual(restrict_perp(M, e))),
        "contract-dual": (dual(contract(M, e)), restrict_perp(D, e)),
    }
    out = {}
    for name, (X, Y) in pairs.items():
        T = isomorphic(X, Y)
        if T is None:
            out[name] = AxiomReport(name, False, (Witness((e,)),), 1)
        else:
            out[name] = AxiomReport(name, True, (), 0, certificate=T.tolist())
    return out


def check_duality_suite(M: QMatroid, minors: bool = True) -> dict[str, AxiomReport]:
    """Duality facts for ``M``: involution, dual bases, dual rank, loops vs isthmuses,
    and (with ``minors``) the restriction/contraction duality for every admissible line."""
    L = M.lattice
    D = dual(M)
    reports: dict[str, AxiomReport] = {}

    def rep(name, ok, spaces=()):
        reports[name] = AxiomReport(name, ok, () if ok else (Witness(tuple(spaces)),), 0 if ok else 1)

    DD = dual(D)
    bad = np.flatnonzero(DD.ranks != M.ranks)
    rep("involution", not len(bad), [L[int(bad[0])]] if len(bad) else ())

    want = np.zeros(len(L), dtype=bool)
    want[L.perp[M.basis_mask]] = True
    bad = np.flatnonzero(want != D.basis_mask)
    rep("dual-bases", not len(bad), [L[int(bad[0])]] if len(bad) else ())

    rep("dual-rank", D.rank == M.n - M.rank)

    bad = np.flatnonzero(M.loop_mask != D.isthmus_mask)
    rep("loop-isthmus", not len(bad), [L[int(bad[0])]] if len(bad) else ())

    if minors:
        fails = []
        for x in L.lines:
            if M.loop_mask[x] or M.isthmus_mask[x]:
                continue
            sub = check_restriction_contraction_duality(M, L[int(x)])
            if not all(r.holds for r in sub.values()):
                fails.append(L[int(x)])
        reports["restrict-contract"] = AxiomReport(
            "restrict-contract", not fails, tuple(Witness((f,)) for f in fails[:1]), len(fails))
    return reports
