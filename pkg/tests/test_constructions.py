import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmatroids import constructions as cons
from qmatroids.errors import (
    AxiomViolation,
    BadParams,
    LoopContraction,
    NoBasisContained,
    NotHyperplane,
    PreconditionViolated,
    RankZero,
)
from qmatroids.qmatroid import QMatroid, check_rank_axioms, isomorphic
from qmatroids.space import enumerate_subspaces, lattice, perp, span, whole, zero

from .strategies import code_matroids

UNIFORM_PARAMS = [(k, n, q) for q, top in ((2, 4), (3, 3)) for n in range(top + 1)
                  for k in range(n + 1)]


def upto(q, n, k):
    return [S for S in lattice(q, n) if S.dim <= k]


# -- uniform --------------------------------------------------------------------------

def test_uniform_table():
    U = cons.uniform(2, 4, 2)
    assert np.array_equal(U.ranks, np.minimum(U.dims, 2))
    assert U.rank_of(span(2, 4, ["1000"])) == 1 and U.rank == 2


@pytest.mark.parametrize("k, n", [(-1, 3), (4, 3)])
def test_uniform_bad_params(k, n):
    with pytest.raises(BadParams):
        cons.uniform(k, n, 2)


# -- from families ------------------------------------------------------------------------

def test_from_independents_loopy(loopy, loop_line):
    fam = [S for S in lattice(2, 4) if S.dim <= 2 and not loop_line <= S]
    assert len(fam) == 1 + 14 + 28
    assert loopy.independents() == fam
    assert loopy.rank == 2


def test_from_independents_counterexample(counter_family):
    with pytest.raises(AxiomViolation) as info:
        cons.from_independents(counter_family, 2, 4)
    assert set(info.value.reports) == {"I4"}


@pytest.mark.parametrize("k, n, q", [(0, 2, 2), (2, 4, 2), (1, 3, 3), (3, 3, 3)])
def test_from_independents_uniform(k, n, q):
    assert cons.from_independents(upto(q, n, k), q, n) == cons.uniform(k, n, q)


def test_from_bases_loopy(loopy, loop_line):
    fam = [B for B in enumerate_subspaces(2, 4, dim=2) if not loop_line <= B]
    assert cons.from_bases(fam, 2, 4) == loopy


@pytest.mark.parametrize("k, n, q", [(0, 3, 2), (2, 4, 2), (2, 3, 3)])
def test_from_bases_uniform(k, n, q):
    assert cons.from_bases(enumerate_subspaces(q, n, dim=k), q, n) == cons.uniform(k, n, q)


def test_from_bases_rejects_mixed_dimensions():
    with pytest.raises(AxiomViolation) as info:
        cons.from_bases([span(2, 3, ["100"]), span(2, 3, ["010", "001"])], 2, 3)
    assert "B2'" in info.value.reports


def test_from_bases_rejects_empty():
    with pytest.raises(AxiomViolation):
        cons.from_bases([], 2, 3)


def test_validation_can_be_skipped(counter_family):
    M = cons.from_independents(counter_family, 2, 4, validate=False)
    assert not check_rank_axioms(M)["r3"].holds


# -- dual ---------------------------------------------------------------------------------

@pytest.mark.parametrize("k, n, q", UNIFORM_PARAMS)
def test_dual_of_uniform(k, n, q):
    assert cons.dual(cons.uniform(k, n, q)) == cons.uniform(n - k, n, q)


def test_dual_of_loopy(loopy, loop_line):
    D = cons.dual(loopy)
    assert D.rank == 2
    assert D.isthmuses() == [loop_line]
    assert cons.dual(D) == loopy
    assert {B for B in D.bases()} == {perp(B) for B in loopy.bases()}


@given(code_matroids())
@settings(max_examples=15)
def test_dual_properties(M):
    D = cons.dual(M)
    assert cons.dual(D) == M
    assert D.rank == M.n - M.rank
    assert set(D.bases()) == {perp(B) for B in M.bases()}
    assert D.isthmuses() == M.loops()
    assert all(r.holds for r in check_rank_axioms(D).values())


def test_duality_suite_on_fixtures(loopy):
    for M in (loopy, cons.uniform(2, 4, 2), cons.uniform(1, 3, 3)):
        reps = cons.check_duality_suite(M)
        assert set(reps) == {"involution", "dual-bases", "dual-rank", "loop-isthmus",
                             "restrict-contract"}
        assert all(r.holds for r in reps.values()), [str(r) for r in reps.values()]


# -- truncation -----------------------------------------------------------------------------

@pytest.mark.parametrize("k, n, q", [p for p in UNIFORM_PARAMS if p[0] >= 1])
def test_truncate_uniform(k, n, q):
    assert cons.truncate(cons.uniform(k, n, q)) == cons.uniform(k - 1, n, q)


def test_truncate_loopy(loopy, loop_line):
    T = cons.truncate(loopy)
    expect = [zero(2, 4)] + [x for x in enumerate_subspaces(2, 4, dim=1) if x != loop_line]
    assert T.independents() == expect


def test_truncate_rank_zero():
    with pytest.raises(RankZero):
        cons.truncate(cons.uniform(0, 3, 2))


@given(code_matroids())
@settings(max_examples=15)
def test_truncate_pointwise(M):
    if M.rank == 0:
        return
    T = cons.truncate(M)
    assert np.array_equal(T.ranks, np.minimum(M.ranks, M.rank - 1))
    assert all(r.holds for r in check_rank_axioms(T).values())


# -- restriction and contraction --------------------------------------------------------------

def test_hyperplane_coordinates_round_trip():
    H = span(3, 3, ["101", "012"])
    push, lift = cons.hyperplane_coordinates(H)
    for A in lattice(3, 2):
        B = lift(A)
        assert B <= H and B.dim == A.dim and push(B) == A


@pytest.mark.parametrize("k, n, q", [(1, 3, 2), (2, 4, 2), (3, 4, 2), (0, 3, 2), (1, 3, 3), (2, 3, 3)])
def test_restrict_uniform_every_hyperplane(k, n, q):
    U, small = cons.uniform(k, n, q), cons.uniform(k, n - 1, q)
    for H in enumerate_subspaces(q, n, dim=n - 1):
        R = cons.restrict(U, H)
        assert R == small
        assert isomorphic(R, small) is not None


@pytest.mark.parametrize("k, n, q", [(1, 3, 2), (2, 4, 2), (4, 4, 2), (1, 3, 3), (3, 3, 3)])
def test_contract_uniform_every_line(k, n, q):
    U, small = cons.uniform(k, n, q), cons.uniform(k - 1, n - 1, q)
    for e in enumerate_subspaces(q, n, dim=1):
        assert cons.contract(U, e) == small


def test_restrict_errors():
    U = cons.uniform(2, 3, 2)
    with pytest.raises(NotHyperplane):
        cons.restrict(U, span(2, 3, ["100"]))
    with pytest.raises(NoBasisContained):
        cons.restrict(cons.uniform(3, 3, 2), span(2, 3, ["100", "010"]))


def test_restrict_loopy_to_loop_perp(loopy, loop_line):
    R = cons.restrict_perp(loopy, loop_line)
    assert perp(loop_line) == span(2, 4, ["1000", "0100", "0010"])
    assert isomorphic(R, cons.uniform(2, 3, 2)) is not None


def test_contract_loop_refused(loopy, loop_line):
    with pytest.raises(LoopContraction):
        cons.contract(loopy, loop_line)


def test_contract_ranks(loopy):
    for e in enumerate_subspaces(2, 4, dim=1):
        if loopy.rank_of(e) == 1:
            C = cons.contract(loopy, e)
            assert C.n == 3 and C.rank == loopy.rank - 1
            assert C.rank_of(whole(2, 3)) == 1


def test_restriction_contraction_duality_loopy(loopy, loop_line):
    for e in enumerate_subspaces(2, 4, dim=1):
        if e == loop_line:
            with pytest.raises(PreconditionViolated):
                cons.check_restriction_contraction_duality(loopy, e)
            continue
        reps = cons.check_restriction_contraction_duality(loopy, e)
        assert set(reps) == {"dual-contract", "contract-dual"}
        for rep in reps.values():
            assert rep.holds
            T = np.array(rep.certificate)
            assert T.shape == (3, 3)


def test_isthmus_refused(loopy, loop_line):
    with pytest.raises(PreconditionViolated):
        cons.check_restriction_contraction_duality(cons.dual(loopy), loop_line)


@given(code_matroids(shapes=[(2, 3, 3), (2, 3, 4), (3, 2, 3)]), st.data())
@settings(max_examples=15)
def test_minors_are_qmatroids(M, data):
    L = M.lattice
    lines = [L[int(x)] for x in L.lines if not M.loop_mask[x]]
    if lines:
        e = data.draw(st.sampled_from(lines))
        C = cons.contract(M, e)
        assert C.rank == M.rank - 1
        assert all(r.holds for r in check_rank_axioms(C).values())
    hyper = [H for H in enumerate_subspaces(M.q, M.n, dim=M.n - 1)
             if any(B <= H for B in M.bases())]
    if hyper:
        H = data.draw(st.sampled_from(hyper))
        R = cons.restrict(M, H)
        assert R.rank == M.rank
        assert all(r.holds for r in check_rank_axioms(R).values())


# -- round trips ---------------------------------------------------------------------------------

@given(code_matroids())
@settings(max_examples=15)
def test_round_trips(M):
    I = M.independents()
    again = cons.from_independents(I, M.q, M.n, validate=False)
    assert again == M
    assert again.independents() == I
    assert cons.from_bases(M.bases(), M.q, M.n, validate=False).independents() == I


def test_json_round_trip_of_operations(loopy):
    D = cons.dual(loopy)
    assert QMatroid.from_json(D.to_json()) == D
