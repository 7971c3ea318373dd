import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmatroids import constructions as cons
from qmatroids import qmatroid as qm
from qmatroids.errors import AmbientMismatch, CapExceeded, InternalConsistencyError
from qmatroids.qmatroid import (
    QMatroid,
    check_basis_axioms,
    check_circuit_axioms,
    check_closure_axioms,
    check_independence_axioms,
    check_rank_axioms,
    isomorphic,
    lemma_suite,
    rank_polynomial,
    run_suites,
)
from qmatroids.space import enumerate_subspaces, lattice, perp, span, whole, zero

from . import oracles, replay
from .strategies import code_matroids, families, rank_tables


def sp(*words, q=2):
    return span(q, len(words[0]) if words else 4, list(words))


@pytest.fixture(scope="module")
def counter_rank(counter_I):
    """r(A) = largest dimension of a family member inside A = dim(A & I)."""
    return QMatroid.from_function(2, 4, lambda A: (A & counter_I).dim)


# -- rank function and basic families ------------------------------------------

def test_uniform_rank_values():
    U = cons.uniform(2, 4, 2)
    assert all(U.rank_of(A) == 2 for A in enumerate_subspaces(2, 4, dim=3))
    assert all(U.rank_of(A) == 1 for A in enumerate_subspaces(2, 4, dim=1))
    assert U.rank == 2


def test_loopy_loop(loopy, loop_line):
    assert loopy.rank_of(loop_line) == 0
    assert loopy.loops() == [loop_line]
    assert loopy.isthmuses() == []


def test_table_is_complete():
    U = cons.uniform(1, 3, 3)
    assert len(U.ranks) == sum(oracles.gaussian_binomial(3, k, 3) for k in range(4))


def test_bases_of_uniform_and_loopy(loopy, loop_line):
    U = cons.uniform(2, 4, 2)
    assert U.bases() == list(enumerate_subspaces(2, 4, dim=2))
    assert len(U.bases()) == 35
    expect = [B for B in enumerate_subspaces(2, 4, dim=2) if not loop_line <= B]
    assert loopy.bases() == expect and len(expect) == 28


def test_circuits_of_uniform():
    for k, n, q in [(1, 3, 2), (2, 4, 2), (1, 3, 3), (0, 2, 2)]:
        U = cons.uniform(k, n, q)
        assert U.circuits() == list(enumerate_subspaces(q, n, dim=k + 1))
    assert cons.uniform(3, 3, 2).circuits() == []


def test_circuits_of_loopy(loopy, loop_line):
    # minimal dependent spaces: the loop itself, and the 3-dim spaces avoiding it;
    # 2-dim spaces through the loop are dependent but contain the smaller circuit
    three = [A for A in enumerate_subspaces(2, 4, dim=3) if not loop_line <= A]
    assert len(three) == 8
    assert loopy.circuits() == [loop_line] + three
    assert all(loopy.rank_of(A) < A.dim for A in enumerate_subspaces(2, 4, dim=2) if loop_line <= A)


def test_circuits_match_definition(loopy):
    for A in lattice(2, 4):
        dependent = loopy.rank_of(A) < A.dim
        minimal = all(loopy.rank_of(B) == B.dim for B in enumerate_subspaces(2, 4) if B < A)
        assert (A in loopy.circuits()) == (dependent and minimal)


def test_isthmuses_by_definition():
    # a coloop-like example: the dual of the loopy q-matroid has <0001> as its only isthmus
    M = cons.dual(cons.from_independents(
        [S for S in lattice(2, 4) if S.dim <= 2 and not sp("0001") <= S], 2, 4))
    bases = M.bases()
    expect = [x for x in lattice(2, 4) if x.dim == 1 and not any(x <= perp(B) for B in bases)]
    assert M.isthmuses() == expect == [sp("0001")]


# -- closure -------------------------------------------------------------------------

def test_closure_of_basis_is_everything(loopy):
    for B in loopy.bases():
        assert loopy.closure(B) == whole(2, 4)


def test_loopy_closure_adds_the_loop(loopy, loop_line):
    for x in lattice(2, 4):
        if x.dim == 1 and x != loop_line:
            assert x + loop_line <= loopy.closure(x)


def test_uniform_small_spaces_are_flats():
    for k, n, q in [(2, 4, 2), (3, 4, 2), (2, 3, 3)]:
        U = cons.uniform(k, n, q)
        flats = set(U.flats())
        assert {A for A in lattice(q, n) if A.dim <= k - 1} <= flats
        assert whole(q, n) in flats


@pytest.mark.parametrize("make", [lambda: cons.uniform(2, 4, 2), lambda: cons.uniform(1, 3, 3)])
def test_closure_matches_brute_force(make, loopy):
    for M in (make(), loopy):
        for A in M.lattice:
            assert M.closure(A) == replay.brute_closure(M, A)


# -- rank polynomial ----------------------------------------------------------------------

def test_rank_polynomial_u11():
    R = rank_polynomial(cons.uniform(1, 1, 2))
    assert R.terms() == [(0, 0, 1), (1, 0, 1)]
    assert str(R) == "X + 1"
    assert R.evaluate(0, 0) == 1


def test_rank_polynomial_loopy(loopy):
    R = rank_polynomial(loopy)
    assert R[0, 0] == R.evaluate(0, 0) == 28
    assert R[loopy.rank, 0] == 1
    assert R.total() == 67


@given(code_matroids())
@settings(max_examples=15)
def test_rank_polynomial_invariants(M):
    R = M.rank_polynomial()
    assert R.total() == len(M.lattice)
    assert R[0, 0] >= len(M.bases())
    assert R[M.rank, 0] >= 1


# -- (r1)-(r3) -----------------------------------------------------------------------------

def test_counterexample_r3_named_witness(counter_rank):
    A = sp("1000", "0100", "0010")
    B = sp("0100", "0010", "0001")
    r = counter_rank.rank_of
    assert r(A + B) + r(A & B) == 3 and r(A) + r(B) == 2
    rep = check_rank_axioms(counter_rank, limit=None)["r3"]
    assert not rep.holds
    found = [w for w in rep.witnesses if set(w.spaces) == {A, B}]
    assert found and found[0].values == {"lhs": 3, "rhs": 2}
    assert rep.count == len(rep.witnesses)


def test_counterexample_r1_r2_hold(counter_rank):
    reps = check_rank_axioms(counter_rank)
    assert reps["r1"].holds and reps["r2"].holds and not reps["r3"].holds


def test_rank_report_first_witness_replays(counter_rank):
    rep = check_rank_axioms(counter_rank)["r3"]
    assert len(rep.witnesses) == 1
    assert replay.rank_witness("r3", rep.witnesses[0], counter_rank.rank_of)
    assert rep.count == check_rank_axioms(counter_rank, limit=None)["r3"].count
    assert str(rep).startswith("(r3) FAIL: ")


@given(rank_tables())
@settings(max_examples=40)
def test_rank_witnesses_replay(table):
    M = QMatroid(2, 3, table)
    full = check_rank_axioms(M, limit=None)
    first = check_rank_axioms(M)
    for ax in ("r1", "r2", "r3"):
        assert full[ax].count == first[ax].count == len(full[ax].witnesses)
        assert full[ax].holds == (full[ax].count == 0)
        for w in full[ax].witnesses:
            assert replay.rank_witness(ax, w, M.rank_of)
        if first[ax].witnesses:
            assert replay.rank_witness(ax, first[ax].witnesses[0], M.rank_of)


def test_r1_violation_detected():
    table = np.zeros(len(lattice(2, 2)), dtype=np.int64)
    table[-1] = 3
    rep = check_rank_axioms(QMatroid(2, 2, table))["r1"]
    assert not rep.holds and rep.witnesses[0].values == {"r": 3, "dim": 2}


def test_r3_brute_force_count():
    # count unordered pairs violating submodularity directly
    rng = np.random.default_rng(7)
    L = lattice(2, 3)
    table = np.array([rng.integers(0, d + 1) for d in L.dims])
    M = QMatroid(2, 3, table)
    r = M.rank_of
    bad = sum(1 for A, B in itertools.combinations_with_replacement(list(L), 2)
              if r(A + B) + r(A & B) > r(A) + r(B))
    assert check_rank_axioms(M)["r3"].count == bad


# -- independence axioms ----------------------------------------------------------------

def test_counterexample_family_fails_only_I4(counter_family):
    reps = check_independence_axioms(counter_family, 2, 4)
    assert reps["I1"].holds and reps["I2"].holds and reps["I3"].holds
    assert not reps["I4"].holds
    assert replay.indep_witness("I4", reps["I4"].witnesses[0], counter_family, 2, 4)


def test_counterexample_named_I4_witness(counter_family):
    A = sp("1000", "0100", "0010")
    B = sp("0100", "0010", "0001")
    m = sp("0110")
    rep = check_independence_axioms(counter_family, 2, 4, limit=None)["I4"]
    assert (A, B, m, m, m) in [tuple(w) for w in rep.witnesses]
    for w in rep.witnesses:
        assert replay.indep_witness("I4", w, counter_family, 2, 4)


def test_loopy_independents_hold(loopy):
    reps = check_independence_axioms(loopy.independents(), 2, 4)
    assert all(r.holds for r in reps.values())
    assert set(reps) == {"I1", "I2", "I3", "I4", "I1'", "I3'"}


def test_empty_family_fails_I1():
    reps = check_independence_axioms([], 2, 3)
    assert not reps["I1"].holds and not reps["I1'"].holds
    assert str(reps["I1"].witnesses[0]) == "empty family"


def test_family_ambient_checked():
    with pytest.raises(AmbientMismatch):
        check_independence_axioms([zero(2, 3)], 2, 4)


@given(families())
@settings(max_examples=60)
def test_independence_witnesses_replay(fam):
    reps = check_independence_axioms(fam, 2, 3, limit=None)
    for ax, rep in reps.items():
        assert rep.holds == (rep.count == 0)
        assert len(rep.witnesses) == rep.count
        for w in rep.witnesses:
            assert replay.indep_witness(ax, w, fam, 2, 3), (ax, w)


@given(families())
@settings(max_examples=60)
def test_primed_forms_equivalent(fam):
    # the checker raises InternalConsistencyError if the two systems ever disagree
    reps = check_independence_axioms(fam, 2, 3)
    plain = reps["I1"].holds and reps["I2"].holds and reps["I3"].holds
    primed = reps["I1'"].holds and reps["I2"].holds and reps["I3'"].holds
    assert plain == primed


@given(families())
@settings(max_examples=40)
def test_I4_count_matches_oracle(fam):
    spaces = replay.all_spaces(2, 3)
    fam_set = set(fam)
    bad = 0
    for A, B in itertools.product(spaces, repeat=2):
        for I in replay.maxima_within(fam_set, A):
            for J in replay.maxima_within(fam_set, B):
                if not any(K <= I + J for K in replay.maxima_within(fam_set, A + B)):
                    bad += 1
    assert check_independence_axioms(fam, 2, 3)["I4"].count == bad


# -- basis axioms ---------------------------------------------------------------------------

def test_loopy_bases_and_B3_exchange(loopy):
    assert all(r.holds for r in check_basis_axioms(loopy.bases(), 2, 4).values())
    B1, B2 = sp("1100", "0010"), sp("1010", "0100")
    assert B1 & B2 == sp("1110")
    admissible = [A for A in enumerate_subspaces(2, 4, dim=1) if A <= B1 and B1 & B2 <= A]
    assert admissible == [sp("1110")]
    ys = [y for y in replay.lines(B2) if not y <= admissible[0]]
    assert sorted(map(str, ys)) == ["<0100>", "<1010>"]
    assert all(admissible[0] + y == B2 for y in ys)


@pytest.mark.parametrize("k, n, q", [(0, 3, 2), (2, 4, 2), (1, 3, 3), (3, 3, 2)])
def test_uniform_bases_hold(k, n, q):
    fam = list(enumerate_subspaces(q, n, dim=k))
    assert all(r.holds for r in check_basis_axioms(fam, q, n).values())


@given(families())
@settings(max_examples=40)
def test_basis_witnesses_replay(fam):
    for ax, rep in check_basis_axioms(fam, 2, 3, limit=None).items():
        assert rep.holds == (rep.count == 0) and len(rep.witnesses) == rep.count
        for w in rep.witnesses:
            assert replay.basis_witness(ax, w, fam, 2, 3), (ax, w)


def test_B3y_never_fires_on_real_bases(loopy):
    assert check_basis_axioms(loopy.bases(), 2, 4)["B3y"].holds


# -- circuit axioms -----------------------------------------------------------------------------

def test_loopy_circuits_hold(loopy):
    assert all(r.holds for r in check_circuit_axioms(loopy.circuits(), 2, 4).values())


def test_zero_circuit_fails_C1():
    assert not check_circuit_axioms([zero(2, 3)], 2, 3)["C1"].holds


@given(families())
@settings(max_examples=40)
def test_circuit_witnesses_replay(fam):
    for ax, rep in check_circuit_axioms(fam, 2, 3, limit=None).items():
        assert rep.holds == (rep.count == 0)
        for w in rep.witnesses:
            assert replay.circuit_witness(ax, w, fam), (ax, w)


# -- closure axioms --------------------------------------------------------------------------------

def test_loopy_closure_holds(loopy):
    assert all(r.holds for r in check_closure_axioms(loopy).values())


def test_closure_checker_on_bad_map():
    # "closure" sending everything to the zero space breaks (cl1)
    reps = check_closure_axioms(closure=lambda A: zero(2, 3), q=2, n=3)
    assert not reps["cl1"].holds
    assert replay.closure_witness("cl1", reps["cl1"].witnesses[0], lambda A: zero(2, 3))


@given(st.data())
@settings(max_examples=40)
def test_closure_witnesses_replay(data):
    L = lattice(2, 3)
    cl_idx = data.draw(st.lists(st.integers(0, len(L) - 1), min_size=len(L), max_size=len(L)))
    cl = lambda A: L[cl_idx[L.index_of(A)]]  # noqa: E731
    for ax, rep in check_closure_axioms(closure=cl_idx, q=2, n=3, limit=None).items():
        for w in rep.witnesses:
            assert replay.closure_witness(ax, w, cl), (ax, w)


# -- lemmas ----------------------------------------------------------------------------------------

def test_counterexample_loopsum(counter_rank):
    r = counter_rank.rank_of
    assert r(sp("1000")) == 0 and r(sp("0001")) == 0
    assert r(sp("1000") + sp("0001")) == 1
    rep = lemma_suite(counter_rank, limit=None)["loopsum"]
    assert not rep.holds
    pair = [w for w in rep.witnesses if set(w.spaces) == {sp("1000"), sp("0001")}]
    assert pair and pair[0].values == {"r_sum": 1}


def test_lemmas_on_rank_zero():
    U = cons.uniform(0, 3, 2)
    assert all(r.holds for r in lemma_suite(U).values())
    assert len(U.loops()) == 7


# -- suites on valid q-matroids ------------------------------------------------------------------

def test_run_suites_unknown():
    with pytest.raises(ValueError):
        run_suites(cons.uniform(1, 2, 2), ["nope"])


@given(code_matroids())
@settings(max_examples=12)
def test_code_matroids_pass_every_suite(M):
    for group in run_suites(M).values():
        for rep in group.values():
            assert rep.holds, str(rep)


@given(code_matroids())
@settings(max_examples=12)
def test_bases_equidimensional_and_sized(M):
    assert {B.dim for B in M.bases()} == {M.rank}
    assert M.bases() == [I for I in M.independents() if I.dim == M.rank]


@given(code_matroids(), st.data())
@settings(max_examples=12)
def test_witness_replay_on_damaged_matroid(M, data):
    # bump one rank by one: usually breaks something, and every witness must be real
    i = data.draw(st.integers(1, len(M.lattice) - 1))
    table = M.ranks.copy()
    table[i] = min(table[i] + 1, M.dims[i])
    table[0] = 0
    bad = QMatroid(M.q, M.n, table)
    for ax, rep in check_rank_axioms(bad, limit=None).items():
        for w in rep.witnesses:
            assert replay.rank_witness(ax, w, bad.rank_of)


# -- equality, isomorphism, json ------------------------------------------------------------------

def test_equal_and_repr():
    U = cons.uniform(2, 3, 2)
    assert qm.equal(U, cons.uniform(2, 3, 2)) and U == U
    assert not qm.equal(U, cons.uniform(1, 3, 2))


def test_isomorphism_witness():
    U13, U23 = cons.uniform(1, 3, 2), cons.uniform(2, 3, 2)
    assert isomorphic(U13, U23) is None
    T = isomorphic(U23, U23)
    assert T is not None and np.array_equal(qm.apply_map(U23, T).ranks, U23.ranks)


def test_isomorphism_finds_relabelled(loopy):
    T0 = np.array([[0, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 1], [1, 0, 0, 1]])
    N = qm.apply_map(loopy, T0)
    assert N != loopy
    T = isomorphic(loopy, N)
    assert T is not None
    assert qm.apply_map(loopy, T) == N
    assert N.loops()[0] == span(2, 4, [(np.array([0, 0, 0, 1]) @ T0) % 2])


def test_isomorphism_cap():
    with pytest.raises(CapExceeded):
        isomorphic(cons.uniform(1, 5, 2), cons.uniform(1, 5, 2))
    assert qm.gl_order(3, 2) == oracles.gl_order(3, 2) == 168


def test_json_round_trip(loopy):
    assert QMatroid.from_json(loopy.to_json()) == loopy
    rows = loopy.to_json()["ranks"]
    assert len(rows) == 67 and rows[0] == {"rref": [], "r": 0}


def test_report_json(counter_family):
    rep = check_independence_axioms(counter_family, 2, 4)["I4"]
    data = rep.to_json()
    assert data["axiom"] == "I4" and data["holds"] is False
    assert len(data["witnesses"][0]["spaces"]) == 5


def test_consistency_error_exists():
    # guard used by the independence checker; make sure it is importable and a QMatroidError
    from qmatroids.errors import QMatroidError
    assert issubclass(InternalConsistencyError, QMatroidError)
