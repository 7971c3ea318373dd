"""The compiled and pure-Python kernels must agree bit for bit."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmatroids import _pykernels, kernels, space
from qmatroids import constructions as cons
from qmatroids.qmatroid import check_rank_axioms, lemma_suite, run_suites

needs_cython = pytest.mark.skipif("cython" not in kernels.available(),
                                  reason="compiled extension not built")

CASES = [(2, 1), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2), (5, 2)]


def kernel_inputs(q, n):
    L = space.Lattice(q, n, cap=None)
    tables = space._array_tables(q)
    keys = np.asarray(L._sorted_keys, dtype=np.int64)
    return L, tables, keys


@pytest.fixture
def restore_backend():
    before = kernels.backend()
    yield
    kernels.set_backend(before)
    space._LATTICES.clear()


@needs_cython
@pytest.mark.parametrize("q, n", CASES)
def test_join_meet_agree(q, n):
    L, tables, keys = kernel_inputs(q, n)
    c = kernels.get("cython").join_meet(L._bases, L.dims, q, n, *tables, keys, L._order)
    p = _pykernels.join_meet(L._bases, L.dims, q, n, *tables, keys, L._order)
    assert np.array_equal(c[0], p[0]) and np.array_equal(c[1], p[1])


@needs_cython
@pytest.mark.parametrize("q, n", CASES)
def test_scans_agree_on_random_tables(q, n):
    L, tables, keys = kernel_inputs(q, n)
    join, meet = _pykernels.join_meet(L._bases, L.dims, q, n, *tables, keys, L._order)
    rng = np.random.default_rng(q * 100 + n)
    ck = kernels.get("cython")
    for _ in range(5):
        rank = rng.integers(0, n + 1, size=len(L)).astype(np.int64)
        assert ck.submodular_scan(rank, join, meet) == _pykernels.submodular_scan(rank, join, meet)
        assert ck.monotone_scan(rank, meet) == _pykernels.monotone_scan(rank, meet)


@needs_cython
@pytest.mark.parametrize("q, n", CASES)
def test_map_subspaces_agree(q, n):
    L, tables, keys = kernel_inputs(q, n)
    rng = np.random.default_rng(q + n)
    idxs = np.arange(len(L), dtype=np.int64)
    for _ in range(5):
        T = rng.integers(0, q, size=(n, n)).astype(np.int64)
        a = kernels.get("cython").map_subspaces(L._bases, L.dims, idxs, T, q, n, *tables, keys, L._order)
        b = _pykernels.map_subspaces(L._bases, L.dims, idxs, T, q, n, *tables, keys, L._order)
        assert np.array_equal(a, b)


@needs_cython
@given(st.lists(st.integers(0, 2**10 - 1), max_size=12))
def test_rref2_agree(rows):
    assert kernels.get("cython").rref2(rows, 10) == _pykernels.rref2(rows, 10)


@needs_cython
@given(st.lists(st.lists(st.integers(0, 4), min_size=5, max_size=5), max_size=6))
def test_rrefq_agree(mat):
    tables = [t.tolist() for t in space._array_tables(5)]
    assert kernels.get("cython").rrefq(mat, *tables) == _pykernels.rrefq(mat, *tables)


def test_map_identity_is_identity():
    L = space.lattice(3, 3)
    assert np.array_equal(L.map_indices(np.eye(3, dtype=np.int64)), np.arange(len(L)))


def test_python_fallback_gives_same_reports(restore_backend, loopy):
    space._LATTICES.clear()
    kernels.set_backend("python")
    assert kernels.backend() == "python"
    M = cons.from_independents(loopy.independents(), 2, 4)
    assert np.array_equal(M.ranks, loopy.ranks)
    reports = run_suites(M)
    assert all(r.holds for g in reports.values() for r in g.values())
    bad = cons.truncate(cons.uniform(2, 3, 2))
    assert check_rank_axioms(bad)["r3"].holds


def test_large_keys_route_to_python():
    # q**(n*n) beyond 62 bits must not reach the int64 kernel
    assert kernels.for_lattice(2, 8) is _pykernels
    assert kernels.for_lattice(4, 6) is _pykernels


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.set_backend("fortran")


def test_lemma_suite_backend_independent(restore_backend):
    out = {}
    for name in kernels.available():
        space._LATTICES.clear()
        kernels.set_backend(name)
        U = cons.uniform(1, 3, 3)
        out[name] = {k: v.holds for k, v in lemma_suite(U).items()}
    assert len(set(map(lambda d: tuple(sorted(d.items())), out.values()))) == 1
