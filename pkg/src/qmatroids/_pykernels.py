"""Pure-Python lattice kernels.

Reference implementation of everything in ``_ckernels.pyx``; the two
modules expose identical signatures and must return identical results.

Vectors of ``GF(q)^n`` are integer codes ``sum(d_i * q**(n-1-i))`` (first
coordinate most significant), so for ``q == 2`` a code is a bit mask and
vector addition is XOR. A subspace is encoded by its RREF rows, in pivot
order, as ``key = sum(row_k * Q**k)`` with ``Q = q**n``.
"""

from __future__ import annotations

import numpy as np


def to_digits(code: int, q: int, n: int) -> list[int]:
    out = [0] * n
    for i in range(n - 1, -1, -1):
        code, out[i] = divmod(code, q)
    return out


def from_digits(digits, q: int) -> int:
    code = 0
    for d in digits:
        code = code * q + d
    return code


def encode_key(rows, q: int, n: int) -> int:
    Q = q**n
    key = 0
    for k, r in enumerate(rows):
        key += r * Q**k
    return key


def rref2(rows, ncols: int) -> list[int]:
    """RREF over GF(2) of bit-packed rows; returns the nonzero rows, first pivot first."""
    work = [r for r in rows if r]
    out: list[int] = []
    for col in range(ncols - 1, -1, -1):
        if not work:
            break
        bit = 1 << col
        piv = next((k for k, r in enumerate(work) if r & bit), -1)
        if piv < 0:
            continue
        p = work.pop(piv)
        work = [r ^ p if r & bit else r for r in work]
        work = [r for r in work if r]
        out = [r ^ p if r & bit else r for r in out]
        out.append(p)
    return out


def rrefq(mat, add, mul, neg, inv) -> list[list[int]]:
    """RREF over GF(q) of a digit matrix, tables given as nested lists."""
    work = [list(r) for r in mat if any(r)]
    if not work:
        return []
    ncols = len(work[0])
    top = 0
    for col in range(ncols):
        piv = next((k for k in range(top, len(work)) if work[k][col]), -1)
        if piv < 0:
            continue
        work[top], work[piv] = work[piv], work[top]
        s = inv[work[top][col]]
        prow = [mul[s][x] for x in work[top]]
        work[top] = prow
        for k in range(len(work)):
            f = work[k][col]
            if k != top and f:
                nf = neg[f]
                mrow = mul[nf]
                work[k] = [add[x][mrow[y]] for x, y in zip(work[k], prow)]
        top += 1
        if top == len(work):
            break
    return work[:top]


def rref_codes(codes, q: int, n: int, add, mul, neg, inv) -> tuple[int, ...]:
    """Canonical RREF rows (as codes) of the span of ``codes``."""
    if q == 2:
        return tuple(rref2(codes, n))
    mat = [to_digits(c, q, n) for c in codes if c]
    return tuple(from_digits(r, q) for r in rrefq(mat, add, mul, neg, inv))


def _tables(add, mul, neg, inv):
    return (np.asarray(add).tolist(), np.asarray(mul).tolist(),
            np.asarray(neg).tolist(), np.asarray(inv).tolist())


def join_meet(bases, dims, q, n, add, mul, neg, inv, sorted_keys, order):
    """Sum and intersection tables for every pair of lattice elements.

    Each pair is handled with the Zassenhaus block matrix ``[[A, A], [B, 0]]``:
    after row reduction, rows with a nonzero left half span ``A + B`` and the
    right halves of the remaining rows span ``A & B``.
    """
    add, mul, neg, inv = _tables(add, mul, neg, inv)
    index = dict(zip(np.asarray(sorted_keys).tolist(), np.asarray(order).tolist()))
    rows = [list(map(int, bases[i, : dims[i]])) for i in range(len(dims))]
    N = len(rows)
    join = np.zeros((N, N), dtype=np.int32)
    meet = np.zeros((N, N), dtype=np.int32)
    Q = q**n
    for i in range(N):
        A = rows[i]
        for j in range(i, N):
            B = rows[j]
            if q == 2:
                red = rref2([(a << n) | a for a in A] + [b << n for b in B], 2 * n)
                jr = [r >> n for r in red if r >> n]
                mr = [r & (Q - 1) for r in red if not r >> n]
            else:
                mat = [to_digits(a, q, n) * 2 for a in A]
                mat += [to_digits(b, q, n) + [0] * n for b in B]
                red = rrefq(mat, add, mul, neg, inv)
                jr = [from_digits(r[:n], q) for r in red if any(r[:n])]
                mr = [from_digits(r[n:], q) for r in red if not any(r[:n])]
            join[i, j] = join[j, i] = index[encode_key(jr, q, n)]
            meet[i, j] = meet[j, i] = index[encode_key(mr, q, n)]
    return join, meet


def submodular_scan(rank, join, meet):
    """Count pairs ``i <= j`` with ``r(i+j) + r(i&j) > r(i) + r(j)``; report the first."""
    rank = np.asarray(rank).tolist()
    join = np.asarray(join).tolist()
    meet = np.asarray(meet).tolist()
    N = len(rank)
    count, first = 0, (-1, -1)
    for i in range(N):
        ri, ji, mi = rank[i], join[i], meet[i]
        for j in range(i, N):
            if rank[ji[j]] + rank[mi[j]] > ri + rank[j]:
                if not count:
                    first = (i, j)
                count += 1
    return count, first[0], first[1]


def monotone_scan(rank, meet):
    """Count nested pairs ``i < j`` (``i`` properly inside ``j``) with ``r(i) > r(j)``."""
    rank = np.asarray(rank).tolist()
    meet = np.asarray(meet).tolist()
    N = len(rank)
    count, first = 0, (-1, -1)
    for i in range(N):
        mi, ri = meet[i], rank[i]
        for j in range(N):
            if j != i and mi[j] == i and ri > rank[j]:
                if not count:
                    first = (i, j)
                count += 1
    return count, first[0], first[1]


def map_subspaces(bases, dims, idxs, T, q, n, add, mul, neg, inv, sorted_keys, order):
    """Lattice index of ``span(rows * T)`` for each subspace in ``idxs``.

    ``T`` is an ``n x n`` digit matrix acting on row vectors.
    """
    add, mul, neg, inv = _tables(add, mul, neg, inv)
    index = dict(zip(np.asarray(sorted_keys).tolist(), np.asarray(order).tolist()))
    T = np.asarray(T).tolist()
    out = np.zeros(len(idxs), dtype=np.int64)
    if q == 2:
        trows = [from_digits(r, 2) for r in T]
    for pos, i in enumerate(np.asarray(idxs).tolist()):
        img = []
        for code in bases[i, : dims[i]].tolist():
            d = to_digits(code, q, n)
            if q == 2:
                v = 0
                for t, bit in zip(trows, d):
                    if bit:
                        v ^= t
                img.append(v)
            else:
                v = [0] * n
                for t, c in zip(T, d):
                    if c:
                        mc = mul[c]
                        v = [add[x][mc[y]] for x, y in zip(v, t)]
                img.append(from_digits(v, q))
        out[pos] = index[encode_key(rref_codes(img, q, n, add, mul, neg, inv), q, n)]
    return out
