# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled lattice kernels; see ``_pykernels`` for the reference semantics.

Keys are 64-bit here, so callers only route lattices with ``q**(n*n) < 2**62``
to this module. Matrices are capped at ``MAXR`` rows and ``MAXC`` columns.
"""

import numpy as np

cdef enum:
    MAXR = 64
    MAXC = 64


cdef int _rref2(long long* rows, int nrows, int ncols) nogil:
    cdef int top = 0, k, col, piv
    cdef long long bit, p, t
    for col in range(ncols - 1, -1, -1):
        if top == nrows:
            break
        bit = (<long long>1) << col
        piv = -1
        for k in range(top, nrows):
            if rows[k] & bit:
                piv = k
                break
        if piv < 0:
            continue
        t = rows[top]
        rows[top] = rows[piv]
        rows[piv] = t
        p = rows[top]
        for k in range(nrows):
            if k != top and (rows[k] & bit):
                rows[k] ^= p
        top += 1
    return top


cdef int _rrefq(long long* mat, int nrows, int ncols,
                const long long[:, ::1] add, const long long[:, ::1] mul,
                const long long[::1] neg, const long long[::1] inv) nogil:
    # mat is row-major nrows x ncols, stride MAXC
    cdef int top = 0, k, col, piv, c
    cdef long long s, f, t
    for col in range(ncols):
        if top == nrows:
            break
        piv = -1
        for k in range(top, nrows):
            if mat[k * MAXC + col]:
                piv = k
                break
        if piv < 0:
            continue
        if piv != top:
            for c in range(ncols):
                t = mat[top * MAXC + c]
                mat[top * MAXC + c] = mat[piv * MAXC + c]
                mat[piv * MAXC + c] = t
        s = inv[mat[top * MAXC + col]]
        for c in range(ncols):
            mat[top * MAXC + c] = mul[s, mat[top * MAXC + c]]
        for k in range(nrows):
            f = mat[k * MAXC + col]
            if k != top and f:
                f = neg[f]
                for c in range(ncols):
                    mat[k * MAXC + c] = add[mat[k * MAXC + c], mul[f, mat[top * MAXC + c]]]
        top += 1
    return top


cdef inline void _to_digits(long long code, int q, int n, long long* out) nogil:
    cdef int i
    for i in range(n - 1, -1, -1):
        out[i] = code % q
        code = code // q


cdef inline long long _from_digits(const long long* d, int q, int n) nogil:
    cdef long long code = 0
    cdef int i
    for i in range(n):
        code = code * q + d[i]
    return code


cdef inline long long _lookup(const long long[::1] keys, const long long[::1] order, long long key) nogil:
    cdef Py_ssize_t lo = 0, hi = keys.shape[0] - 1, mid
    while lo <= hi:
        mid = (lo + hi) // 2
        if keys[mid] == key:
            return order[mid]
        if keys[mid] < key:
            lo = mid + 1
        else:
            hi = mid - 1
    return -1


def rref2(rows, int ncols):
    cdef long long buf[MAXR]
    cdef int nr = 0, r, k
    for x in rows:
        if x:
            if nr == MAXR:
                raise ValueError("too many rows for the compiled kernel")
            buf[nr] = x
            nr += 1
    r = _rref2(buf, nr, ncols)
    return [buf[k] for k in range(r)]


def rrefq(mat, add, mul, neg, inv):
    cdef long long buf[MAXR * MAXC]
    cdef const long long[:, ::1] a = np.ascontiguousarray(add, dtype=np.int64)
    cdef const long long[:, ::1] m = np.ascontiguousarray(mul, dtype=np.int64)
    cdef const long long[::1] ng = np.ascontiguousarray(neg, dtype=np.int64)
    cdef const long long[::1] iv = np.ascontiguousarray(inv, dtype=np.int64)
    rows = [row for row in mat if any(row)]
    if not rows:
        return []
    cdef int nr = len(rows), nc = len(rows[0]), i, j, r
    if nr > MAXR or nc > MAXC:
        raise ValueError("matrix too large for the compiled kernel")
    for i in range(nr):
        for j in range(nc):
            buf[i * MAXC + j] = rows[i][j]
    r = _rrefq(buf, nr, nc, a, m, ng, iv)
    return [[buf[i * MAXC + j] for j in range(nc)] for i in range(r)]


def rref_codes(codes, int q, int n, add, mul, neg, inv):
    if q == 2:
        return tuple(rref2(codes, n))
    from ._pykernels import to_digits, from_digits
    mat = [to_digits(c, q, n) for c in codes if c]
    return tuple(from_digits(r, q) for r in rrefq(mat, add, mul, neg, inv))


def join_meet(const long long[:, ::1] bases, const long long[::1] dims, int q, int n,
              const long long[:, ::1] add, const long long[:, ::1] mul,
              const long long[::1] neg, const long long[::1] inv,
              const long long[::1] sorted_keys, const long long[::1] order):
    cdef Py_ssize_t N = dims.shape[0], i, j
    join = np.zeros((N, N), dtype=np.int32)
    meet = np.zeros((N, N), dtype=np.int32)
    cdef int[:, ::1] jv = join
    cdef int[:, ::1] mv = meet
    cdef long long Q = 1
    cdef int k, c, nr, r, hi_zero
    cdef long long buf[MAXR]
    cdef long long mat[MAXR * MAXC]
    cdef long long dig[MAXC]
    cdef long long jkey, mkey, pj, pm, hi, lo
    for k in range(n):
        Q *= q
    with nogil:
        for i in range(N):
            for j in range(i, N):
                jkey = 0
                mkey = 0
                pj = 1
                pm = 1
                if q == 2:
                    nr = 0
                    for k in range(dims[i]):
                        buf[nr] = (bases[i, k] << n) | bases[i, k]
                        nr += 1
                    for k in range(dims[j]):
                        buf[nr] = bases[j, k] << n
                        nr += 1
                    r = _rref2(buf, nr, 2 * n)
                    for k in range(r):
                        hi = buf[k] >> n
                        if hi:
                            jkey += hi * pj
                            pj *= Q
                        else:
                            mkey += (buf[k] & (Q - 1)) * pm
                            pm *= Q
                else:
                    nr = 0
                    for k in range(dims[i]):
                        _to_digits(bases[i, k], q, n, dig)
                        for c in range(n):
                            mat[nr * MAXC + c] = dig[c]
                            mat[nr * MAXC + n + c] = dig[c]
                        nr += 1
                    for k in range(dims[j]):
                        _to_digits(bases[j, k], q, n, dig)
                        for c in range(n):
                            mat[nr * MAXC + c] = dig[c]
                            mat[nr * MAXC + n + c] = 0
                        nr += 1
                    r = _rrefq(mat, nr, 2 * n, add, mul, neg, inv)
                    for k in range(r):
                        hi = _from_digits(&mat[k * MAXC], q, n)
                        if hi:
                            jkey += hi * pj
                            pj *= Q
                        else:
                            lo = _from_digits(&mat[k * MAXC + n], q, n)
                            mkey += lo * pm
                            pm *= Q
                jv[i, j] = <int>_lookup(sorted_keys, order, jkey)
                jv[j, i] = jv[i, j]
                mv[i, j] = <int>_lookup(sorted_keys, order, mkey)
                mv[j, i] = mv[i, j]
    return join, meet


def submodular_scan(const long long[::1] rank, const int[:, ::1] join, const int[:, ::1] meet):
    cdef Py_ssize_t N = rank.shape[0], i, j
    cdef long long count = 0
    cdef Py_ssize_t fi = -1, fj = -1
    with nogil:
        for i in range(N):
            for j in range(i, N):
                if rank[join[i, j]] + rank[meet[i, j]] > rank[i] + rank[j]:
                    if count == 0:
                        fi = i
                        fj = j
                    count += 1
    return count, fi, fj


def monotone_scan(const long long[::1] rank, const int[:, ::1] meet):
    cdef Py_ssize_t N = rank.shape[0], i, j
    cdef long long count = 0
    cdef Py_ssize_t fi = -1, fj = -1
    with nogil:
        for i in range(N):
            for j in range(N):
                if j != i and meet[i, j] == i and rank[i] > rank[j]:
                    if count == 0:
                        fi = i
                        fj = j
                    count += 1
    return count, fi, fj


def map_subspaces(const long long[:, ::1] bases, const long long[::1] dims,
                  const long long[::1] idxs, const long long[:, ::1] T, int q, int n,
                  const long long[:, ::1] add, const long long[:, ::1] mul,
                  const long long[::1] neg, const long long[::1] inv,
                  const long long[::1] sorted_keys, const long long[::1] order):
    cdef Py_ssize_t M = idxs.shape[0], pos, i
    out = np.zeros(M, dtype=np.int64)
    cdef long long[::1] ov = out
    cdef long long trows[MAXC]
    cdef long long buf[MAXR]
    cdef long long mat[MAXR * MAXC]
    cdef long long dig[MAXC]
    cdef long long v, key, pw, Q = 1
    cdef int k, c, a, r, nr
    for k in range(n):
        Q *= q
    for a in range(n):
        trows[a] = 0
        for c in range(n):
            trows[a] = trows[a] * q + T[a, c]
    with nogil:
        for pos in range(M):
            i = idxs[pos]
            nr = <int>dims[i]
            if q == 2:
                for k in range(nr):
                    _to_digits(bases[i, k], 2, n, dig)
                    v = 0
                    for a in range(n):
                        if dig[a]:
                            v ^= trows[a]
                    buf[k] = v
                r = _rref2(buf, nr, n)
            else:
                for k in range(nr):
                    _to_digits(bases[i, k], q, n, dig)
                    for c in range(n):
                        mat[k * MAXC + c] = 0
                    for a in range(n):
                        if dig[a]:
                            for c in range(n):
                                mat[k * MAXC + c] = add[mat[k * MAXC + c], mul[dig[a], T[a, c]]]
                r = _rrefq(mat, nr, n, add, mul, neg, inv)
                for k in range(r):
                    buf[k] = _from_digits(&mat[k * MAXC], q, n)
            key = 0
            pw = 1
            for k in range(r):
                key += buf[k] * pw
                pw *= Q
            ov[pos] = _lookup(sorted_keys, order, key)
    return out
