"""Brute-force oracles that share no code with the library.

Subspaces here are frozensets of vectors (tuples over range(q)) built by
closing generator sets under linear combinations; q is a prime so field
arithmetic is plain modular arithmetic.
"""

from __future__ import annotations

import itertools
from functools import lru_cache


def vadd(u, v, q):
    return tuple((a + b) % q for a, b in zip(u, v))


def vscale(c, u, q):
    return tuple((c * a) % q for a in u)


def close(gens, q, n):
    """Vector set of the span of ``gens``."""
    vecs = {tuple([0] * n)}
    for g in gens:
        g = tuple(g)
        vecs = {vadd(v, vscale(c, g, q), q) for v in vecs for c in range(q)}
    return frozenset(vecs)


def parse(words):
    return [tuple(int(ch) for ch in w) for w in words]


def vs(words, q=2):
    gens = parse(words)
    n = len(gens[0]) if gens else 0
    return close(gens, q, n)


@lru_cache(maxsize=None)
def all_subspaces(q, n):
    """Every subspace of GF(q)^n by breadth-first extension, as vector sets."""
    zero = frozenset({tuple([0] * n)})
    found = {zero}
    frontier = [zero]
    vectors = list(itertools.product(range(q), repeat=n))
    while frontier:
        nxt = []
        for S in frontier:
            for v in vectors:
                if v not in S:
                    T = close(list(_gens(S, q, n)) + [v], q, n)
                    if T not in found:
                        found.add(T)
                        nxt.append(T)
        frontier = nxt
    return sorted(found, key=lambda S: (len(S), sorted(S)))


def _gens(S, q, n):
    # a greedy basis of a vector set
    basis, span_ = [], frozenset({tuple([0] * n)})
    for v in sorted(S):
        if v not in span_:
            basis.append(v)
            span_ = close(basis, q, n)
    return basis


def dim(S, q):
    d, size = 0, 1
    while size < len(S):
        size *= q
        d += 1
    return d


def dot(u, v, q):
    return sum(a * b for a, b in zip(u, v)) % q


def perp(S, q, n):
    return frozenset(v for v in itertools.product(range(q), repeat=n)
                     if all(dot(u, v, q) == 0 for u in S))


def ssum(A, B, q, n):
    return close(list(_gens(A, q, n)) + list(_gens(B, q, n)), q, n)


def lines_of(S, q, n):
    out = set()
    for v in S:
        if any(v):
            out.add(close([v], q, n))
    return out


def gaussian_binomial(n, k, q):
    """Product formula, written out independently of the library."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** n - q ** i
        den *= q ** k - q ** i
    return num // den


def gl_order(n, q):
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out


# -- GF(2^m) by hand: ints as bit polynomials ---------------------------------

def gf2m_mul(a, b, modulus_bits, m):
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> m & 1:
            a ^= modulus_bits
    return out


def gf2m_rank_weight(word, m):
    """Rank over GF(2) of the m x n bit matrix whose columns are the entries of ``word``."""
    rows = []
    for i in range(m):
        rows.append(tuple((x >> i) & 1 for x in word))
    return dim(close(rows, 2, len(word)), 2)


def gf2m_row_support(word, m):
    rows = [tuple((x >> i) & 1 for x in word) for i in range(m)]
    return close(rows, 2, len(word))
