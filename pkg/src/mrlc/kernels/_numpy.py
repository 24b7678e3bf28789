"""Pure-numpy kernels.

Every function here has a twin in ``_numba`` with the same signature and the
same results; the numba versions loop explicitly, these vectorise over the
batch axis instead.
"""
from functools import lru_cache
from itertools import combinations

import numpy as np

U64 = np.uint64


def _mask(t):
    return U64(0xFFFFFFFFFFFFFFFF) if t == 64 else U64((1 << t) - 1)


def gf_mul(a, b, t, low):
    """Elementwise product in GF(2^t); ``low`` is the modulus without x^t."""
    a, b = np.broadcast_arrays(np.asarray(a, dtype=U64), np.asarray(b, dtype=U64))
    a = a.copy()
    b = b.copy()
    res = np.zeros(a.shape, dtype=U64)
    mask, low, top, one = _mask(t), U64(low), U64(t - 1), U64(1)
    for _ in range(t):
        res ^= np.where(b & one, a, U64(0))
        b >>= one
        carry = (a >> top) & one
        a = (a << one) & mask
        a ^= carry * low
    return res


@lru_cache(maxsize=None)
def combination_table(n, d):
    """All d-subsets of range(n) in lexicographic order, shape (C(n,d), d)."""
    if d > n:
        return np.zeros((0, d), dtype=np.int64)
    flat = np.fromiter((i for c in combinations(range(n), d) for i in c), dtype=np.int64)
    return flat.reshape(-1, d)


def _subset_sums(vals, d):
    # vals: (B, N) -> (B, C(N, d))
    if d == 0:
        return np.zeros((vals.shape[0], 1), dtype=U64)
    idx = combination_table(vals.shape[1], d)
    if len(idx) == 0:
        return np.zeros((vals.shape[0], 0), dtype=U64)
    return np.bitwise_xor.reduce(vals[:, idx], axis=2)


def gf2_independent(vals, h, chunk=256):
    """Row-wise test that every sub-multiset of size <= h has nonzero XOR.

    Meet in the middle: with a = h // 2 and b = h - a, a dependent set of size
    <= h exists iff two distinct subsets of size <= a share a sum, or (odd h)
    some subset of size exactly b shares a sum with a subset of size <= a.
    """
    vals = np.ascontiguousarray(vals, dtype=U64)
    out = np.ones(vals.shape[0], dtype=bool)
    if h <= 0 or vals.shape[1] == 0:
        return out
    a, b = h // 2, h - h // 2
    for lo in range(0, vals.shape[0], chunk):
        v = vals[lo:lo + chunk]
        small = np.concatenate([_subset_sums(v, d) for d in range(a + 1)], axis=1)
        tags = np.zeros(small.shape, dtype=bool)
        if b > a:
            big = _subset_sums(v, b)
            small = np.concatenate([small, big], axis=1)
            tags = np.concatenate([tags, np.ones(big.shape, dtype=bool)], axis=1)
        order = np.argsort(small, axis=1, kind="stable")
        s = np.take_along_axis(small, order, axis=1)
        g = np.take_along_axis(tags, order, axis=1)
        clash = (s[:, 1:] == s[:, :-1]) & ~(g[:, 1:] & g[:, :-1])
        out[lo:lo + chunk] = ~clash.any(axis=1)
    return out


def first_singular(cols, combos, t, low, chunk=4096):
    """For each batch row, index of the first singular h x h minor, else -1.

    ``cols`` has shape (B, N, h): N column vectors of length h.  ``combos``
    lists the h-subsets of the N columns to test, in order.
    """
    cols = np.asarray(cols, dtype=U64)
    B = cols.shape[0]
    C, h = combos.shape
    out = np.full(B, -1, dtype=np.int64)
    if B == 0 or C == 0:
        return out
    step = max(1, chunk // C)
    for lo in range(0, B, step):
        sub = cols[lo:lo + step][:, combos, :]          # (b, C, h, h)
        nb = sub.shape[0]
        M = sub.reshape(-1, h, h).copy()
        ok = np.ones(M.shape[0], dtype=bool)
        rows = np.arange(M.shape[0])
        for c in range(h):
            nz = M[:, c:, c] != 0
            ok &= nz.any(axis=1)
            piv = c + nz.argmax(axis=1)
            top = M[rows, c].copy()
            M[rows, c] = M[rows, piv]
            M[rows, piv] = top
            p = M[:, c, c][:, None]
            for r in range(c + 1, h):
                f = M[:, r, c][:, None]
                M[:, r, :] = gf_mul(p, M[:, r, :], t, low) ^ gf_mul(f, M[:, c, :], t, low)
        bad = ~ok.reshape(nb, C)
        hit = bad.any(axis=1)
        out[lo:lo + nb] = np.where(hit, bad.argmax(axis=1), -1)
    return out
