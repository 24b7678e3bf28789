"""numba-compiled kernels, same contracts as ``_numpy``."""
import numpy as np
from numba import njit

from ._numpy import combination_table

U64 = np.uint64


def _mask(t):
    return U64(0xFFFFFFFFFFFFFFFF) if t == 64 else U64((1 << t) - 1)


@njit(cache=True, nogil=True, inline="always")
def _mul(a, b, t, low, mask):
    res = U64(0)
    one = U64(1)
    top = U64(t - 1)
    while b:
        if b & one:
            res ^= a
        b >>= one
        carry = (a >> top) & one
        a = (a << one) & mask
        if carry:
            a ^= low
    return res


@njit(cache=True, nogil=True)
def _mul_flat(a, b, t, low, mask):
    out = np.empty(a.shape[0], dtype=np.uint64)
    for i in range(a.shape[0]):
        out[i] = _mul(a[i], b[i], t, low, mask)
    return out


def gf_mul(a, b, t, low):
    """Elementwise product in GF(2^t); ``low`` is the modulus without x^t."""
    a, b = np.broadcast_arrays(np.asarray(a, dtype=U64), np.asarray(b, dtype=U64))
    shape = a.shape
    out = _mul_flat(np.ascontiguousarray(a).ravel(), np.ascontiguousarray(b).ravel(),
                    t, U64(low), _mask(t))
    return out.reshape(shape)


@njit(cache=True, nogil=True)
def _n_choose(n, d):
    if d < 0 or d > n:
        return 0
    c = 1
    for i in range(d):
        c = c * (n - i) // (i + 1)
    return c


@njit(cache=True, nogil=True)
def _fill_sums(vals, d, out, pos):
    n = vals.shape[0]
    if d == 0:
        out[pos] = U64(0)
        return pos + 1
    if d > n:
        return pos
    idx = np.arange(d)
    while True:
        s = U64(0)
        for i in range(d):
            s ^= vals[idx[i]]
        out[pos] = s
        pos += 1
        i = d - 1
        while i >= 0 and idx[i] == n - d + i:
            i -= 1
        if i < 0:
            break
        idx[i] += 1
        for j in range(i + 1, d):
            idx[j] = idx[j - 1] + 1
    return pos


@njit(cache=True, nogil=True)
def _row_independent(vals, h):
    n = vals.shape[0]
    a = h // 2
    b = h - a
    total = 0
    for d in range(a + 1):
        total += _n_choose(n, d)
    small = np.empty(total, dtype=np.uint64)
    pos = 0
    for d in range(a + 1):
        pos = _fill_sums(vals, d, small, pos)
    small.sort()
    for i in range(1, total):
        if small[i] == small[i - 1]:
            return False
    if b > a:
        big = np.empty(_n_choose(n, b), dtype=np.uint64)
        _fill_sums(vals, b, big, 0)
        for x in big:
            j = np.searchsorted(small, x)
            if j < total and small[j] == x:
                return False
    return True


@njit(cache=True, nogil=True)
def _independent_rows(vals, h):
    out = np.ones(vals.shape[0], dtype=np.bool_)
    for i in range(vals.shape[0]):
        out[i] = _row_independent(vals[i], h)
    return out


def gf2_independent(vals, h):
    """Row-wise test that every sub-multiset of size <= h has nonzero XOR."""
    vals = np.ascontiguousarray(vals, dtype=U64)
    if h <= 0 or vals.shape[1] == 0:
        return np.ones(vals.shape[0], dtype=bool)
    return _independent_rows(vals, h)


@njit(cache=True, nogil=True)
def _singular(M, h, t, low, mask):
    for c in range(h):
        piv = -1
        for r in range(c, h):
            if M[r, c] != 0:
                piv = r
                break
        if piv < 0:
            return True
        if piv != c:
            for cc in range(h):
                tmp = M[c, cc]
                M[c, cc] = M[piv, cc]
                M[piv, cc] = tmp
        p = M[c, c]
        for r in range(c + 1, h):
            f = M[r, c]
            if f != 0:
                for cc in range(c, h):
                    M[r, cc] = _mul(p, M[r, cc], t, low, mask) ^ _mul(f, M[c, cc], t, low, mask)
    return False


@njit(cache=True, nogil=True)
def _first_singular(cols, combos, t, low, mask):
    B = cols.shape[0]
    C = combos.shape[0]
    h = combos.shape[1]
    out = np.full(B, -1, dtype=np.int64)
    M = np.empty((h, h), dtype=np.uint64)
    for b in range(B):
        for ci in range(C):
            for r in range(h):
                for cc in range(h):
                    M[r, cc] = cols[b, combos[ci, r], cc]
            if _singular(M, h, t, low, mask):
                out[b] = ci
                break
    return out


def first_singular(cols, combos, t, low):
    """For each batch row, index of the first singular h x h minor, else -1."""
    cols = np.ascontiguousarray(cols, dtype=U64)
    combos = np.ascontiguousarray(combos, dtype=np.int64)
    if cols.shape[0] == 0 or combos.shape[0] == 0:
        return np.full(cols.shape[0], -1, dtype=np.int64)
    return _first_singular(cols, combos, t, U64(low), _mask(t))


__all__ = ["gf_mul", "gf2_independent", "first_singular", "combination_table"]
