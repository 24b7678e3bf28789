"""Desk-scale experiments: random codes, exhaustive small-field search, field-size table.

Random and searched codes are general local codes, not Frobenius ones: the
heavy parities are p_j = sum_i M[j, i] d_i with an arbitrary coefficient
matrix M, and the local parities stay plain XORs.  Their global rows are
M on the data coordinates, the identity on the heavy parities and zero on
the local parities.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb, e as EULER

import numpy as np
from scipy.stats import binomtest

from .constructions import basic_parameters, optimized_parameters
from .gf2 import make_field
from .topology import LocalTopology
from .verification import BudgetExceeded, make_rng, mr_mask

SEARCH_BUDGET = 2 ** 20
RANDOM_BUDGET = 2 ** 26  # trials x puncturings x minors

DEFAULT_GRID = ((4, 2, 2), (6, 2, 2), (6, 3, 3), (12, 3, 3), (60, 4, 4))


def heavy_global_rows(topology, M):
    """Global rows (B, h, n) of codes whose heavy parities use coefficients M (B, h, k)."""
    M = np.asarray(M, dtype=np.uint64)
    B, h, k = M.shape
    G = np.zeros((B, h, topology.n), dtype=np.uint64)
    G[:, :, list(topology.data_coords)] = M
    for j, c in enumerate(topology.heavy_coords):
        G[:, j, c] = 1
    return G


def random_bound(k, h):
    """Upper bound on P[MR] for random coefficients, valid when q <= C(floor(k/2), h-1)."""
    return (1 - 1 / (2 ** h * EULER ** (h - 1))) ** (k / 2)


def bound_applies(k, h, q):
    return h >= 2 and q <= comb(k // 2, h - 1)


@dataclass(frozen=True)
class RandomEstimate:
    k: int
    r: int
    h: int
    q_degree: int
    trials: int
    successes: int
    seed: int
    ci_low: float
    ci_high: float
    bound: float | None

    @property
    def fraction(self):
        return self.successes / self.trials

    def respects_bound(self):
        return self.bound is None or self.ci_low <= self.bound


def _masks(topo, field, batches, jobs):
    """mr_mask over several coefficient batches, threaded when jobs > 1 (kernels drop the GIL)."""
    def run(M):
        return mr_mask(topo, field, heavy_global_rows(topo, M))

    if jobs > 1 and len(batches) > 1:
        with ThreadPoolExecutor(jobs) as pool:
            return list(pool.map(run, batches))
    return [run(M) for M in batches]


def random_mr_probability(k, r, h, q_degree, trials, seed, budget=RANDOM_BUDGET, confidence=0.95, jobs=1):
    """Fraction of random local codes over GF(2^q_degree) that are MR, with a Wilson interval.

    The coefficient draw depends on the seed only, never on ``jobs``.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    topo = LocalTopology.local(k, r, h)
    field = make_field(q_degree)
    cost = trials * topo.num_punctures * comb(k + h, h)
    if cost > budget:
        raise BudgetExceeded(f"{cost} rank checks exceed the budget of {budget}")
    M = make_rng(seed).integers(0, field.size, size=(trials, h, k), dtype=np.uint64)
    ok = sum(int(m.sum()) for m in _masks(topo, field, np.array_split(M, max(1, jobs)), jobs))
    ci = binomtest(ok, trials).proportion_ci(confidence_level=confidence, method="wilson")
    bound = random_bound(k, h) if bound_applies(k, h, field.size) else None
    return RandomEstimate(k, r, h, q_degree, trials, ok, seed, float(ci.low), float(ci.high), bound)


@dataclass(frozen=True)
class SearchResult:
    exists: bool
    witness: tuple | None   # h x k heavy-parity coefficients of the first MR code found
    searched: int
    total: int

    @property
    def status(self):
        return "ExistsMR" if self.exists else "NoneExists"


def _digits(idx, q, width):
    out = np.empty((len(idx), width), dtype=np.uint64)
    idx = idx.copy()
    for i in range(width - 1, -1, -1):
        out[:, i] = idx % q
        idx //= q
    return out


def exhaustive_lower_bound_search(k, r, h, q_degree, budget=SEARCH_BUDGET, chunk=8192, jobs=1):
    """Look for any MR local (k, r, h) code over GF(2^q_degree).

    Coefficient matrices are enumerated in lexicographic order; the first MR
    one is returned.  No symmetry reduction is applied.
    """
    topo = LocalTopology.local(k, r, h)
    field = make_field(q_degree)
    q = field.size
    total = q ** (h * k)
    if total > budget:
        raise BudgetExceeded(f"{total} coefficient matrices exceed the budget of {budget}")
    starts = list(range(0, total, chunk))
    step = max(1, jobs)
    for i in range(0, len(starts), step):
        wave = starts[i:i + step]
        batches = [_digits(np.arange(lo, min(lo + chunk, total), dtype=np.uint64), np.uint64(q), h * k)
                   .reshape(-1, h, k) for lo in wave]
        for lo, M, mask in zip(wave, batches, _masks(topo, field, batches, jobs)):
            hit = np.flatnonzero(mask)
            if len(hit):
                w = M[hit[0]]
                return SearchResult(True, tuple(tuple(int(x) for x in row) for row in w),
                                    lo + int(hit[0]) + 1, total)
    return SearchResult(False, None, total, total)


@dataclass(frozen=True)
class FieldSizeRow:
    k: int
    r: int
    h: int
    t_basic: int
    t_optimized: int


def field_size_table(grid=DEFAULT_GRID):
    rows = []
    for k, r, h in grid:
        rows.append(FieldSizeRow(k, r, h, basic_parameters(k, r, h)[2], optimized_parameters(k, r, h)[2]))
    return rows
