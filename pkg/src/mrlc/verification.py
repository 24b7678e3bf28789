"""Maximal-recoverability checks.

Two independent routes decide whether a local code C(S, r, h) is MR:

* ``verify_mr`` uses the difference-set reduction: for every puncturing
  vector e the multiset T(S, e) = {alpha[i][s] + alpha[i][e(i)]} must be
  h-wise independent over GF(2).  Only XORs are involved.  Data-local
  codes fit the same mould with a zero generator on each local parity and
  the heavy-parity generators appended to every T(S, e).
* ``verify_mr_oracle`` works from the parity-check matrix alone.  It removes
  the punctured coordinates with the local rows and checks that every h x h
  minor of the remaining h x (k+h) matrix is nonsingular over GF(2^t).

The rank route takes arbitrary global rows, so it also serves data-local
codes and the random/exhaustive experiments.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

from . import kernels, linalg
from .topology import Kind, puncture_batch, build_parity_check

FAST_BUDGET = 2 ** 24
RANK_BUDGET = 2 ** 20


class BudgetExceeded(RuntimeError):
    pass


def make_rng(seed):
    """Counter-based generator so that runs replay from (seed) alone."""
    return np.random.Generator(np.random.Philox(seed))


# -- independence ---------------------------------------------------------------

@dataclass(frozen=True)
class Independence:
    independent: bool
    witness: tuple | None = None  # indices into the input multiset

    def __bool__(self):
        return self.independent


def _first_zero_xor(vals, sizes):
    vals = np.asarray(vals, dtype=np.uint64)
    for d in sizes:
        idx = kernels.combination_table(len(vals), d)
        if not len(idx):
            continue
        sums = np.bitwise_xor.reduce(vals[idx], axis=1)
        hit = np.flatnonzero(sums == 0)
        if len(hit):
            return tuple(int(i) for i in idx[hit[0]])
    return None


def is_independent(values, t, over=None):
    """Is every sub-multiset of size <= t linearly independent?

    ``over`` is None for GF(2), or a field carrying a subfield tower, in which
    case independence is over that subfield.  A failing result carries the
    lexicographically first dependent subset of minimum size.
    """
    values = [int(v) for v in values]
    t = min(t, len(values))
    if t <= 0:
        return Independence(True)
    if over is None or over.subfield_degree is None or over.subfield_degree == 1:
        if kernels.gf2_independent(np.array([values], dtype=np.uint64), t)[0]:
            return Independence(True)
        return Independence(False, _first_zero_xor(values, range(1, t + 1)))
    sub = over.subfield
    coords = [over.decompose(v) for v in values]
    for d in range(1, t + 1):
        for combo in combinations(range(len(values)), d):
            if linalg.rank(sub, [coords[i] for i in combo]) < d:
                return Independence(False, combo)
    return Independence(True)


def is_weakly_independent(values, t):
    """No sub-multiset of size 2..t XORs to zero (a lone zero is fine)."""
    values = [int(v) for v in values]
    witness = _first_zero_xor(values, range(2, min(t, len(values)) + 1))
    return Independence(witness is None, witness)


# -- difference sets ------------------------------------------------------------

@lru_cache(maxsize=None)
def _other_slots(r):
    """Row v lists the slots of a group other than v."""
    return np.array([[s for s in range(r + 1) if s != v] for v in range(r + 1)], dtype=np.int64)


def _generator_grid(code):
    """(ell, r+1) generators per group slot plus the ungrouped generators.

    Data-local local parities carry no generator, which acts exactly like a
    zero entry in the last slot.
    """
    t = code.topology
    cols = code.column_alphas
    grid = np.array([[cols[c] for c in g] for g in t.groups], dtype=np.uint64)
    extra = np.array([cols[c] for c in t.ungrouped_coords], dtype=np.uint64)
    return grid, extra


def difference_set(code, e):
    """T(S, e) in (group, slot) order, skipping each group's punctured slot.

    For data-local codes the heavy-parity generators follow unchanged.
    """
    t = code.topology
    if len(e) != t.ell or any(not 0 <= s <= t.r for s in e):
        raise ValueError(f"puncturing vector must lie in [0, {t.r}]^{t.ell}, got {tuple(e)}")
    grid, extra = _generator_grid(code)
    T = [int(grid[i, s] ^ grid[i, e[i]]) for i in range(t.ell) for s in range(t.r + 1) if s != e[i]]
    return tuple(T + [int(x) for x in extra])


def _difference_batch(grid, E, r):
    ell = grid.shape[0]
    rows = np.arange(ell)
    base = grid[rows, E]                                # (B, ell)
    vals = grid[rows[None, :, None], _other_slots(r)[E]]  # (B, ell, r)
    return (vals ^ base[..., None]).reshape(len(E), -1)


# -- verdicts -------------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    puncture: tuple          # slot per group, 0-based
    erasures: tuple          # coordinates of an erasure pattern the code cannot correct
    subset: tuple | None = None   # indices into T(S, e) that XOR to zero (difference route)


@dataclass(frozen=True)
class Verdict:
    is_mr: bool
    witness: Witness | None
    checked: int
    exhaustive: bool
    method: str

    def __bool__(self):
        return self.is_mr

    @property
    def status(self):
        return "MR" if self.is_mr else "NotMR"


def _scan(ranges, check, jobs):
    """Run ``check(start, stop)`` over ranges; return the first hit (global index) or None."""
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            for (start, _), hit in zip(ranges, pool.map(lambda rg: check(*rg), ranges)):
                if hit >= 0:
                    return start + hit
        return None
    for start, stop in ranges:
        hit = check(start, stop)
        if hit >= 0:
            return start + hit
    return None


def _chunks(total, size):
    return [(lo, min(lo + size, total)) for lo in range(0, total, size)]


def _punctures(topology, sample, seed):
    """Either a sampled (sample, ell) array or None for exhaustive lexicographic order."""
    if sample is None:
        return None
    if sample < 1:
        raise ValueError("sample size must be positive")
    return make_rng(seed).integers(0, topology.r + 1, size=(sample, topology.ell))


def _first_true(mask):
    hit = np.flatnonzero(mask)
    return int(hit[0]) if len(hit) else -1


def verify_mr(code, budget=FAST_BUDGET, sample=None, seed=0, jobs=1, chunk=2048):
    """MR test through h-wise independence of every difference set.

    Exhaustive over [r+1]^ell unless ``sample`` is given, in which case that
    many puncturing vectors are drawn (no completeness claim).  Works for
    both topologies.
    """
    t = code.topology
    grid, extra = _generator_grid(code)
    sampled = _punctures(t, sample, seed)
    total = t.num_punctures if sampled is None else len(sampled)
    if sampled is None and total > budget:
        raise BudgetExceeded(f"{total} puncturings exceed the budget of {budget}; use sampling")

    def check(start, stop):
        E = puncture_batch(t, start, stop) if sampled is None else sampled[start:stop]
        vals = _difference_batch(grid, E, t.r)
        if len(extra):
            vals = np.concatenate([vals, np.broadcast_to(extra, (len(E), len(extra)))], axis=1)
        return _first_true(~kernels.gf2_independent(vals, t.h))

    hit = _scan(_chunks(total, chunk), check, jobs)
    if hit is None:
        return Verdict(True, None, total, sampled is None, "difference-set")
    e = tuple(int(s) for s in (puncture_batch(t, hit, hit + 1)[0] if sampled is None else sampled[hit]))
    subset = is_independent(difference_set(code, e), t.h).witness
    others = _other_slots(t.r)
    grouped = t.ell * t.r
    coords = [t.groups[j // t.r][others[e[j // t.r], j % t.r]] if j < grouped
              else t.ungrouped_coords[j - grouped] for j in subset]
    erasures = tuple(sorted(set(t.puncture_coords(e)) | set(int(c) for c in coords)))
    return Verdict(False, Witness(e, erasures, subset), hit + 1, sampled is None, "difference-set")


# -- rank route -----------------------------------------------------------------

def effective_columns(G, topology, E):
    """Eliminate the punctured coordinates of every group with the local rows.

    G: (B, h, n) global rows; E: (P, ell) puncturing vectors.
    Returns cols (B, P, k+h, h) and the surviving coordinates (P, k+h).
    Within group i the column of slot s becomes g[s] + g[e(i)].
    """
    G = np.asarray(G, dtype=np.uint64)
    B, h, _ = G.shape
    P = len(E)
    groups = topology.group_array
    ell, r = topology.ell, topology.r
    rows = np.arange(ell)
    kept = groups[rows[None, :, None], _other_slots(r)[E]]   # (P, ell, r)
    punct = groups[rows[None, :], E]                          # (P, ell)
    Gt = G.transpose(0, 2, 1)                                 # (B, n, h)
    cols = Gt[:, kept] ^ Gt[:, punct][:, :, :, None, :]
    cols = cols.reshape(B, P, ell * r, h)
    coords = kept.reshape(P, ell * r)
    extra = np.array(topology.ungrouped_coords, dtype=np.int64)
    if len(extra):
        ext = np.broadcast_to(Gt[:, extra][:, None], (B, P, len(extra), h))
        cols = np.concatenate([cols, ext], axis=2)
        coords = np.concatenate([coords, np.broadcast_to(extra, (P, len(extra)))], axis=1)
    return cols, coords


def verify_global_rows(topology, field, global_rows, budget=RANK_BUDGET, sample=None, seed=0,
                       jobs=1, chunk=256):
    """MR test from explicit global rows by checking every h x h minor."""
    G = np.asarray(global_rows, dtype=np.uint64)[None]
    if G.shape[1:] != (topology.h, topology.n):
        raise ValueError(f"global rows must be {topology.h} x {topology.n}")
    combos = kernels.combination_table(topology.k + topology.h, topology.h)
    sampled = _punctures(topology, sample, seed)
    total = topology.num_punctures if sampled is None else len(sampled)
    if total * len(combos) > budget:
        raise BudgetExceeded(
            f"{total} puncturings x {len(combos)} minors exceed the budget of {budget}")

    def punct(start, stop):
        return puncture_batch(topology, start, stop) if sampled is None else sampled[start:stop]

    def check(start, stop):
        cols, _ = effective_columns(G, topology, punct(start, stop))
        bad = kernels.first_singular(cols[0], combos, field.degree, field.low)
        return _first_true(bad >= 0)

    hit = _scan(_chunks(total, chunk), check, jobs)
    if hit is None:
        return Verdict(True, None, total, sampled is None, "rank")
    E = punct(hit, hit + 1)
    cols, coords = effective_columns(G, topology, E)
    ci = int(kernels.first_singular(cols[0], combos, field.degree, field.low)[0])
    e = tuple(int(s) for s in E[0])
    erasures = set(topology.puncture_coords(e)) | {int(coords[0, j]) for j in combos[ci]}
    return Verdict(False, Witness(e, tuple(sorted(erasures))), hit + 1, sampled is None, "rank")


def verify_mr_oracle(code, budget=RANK_BUDGET, sample=None, seed=0, jobs=1):
    if code.topology.kind is not Kind.LOCAL:
        raise ValueError("verify_mr_oracle needs a local code; use verify_data_local_mr")
    return verify_global_rows(code.topology, code.field, code.global_rows(), budget, sample, seed, jobs)


def verify_data_local_mr(code, budget=RANK_BUDGET, sample=None, seed=0, jobs=1):
    """Every one-per-group puncturing of a data-local code leaves an MDS [k+h, k] code."""
    if code.topology.kind is not Kind.DATA_LOCAL:
        raise ValueError("verify_data_local_mr needs a data-local code")
    return verify_global_rows(code.topology, code.field, code.global_rows(), budget, sample, seed, jobs)


def verify(code, **kw):
    """Default route is the difference-set test; ``oracle=True`` picks the rank route."""
    if kw.pop("oracle", False):
        kw.pop("chunk", None)
        if code.topology.kind is Kind.DATA_LOCAL:
            return verify_data_local_mr(code, **kw)
        return verify_mr_oracle(code, **kw)
    return verify_mr(code, **kw)


def mr_mask(topology, field, G):
    """Which of a batch of global-row matrices G (B, h, n) give MR codes.

    Walks the puncturings in order and only keeps testing survivors.
    """
    G = np.asarray(G, dtype=np.uint64)
    alive = np.arange(G.shape[0])
    combos = kernels.combination_table(topology.k + topology.h, topology.h)
    for start, stop in _chunks(topology.num_punctures, 64):
        E = puncture_batch(topology, start, stop)
        for e in E:
            if not len(alive):
                break
            cols, _ = effective_columns(G[alive], topology, e[None])
            bad = kernels.first_singular(cols[:, 0], combos, field.degree, field.low)
            alive = alive[bad < 0]
    mask = np.zeros(G.shape[0], dtype=bool)
    mask[alive] = True
    return mask


# -- witness re-checks ----------------------------------------------------------

def pattern_correctable(field, H, erasures):
    """Erasures are recoverable iff their columns of H have full column rank."""
    erasures = sorted(erasures)
    if not erasures:
        return True
    sub = [[row[c] for c in erasures] for row in H.rows]
    return linalg.rank(field, sub) == len(erasures)


def witness_holds(code, verdict):
    """Re-derive a NotMR witness independently of the route that produced it."""
    w = verdict.witness
    if w is None:
        return False
    t = code.topology
    if len(w.puncture) != t.ell or len(w.erasures) > t.ell + t.h:
        return False
    if w.subset is not None:
        T = difference_set(code, w.puncture)
        x = 0
        for j in w.subset:
            x ^= T[j]
        if x != 0:
            return False
    return not pattern_correctable(code.field, build_parity_check(code), w.erasures)


def expected_rank_checks(topology):
    return topology.num_punctures * comb(topology.k + topology.h, topology.h)
