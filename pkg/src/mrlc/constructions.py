"""Explicit MR local codes and the local -> data-local reduction.

Both constructions produce the generator multiset S = {alpha[i][s]} of a
code C(S, r, h) whose global rows are Frobenius powers of S.

basic      n = k+h+ell nonzero beta in GF(2^m), n <= 2^m - 1, and
           alpha = (beta, beta^3, ..., beta^(2h-1)) read as a vector over
           GF(2^m) inside GF(2^(hm)).  S is 2h-wise independent over GF(2).
optimized  alpha[i][s] = lambda_i * xi_s with xi = basis of GF(2^r) plus 0,
           and lambda_i = (1, beta_i, beta_i^2, ..., beta_i^(h-1)) over GF(2^r),
           dropping the powers beta^j with 2^r | j.
"""
from dataclasses import dataclass, field as dc_field

from .gf2 import MAX_DEGREE, make_field
from .topology import CodeInstance, Kind, LocalTopology
from .verification import is_independent, is_weakly_independent


class PreconditionError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message if witness is None else f"{message}; witness {witness}")
        self.witness = witness


@dataclass(frozen=True)
class GeneratorSetReport:
    set_kind: str                 # basic | optimized | custom
    field_degree: int
    params: dict = dc_field(default_factory=dict)
    alphas: tuple = ()
    betas: tuple = ()
    s1: tuple = ()                # xi values, in GF(2^r)
    s2: tuple = ()                # lambda values, in GF(2^t)


def _min_m(pred):
    m = 1
    while not pred(m):
        m += 1
    return m


def basic_parameters(k, r, h):
    """(n, m, t) for the basic construction, without building anything."""
    topo = LocalTopology.local(k, r, h)
    n = topo.n
    m = _min_m(lambda m: n <= 2 ** m - 1)
    return n, m, h * m


def optimized_parameters(k, r, h):
    """(ell, m, t) with t = r + m * ceil((h-1)(1 - 2^-r))."""
    topo = LocalTopology.local(k, r, h)
    ell = topo.ell
    m = _min_m(lambda m: m % r == 0 and ell <= 2 ** m)
    # ceil((h-1)(1 - 1/2^r)) == (h-1) - floor((h-1)/2^r)
    kept = (h - 1) - (h - 1) // 2 ** r
    return ell, m, r + m * kept


def _check_degree(t, what):
    if t > MAX_DEGREE:
        raise ValueError(f"{what} needs GF(2^{t}); field degrees above {MAX_DEGREE} are not supported")


def basic_generators(k, r, h):
    n, m, t = basic_parameters(k, r, h)
    _check_degree(t, "basic construction")
    small = make_field(m)
    big = make_field(t, m)
    betas = tuple(range(1, n + 1))
    alphas = tuple(big.compose([small.pow(b, 2 * j + 1) for j in range(h)]) for b in betas)
    return GeneratorSetReport("basic", t, {"m": m, "n": n}, alphas, betas)


def construct_basic(k, r, h):
    rep = basic_generators(k, r, h)
    return CodeInstance(LocalTopology.local(k, r, h), make_field(rep.field_degree), rep.alphas)


def optimized_generators(k, r, h):
    ell, m, t = optimized_parameters(k, r, h)
    _check_degree(t, "optimized construction")
    big = make_field(t, r)
    mid = make_field(m, r)
    powers = [j for j in range(1, h) if j % 2 ** r]
    betas = tuple(range(ell))
    lambdas = []
    for b in betas:
        coords = [1]
        for j in powers:
            coords.extend(mid.decompose(mid.pow(b, j)))
        lambdas.append(big.compose(coords))
    s1 = tuple(1 << s for s in range(r)) + (0,)
    return GeneratorSetReport("optimized", t, {"m": m, "ell": ell, "a": r, "b": t},
                              (), betas, s1, tuple(lambdas))


def combine_sets(s1, s2, r, h, field):
    """Product-set code C(S1 * S2, r, h) over ``field``.

    ``s1`` (r+1 elements) lives in the subfield GF(2^a) of ``field`` in its
    canonical representation; ``s2`` (ell elements) lives in ``field``.
    """
    s1, s2 = tuple(s1), tuple(s2)
    if field.subfield_degree is None:
        raise ValueError("combine_sets needs a field with a subfield tower")
    if len(s1) != r + 1:
        raise PreconditionError(f"S1 must have r+1 = {r + 1} elements, got {len(s1)}")
    sub = field.subfield
    bad = [x for x in s1 if x not in sub]
    if bad:
        raise PreconditionError(f"S1 elements {bad} are not in GF(2^{sub.degree})")
    need = h if h % 2 == 0 else h + 1
    weak = is_weakly_independent(s1, need)
    if not weak:
        raise PreconditionError(f"S1 is not {need}-wise weakly independent",
                                tuple(s1[i] for i in weak.witness))
    ind = is_independent(s2, h, over=field)
    if not ind:
        raise PreconditionError(f"S2 is not {h}-wise independent over GF(2^{sub.degree})",
                                tuple(s2[i] for i in ind.witness))
    k = len(s2) * r - h
    if k < 1:
        raise PreconditionError(f"ell * r - h = {k} leaves no data symbols")
    xis = [field.embed(x) for x in s1]
    alphas = tuple(field.mul(lam, xi) for lam in s2 for xi in xis)
    return CodeInstance(LocalTopology.local(k, r, h), make_field(field.degree, None, field.modulus), alphas)


def construct_optimized(k, r, h):
    rep = optimized_generators(k, r, h)
    return combine_sets(rep.s1, rep.s2, r, h, make_field(rep.field_degree, r))


def construct(kind, k, r, h):
    if kind == "basic":
        return construct_basic(k, r, h)
    if kind == "optimized":
        return construct_optimized(k, r, h)
    raise ValueError(f"unknown construction {kind!r}")


def derive_data_local(code, k_target=None):
    """Data-local (k', r, h) code from a local (k, r, h) code.

    The first k'/r groups become data groups.  Local parities of the other
    groups are dropped after being eliminated from the global rows; when
    k' < k the first k - k' primary symbols outside the data groups are
    pinned to zero and dropped, and the remaining h become heavy parities.
    """
    t = code.topology
    if t.kind is not Kind.LOCAL:
        raise ValueError("derive_data_local needs a local code")
    k2 = (t.k // t.r) * t.r if k_target is None else k_target
    if not isinstance(k2, int) or k2 < t.r or k2 > t.k or k2 % t.r:
        raise ValueError(f"k_target must be a multiple of r={t.r} in [{t.r}, {t.k}], got {k2!r}")
    grid = code.alpha_grid()
    folded = [[row[s] ^ row[t.r] for s in range(t.r)] for row in grid]
    n_data = k2 // t.r
    data = [a for row in folded[:n_data] for a in row]
    rest = [a for row in folded[n_data:] for a in row]
    heavy = rest[t.k - k2:]
    assert len(heavy) == t.h
    return CodeInstance(LocalTopology.data_local(k2, t.r, t.h), code.field, tuple(data + heavy))
