"""Systematic encoding and erasure decoding."""
from dataclasses import dataclass
from functools import lru_cache

from . import linalg
from .topology import build_parity_check


class EncodingError(ValueError):
    """The parity coordinates do not form an invertible submatrix."""


class DecodeError(ValueError):
    pass


class UncorrectableError(DecodeError):
    def __init__(self, erasures):
        super().__init__(f"erasure pattern {sorted(erasures)} is not correctable")
        self.erasures = frozenset(erasures)


class CorruptionError(DecodeError):
    """Known symbols are inconsistent with every codeword."""


@dataclass(frozen=True)
class Codeword:
    symbols: tuple
    erased: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(int(s) for s in self.symbols))
        object.__setattr__(self, "erased", frozenset(int(i) for i in self.erased))

    def erase(self, positions):
        return Codeword(self.symbols, self.erased | frozenset(positions))

    def __len__(self):
        return len(self.symbols)


@lru_cache(maxsize=64)
def _systematic(code):
    """Matrix P with parity = P @ data, from H_P x_P = H_D x_D."""
    t = code.topology
    H = build_parity_check(code).rows
    par, dat = t.parity_coords, t.data_coords
    HP = [[row[c] for c in par] for row in H]
    HD = [[row[c] for c in dat] for row in H]
    try:
        inv = linalg.inverse(code.field, HP)
    except ValueError:
        raise EncodingError("parity submatrix is singular; the code is not systematically encodable") from None
    return linalg.matmul(code.field, inv, HD)


def encode(code, data):
    t = code.topology
    data = [int(d) for d in data]
    if len(data) != t.k:
        raise ValueError(f"expected {t.k} data symbols, got {len(data)}")
    bad = [d for d in data if d not in code.field]
    if bad:
        raise ValueError(f"data symbols {[hex(d) for d in bad]} are outside GF(2^{code.field.degree})")
    parity = linalg.matvec(code.field, _systematic(code), data)
    out = [0] * t.n
    for c, v in zip(t.data_coords, data):
        out[c] = v
    for c, v in zip(t.parity_coords, parity):
        out[c] = v
    return Codeword(out)


def syndrome(code, symbols):
    return linalg.matvec(code.field, build_parity_check(code).rows, symbols)


def local_repair(code, symbols, pos):
    """Rebuild one coordinate from the rest of its group.

    Returns (value, positions read); exactly r symbols are read.
    """
    t = code.topology
    g = t.group_of(pos)
    if g is None:
        raise ValueError(f"coordinate {pos} has no local group")
    reads = tuple(c for c in t.groups[g] if c != pos)
    value = 0
    for c in reads:
        value ^= symbols[c]
    return value, reads


def decode_erasures(code, word, erasures=None):
    """Fill in erased coordinates.

    Groups with a single erasure are repaired by XOR first; whatever remains
    is solved from the full parity-check system.  Raises UncorrectableError
    when the erased columns are rank deficient and CorruptionError when the
    known symbols fit no codeword.
    """
    t = code.topology
    if isinstance(word, Codeword):
        symbols = list(word.symbols)
        erased = set(word.erased if erasures is None else erasures)
    else:
        symbols = [0 if s is None else int(s) for s in word]
        erased = set(erasures or ())
    if len(symbols) != t.n:
        raise ValueError(f"expected {t.n} symbols, got {len(symbols)}")
    bad = [c for c in erased if not 0 <= c < t.n]
    if bad:
        raise ValueError(f"erasure positions {sorted(bad)} out of range")
    original = frozenset(erased)
    for c in erased:
        symbols[c] = 0

    progress = True
    while progress:
        progress = False
        for g in t.groups:
            missing = [c for c in g if c in erased]
            if len(missing) == 1:
                symbols[missing[0]], _ = local_repair(code, symbols, missing[0])
                erased.discard(missing[0])
                progress = True

    H = build_parity_check(code).rows
    unknown = sorted(erased)
    known_part = [0] * len(H)
    for i, row in enumerate(H):
        s = 0
        for c, v in enumerate(symbols):
            if c not in erased and row[c] and v:
                s ^= code.field.mul(row[c], v)
        known_part[i] = s
    if not unknown:
        if any(known_part):
            raise CorruptionError("nonzero syndrome: known symbols are inconsistent")
        return Codeword(symbols)
    A = [[row[c] for c in unknown] for row in H]
    x, full, consistent = linalg.solve(code.field, A, known_part)
    if not full:
        raise UncorrectableError(original)
    if not consistent:
        raise CorruptionError("known symbols are inconsistent with every codeword")
    for c, v in zip(unknown, x):
        symbols[c] = v
    return Codeword(symbols)
