"""Code topologies, parity-check assembly and erasure-pattern classification.

Coordinate layout is fixed so that matrices and codewords are reproducible:

* local (k, r, h): ell = (k+h)/r groups of r primary symbols followed by the
  group's local parity.  The first k primary symbols are data, the last h are
  heavy parities.  n = k + h + ell.
* data-local (k, r, h): ell = k/r groups of r data symbols followed by the
  local parity, then the h heavy parities.  n = k + ell + h.

Slots inside a group are numbered from 0; slot r is the local parity.
"""
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import product

import numpy as np

from .gf2 import FieldDescriptor


class Kind(str, Enum):
    LOCAL = "local"
    DATA_LOCAL = "datalocal"


@dataclass(frozen=True)
class LocalTopology:
    k: int
    r: int
    h: int
    kind: Kind = Kind.LOCAL

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        for name in ("k", "r", "h"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
        if self.kind is Kind.LOCAL and (self.k + self.h) % self.r:
            raise ValueError(f"local code needs r | k+h, got k={self.k} r={self.r} h={self.h}")
        if self.kind is Kind.DATA_LOCAL and self.k % self.r:
            raise ValueError(f"data-local code needs r | k, got k={self.k} r={self.r}")

    @classmethod
    def local(cls, k, r, h):
        return cls(k, r, h, Kind.LOCAL)

    @classmethod
    def data_local(cls, k, r, h):
        return cls(k, r, h, Kind.DATA_LOCAL)

    @property
    def ell(self):
        if self.kind is Kind.LOCAL:
            return (self.k + self.h) // self.r
        return self.k // self.r

    @property
    def n(self):
        return self.k + self.h + self.ell

    @property
    def redundancy(self):
        return self.h + self.ell

    @cached_property
    def groups(self):
        """Coordinates of each local group; the last entry is the local parity."""
        w = self.r + 1
        return tuple(tuple(range(i * w, (i + 1) * w)) for i in range(self.ell))

    @cached_property
    def group_array(self):
        return np.array(self.groups, dtype=np.int64)

    @cached_property
    def local_parity_coords(self):
        return tuple(g[-1] for g in self.groups)

    @cached_property
    def primary_coords(self):
        """Data and heavy-parity coordinates, in coordinate order."""
        lp = set(self.local_parity_coords)
        return tuple(c for c in range(self.n) if c not in lp)

    @cached_property
    def data_coords(self):
        return self.primary_coords[: self.k]

    @cached_property
    def heavy_coords(self):
        return self.primary_coords[self.k:]

    @cached_property
    def parity_coords(self):
        return tuple(sorted(self.heavy_coords + self.local_parity_coords))

    @cached_property
    def ungrouped_coords(self):
        """Coordinates outside every local group (data-local heavy parities)."""
        if self.kind is Kind.LOCAL:
            return ()
        return self.heavy_coords

    @cached_property
    def _group_of(self):
        out = [None] * self.n
        for i, g in enumerate(self.groups):
            for c in g:
                out[c] = i
        return tuple(out)

    def group_of(self, coord):
        return self._group_of[coord]

    def puncture_coords(self, e):
        """Coordinates removed by the puncturing vector ``e`` (one slot per group)."""
        return tuple(self.groups[i][s] for i, s in enumerate(e))

    @property
    def num_punctures(self):
        return (self.r + 1) ** self.ell


@dataclass(frozen=True)
class ErasurePattern:
    coordinates: frozenset

    def __init__(self, coordinates):
        coords = tuple(coordinates)
        if len(set(coords)) != len(coords):
            raise ValueError("erasure pattern has duplicate coordinates")
        object.__setattr__(self, "coordinates", frozenset(int(c) for c in coords))

    def __len__(self):
        return len(self.coordinates)

    def __iter__(self):
        return iter(sorted(self.coordinates))

    def check(self, topology):
        bad = [c for c in self.coordinates if not 0 <= c < topology.n]
        if bad:
            raise ValueError(f"coordinates {sorted(bad)} out of range for n={topology.n}")
        return self

    def groups_touched(self, topology):
        return {topology.group_of(c) for c in self.coordinates} - {None}


class Correctability(str, Enum):
    POTENTIALLY_CORRECTABLE = "potentially-correctable"
    PROVABLY_UNCORRECTABLE = "provably-uncorrectable"


def classify_pattern(topology, pattern):
    """Apply the counting bound: touching t' groups with more than t' + h erasures is fatal.

    On these topologies the complement is exactly the set of patterns dominated
    by one erasure per group plus h more, all of which an MR code corrects.
    """
    if not isinstance(pattern, ErasurePattern):
        pattern = ErasurePattern(pattern)
    pattern.check(topology)
    touched = len(pattern.groups_touched(topology))
    if len(pattern) > touched + topology.h:
        return Correctability.PROVABLY_UNCORRECTABLE
    return Correctability.POTENTIALLY_CORRECTABLE


def enumerate_punctures(topology):
    """Every e in [r+1]^ell, lexicographically (0-based slots)."""
    return product(range(topology.r + 1), repeat=topology.ell)


def enumerate_mr_patterns(topology):
    """One coordinate per local group, in lexicographic order of the slot vector."""
    if topology.kind is not Kind.LOCAL:
        raise ValueError("enumerate_mr_patterns needs a local topology")
    for e in enumerate_punctures(topology):
        yield ErasurePattern(topology.puncture_coords(e))


def puncture_batch(topology, start, stop):
    """Slot vectors with lexicographic indices in [start, stop), shape (stop-start, ell)."""
    idx = np.arange(start, stop, dtype=np.int64)
    base = topology.r + 1
    out = np.empty((len(idx), topology.ell), dtype=np.int64)
    for i in range(topology.ell - 1, -1, -1):
        out[:, i] = idx % base
        idx //= base
    return out


def puncture_index(topology, e):
    idx = 0
    for s in e:
        idx = idx * (topology.r + 1) + int(s)
    return idx


@dataclass(frozen=True)
class CodeInstance:
    """A topology plus the multiset of generators alpha.

    For local codes ``alphas`` has one entry per coordinate (ell * (r+1) in
    coordinate order).  For data-local codes it has one entry per primary
    coordinate (k data then h heavy); local parities carry no generator.
    """
    topology: LocalTopology
    field: FieldDescriptor
    alphas: tuple

    def __post_init__(self):
        alphas = tuple(int(a) for a in self.alphas)
        object.__setattr__(self, "alphas", alphas)
        t = self.topology
        want = t.n if t.kind is Kind.LOCAL else t.k + t.h
        if len(alphas) != want:
            raise ValueError(f"expected {want} generators, got {len(alphas)}")
        bad = [a for a in alphas if a not in self.field]
        if bad:
            raise ValueError(f"generators {[hex(a) for a in bad]} are outside GF(2^{self.field.degree})")

    @cached_property
    def column_alphas(self):
        """Generator per coordinate; zero on data-local local parities."""
        t = self.topology
        if t.kind is Kind.LOCAL:
            return self.alphas
        out = [0] * t.n
        for c, a in zip(t.primary_coords, self.alphas):
            out[c] = a
        return tuple(out)

    def alpha_grid(self):
        """(ell, r+1) view of the generators of a local code."""
        if self.topology.kind is not Kind.LOCAL:
            raise ValueError("alpha_grid needs a local code")
        w = self.topology.r + 1
        return [list(self.alphas[i * w:(i + 1) * w]) for i in range(self.topology.ell)]

    def global_rows(self):
        """The h global rows: row j holds alpha^(2^j) per coordinate."""
        f = self.field
        row = list(self.column_alphas)
        rows = [row]
        for _ in range(self.topology.h - 1):
            row = [f.mul(a, a) for a in row]
            rows.append(row)
        return rows


@dataclass(frozen=True)
class ParityCheckMatrix:
    rows: tuple
    h: int
    ell: int

    @property
    def shape(self):
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    @property
    def global_rows(self):
        return self.rows[: self.h]

    @property
    def local_rows(self):
        return self.rows[self.h:]

    def as_array(self):
        return np.array(self.rows, dtype=np.uint64)


def local_rows(topology):
    rows = []
    for g in topology.groups:
        row = [0] * topology.n
        for c in g:
            row[c] = 1
        rows.append(row)
    return rows


def parity_check_from_global(topology, global_rows):
    rows = [tuple(int(x) for x in row) for row in global_rows]
    rows += [tuple(row) for row in local_rows(topology)]
    return ParityCheckMatrix(tuple(rows), topology.h, topology.ell)


def build_parity_check(code):
    """(h + ell) x n parity-check matrix: Frobenius global rows, then 0/1 local rows."""
    return parity_check_from_global(code.topology, code.global_rows())
