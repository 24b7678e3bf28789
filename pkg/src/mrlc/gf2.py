"""Arithmetic in GF(2^t) for 1 <= t <= 64.

Elements are plain Python ints holding t-bit masks in the polynomial basis
{1, x, ..., x^(t-1)}.  Addition is XOR.  A field may carry a designated
subfield GF(2^r), r | t, so that elements can be written as coordinate
vectors over it.
"""
from dataclasses import dataclass
from functools import cached_property, lru_cache
import hashlib

import numpy as np

from . import kernels
from ._irreducible import SMALLEST_IRREDUCIBLE

MAX_DEGREE = 64
# Locating the subfield enumerates all of its 2^r elements.
MAX_SUBFIELD_DEGREE = 20


# -- polynomials over GF(2) as bitmasks ---------------------------------------

def poly_mod(a, f):
    df = f.bit_length() - 1
    while a and a.bit_length() - 1 >= df:
        a ^= f << (a.bit_length() - 1 - df)
    return a


def poly_mulmod(a, b, f):
    top = f.bit_length() - 1
    a = poly_mod(a, f)
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> top:
            a ^= f
    return r


def poly_gcd(a, b):
    while b:
        a, b = b, poly_mod(a, b)
    return a


def _prime_factors(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f):
    """Rabin's test for a polynomial over GF(2) given as a bitmask."""
    n = f.bit_length() - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = 2

    def x_pow_2k(k):
        y = x
        for _ in range(k):
            y = poly_mulmod(y, y, f)
        return y

    if x_pow_2k(n) != x:
        return False
    return all(poly_gcd(f, x_pow_2k(n // p) ^ x) == 1 for p in _prime_factors(n))


def smallest_irreducible(degree):
    """Search upward from x^degree for the first irreducible polynomial."""
    f = 1 << degree
    while not is_irreducible(f):
        f += 1
    return f


def table_digest():
    """sha256 over the canonical modulus table, for comparing builds."""
    text = "\n".join(f"{d} {SMALLEST_IRREDUCIBLE[d]:#x}" for d in sorted(SMALLEST_IRREDUCIBLE))
    return hashlib.sha256(text.encode()).hexdigest()


# -- fields -------------------------------------------------------------------

@dataclass(frozen=True)
class FieldDescriptor:
    degree: int
    modulus: int
    subfield_degree: int | None = None
    # image of the subfield's generator x under the embedding
    subfield_root: int | None = None

    @property
    def size(self):
        return 1 << self.degree

    @property
    def mask(self):
        return self.size - 1

    @property
    def low(self):
        """Modulus with the x^t term dropped; what the kernels reduce with."""
        return self.modulus ^ (1 << self.degree)

    def __contains__(self, a):
        return isinstance(a, (int, np.integer)) and 0 <= a < self.size

    def elements(self):
        return range(self.size)

    def mul(self, a, b):
        t, f = self.degree, self.modulus
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> t:
                a ^= f
        return r

    def square(self, a):
        return self.mul(a, a)

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, self.size - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def frobenius_power(self, a, j):
        """a^(2^j)."""
        for _ in range(j % self.degree):
            a = self.mul(a, a)
        return a

    def mul_array(self, a, b):
        return kernels.gf_mul(a, b, self.degree, self.low)

    # -- subfield tower -------------------------------------------------------

    @cached_property
    def subfield(self):
        if self.subfield_degree is None:
            raise ValueError(f"GF(2^{self.degree}) has no subfield configured")
        return make_field(self.subfield_degree)

    @cached_property
    def _root_powers(self):
        return [self.pow(self.subfield_root, j) for j in range(self.subfield_degree)]

    def embed(self, c):
        """Map an element of the canonical GF(2^r) into this field."""
        pw = self._root_powers
        out, j = 0, 0
        while c:
            if c & 1:
                out ^= pw[j]
            c >>= 1
            j += 1
        return out

    @cached_property
    def _coordinates(self):
        # column (i*r + j) is embed(x_r^j) * x^i, with x the generator of this field
        r, d = self.subfield_degree, self.degree // self.subfield_degree
        cols = []
        for i in range(d):
            xi = self.pow(2, i) if i else 1
            cols.extend(self.mul(p, xi) for p in self._root_powers)
        inverse = _invert_gf2_columns(cols, self.degree)
        return cols, inverse

    def decompose(self, a):
        """Coordinates of ``a`` over the subfield, basis {1, x, ..., x^(d-1)}."""
        if self.subfield_degree is None:
            raise ValueError(f"GF(2^{self.degree}) has no subfield configured")
        _, inverse = self._coordinates
        m, b = 0, 0
        while a:
            if a & 1:
                m ^= inverse[b]
            a >>= 1
            b += 1
        r = self.subfield_degree
        sub = (1 << r) - 1
        return tuple((m >> (i * r)) & sub for i in range(self.degree // r))

    def compose(self, coords):
        if self.subfield_degree is None:
            raise ValueError(f"GF(2^{self.degree}) has no subfield configured")
        r, d = self.subfield_degree, self.degree // self.subfield_degree
        if len(coords) != d:
            raise ValueError(f"expected {d} coordinates, got {len(coords)}")
        cols, _ = self._coordinates
        out = 0
        for i, c in enumerate(coords):
            if not 0 <= c < (1 << r):
                raise ValueError(f"coordinate {c:#x} is not in GF(2^{r})")
            j = 0
            while c:
                if c & 1:
                    out ^= cols[i * r + j]
                c >>= 1
                j += 1
        return out

    def subfield_elements(self):
        """The embedded copy of GF(2^r), in the order of the canonical elements."""
        return [self.embed(c) for c in range(1 << self.subfield_degree)]


def _invert_gf2_columns(cols, t):
    """Given images of coordinate bits, return the coordinate mask of each unit element."""
    rows = [(v, 1 << i) for i, v in enumerate(cols)]
    pivots = {}
    for v, m in rows:
        for b, (pv, pm) in pivots.items():
            if v >> b & 1:
                v ^= pv
                m ^= pm
        if v == 0:
            raise ValueError("basis columns are linearly dependent")
        b = v.bit_length() - 1
        for ob, (pv, pm) in list(pivots.items()):
            if pv >> b & 1:
                pivots[ob] = (pv ^ v, pm ^ m)
        pivots[b] = (v, m)
    if len(pivots) != t:
        raise ValueError("basis does not span the field")
    out = [0] * t
    for b, (v, m) in pivots.items():
        assert v == 1 << b
        out[b] = m
    return out


def _subfield_root(field, r):
    """Smallest root, in bitmask order, of the canonical degree-r modulus."""
    sub_mod = SMALLEST_IRREDUCIBLE[r]
    t = field.degree
    # the trace down to GF(2^r) is onto, so traces of x^i span the subfield
    basis = {}
    for i in range(t):
        y = field.pow(2, i) if i else 1
        s = 0
        for _ in range(t // r):
            s ^= y
            y = field.frobenius_power(y, r)
        for b, pv in basis.items():
            if s >> b & 1:
                s ^= pv
        if s:
            basis[s.bit_length() - 1] = s
    elems = np.zeros(1, dtype=np.uint64)
    for v in basis.values():
        elems = np.concatenate([elems, elems ^ np.uint64(v)])
    assert len(elems) == 1 << r
    val = np.zeros_like(elems)
    for bit in range(r, -1, -1):
        val = field.mul_array(val, elems)
        if sub_mod >> bit & 1:
            val ^= np.uint64(1)
    roots = elems[val == 0]
    return int(roots.min())


@lru_cache(maxsize=None)
def make_field(degree, subfield_degree=None, modulus=None):
    """Build GF(2^degree), optionally with a GF(2^subfield_degree) tower.

    The modulus defaults to the lexicographically smallest irreducible
    polynomial of that degree.  The subfield embedding sends the canonical
    GF(2^r) generator to the smallest root of its modulus.
    """
    if not isinstance(degree, int) or not 1 <= degree <= MAX_DEGREE:
        raise ValueError(f"field degree must be in [1, {MAX_DEGREE}], got {degree!r}")
    if modulus is None:
        modulus = SMALLEST_IRREDUCIBLE[degree]
    elif modulus.bit_length() - 1 != degree or not is_irreducible(modulus):
        raise ValueError(f"{modulus:#x} is not an irreducible polynomial of degree {degree}")
    base = FieldDescriptor(degree, modulus)
    if subfield_degree is None:
        return base
    if not isinstance(subfield_degree, int) or subfield_degree < 1 or degree % subfield_degree:
        raise ValueError(f"subfield degree {subfield_degree!r} does not divide {degree}")
    if subfield_degree > MAX_SUBFIELD_DEGREE:
        raise ValueError(f"subfield degree above {MAX_SUBFIELD_DEGREE} is not supported")
    root = _subfield_root(base, subfield_degree)
    return FieldDescriptor(degree, modulus, subfield_degree, root)


def with_subfield(field, subfield_degree):
    """Same field and modulus, re-equipped with a GF(2^r) tower."""
    if field.subfield_degree == subfield_degree:
        return field
    return make_field(field.degree, subfield_degree, field.modulus)


def mul(f, a, b):
    return f.mul(a, b)


def frobenius_power(f, a, j):
    if j < 0:
        raise ValueError("Frobenius exponent must be non-negative")
    return f.frobenius_power(a, j)


def decompose_over_subfield(f, a):
    return f.decompose(a)


def compose_over_subfield(f, coords):
    return f.compose(coords)


def format_element(a):
    return f"{a:#x}"


def parse_element(text, field=None):
    value = int(text, 16)
    if field is not None and value not in field:
        raise ValueError(f"{text} is not an element of GF(2^{field.degree})")
    return value
