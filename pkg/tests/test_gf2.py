import numpy as np
import pytest
from hypothesis import given, strategies as st

from mrlc import gf2
from mrlc._irreducible import SMALLEST_IRREDUCIBLE
from mrlc.gf2 import make_field

from oracles import irreducible_by_trial_division, poly_mul_reduce


def all_pairs(f):
    a, b = np.meshgrid(np.arange(f.size, dtype=np.uint64), np.arange(f.size, dtype=np.uint64))
    return a.ravel(), b.ravel()


# -- modulus table ------------------------------------------------------------

def test_table_is_smallest_irreducible_small_degrees():
    for d in range(1, 13):
        f = SMALLEST_IRREDUCIBLE[d]
        assert f.bit_length() - 1 == d
        assert irreducible_by_trial_division(f)
        assert not any(irreducible_by_trial_division(g) for g in range(1 << d, f))


def test_table_rederived_up_to_64():
    for d in range(1, 65):
        assert gf2.smallest_irreducible(d) == SMALLEST_IRREDUCIBLE[d]


def test_rabin_agrees_with_trial_division():
    for f in range(2, 1 << 11):
        assert gf2.is_irreducible(f) == irreducible_by_trial_division(f), hex(f)


def test_make_field_examples():
    assert make_field(1).modulus == 0x2
    assert make_field(2).modulus == 0b111
    assert make_field(8).modulus == 0x11B
    f16 = make_field(16, 4)
    image = set(f16.subfield_elements())
    assert len(image) == 16
    assert all(f16.mul(a, b) in image for a in image for b in image)
    assert all(a ^ b in image for a in image for b in image)


@pytest.mark.parametrize("bad", [0, 65, -3])
def test_make_field_rejects_degree(bad):
    with pytest.raises(ValueError):
        make_field(bad)


def test_make_field_rejects_subfield():
    with pytest.raises(ValueError):
        make_field(8, 3)
    with pytest.raises(ValueError):
        make_field(8, None, 0x11F)  # reducible


def test_gf2_has_two_elements():
    f = make_field(1)
    assert [f.mul(a, b) for a in (0, 1) for b in (0, 1)] == [0, 0, 0, 1]
    assert f.inv(1) == 1


# -- multiplication -------------------------------------------------------------

def test_mul_examples_gf4():
    f = make_field(2)
    assert all(f.mul(a, 1) == a for a in range(4))
    assert f.mul(0b10, 0b10) == 0b11


def test_inverse_gf256():
    f = make_field(8)
    for a in range(1, 256):
        assert f.mul(a, f.inv(a)) == 1
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


@pytest.mark.parametrize("t", [1, 2, 3, 4, 8])
def test_mul_matches_schoolbook(t):
    f = make_field(t)
    a, b = all_pairs(f)
    ref = [poly_mul_reduce(int(x), int(y), f.modulus) for x, y in zip(a, b)]
    assert [f.mul(int(x), int(y)) for x, y in zip(a, b)] == ref
    assert f.mul_array(a, b).tolist() == ref


@given(st.integers(9, 64), st.data())
def test_mul_matches_schoolbook_large(t, data):
    f = make_field(t)
    a = data.draw(st.integers(0, f.mask))
    b = data.draw(st.integers(0, f.mask))
    assert f.mul(a, b) == poly_mul_reduce(a, b, f.modulus)
    assert int(f.mul_array(np.uint64(a), np.uint64(b))) == f.mul(a, b)


@pytest.mark.parametrize("t", [1, 2, 3, 4])
def test_field_axioms_exhaustive(t):
    f = make_field(t)
    E = range(f.size)
    for a in E:
        assert f.mul(a, 1) == a and f.mul(a, 0) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1
        for b in E:
            assert f.mul(a, b) == f.mul(b, a)
            for c in E:
                assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                assert f.mul(a, b ^ c) == f.mul(a, b) ^ f.mul(a, c)


def test_field_axioms_gf256_vectorised():
    f = make_field(8)
    x = np.arange(256, dtype=np.uint64)
    a, b, c = (g.ravel() for g in np.meshgrid(x, x, x, indexing="ij"))
    ab = f.mul_array(a, b)
    assert np.array_equal(ab, f.mul_array(b, a))
    assert np.array_equal(f.mul_array(ab, c), f.mul_array(a, f.mul_array(b, c)))
    assert np.array_equal(f.mul_array(a, b ^ c), ab ^ f.mul_array(a, c))
    inv = np.array([0] + [f.inv(int(v)) for v in x[1:]], dtype=np.uint64)
    assert np.all(f.mul_array(x[1:], inv[1:]) == 1)


# -- Frobenius ------------------------------------------------------------------

@pytest.mark.parametrize("t", [1, 2, 4, 8])
def test_frobenius_is_automorphism(t):
    f = make_field(t)
    for a in range(f.size):
        assert gf2.frobenius_power(f, a, 0) == a
        assert gf2.frobenius_power(f, a, t) == a
        for b in range(f.size):
            fa, fb = f.frobenius_power(a, 1), f.frobenius_power(b, 1)
            assert f.frobenius_power(a ^ b, 1) == fa ^ fb
            assert f.frobenius_power(f.mul(a, b), 1) == f.mul(fa, fb)
    images = {f.frobenius_power(a, 1) for a in range(f.size)}
    assert len(images) == f.size


@given(st.integers(0, 2 ** 16 - 1), st.integers(0, 2 ** 16 - 1), st.integers(0, 40))
def test_frobenius_additive(a, b, j):
    f = make_field(16)
    assert f.frobenius_power(a ^ b, j) == f.frobenius_power(a, j) ^ f.frobenius_power(b, j)


# -- towers ---------------------------------------------------------------------

@pytest.mark.parametrize("t,r", [(4, 2), (8, 4), (16, 4), (16, 8), (6, 3), (8, 2), (4, 1), (8, 8)])
def test_subfield_embedding_is_homomorphism(t, r):
    f = make_field(t, r)
    sub = f.subfield
    emb = [f.embed(c) for c in range(sub.size)]
    assert len(set(emb)) == sub.size
    for a in range(sub.size):
        for b in range(sub.size):
            assert emb[a ^ b] == emb[a] ^ emb[b]
            assert emb[sub.mul(a, b)] == f.mul(emb[a], emb[b])


@pytest.mark.parametrize("t,r", [(4, 2), (8, 4), (16, 4), (16, 8), (12, 3), (12, 6)])
def test_subfield_image_is_frobenius_fixed_points(t, r):
    f = make_field(t, r)
    x = np.arange(f.size, dtype=np.uint64)
    y = x.copy()
    for _ in range(r):
        y = f.mul_array(y, y)
    fixed = set(x[y == x].tolist())
    assert fixed == set(f.subfield_elements())


def test_subfield_root_is_smallest_root():
    f = make_field(16, 4)
    sub_mod = SMALLEST_IRREDUCIBLE[4]

    def p(v):
        acc = 0
        for bit in range(4, -1, -1):
            acc = f.mul(acc, v) ^ (sub_mod >> bit & 1)
        return acc

    roots = [v for v in range(f.size) if p(v) == 0]
    assert len(roots) == 4
    assert f.subfield_root == min(roots)


def test_decompose_examples():
    f = make_field(4, 2)
    assert gf2.decompose_over_subfield(f, 0) == (0, 0)
    for a in range(16):
        assert gf2.compose_over_subfield(f, f.decompose(a)) == a
        for b in range(16):
            da, db = f.decompose(a), f.decompose(b)
            assert f.decompose(a ^ b) == tuple(x ^ y for x, y in zip(da, db))
    for v0 in range(4):
        for v1 in range(4):
            assert f.decompose(f.compose((v0, v1))) == (v0, v1)


def test_decompose_is_linear_over_subfield():
    f = make_field(8, 4)
    sub = f.subfield
    for a in range(0, 256, 7):
        for g in range(16):
            scaled = f.decompose(f.mul(f.embed(g), a))
            assert scaled == tuple(sub.mul(g, c) for c in f.decompose(a))


def test_decompose_requires_subfield():
    with pytest.raises(ValueError):
        make_field(8).decompose(3)


@given(st.lists(st.integers(0, 127), min_size=4, max_size=4))
def test_compose_decompose_roundtrip_gf2_28(coords):
    f = make_field(28, 7)
    assert f.decompose(f.compose(coords)) == tuple(coords)


def test_table_digest_is_stable():
    assert gf2.table_digest() == gf2.table_digest()
    assert len(gf2.table_digest()) == 64
