import numpy as np
import pytest

from hadsim import gf2


@pytest.mark.parametrize("n", [2, 3, 4, 6, 8])
def test_field_axioms(n):
    f = gf2.GF2Field(n)
    rng = np.random.default_rng(n)
    for _ in range(50):
        a, b, c = (int(v) for v in rng.integers(0, f.size, 3))
        assert f.mul(a, b) == f.mul(b, a)
        assert f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)
        assert f.mul(a, b ^ c) == f.mul(a, b) ^ f.mul(a, c)
        assert f.mul(a, 1) == a
    for a in range(1, f.size):
        assert f.mul(a, f.inv(a)) == 1


def test_trace_is_additive_and_balanced():
    f = gf2.GF2Field(6)
    ones = f.trace_one_elements()
    assert len(ones) == f.size // 2
    rng = np.random.default_rng(0)
    for _ in range(50):
        a, b = (int(v) for v in rng.integers(0, f.size, 2))
        assert f.trace(a ^ b) == (f.trace(a) ^ f.trace(b))


def test_mul_vec_matches_scalar():
    f = gf2.GF2Field(7)
    v = np.arange(f.size, dtype=np.int64)
    for c in (1, 2, 77, 128 - 1):
        vec = f.mul_vec(c, v)
        for z in (0, 1, 5, 100, 127):
            assert int(vec[z]) == f.mul(c, z)


def test_trace_matrix_and_inverse():
    for n in (3, 5, 8):
        f = gf2.GF2Field(n)
        M = f.dot_to_trace_matrix()
        Minv = gf2.gf2_matrix_inverse(M)
        prod = (M.astype(int) @ Minv.astype(int)) % 2
        assert np.array_equal(prod, np.eye(n, dtype=int))
        # <u, Mv> = Tr(uv) on random pairs
        rng = np.random.default_rng(n)
        labels = np.arange(f.size, dtype=np.int64)
        Mv = gf2.gf2_matvec(M, labels)
        for _ in range(30):
            u, v = (int(x) for x in rng.integers(0, f.size, 2))
            dot = bin(u & int(Mv[v])).count("1") & 1
            assert dot == f.trace(f.mul(u, v))


def test_matched_tables_are_odd_parity_bijections():
    n = 6
    tables = gf2.matched_tau_tables(n, 12)
    assert len(tables) == 12
    seen = set()
    for tab in tables:
        assert np.unique(tab).shape[0] == tab.shape[0]  # bijection
        assert tab[0] == 0
        for x in range(1, 1 << n):
            assert bin(int(tab[x]) & x).count("1") & 1 == 1
        seen.add(tab.tobytes())
    assert len(seen) == 12  # distinct matchings


def test_matched_tables_limit():
    with pytest.raises(ValueError):
        gf2.matched_tau_tables(4, 9)


def test_singular_matrix_rejected():
    with pytest.raises(ValueError):
        gf2.gf2_matrix_inverse(np.zeros((3, 3), dtype=np.uint8))
