"""Backend agreement: the compiled kernels and the numpy fallback must give
bit-identical results, and both must match brute-force linear algebra."""

import numpy as np
import pytest

from hadsim import kernels


def random_state(rng, n):
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return (v / np.linalg.norm(v)).astype(complex)


def hadamard_matrix(n):
    h1 = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
    H = np.array([[1.0]])
    for _ in range(n):
        H = np.kron(H, h1)
    return H


@pytest.mark.parametrize("n", [1, 3, 6])
def test_fwht_matches_dense_matrix(n):
    rng = np.random.default_rng(n)
    v = random_state(rng, n)
    want = hadamard_matrix(n) @ v
    got = v.copy()
    kernels.fwht_inplace(got, n)
    assert np.max(np.abs(got - want)) < 1e-12


def test_fwht_involution():
    rng = np.random.default_rng(0)
    v = random_state(rng, 8)
    w = v.copy()
    kernels.fwht_inplace(w, 8)
    kernels.fwht_inplace(w, 8)
    assert np.max(np.abs(w - v)) < 1e-12


def test_backends_bit_identical():
    active, fallback = kernels.backend_pair()
    rng = np.random.default_rng(42)
    for n in (2, 5, 9):
        v = random_state(rng, n)
        a, b = v.copy(), v.copy()
        active.fwht_inplace(a, n)
        fallback.fwht_inplace(b, n)
        assert np.array_equal(a, b)

        a, b = v.copy(), v.copy()
        cmask, tmask = 1 << (n - 1), 0b11
        active.toffoli_inplace(a, cmask, tmask)
        fallback.toffoli_inplace(b, cmask, tmask)
        assert np.array_equal(a, b)

        table = rng.permutation(1 << n).astype(np.int64)
        outa, outb = np.empty_like(v), np.empty_like(v)
        active.permute(v, table, outa)
        fallback.permute(v, table, outb)
        assert np.array_equal(outa, outb)

        mat = np.stack([random_state(rng, n) for _ in range(4)])
        ma, mb = np.ascontiguousarray(mat), np.ascontiguousarray(mat.copy())
        active.fwht_rows(ma, n)
        fallback.fwht_rows(mb, n)
        assert np.array_equal(ma, mb)


def test_fwht_rows_matches_single():
    rng = np.random.default_rng(1)
    n = 6
    mat = np.stack([random_state(rng, n) for _ in range(5)])
    batch = np.ascontiguousarray(mat.copy())
    kernels.fwht_rows(batch, n)
    for i in range(5):
        row = mat[i].copy()
        kernels.fwht_inplace(row, n)
        assert np.array_equal(batch[i], row)


def test_toffoli_moves_only_selected_pairs():
    rng = np.random.default_rng(3)
    n = 5
    v = random_state(rng, n)
    w = v.copy()
    cmask, tmask = 0b10000, 0b00110
    kernels.toffoli_inplace(w, cmask, tmask)
    z = np.arange(1 << n)
    sel = (z & cmask) == cmask
    assert np.array_equal(w[~sel], v[~sel])
    assert np.array_equal(w[z[sel]], v[z[sel] ^ tmask])
