"""Small GF(2^n) arithmetic on integer-coded polynomials.

Used by the depth-0 search family: the trace form Tr(u*v) pairs every
hidden datum with a full matching of labels at odd dot-product parity,
which is what lets a single phase pass imprint a Hadamard-readable pattern.
Labels are field elements via their bit representation (bit i = coefficient
of x^i).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


def _poly_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def _poly_mul_mod(a: int, b: int, m: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
    return _poly_mod(r, m)


@lru_cache(maxsize=None)
def irreducible_poly(n: int) -> int:
    """Lexicographically smallest irreducible polynomial of degree n."""
    if n == 1:
        return 0b10  # x
    for cand in range((1 << n) + 1, 1 << (n + 1), 2):
        if all(
            _poly_divides(d, cand) is False
            for d in range(2, 1 << (n // 2 + 1))
            if d.bit_length() >= 2
        ):
            return cand
    raise RuntimeError("unreachable: irreducible polynomials exist for every degree")


def _poly_divides(d: int, a: int) -> bool:
    return _poly_mod(a, d) == 0


class GF2Field:
    """GF(2^n) with multiplication, Fermat inversion, and the trace map."""

    def __init__(self, n: int):
        self.n = n
        self.size = 1 << n
        self.modulus = irreducible_poly(n)

    def mul(self, a: int, b: int) -> int:
        return _poly_mul_mod(a, b, self.modulus)

    def pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in GF(2^n)")
        return self.pow(a, self.size - 2)

    def trace(self, a: int) -> int:
        t, u = 0, a
        for _ in range(self.n):
            t ^= u
            u = self.mul(u, u)
        return t & 1

    def trace_one_elements(self) -> list[int]:
        """The 2^(n-1) field elements of trace 1, ascending."""
        return [u for u in range(self.size) if self.trace(u) == 1]

    def mul_vec(self, c: int, v: np.ndarray) -> np.ndarray:
        """Vectorized field multiplication of every entry of v by the scalar c."""
        r = np.zeros_like(v)
        a = int(c)
        shift = 0
        while a:
            if a & 1:
                r ^= v << shift
            a >>= 1
            shift += 1
        # reduce modulo the field polynomial, top degree down
        top = 2 * self.n - 2
        for deg in range(top, self.n - 1, -1):
            mask = (r >> deg) & 1
            r ^= (mask * self.modulus) << (deg - self.n)
        return r

    def dot_to_trace_matrix(self) -> np.ndarray:
        """GF(2) matrix M with <u, M v> = Tr(u * v) for all u, v (bit vectors).

        Bit i of a label is coefficient x^i, so M[i, j] = Tr(x^(i+j)).
        """
        n = self.n
        M = np.zeros((n, n), dtype=np.uint8)
        for i in range(n):
            for j in range(n):
                M[i, j] = self.trace(_poly_mod(1 << (i + j), self.modulus))
        return M


def gf2_matrix_inverse(M: np.ndarray) -> np.ndarray:
    """Inverse of a GF(2) matrix by Gauss-Jordan elimination."""
    n = M.shape[0]
    aug = np.concatenate([M.astype(np.uint8) % 2, np.eye(n, dtype=np.uint8)], axis=1)
    row = 0
    for col in range(n):
        pivot = next((r for r in range(row, n) if aug[r, col]), None)
        if pivot is None:
            raise ValueError("matrix is singular over GF(2)")
        aug[[row, pivot]] = aug[[pivot, row]]
        for r in range(n):
            if r != row and aug[r, col]:
                aug[r] ^= aug[row]
        row += 1
    return aug[:, n:]


def gf2_matvec(M: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """Apply a GF(2) matrix to integer-coded bit vectors (bit i = coord i)."""
    n = M.shape[0]
    out = np.zeros_like(labels)
    for i in range(n):
        acc = np.zeros_like(labels)
        for j in range(n):
            if M[i, j]:
                acc ^= (labels >> j) & 1
        out |= (acc & 1) << i
    return out


@lru_cache(maxsize=8)
def _matched_context(n: int) -> tuple:
    """Per-width tables for the matched marks: inverse of M^-1-mapped labels
    plus the trace-1 scalars, cached since the field inversions dominate."""
    field = GF2Field(n)
    size = 1 << n
    Minv = gf2_matrix_inverse(field.dot_to_trace_matrix())
    y = gf2_matvec(Minv, np.arange(size, dtype=np.int64))
    yinv = np.zeros(size, dtype=np.int64)
    for lbl in range(1, size):
        yinv[lbl] = field.inv(int(y[lbl]))
    return field, yinv, tuple(field.trace_one_elements())


def matched_tau_tables(n: int, calls: int) -> list[np.ndarray]:
    """Mark tables tau_c(x) = c * (M^-1 x)^-1 with <tau_c(x), x> = 1 for x != 0.

    Distinct trace-1 scalars c give, for every x simultaneously, distinct
    marks all lying at odd dot-parity with x; tau_c(0) = 0.  Each table is a
    bijection on labels.
    """
    field, yinv, cs = _matched_context(n)
    if calls > len(cs):
        raise ValueError(f"at most 2^(n-1) = {len(cs)} matched calls exist")
    tables = []
    for c in cs[:calls]:
        tab = field.mul_vec(c, yinv)
        tab[0] = 0
        tables.append(tab)
    return tables
