# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops for dense state evolution.

The arithmetic here must stay operation-for-operation identical to
``_kernels_fallback`` so that both backends produce bit-identical states.
"""

from libc.math cimport sqrt


def fwht_inplace(double complex[::1] amps, int n):
    """In-place Walsh-Hadamard butterfly over wires 0..n-1, then 2^(-n/2) scale."""
    cdef Py_ssize_t size = 1
    size <<= n
    cdef Py_ssize_t h, base, i
    cdef int w
    cdef double complex u, v
    for w in range(n):
        h = size >> (w + 1)
        base = 0
        while base < size:
            for i in range(base, base + h):
                u = amps[i]
                v = amps[i + h]
                amps[i] = u + v
                amps[i + h] = u - v
            base += 2 * h
    cdef double scale = 1.0 / sqrt(<double> size)
    for i in range(size):
        amps[i] = amps[i] * scale


def toffoli_inplace(double complex[::1] amps, unsigned long long cmask,
                    unsigned long long tmask):
    """Swap amplitude pairs z <-> z^tmask on labels where all cmask bits are set."""
    cdef Py_ssize_t size = amps.shape[0]
    cdef unsigned long long tlow = tmask & (~tmask + 1)
    cdef unsigned long long z
    cdef double complex tmp
    for z in range(<unsigned long long> size):
        if (z & cmask) == cmask and (z & tlow) == 0:
            tmp = amps[z]
            amps[z] = amps[z ^ tmask]
            amps[z ^ tmask] = tmp


def permute(double complex[::1] src, long long[::1] table, double complex[::1] dst):
    """Scatter dst[table[z]] = src[z]; table must be a bijection."""
    cdef Py_ssize_t size = src.shape[0]
    cdef Py_ssize_t z
    for z in range(size):
        dst[table[z]] = src[z]


def fwht_rows(double complex[:, ::1] mat, int n):
    """Row-batched version of fwht_inplace for 2D arrays of width 2^n."""
    cdef Py_ssize_t rows = mat.shape[0]
    cdef Py_ssize_t size = 1
    size <<= n
    cdef Py_ssize_t h, base, i, r
    cdef int w
    cdef double complex u, v
    cdef double scale = 1.0 / sqrt(<double> size)
    for r in range(rows):
        for w in range(n):
            h = size >> (w + 1)
            base = 0
            while base < size:
                for i in range(base, base + h):
                    u = mat[r, i]
                    v = mat[r, i + h]
                    mat[r, i] = u + v
                    mat[r, i + h] = u - v
                base += 2 * h
        for i in range(size):
            mat[r, i] = mat[r, i] * scale
