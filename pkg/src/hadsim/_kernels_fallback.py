"""Pure-numpy implementations of the hot kernels.

Kept operation-for-operation equivalent to the Cython module ``_kernels``:
the per-wire butterfly order and the final scale are the same floating-point
expressions, so both backends return bit-identical arrays.
"""

import math

import numpy as np


def fwht_inplace(amps: np.ndarray, n: int) -> None:
    """In-place Walsh-Hadamard butterfly over wires 0..n-1, then 2^(-n/2) scale."""
    size = 1 << n
    for w in range(n):
        h = size >> (w + 1)
        view = amps.reshape(-1, 2, h)
        u = view[:, 0, :].copy()
        v = view[:, 1, :]
        view[:, 0, :] = u + v
        view[:, 1, :] = u - v
    amps *= 1.0 / math.sqrt(float(size))


def toffoli_inplace(amps: np.ndarray, cmask: int, tmask: int) -> None:
    """Swap amplitude pairs z <-> z^tmask on labels where all cmask bits are set."""
    tlow = tmask & -tmask
    z = np.arange(amps.shape[0], dtype=np.int64)
    sel = z[((z & cmask) == cmask) & ((z & tlow) == 0)]
    if sel.size:
        other = sel ^ tmask
        tmp = amps[sel].copy()
        amps[sel] = amps[other]
        amps[other] = tmp


def permute(src: np.ndarray, table: np.ndarray, dst: np.ndarray) -> None:
    """Scatter dst[table[z]] = src[z]; table must be a bijection."""
    dst[table] = src


def fwht_rows(mat: np.ndarray, n: int) -> None:
    """Row-batched version of fwht_inplace for 2D arrays of width 2^n."""
    size = 1 << n
    rows = mat.shape[0]
    for w in range(n):
        h = size >> (w + 1)
        view = mat.reshape(rows, -1, 2, h)
        u = view[:, :, 0, :].copy()
        v = view[:, :, 1, :]
        view[:, :, 0, :] = u + v
        view[:, :, 1, :] = u - v
    mat *= 1.0 / math.sqrt(float(size))
