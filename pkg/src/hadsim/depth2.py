"""Closed-form output distribution of quantum-depth-2 circuits.

For a circuit H* . T . H* on basis input |a> (a != 0), the output
amplitude at label c != 0 is

    2^(1-n) * sum over the 2^(n-1) labels b with <a,b> = 0 of (-1)^<T(b),c>

and the amplitude at c = 0 vanishes.  The signed sum is an amplitude (it
can be negative); probabilities are its square.  Both a per-label evaluator
and an O(n 2^n) full-distribution fast path are provided, cross-checked
against dense simulation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels, statevec
from .circuit import BlackBoxPerm, Circuit, CircuitError, GlobalHadamard, Permutation


@dataclass(frozen=True)
class Depth2Instance:
    """Width, nonzero input label, and the middle basis permutation."""

    n: int
    a: int
    perm: Permutation

    def __post_init__(self):
        if not 1 <= self.a < (1 << self.n):
            raise CircuitError("input label must be nonzero and fit the width")
        if self.perm.nbits != self.n:
            raise CircuitError("permutation arity must equal the width")


def _parity_of(v: np.ndarray) -> np.ndarray:
    """Bit parity of each entry of an int64 array."""
    v = v.copy()
    for shift in (32, 16, 8, 4, 2, 1):
        v ^= v >> shift
    return v & 1


def _even_subspace_images(inst: Depth2Instance) -> np.ndarray:
    labels = np.arange(1 << inst.n, dtype=np.int64)
    even = labels[_parity_of(labels & inst.a) == 0]
    return inst.perm.table()[even]


def depth2_amplitude(inst: Depth2Instance, c: int) -> float:
    """Signed output amplitude at label c (exact up to float summation)."""
    if not 0 <= c < (1 << inst.n):
        raise CircuitError("label out of range")
    if c == 0:
        return 0.0
    images = _even_subspace_images(inst)
    signs = 1.0 - 2.0 * _parity_of(images & c)
    return float(signs.sum()) * 2.0 ** (1 - inst.n)


def depth2_amplitudes(inst: Depth2Instance) -> np.ndarray:
    """All 2^n amplitudes via one subset-restricted Walsh-Hadamard transform.

    The indicator of the permuted even-<a,.> subspace is transformed in
    O(n 2^n); every butterfly value is an integer below 2^n, so double
    precision is exact here.
    """
    size = 1 << inst.n
    mask = np.zeros(size, dtype=complex)
    mask[_even_subspace_images(inst)] = 1.0
    kernels.fwht_inplace(mask, inst.n)
    # kernel scale is 2^(-n/2); the formula wants 2^(1-n) per unnormalized sum
    amps = mask.real * (2.0 ** (1 - inst.n) * 2.0 ** (inst.n / 2.0))
    amps[0] = 0.0
    return amps


def depth2_distribution(inst: Depth2Instance) -> np.ndarray:
    """probability(c) = amplitude(c)^2; sums to 1."""
    return depth2_amplitudes(inst) ** 2


def depth2_circuit(inst: Depth2Instance) -> Circuit:
    """The simulable H* . T . H* circuit for cross-checking the formula."""
    return Circuit(
        inst.n,
        [GlobalHadamard(), BlackBoxPerm(inst.perm), GlobalHadamard()],
        input_spec=inst.a,
    )


def depth2_simulated(inst: Depth2Instance) -> np.ndarray:
    """Dense-simulation output distribution (the independent route)."""
    return statevec.run(depth2_circuit(inst)).distribution()


def max_deviation(inst: Depth2Instance) -> float:
    """Max |formula^2 - simulated| over labels; the --compare-sim diagnostic."""
    return float(np.max(np.abs(depth2_distribution(inst) - depth2_simulated(inst))))
