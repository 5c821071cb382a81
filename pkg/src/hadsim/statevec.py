"""Dense state-vector simulation of the restricted gate set.

Permutation gates move amplitudes by index only (no floating-point
arithmetic on the values), the global Hadamard layer is an in-place fast
Walsh-Hadamard butterfly in n*2^n operations, and measurement statistics
come from exact |amplitude|^2 arrays.  The butterfly runs over wires in
order 0..n-1, which fixes the summation order and makes runs
bit-reproducible on one platform.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .circuit import BlackBoxPerm, Circuit, CircuitError, GlobalHadamard, Toffoli, validate

DEFAULT_MAX_WIDTH = 24

_SYMBOL_AMPS = {
    "0": np.array([1.0, 0.0], dtype=complex),
    "1": np.array([0.0, 1.0], dtype=complex),
    "+": np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0),
    "-": np.array([1.0, -1.0], dtype=complex) / np.sqrt(2.0),
}


class WidthError(CircuitError):
    """Raised when a requested simulation exceeds the resource guard."""


class StateVector:
    """2^n complex amplitudes over n wires; wire w is bit n-1-w of the label."""

    __slots__ = ("n", "amps")

    def __init__(self, n: int, amps: np.ndarray):
        self.n = n
        self.amps = amps

    def copy(self) -> "StateVector":
        return StateVector(self.n, self.amps.copy())

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    # -- gate application (in place, returns self for chaining) --

    def apply_toffoli(self, controls, targets) -> "StateVector":
        controls = frozenset(controls)
        targets = frozenset(targets)
        _check_toffoli(self.n, controls, targets)
        cmask = _wire_mask(self.n, controls)
        tmask = _wire_mask(self.n, targets)
        kernels.toffoli_inplace(self.amps, cmask, tmask)
        return self

    def apply_global_hadamard(self) -> "StateVector":
        kernels.fwht_inplace(self.amps, self.n)
        return self

    def apply_permutation(self, gate_or_perm, wires=None, controls=()) -> "StateVector":
        if isinstance(gate_or_perm, BlackBoxPerm):
            gate = gate_or_perm
        else:
            gate = BlackBoxPerm(gate_or_perm, wires, controls)
        table = _full_table(self.n, gate)
        out = np.empty_like(self.amps)
        kernels.permute(self.amps, table, out)
        self.amps = out
        return self

    def apply_gate(self, gate) -> "StateVector":
        if isinstance(gate, GlobalHadamard):
            return self.apply_global_hadamard()
        if isinstance(gate, Toffoli):
            return self.apply_toffoli(gate.controls, gate.targets)
        if isinstance(gate, BlackBoxPerm):
            return self.apply_permutation(gate)
        raise CircuitError(f"unknown gate type {type(gate).__name__}")

    # -- readout --

    def distribution(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def marginal(self, wires) -> np.ndarray:
        """Exact joint distribution of the given wires, in the given order."""
        wires = list(wires)
        probs = self.distribution().reshape([2] * self.n)
        keep = set(wires)
        drop = tuple(w for w in range(self.n) if w not in keep)
        if drop:
            probs = probs.sum(axis=drop)
        remaining = [w for w in range(self.n) if w in keep]
        order = [remaining.index(w) for w in wires]
        return probs.transpose(order).reshape(-1)

    def sample(self, shots: int, seed: int | None = None) -> dict[int, int]:
        """Draw i.i.d. labels from the exact distribution; deterministic per seed."""
        if shots < 1:
            raise CircuitError("shots must be positive")
        rng = np.random.default_rng(seed)
        probs = self.distribution()
        probs = probs / probs.sum()
        labels = rng.choice(probs.shape[0], size=shots, p=probs)
        values, counts = np.unique(labels, return_counts=True)
        return {int(v): int(c) for v, c in zip(values, counts)}


def _wire_mask(n: int, wires) -> int:
    mask = 0
    for w in wires:
        mask |= 1 << (n - 1 - w)
    return mask


def _check_toffoli(n: int, controls: frozenset, targets: frozenset) -> None:
    if not targets:
        raise CircuitError("Toffoli target set is empty")
    if controls & targets:
        raise CircuitError("Toffoli controls and targets overlap")
    if any(not 0 <= w < n for w in controls | targets):
        raise CircuitError("Toffoli wire index out of range")


def _full_table(n: int, gate: BlackBoxPerm) -> np.ndarray:
    """Expand a (possibly controlled) subregister permutation to full labels."""
    wires = gate.resolved_wires(n)
    if gate.perm.nbits != len(wires):
        raise CircuitError("permutation arity does not match its register")
    sub_table = gate.perm.table()
    labels = np.arange(1 << n, dtype=np.int64)
    k = len(wires)
    sub = np.zeros_like(labels)
    for i, w in enumerate(wires):
        sub |= ((labels >> (n - 1 - w)) & 1) << (k - 1 - i)
    mapped = sub_table[sub]
    if gate.controls:
        cmask = _wire_mask(n, gate.controls)
        mapped = np.where((labels & cmask) == cmask, mapped, sub)
    out = labels.copy()
    for i, w in enumerate(wires):
        bit = (mapped >> (k - 1 - i)) & 1
        pos = n - 1 - w
        out = (out & ~(np.int64(1) << pos)) | (bit << pos)
    return out


def init(n: int, input_spec: str | int | None = None, max_width: int = DEFAULT_MAX_WIDTH) -> StateVector:
    """Product state from a per-wire symbol string over 01+- (or a basis label)."""
    if n < 1:
        raise CircuitError("need at least one wire")
    if n > max_width:
        raise WidthError(f"width {n} exceeds the resource guard ({max_width} wires)")
    if input_spec is None:
        input_spec = "0" * n
    if isinstance(input_spec, int):
        input_spec = format(input_spec, f"0{n}b")
    if len(input_spec) != n:
        raise CircuitError("input spec length must equal wire count")
    amps = np.array([1.0 + 0.0j])
    for symbol in input_spec:
        try:
            amps = np.kron(amps, _SYMBOL_AMPS[symbol])
        except KeyError:
            raise CircuitError(f"unknown input symbol {symbol!r}") from None
    return StateVector(n, amps)


def run(
    circuit: Circuit,
    state: StateVector | None = None,
    max_width: int = DEFAULT_MAX_WIDTH,
) -> StateVector:
    """Fold the circuit's gates in order over ``state`` (default: its own input)."""
    violations = validate(circuit)
    if violations:
        raise CircuitError("; ".join(str(v) for v in violations))
    if state is None:
        state = init(circuit.width, circuit.input_spec, max_width=max_width)
    elif state.n != circuit.width:
        raise CircuitError(f"state width {state.n} does not match circuit width {circuit.width}")
    for gate in circuit.gates:
        state.apply_gate(gate)
    return state


def inner_product(a: StateVector, b: StateVector) -> complex:
    """Hermitian inner product <a|b>."""
    if a.n != b.n:
        raise CircuitError("states have different widths")
    return complex(np.vdot(a.amps, b.amps))
