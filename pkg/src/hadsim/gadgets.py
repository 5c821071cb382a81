"""Builders for the named circuit fragments.

Every builder returns an ordinary ``Circuit`` (no input spec), so fragments
concatenate with ``+`` and validate like any other circuit.
"""

from __future__ import annotations

from .circuit import Circuit, CircuitError, GlobalHadamard, Toffoli


def swap_from_cnots(width: int, p: int, q: int) -> Circuit:
    """SWAP(p, q) as three CNOTs."""
    if p == q:
        raise CircuitError("swap needs two distinct wires")
    return Circuit(
        width,
        [Toffoli({p}, {q}), Toffoli({q}, {p}), Toffoli({p}, {q})],
    )


def local_hadamard_gadget(
    width: int, a: int, b: int, c: int, d: int, swap_after: bool = True
) -> Circuit:
    """Constant-depth fragment realizing a local Hadamard on wire d.

    The 5-gate core (two Toffolis on b and one on a, all controlled by c and
    d, around two global Hadamard layers) plus a swap of c and d.  With
    wires (a, b) prepared as |1-> the net effect is a Hadamard on wire d
    with a and b restored.  Wire c is collateral: it ends up holding the
    Hadamard of its own input rather than its input, so callers must treat
    it as scratch unless its data was fully mixed.
    """
    if len({a, b, c, d}) != 4:
        raise CircuitError("gadget wires must be distinct")
    core = Circuit(
        width,
        [
            Toffoli({c, d}, {b}),
            GlobalHadamard(),
            Toffoli({c, d}, {a}),
            GlobalHadamard(),
            Toffoli({c, d}, {b}),
        ],
    )
    swap = swap_from_cnots(width, c, d)
    return core + swap if swap_after else swap + core


def local_hadamard_core(width: int, a: int, b: int, c: int, d: int) -> Circuit:
    """The 5-gate core of the local Hadamard gadget, without the c/d swap."""
    gadget = local_hadamard_gadget(width, a, b, c, d)
    return Circuit(width, gadget.gates[:5])


def phase_flip_gadget(
    width: int, predicate_controls, minus_wire: int
) -> Circuit:
    """Flip the amplitude sign exactly on basis states satisfying a conjunction.

    ``predicate_controls`` is an iterable of ``(wire, polarity)`` pairs with
    polarity ``'+'`` (wire must read 1) or ``'-'`` (wire must read 0).
    Negative polarities are realized by X conjugation, i.e. control-free
    Toffolis flipping those wires before and after the central gate.  The
    central generalized Toffoli targets ``minus_wire``, which must hold |->
    for the sign flip (phase kickback) to appear.
    """
    pairs = list(predicate_controls)
    wires = [w for w, _ in pairs]
    if len(set(wires)) != len(wires):
        raise CircuitError("predicate repeats a wire")
    if minus_wire in wires:
        raise CircuitError("minus wire overlaps the predicate wires")
    negatives = {w for w, pol in pairs if pol == "-"}
    if any(pol not in "+-" for _, pol in pairs):
        raise CircuitError("polarity must be '+' or '-'")
    gates = []
    if negatives:
        gates.append(Toffoli((), negatives))
    gates.append(Toffoli(set(wires), {minus_wire}))
    if negatives:
        gates.append(Toffoli((), negatives))
    return Circuit(width, gates)


def conjugated_toffoli(width: int, controls, targets) -> Circuit:
    """The basis-exchanged Toffoli: a Toffoli between two global Hadamards."""
    return Circuit(
        width,
        [GlobalHadamard(), Toffoli(controls, targets), GlobalHadamard()],
    )
