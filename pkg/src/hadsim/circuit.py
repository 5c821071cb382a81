"""Circuit representation for the restricted gate set.

Three gate variants exist: generalized Toffolis (computational-basis
permutations given by control/target wire sets), the global Hadamard layer
(one Hadamard on every wire simultaneously), and black-box label
permutations standing in for Toffoli-built classical maps whose synthesis
we deliberately do not perform.

Label convention: a basis label is an integer whose binary expansion read
most-significant-bit-first matches wire order, i.e. wire ``w`` of an
``n``-wire circuit is bit ``n-1-w`` of the label.  Input strings like
``"+-01"`` follow the same order (first character = wire 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

INPUT_SYMBOLS = "01+-"

#: Exhaustive bijection checking is affordable up to this permutation arity;
#: wider permutations are validated by random probing.
EXHAUSTIVE_PERM_BITS = 14


class CircuitError(ValueError):
    """Raised for malformed circuits, gates, or circuit files."""


# ---------------------------------------------------------------------------
# Permutations


class Permutation:
    """A bijection on k-bit labels with a printable name.

    ``forward``/``inverse`` act on integer labels in ``[0, 2^nbits)``.  A
    vectorized variant may be supplied for table construction speed; tables
    are cached after first use.
    """

    def __init__(
        self,
        name: str,
        nbits: int,
        forward: Callable[[int], int],
        inverse: Callable[[int], int],
        vector_forward: Callable[[np.ndarray], np.ndarray] | None = None,
    ):
        if nbits < 1:
            raise CircuitError("permutation arity must be at least 1")
        self.name = name
        self.nbits = nbits
        self.forward = forward
        self.inverse = inverse
        self._vector_forward = vector_forward
        self._table: np.ndarray | None = None
        self._inverse_table: np.ndarray | None = None

    def __repr__(self) -> str:
        return f"Permutation({self.name!r}, nbits={self.nbits})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Permutation)
            and self.name == other.name
            and self.nbits == other.nbits
        )

    def __hash__(self) -> int:
        return hash((self.name, self.nbits))

    def table(self) -> np.ndarray:
        """Forward lookup table as an int64 array of length 2^nbits."""
        if self._table is None:
            size = 1 << self.nbits
            labels = np.arange(size, dtype=np.int64)
            if self._vector_forward is not None:
                tab = np.asarray(self._vector_forward(labels), dtype=np.int64)
            else:
                tab = np.fromiter((self.forward(int(z)) for z in labels), np.int64, size)
            self._table = tab
        return self._table

    def inverse_table(self) -> np.ndarray:
        if self._inverse_table is None:
            tab = self.table()
            inv = np.empty_like(tab)
            inv[tab] = np.arange(tab.shape[0], dtype=np.int64)
            self._inverse_table = inv
        return self._inverse_table

    def check_bijection(self, rng: np.random.Generator | None = None) -> str | None:
        """Return a violation message if forward/inverse fail to compose to id."""
        size = 1 << self.nbits
        if self.nbits <= EXHAUSTIVE_PERM_BITS:
            tab = self.table()
            if np.unique(tab).shape[0] != size or tab.min() < 0 or tab.max() >= size:
                return f"permutation {self.name!r} is not a bijection"
            back = np.fromiter((self.inverse(int(z)) for z in tab), np.int64, size)
            if not np.array_equal(back, np.arange(size, dtype=np.int64)):
                return f"permutation {self.name!r}: inverse does not invert forward"
            return None
        rng = rng or np.random.default_rng(0)
        probes = rng.integers(0, size, 1024)
        for z in probes:
            y = self.forward(int(z))
            if not 0 <= y < size or self.inverse(y) != int(z):
                return f"permutation {self.name!r}: probe {int(z)} fails round-trip"
        return None


def identity_perm(nbits: int) -> Permutation:
    return Permutation("IDENTITY", nbits, lambda z: z, lambda z: z, lambda v: v.copy())


def xorconst_perm(k: int, nbits: int) -> Permutation:
    if not 0 <= k < (1 << nbits):
        raise CircuitError(f"XORCONST constant {k} out of range for {nbits} bits")
    return Permutation(
        f"XORCONST {k}", nbits, lambda z: z ^ k, lambda z: z ^ k, lambda v: v ^ k
    )


def flipzero_perm(nbits: int) -> Permutation:
    """Toggle the last wire of the register iff all other wires read 0.

    Targeting the last wire at a |-> ancilla turns this permutation into the
    flip-phase-about-zero map used by the search diffusion construction.
    """

    def fwd(z: int) -> int:
        return z ^ 1 if (z >> 1) == 0 else z

    def vec(v: np.ndarray) -> np.ndarray:
        return np.where((v >> 1) == 0, v ^ 1, v)

    return Permutation("FLIPZERO", nbits, fwd, fwd, vec)


def modmul_perm(multiplier: int, modulus: int, nbits: int | None = None) -> Permutation:
    """Multiply-by-constant map on labels coding units modulo ``modulus``.

    Labels x with 1 <= x < modulus and gcd(x, modulus) = 1 map to
    x * multiplier mod modulus; every other label (0, non-units, labels
    >= modulus) is fixed, which keeps the map a total bijection.
    """
    if modulus < 2:
        raise CircuitError("modulus must be at least 2")
    multiplier %= modulus
    if math.gcd(multiplier, modulus) != 1:
        raise CircuitError(f"multiplier {multiplier} not a unit modulo {modulus}")
    if nbits is None:
        nbits = max(1, (modulus - 1).bit_length())
    if (1 << nbits) < modulus:
        raise CircuitError(f"{nbits} bits cannot hold labels below {modulus}")
    inv_mult = pow(multiplier, -1, modulus)

    def _make(mult: int) -> Callable[[int], int]:
        def apply(z: int) -> int:
            if 1 <= z < modulus and math.gcd(z, modulus) == 1:
                return z * mult % modulus
            return z

        return apply

    def vec(v: np.ndarray) -> np.ndarray:
        unit = (v >= 1) & (v < modulus) & (np.gcd(v, modulus) == 1)
        return np.where(unit, v * multiplier % modulus, v)

    return Permutation(
        f"MODMUL {multiplier} {modulus}", nbits, _make(multiplier), _make(inv_mult), vec
    )


def table_perm(name: str, table: Sequence[int] | np.ndarray) -> Permutation:
    """Permutation from an explicit forward lookup table (length must be 2^k)."""
    tab = np.asarray(table, dtype=np.int64)
    nbits = int(tab.shape[0]).bit_length() - 1
    if tab.shape[0] != (1 << nbits):
        raise CircuitError("table length must be a power of two")
    if np.unique(tab).shape[0] != tab.shape[0] or tab.min() < 0 or tab.max() >= tab.shape[0]:
        raise CircuitError(f"table for {name!r} is not a bijection (duplicate image)")
    inv = np.empty_like(tab)
    inv[tab] = np.arange(tab.shape[0], dtype=np.int64)
    perm = Permutation(
        name,
        nbits,
        lambda z: int(tab[z]),
        lambda z: int(inv[z]),
        lambda v: tab[v],
    )
    perm._table = tab
    perm._inverse_table = inv
    return perm


def random_perm(nbits: int, seed: int) -> Permutation:
    rng = np.random.default_rng(seed)
    return table_perm(f"RANDOM {seed}", rng.permutation(1 << nbits).astype(np.int64))


def oracle_flip_perm(x: int, nbits: int, N: int | None = None) -> Permutation:
    """Search-oracle permutation on (search wires + minus wire).

    Registers are [s search bits][1 minus bit]; the minus bit toggles
    exactly when the first log2(N) search bits read x, so targeting a |->
    wire realizes the hidden-datum phase flip.
    """
    s = nbits - 1
    if s < 1:
        raise CircuitError("oracle register needs at least one search wire")
    if N is None:
        N = 1 << s
    bits = N.bit_length() - 1
    if (1 << bits) != N or bits > s:
        raise CircuitError("oracle range must be a power of two within the register")
    if not 0 <= x < N:
        raise CircuitError("hidden datum outside the oracle range")
    shift = 1 + (s - bits)

    def fwd(z: int) -> int:
        return z ^ ((z >> shift) == x)

    return Permutation(
        f"ORACLE {x} {N}",
        nbits,
        fwd,
        fwd,
        lambda v: v ^ ((v >> shift) == x).astype(np.int64),
    )


def matched_step_perm(nbits: int, slot: int, calls: int) -> Permutation:
    """Slot ``slot`` of the depth-0 matched search construction.

    Slots 0..calls-1 route, at each oracle position j, every datum's j-th
    mark into the oracle's check; slot ``calls`` is the closing permutation
    restoring the identity composition.  See ``gf2.matched_tau_tables``.
    """
    from .gf2 import matched_tau_tables

    if not 0 <= slot <= calls or calls < 1:
        raise CircuitError("matched slot must lie in [0, calls]")
    taus = matched_tau_tables(nbits, calls)

    def inv(tab: np.ndarray) -> np.ndarray:
        out = np.empty_like(tab)
        out[tab] = np.arange(tab.shape[0], dtype=np.int64)
        return out

    if slot == calls:
        table = taus[calls - 1]
    elif slot == 0:
        table = inv(taus[0])
    else:
        table = inv(taus[slot])[taus[slot - 1]]
    perm = table_perm(f"MATCHED {slot} {calls}", table)
    return perm


# ---------------------------------------------------------------------------
# Gates


@dataclass(frozen=True)
class Toffoli:
    """Flip every target wire iff all control wires read 1.

    An empty control set is allowed and gives the plain X layer on the
    targets; control and target sets must be disjoint and targets nonempty.
    """

    controls: frozenset[int]
    targets: frozenset[int]

    def __init__(self, controls: Iterable[int], targets: Iterable[int]):
        object.__setattr__(self, "controls", frozenset(controls))
        object.__setattr__(self, "targets", frozenset(targets))


@dataclass(frozen=True)
class GlobalHadamard:
    """One Hadamard applied to every wire of the circuit simultaneously."""


@dataclass(frozen=True)
class BlackBoxPerm:
    """A named label permutation on a wire subregister, optionally controlled.

    ``wires`` lists the register the permutation acts on, most significant
    bit first; ``None`` means the full circuit width.  ``oracle`` marks gates
    whose applications count as search-oracle calls.
    """

    perm: Permutation
    wires: tuple[int, ...] | None = None
    controls: frozenset[int] = frozenset()
    oracle: bool = False

    def __init__(
        self,
        perm: Permutation,
        wires: Iterable[int] | None = None,
        controls: Iterable[int] = (),
        oracle: bool = False,
    ):
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "wires", None if wires is None else tuple(wires))
        object.__setattr__(self, "controls", frozenset(controls))
        object.__setattr__(self, "oracle", oracle)

    def resolved_wires(self, width: int) -> tuple[int, ...]:
        return tuple(range(width)) if self.wires is None else self.wires


Gate = Toffoli | GlobalHadamard | BlackBoxPerm


# ---------------------------------------------------------------------------
# Circuit


@dataclass(frozen=True)
class Circuit:
    """An ordered gate list over ``width`` wires plus an optional input spec.

    ``input_spec`` is either a string over ``01+-`` (one symbol per wire) or
    None (all zeros).  Wires run the whole circuit; there is no mid-circuit
    measurement in the representation.
    """

    width: int
    gates: tuple[Gate, ...] = ()
    input_spec: str | None = None

    def __init__(
        self,
        width: int,
        gates: Iterable[Gate] = (),
        input_spec: str | int | None = None,
    ):
        if width < 1:
            raise CircuitError("circuit width must be at least 1")
        if isinstance(input_spec, int):
            input_spec = format(input_spec, f"0{width}b")
        if input_spec is not None:
            if len(input_spec) != width:
                raise CircuitError("input spec length must equal circuit width")
            bad = set(input_spec) - set(INPUT_SYMBOLS)
            if bad:
                raise CircuitError(f"unknown input symbols: {sorted(bad)}")
        object.__setattr__(self, "width", width)
        object.__setattr__(self, "gates", tuple(gates))
        object.__setattr__(self, "input_spec", input_spec)

    def __add__(self, other: "Circuit") -> "Circuit":
        if self.width != other.width:
            raise CircuitError("cannot concatenate circuits of different widths")
        if other.input_spec is not None:
            raise CircuitError("second operand of a concatenation must not set inputs")
        return Circuit(self.width, self.gates + other.gates, self.input_spec)

    def with_input(self, input_spec: str | int) -> "Circuit":
        return Circuit(self.width, self.gates, input_spec)

    def effective_input(self) -> str:
        return self.input_spec if self.input_spec is not None else "0" * self.width


@dataclass(frozen=True)
class CircuitMetrics:
    """Cost counters of a circuit.

    ``size`` counts generalized Toffoli gates (each counts 1 regardless of
    arity); ``quantum_depth`` counts global Hadamard layers; ``oracle_calls``
    counts oracle-flagged gates.  Black-box permutations are counted
    separately because their Toffoli size is unspecified by construction.
    """

    width: int
    size: int
    quantum_depth: int
    oracle_calls: int
    blackbox_gates: int = 0

    def __add__(self, other: "CircuitMetrics") -> "CircuitMetrics":
        if self.width != other.width:
            raise CircuitError("metrics of different widths do not add")
        return CircuitMetrics(
            self.width,
            self.size + other.size,
            self.quantum_depth + other.quantum_depth,
            self.oracle_calls + other.oracle_calls,
            self.blackbox_gates + other.blackbox_gates,
        )


@dataclass(frozen=True)
class Violation:
    gate_index: int | None
    rule: str
    message: str

    def __str__(self) -> str:
        where = "circuit" if self.gate_index is None else f"gate {self.gate_index}"
        return f"{where}: {self.rule}: {self.message}"


def validate(circuit: Circuit) -> list[Violation]:
    """Check every structural invariant; an empty list means the circuit is valid."""
    out: list[Violation] = []
    n = circuit.width
    for i, gate in enumerate(circuit.gates):
        if isinstance(gate, Toffoli):
            if not gate.targets:
                out.append(Violation(i, "empty-target-set", "Toffoli target set is empty"))
            if gate.controls & gate.targets:
                out.append(
                    Violation(
                        i,
                        "controls-targets-overlap",
                        f"controls and targets overlap on {sorted(gate.controls & gate.targets)}",
                    )
                )
            bad = [w for w in gate.controls | gate.targets if not 0 <= w < n]
            if bad:
                out.append(Violation(i, "wire-out-of-range", f"wires {sorted(bad)} not below width {n}"))
        elif isinstance(gate, BlackBoxPerm):
            wires = gate.resolved_wires(n)
            bad = [w for w in (*wires, *gate.controls) if not 0 <= w < n]
            if bad:
                out.append(Violation(i, "wire-out-of-range", f"wires {sorted(bad)} not below width {n}"))
            if len(set(wires)) != len(wires):
                out.append(Violation(i, "duplicate-wires", "permutation register repeats a wire"))
            if gate.controls & set(wires):
                out.append(
                    Violation(
                        i,
                        "controls-targets-overlap",
                        f"controls overlap permutation register on {sorted(gate.controls & set(wires))}",
                    )
                )
            if gate.perm.nbits != len(wires):
                out.append(
                    Violation(
                        i,
                        "arity-mismatch",
                        f"permutation acts on {gate.perm.nbits} bits but register has {len(wires)} wires",
                    )
                )
            else:
                msg = gate.perm.check_bijection()
                if msg:
                    out.append(Violation(i, "not-a-bijection", msg))
    return out


def metrics(circuit: Circuit) -> CircuitMetrics:
    """Exact cost counters; rejects circuits that fail ``validate``."""
    violations = validate(circuit)
    if violations:
        raise CircuitError("; ".join(str(v) for v in violations))
    size = sum(1 for g in circuit.gates if isinstance(g, Toffoli))
    depth = sum(1 for g in circuit.gates if isinstance(g, GlobalHadamard))
    oracle = sum(1 for g in circuit.gates if isinstance(g, BlackBoxPerm) and g.oracle)
    blackbox = sum(1 for g in circuit.gates if isinstance(g, BlackBoxPerm))
    return CircuitMetrics(circuit.width, size, depth, oracle, blackbox)


def input_desugar(circuit: Circuit) -> tuple[str, int, str]:
    """Accounting for realizing X-basis input symbols with one leading layer.

    Returns ``(dual_input, extra_depth, note)`` where ``dual_input`` maps
    every symbol through a single Hadamard (0<->+, 1<->-).  When the input
    has no X-basis symbols the extra depth is 0.  When every wire is + or -
    one leading global Hadamard on ``dual_input`` (then a pure Z string)
    realizes the input exactly.  Mixed inputs still cost one layer but leave
    the formerly-Z wires in the X basis, which is reported in the note.
    """
    spec = circuit.effective_input()
    dual = spec.translate(str.maketrans("01+-", "+-01"))
    x_wires = sum(1 for s in spec if s in "+-")
    if x_wires == 0:
        return dual, 0, "input is a computational basis state; no leading layer needed"
    if x_wires == circuit.width:
        return (
            dual,
            1,
            "one leading global Hadamard on the dual basis input realizes this input",
        )
    return (
        dual,
        1,
        "one leading global Hadamard realizes the X-basis wires but moves the "
        f"{circuit.width - x_wires} Z-basis wires into the X basis; those wires "
        "must tolerate an arbitrary ancilla state for the accounting to apply",
    )


# ---------------------------------------------------------------------------
# Text format
#
# Line-oriented, UTF-8.  ``WIDTH n`` header, optional ``INPUT <symbols>``,
# then one gate per line:
#   H*                                    global Hadamard
#   TOF c0 c1 t2                          controls then targets
#   PERM NAME [args...] [c.. t..] [!oracle]
# ``#`` starts a comment.  A PERM without t-wires acts on the full width.

_CATALOG: dict[str, Callable[..., Permutation]] = {
    "MODMUL": lambda nbits, g, m: modmul_perm(int(g), int(m), nbits),
    "XORCONST": lambda nbits, k: xorconst_perm(int(k), nbits),
    "FLIPZERO": lambda nbits: flipzero_perm(nbits),
    "IDENTITY": lambda nbits: identity_perm(nbits),
    "RANDOM": lambda nbits, seed: random_perm(nbits, int(seed)),
    "MATCHED": lambda nbits, slot, calls: matched_step_perm(nbits, int(slot), int(calls)),
    "ORACLE": lambda nbits, x, N: oracle_flip_perm(int(x), nbits, int(N)),
}


def catalog_perm(name: str, args: Sequence[str], nbits: int) -> Permutation:
    factory = _CATALOG.get(name)
    if factory is None:
        raise CircuitError(f"unknown catalog permutation {name!r}")
    try:
        return factory(nbits, *args)
    except (TypeError, ValueError) as exc:
        raise CircuitError(f"bad arguments for {name}: {' '.join(args)}") from exc


def _parse_wire_refs(tokens: list[str], line_no: int) -> tuple[list[int], list[int]]:
    controls: list[int] = []
    targets: list[int] = []
    for tok in tokens:
        kind, rest = tok[0], tok[1:]
        if kind not in "ct" or not rest.isdigit():
            raise CircuitError(f"line {line_no}: bad wire reference {tok!r}")
        (controls if kind == "c" else targets).append(int(rest))
    return controls, targets


def parse(
    text: str, registry: dict[str, Permutation] | None = None
) -> Circuit:
    """Parse the circuit file format; raises CircuitError with a line number."""
    registry = registry or {}
    width: int | None = None
    input_spec: str | None = None
    gates: list[Gate] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0].upper()
        if head == "WIDTH":
            if width is not None or len(tokens) != 2 or not tokens[1].isdigit():
                raise CircuitError(f"line {line_no}: malformed WIDTH header")
            width = int(tokens[1])
            continue
        if width is None:
            raise CircuitError(f"line {line_no}: WIDTH header must come first")
        if head == "INPUT":
            if len(tokens) != 2:
                raise CircuitError(f"line {line_no}: malformed INPUT line")
            input_spec = tokens[1]
            if len(input_spec) != width or set(input_spec) - set(INPUT_SYMBOLS):
                raise CircuitError(f"line {line_no}: bad input spec {input_spec!r}")
            continue
        if head == "H*":
            if len(tokens) != 1:
                raise CircuitError(f"line {line_no}: H* takes no arguments")
            gates.append(GlobalHadamard())
            continue
        if head == "TOF":
            controls, targets = _parse_wire_refs(tokens[1:], line_no)
            if any(w >= width for w in controls + targets):
                raise CircuitError(f"line {line_no}: wire index out of range")
            gates.append(Toffoli(controls, targets))
            continue
        if head == "PERM":
            if len(tokens) < 2:
                raise CircuitError(f"line {line_no}: PERM needs a name")
            name = tokens[1].upper()
            rest = tokens[2:]
            oracle = False
            if rest and rest[-1] == "!oracle":
                oracle = True
                rest = rest[:-1]
            args = [t for t in rest if t[0] not in "ct" or t.isdigit()]
            refs = [t for t in rest if t[0] in "ct" and not t.isdigit()]
            controls, wires = _parse_wire_refs(refs, line_no)
            wire_tuple = tuple(wires) if wires else None
            nbits = len(wires) if wires else width
            if any(w >= width for w in controls + wires):
                raise CircuitError(f"line {line_no}: wire index out of range")
            if tokens[1] in registry:
                if args:
                    raise CircuitError(f"line {line_no}: registered PERM takes no args")
                perm = registry[tokens[1]]
            elif name in _CATALOG:
                perm = catalog_perm(name, args, nbits)
            else:
                raise CircuitError(f"line {line_no}: unknown gate name {tokens[1]!r}")
            gates.append(BlackBoxPerm(perm, wire_tuple, controls, oracle))
            continue
        raise CircuitError(f"line {line_no}: unknown gate name {tokens[0]!r}")
    if width is None:
        raise CircuitError("missing WIDTH header")
    return Circuit(width, gates, input_spec)


def serialize(circuit: Circuit) -> str:
    """Canonical text form; parse(serialize(c)) structurally equals c."""
    lines = [f"WIDTH {circuit.width}"]
    if circuit.input_spec is not None:
        lines.append(f"INPUT {circuit.input_spec}")
    for gate in circuit.gates:
        if isinstance(gate, GlobalHadamard):
            lines.append("H*")
        elif isinstance(gate, Toffoli):
            refs = [f"c{w}" for w in sorted(gate.controls)]
            refs += [f"t{w}" for w in sorted(gate.targets)]
            lines.append("TOF " + " ".join(refs))
        else:
            parts = ["PERM", gate.perm.name]
            parts += [f"c{w}" for w in sorted(gate.controls)]
            if gate.wires is not None:
                parts += [f"t{w}" for w in gate.wires]
            if gate.oracle:
                parts.append("!oracle")
            lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def parse_serialized_perm(name: str, nbits: int) -> Permutation:
    """Rebuild a catalog permutation from its serialized name."""
    tokens = name.split()
    return catalog_perm(tokens[0], tokens[1:], nbits)
