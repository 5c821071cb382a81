"""Quantum order finding and the end-to-end factoring driver.

The experiment controls modular-multiplication permutations on an ancilla
register from |+> input wires and reads the input register in the X basis
(realized as a trailing global Hadamard followed by Z-basis sampling).
Each probed power c_j kicks phase 2*theta*c_j onto its control wires, so a
block of b wires yields x_j ~ Binomial(b, sin^2(theta*c_j)) with
theta = pi*k/r for the (stochastically selected) eigenvalue index k.

Two executions are provided.  The dense route simulates the circuit
outright and is the ground truth at small widths.  The eigenbasis-mixture
route samples from the exact output law directly: a basis ancilla label in
a unit coset decomposes uniformly over the r eigenvectors of its coset, so
a trial draws k uniformly (theta = pi*k/r) and then the binomial block
counts.  The two routes agree exactly and the mixture route has no width
limit, which the factoring driver needs since realistic schedules use far
more control wires than any dense state fits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import eigenest
from .circuit import BlackBoxPerm, Circuit, CircuitError, GlobalHadamard, Permutation, modmul_perm
from .eigenest import SampleRecord, SampleSet
from .statevec import DEFAULT_MAX_WIDTH, StateVector, run


def multiplicative_order(g: int, M: int) -> int:
    """Smallest r >= 1 with g^r = 1 mod M; requires gcd(g, M) = 1."""
    if math.gcd(g, M) != 1:
        raise CircuitError(f"{g} is not a unit modulo {M}")
    r, y = 1, g % M
    while y != 1:
        y = y * g % M
        r += 1
    return r


@dataclass(frozen=True)
class GroupSpec:
    """Cyclic group <g> inside the units modulo M, coded on m ancilla wires.

    ``order`` is computed classically for the simulator's and the tests'
    benefit; the estimation pipeline never reads it.
    """

    modulus: int
    generator: int
    register_width: int = field(init=False)
    order: int = field(init=False)

    def __post_init__(self):
        M, g = self.modulus, self.generator
        if not 1 < g < M:
            raise CircuitError("generator must satisfy 1 < g < modulus")
        if math.gcd(g, M) != 1:
            raise CircuitError("generator must be a unit modulo the modulus")
        object.__setattr__(self, "register_width", max(1, (M - 1).bit_length()))
        object.__setattr__(self, "order", multiplicative_order(g, M))


def modmul_permutation(spec: GroupSpec, power: int) -> Permutation:
    """The label map x -> x * g^power mod M on units, identity elsewhere."""
    if power < 0:
        raise CircuitError("power must be nonnegative")
    mult = pow(spec.generator, power, spec.modulus)
    return modmul_perm(mult, spec.modulus, spec.register_width)


def eigenvector(spec: GroupSpec, k: int) -> StateVector:
    """|lambda_omega> for omega = exp(2 pi i k / r): amplitude r^(-1/2) omega^(-j)
    on label g^j mod M, j = 1..r.  Used by tests and preloaded-ancilla runs."""
    r = spec.order
    if not 0 <= k < r:
        raise CircuitError("eigenvalue index out of range")
    amps = np.zeros(1 << spec.register_width, dtype=complex)
    omega = np.exp(2j * np.pi * k / r)
    label = 1
    for j in range(1, r + 1):
        label = label * spec.generator % spec.modulus
        amps[label] = omega ** (-j) / math.sqrt(r)
    return StateVector(spec.register_width, amps)


@dataclass(frozen=True)
class OrderFindingPlan:
    """Probe powers, wires per power, and the ancilla initialization mode."""

    c_js: tuple[int, ...]
    b: int
    ancilla_mode: str = "basis"  # "basis" or "mixed"
    ancilla_label: int = 1

    def __post_init__(self):
        if self.ancilla_mode not in ("basis", "mixed"):
            raise CircuitError("ancilla mode must be 'basis' or 'mixed'")
        if not self.c_js or any(c < 1 for c in self.c_js):
            raise CircuitError("every probed power must be a positive integer")
        if self.b < 1:
            raise CircuitError("need at least one wire per probed power")

    @property
    def a(self) -> int:
        return len(self.c_js)

    @property
    def input_width(self) -> int:
        return self.a * self.b


def build_order_finding_circuit(
    spec: GroupSpec,
    plan: OrderFindingPlan,
    max_width: int = DEFAULT_MAX_WIDTH,
    ancilla_label: int | None = None,
) -> Circuit:
    """a*b |+> input wires, m ancilla wires, one controlled multiplication per
    (power, wire) in ascending order, and a trailing readout Hadamard layer."""
    m = spec.register_width
    width = plan.input_width + m
    if width > max_width:
        raise CircuitError(
            f"order-finding circuit needs {width} wires, above the guard ({max_width})"
        )
    if ancilla_label is None:
        ancilla_label = plan.ancilla_label if plan.ancilla_mode == "basis" else 0
    ancilla_wires = tuple(range(plan.input_width, width))
    gates = []
    for j, c in enumerate(plan.c_js):
        perm = modmul_permutation(spec, c)
        for i in range(plan.b):
            gates.append(BlackBoxPerm(perm, ancilla_wires, controls={j * plan.b + i}))
    gates.append(GlobalHadamard())
    input_spec = "+" * plan.input_width + format(ancilla_label, f"0{m}b")
    return Circuit(width, gates, input_spec)


def _block_counts(label: int, plan: OrderFindingPlan, width: int) -> list[int]:
    counts = []
    for j in range(plan.a):
        block = 0
        for i in range(plan.b):
            wire = j * plan.b + i
            block += (label >> (width - 1 - wire)) & 1
        counts.append(block)
    return counts


def _theta_over_pi_for_label(spec: GroupSpec, label: int, rng: np.random.Generator) -> float:
    """Eigenbasis mixture for a basis ancilla label.

    A unit label sits in some coset of <g>; its overlap with each of the
    coset's r eigenvectors is exactly 1/r, so the eigenvalue index is
    uniform.  Non-unit labels (0, multiples of shared factors, labels >= M)
    are fixed points of the dynamics: theta = 0.
    """
    M = spec.modulus
    if 1 <= label < M and math.gcd(label, M) == 1:
        k = int(rng.integers(0, spec.order))
        return k / spec.order
    return 0.0


def run_order_finding(
    spec: GroupSpec,
    plan: OrderFindingPlan,
    seed: int = 0,
    trials: int = 1,
    method: str = "auto",
    max_width: int = DEFAULT_MAX_WIDTH,
) -> list[SampleSet]:
    """Per trial: initialize the ancilla per the plan, run, and record the
    block counts x_j.  Deterministic given the seed."""
    if trials < 1:
        raise CircuitError("need at least one trial")
    width = plan.input_width + spec.register_width
    if method == "auto":
        method = "dense" if width <= max_width else "mixture"
    rng = np.random.default_rng(seed)
    out: list[SampleSet] = []
    if method == "dense":
        dist_cache: dict[int, np.ndarray] = {}
        for _ in range(trials):
            if plan.ancilla_mode == "mixed":
                label = int(rng.integers(0, 1 << spec.register_width))
            else:
                label = plan.ancilla_label
            if label not in dist_cache:
                circ = build_order_finding_circuit(spec, plan, max_width, ancilla_label=label)
                dist_cache[label] = run(circ, max_width=max_width).distribution()
            probs = dist_cache[label]
            outcome = int(rng.choice(probs.shape[0], p=probs / probs.sum()))
            counts = _block_counts(outcome, plan, width)
            out.append(
                [SampleRecord(c, x, plan.b) for c, x in zip(plan.c_js, counts)]
            )
        return out
    if method != "mixture":
        raise CircuitError(f"unknown execution method {method!r}")
    for _ in range(trials):
        if plan.ancilla_mode == "mixed":
            label = int(rng.integers(0, 1 << spec.register_width))
        else:
            label = plan.ancilla_label
        theta = _theta_over_pi_for_label(spec, label, rng)
        c = np.asarray(plan.c_js, dtype=np.float64)
        p = np.sin(np.pi * theta * c) ** 2
        draws = rng.binomial(plan.b, p)
        out.append(
            [SampleRecord(int(cj), int(x), plan.b) for cj, x in zip(plan.c_js, draws)]
        )
    return out


def input_register_distribution(
    spec: GroupSpec, plan: OrderFindingPlan, ancilla_label: int | None = None
) -> np.ndarray:
    """Exact joint outcome distribution of the a*b input wires (dense route)."""
    circ = build_order_finding_circuit(spec, plan, ancilla_label=ancilla_label)
    state = run(circ)
    return state.marginal(range(plan.input_width))


# ---------------------------------------------------------------------------
# Factoring driver


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def perfect_power_root(n: int) -> int | None:
    """Smallest base x with x^k = n for some k >= 2, else None."""
    for k in range(2, n.bit_length() + 1):
        x = round(n ** (1.0 / k))
        for cand in (x - 1, x, x + 1):
            if cand >= 2 and cand**k == n:
                return cand
    return None


@dataclass(frozen=True)
class FactorAttempt:
    g: int
    outcome: str
    theta_hat: float | None = None
    rational: str | None = None
    candidate_order: int | None = None


@dataclass(frozen=True)
class FactorReport:
    modulus: int
    factor: int | None
    success: bool
    method: str
    trials_used: int
    attempts: tuple[FactorAttempt, ...]

    def __str__(self) -> str:
        head = (
            f"factor({self.modulus}) -> {self.factor} [{self.method}] "
            f"after {self.trials_used} quantum trials"
            if self.success
            else f"factor({self.modulus}) FAILED [{self.method}] after {self.trials_used} trials"
        )
        lines = [head]
        for a in self.attempts:
            extra = ""
            if a.theta_hat is not None:
                extra = f" theta_hat={a.theta_hat:.6f} rational={a.rational} order={a.candidate_order}"
            lines.append(f"  g={a.g}: {a.outcome}{extra}")
        return "\n".join(lines)


def resolution_target(M: int) -> int:
    """K = next power of two at or above 4 M^2, so continued fractions with
    denominator bound M are safely inside their guarantee radius."""
    return 1 << max(2, (4 * M * M - 1).bit_length())


def factor(
    M: int,
    seed: int = 0,
    max_attempts: int = 16,
) -> FactorReport:
    """Order-finding factorization with classical pre-checks.

    Random units g are probed; a quantum order-finding trial plus the
    classical estimator yields a candidate order r (denominator of the
    recovered rational, verified by g^r = 1).  An even verified order with
    g^(r/2) != -1 gives gcd(g^(r/2) +- 1, M).  Uninformative trials
    (eigenvalue-1 draws, odd orders, bad g) are absorbed by the retry
    budget.
    """
    if M < 4:
        raise CircuitError("modulus must be at least 4")
    if M % 2 == 0:
        return FactorReport(M, 2, True, "classical-even", 0, ())
    if is_prime(M):
        return FactorReport(M, None, False, "prime-input", 0, ())
    root = perfect_power_root(M)
    if root is not None:
        return FactorReport(M, root, True, "classical-perfect-power", 0, ())

    K = resolution_target(M)
    schedule = eigenest.make_schedule(K)
    rng = np.random.default_rng(seed)
    attempts: list[FactorAttempt] = []
    trials_used = 0
    candidate_orders: dict[int, int] = {}
    for _ in range(max_attempts):
        g = int(rng.integers(2, M))
        d = math.gcd(g, M)
        if d > 1:
            attempts.append(FactorAttempt(g, f"gcd({g}, {M}) = {d} is already a factor"))
            return FactorReport(M, d, True, "lucky-gcd", trials_used, tuple(attempts))
        spec = GroupSpec(M, g)
        plan = OrderFindingPlan(schedule.c_js, schedule.b, "basis", 1)
        samples = run_order_finding(
            spec, plan, seed=int(rng.integers(2**32)), trials=1, method="mixture"
        )[0]
        trials_used += 1
        est = eigenest.estimate_theta(samples, K, q_bound=M)
        q = est.rational.denominator
        merged = q * candidate_orders.get(g, 1) // math.gcd(q, candidate_orders.get(g, 1))
        candidate_orders[g] = merged
        for r_cand in dict.fromkeys((q, merged)):
            if r_cand > 1 and pow(g, r_cand, M) == 1:
                if r_cand % 2 == 1:
                    attempts.append(
                        FactorAttempt(g, "odd order", est.theta_hat, str(est.rational), r_cand)
                    )
                    break
                y = pow(g, r_cand // 2, M)
                if y == M - 1:
                    attempts.append(
                        FactorAttempt(
                            g, "g^(r/2) = -1, uninformative", est.theta_hat, str(est.rational), r_cand
                        )
                    )
                    break
                for f in (math.gcd(y - 1, M), math.gcd(y + 1, M)):
                    if 1 < f < M:
                        attempts.append(
                            FactorAttempt(g, "order found", est.theta_hat, str(est.rational), r_cand)
                        )
                        return FactorReport(M, f, True, "order-finding", trials_used, tuple(attempts))
        else:
            attempts.append(
                FactorAttempt(
                    g, "unverified candidate order", est.theta_hat, str(est.rational), q
                )
            )
    return FactorReport(M, None, False, "retry-budget-exhausted", trials_used, tuple(attempts))
