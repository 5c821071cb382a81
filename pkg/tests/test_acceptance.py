"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines live.
Criteria with stated runtime budgets assert them.
"""

import io
import math
import sys
import time
from fractions import Fraction

import numpy as np

from hadsim import circuit as C
from hadsim import depth2 as D2
from hadsim import eigenest as E
from hadsim import gadgets
from hadsim import grover as G
from hadsim import orderfind as OF
from hadsim import statevec as SV
from hadsim.cli import main as cli_main


def _report(num: int, passed: bool, detail: str) -> None:
    status = "PASS" if passed else "FAIL"
    print(f"[criterion {num:2d}] {status} - {detail}")
    assert passed, f"criterion {num}: {detail}"


def test_criterion_1_gadget_equivalence():
    t0 = time.time()
    dual = dict(zip("01+-", "+-01"))
    worst = 0.0
    gadget = gadgets.local_hadamard_gadget(4, 0, 1, 2, 3)
    for cs in "01+-":
        for ds in "01+-":
            got = SV.run(gadget.with_input("1-" + cs + ds))
            want = SV.init(4, "1-" + dual[cs] + dual[ds])
            worst = max(worst, float(np.max(np.abs(got.amps - want.amps))))
    core = gadgets.local_hadamard_core(4, 0, 1, 2, 3)
    for cd, out in {"00": "++", "01": "-+", "10": "+-", "11": "--"}.items():
        got = SV.run(core.with_input("1-" + cd))
        want = SV.init(4, "1-" + out)
        worst = max(worst, float(np.max(np.abs(got.amps - want.amps))))
    elapsed = time.time() - t0
    _report(
        1,
        worst <= 1e-12 and elapsed < 1.0,
        f"local-Hadamard gadget: 16 inputs + 4 listed mappings, "
        f"max amplitude error {worst:.2e}, {elapsed:.2f}s",
    )


def test_criterion_2_depth2_formula():
    t0 = time.time()
    rng = np.random.default_rng(2024)
    worst_tv = 0.0
    zero_ok = True
    for _ in range(100):
        n = int(rng.integers(2, 13))
        a = int(rng.integers(1, 1 << n))
        inst = D2.Depth2Instance(n, a, C.random_perm(n, int(rng.integers(10**9))))
        dist = D2.depth2_distribution(inst)
        sim = D2.depth2_simulated(inst)
        worst_tv = max(worst_tv, 0.5 * float(np.abs(dist - sim).sum()))
        zero_ok &= dist[0] == 0.0 and D2.depth2_amplitude(inst, 0) == 0.0
    elapsed = time.time() - t0
    _report(
        2,
        worst_tv <= 1e-9 and zero_ok and elapsed < 60.0,
        f"depth-2 closed form vs dense simulation on 100 instances (n<=12): "
        f"max TV {worst_tv:.2e}, Prob(0)=0 everywhere: {zero_ok}, {elapsed:.1f}s",
    )


def test_criterion_3_kickback_bias():
    t0 = time.time()
    spec = OF.GroupSpec(15, 2)
    plan = OF.OrderFindingPlan((1,), 3, "basis", 1)
    circ = OF.build_order_finding_circuit(spec, plan)
    worst = 0.0
    for k in range(4):
        ev = OF.eigenvector(spec, k)
        amps = np.kron(SV.init(3, "+++").amps, ev.amps)
        state = SV.run(circ, SV.StateVector(circ.width, amps))
        want = math.sin(math.pi * k / 4) ** 2
        for wire in range(3):
            worst = max(worst, abs(float(state.marginal([wire])[1]) - want))
    elapsed = time.time() - t0
    _report(
        3,
        worst <= 1e-10 and elapsed < 1.0,
        f"kickback bias sin^2(pi k/4) for MODMUL(2,15) eigenvectors: "
        f"max marginal error {worst:.2e}, {elapsed:.2f}s",
    )


def test_criterion_4_end_to_end_factoring():
    t0 = time.time()
    rates = {}
    for M, expect in ((15, {3, 5}), (21, {3, 7})):
        wins = 0
        for seed in range(100):
            rep = OF.factor(M, seed=seed)
            wins += rep.success and rep.factor in expect
        rates[M] = wins
    elapsed = time.time() - t0
    _report(
        4,
        rates[15] >= 50 and rates[21] >= 50 and elapsed < 300.0,
        f"factoring success over 100 seeded runs: M=15 {rates[15]}/100, "
        f"M=21 {rates[21]}/100 (threshold 50), {elapsed:.1f}s",
    )


def test_criterion_5_estimator_resolution():
    t0 = time.time()
    K = 1 << 10
    schedule = E.make_schedule(K)
    rng = np.random.default_rng(5)
    hits = 0
    trials = 200
    for _ in range(trials):
        phi = int(rng.integers(2, math.isqrt(K) + 1))
        m = int(rng.integers(0, (phi + 1) // 2))
        truth = Fraction(2 * m, phi)  # theta = 2*pi*m/phi, in theta/pi units
        samples = E.simulate_samples(float(truth), schedule, seed=int(rng.integers(2**32)))
        est = E.estimate_theta(samples, K)
        hits += est.rational == min(truth % 1, (1 - truth) % 1)
    rate = hits / trials

    one_bit_values = tuple(c for c in schedule.c_js if bin(c).count("1") == 1)
    one_bit = E.CjSchedule(K, round(schedule.budget / len(one_bit_values)), one_bit_values)
    w_full = w_one = 0
    adv_trials = 300
    rng = np.random.default_rng(6)
    nbits = K.bit_length() + 1
    run_len = schedule.b // 2 + 1
    for _ in range(adv_trials):
        lead = int(rng.integers(1, 4))
        bits = [int(rng.integers(0, 2)) for _ in range(lead)] + [int(rng.integers(0, 2))] * run_len
        while len(bits) < nbits:
            bits.append(int(rng.integers(0, 2)))
        t = sum(b << (nbits - 1 - i) for i, b in enumerate(bits)) / (1 << nbits)
        if t == 0:
            continue
        sf = E.simulate_samples(t, schedule, seed=int(rng.integers(2**32)))
        so = E.simulate_samples(t, one_bit, seed=int(rng.integers(2**32)))
        w_full += abs(E.estimate_theta(sf, K).theta_hat - E.fold(t)) <= 1 / K
        w_one += abs(E.estimate_theta(so, K).theta_hat - E.fold(t)) <= 1 / K
    pooled = (w_full + w_one) / (2 * adv_trials)
    se = math.sqrt(max(2 * pooled * (1 - pooled) / adv_trials, 1e-12))
    z = (w_full - w_one) / adv_trials / se
    elapsed = time.time() - t0
    _report(
        5,
        rate >= 0.5 and z > 2.326 and elapsed < 300.0,
        f"continued-fraction recovery of theta=2pi m/phi (phi<=sqrt K): rate {rate:.2f} "
        f"(threshold 0.5); adversarial run-of-bits: full {w_full}/{adv_trials} vs "
        f"one-bit {w_one}/{adv_trials}, z={z:.1f} (>2.33 = 1% one-sided), {elapsed:.1f}s",
    )


def test_criterion_6_grover_exactness():
    t0 = time.time()
    worst = 0.0
    for x in range(4):
        spec = G.OracleSpec.standard(2, x)
        worst = max(worst, abs(G.success_probability(spec, G.standard_grover_circuit(spec, 1)) - 1.0))
    N = 1 << 10
    spec = G.OracleSpec.standard(10, 313)
    phases = G.expand_schedule(spec, G.textbook_schedule(G.optimal_iterations(N)))
    big = G.abstract_success(spec, phases)
    elapsed = time.time() - t0
    _report(
        6,
        worst <= 1e-12 and big >= 0.99 and elapsed < 60.0,
        f"N=4 single iteration |1-success| <= {worst:.2e}; N=2^10 at "
        f"{G.optimal_iterations(N)} iterations success {big:.4f} (>=0.99), {elapsed:.1f}s",
    )


def test_criterion_7_tradeoff_direction():
    t0 = time.time()
    n = 10
    N = 1 << n
    bound = 0.5 * math.sqrt(N)
    violations = []
    rows_seen = 0
    for family in ("serial", "frontier", "depth0"):
        rep = G.tradeoff_experiment(n, family)
        for row in rep.rows:
            rows_seen += 1
            if row.success_avg >= 0.5 and row.sum_sqrt_k < bound:
                violations.append((family, row.schedule))
    fit = G.depth0_fit((6, 7, 8, 9, 10, 11, 12))
    elapsed = time.time() - t0
    _report(
        7,
        not violations and abs(fit.exponent - 1.0) <= 0.1 and elapsed < 600.0,
        f"{rows_seen} schedules tested at N=2^10: all with success >= 0.5 have "
        f"sum(sqrt k) >= 0.5 sqrt(N) ({len(violations)} violations); depth-0 family "
        f"k*(N) fit exponent {fit.exponent:.3f} (1.0 +- 0.1), {elapsed:.1f}s",
    )


def test_criterion_8_proof_chain_numerics():
    t0 = time.time()
    rng = np.random.default_rng(8)
    worst_born = 0.0
    failures = 0
    for _ in range(50):
        n = int(rng.integers(4, 11))
        T = int(rng.integers(2, 5))
        k = tuple(int(rng.integers(1, 5)) for _ in range(T))
        sched = G.GroverSchedule(k, "random", seed=int(rng.integers(10**6)))
        psi = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
        rep = G.proof_chain_check(n, sched, psi0=psi)
        worst_born = max(worst_born, abs(rep.p_angle - rep.p_mass))
        failures += not rep.ok(1e-9)
    elapsed = time.time() - t0
    _report(
        8,
        failures == 0 and worst_born <= 1e-9,
        f"50 random (schedule, state) instances (n<=10): overlap<=4W, sum_x W<=k_t, "
        f"F<=4(sum sqrt k)^2, Born identity error {worst_born:.2e}, "
        f"{failures} violations, {elapsed:.1f}s",
    )


def test_criterion_9_lemma_property_suites():
    t0 = time.time()
    rng = np.random.default_rng(9)
    tol = 1e-9
    trials = 10_000
    v1 = v2 = v3 = 0
    for _ in range(trials):
        R, C_ = G.lemma1_check(rng.uniform(0, 1, size=(8, 8)))
        v1 += R < C_ - tol
    for _ in range(trials):
        dim = int(rng.integers(2, 11))
        u, v, w = (a / np.linalg.norm(a) for a in rng.normal(size=(3, dim)))
        lhs, rhs = G.lemma2_check(u, v, w)
        v2 += lhs < rhs - tol
    for _ in range(trials):
        t = rng.normal(size=int(rng.integers(1, 32)))
        p = float((t**2).mean()) + abs(float(rng.normal()))
        lhs, rhs = G.lemma3_check(t, p)
        v3 += lhs > rhs + tol
    elapsed = time.time() - t0
    _report(
        9,
        v1 == v2 == v3 == 0 and elapsed < 10.0,
        f"lemma suites at 10^4 instances each: violations {v1}/{v2}/{v3}, {elapsed:.1f}s",
    )


def _run_cli(args):
    buf = io.StringIO()
    old = sys.stdout
    sys.stdout = buf
    try:
        code = cli_main(args)
    finally:
        sys.stdout = old
    return code, buf.getvalue()


def test_criterion_10_cli_determinism(tmp_path):
    circ = tmp_path / "c.qc"
    circ.write_text("WIDTH 3\nINPUT +++\nTOF c0 c1 t2\nH*\n")
    cases = [
        ["simulate", str(circ), "--shots", "200", "--seed", "3"],
        ["gadget-verify", "--seed", "1"],
        ["depth2", "--width", "5", "--input", "17", "--perm", "RANDOM 9", "--compare-sim"],
        ["order-find", "--modulus", "15", "--generator", "2", "--schedule", "auto",
         "--a", "6", "--trials", "4", "--seed", "5", "--method", "mixture"],
        ["factor", "--modulus", "21", "--seed", "2"],
        ["eigenest", "--K", "1024", "--theta", "0.3333", "--trials", "10", "--seed", "4"],
        ["grover", "--n", "5", "--schedule", "1x1|2x2", "--policy", "random", "--seed", "8"],
        ["grover-tradeoff", "--n", "6", "--family", "frontier", "--seed", "0"],
        ["lemmas", "--trials", "1000", "--seed", "6"],
    ]
    bad = []
    for args in cases:
        code1, out1 = _run_cli(args)
        code2, out2 = _run_cli(args)
        if code1 != code2 or out1 != out2 or code1 != 0:
            bad.append(args[0])
    _report(
        10,
        not bad,
        f"{len(cases)} CLI invocations byte-identical across two runs"
        + (f"; failing: {bad}" if bad else ""),
    )
