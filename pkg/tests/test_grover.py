import numpy as np
import pytest

from hadsim import circuit as C
from hadsim import grover as G
from hadsim import statevec as SV


def test_oracle_flips_only_the_marked_label():
    spec = G.OracleSpec.standard(2, 3)
    frag = G.build_oracle(spec, minus_wire=2, width=3)
    full = np.kron(np.full(4, 0.5, dtype=complex), SV.init(1, "-").amps)
    got = SV.run(frag, SV.StateVector(3, full.copy()))
    want = full.copy()
    want[np.arange(8) >> 1 == 3] *= -1
    assert np.max(np.abs(got.amps - want)) < 1e-12


def test_oracle_involution_and_flag():
    spec = G.OracleSpec.standard(3, 5)
    frag = G.build_oracle(spec)
    m = C.metrics(frag)
    assert m.oracle_calls == 1
    twice = frag + G.build_oracle(spec)
    st = SV.run(twice.with_input("+0+1-"))
    want = SV.init(5, "+0+1-")
    assert np.max(np.abs(st.amps - want.amps)) < 1e-12


def test_oracle_diagonal_all_hidden_data():
    n = 4
    for x in range(1 << n):
        spec = G.OracleSpec.standard(n, x)
        frag = G.build_oracle(spec, minus_wire=n, width=n + 1)
        full = np.kron(np.full(1 << n, 2.0 ** (-n / 2), dtype=complex), SV.init(1, "-").amps)
        got = SV.run(frag, SV.StateVector(n + 1, full.copy()))
        signs = np.where((np.arange(1 << (n + 1)) >> 1) == x, -1.0, 1.0)
        assert np.max(np.abs(got.amps - signs * full)) < 1e-12


def test_blackbox_oracle_equals_toffoli_gadget():
    spec = G.OracleSpec.standard(3, 5)
    a = G.build_oracle(spec, minus_wire=4, width=5)
    b = G.oracle_toffoli_form(spec, minus_wire=4, width=5)
    rng = np.random.default_rng(0)
    amps = rng.normal(size=32) + 1j * rng.normal(size=32)
    amps /= np.linalg.norm(amps)
    # agreement holds on the |-> subspace of the target wire, which every
    # built circuit maintains; prepare arbitrary data wires tensor |->
    data = rng.normal(size=16) + 1j * rng.normal(size=16)
    data /= np.linalg.norm(data)
    full = np.kron(data, SV.init(1, "-").amps)
    sa = SV.run(a, SV.StateVector(5, full.copy()))
    sb = SV.run(b, SV.StateVector(5, full.copy()))
    assert np.max(np.abs(sa.amps - sb.amps)) < 1e-12


def test_narrow_range_oracle():
    # N = 4 on n = 3 wires: f reads the first two wires
    spec = G.OracleSpec.standard(3, 2, N=4)
    assert spec.conjunction_wires() == [(0, "+"), (1, "-")]
    frag = G.build_oracle(spec, minus_wire=3, width=4)
    full = np.kron(np.full(8, 2.0 ** -1.5, dtype=complex), SV.init(1, "-").amps)
    got = SV.run(frag, SV.StateVector(4, full.copy()))
    signs = np.where(((np.arange(16) >> 1) >> 1) == 2, -1.0, 1.0)
    assert np.max(np.abs(got.amps - signs * full)) < 1e-12


def test_bare_preparation_success_is_uniform():
    n = 4
    circ = C.Circuit(n + 2, [], "+" * n + "1-")
    for x in (0, 5, 15):
        spec = G.OracleSpec.standard(n, x)
        assert abs(G.success_probability(spec, circ) - 1.0 / (1 << n)) < 1e-12


def test_textbook_n4_single_iteration_exact_for_every_x():
    for x in range(4):
        spec = G.OracleSpec.standard(2, x)
        circ = G.standard_grover_circuit(spec, 1)
        assert abs(G.success_probability(spec, circ) - 1.0) < 1e-12


def test_diffusion_two_phase_exactness_at_classic_marks():
    # the packed [oracle, flip0] phases nail the classic all-ones (and zero)
    # mark in two phases; odd-parity marks need the alternating form instead
    for x in (0, 3):
        spec = G.OracleSpec.standard(2, x)
        phases = G.expand_schedule(spec, G.GroverSchedule((1, 1), "diffusion"))
        assert abs(G.abstract_success(spec, phases) - 1.0) < 1e-12


def test_single_phase_is_barely_better_than_uniform():
    n = 4
    spec = G.OracleSpec.standard(n, 7)
    phases = G.expand_schedule(spec, G.GroverSchedule((1,), "diffusion"))
    assert G.abstract_success(spec, phases) <= 4.0 / (1 << n)


def test_circuit_matches_abstract_engine():
    rng = np.random.default_rng(5)
    for policy in ("diffusion", "alternating", "random", "identity"):
        k = tuple(int(rng.integers(0, 3)) for _ in range(3))
        if sum(k) == 0:
            k = (1,) + k[1:]
        sched = G.GroverSchedule(k, policy, seed=int(rng.integers(100)))
        spec = G.OracleSpec.standard(4, int(rng.integers(16)))
        circ = G.build_grover_circuit(spec, sched)
        assert C.validate(circ) == []
        direct = G.abstract_success(spec, G.expand_schedule(spec, sched))
        assert abs(G.success_probability(spec, circ) - direct) < 1e-12


def test_matched_circuit_matches_abstract_engine():
    spec = G.OracleSpec.standard(3, 5)
    sched = G.matched_schedule(3, 3)
    circ = G.build_grover_circuit(spec, sched)
    direct = G.abstract_success(spec, G.expand_schedule(spec, sched))
    assert abs(G.success_probability(spec, circ) - direct) < 1e-12


def test_oracle_call_accounting():
    rng = np.random.default_rng(9)
    for _ in range(5):
        k = tuple(int(rng.integers(0, 4)) for _ in range(4))
        if sum(k) == 0:
            continue
        sched = G.GroverSchedule(k, "diffusion")
        spec = G.OracleSpec.standard(3, 1)
        m = C.metrics(G.build_grover_circuit(spec, sched))
        assert m.oracle_calls == sched.oracle_calls
        assert m.quantum_depth == sched.interior_depth


def test_textbook_success_is_x_independent():
    probs = G.batched_success(6, G.textbook_schedule(3))
    assert probs.max() - probs.min() < 1e-12


def test_batched_equals_per_x():
    sched = G.GroverSchedule((2, 1), "random", seed=4)
    batch = G.batched_success(5, sched)
    for x in (0, 9, 31):
        spec = G.OracleSpec.standard(5, x)
        assert abs(batch[x] - G.abstract_success(spec, G.expand_schedule(spec, sched))) < 1e-12


def test_optimal_iteration_success_large_n():
    N = 1 << 10
    spec = G.OracleSpec.standard(10, 513)
    r = G.optimal_iterations(N)
    phases = G.expand_schedule(spec, G.textbook_schedule(r))
    assert G.abstract_success(spec, phases) >= 0.99


def test_path_parity_single_call():
    # k_t = 1: parity is 1 exactly on the f-preimage of x shifted by T_{t,0}
    sched = G.GroverSchedule((1,), "random", seed=12)
    spec = G.OracleSpec.standard(4, 6)
    phases = G.expand_schedule(spec, sched)
    t0 = phases[0][0][1].table()
    for z in range(16):
        assert G.path_parity(spec, sched, 1, z) == int(spec.f_table[t0[z]] == 6)


def test_W_diagnostic_bounds():
    rng = np.random.default_rng(3)
    n = 5
    sched = G.GroverSchedule((2, 3), "random", seed=8)
    spec0 = G.OracleSpec.standard(n, 0)
    state = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    state /= np.linalg.norm(state)
    for t in (1, 2):
        total = 0.0
        for x in range(1 << n):
            spec = G.OracleSpec.standard(n, x)
            w = G.W_diagnostic(spec, sched, t, state)
            assert 0.0 <= w <= 1.0
            total += w
        assert total <= sched.k[t - 1] + 1e-9


def test_proof_chain_random_instances():
    rng = np.random.default_rng(21)
    for _ in range(6):
        n = int(rng.integers(3, 7))
        T = int(rng.integers(2, 5))
        k = tuple(int(rng.integers(1, 4)) for _ in range(T))
        sched = G.GroverSchedule(k, "random", seed=int(rng.integers(999)))
        psi = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
        rep = G.proof_chain_check(n, sched, psi0=psi)
        assert rep.ok(1e-9), rep


def test_proof_chain_narrow_range():
    rep = G.proof_chain_check(5, G.GroverSchedule((1, 2), "random", seed=3), N=8)
    assert rep.ok(1e-9)
    assert rep.N == 8


def test_lemma1():
    R, C_ = G.lemma1_check(np.zeros((4, 4)))
    assert R == C_ == 0.0
    w = np.random.default_rng(0).uniform(size=(1, 6))  # single x row
    R, C_ = G.lemma1_check(w.T)  # one row in the (x, t) convention
    assert abs(R - C_) < 1e-12
    with pytest.raises(ValueError):
        G.lemma1_check(np.array([[-1.0, 2.0]]))


def test_lemma2():
    u = np.array([1.0, 0.0])
    v = np.array([0.0, 1.0])
    lhs, rhs = G.lemma2_check(u, v, u)
    assert lhs >= rhs - 1e-9
    with pytest.raises(ValueError):
        G.lemma2_check(u, 2 * v, u)


def test_lemma3():
    lhs, rhs = G.lemma3_check(np.array([0.3, -0.2, 0.5]), 0.5)
    assert lhs <= rhs + 1e-9
    with pytest.raises(ValueError):
        G.lemma3_check(np.array([10.0, 10.0]), 0.1)


def test_lemma_random_suites():
    rng = np.random.default_rng(123)
    for _ in range(500):
        w = rng.uniform(0, 1, size=(8, 8))
        R, C_ = G.lemma1_check(w)
        assert R >= C_ - 1e-9
    for _ in range(500):
        dim = int(rng.integers(2, 11))
        u, v, w = (a / np.linalg.norm(a) for a in rng.normal(size=(3, dim)))
        lhs, rhs = G.lemma2_check(u, v, w)
        assert lhs >= rhs - 1e-9
    for _ in range(500):
        t = rng.normal(size=int(rng.integers(1, 40)))
        p = float((t**2).mean()) + abs(float(rng.normal()))
        lhs, rhs = G.lemma3_check(t, p)
        assert lhs <= rhs + 1e-9


def test_matched_family_success_profile():
    n = 6
    N = 1 << n
    for calls in (5, 16):
        fast = G.matched_family_success(n, calls)
        batch = G.batched_success(n, G.matched_schedule(n, calls))
        assert np.max(np.abs(fast - batch)) < 1e-12
        # closed form for x != 0: amplitude 2k/N
        assert np.allclose(fast[1:], (2 * calls / N) ** 2, atol=1e-12)


def test_serial_family_k1_dominates_at_fixed_budget():
    n = 8
    chain = G.batched_success(n, G.GroverSchedule((1,) * 12, "diffusion")).mean()
    packed = G.batched_success(n, G.GroverSchedule((4,) * 6, "diffusion")).mean()
    assert chain > packed  # same sum(sqrt k) = 12


def test_parse_schedule_grammar():
    sched = G.parse_schedule("1x32|4x8")
    assert sched.k == (32, 8, 8, 8, 8)
    assert sched.oracle_calls == 64
    with pytest.raises(C.CircuitError):
        G.parse_schedule("bogus")


def test_schedule_validation():
    with pytest.raises(C.CircuitError):
        G.GroverSchedule((0, 0), "diffusion")
    with pytest.raises(C.CircuitError):
        G.GroverSchedule((1,), "nope")


def test_tradeoff_report_sorted_and_bounded():
    rep = G.tradeoff_experiment(6, "frontier")
    sq = [r.sum_sqrt_k for r in rep.rows]
    assert sq == sorted(sq)
    for r in rep.rows:
        assert 0.0 <= r.success_min <= r.success_avg + 1e-12 <= 1.0 + 1e-12
