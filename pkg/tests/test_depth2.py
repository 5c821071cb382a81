import numpy as np
import pytest

from hadsim import depth2 as D2
from hadsim import circuit as C


def test_label_zero_amplitude_vanishes():
    rng = np.random.default_rng(0)
    for _ in range(10):
        n = int(rng.integers(2, 8))
        inst = D2.Depth2Instance(n, int(rng.integers(1, 1 << n)), C.random_perm(n, int(rng.integers(99))))
        assert D2.depth2_amplitude(inst, 0) == 0.0
        assert D2.depth2_amplitudes(inst)[0] == 0.0


def test_identity_permutation_gives_point_mass_at_input():
    inst = D2.Depth2Instance(5, 19, C.identity_perm(5))
    dist = D2.depth2_distribution(inst)
    assert abs(dist[19] - 1.0) < 1e-12
    assert abs(dist.sum() - 1.0) < 1e-12


def test_xor_permutation_gives_point_mass_at_input():
    inst = D2.Depth2Instance(4, 9, C.xorconst_perm(6, 4))
    dist = D2.depth2_distribution(inst)
    sim = D2.depth2_simulated(inst)
    assert abs(dist[9] - 1.0) < 1e-12
    assert np.max(np.abs(dist - sim)) < 1e-12


def test_exhaustive_small_modmul():
    inst = D2.Depth2Instance(3, 5, C.modmul_perm(2, 7, 3))
    dist = D2.depth2_distribution(inst)
    sim = D2.depth2_simulated(inst)
    assert np.max(np.abs(dist - sim)) < 1e-12


def test_per_label_matches_fast_path():
    rng = np.random.default_rng(3)
    inst = D2.Depth2Instance(6, 33, C.random_perm(6, 8))
    amps = D2.depth2_amplitudes(inst)
    for c in rng.integers(0, 64, size=10):
        assert abs(D2.depth2_amplitude(inst, int(c)) - amps[int(c)]) < 1e-12


def test_random_instances_match_simulation():
    rng = np.random.default_rng(42)
    for _ in range(15):
        n = int(rng.integers(2, 11))
        a = int(rng.integers(1, 1 << n))
        inst = D2.Depth2Instance(n, a, C.random_perm(n, int(rng.integers(10**6))))
        dist = D2.depth2_distribution(inst)
        sim = D2.depth2_simulated(inst)
        assert 0.5 * np.abs(dist - sim).sum() < 1e-9  # total variation
        assert abs(dist.sum() - 1.0) < 1e-10


def test_instance_validation():
    with pytest.raises(C.CircuitError):
        D2.Depth2Instance(3, 0, C.identity_perm(3))
    with pytest.raises(C.CircuitError):
        D2.Depth2Instance(3, 9, C.identity_perm(3))
    with pytest.raises(C.CircuitError):
        D2.Depth2Instance(3, 1, C.identity_perm(4))
