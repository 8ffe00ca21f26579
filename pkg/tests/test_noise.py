import math

import numpy as np
import pytest

import rvqc
from rvqc.noise import (
    apply_unitary,
    density_from_state,
    maximally_mixed,
    purity,
    random_density,
    zero_density,
)
from rvqc.statevec import random_state

from .helpers import assert_density_valid, near_equal


def test_density_from_state():
    rho = density_from_state(rvqc.zero_state(1))
    assert near_equal(rho.entries, [[1, 0], [0, 0]], 0.0)

    psi = rvqc.run_circuit(rvqc.zero_state(1), rvqc.from_sequence(1, [("H", 0)]))
    assert near_equal(density_from_state(psi).entries, np.full((2, 2), 0.5), 1.0e-15)

    psi = random_state(3, np.random.default_rng(0))
    rho = density_from_state(psi)
    assert abs(np.trace(rho.entries) - 1.0) < 1.0e-12
    assert np.linalg.matrix_rank(rho.entries, tol=1.0e-10) == 1


def test_depolarizing():
    rho = random_density(2, np.random.default_rng(1))
    assert near_equal(rvqc.apply_depolarizing(rho, 1, 0.0).entries, rho.entries, 0.0)

    out = rvqc.apply_depolarizing(zero_density(1), 0, 0.75)
    assert near_equal(out.entries, np.eye(2) / 2, 1.0e-12)


@pytest.mark.parametrize("seed", range(10))
def test_depolarizing_sanity(seed):
    rng = np.random.default_rng(seed)
    rho = random_density(2, rng)
    out = rvqc.apply_depolarizing(rho, int(rng.integers(2)), float(rng.uniform()))
    assert_density_valid(out)


def test_depolarizing_invalid():
    with pytest.raises(ValueError):
        rvqc.apply_depolarizing(zero_density(1), 0, 1.5)
    with pytest.raises(ValueError):
        rvqc.apply_depolarizing(zero_density(1), 1, 0.1)


def test_evolve_density():
    h = rvqc.from_sequence(1, [("H", 0)])
    out = rvqc.evolve_density(zero_density(1), h, rvqc.NoiseModel())
    assert near_equal(out.entries, np.full((2, 2), 0.5), 1.0e-15)

    x = rvqc.from_sequence(1, [("X", 0)])
    out = rvqc.evolve_density(zero_density(1), x, rvqc.NoiseModel(p1=0.75))
    assert near_equal(out.entries, np.eye(2) / 2, 1.0e-12)

    with pytest.raises(ValueError):
        rvqc.evolve_density(zero_density(2), h, rvqc.NoiseModel())


@pytest.mark.parametrize("seed", range(5))
def test_noiseless_matches_statevector(seed):
    rng = np.random.default_rng(seed)
    c = rvqc.random_circuit(4, 80, rng)
    psi = random_state(4, rng)
    rho = rvqc.evolve_density(density_from_state(psi), c, rvqc.NoiseModel())
    ref = density_from_state(rvqc.run_circuit(psi, c))
    assert near_equal(rho.entries, ref.entries, 1.0e-10)


def test_two_qubit_gate_noise():
    # a two-qubit gate depolarizes both of its qubits with p2
    cnot = rvqc.from_sequence(2, [("CNOT", 0, 1)])
    out = rvqc.evolve_density(zero_density(2), cnot, rvqc.NoiseModel(p2=0.75))
    assert near_equal(out.entries, np.eye(4) / 4, 1.0e-12)

    # p1 does not apply to it
    out = rvqc.evolve_density(zero_density(2), cnot, rvqc.NoiseModel(p1=0.75))
    assert near_equal(out.entries, zero_density(2).entries, 1.0e-15)


def test_injected_channel():
    calls = []

    def channel(rho, qubit, p):
        calls.append((qubit, p))
        return rvqc.apply_depolarizing(rho, qubit, p)

    c = rvqc.from_sequence(2, [("H", 0), ("CNOT", 0, 1)])
    noise = rvqc.NoiseModel(p1=0.1, p2=0.2)
    out = rvqc.evolve_density(zero_density(2), c, noise, channel=channel)
    assert calls == [(0, 0.1), (0, 0.2), (1, 0.2)]
    ref = rvqc.evolve_density(zero_density(2), c, noise)
    assert near_equal(out.entries, ref.entries, 1.0e-14)


def test_maximally_mixed_fixed_point():
    rng = np.random.default_rng(2)
    c = rvqc.random_circuit(3, 100, rng)
    out = rvqc.evolve_density(maximally_mixed(3), c, rvqc.NoiseModel(0.3, 0.6, 0.1))
    assert near_equal(out.entries, maximally_mixed(3).entries, 1.0e-9)


def test_deep_circuit_purity():
    # purity decays toward 1/d under repeated depolarizing
    rng = np.random.default_rng(3)
    noise = rvqc.NoiseModel(0.01, 0.01)
    rho = zero_density(2)
    values = [purity(rho)]
    for _ in range(5):
        rho = rvqc.evolve_density(rho, rvqc.random_circuit(2, 100, rng), noise)
        assert_density_valid(rho)
        values.append(purity(rho))
    assert all(a > b for a, b in zip(values, values[1:]))
    assert abs(values[-1] - 0.25) < 0.02


def test_depolarizing_against_trajectories():
    # Monte-Carlo unraveling: apply X, Y, Z with probability p/3 each
    rng = np.random.default_rng(4)
    p = 0.3
    c = rvqc.from_sequence(1, [("H", 0), ("Ry", 0, 0.4)])
    exact = rvqc.evolve_density(zero_density(1), c, rvqc.NoiseModel(p1=p))

    n_traj = 20000
    paulis = ["X", "Y", "Z"]
    acc = np.zeros((2, 2), dtype=complex)
    for _ in range(n_traj):
        psi = rvqc.zero_state(1)
        for gate in c:
            psi = rvqc.run_circuit(psi, rvqc.Circuit(1, [gate]))
            r = rng.uniform()
            if r < p:
                kick = rvqc.from_sequence(1, [(paulis[int(3 * r / p)], 0)])
                psi = rvqc.run_circuit(psi, kick)
        acc += density_from_state(psi).entries
    acc /= n_traj
    # standard error of each entry is below 0.5 / sqrt(n_traj)
    assert near_equal(acc, exact.entries, 4 * 0.5 / math.sqrt(n_traj))


@pytest.mark.parametrize(
    "n, p, ref",
    [
        (1, 0.0, [1.0, 0.0]),
        (1, 0.1, [0.9, 0.1]),
        (2, 0.1, [0.81, 0.09, 0.09, 0.01]),
    ],
)
def test_measurement_probs(n, p, ref):
    probs = rvqc.measurement_probs(zero_density(n), rvqc.NoiseModel(p_readout=p))
    assert near_equal(probs, ref, 1.0e-14)
    assert abs(np.sum(probs) - 1.0) < 1.0e-10


def test_measurement_probs_clipping():
    rho = rvqc.DensityMatrix(1, [[1.0 + 1e-12, 0.0], [0.0, -1e-12]])
    probs = rvqc.measurement_probs(rho, rvqc.NoiseModel())
    assert np.all(probs >= 0.0)

    rho = rvqc.DensityMatrix(1, [[1.1, 0.0], [0.0, -0.1]])
    with pytest.raises(rvqc.NumericalError):
        rvqc.measurement_probs(rho, rvqc.NoiseModel())


def test_fidelity_pure():
    psi = random_state(2, np.random.default_rng(5))
    assert abs(rvqc.fidelity_pure(psi, density_from_state(psi)) - 1.0) < 1.0e-12

    zero = rvqc.zero_state(1)
    assert abs(rvqc.fidelity_pure(zero, maximally_mixed(1)) - 0.5) < 1.0e-12

    one = rvqc.DensityMatrix(1, [[0, 0], [0, 1]])
    assert rvqc.fidelity_pure(zero, one) == 0.0


def test_fidelity_general():
    rng = np.random.default_rng(6)
    rho = random_density(2, rng)
    sigma = random_density(2, rng)
    assert abs(rvqc.fidelity_general(rho, rho) - 1.0) < 1.0e-9
    half = maximally_mixed(1)
    assert abs(rvqc.fidelity_general(zero_density(1), half) - 0.5) < 1.0e-12
    assert abs(rvqc.fidelity_general(half, half) - 1.0) < 1.0e-12

    f = rvqc.fidelity_general(rho, sigma)
    assert 0.0 <= f <= 1.0
    assert abs(f - rvqc.fidelity_general(sigma, rho)) < 1.0e-8


@pytest.mark.parametrize("seed", range(5))
def test_fidelity_general_pure(seed):
    rng = np.random.default_rng(seed)
    psi = random_state(3, rng)
    sigma = random_density(3, rng)
    ref = rvqc.fidelity_pure(psi, sigma)
    assert abs(rvqc.fidelity_general(density_from_state(psi), sigma) - ref) < 1.0e-10


def test_fidelity_general_errors():
    with pytest.raises(rvqc.ResourceLimitError):
        rvqc.fidelity_general(zero_density(7), zero_density(7))

    bad = rvqc.DensityMatrix(1, [[1.5, 0.0], [0.0, -0.5]])
    with pytest.raises(rvqc.NumericalError):
        rvqc.fidelity_general(bad, zero_density(1))
    with pytest.raises(rvqc.NumericalError):
        rvqc.fidelity_general(zero_density(1), bad)


def test_apply_unitary():
    x = rvqc.circuit.Gate("X", (0,))
    out = apply_unitary(zero_density(1), x)
    assert near_equal(out.entries, [[0, 0], [0, 1]], 0.0)


@pytest.mark.parametrize(
    "kwargs", [{"p1": -0.1}, {"p2": 1.1}, {"p_readout": 0.6}]
)
def test_noise_model_invalid(kwargs):
    with pytest.raises(ValueError):
        rvqc.NoiseModel(**kwargs)
