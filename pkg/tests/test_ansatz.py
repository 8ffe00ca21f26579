import numpy as np
import pytest

import rvqc

from .helpers import assert_state_equal


@pytest.mark.parametrize(
    "n, layers, param_count, n_cnots",
    [
        (5, 4, 50, 16),
        (3, 1, 12, 2),
        (2, 0, 4, 0),
        (1, 3, 8, 0),
    ],
)
def test_sizes(n, layers, param_count, n_cnots):
    spec = rvqc.AnsatzSpec(n, layers)
    assert spec.param_count == param_count

    c = rvqc.build_ansatz(spec, np.zeros(param_count))
    counts = rvqc.gate_counts(c)
    assert counts["Ry"] + counts["Rz"] == param_count
    assert counts["CNOT"] == n_cnots
    assert len(c) == spec.gate_count


def test_layout():
    spec = rvqc.AnsatzSpec(3, 1)
    params = np.arange(12) / 10
    kinds = [(g.kind, g.qubits, g.param_id) for g in rvqc.build_ansatz(spec, params)]
    assert kinds == [
        ("Ry", (0,), 0),
        ("Ry", (1,), 1),
        ("Ry", (2,), 2),
        ("Rz", (0,), 3),
        ("Rz", (1,), 4),
        ("Rz", (2,), 5),
        ("CNOT", (0, 1), None),
        ("CNOT", (1, 2), None),
        ("Ry", (0,), 6),
        ("Ry", (1,), 7),
        ("Ry", (2,), 8),
        ("Rz", (0,), 9),
        ("Rz", (1,), 10),
        ("Rz", (2,), 11),
    ]
    for gate in rvqc.build_ansatz(spec, params):
        if gate.param_id is not None:
            assert gate.angle == params[gate.param_id]


def test_zero_params_identity():
    spec = rvqc.AnsatzSpec(2, 0)
    rng = np.random.default_rng(0)
    psi = rvqc.StateVector(2, rng.normal(size=4) + 1j * rng.normal(size=4))
    out = rvqc.run_circuit(psi, rvqc.build_ansatz(spec, np.zeros(4)))
    assert_state_equal(out, psi, 1.0e-15)


@pytest.mark.parametrize("params", [np.zeros(11), np.zeros(13), [np.nan] * 12])
def test_invalid_params(params):
    with pytest.raises(ValueError):
        rvqc.build_ansatz(rvqc.AnsatzSpec(3, 1), params)


def test_invalid_spec():
    with pytest.raises(ValueError):
        rvqc.AnsatzSpec(0)
    with pytest.raises(ValueError):
        rvqc.AnsatzSpec(2, -1)


def test_init_params():
    spec = rvqc.AnsatzSpec(5, 4)
    a = rvqc.init_params(spec, np.random.default_rng(3))
    b = rvqc.init_params(spec, np.random.default_rng(3))
    assert np.array_equal(a, b)
    assert a.shape == (50,)
    assert np.all(a >= -np.pi)
    assert np.all(a < np.pi)


def test_init_params_moments():
    spec = rvqc.AnsatzSpec(5, 4)
    samples = np.concatenate(
        [rvqc.init_params(spec, np.random.default_rng(seed)) for seed in range(2000)]
    )
    assert samples.size == 10**5
    assert abs(np.mean(samples)) < 0.03
    assert abs(np.var(samples) - np.pi**2 / 3) < 0.1
