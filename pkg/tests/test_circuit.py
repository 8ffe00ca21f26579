import math

import numpy as np
import pytest

import rvqc
from rvqc.circuit import KINDS, Gate

from . import circuits
from .helpers import near_equal


def test_random_circuit_deterministic():
    a = rvqc.random_circuit(5, 5000, np.random.default_rng(7))
    b = rvqc.random_circuit(5, 5000, np.random.default_rng(7))
    assert a == b
    assert len(a) == 5000


def test_random_circuit_empty():
    c = rvqc.random_circuit(2, 0, np.random.default_rng(0))
    assert len(c) == 0
    assert c.n_qubits == 2


def test_random_circuit_uniform_kinds():
    c = rvqc.random_circuit(3, 9000, np.random.default_rng(1))
    counts = rvqc.gate_counts(c)
    assert set(counts) == set(KINDS)
    # 1000 expected per kind, binomial sd ~ 31
    for kind, count in counts.items():
        assert abs(count - 1000) < 150, kind
    for gate in c:
        if gate.kind in ("Rx", "Ry", "Rz"):
            assert -math.pi <= gate.angle < math.pi


def test_random_circuit_one_qubit():
    c = rvqc.random_circuit(1, 500, np.random.default_rng(2))
    counts = rvqc.gate_counts(c)
    assert counts["CNOT"] == 0
    assert counts["SWAP"] == 0
    assert len(c) == 500


@pytest.mark.parametrize(
    "n_gates, n_parts, sizes",
    [
        (7, 3, [3, 2, 2]),
        (6, 3, [2, 2, 2]),
        (5, 1, [5]),
        (2, 4, [1, 1, 0, 0]),
    ],
)
def test_split(n_gates, n_parts, sizes):
    c = rvqc.random_circuit(2, n_gates, np.random.default_rng(0))
    parts = rvqc.split(c, n_parts)
    assert [len(p) for p in parts] == sizes
    assert [p.label for p in parts] == [f"U_{k + 1}" for k in range(n_parts)]
    assert rvqc.concat(*parts) == c


def test_split_seven_gates():
    c = circuits.seven_gates()
    parts = rvqc.split(c, 3)
    assert rvqc.concat(*parts) == c
    u = np.eye(4)
    for p in parts:
        u = rvqc.unitary_matrix(p) @ u
    assert near_equal(u, rvqc.unitary_matrix(c), 1.0e-12)


def test_split_invalid():
    with pytest.raises(ValueError):
        rvqc.split(circuits.bell(), 0)


def test_inverse():
    c = rvqc.from_sequence(2, [("H", 0), ("CNOT", 0, 1)])
    assert rvqc.inverse(c) == rvqc.from_sequence(2, [("CNOT", 0, 1), ("H", 0)])

    c = rvqc.from_sequence(1, [("Ry", 0, 0.7)])
    assert rvqc.inverse(c) == rvqc.from_sequence(1, [("Ry", 0, -0.7)])


def test_inverse_keeps_param_id():
    gate = Gate("Rz", (0,), 0.3, param_id=4)
    assert gate.adjoint() == Gate("Rz", (0,), -0.3, param_id=4)


def test_concat():
    a = circuits.bell()
    b = rvqc.from_sequence(2, [("X", 1)])
    c = rvqc.concat(a, b)
    assert c.gates == a.gates + b.gates
    assert rvqc.concat(a, rvqc.Circuit(2)) == a

    with pytest.raises(ValueError):
        rvqc.concat(a, rvqc.Circuit(3))


def test_unitary_matrix():
    assert near_equal(rvqc.unitary_matrix(rvqc.Circuit(2)), np.eye(4), 0.0)

    s = 1 / math.sqrt(2)
    h = rvqc.unitary_matrix(rvqc.from_sequence(1, [("H", 0)]))
    assert near_equal(h, [[s, s], [s, -s]], 1.0e-15)

    u = rvqc.unitary_matrix(rvqc.random_circuit(2, 20, np.random.default_rng(3)))
    assert near_equal(u.conj().T @ u, np.eye(4), 1.0e-10)


def test_unitary_matrix_column_order():
    # column j is the image of |j>
    u = rvqc.unitary_matrix(rvqc.from_sequence(2, [("X", 1)]))
    assert near_equal(u[:, 0], [0, 1, 0, 0], 0.0)


def test_unitary_matrix_guard():
    with pytest.raises(rvqc.ResourceLimitError):
        rvqc.unitary_matrix(rvqc.Circuit(11))


@pytest.mark.parametrize(
    "kind, qubits, angle",
    [
        ("T", (0,), None),
        ("CNOT", (0,), None),
        ("CNOT", (1, 1), None),
        ("H", (-1,), None),
        ("Rx", (0,), None),
        ("Rx", (0,), math.inf),
        ("X", (0,), 0.5),
    ],
)
def test_gate_invalid(kind, qubits, angle):
    with pytest.raises(ValueError):
        Gate(kind, qubits, angle)


def test_circuit_out_of_range():
    with pytest.raises(ValueError):
        rvqc.Circuit(2, [Gate("X", (2,))])


def test_text_format():
    c = rvqc.random_circuit(3, 200, np.random.default_rng(4))
    assert rvqc.loads(rvqc.dumps(c), 3) == c

    text = "# comment\n\nH 0\nCNOT 0,1\nRy 1,0.5\n"
    assert rvqc.loads(text, 2) == rvqc.from_sequence(
        2, [("H", 0), ("CNOT", 0, 1), ("Ry", 1, 0.5)]
    )
    text = rvqc.dumps(rvqc.from_sequence(1, [("Rz", 0, 0.1)]))
    assert text == "Rz 0,0.10000000000000001\n"


@pytest.mark.parametrize(
    "text",
    ["H", "H 0,0.5", "Ry 0", "CNOT 0", "Foo 0", "H x"],
)
def test_loads_invalid(text):
    with pytest.raises(ValueError, match="Line 1"):
        rvqc.loads(text, 2)


def test_read_write(tmp_path):
    c = rvqc.random_circuit(2, 50, np.random.default_rng(5))
    rvqc.write_circuit(tmp_path / "c.circ", c)
    assert rvqc.read_circuit(tmp_path / "c.circ", 2) == c


def test_comment_header(tmp_path):
    c = rvqc.from_sequence(1, [("X", 0)])
    text = rvqc.dumps(c, ["master_seed: 4", "one-qubit flip"])
    assert text == "# master_seed: 4\n# one-qubit flip\nX 0\n"
    assert rvqc.loads(text, 1) == c

    rvqc.write_circuit(tmp_path / "c.circ", c, ["master_seed: 4"])
    assert (tmp_path / "c.circ").read_text().startswith("# master_seed: 4\n")
    assert rvqc.read_circuit(tmp_path / "c.circ", 1) == c
