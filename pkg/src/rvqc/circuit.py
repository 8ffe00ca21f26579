"""
Circuit intermediate representation.

A circuit is an ordered list of gates; list order is execution order, so the operator
product U = U_N ... U_2 U_1 is stored as the gates of U_1 followed by those of U_2
and so on. Basis states are indexed with qubit 0 as the most significant bit.

"Depth" throughout this package means the number of gates, not the number of parallel
layers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ._kernel import apply_matrix
from .exceptions import ResourceLimitError

ONE_QUBIT_KINDS = ("H", "X", "Y", "Z", "Rx", "Ry", "Rz")
TWO_QUBIT_KINDS = ("CNOT", "SWAP")
KINDS = ONE_QUBIT_KINDS + TWO_QUBIT_KINDS
ROTATIONS = ("Rx", "Ry", "Rz")

MAX_UNITARY_QUBITS = 10

_SQRT1_2 = 1 / math.sqrt(2)

_FIXED = {
    "H": np.array([[_SQRT1_2, _SQRT1_2], [_SQRT1_2, -_SQRT1_2]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    # control is the first qubit
    "CNOT": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
    "SWAP": np.array(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
    ),
}


def rotation_matrix(kind: str, angle: float) -> np.ndarray:
    c = math.cos(angle / 2)
    s = math.sin(angle / 2)
    if kind == "Rx":
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
    if kind == "Ry":
        return np.array([[c, -s], [s, c]], dtype=complex)
    if kind == "Rz":
        return np.array([[c - 1j * s, 0], [0, c + 1j * s]], dtype=complex)
    raise KeyError(f"Illegal rotation {kind}. Choose one of {', '.join(ROTATIONS)}.")


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple
    angle: float | None = None
    # slot in the owning ansatz' parameter vector, trainable rotations only
    param_id: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(
                f"Illegal gate kind {self.kind}. Choose one of {', '.join(KINDS)}."
            )
        qubits = tuple(int(q) for q in self.qubits)
        object.__setattr__(self, "qubits", qubits)

        arity = 2 if self.kind in TWO_QUBIT_KINDS else 1
        if len(qubits) != arity:
            raise ValueError(f"{self.kind} acts on {arity} qubit(s), got {qubits}.")
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"Qubits of {self.kind} must be distinct, got {qubits}.")
        if any(q < 0 for q in qubits):
            raise ValueError(f"Negative qubit index in {qubits}.")

        if self.kind in ROTATIONS:
            if self.angle is None or not math.isfinite(self.angle):
                raise ValueError(f"{self.kind} needs a finite angle, got {self.angle}.")
            object.__setattr__(self, "angle", float(self.angle))
        else:
            if self.angle is not None:
                raise ValueError(f"{self.kind} takes no angle.")
            if self.param_id is not None:
                raise ValueError(f"{self.kind} cannot carry a parameter.")

    @property
    def matrix(self) -> np.ndarray:
        if self.kind in ROTATIONS:
            return rotation_matrix(self.kind, self.angle)
        return _FIXED[self.kind]

    def adjoint(self) -> Gate:
        if self.kind in ROTATIONS:
            return Gate(self.kind, self.qubits, -self.angle, self.param_id)
        # all fixed gates are self-adjoint
        return self


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    gates: tuple = ()
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError(
                f"A circuit needs at least one qubit, got {self.n_qubits}."
            )
        gates = tuple(self.gates)
        object.__setattr__(self, "gates", gates)
        for gate in gates:
            if max(gate.qubits) >= self.n_qubits:
                raise ValueError(
                    f"Gate {gate.kind}{gate.qubits} out of range for "
                    f"{self.n_qubits} qubit(s)."
                )

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    @property
    def gate_count(self) -> int:
        return len(self.gates)


def random_circuit(n_qubits: int, gate_count: int, rng: np.random.Generator) -> Circuit:
    """Random circuit with gate kinds drawn uniformly from all nine kinds, qubits drawn
    uniformly without replacement and rotation angles uniform on [-pi, pi).
    """
    if n_qubits < 1:
        raise ValueError(f"A circuit needs at least one qubit, got {n_qubits}.")

    gates = []
    for _ in range(gate_count):
        kind = KINDS[rng.integers(len(KINDS))]
        if n_qubits == 1 and kind in TWO_QUBIT_KINDS:
            kind = ONE_QUBIT_KINDS[rng.integers(len(ONE_QUBIT_KINDS))]
        arity = 2 if kind in TWO_QUBIT_KINDS else 1
        qubits = tuple(rng.choice(n_qubits, size=arity, replace=False))
        angle = rng.uniform(-math.pi, math.pi) if kind in ROTATIONS else None
        gates.append(Gate(kind, qubits, angle))
    return Circuit(n_qubits, gates, label="U")


def split(circuit: Circuit, n_parts: int) -> list[Circuit]:
    """Cut the circuit into `n_parts` contiguous pieces U_1, ..., U_N whose sizes differ
    by at most one; the first pieces absorb the remainder.
    """
    if n_parts < 1:
        raise ValueError(f"Need at least one part, got {n_parts}.")
    q, r = divmod(len(circuit), n_parts)
    parts = []
    start = 0
    for k in range(n_parts):
        size = q + 1 if k < r else q
        parts.append(
            Circuit(
                circuit.n_qubits,
                circuit.gates[start : start + size],
                label=f"U_{k + 1}",
            )
        )
        start += size
    return parts


def inverse(circuit: Circuit) -> Circuit:
    label = f"{circuit.label}^dagger" if circuit.label else ""
    gates = [gate.adjoint() for gate in reversed(circuit.gates)]
    return Circuit(circuit.n_qubits, gates, label=label)


def concat(*circuits: Circuit) -> Circuit:
    """Execute the circuits one after the other."""
    if not circuits:
        raise ValueError("Need at least one circuit to concatenate.")
    n = circuits[0].n_qubits
    for c in circuits[1:]:
        if c.n_qubits != n:
            raise ValueError(
                f"Cannot concatenate circuits on {n} and {c.n_qubits} qubits."
            )
    gates = [gate for c in circuits for gate in c.gates]
    label = " ".join(c.label for c in circuits if c.label)
    return Circuit(n, gates, label=label)


def unitary_matrix(circuit: Circuit) -> np.ndarray:
    """The d x d matrix of the circuit; column j is the circuit applied to |j>."""
    n = circuit.n_qubits
    if n > MAX_UNITARY_QUBITS:
        raise ResourceLimitError(
            f"Explicit unitaries are limited to {MAX_UNITARY_QUBITS} qubits, got {n}."
        )
    d = 2**n
    u = np.eye(d, dtype=complex).reshape((2,) * n + (d,))
    for gate in circuit.gates:
        u = apply_matrix(u, gate.matrix, gate.qubits)
    return u.reshape(d, d)


def gate_counts(circuit: Circuit) -> dict:
    counts = {kind: 0 for kind in KINDS}
    for gate in circuit.gates:
        counts[gate.kind] += 1
    return counts


# Text format: one gate per line, `KIND q0[,q1][,angle]`, angles with 17 significant
# digits so that a dump/load cycle reproduces the circuit bit-exactly.
def dumps(circuit: Circuit, comments=()) -> str:
    """`comments` are written as leading `# ...` lines, which `loads` skips."""
    lines = [f"# {c}" for c in comments]
    for gate in circuit.gates:
        fields = [str(q) for q in gate.qubits]
        if gate.angle is not None:
            fields.append(f"{gate.angle:.17g}")
        lines.append(f"{gate.kind} {','.join(fields)}")
    return "".join(line + "\n" for line in lines)


def loads(text: str, n_qubits: int, label: str = "U") -> Circuit:
    gates = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            kind, args = line.split(None, 1)
            fields = args.split(",")
            arity = 2 if kind in TWO_QUBIT_KINDS else 1
            qubits = tuple(int(f) for f in fields[:arity])
            rest = fields[arity:]
            if kind in ROTATIONS:
                (angle,) = rest
                angle = float(angle)
            else:
                if rest:
                    raise ValueError(f"unexpected fields {rest}")
                angle = None
            gates.append(Gate(kind, qubits, angle))
        except ValueError as e:
            raise ValueError(f"Line {lineno}: cannot parse gate `{line}` ({e}).") from e
    return Circuit(n_qubits, gates, label=label)


def write_circuit(filename, circuit: Circuit, comments=()):
    with open(filename, "w") as f:
        f.write(dumps(circuit, comments))


def read_circuit(filename, n_qubits: int, label: str = "U") -> Circuit:
    with open(filename) as f:
        return loads(f.read(), n_qubits, label=label)


def from_sequence(n_qubits: int, spec: Sequence, label: str = "") -> Circuit:
    """Short-hand constructor, e.g. `from_sequence(2, [("H", 0), ("CNOT", 0, 1)])` or
    `from_sequence(1, [("Ry", 0, 0.7)])`.
    """
    gates = []
    for item in spec:
        kind = item[0]
        arity = 2 if kind in TWO_QUBIT_KINDS else 1
        qubits = item[1 : 1 + arity]
        angle = item[1 + arity] if kind in ROTATIONS else None
        gates.append(Gate(kind, qubits, angle))
    return Circuit(n_qubits, gates, label=label)
