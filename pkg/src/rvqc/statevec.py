"""
Ideal statevector simulation. Amplitudes are complex128; basis index b has qubit 0 as
its most significant bit, e.g., on two qubits index 1 is |01> (qubit 1 set).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from ._kernel import apply_matrix
from .circuit import Circuit, Gate
from .exceptions import ResourceLimitError

MAX_QUBITS = 20


@dataclass(frozen=True, eq=False)
class StateVector:
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if amplitudes.shape != (2**self.n_qubits,):
            raise ValueError(
                f"{self.n_qubits} qubit(s) need {2 ** self.n_qubits} amplitudes, "
                f"got shape {amplitudes.shape}."
            )
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]


def zero_state(n_qubits: int) -> StateVector:
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise ResourceLimitError(
            f"Number of qubits must be between 1 and {MAX_QUBITS}, got {n_qubits}."
        )
    amplitudes = np.zeros(2**n_qubits, dtype=complex)
    amplitudes[0] = 1.0
    return StateVector(n_qubits, amplitudes)


def random_state(n_qubits: int, rng: np.random.Generator) -> StateVector:
    """Haar-random pure state."""
    d = 2**n_qubits
    amplitudes = rng.normal(size=d) + 1j * rng.normal(size=d)
    return StateVector(n_qubits, amplitudes / np.linalg.norm(amplitudes))


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    n = state.n_qubits
    if max(gate.qubits) >= n:
        raise ValueError(
            f"Gate {gate.kind}{gate.qubits} out of range for {n} qubit(s)."
        )
    psi = state.amplitudes.reshape((2,) * n)
    psi = apply_matrix(psi, gate.matrix, gate.qubits)
    return StateVector(n, psi.reshape(-1))


def run_circuit(state: StateVector, circuit: Circuit) -> StateVector:
    n = state.n_qubits
    if circuit.n_qubits != n:
        raise ValueError(
            f"Circuit on {circuit.n_qubits} qubit(s) applied to a state of {n}."
        )
    psi = state.amplitudes.reshape((2,) * n)
    for gate in circuit.gates:
        psi = apply_matrix(psi, gate.matrix, gate.qubits)
    return StateVector(n, psi.reshape(-1))


def probabilities(state: StateVector) -> np.ndarray:
    return np.abs(state.amplitudes) ** 2


def prob_all_zero(state: StateVector) -> float:
    # amplitude 0 of a unit vector; clip guards against 1 + eps
    return min(float(abs(state.amplitudes[0]) ** 2), 1.0)


def sample_counts(
    probs: ArrayLike, n_shots: int, rng: np.random.Generator, tol: float = 1.0e-9
) -> dict:
    """Draw `n_shots` measurement outcomes; returns {basis index: count} for all
    outcomes that occurred.
    """
    probs = np.asarray(probs, dtype=float)
    if n_shots < 1:
        raise ValueError(f"Number of shots must be positive, got {n_shots}.")
    if probs.ndim != 1 or np.any(probs < -tol) or abs(np.sum(probs) - 1.0) > tol:
        raise ValueError("Probabilities must be nonnegative and sum to 1.")
    probs = np.clip(probs, 0.0, None)
    counts = rng.multinomial(n_shots, probs / np.sum(probs))
    return {int(i): int(counts[i]) for i in np.flatnonzero(counts)}
