"""
Layered hardware-efficient ansatz V(theta):

    RyRz - ent - RyRz - ent - ... - RyRz

with L entangling blocks and L+1 rotation blocks. A rotation block applies Ry to every
qubit, top to bottom, and then Rz to every qubit, top to bottom; it consumes 2n
consecutive parameters in that order. An entangling block is the CNOT ladder
(0->1), (1->2), ..., (n-2->n-1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from .circuit import Circuit, Gate


@dataclass(frozen=True)
class AnsatzSpec:
    n_qubits: int
    n_ent_layers: int = 4

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError(f"Need at least one qubit, got {self.n_qubits}.")
        if self.n_ent_layers < 0:
            raise ValueError(
                f"Number of entangling layers must be nonnegative, "
                f"got {self.n_ent_layers}."
            )

    @property
    def param_count(self) -> int:
        return 2 * self.n_qubits * (self.n_ent_layers + 1)

    @property
    def gate_count(self) -> int:
        return self.param_count + (self.n_qubits - 1) * self.n_ent_layers


def _check_params(spec: AnsatzSpec, params: ArrayLike) -> np.ndarray:
    params = np.asarray(params, dtype=float)
    if params.shape != (spec.param_count,):
        raise ValueError(
            f"Ansatz with {spec.n_qubits} qubits and {spec.n_ent_layers} entangling "
            f"layers takes {spec.param_count} parameters, got shape {params.shape}."
        )
    if not np.all(np.isfinite(params)):
        raise ValueError("Ansatz parameters must be finite.")
    return params


def build_ansatz(spec: AnsatzSpec, params: ArrayLike) -> Circuit:
    params = _check_params(spec, params)
    n = spec.n_qubits

    gates = []
    for block in range(spec.n_ent_layers + 1):
        if block > 0:
            gates += [Gate("CNOT", (q, q + 1)) for q in range(n - 1)]
        offset = 2 * n * block
        for q in range(n):
            gates.append(Gate("Ry", (q,), params[offset + q], offset + q))
        for q in range(n):
            i = offset + n + q
            gates.append(Gate("Rz", (q,), params[i], i))

    return Circuit(n, gates, label="V(theta)")


def init_params(spec: AnsatzSpec, rng: np.random.Generator) -> np.ndarray:
    """i.i.d. uniform on [-pi, pi), one full period of the Pauli rotations."""
    return rng.uniform(-math.pi, math.pi, size=spec.param_count)
