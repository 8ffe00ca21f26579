"""
Noisy simulation with density matrices.

The noise model is synthetic: every gate is followed by single-qubit depolarizing
channels on its support qubits (probability p1 after one-qubit gates, p2 on each qubit
of a two-qubit gate), and each measured bit is flipped independently with probability
p_readout.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ._kernel import apply_matrix
from .circuit import Circuit, Gate
from .exceptions import NumericalError, ResourceLimitError
from .statevec import StateVector

MAX_FIDELITY_DIM = 64
_EIG_CUTOFF = 1.0e-12

_PAULIS = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


@dataclass(frozen=True)
class NoiseModel:
    p1: float = 0.0
    p2: float = 0.0
    p_readout: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.p1 <= 1.0:
            raise ValueError(f"p1 must be in [0, 1], got {self.p1}.")
        if not 0.0 <= self.p2 <= 1.0:
            raise ValueError(f"p2 must be in [0, 1], got {self.p2}.")
        if not 0.0 <= self.p_readout <= 0.5:
            raise ValueError(f"p_readout must be in [0, 1/2], got {self.p_readout}.")

    @property
    def is_ideal(self) -> bool:
        return self.p1 == 0.0 and self.p2 == 0.0 and self.p_readout == 0.0


# magnitudes of contemporary five-qubit devices
DEFAULT_NOISE = NoiseModel(p1=1.0e-3, p2=1.0e-2, p_readout=2.0e-2)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    n_qubits: int
    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        d = 2**self.n_qubits
        if entries.shape != (d, d):
            raise ValueError(
                f"{self.n_qubits} qubit(s) need a {d}x{d} matrix, got {entries.shape}."
            )
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def density_from_state(state: StateVector) -> DensityMatrix:
    psi = state.amplitudes
    return DensityMatrix(state.n_qubits, np.outer(psi, psi.conj()))


def zero_density(n_qubits: int) -> DensityMatrix:
    d = 2**n_qubits
    rho = np.zeros((d, d), dtype=complex)
    rho[0, 0] = 1.0
    return DensityMatrix(n_qubits, rho)


def maximally_mixed(n_qubits: int) -> DensityMatrix:
    d = 2**n_qubits
    return DensityMatrix(n_qubits, np.eye(d, dtype=complex) / d)


def random_density(n_qubits: int, rng: np.random.Generator) -> DensityMatrix:
    """Random full-rank mixed state G G^dagger / Tr(G G^dagger), G complex Gaussian."""
    d = 2**n_qubits
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = g @ g.conj().T
    return DensityMatrix(n_qubits, rho / np.real(np.trace(rho)))


def purity(rho: DensityMatrix) -> float:
    # Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return float(np.sum(np.abs(rho.entries) ** 2))


def _tensor(rho: DensityMatrix) -> np.ndarray:
    return rho.entries.reshape((2,) * (2 * rho.n_qubits))


def _conjugate(t: np.ndarray, n: int, matrix: np.ndarray, qubits) -> np.ndarray:
    # rho -> M rho M^dagger on the tensor with row axes 0..n-1, column axes n..2n-1
    t = apply_matrix(t, matrix, qubits)
    return apply_matrix(t, matrix.conj(), [n + q for q in qubits])


def _depolarize(t: np.ndarray, n: int, qubit: int, p: float) -> np.ndarray:
    if p == 0.0:
        return t
    out = (1 - p) * t
    for pauli in _PAULIS:
        out = out + (p / 3) * _conjugate(t, n, pauli, (qubit,))
    return out


def apply_depolarizing(rho: DensityMatrix, qubit: int, p: float) -> DensityMatrix:
    """rho -> (1-p) rho + p/3 (X rho X + Y rho Y + Z rho Z) on one qubit."""
    n = rho.n_qubits
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"Depolarizing probability must be in [0, 1], got {p}.")
    if not 0 <= qubit < n:
        raise ValueError(f"Qubit {qubit} out of range for {n} qubit(s).")
    t = _depolarize(_tensor(rho), n, qubit, p)
    return DensityMatrix(n, t.reshape(rho.entries.shape))


def apply_unitary(rho: DensityMatrix, gate: Gate) -> DensityMatrix:
    n = rho.n_qubits
    if max(gate.qubits) >= n:
        raise ValueError(
            f"Gate {gate.kind}{gate.qubits} out of range for {n} qubit(s)."
        )
    t = _conjugate(_tensor(rho), n, gate.matrix, gate.qubits)
    return DensityMatrix(n, t.reshape(rho.entries.shape))


def evolve_density(
    rho: DensityMatrix,
    circuit: Circuit,
    noise: NoiseModel,
    channel=None,
) -> DensityMatrix:
    """Apply the circuit gate by gate, each gate followed by depolarizing noise on its
    support qubits.

    `channel(rho, qubit, p)` replaces the depolarizing channel; by default
    `apply_depolarizing`.
    """
    n = rho.n_qubits
    if circuit.n_qubits != n:
        raise ValueError(
            f"Circuit on {circuit.n_qubits} qubit(s) applied to a density matrix "
            f"of {n}."
        )

    if channel is not None:
        for gate in circuit.gates:
            rho = apply_unitary(rho, gate)
            p = noise.p1 if len(gate.qubits) == 1 else noise.p2
            for q in gate.qubits:
                rho = channel(rho, q, p)
        return rho

    # fast path stays on the tensor
    t = _tensor(rho)
    for gate in circuit.gates:
        t = _conjugate(t, n, gate.matrix, gate.qubits)
        p = noise.p1 if len(gate.qubits) == 1 else noise.p2
        for q in gate.qubits:
            t = _depolarize(t, n, q, p)
    return DensityMatrix(n, t.reshape(rho.entries.shape))


def measurement_probs(
    rho: DensityMatrix, noise: NoiseModel, tol: float = 1.0e-9
) -> np.ndarray:
    """Outcome distribution of measuring all qubits, including readout bit flips."""
    probs = np.real(np.diag(rho.entries)).copy()
    if np.any(probs < -tol):
        raise NumericalError(
            f"Density matrix diagonal has entry {np.min(probs):.3e} < {-tol:.1e}."
        )
    if np.any(probs < 0.0):
        probs = np.clip(probs, 0.0, None)
        probs /= np.sum(probs)

    p = noise.p_readout
    if p > 0.0:
        n = rho.n_qubits
        confusion = np.array([[1 - p, p], [p, 1 - p]])
        t = probs.reshape((2,) * n)
        for q in range(n):
            t = apply_matrix(t, confusion, (q,))
        probs = t.reshape(-1)
    return probs


def fidelity_pure(psi: StateVector, rho: DensityMatrix) -> float:
    """<psi| rho |psi>, the fidelity when one of the states is pure."""
    if psi.dim != rho.dim:
        raise ValueError(f"Dimension mismatch: {psi.dim} vs. {rho.dim}.")
    a = psi.amplitudes
    val = np.real(np.vdot(a, rho.entries @ a))
    return float(min(max(val, 0.0), 1.0))


def _sqrt_psd(m: np.ndarray, tol: float) -> np.ndarray:
    w, v = scipy.linalg.eigh(m)
    if w[0] < -tol:
        raise NumericalError(
            f"Matrix is not positive semidefinite (eigenvalue {w[0]:.3e})."
        )
    # round-off eigenvalues of rank-deficient input would contribute O(1e-8) otherwise
    w[w < _EIG_CUTOFF] = 0.0
    return (v * np.sqrt(w)) @ v.conj().T


def fidelity_general(
    rho: DensityMatrix, sigma: DensityMatrix, tol: float = 1.0e-9
) -> float:
    """Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2."""
    if rho.dim != sigma.dim:
        raise ValueError(f"Dimension mismatch: {rho.dim} vs. {sigma.dim}.")
    if rho.dim > MAX_FIDELITY_DIM:
        raise ResourceLimitError(
            f"General fidelity is limited to dimension {MAX_FIDELITY_DIM}, "
            f"got {rho.dim}."
        )
    w = scipy.linalg.eigvalsh(sigma.entries)
    if w[0] < -tol:
        raise NumericalError(
            f"Matrix is not positive semidefinite (eigenvalue {w[0]:.3e})."
        )

    sqrt_rho = _sqrt_psd(rho.entries, tol)
    m = sqrt_rho @ sigma.entries @ sqrt_rho
    # symmetrize against round-off before the Hermitian solver
    m = (m + m.conj().T) / 2
    w = scipy.linalg.eigvalsh(m)
    w[w < _EIG_CUTOFF] = 0.0
    return float(min(np.sum(np.sqrt(w)) ** 2, 1.0))
