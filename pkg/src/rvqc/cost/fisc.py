import numpy as np

from ..circuit import Circuit
from ..statevec import run_circuit, zero_state


def cost_fisc_exact(ansatz: Circuit, target: Circuit) -> float:
    """Fixed-input-state cost 1 - |<0| U^dagger V |0>|^2."""
    if ansatz.n_qubits != target.n_qubits:
        raise ValueError(
            f"Ansatz on {ansatz.n_qubits} qubit(s), target on {target.n_qubits}."
        )
    zero = zero_state(ansatz.n_qubits)
    v0 = run_circuit(zero, ansatz).amplitudes
    u0 = run_circuit(zero, target).amplitudes
    overlap = abs(np.vdot(u0, v0)) ** 2
    return float(min(max(1.0 - overlap, 0.0), 1.0))
