"""
Full-unitary cost 1 - |Tr(V^dagger U)|^2 / d^2, evaluated classically from explicit
matrices. Zero iff V equals U up to a global phase.
"""
import numpy as np

from ..circuit import Circuit, unitary_matrix


def cost_fumc_exact(ansatz: Circuit, target: Circuit) -> float:
    if ansatz.n_qubits != target.n_qubits:
        raise ValueError(
            f"Ansatz on {ansatz.n_qubits} qubit(s), target on {target.n_qubits}."
        )
    v = unitary_matrix(ansatz)
    u = unitary_matrix(target)
    d = v.shape[0]
    # Tr(V^dagger U) = sum_ij conj(V_ij) U_ij
    overlap = abs(np.vdot(v, u)) ** 2 / d**2
    return float(min(max(1.0 - overlap, 0.0), 1.0))
