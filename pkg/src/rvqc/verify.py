"""
Cross-module self-check. The set of properties is fixed; `rvqc verify` runs all of them
and exits 1 if any fails.
"""
from __future__ import annotations

import itertools

import numpy as np

from .ansatz import AnsatzSpec, build_ansatz, init_params
from .circuit import concat, inverse, random_circuit, unitary_matrix
from .cost import CostContext, cost_exact, cost_fisc_exact
from .noise import (
    DensityMatrix,
    NoiseModel,
    apply_depolarizing,
    evolve_density,
    fidelity_pure,
    maximally_mixed,
    measurement_probs,
    random_density,
    zero_density,
)
from .optim import parameter_shift_gradient
from .statevec import random_state, run_circuit, zero_state


class PropertyFailure(Exception):
    pass


def _expect(condition, message):
    if not condition:
        raise PropertyFailure(message)


def full_matrix(matrix: np.ndarray, qubits, n: int) -> np.ndarray:
    """The 2^n x 2^n operator of a gate matrix acting on `qubits`, built entry by entry
    from the bit patterns. Slow, but independent of the simulator kernels.
    """
    d = 2**n
    out = np.zeros((d, d), dtype=complex)

    def bits(b):
        return [(b >> (n - 1 - q)) & 1 for q in range(n)]

    for row, col in itertools.product(range(d), repeat=2):
        rb, cb = bits(row), bits(col)
        if any(rb[q] != cb[q] for q in range(n) if q not in qubits):
            continue
        i = int("".join(str(rb[q]) for q in qubits), 2)
        j = int("".join(str(cb[q]) for q in qubits), 2)
        out[row, col] = matrix[i, j]
    return out


def circuit_matrix(circuit) -> np.ndarray:
    d = 2**circuit.n_qubits
    u = np.eye(d, dtype=complex)
    for gate in circuit.gates:
        u = full_matrix(gate.matrix, gate.qubits, circuit.n_qubits) @ u
    return u


def _random_circuits(rng, count, max_qubits=3, max_gates=100):
    for _ in range(count):
        n = int(rng.integers(1, max_qubits + 1))
        yield random_circuit(n, int(rng.integers(0, max_gates + 1)), rng)


def statevector_oracle(rng, channel):
    for c in _random_circuits(rng, 100):
        psi = random_state(c.n_qubits, rng)
        ref = circuit_matrix(c) @ psi.amplitudes
        err = np.max(np.abs(run_circuit(psi, c).amplitudes - ref))
        _expect(err < 1.0e-10, f"statevector deviates by {err:.2e} ({len(c)} gates)")


def density_oracle(rng, channel):
    for c in _random_circuits(rng, 100):
        rho = random_density(c.n_qubits, rng)
        u = circuit_matrix(c)
        ref = u @ rho.entries @ u.conj().T
        out = evolve_density(rho, c, NoiseModel()).entries
        err = np.max(np.abs(out - ref))
        _expect(err < 1.0e-10, f"noiseless density deviates by {err:.2e}")


def inverse_is_adjoint(rng, channel):
    for _ in range(20):
        c = random_circuit(3, 50, rng)
        u = unitary_matrix(c)
        err = np.max(np.abs(unitary_matrix(inverse(c)) - u.conj().T))
        _expect(err < 1.0e-10, f"inverse deviates from adjoint by {err:.2e}")
        _expect(inverse(inverse(c)) == c, "inverse is not an involution")


def parameter_shift_vs_finite_differences(rng, channel):
    h = 1.0e-5
    for trial in range(20):
        spec = AnsatzSpec(3, trial % 3)
        prev = init_params(spec, rng) if trial % 2 else None
        ctx = CostContext(spec, random_circuit(3, 20, rng), prev)
        params = init_params(spec, rng)

        def cost(x):
            return cost_exact(ctx, x)

        grad = parameter_shift_gradient(cost, params)
        for i in range(spec.param_count):
            e = np.zeros(spec.param_count)
            e[i] = h
            fd = (cost(params + e) - cost(params - e)) / (2 * h)
            _expect(
                abs(grad[i] - fd) < 1.0e-6,
                f"parameter {i}: shift rule {grad[i]:.10f}, "
                f"finite difference {fd:.10f}",
            )


def _check_density(rho: DensityMatrix, what):
    m = rho.entries
    herm = np.max(np.abs(m - m.conj().T))
    _expect(herm < 1.0e-10, f"{what}: not Hermitian ({herm:.2e})")
    trace = abs(np.trace(m) - 1.0)
    _expect(trace < 1.0e-10, f"{what}: trace deviates from 1 by {trace:.2e}")
    w = np.linalg.eigvalsh((m + m.conj().T) / 2)
    _expect(w[0] >= -1.0e-9, f"{what}: negative eigenvalue {w[0]:.2e}")


def channel_sanity(rng, channel):
    for _ in range(200):
        n = int(rng.integers(1, 3))
        rho = random_density(n, rng)
        q = int(rng.integers(n))
        p = float(rng.uniform(0.0, 1.0))
        _check_density(channel(rho, q, p), "depolarizing channel")

        noise = NoiseModel(*rng.uniform(0.0, [0.2, 0.2, 0.5]))
        rho = evolve_density(rho, random_circuit(n, 10, rng), noise, channel=channel)
        _check_density(rho, "noisy evolution")
        probs = measurement_probs(rho, noise)
        _expect(abs(np.sum(probs) - 1.0) < 1.0e-10, "measurement probabilities")


def fixed_points(rng, channel):
    rho = channel(zero_density(1), 0, 0.75)
    err = np.max(np.abs(rho.entries - np.eye(2) / 2))
    _expect(err < 1.0e-12, f"depolarizing channel: p=3/4 misses I/2 by {err:.2e}")

    f = fidelity_pure(zero_state(1), maximally_mixed(1))
    _expect(abs(f - 0.5) < 1.0e-12, f"F(|0>, I/2) = {f}")

    for n in (1, 2, 3):
        noise = NoiseModel(*rng.uniform(0.0, [1.0, 1.0, 0.5]))
        out = evolve_density(
            maximally_mixed(n), random_circuit(n, 30, rng), noise, channel=channel
        )
        err = np.max(np.abs(out.entries - maximally_mixed(n).entries))
        _expect(err < 1.0e-9, f"depolarizing channel: I/d not invariant ({err:.2e})")


def telescoping(rng, channel):
    # parts U_k = V(theta^(k)) V^dagger(theta^(k-1)) are compiled exactly by theta^(k)
    spec = AnsatzSpec(3, 2)
    thetas = [init_params(spec, rng) for _ in range(5)]
    parts = [build_ansatz(spec, thetas[0])]
    for a, b in zip(thetas, thetas[1:]):
        parts.append(concat(inverse(build_ansatz(spec, a)), build_ansatz(spec, b)))

    prev = None
    for k, (part, theta) in enumerate(zip(parts, thetas), start=1):
        c = cost_exact(CostContext(spec, part, prev), theta)
        _expect(c < 1.0e-9, f"step {k}: cost {c:.2e} of the exact solution")
        prev = theta
        total = cost_fisc_exact(build_ansatz(spec, theta), concat(*parts[:k]))
        _expect(total < 1.0e-9, f"after step {k}: overall cost {total:.2e}")


PROPERTIES = (
    ("statevector agrees with explicit matrix products", statevector_oracle),
    ("noiseless density evolution agrees with matrix products", density_oracle),
    ("inverse circuit is the adjoint", inverse_is_adjoint),
    (
        "parameter shift equals finite differences",
        parameter_shift_vs_finite_differences,
    ),
    ("channel sanity (Hermitian, unit trace, positive)", channel_sanity),
    ("channel fixed points", fixed_points),
    ("telescoping soundness of the recursive cost", telescoping),
)


def verify_suite(channel=None, verbose: bool = True) -> int:
    """Run all properties; returns 0 if all pass, 1 otherwise.

    `channel(rho, qubit, p)` replaces the depolarizing channel under test.
    """
    channel = apply_depolarizing if channel is None else channel

    failures = []
    for k, (name, prop) in enumerate(PROPERTIES):
        rng = np.random.default_rng(k)
        try:
            prop(rng, channel)
        except PropertyFailure as e:
            failures.append((name, str(e)))
            status = "FAIL"
        except (ArithmeticError, ValueError) as e:
            failures.append((name, f"{type(e).__name__}: {e}"))
            status = "FAIL"
        else:
            status = "pass"
        if verbose:
            print(f"{status}  {name}")

    if failures:
        print(f"\n{len(failures)} of {len(PROPERTIES)} properties failed:")
        for name, msg in failures:
            print(f"  {name}: {msg}")
        return 1
    return 0
