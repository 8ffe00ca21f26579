"""
Loschmidt echo cost of one recursion step,

    C(theta^(k)) = 1 - |<0| V^dagger(theta^(k-1)) U_k^dagger V(theta^(k)) |0>|^2,

with V(theta^(0)) = I. It equals one minus the probability of measuring all zeros after
running V(theta^(k)), then U_k^dagger, then V^dagger(theta^(k-1)).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.typing import ArrayLike

from ..ansatz import AnsatzSpec, build_ansatz
from ..circuit import Circuit, concat, inverse
from ..helpers import normalize_name
from ..noise import NoiseModel, evolve_density, measurement_probs, zero_density
from ..statevec import (
    prob_all_zero,
    probabilities,
    run_circuit,
    sample_counts,
    zero_state,
)

@dataclass(frozen=True, eq=False)
class CostContext:
    ansatz_spec: AnsatzSpec
    target_part: Circuit
    prev_params: np.ndarray | None = None
    backend: str = "exact-ideal"
    n_shots: int = 8192
    noise: NoiseModel = NoiseModel()
    rng: np.random.Generator | None = None

    def __post_init__(self):
        backend = normalize_name(self.backend)
        if backend not in BACKENDS:
            raise KeyError(
                f"Illegal backend {self.backend}. Choose one of {', '.join(BACKENDS)}."
            )
        object.__setattr__(self, "backend", backend)

        if self.target_part.n_qubits != self.ansatz_spec.n_qubits:
            raise ValueError(
                f"Target part on {self.target_part.n_qubits} qubit(s), ansatz on "
                f"{self.ansatz_spec.n_qubits}."
            )
        if self.prev_params is not None:
            prev = np.asarray(self.prev_params, dtype=float)
            if prev.shape != (self.ansatz_spec.param_count,):
                raise ValueError(
                    f"Previous parameters have shape {prev.shape}, ansatz takes "
                    f"{self.ansatz_spec.param_count}."
                )
            object.__setattr__(self, "prev_params", prev)
        if self.n_shots < 1:
            raise ValueError(f"Number of shots must be positive, got {self.n_shots}.")

    @property
    def n_qubits(self) -> int:
        return self.ansatz_spec.n_qubits

    @cached_property
    def tail(self) -> Circuit:
        """U_k^dagger followed by V^dagger(theta^(k-1)); fixed during a step."""
        parts = [inverse(self.target_part)]
        if self.prev_params is not None:
            parts.append(inverse(build_ansatz(self.ansatz_spec, self.prev_params)))
        return concat(*parts)


def build_cost_circuit(ctx: CostContext, params: ArrayLike) -> Circuit:
    c = concat(build_ansatz(ctx.ansatz_spec, params), ctx.tail)
    return Circuit(c.n_qubits, c.gates, label="cost")


def cost_exact(ctx: CostContext, params: ArrayLike) -> float:
    """Exact cost on the ideal simulator, whatever `ctx.backend` says."""
    psi = run_circuit(zero_state(ctx.n_qubits), build_cost_circuit(ctx, params))
    return 1.0 - prob_all_zero(psi)


def _ideal_probs(ctx: CostContext, params: ArrayLike) -> np.ndarray:
    psi = run_circuit(zero_state(ctx.n_qubits), build_cost_circuit(ctx, params))
    return probabilities(psi)


def _noisy_probs(ctx: CostContext, params: ArrayLike) -> np.ndarray:
    rho = evolve_density(
        zero_density(ctx.n_qubits), build_cost_circuit(ctx, params), ctx.noise
    )
    return measurement_probs(rho, ctx.noise)


def cost_noisy_exact(ctx: CostContext, params: ArrayLike) -> float:
    """Shot-free cost on the noisy simulator, readout error included."""
    p0 = _noisy_probs(ctx, params)[0]
    return float(min(max(1.0 - p0, 0.0), 1.0))


def cost_sampled(
    ctx: CostContext, params: ArrayLike, rng: np.random.Generator | None = None
) -> float:
    """Shot estimate 1 - (#all-zero outcomes) / n_shots on the context's backend.

    `rng` overrides `ctx.rng`, e.g., for the per-evaluation streams of a gradient.
    """
    rng = ctx.rng if rng is None else rng
    if rng is None:
        raise ValueError("Sampled backends need a random generator.")

    if ctx.backend not in _DISTRIBUTIONS:
        raise ValueError(f"Backend {ctx.backend} does not sample.")
    probs = _DISTRIBUTIONS[ctx.backend](ctx, params)

    counts = sample_counts(probs, ctx.n_shots, rng)
    return 1.0 - counts.get(0, 0) / ctx.n_shots


def _cost_exact(ctx, params, rng=None):
    return cost_exact(ctx, params)


_DISTRIBUTIONS = {
    "sampled-ideal": _ideal_probs,
    "sampled-noisy": _noisy_probs,
}

BACKENDS = {
    "exact-ideal": _cost_exact,
    "sampled-ideal": cost_sampled,
    "sampled-noisy": cost_sampled,
}


def evaluate(
    ctx: CostContext, params: ArrayLike, rng: np.random.Generator | None = None
) -> float:
    """Cost as seen by the trainer, i.e., on `ctx.backend`."""
    return BACKENDS[ctx.backend](ctx, params, rng=rng)
