from __future__ import annotations

import math
import time
from dataclasses import dataclass, field, replace
from functools import partial
from typing import Callable

import numpy as np
from numpy.typing import ArrayLike

from .ansatz import AnsatzSpec, build_ansatz, init_params
from .circuit import Circuit, random_circuit, split
from .cost import (
    BACKENDS,
    CostContext,
    build_cost_circuit,
    cost_exact,
    cost_noisy_exact,
    evaluate,
)
from .exceptions import NumericalError
from .helpers import normalize_name, print_stats, substream
from .noise import (
    DEFAULT_NOISE,
    NoiseModel,
    density_from_state,
    evolve_density,
    fidelity_pure,
    zero_density,
)
from .optim import adam_init, adam_step, parameter_shift_gradient
from .statevec import run_circuit, zero_state


@dataclass(frozen=True)
class CompileConfig:
    n_qubits: int
    # either an explicit target or the number of gates of a generated one
    target: Circuit | None = None
    gate_count: int = 0
    n_parts: int = 1
    ansatz_spec: AnsatzSpec | None = None
    epochs_per_part: int = 100
    tolerance: float = 0.0
    learning_rate: float = 0.1
    n_shots: int = 8192
    train_backend: str = "exact-ideal"
    noise: NoiseModel = DEFAULT_NOISE
    master_seed: int = 0

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError(f"Need at least one qubit, got {self.n_qubits}.")
        if self.ansatz_spec is None:
            object.__setattr__(self, "ansatz_spec", AnsatzSpec(self.n_qubits))
        if self.ansatz_spec.n_qubits != self.n_qubits:
            raise ValueError(
                f"Ansatz on {self.ansatz_spec.n_qubits} qubit(s), config on "
                f"{self.n_qubits}."
            )
        if self.target is not None and self.target.n_qubits != self.n_qubits:
            raise ValueError(
                f"Target on {self.target.n_qubits} qubit(s), config on {self.n_qubits}."
            )
        if self.gate_count < 0:
            raise ValueError(f"Gate count must be nonnegative, got {self.gate_count}.")
        if self.n_parts < 1:
            raise ValueError(f"Need at least one part, got {self.n_parts}.")
        if self.epochs_per_part < 1:
            raise ValueError(
                f"Need at least one epoch per part, got {self.epochs_per_part}."
            )
        if not 0.0 <= self.tolerance <= 1.0:
            raise ValueError(f"Tolerance must be in [0, 1], got {self.tolerance}.")
        if not self.learning_rate > 0.0:
            raise ValueError(
                f"Learning rate must be positive, got {self.learning_rate}."
            )
        if self.n_shots < 1:
            raise ValueError(f"Number of shots must be positive, got {self.n_shots}.")
        backend = normalize_name(self.train_backend)
        if backend not in BACKENDS:
            raise KeyError(
                f"Illegal backend {self.train_backend}. "
                f"Choose one of {', '.join(BACKENDS)}."
            )
        object.__setattr__(self, "train_backend", backend)
        if self.master_seed < 0:
            raise ValueError(
                f"Master seed must be nonnegative, got {self.master_seed}."
            )


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    train_cost: float
    ideal_cost: float
    # exact cost on the noisy simulator, None if not logged
    noisy_cost: float | None = None


@dataclass(frozen=True)
class StepRecord:
    step: int
    epochs: tuple
    best_epoch: int
    best_params: tuple
    converged: bool
    # F[rho_A^I(theta^(k)), rho_R^I(k)]
    fidelity_ideal_ansatz: float
    # F[rho_A^N(theta^(k)), rho_R^I(k)]
    fidelity_noisy_ansatz: float
    # F[rho_R^N(k), rho_R^I(k)]
    fidelity_noisy_target: float
    max_circuit_gates: int
    wall_time: float = field(default=0.0, compare=False)

    @property
    def n_epochs(self) -> int:
        return len(self.epochs)

    @property
    def best(self) -> EpochRecord:
        return self.epochs[self.best_epoch]


@dataclass(frozen=True)
class RunRecord:
    n_qubits: int
    n_parts: int
    target_gate_count: int
    master_seed: int
    steps: tuple = ()
    aborted: bool = False
    message: str = ""

    @property
    def final(self) -> StepRecord | None:
        return self.steps[-1] if self.steps else None


def resolve_target(config: CompileConfig) -> Circuit:
    if config.target is not None:
        return config.target
    return random_circuit(
        config.n_qubits, config.gate_count, substream(config.master_seed, 0)
    )


def run_vqc(config: CompileConfig, **kwargs) -> RunRecord:
    """Plain variational compiling: one cost over the whole target."""
    return run_rvqc(replace(config, n_parts=1), **kwargs)


def run_rvqc(
    config: CompileConfig,
    initial_params: ArrayLike | None = None,
    noisy_loss: bool = True,
    verbose: bool = False,
    callback: Callable | None = None,
) -> RunRecord:
    """Recursive variational compiling.

    The target is split into `config.n_parts` parts U_1, ..., U_N. Step k trains fresh
    parameters theta^(k) against the cost with U_k and the frozen theta^(k-1) of the
    previous step, for at most `epochs_per_part` epochs or until the training cost
    drops to `tolerance`. With the default `tolerance=0`, every step runs the full
    `epochs_per_part` epochs unless the exact ideal cost is 0; a shot estimate of 0
    alone does not end a step. The parameters of the epoch with the lowest training
    cost are carried to the next step.

    `initial_params`, if given, replaces the random initialization of every step.
    `callback(step, epoch_record)` is called after every epoch.
    """
    target = resolve_target(config)
    parts = split(target, config.n_parts)
    spec = config.ansatz_spec
    n = config.n_qubits

    reference = zero_state(n)
    noisy_reference = zero_density(n)
    prev_params = None
    steps = []

    record = partial(
        RunRecord,
        n_qubits=n,
        n_parts=config.n_parts,
        target_gate_count=len(target),
        master_seed=config.master_seed,
    )

    for k, part in enumerate(parts, start=1):
        t0 = time.perf_counter()

        if initial_params is None:
            params = init_params(spec, substream(config.master_seed, 1, k))
        else:
            params = np.array(initial_params, dtype=float)

        ctx = CostContext(
            spec,
            part,
            prev_params,
            backend=config.train_backend,
            n_shots=config.n_shots,
            noise=config.noise,
        )

        if verbose:
            print(
                f"\nStep {k}/{len(parts)}: {len(part)} target gates, "
                f"cost circuit of {len(build_cost_circuit(ctx, params))} gates"
            )

        try:
            epochs, best_epoch, converged = _train(
                ctx, params, config, k, noisy_loss, callback
            )
        except NumericalError as e:
            return record(steps=tuple(steps), aborted=True, message=f"step {k}: {e}")

        best_params = epochs[best_epoch][1]
        epochs = tuple(e for e, _ in epochs)

        # fidelities against the ideal target state |R_k> = U_k ... U_1 |0>
        reference = run_circuit(reference, part)
        noisy_reference = evolve_density(noisy_reference, part, config.noise)
        ansatz = build_ansatz(spec, best_params)
        f_ideal = fidelity_pure(
            reference, density_from_state(run_circuit(zero_state(n), ansatz))
        )
        f_noisy = fidelity_pure(
            reference, evolve_density(zero_density(n), ansatz, config.noise)
        )
        f_target = fidelity_pure(reference, noisy_reference)

        step = StepRecord(
            step=k,
            epochs=epochs,
            best_epoch=best_epoch,
            best_params=tuple(float(x) for x in best_params),
            converged=converged,
            fidelity_ideal_ansatz=f_ideal,
            fidelity_noisy_ansatz=f_noisy,
            fidelity_noisy_target=f_target,
            max_circuit_gates=len(build_cost_circuit(ctx, best_params)),
            wall_time=time.perf_counter() - t0,
        )
        steps.append(step)
        prev_params = best_params

        if verbose:
            info = f"{step.n_epochs} epochs, best epoch {best_epoch}"
            if converged:
                info += f", converged to tolerance {config.tolerance}"
            print(f"\nFinal ({info}, {step.wall_time:.1f}s):")
            print_stats(
                [e.train_cost for e in epochs],
                extra_cols=[
                    f"F[A^I, R^I]: {f_ideal:6.4f}\n"
                    f"F[A^N, R^I]: {f_noisy:6.4f}\n"
                    f"F[R^N, R^I]: {f_target:6.4f}"
                ],
            )

    return record(steps=tuple(steps))


def _converged(train_cost, ideal_cost, tolerance):
    if tolerance > 0.0:
        return train_cost <= tolerance
    # fixed-epoch mode: only the exact optimum ends a step early
    return ideal_cost == 0.0


def _train(ctx, params, config, k, noisy_loss, callback):
    """Minimize the step-k cost with parameter-shift gradients and Adam.

    Returns [(EpochRecord, params), ...], the index of the best epoch and whether the
    tolerance was reached.
    """
    seed = config.master_seed
    state = adam_init(ctx.ansatz_spec.param_count, config.learning_rate)

    def rng_for(epoch, i, sign):
        return substream(seed, 3, k, epoch, i, 0 if sign > 0 else 1)

    epochs = []
    best = 0
    converged = False
    for epoch in range(config.epochs_per_part):
        train_cost = evaluate(ctx, params, rng=substream(seed, 2, k, epoch))
        if not math.isfinite(train_cost):
            raise NumericalError(f"Non-finite cost at epoch {epoch}.")
        ideal_cost = cost_exact(ctx, params)
        noisy_cost = cost_noisy_exact(ctx, params) if noisy_loss else None

        e = EpochRecord(epoch, train_cost, ideal_cost, noisy_cost)
        epochs.append((e, params))
        # ties go to the earliest epoch
        if train_cost < epochs[best][0].train_cost:
            best = epoch

        if callback:
            callback(k, e)

        if _converged(train_cost, ideal_cost, config.tolerance):
            converged = True
            break
        if epoch == config.epochs_per_part - 1:
            break

        grad = parameter_shift_gradient(
            partial(evaluate, ctx),
            params,
            rng_for=None
            if ctx.backend == "exact-ideal"
            else partial(rng_for, epoch),
        )
        state, params = adam_step(state, params, grad)

    return epochs, best, converged


def fidelity_report(record: RunRecord) -> dict:
    """Per-step fidelities and costs of a run, plus the final step as summary.

    All fidelities are anchored on the ideal target state rho_R^I(k):
      fidelity_ideal_ansatz  F[rho_A^I(theta^(k)), rho_R^I(k)]
      fidelity_noisy_ansatz  F[rho_A^N(theta^(k)), rho_R^I(k)]
      fidelity_noisy_target  F[rho_R^N(k), rho_R^I(k)]
    """
    rows = []
    for s in record.steps:
        best = s.best
        rows.append(
            {
                "step": s.step,
                "n_epochs": s.n_epochs,
                "best_epoch": s.best_epoch,
                "converged": s.converged,
                "train_cost": best.train_cost,
                "ideal_cost": best.ideal_cost,
                "noisy_cost": best.noisy_cost,
                "fidelity_ideal_ansatz": s.fidelity_ideal_ansatz,
                "fidelity_noisy_ansatz": s.fidelity_noisy_ansatz,
                "fidelity_noisy_target": s.fidelity_noisy_target,
                "max_circuit_gates": s.max_circuit_gates,
            }
        )
    return {
        "master_seed": record.master_seed,
        "n_qubits": record.n_qubits,
        "n_parts": record.n_parts,
        "target_gate_count": record.target_gate_count,
        "aborted": record.aborted,
        "message": record.message,
        "steps": rows,
        "final": dict(rows[-1]) if rows else None,
    }
