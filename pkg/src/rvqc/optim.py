"""
Parameter-shift gradients and the Adam update.

For a parameter that enters only as the angle of one Pauli rotation exp(-i theta P/2),
the generator has eigenvalues +-1/2 and

    dC/dtheta_i = [C(theta + s e_i) - C(theta - s e_i)] / (2 sin s)

holds exactly for any shift s; s = pi/2 gives the usual denominator 2. Other gate sets
need the rule re-derived.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np
from numpy.typing import ArrayLike

from .exceptions import NumericalError


def parameter_shift_gradient(
    cost: Callable,
    params: ArrayLike,
    shift: float = math.pi / 2,
    rng_for: Callable | None = None,
) -> np.ndarray:
    """Gradient of `cost` at `params`.

    If `rng_for(i, sign)` is given, the evaluation shifted by `sign * shift` in
    component i is called as `cost(x, rng=rng_for(i, sign))`, so every shifted
    evaluation draws its shots from its own stream.
    """
    params = np.asarray(params, dtype=float)
    factor = 1.0 / (2.0 * math.sin(shift))

    grad = np.zeros(params.shape[0])
    for i in range(params.shape[0]):
        vals = []
        for sign in (+1, -1):
            x = params.copy()
            x[i] += sign * shift
            if rng_for is None:
                vals.append(cost(x))
            else:
                vals.append(cost(x, rng=rng_for(i, sign)))
        grad[i] = factor * (vals[0] - vals[1])
    return grad


@dataclass(frozen=True, eq=False)
class AdamState:
    learning_rate: float
    m: np.ndarray
    v: np.ndarray
    step_count: int = 0
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1.0e-8


def adam_init(
    param_count: int,
    learning_rate: float,
    beta1: float = 0.9,
    beta2: float = 0.999,
    eps: float = 1.0e-8,
) -> AdamState:
    if not learning_rate > 0.0:
        raise ValueError(f"Learning rate must be positive, got {learning_rate}.")
    if not (0.0 <= beta1 < 1.0 and 0.0 <= beta2 < 1.0):
        raise ValueError(f"Betas must be in [0, 1), got {beta1}, {beta2}.")
    return AdamState(
        learning_rate,
        np.zeros(param_count),
        np.zeros(param_count),
        0,
        beta1,
        beta2,
        eps,
    )


def adam_step(state: AdamState, params: ArrayLike, grad: ArrayLike):
    """One bias-corrected Adam update; returns the new state and parameters."""
    params = np.asarray(params, dtype=float)
    grad = np.asarray(grad, dtype=float)
    if params.shape != state.m.shape or grad.shape != state.m.shape:
        raise ValueError(
            f"Shape mismatch: state {state.m.shape}, params {params.shape}, "
            f"gradient {grad.shape}."
        )
    if not np.all(np.isfinite(grad)):
        raise NumericalError("Non-finite gradient.")

    t = state.step_count + 1
    m = state.beta1 * state.m + (1 - state.beta1) * grad
    v = state.beta2 * state.v + (1 - state.beta2) * grad**2
    m_hat = m / (1 - state.beta1**t)
    v_hat = v / (1 - state.beta2**t)
    params = params - state.learning_rate * m_hat / (np.sqrt(v_hat) + state.eps)
    return replace(state, m=m, v=v, step_count=t), params
