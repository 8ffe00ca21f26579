"""
Cost functions for variational compiling.

- `let`: the recursive Loschmidt echo cost of one step, exact or estimated from shots on
  an ideal or noisy simulator,
- `fisc`: fixed-input-state cost of a whole ansatz against a whole target (the first
  step of the recursion),
- `fumc`: full-unitary (Hilbert-Schmidt) cost, evaluated classically.
"""
from .fisc import cost_fisc_exact
from .fumc import cost_fumc_exact
from .let import (
    BACKENDS,
    CostContext,
    build_cost_circuit,
    cost_exact,
    cost_noisy_exact,
    cost_sampled,
    evaluate,
)

__all__ = [
    "BACKENDS",
    "CostContext",
    "build_cost_circuit",
    "cost_exact",
    "cost_noisy_exact",
    "cost_sampled",
    "cost_fisc_exact",
    "cost_fumc_exact",
    "evaluate",
]
