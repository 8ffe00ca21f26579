from . import cli, cost
from .__about__ import __version__
from .ansatz import AnsatzSpec, build_ansatz, init_params
from .circuit import (
    Circuit,
    Gate,
    concat,
    dumps,
    from_sequence,
    gate_counts,
    inverse,
    loads,
    random_circuit,
    read_circuit,
    split,
    unitary_matrix,
    write_circuit,
)
from .exceptions import ConfigError, NumericalError, ResourceLimitError
from .experiment import run_experiment
from .main import (
    CompileConfig,
    EpochRecord,
    RunRecord,
    StepRecord,
    fidelity_report,
    run_rvqc,
    run_vqc,
)
from .noise import (
    DEFAULT_NOISE,
    DensityMatrix,
    NoiseModel,
    apply_depolarizing,
    evolve_density,
    fidelity_general,
    fidelity_pure,
    measurement_probs,
)
from .optim import AdamState, adam_init, adam_step, parameter_shift_gradient
from .statevec import StateVector, probabilities, run_circuit, sample_counts, zero_state
from .verify import verify_suite

__all__ = [
    "__version__",
    "cli",
    "cost",
    # circuits
    "Gate",
    "Circuit",
    "random_circuit",
    "split",
    "inverse",
    "concat",
    "unitary_matrix",
    "gate_counts",
    "from_sequence",
    "dumps",
    "loads",
    "read_circuit",
    "write_circuit",
    "AnsatzSpec",
    "build_ansatz",
    "init_params",
    # simulation
    "StateVector",
    "zero_state",
    "run_circuit",
    "probabilities",
    "sample_counts",
    "NoiseModel",
    "DEFAULT_NOISE",
    "DensityMatrix",
    "apply_depolarizing",
    "evolve_density",
    "measurement_probs",
    "fidelity_pure",
    "fidelity_general",
    # training
    "parameter_shift_gradient",
    "AdamState",
    "adam_init",
    "adam_step",
    "CompileConfig",
    "EpochRecord",
    "StepRecord",
    "RunRecord",
    "run_vqc",
    "run_rvqc",
    "fidelity_report",
    "run_experiment",
    "verify_suite",
    "ConfigError",
    "NumericalError",
    "ResourceLimitError",
]
