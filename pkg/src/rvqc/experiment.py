"""
Reproducible experiments from a JSON file.

A run writes, into the output directory,

  target.circ           the target circuit in the text format of `rvqc.circuit`,
                        headed by a `# master_seed: N` comment
  training_log.csv      `mode,step,epoch,train_cost,ideal_cost`, one row per epoch,
                        flushed after every epoch
  fidelity_report.json  per-step fidelities and a final summary, per mode
  manifest.json         the resolved configuration

Everything is derived from `master_seed`; rerunning a file reproduces the CSV and the
report byte for byte.
"""
from __future__ import annotations

import csv
import json
import pathlib
from dataclasses import dataclass, field, replace

from .__about__ import __version__
from .ansatz import AnsatzSpec
from .circuit import read_circuit, write_circuit
from .cost import BACKENDS
from .exceptions import ConfigError
from .helpers import format_report, normalize_name, print_report
from .main import CompileConfig, fidelity_report, resolve_target, run_rvqc, run_vqc
from .noise import DEFAULT_NOISE, NoiseModel

MODES = ("vqc", "rvqc", "both")
REPORT_FORMATS = ("json", "txt")
# every run also simulates density matrices, whose size grows as 4^n
MAX_QUBITS = 6

_REQUIRED = ("master_seed", "n_qubits", "mode", "output_dir")
_OPTIONAL = {
    "gate_count": None,
    "target_file": None,
    "n_parts": 5,
    "n_ent_layers": 4,
    "epochs_per_part": 100,
    "tolerance": 0.0,
    "learning_rate": 0.1,
    "n_shots": 8192,
    "train_backend": "sampled-noisy",
    "noise": None,
    "report_formats": ["json"],
}
_NOISE_KEYS = ("p1", "p2", "p_readout")
_CSV_HEADER = ["mode", "step", "epoch", "train_cost", "ideal_cost"]


@dataclass(frozen=True)
class ExperimentFile:
    master_seed: int
    n_qubits: int
    mode: str
    output_dir: str
    gate_count: int | None = None
    target_file: str | None = None
    n_parts: int = 5
    n_ent_layers: int = 4
    epochs_per_part: int = 100
    tolerance: float = 0.0
    learning_rate: float = 0.1
    n_shots: int = 8192
    train_backend: str = "sampled-noisy"
    noise: NoiseModel = DEFAULT_NOISE
    report_formats: tuple = ("json",)
    # directory of the file, for resolving relative paths
    base_dir: str = field(default=".", compare=False)

    def as_dict(self) -> dict:
        return {
            "master_seed": self.master_seed,
            "n_qubits": self.n_qubits,
            "mode": self.mode,
            "output_dir": self.output_dir,
            "gate_count": self.gate_count,
            "target_file": self.target_file,
            "n_parts": self.n_parts,
            "n_ent_layers": self.n_ent_layers,
            "epochs_per_part": self.epochs_per_part,
            "tolerance": self.tolerance,
            "learning_rate": self.learning_rate,
            "n_shots": self.n_shots,
            "train_backend": self.train_backend,
            "noise": {
                "p1": self.noise.p1,
                "p2": self.noise.p2,
                "p_readout": self.noise.p_readout,
            },
            "report_formats": list(self.report_formats),
        }

    def path(self, name) -> pathlib.Path:
        p = pathlib.Path(name)
        return p if p.is_absolute() else pathlib.Path(self.base_dir) / p


def _int(data, key, lo, hi=None):
    val = data[key]
    if isinstance(val, bool) or not isinstance(val, int):
        raise ConfigError(f"`{key}` must be an integer, got {val!r}.")
    if val < lo or (hi is not None and val > hi):
        bounds = f">= {lo}" if hi is None else f"in [{lo}, {hi}]"
        raise ConfigError(f"`{key}` must be {bounds}, got {val}.")
    return val


def _float(data, key, lo, hi, lo_open=False):
    val = data[key]
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise ConfigError(f"`{key}` must be a number, got {val!r}.")
    val = float(val)
    if not (lo < val if lo_open else lo <= val) or val > hi:
        left = "(" if lo_open else "["
        raise ConfigError(f"`{key}` must be in {left}{lo}, {hi}], got {val}.")
    return val


def _str(data, key):
    val = data[key]
    if not isinstance(val, str) or not val:
        raise ConfigError(f"`{key}` must be a non-empty string, got {val!r}.")
    return val


def parse_experiment(data: dict, base_dir=".") -> ExperimentFile:
    if not isinstance(data, dict):
        raise ConfigError("Experiment file must contain a JSON object.")

    unknown = sorted(set(data) - set(_REQUIRED) - set(_OPTIONAL))
    if unknown:
        raise ConfigError(f"Unknown key(s): {', '.join(unknown)}.")
    for key in _REQUIRED:
        if key not in data:
            raise ConfigError(f"Missing required key `{key}`.")
    data = {**_OPTIONAL, **data}

    mode = _str(data, "mode")
    if mode not in MODES:
        raise ConfigError(f"`mode` must be one of {', '.join(MODES)}, got {mode!r}.")

    if data["target_file"] is None:
        if data["gate_count"] is None:
            raise ConfigError("Missing required key `gate_count` (or `target_file`).")
        gate_count = _int(data, "gate_count", 0)
        target_file = None
    else:
        target_file = _str(data, "target_file")
        gate_count = None if data["gate_count"] is None else _int(data, "gate_count", 0)

    backend = _str(data, "train_backend")
    if normalize_name(backend) not in BACKENDS:
        raise ConfigError(
            f"`train_backend` must be one of {', '.join(BACKENDS)}, got {backend!r}."
        )
    backend = normalize_name(backend)

    noise = data["noise"]
    if noise is None:
        noise = DEFAULT_NOISE
    else:
        if not isinstance(noise, dict):
            raise ConfigError("`noise` must be an object with p1, p2, p_readout.")
        unknown = sorted(set(noise) - set(_NOISE_KEYS))
        if unknown:
            raise ConfigError(f"Unknown key(s) in `noise`: {', '.join(unknown)}.")
        values = {
            "p1": DEFAULT_NOISE.p1,
            "p2": DEFAULT_NOISE.p2,
            "p_readout": DEFAULT_NOISE.p_readout,
            **noise,
        }
        noise = NoiseModel(
            p1=_float(values, "p1", 0.0, 1.0),
            p2=_float(values, "p2", 0.0, 1.0),
            p_readout=_float(values, "p_readout", 0.0, 0.5),
        )

    formats = data["report_formats"]
    if not isinstance(formats, list) or any(f not in REPORT_FORMATS for f in formats):
        raise ConfigError(
            f"`report_formats` must be a list drawn from {', '.join(REPORT_FORMATS)}."
        )
    if "json" not in formats:
        raise ConfigError("`report_formats` must contain `json`.")

    return ExperimentFile(
        master_seed=_int(data, "master_seed", 0),
        n_qubits=_int(data, "n_qubits", 1, MAX_QUBITS),
        mode=mode,
        output_dir=_str(data, "output_dir"),
        gate_count=gate_count,
        target_file=target_file,
        n_parts=_int(data, "n_parts", 1),
        n_ent_layers=_int(data, "n_ent_layers", 0),
        epochs_per_part=_int(data, "epochs_per_part", 1),
        tolerance=_float(data, "tolerance", 0.0, 1.0),
        learning_rate=_float(data, "learning_rate", 0.0, float("inf"), lo_open=True),
        n_shots=_int(data, "n_shots", 1),
        train_backend=backend,
        noise=noise,
        report_formats=tuple(dict.fromkeys(formats)),
        base_dir=str(base_dir),
    )


def read_experiment(config_path) -> ExperimentFile:
    config_path = pathlib.Path(config_path)
    try:
        with open(config_path) as f:
            data = json.load(f)
    except OSError as e:
        raise ConfigError(f"Cannot read {config_path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"{config_path} is not valid JSON: {e}") from e
    return parse_experiment(data, base_dir=config_path.parent)


def compile_config(exp: ExperimentFile) -> CompileConfig:
    target = None
    if exp.target_file is not None:
        try:
            target = read_circuit(exp.path(exp.target_file), exp.n_qubits)
        except (OSError, ValueError) as e:
            raise ConfigError(f"Cannot load target `{exp.target_file}`: {e}") from e
    return CompileConfig(
        n_qubits=exp.n_qubits,
        target=target,
        gate_count=exp.gate_count or 0,
        n_parts=exp.n_parts,
        ansatz_spec=AnsatzSpec(exp.n_qubits, exp.n_ent_layers),
        epochs_per_part=exp.epochs_per_part,
        tolerance=exp.tolerance,
        learning_rate=exp.learning_rate,
        n_shots=exp.n_shots,
        train_backend=exp.train_backend,
        noise=exp.noise,
        master_seed=exp.master_seed,
    )


def _write_json(filename, data):
    with open(filename, "w") as f:
        json.dump(data, f, indent=2)
        f.write("\n")


def run_experiment(config_path, verbose: bool = False) -> int:
    """Run an experiment file; returns the exit status (0 ok, 2 bad config, 3 numerical
    abort).
    """
    try:
        exp = read_experiment(config_path)
        config = compile_config(exp)
    except ConfigError as e:
        print(f"Invalid experiment file: {e}")
        return 2

    out = exp.path(exp.output_dir)
    out.mkdir(parents=True, exist_ok=True)

    target = resolve_target(config)
    config = replace(config, target=target)
    write_circuit(
        out / "target.circ", target, [f"master_seed: {exp.master_seed}"]
    )

    manifest = {
        "rvqc_version": __version__,
        "config": exp.as_dict(),
        "target": {
            "file": "target.circ",
            "source": exp.target_file or "generated",
            "gate_count": len(target),
        },
    }
    _write_json(out / "manifest.json", manifest)

    # VQC gets the same total epoch budget as RVQC
    runs = []
    if exp.mode in ("vqc", "both"):
        budget = config.epochs_per_part * config.n_parts
        runs.append(("vqc", run_vqc, replace(config, epochs_per_part=budget)))
    if exp.mode in ("rvqc", "both"):
        runs.append(("rvqc", run_rvqc, config))

    reports = {}
    aborted = False
    with open(out / "training_log.csv", "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(_CSV_HEADER)
        f.flush()

        for mode, run, cfg in runs:

            def log_epoch(step, e, mode=mode):
                train, ideal = float(e.train_cost), float(e.ideal_cost)
                writer.writerow([mode, step, e.epoch, repr(train), repr(ideal)])
                f.flush()

            if verbose:
                print(f"\n=== {mode.upper()} ===")
            record = run(cfg, verbose=verbose, callback=log_epoch)
            reports[mode] = fidelity_report(record)
            if record.aborted:
                aborted = True
                print(f"{mode}: aborted ({record.message})")
                break

    report = {"master_seed": exp.master_seed, "runs": reports}
    _write_json(out / "fidelity_report.json", report)
    if "txt" in exp.report_formats:
        with open(out / "fidelity_report.txt", "w") as f:
            f.write(f"master_seed: {exp.master_seed}\n")
            for mode, r in reports.items():
                f.write(f"\n{mode}\n")
                f.write(format_report(r))

    if verbose:
        for mode, r in reports.items():
            print(f"\n{mode}")
            print_report(r)

    return 3 if aborted else 0
