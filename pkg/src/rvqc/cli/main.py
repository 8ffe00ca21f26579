import argparse
from sys import version_info

from ..__about__ import __version__
from ..circuit import random_circuit, write_circuit
from ..experiment import run_experiment
from ..helpers import substream
from ..verify import verify_suite


def _get_parser():
    parser = argparse.ArgumentParser(
        description="Recursive variational compiling of quantum circuits.",
        formatter_class=argparse.RawTextHelpFormatter,
    )

    python_version = f"{version_info.major}.{version_info.minor}.{version_info.micro}"
    parser.add_argument(
        "--version",
        "-v",
        help="display version information",
        action="version",
        version=f"rvqc {__version__} [Python {python_version}]",
    )

    subparsers = parser.add_subparsers(dest="command", required=True)

    run = subparsers.add_parser(
        "run",
        help="run a VQC/RVQC experiment file",
        description="Run the experiment described by a JSON file.",
    )
    run.add_argument(
        "config_path", metavar="CONFIG", type=str, help="experiment file (JSON)"
    )
    run.add_argument(
        "--quiet",
        default=False,
        action="store_true",
        help="don't print training progress (default: false)",
    )

    subparsers.add_parser(
        "verify",
        help="run the built-in invariant suite",
        description="Check the simulators, gradients and channels against oracles.",
    )

    dump = subparsers.add_parser(
        "dump-circuit",
        help="write the random target circuit of a seed",
        description="Write the target circuit `run` generates for the given seed.",
    )
    dump.add_argument("seed", metavar="SEED", type=int, help="master seed")
    dump.add_argument("n_qubits", metavar="N", type=int, help="number of qubits")
    dump.add_argument("gate_count", metavar="GATES", type=int, help="number of gates")
    dump.add_argument(
        "output_file", metavar="OUTPUT_FILE", type=str, help="circuit file"
    )

    return parser


def main(argv=None):
    parser = _get_parser()
    args = parser.parse_args(argv)

    if args.command == "run":
        return run_experiment(args.config_path, verbose=not args.quiet)

    if args.command == "verify":
        return verify_suite()

    if args.seed < 0:
        parser.error(f"SEED must be nonnegative, got {args.seed}.")
    if args.n_qubits < 1:
        parser.error(f"N must be positive, got {args.n_qubits}.")
    if args.gate_count < 0:
        parser.error(f"GATES must be nonnegative, got {args.gate_count}.")
    circuit = random_circuit(args.n_qubits, args.gate_count, substream(args.seed, 0))
    write_circuit(args.output_file, circuit, [f"master_seed: {args.seed}"])
    return 0
