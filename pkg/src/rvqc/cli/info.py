import argparse
import sys

import termplotlib as tpl

from ..__about__ import __version__
from ..circuit import KINDS, TWO_QUBIT_KINDS, gate_counts, read_circuit, split


def _get_parser():
    parser = argparse.ArgumentParser(description="Display circuit information.")

    parser.add_argument(
        "input_file", metavar="INPUT_FILE", type=str, help="Input circuit file"
    )

    parser.add_argument(
        "--n-qubits",
        "-n",
        metavar="N",
        type=int,
        required=True,
        help="number of qubits of the circuit",
    )

    parser.add_argument(
        "--parts",
        "-k",
        metavar="K",
        type=int,
        default=None,
        help="also show the gate counts of a split into K parts (default: none)",
    )

    parser.add_argument(
        "--version",
        "-v",
        help="display version information",
        action="version",
        version=f"%(prog)s {__version__}, Python {sys.version}",
    )
    return parser


def info(argv=None):
    parser = _get_parser()
    args = parser.parse_args(argv)

    circuit = read_circuit(args.input_file, args.n_qubits)
    counts = gate_counts(circuit)
    two = sum(counts[kind] for kind in TWO_QUBIT_KINDS)

    print(f"Number of qubits: {circuit.n_qubits}")
    print(f"Number of gates: {len(circuit)}")
    print(f"  one-qubit: {len(circuit) - two}")
    print(f"  two-qubit: {two}")

    if len(circuit) > 0:
        fig = tpl.figure()
        fig.barh([counts[kind] for kind in KINDS], list(KINDS), force_ascii=True)
        fig.show()

    if args.parts is not None:
        if args.parts < 1:
            parser.error(f"K must be positive, got {args.parts}.")
        print(f"Split into {args.parts} parts:")
        for part in split(circuit, args.parts):
            print(f"  {part.label}: {len(part)} gates")
    return 0
