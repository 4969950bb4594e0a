import argparse
import json
import sys
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np
import pandas as pd
from tqdm import tqdm

from .entropy import (
    analyze,
    classify_entanglement,
    entropy_eigen,
    entropy_from_magnitude,
)
from .errors import InvalidArgumentError, NormalizationError, StateFileError
from .measurement_sim import (
    MAX_SEED,
    RngStream,
    estimator_study,
    haar_random_states,
    measure_mean_spin,
)
from .qstate_core import (
    PureTwoQubitState,
    mean_spin_vector,
    partial_trace,
    spin_magnitude,
)
from .schmidt import SchmidtDecomposition, schmidt_decompose
from .state_file import (
    STATE_FILE_NORM_TOL,
    load_state,
    read_state_file,
    state_to_document,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NORMALIZATION = 3
EXIT_IO = 4
EXIT_DISCREPANCY = 5
EXIT_INTERRUPTED = 130

DEFAULT_SHOTS = 10_000
DEFAULT_SEED = 0
DEFAULT_ATOM = 1
DEFAULT_POINTS = 101
DEFAULT_COUNT = 10_000
DEFAULT_STUDY_SHOTS = "1000,10000,100000"
DEFAULT_STUDY_SEEDS = 200
SELF_TEST_TOL = 1e-9
HUMAN_DECIMALS = 9
MACHINE_DIGITS = 17
CSV_FLOAT_FORMAT = f"%.{MACHINE_DIGITS}g"
SWEEP_COLUMNS = ["r", "entropy_bits"]
PROGRESS_BAR_FORMAT = "{desc:<12} {n_fmt}/{total_fmt}{unit} [{elapsed}, {rate_fmt}]"


def status(message: str, quiet: bool = False) -> None:
    """Human status line on standard error, safe alongside progress bars."""
    if not quiet:
        tqdm.write(message, file=sys.stderr)


def fmt(value: float) -> str:
    # round first so -1e-17 prints as 0, not -0
    return f"{round(float(value), HUMAN_DECIMALS) + 0.0:.{HUMAN_DECIMALS}f}"


def fmt_vector(values: Iterable[float]) -> str:
    return "(" + ", ".join(fmt(value) for value in values) + ")"


def fmt_complex(value: complex) -> str:
    sign = "-" if round(value.imag, HUMAN_DECIMALS) < 0 else "+"
    return f"{fmt(value.real)}{sign}{fmt(abs(value.imag))}i"


def fmt_bool(value: bool) -> str:
    return "true" if value else "false"


def emit(args: argparse.Namespace, lines: List[str], payload: Dict[str, Any]) -> None:
    """Report on standard output: text, or JSON with the text moved to stderr."""
    if getattr(args, "json", False):
        for line in lines:
            status(line, args.quiet)
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


def write_table(table: pd.DataFrame, out: str, quiet: bool) -> None:
    target = sys.stdout if out == "-" else out
    table.to_csv(
        target, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n"
    )
    if out != "-":
        status(f"💾 Wrote {len(table)} rows to {out}", quiet)


def load_state_argument(args: argparse.Namespace) -> PureTwoQubitState:
    psi = load_state(read_state_file(args.state), renormalize=args.renormalize)
    if abs(psi.raw_norm - 1.0) > STATE_FILE_NORM_TOL:
        status(
            f"⚠️  Renormalized {args.state}: norm was {psi.raw_norm:.12g}", args.quiet
        )
    return psi


def schmidt_to_dict(decomposition: SchmidtDecomposition) -> Dict[str, Any]:
    def pair(state) -> List[List[float]]:
        return [[value.real, value.imag] for value in (state.amp_up, state.amp_down)]

    p1, p2 = decomposition.probabilities
    return {
        "c1": decomposition.c1,
        "c2": decomposition.c2,
        "c1_squared": p1,
        "c2_squared": p2,
        "degenerate": decomposition.degenerate,
        "u1": pair(decomposition.u1),
        "u2": pair(decomposition.u2),
        "v1": pair(decomposition.v1),
        "v2": pair(decomposition.v2),
    }


def cmd_analyze(args: argparse.Namespace) -> int:
    psi = load_state_argument(args)
    report = analyze(psi)
    decomposition = schmidt_decompose(psi)
    p1, p2 = decomposition.probabilities

    schmidt_line = (
        f"Schmidt: C1={fmt(decomposition.c1)} C2={fmt(decomposition.c2)} "
        f"C1²={fmt(p1)} C2²={fmt(p2)}"
    )
    if decomposition.degenerate:
        schmidt_line += " (degenerate: local bases not unique)"
    lines = [
        f"🔬 State: {psi.label or args.state}",
        "amplitudes (++, +-, -+, --): "
        + ", ".join(fmt_complex(amp) for amp in psi.amps),
        schmidt_line,
        f"atom 1: <J>={fmt_vector(report.mean_spin_atom1.as_list())} "
        f"r={fmt(report.magnitude_atom1)}",
        f"atom 2: <J>={fmt_vector(report.mean_spin_atom2.as_list())} "
        f"r={fmt(report.magnitude_atom2)}",
        f"S_eigen atom 1={fmt(report.s_eigen_atom1)}",
        f"S_eigen atom 2={fmt(report.s_eigen_atom2)}",
        f"S_from_magnitude={fmt(report.s_from_magnitude)}",
        f"S={fmt(report.s_from_magnitude)} r={fmt(report.magnitude_atom1)} "
        f"entangled={fmt_bool(report.entangled)}",
    ]
    payload = {
        "state": state_to_document(psi),
        "report": report.to_dict(),
        "schmidt": schmidt_to_dict(decomposition),
    }
    emit(args, lines, payload)
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    psi = load_state_argument(args)
    estimate = measure_mean_spin(psi, args.atom, args.shots, args.seed)
    exact = mean_spin_vector(psi, args.atom)
    exact_magnitude = spin_magnitude(exact)
    exact_entropy = entropy_from_magnitude(exact_magnitude)

    lines = [
        f"🎲 Simulated readout of atom {args.atom}: "
        f"{args.shots} shots per axis, seed {args.seed}"
    ]
    for axis_estimate, counts in zip(estimate.estimates, estimate.counts):
        lines.append(
            f"axis {counts.axis.value}: plus={counts.plus_count}/{counts.shots} "
            f"estimate={fmt(axis_estimate.value)} ± {fmt(axis_estimate.std_error)} "
            f"exact={fmt(exact.component(counts.axis))}"
        )
    low, high = estimate.entropy_interval
    lines.extend(
        [
            f"magnitude: estimate={fmt(estimate.magnitude_estimate)} "
            f"raw={fmt(estimate.raw_magnitude)} ± {fmt(estimate.magnitude_std_error)} "
            f"exact={fmt(exact_magnitude)}",
            f"entropy: estimate={fmt(estimate.entropy_estimate)} "
            f"95% interval=[{fmt(low)}, {fmt(high)}] exact={fmt(exact_entropy)}",
            f"classification: estimate={estimate.classification.value} "
            f"exact={classify_entanglement(exact_magnitude).value}",
        ]
    )
    payload = {
        "state": state_to_document(psi),
        "atom": args.atom,
        "shots_per_axis": args.shots,
        "estimate": estimate.to_dict(),
        "exact": {
            "mean_spin": exact.as_list(),
            "magnitude": exact_magnitude,
            "entropy": exact_entropy,
        },
    }
    emit(args, lines, payload)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    radii = np.linspace(0.0, 0.5, args.points)
    table = pd.DataFrame(
        {"r": radii, "entropy_bits": [entropy_from_magnitude(r) for r in radii]},
        columns=SWEEP_COLUMNS,
    )
    write_table(table, args.out, args.quiet)
    return EXIT_OK


def cmd_random(args: argparse.Namespace) -> int:
    worst_entropy = 0.0
    worst_magnitude = 0.0
    states = haar_random_states(args.count, RngStream(args.seed))
    for psi in tqdm(
        states,
        total=args.count,
        desc="Checking",
        unit=" states",
        file=sys.stderr,
        disable=args.quiet,
        leave=False,
        bar_format=PROGRESS_BAR_FORMAT,
    ):
        magnitudes = {atom: spin_magnitude(mean_spin_vector(psi, atom)) for atom in (1, 2)}
        for atom, magnitude in magnitudes.items():
            gap = abs(
                entropy_eigen(partial_trace(psi, atom))
                - entropy_from_magnitude(magnitude)
            )
            worst_entropy = max(worst_entropy, gap)
        worst_magnitude = max(worst_magnitude, abs(magnitudes[1] - magnitudes[2]))

    passed = worst_entropy < SELF_TEST_TOL and worst_magnitude < SELF_TEST_TOL
    lines = [
        f"🎯 Oracle check over {args.count} Haar-random states (seed {args.seed})",
        f"max |S_eigen - S_from_magnitude| = {worst_entropy:.3e}",
        f"max |r_atom1 - r_atom2| = {worst_magnitude:.3e}",
        f"{'✅ PASS' if passed else '❌ FAIL'} (threshold {SELF_TEST_TOL:g})",
    ]
    payload = {
        "count": args.count,
        "seed": args.seed,
        "max_entropy_discrepancy": worst_entropy,
        "max_magnitude_discrepancy": worst_magnitude,
        "threshold": SELF_TEST_TOL,
        "passed": passed,
    }
    emit(args, lines, payload)
    return EXIT_OK if passed else EXIT_DISCREPANCY


def cmd_study(args: argparse.Namespace) -> int:
    psi = load_state_argument(args)
    table = estimator_study(
        psi, args.atom, args.shots, args.seeds, args.seed, progress=not args.quiet
    )
    write_table(table, args.out, args.quiet)
    for row in table.itertuples(index=False):
        status(
            f"📊 N={row.shots}: rmse={row.rmse:.3e} "
            f"mean entropy={fmt(row.mean_entropy)} coverage={row.coverage:.1%}",
            args.quiet,
        )
    return EXIT_OK


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def point_count(text: str) -> int:
    value = positive_int(text)
    if value < 2:
        raise argparse.ArgumentTypeError(f"need at least 2 points, got {value}")
    return value


def seed_value(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer seed, got {text!r}")
    if not 0 <= value <= MAX_SEED:
        raise argparse.ArgumentTypeError(f"seed must be in [0, 2^64 - 1], got {value}")
    return value


def shot_list(text: str) -> List[int]:
    return [positive_int(item.strip()) for item in text.split(",") if item.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spin-entropy",
        description="Entanglement entropy of two two-level atoms from the "
        "magnitude of one atom's mean spin vector.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--quiet",
        action="store_true",
        help="Suppress progress bars and status lines on standard error "
        "(error messages are always printed)",
    )
    state_args = argparse.ArgumentParser(add_help=False)
    state_args.add_argument("state", help="Path to a JSON state file")
    state_args.add_argument(
        "--renormalize",
        action="store_true",
        help=f"Rescale states whose norm is more than {STATE_FILE_NORM_TOL:g} from 1",
    )
    json_args = argparse.ArgumentParser(add_help=False)
    json_args.add_argument(
        "--json",
        action="store_true",
        help="Print the full report as JSON on standard output",
    )
    atom_args = argparse.ArgumentParser(add_help=False)
    atom_args.add_argument(
        "--atom",
        type=int,
        choices=(1, 2),
        default=DEFAULT_ATOM,
        help=f"Atom whose spin is measured (default: {DEFAULT_ATOM})",
    )

    analyze_parser = subparsers.add_parser(
        "analyze",
        parents=[common, state_args, json_args],
        help="Entropy, mean spin vectors and Schmidt coefficients of a state file",
    )
    analyze_parser.set_defaults(handler=cmd_analyze)

    simulate_parser = subparsers.add_parser(
        "simulate",
        parents=[common, state_args, json_args, atom_args],
        help="Estimate the entropy from simulated spin measurements",
    )
    simulate_parser.add_argument(
        "--shots",
        type=positive_int,
        default=DEFAULT_SHOTS,
        help=f"Shots per axis (default: {DEFAULT_SHOTS})",
    )
    simulate_parser.add_argument(
        "--seed",
        type=seed_value,
        default=DEFAULT_SEED,
        help=f"64-bit random seed (default: {DEFAULT_SEED})",
    )
    simulate_parser.set_defaults(handler=cmd_simulate)

    sweep_parser = subparsers.add_parser(
        "sweep", parents=[common], help="Tabulate entropy against spin magnitude"
    )
    sweep_parser.add_argument(
        "--points",
        type=point_count,
        default=DEFAULT_POINTS,
        help=f"Number of magnitudes on [0, 1/2] (default: {DEFAULT_POINTS})",
    )
    sweep_parser.add_argument(
        "--out", default="-", help="CSV output path, - for standard output"
    )
    sweep_parser.set_defaults(handler=cmd_sweep)

    random_parser = subparsers.add_parser(
        "random",
        parents=[common, json_args],
        help="Self-test both entropy routes on Haar-random states",
    )
    random_parser.add_argument(
        "--count",
        type=positive_int,
        default=DEFAULT_COUNT,
        help=f"Number of random states (default: {DEFAULT_COUNT})",
    )
    random_parser.add_argument(
        "--seed",
        type=seed_value,
        default=DEFAULT_SEED,
        help=f"64-bit random seed (default: {DEFAULT_SEED})",
    )
    random_parser.set_defaults(handler=cmd_random)

    study_parser = subparsers.add_parser(
        "study",
        parents=[common, state_args, atom_args],
        help="RMSE and interval coverage of the estimator across shot counts",
    )
    study_parser.add_argument(
        "--shots",
        type=shot_list,
        default=shot_list(DEFAULT_STUDY_SHOTS),
        help=f"Comma separated shots per axis (default: {DEFAULT_STUDY_SHOTS})",
    )
    study_parser.add_argument(
        "--seeds",
        type=positive_int,
        default=DEFAULT_STUDY_SEEDS,
        help=f"Seeds per shot count (default: {DEFAULT_STUDY_SEEDS})",
    )
    study_parser.add_argument(
        "--seed",
        type=seed_value,
        default=DEFAULT_SEED,
        help=f"First seed of the run (default: {DEFAULT_SEED})",
    )
    study_parser.add_argument(
        "--out", default="-", help="CSV output path, - for standard output"
    )
    study_parser.set_defaults(handler=cmd_study)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except StateFileError as error:
        status(f"❌ Invalid state file: {error}")
        return EXIT_USAGE
    except NormalizationError as error:
        status(f"❌ Normalization error: {error}")
        return EXIT_NORMALIZATION
    except InvalidArgumentError as error:
        status(f"❌ {error}")
        return EXIT_USAGE
    except OSError as error:
        status(f"❌ I/O error: {error}")
        return EXIT_IO
    except KeyboardInterrupt:
        status("\nInterrupted by user")
        return EXIT_INTERRUPTED
