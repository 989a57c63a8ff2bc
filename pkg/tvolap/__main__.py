"""Command-line interface for the tvolap package."""

from __future__ import annotations

import csv
import logging
import sys
from argparse import ArgumentParser, Namespace
from dataclasses import replace
from pathlib import Path

from .cost import Algorithm, cost, published_tables, tables_to_csv, to_csv, to_json
from .errors import InvalidConfigurationError, TvolapError
from .experiment import (
    ALGORITHMS,
    METRIC_FIELDS,
    ExperimentResult,
    ExperimentSpec,
    InputSource,
    output_dir,
    run_experiment,
)
from .reference import CrossfadeConfig
from .scenarios import PRESETS
from .wav import WavFormat, write_wav

# Options whose values may start with a dash ("-delta").
_FILTER_OPTIONS = ("--ir", "--ir-a", "--ir-b")

# Options shared by the experiment commands, mapped to ExperimentSpec fields.
_SPEC_OPTIONS = {
    "input": "source",
    "ir_a": "filter_a",
    "ir_b": "filter_b",
    "at": "switch_time",
    "block": "block",
    "ir_len": "ir_length",
    "fs": "sample_rate",
    "duration": "duration",
    "chunk": "chunk",
    "name": "name",
    "out_dir": "output_dir",
    "jobs": "jobs",
}


def _add_experiment_arguments(parser: ArgumentParser, switching: bool) -> None:
    parser.add_argument(
        "--preset",
        help="Start from a named scenario",
        choices=PRESETS.keys(),
    )
    parser.add_argument(
        "--algo",
        help=f"Algorithms to run ({', '.join(ALGORITHMS)}); cf-tdc:linear fades linearly",
        nargs="+",
        metavar="ALGO",
    )
    parser.add_argument(
        "--input",
        help="Input signal: ones, sine[:freq], pink[:seed] or a WAV file",
        type=InputSource.parse,
    )

    if switching:
        parser.add_argument("--ir-a", help="Impulse response before the switch")
        parser.add_argument("--ir-b", help="Impulse response after the switch")
        parser.add_argument(
            "--at", help="Switch time in ms (default: middle of the signal)", type=float
        )
        parser.add_argument("--fade", help="CF-TDC crossfade length in samples", type=int)
    else:
        parser.add_argument("--ir", dest="ir_a", help="Impulse response")

    parser.add_argument("--block", help="TVOLAP block size 2L", type=int)
    parser.add_argument("--ir-len", help="Impulse response length", type=int)
    parser.add_argument("--fs", help="Sample rate of generated signals", type=int)
    parser.add_argument("--duration", help="Signal duration in ms", type=float)
    parser.add_argument("--chunk", help="Host chunk size fed to the processors", type=int)
    parser.add_argument("--jobs", help="Parallel algorithm runs", type=int)
    parser.add_argument("--name", help="Prefix of the written files")
    parser.add_argument("--out-dir", help="Output directory", type=Path)


def _join_filter_values(argv: list[str]) -> list[str]:
    """
    Attach dash-prefixed filter values to their option, so that
    ``--ir-b -delta`` parses like ``--ir-b=-delta``.

    Args:
        argv: Command-line arguments.

    Returns:
        The arguments with such pairs joined.
    """

    joined: list[str] = []
    tokens = iter(argv)
    for token in tokens:
        if token in _FILTER_OPTIONS:
            value = next(tokens, None)
            if value is not None and value.startswith("-") and not value.startswith("--"):
                joined.append(f"{token}={value}")
                continue
            joined.append(token)
            if value is not None:
                joined.append(value)
            continue
        joined.append(token)

    return joined


def build_parser() -> ArgumentParser:
    """
    Build the argument parser.

    Returns:
        The parser.
    """

    parser = ArgumentParser(prog="tvolap")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", help="Log debug messages", action="store_true")
    verbosity.add_argument("-q", "--quiet", help="Log warnings only", action="store_true")

    commands = parser.add_subparsers(dest="command", required=True)

    cost_parser = commands.add_parser("cost", help="Print operation counts and latencies")
    cost_parser.add_argument(
        "--algo",
        help="Algorithms to report",
        nargs="+",
        choices=[algorithm.value for algorithm in Algorithm],
        default=[algorithm.value for algorithm in Algorithm],
    )
    cost_parser.add_argument("--ir-len", help="Impulse response length N_IR", type=int)
    cost_parser.add_argument(
        "--block", help="TVOLAP block size 2L (default: %(default)s)", type=int, default=512
    )
    cost_parser.add_argument("--fs", help="Sample rate in Hz", type=int, default=48000)
    cost_parser.add_argument("--fade", help="CF-TDC crossfade length in samples", type=int)
    cost_parser.add_argument("--format", choices=("csv", "json"), default="csv")
    cost_parser.add_argument(
        "--tables", help="Compare with the published tables", action="store_true"
    )

    signal_parser = commands.add_parser("signal", help="Write a test signal to a WAV file")
    signal_parser.add_argument(
        "source", help="ones, sine[:freq] or pink[:seed]", type=InputSource.parse
    )
    signal_parser.add_argument("--duration", help="Duration in ms", type=float, default=1000.0)
    signal_parser.add_argument("--fs", help="Sample rate in Hz", type=int, default=48000)
    signal_parser.add_argument(
        "--format", choices=[wav_format.value for wav_format in WavFormat], default="float32"
    )
    signal_parser.add_argument("--out", help="Destination file", type=Path)

    process_parser = commands.add_parser("process", help="Filter a signal time-invariantly")
    _add_experiment_arguments(process_parser, switching=False)

    switch_parser = commands.add_parser("switch", help="Exchange the filter once")
    _add_experiment_arguments(switch_parser, switching=True)

    compare_parser = commands.add_parser("compare", help="Compare TVOLAP with CF-TDC")
    _add_experiment_arguments(compare_parser, switching=True)

    return parser


def _cost(args: Namespace) -> int:
    if args.tables:
        sys.stdout.write(tables_to_csv(published_tables(args.fs)))
        return 0

    reports = []
    for name in args.algo:
        algorithm = Algorithm(name)
        reports.append(
            cost(
                algorithm,
                args.ir_len,
                args.fs,
                block=args.block if algorithm is Algorithm.TVOLAP else None,
                fade=args.fade if algorithm is Algorithm.CF_TDC else None,
            )
        )

    sys.stdout.write(to_csv(reports) if args.format == "csv" else to_json(reports) + "\n")
    return 0


def _signal(args: Namespace) -> int:
    source: InputSource = args.source
    if source.kind is InputSource.Kind.WAV:
        raise InvalidConfigurationError("Only generated signals can be written.")

    frames = int(round(args.duration * args.fs / 1000))
    if frames < 1:
        raise InvalidConfigurationError(f"Duration {args.duration} ms yields no samples.")

    path = args.out or output_dir() / f"{str(source).replace(':', '-')}.wav"
    write_wav(path, source.render(frames, args.fs), args.format)
    print(path)
    return 0


def _experiment_spec(args: Namespace) -> ExperimentSpec:
    base = PRESETS[args.preset]() if args.preset else ExperimentSpec()

    changes: dict[str, object] = {
        field: getattr(args, option)
        for option, field in _SPEC_OPTIONS.items()
        if getattr(args, option, None) is not None
    }

    if args.algo:
        changes["algorithms"] = tuple(args.algo)
    elif args.command == "compare" and not args.preset:
        changes["algorithms"] = ("tvolap", "cf-tdc")

    if getattr(args, "fade", None) is not None:
        changes["fade"] = CrossfadeConfig(args.fade)

    if args.command == "process":
        changes.update(filter_b=None, switch_time=None, aligned=False)

    if not args.preset:
        changes.setdefault("name", args.command)

    return replace(base, **changes)


def _experiment(args: Namespace) -> int:
    spec = _experiment_spec(args)

    if args.command == "compare" and not (
        "tvolap" in spec.algorithms
        and any(token.startswith("cf-tdc") for token in spec.algorithms)
    ):
        raise InvalidConfigurationError("compare needs tvolap and at least one cf-tdc run.")

    _print_metrics(run_experiment(spec))
    return 0


def _print_metrics(result: ExperimentResult) -> None:
    writer = csv.DictWriter(sys.stdout, fieldnames=METRIC_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in result.metrics():
        writer.writerow({key: "" if value is None else value for key, value in row.items()})


def main(argv: list[str] | None = None) -> int:
    """
    Run the command line.

    Args:
        argv: Arguments without the program name. Defaults to ``sys.argv[1:]``.

    Returns:
        0 on success, 1 on a processing error and 2 on a usage error or a
        missing file.
    """

    parser = build_parser()

    try:
        arguments = sys.argv[1:] if argv is None else argv
        args = parser.parse_args(_join_filter_values(arguments))
        if args.command == "cost" and not args.tables and args.ir_len is None:
            parser.error("cost needs --ir-len unless --tables is given")
    except SystemExit as error:
        return int(error.code or 0)

    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    commands = {
        "cost": _cost,
        "signal": _signal,
        "process": _experiment,
        "switch": _experiment,
        "compare": _experiment,
    }

    try:
        return commands[args.command](args)
    except FileNotFoundError as error:
        print(f"tvolap: error: no such file: {error.filename}", file=sys.stderr)
        return 2
    except TvolapError as error:
        print(f"tvolap: error: {error}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
