"""Command line interface.

    sensorsynth gen-matrix --morning M.csv --afternoon A.csv --evening E.csv \\
        --night N.csv --activities ACT.csv --days 7 --out week.csv
    sensorsynth gen-dataset --input sample.csv --interval 3 --days 7 --out week.csv
    sensorsynth learn --input sample.csv --interval 3 --out-dir model/
    sensorsynth validate --matrix M.csv
    sensorsynth summarize --input week.csv

Exit status: 0 on success, 1 on data errors, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import logging
import secrets
import sys
from pathlib import Path

from . import csvio
from .engine import SimConfig, simulate
from .errors import SensorSynthError
from .generator import Generator, build_matrix_generator
from .learning import learn_generator
from .markov import MAX_SEED, validate_matrix
from .summary import SUMMARY_HEADER, summarize

log = logging.getLogger("sensorsynth")


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= value <= MAX_SEED:
        raise argparse.ArgumentTypeError("seed must be in [0, 2**64)")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _start(text: str) -> int:
    try:
        return csvio.parse_start(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_run_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--days", type=_positive, required=True, help="number of days to generate")
    p.add_argument("--start", type=_start, default=0, help="start time, ISO-8601 UTC (default 1970-01-01T00:00:00Z)")
    p.add_argument("--seed", type=_seed, default=None, help="64-bit seed; drawn at random and reported if omitted")
    p.add_argument("--anomalies", type=Path, default=None, help="anomaly windows CSV (start,end,kind)")
    p.add_argument("--out", type=Path, required=True, help="output event log CSV")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sensorsynth", description="Synthetic binary-sensor event logs.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-matrix", help="simulate from four period matrices and an activities table")
    for name in ("morning", "afternoon", "evening", "night"):
        p.add_argument(f"--{name}", type=Path, required=True, help=f"{name} transition matrix CSV")
    p.add_argument("--activities", type=Path, required=True, help="activities CSV")
    _add_run_options(p)

    p = sub.add_parser("gen-dataset", help="learn from a sample log, then simulate")
    p.add_argument("--input", type=Path, required=True)
    p.add_argument("--interval", type=_positive, required=True, help="period length in hours (divides 24)")
    _add_run_options(p)

    p = sub.add_parser("learn", help="dump the matrices and durations learned from a log")
    p.add_argument("--input", type=Path, required=True)
    p.add_argument("--interval", type=_positive, required=True)
    p.add_argument("--out-dir", type=Path, required=True)

    p = sub.add_parser("validate", help="check a transition matrix file")
    p.add_argument("--matrix", type=Path, required=True)

    p = sub.add_parser("summarize", help="per-sensor statistics of an event log")
    p.add_argument("--input", type=Path, required=True)
    return parser


def _run(gen: Generator, args) -> None:
    seed = args.seed
    if seed is None:
        seed = secrets.randbits(64)
        print(f"seed: {seed}", file=sys.stderr)
    anomalies = csvio.parse_anomalies(args.anomalies) if args.anomalies else ()
    cfg = SimConfig(days=args.days, seed=seed, start_time=args.start, anomalies=tuple(anomalies))
    events = simulate(gen, cfg)
    csvio.write_events(events, args.out)
    log.info("wrote %d events to %s", len(events), args.out)


def cmd_gen_matrix(args) -> int:
    matrices = {name: csvio.parse_matrix(getattr(args, name)) for name in ("morning", "afternoon", "evening", "night")}
    activities = csvio.parse_activities(args.activities)
    _run(build_matrix_generator(activities=activities, **matrices), args)
    return 0


def cmd_gen_dataset(args) -> int:
    gen = learn_generator(csvio.parse_events(args.input), args.interval)
    _run(gen, args)
    return 0


def cmd_learn(args) -> int:
    gen = learn_generator(csvio.parse_events(args.input), args.interval)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for p, chain in enumerate(gen.chain_set.chains):
        csvio.write_matrix(chain, args.out_dir / f"period_{p}.csv")
    csvio.write_durations(gen, args.out_dir / "durations.csv")
    log.info("wrote %d period matrices to %s", gen.chain_set.n_periods, args.out_dir)
    return 0


def cmd_validate(args) -> int:
    report = validate_matrix(csvio.parse_matrix(args.matrix))
    print(report)
    return 0 if report.ok else 1


def cmd_summarize(args) -> int:
    rows = summarize(csvio.parse_events(args.input))
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(SUMMARY_HEADER)
    for r in rows:
        writer.writerow([r.sensor, r.events, r.on_seconds_total, f"{r.on_mean:.6g}", f"{r.on_sd:.6g}", f"{r.hold_mean:.6g}", f"{r.hold_sd:.6g}"])
    return 0


COMMANDS = {
    "gen-matrix": cmd_gen_matrix,
    "gen-dataset": cmd_gen_dataset,
    "learn": cmd_learn,
    "validate": cmd_validate,
    "summarize": cmd_summarize,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (SensorSynthError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
