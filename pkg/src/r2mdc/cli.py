"""Command-line front end.

    r2mdc --n 8 --engine pipeline --mode f64 --input samples.csv \\
          [--trace trace.csv] [--report report.json]
    r2mdc --n 8 --resources

Exit codes: 0 pass, 1 tolerance exceeded, 2 usage error, 3 file error.
"""

from __future__ import annotations

import argparse
import math
import sys

from .errors import ConfigError, DomainError, FrameLengthError, ParseError, UsageError
from .harness import ENGINES, emit_trace, load_frames, run_engine
from .numerics import NumericMode, is_power_of_two
from .pipeline import PipelineConfig, new_pipeline
from .resources import PUBLISHED_N8, SYNTHESIS_ONLY_N8, audit_pipeline, count_resources

EXIT_OK, EXIT_TOLERANCE, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

_ROWS = [
    ("multipliers", "real_multipliers"),
    ("butterfly add/sub", "butterfly_real_addsubs"),
    ("multiplier add/sub", "cmult_real_addsubs"),
    ("delay elements", "delay_registers_complex"),
    ("pipeline registers", "pipeline_registers_complex"),
    ("switches", "switches"),
    ("stages", "stages"),
]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="r2mdc",
        description="Run the software FFTs or the cycle-accurate R2MDC pipeline "
        "against a naive DFT oracle, or print architectural resource counts.",
    )
    p.add_argument("--n", type=int, required=True, help="transform length (power of two)")
    p.add_argument("--engine", choices=ENGINES, default="pipeline")
    p.add_argument("--mode", default="f64", help="f64 or q<m>.<f>, e.g. q1.15")
    p.add_argument("--input", help="sample file, one 're,im' pair per line")
    p.add_argument("--trace", help="write a per-cycle CSV trace (pipeline engine)")
    p.add_argument("--report", help="write the JSON run report here")
    p.add_argument("--resources", action="store_true",
                   help="print the resource report for --n and exit")
    return p


def cmd_resources(n: int, out=None) -> int:
    out = out or sys.stdout
    if not is_power_of_two(n) or n < 4:
        print(f"error: --n must be a power of two >= 4, got {n}", file=sys.stderr)
        return EXIT_USAGE
    report = count_resources(n)
    audited = audit_pipeline(new_pipeline(PipelineConfig(n)))
    values = report.as_dict()
    s = report.stages
    ok = (
        audited == report
        and report.delay_registers_complex == 3 * n // 2 - 2
        and report.switches == s - 1
        and report.real_multipliers == 4 * s
    )
    print(f"R2MDC resources, n={n}", file=out)
    for label, key in _ROWS:
        line = f"  {label}: {values[key]}"
        if n == 8 and key in PUBLISHED_N8:
            ref = PUBLISHED_N8[key]
            line += f" (paper: {ref}, {'match' if ref == values[key] else 'MISMATCH'})"
            ok = ok and ref == values[key]
        print(line, file=out)
    print(f"  structural audit: {'match' if audited == report else 'MISMATCH'}", file=out)
    if n == 8:
        print("Not reproduced (synthesis-tool results, out of scope):", file=out)
        for name, value in SYNTHESIS_ONLY_N8.items():
            print(f"  {name}: {value}", file=out)
    return EXIT_OK if ok else EXIT_TOLERANCE


def cmd_run(args, out=None) -> int:
    out = out or sys.stdout
    try:
        mode = NumericMode.parse(args.mode)
    except (UsageError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    n = args.n
    min_n = 4 if args.engine == "pipeline" else 2
    if not is_power_of_two(n) or n < min_n:
        print(f"error: --n must be a power of two >= {min_n}, got {n}", file=sys.stderr)
        return EXIT_USAGE
    if not args.input:
        print("error: --input is required unless --resources is given", file=sys.stderr)
        return EXIT_USAGE
    if args.trace and args.engine != "pipeline":
        print("error: --trace needs --engine pipeline", file=sys.stderr)
        return EXIT_USAGE

    try:
        frames = load_frames(args.input, n)
    except (OSError, ParseError, FrameLengthError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO

    records = [] if args.trace else None
    try:
        report = run_engine(frames, args.engine, mode, trace=records)
    except DomainError as exc:
        print(f"error: {args.input}: {exc}", file=sys.stderr)
        return EXIT_IO

    try:
        if args.trace:
            emit_trace(records, args.trace, mode, stages=PipelineConfig(n).stages)
        if args.report:
            with open(args.report, "w", encoding="utf-8") as fh:
                fh.write(report.to_json())
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO

    snr = "inf" if math.isinf(report.snr_db) else f"{report.snr_db:.2f}"
    print(
        f"engine={report.engine} mode={report.mode} n={n} frames={report.frames_processed} "
        f"max_abs_error={report.max_abs_error:.3e} tolerance={report.tolerance:.3e} "
        f"snr_db={snr} latency={report.latency_cycles} cycles={report.total_cycles} "
        f"{'PASS' if report.passed else 'FAIL'}",
        file=out,
    )
    return EXIT_OK if report.passed else EXIT_TOLERANCE


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.resources:
        return cmd_resources(args.n)
    return cmd_run(args)


if __name__ == "__main__":
    sys.exit(main())
