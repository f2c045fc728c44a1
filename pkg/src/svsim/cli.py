"""Command-line entry point: run circuits, benchmark them, emit generators.

Exit code is 0 on success and 1 on any failure; diagnostics go to stderr
with a phase tag and source position when available, results go to stdout
or --out.

``run`` prints each classical register (element 0 first) and the final
norm. The --shots/--format json/--state-out options exist for driving the
emulator from other processes: shots replays the program with seeds
seed..seed+shots-1 and aggregates a histogram of register values; the
state dump writes post-run amplitudes as JSON pairs.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .bench import BenchmarkSpec, format_report, generate, run_benchmark
from .errors import EmulatorError
from .kernel import ExecConfig, Precision, default_memory_limit
from .vm import run_source


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="svsim",
        description="Exact state-vector emulator for OpenQASM 2.0 circuits.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--precision", choices=("single", "double"),
                       default="double", help="amplitude precision")
        p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                       help="kernel worker count")
        p.add_argument("--seed", type=int, default=0,
                       help="base seed for measurement sampling")
        p.add_argument("--memory-limit", type=int,
                       default=default_memory_limit(), metavar="BYTES",
                       help="state allocation cap (default: 75%% of RAM)")

    run = sub.add_parser("run", help="execute one OpenQASM file")
    run.add_argument("file", help="OpenQASM 2.0 source path")
    common(run)
    run.add_argument("--shots", type=int, default=1,
                     help="number of executions (seeds seed..seed+shots-1)")
    run.add_argument("--format", choices=("text", "json"), default="text")
    run.add_argument("--state-out", metavar="PATH",
                     help="write final amplitudes as JSON to PATH")
    run.add_argument("--state-cap", type=int, default=None, metavar="N",
                     help="refuse the state dump above N qubits")

    bench = sub.add_parser("bench", help="benchmark circuits")
    bench.add_argument("files", nargs="*", help="OpenQASM 2.0 source paths")
    common(bench)
    bench.add_argument("--gen", action="append", default=[], metavar="FAMILY",
                       help="generated circuit qft:N, ghz:N or bv:BITS "
                            "(repeatable)")
    bench.add_argument("--runs", type=int, default=10,
                       help="timed runs per circuit")
    bench.add_argument("--format", choices=("text", "json", "csv"),
                       default="text")
    bench.add_argument("--out", metavar="PATH",
                       help="write the report here instead of stdout")

    gen = sub.add_parser("gen", help="write a generated circuit")
    gen.add_argument("family", help="qft:N, ghz:N or bv:BITS")
    gen.add_argument("out", help="output path, or - for stdout")
    return parser


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def _config(args) -> ExecConfig:
    return ExecConfig(threads=max(args.threads, 1),
                      memory_limit_bytes=args.memory_limit)


def _precision(args) -> Precision:
    return Precision.SINGLE if args.precision == "single" else Precision.DOUBLE


def cmd_run(args) -> int:
    try:
        source = Path(args.file).read_text()
    except OSError as err:
        return _fail(f"no such file: {err}")
    if args.shots < 1:
        return _fail("--shots must be >= 1")
    config = _config(args)
    precision = _precision(args)
    base = Path(args.file).parent
    histogram: dict[str, int] = {}
    result = None
    try:
        for shot in range(args.shots):
            result = run_source(source, precision, args.seed + shot,
                                config, include_base=base)
            key = result.classical.key_string()
            histogram[key] = histogram.get(key, 0) + 1
        if args.state_out is not None:
            _dump_state(result, args)
    except EmulatorError as err:
        return _fail(str(err))

    if args.format == "json":
        payload = {
            "cregs": {name: result.classical.bits(name)
                      for name in result.classical.names()},
            "histogram": histogram,
            "shots": args.shots,
            "norm": result.final_norm,
        }
        print(json.dumps(payload))
    else:
        if args.shots == 1:
            for name in result.classical.names():
                bits = "".join(str(b) for b in result.classical.bits(name))
                print(f"{name} = {bits}")
        else:
            for key in sorted(histogram):
                print(f"{key} {histogram[key]}")
        print(f"norm = {result.final_norm:.12f}")
    return 0


def _dump_state(result, args) -> None:
    n = result.state.n_qubits
    if args.state_cap is not None and n > args.state_cap:
        raise EmulatorError(
            f"state dump of {n} qubits exceeds the cap of {args.state_cap}")
    amps = result.state.copy_amplitudes()
    payload = {"n_qubits": n,
               "amplitudes": [[float(a.real), float(a.imag)] for a in amps]}
    Path(args.state_out).write_text(json.dumps(payload))


def cmd_bench(args) -> int:
    inputs: list[tuple[str, str]] = []
    try:
        for family in args.gen:
            inputs.append(generate(family))
    except ValueError as err:
        return _fail(str(err))
    for path in args.files:
        try:
            inputs.append((path, Path(path).read_text()))
        except OSError as err:
            return _fail(f"no such file: {err}")
    if not inputs:
        return _fail("nothing to benchmark: pass files or --gen FAMILY")

    config = _config(args)
    precision = _precision(args)
    reports = []
    failure = None
    for name, source in inputs:
        spec = BenchmarkSpec(name=name, source=source, runs=args.runs,
                             precision=precision, seed_base=args.seed,
                             threads=args.threads, config=config)
        try:
            reports.append(run_benchmark(spec))
        except EmulatorError as err:
            failure = f"benchmark {name!r} failed: {err}"
            break

    text = format_report(reports, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        print(text, end="")
    if failure:
        return _fail(failure)
    return 0


def cmd_gen(args) -> int:
    try:
        _, source = generate(args.family)
    except ValueError as err:
        return _fail(f"{err}\nusage: svsim gen {{qft:N|ghz:N|bv:BITS}} OUT")
    if args.out == "-":
        print(source, end="")
    else:
        Path(args.out).write_text(source)
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    handler = {"run": cmd_run, "bench": cmd_bench, "gen": cmd_gen}[args.command]
    try:
        return handler(args)
    except ValueError as err:
        return _fail(str(err))


if __name__ == "__main__":
    sys.exit(main())
