"""Benchmark harness: repeated timed runs plus the self-authored circuit
families (Fourier transform, GHZ preparation, hidden-string recovery).

A benchmark compiles its circuit once, then for each run allocates a fresh
|0...0> state, reseeds the generator with seed_base + run index, and times
allocation plus execution. Statistics are the sample mean, extremes and
the (n-1)-divisor standard deviation.
"""
from __future__ import annotations

import csv
import io
import json
import statistics
import time
from dataclasses import dataclass, field

from .errors import ReportInvalid
from .kernel import ExecConfig, Precision, new_state
from .rng import RngState
from .vm import compile_source, execute


# --- circuit generators ------------------------------------------------------

def generate_qft(n: int) -> str:
    """Hadamard preparation layer, Fourier layer (without the final swap
    network), and a measurement of every qubit.

    On the uniform superposition the Fourier layer lands exactly on
    |0...0>, and that outcome is invariant under the qubit relabeling the
    swaps would perform, so the swap layer is omitted. Total gate count is
    2n + n(n-1)/2.
    """
    if n < 1:
        raise ValueError("need at least 1 qubit")
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";',
             f"qreg q[{n}];", f"creg c[{n}];"]
    lines += [f"h q[{k}];" for k in range(n)]
    for j in range(n - 1, -1, -1):
        lines.append(f"h q[{j}];")
        for i in range(j - 1, -1, -1):
            lines.append(f"cu1(pi/2^{j - i}) q[{i}], q[{j}];")
    lines += [f"measure q[{k}] -> c[{k}];" for k in range(n)]
    return "\n".join(lines) + "\n"


def generate_ghz(n: int) -> str:
    """One Hadamard and a CX chain onto (|0...0> + |1...1>)/sqrt(2), then
    measure every qubit; n gates, n measurements."""
    if n < 2:
        raise ValueError("need at least 2 qubits")
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";',
             f"qreg q[{n}];", f"creg c[{n}];", "h q[0];"]
    lines += [f"cx q[{k}], q[{k + 1}];" for k in range(n - 1)]
    lines += [f"measure q[{k}] -> c[{k}];" for k in range(n)]
    return "\n".join(lines) + "\n"


def generate_bv(s: str) -> str:
    """Hidden-string circuit for f(x) = s.x mod 2: ancilla prepared in |->,
    one oracle query of CXs from each set bit, then uncompute the Hadamards
    and read the string off the data qubits deterministically.

    Gate count is 2(n+1) + weight(s) for n data qubits plus the ancilla.
    """
    if not s or any(ch not in "01" for ch in s):
        raise ValueError("hidden string must be a nonempty string of 0s and 1s")
    n = len(s)
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";',
             f"qreg q[{n + 1}];", f"creg c[{n}];",
             f"x q[{n}];", "h q;"]
    lines += [f"cx q[{k}], q[{n}];" for k in range(n) if s[k] == "1"]
    lines += [f"h q[{k}];" for k in range(n)]
    lines += [f"measure q[{k}] -> c[{k}];" for k in range(n)]
    return "\n".join(lines) + "\n"


GENERATORS = {"qft": generate_qft, "ghz": generate_ghz, "bv": generate_bv}


def generate(family: str) -> tuple[str, str]:
    """Resolve a family spec like ``qft:20``, ``ghz:10`` or ``bv:1011`` to
    (name, source)."""
    kind, sep, arg = family.partition(":")
    if not sep or kind not in GENERATORS:
        raise ValueError(
            f"unknown generator {family!r}; expected qft:N, ghz:N or bv:BITS")
    if kind == "bv":
        return family, generate_bv(arg)
    try:
        n = int(arg)
    except ValueError:
        raise ValueError(f"bad qubit count in {family!r}") from None
    return family, GENERATORS[kind](n)


# --- benchmark runner -----------------------------------------------------------

@dataclass(frozen=True)
class BenchmarkSpec:
    name: str
    source: str
    runs: int = 10
    precision: Precision = Precision.DOUBLE
    seed_base: int = 0
    threads: int = 1
    config: ExecConfig | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be >= 1")


@dataclass(frozen=True)
class BenchmarkReport:
    name: str
    n_qubits: int
    runs: int
    mean_s: float
    max_s: float
    min_s: float
    stddev_s: float
    gate_count: int
    measure_count: int
    reset_count: int


def run_benchmark(spec: BenchmarkSpec, clock=time.perf_counter) -> BenchmarkReport:
    """Compile once, then time state allocation + execution per run."""
    program = compile_source(spec.source)
    config = spec.config or ExecConfig(threads=spec.threads)
    times = []
    for r in range(spec.runs):
        rng = RngState(spec.seed_base + r)
        t0 = clock()
        state = new_state(max(program.qubit_map.total, 1),
                          spec.precision, config)
        execute(program, state, rng)
        t1 = clock()
        if t1 < t0:
            raise ReportInvalid("timer went backwards")
        times.append(t1 - t0)
        del state
    return BenchmarkReport(
        name=spec.name,
        n_qubits=program.qubit_map.total,
        runs=spec.runs,
        mean_s=statistics.fmean(times),
        max_s=max(times),
        min_s=min(times),
        stddev_s=statistics.stdev(times) if len(times) > 1 else 0.0,
        gate_count=program.stats.gate_count,
        measure_count=program.stats.measure_count,
        reset_count=program.stats.reset_count,
    )


# --- report formatting -----------------------------------------------------------

FIELDS = ("name", "n_qubits", "runs", "mean_s", "max_s", "min_s",
          "stddev_s", "gate_count", "measure_count", "reset_count")


def _row(report: BenchmarkReport) -> dict:
    return {f: getattr(report, f) for f in FIELDS}


def format_report(reports: list[BenchmarkReport], format: str = "text") -> str:
    if format == "json":
        return json.dumps([_row(r) for r in reports], indent=2) + "\n"
    if format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=FIELDS, lineterminator="\n")
        writer.writeheader()
        for r in reports:
            writer.writerow(_row(r))
        return buf.getvalue()
    if format == "text":
        return _format_text(reports)
    raise ValueError(f"unknown format {format!r}")


def _format_text(reports: list[BenchmarkReport]) -> str:
    headers = ("Description", "Time per run (s)", "Qubits", "Runs",
               "Gates", "Measurements", "Resets")
    rows = []
    for r in reports:
        stats = (f"mean: {r.mean_s:.3f}  max: {r.max_s:.3f}  "
                 f"min: {r.min_s:.3f}  stddev: {r.stddev_s:.3f}")
        rows.append((r.name, stats, str(r.n_qubits), str(r.runs),
                     str(r.gate_count), str(r.measure_count),
                     str(r.reset_count)))
    widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h)
              for i, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"
