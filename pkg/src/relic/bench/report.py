"""Benchmark records, speedup/geomean aggregation and report emission."""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import os
import statistics
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone

MODES = ("serial", "relic", "pool")
CSV_FIELDS = ("benchmark", "mode", "iterations", "mean_ns", "stddev_ns", "speedup", "smt")


@dataclass(frozen=True)
class BenchmarkRecord:
    benchmark: str
    mode: str
    iterations: int
    warmup: int
    mean_ns: float
    stddev_ns: float
    smt: bool
    pinned_cpus: tuple[int, int] | None
    host: str
    seed: int
    batch: int = 1
    speedup: float | None = None
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if not self.mean_ns > 0:
            raise ValueError(f"mean_ns must be positive, got {self.mean_ns}")

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["pinned_cpus"] = list(self.pinned_cpus) if self.pinned_cpus is not None else None
        d["warnings"] = list(self.warnings)
        return d


class AggregationError(ValueError):
    pass


def speedup(serial: BenchmarkRecord, other: BenchmarkRecord) -> float:
    """``serial.mean_ns / other.mean_ns`` for records of the same benchmark and seed."""
    if serial.benchmark != other.benchmark or serial.seed != other.seed:
        raise AggregationError(
            f"cannot compare {serial.benchmark}/seed={serial.seed} "
            f"with {other.benchmark}/seed={other.seed}"
        )
    return serial.mean_ns / other.mean_ns


@dataclass
class AggregateReport:
    records: list[BenchmarkRecord]
    geomean_speedup: dict[str, float]
    geomean_speedup_clamped: dict[str, float]
    clamp: bool = False
    meta: dict = field(default_factory=dict)

    def headline(self, mode: str) -> float:
        """The clamped or unclamped geomean, per the ``clamp`` setting."""
        table = self.geomean_speedup_clamped if self.clamp else self.geomean_speedup
        return table[mode]

    def to_dict(self) -> dict:
        return {
            "records": [r.to_dict() for r in self.records],
            "aggregates": {
                "clamp_outliers": self.clamp,
                "geomean_speedup": dict(self.geomean_speedup),
                "geomean_speedup_clamped": dict(self.geomean_speedup_clamped),
            },
            "meta": dict(self.meta),
        }


def geomean(values) -> float:
    values = list(values)
    if not values:
        raise AggregationError("geometric mean of no values")
    return statistics.geometric_mean(values)


def aggregate(records: list[BenchmarkRecord], clamp: bool = False) -> AggregateReport:
    """Per-mode geometric mean of per-benchmark speedups over serial.

    Both the plain and the clamped mean (speedups below 1.0 counted as 1.0,
    i.e. the regressing kernel falls back to serial code) are computed;
    ``clamp`` only selects which one :meth:`AggregateReport.headline` returns.
    Returned records carry their ``speedup``.
    """
    by_key: dict[tuple[str, str], BenchmarkRecord] = {}
    for rec in records:
        key = (rec.benchmark, rec.mode)
        if key in by_key:
            raise AggregationError(f"duplicate record for benchmark={key[0]} mode={key[1]}")
        by_key[key] = rec

    filled = []
    per_mode: dict[str, list[float]] = {}
    for rec in records:
        serial = by_key.get((rec.benchmark, "serial"))
        if serial is None:
            raise AggregationError(f"no serial baseline for benchmark {rec.benchmark!r}")
        s = speedup(serial, rec)
        filled.append(dataclasses.replace(rec, speedup=s))
        per_mode.setdefault(rec.mode, []).append(s)

    plain = {mode: geomean(v) for mode, v in per_mode.items()}
    clamped = {mode: geomean(max(s, 1.0) for s in v) for mode, v in per_mode.items()}
    return AggregateReport(filled, plain, clamped, clamp=clamp)


def host_description() -> str:
    try:
        with open("/proc/cpuinfo") as fh:
            for line in fh:
                if line.startswith("model name"):
                    return line.split(":", 1)[1].strip()
    except OSError:
        pass
    import platform

    return platform.processor() or platform.machine()


def report_meta(seed: int | None, **extra) -> dict:
    from relic import __version__

    meta = {
        "host": host_description(),
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "seed": seed,
        "tool_version": __version__,
        "preparation": "excluded from timing; inputs built once and reused",
    }
    meta.update(extra)
    return meta


def render_report(report: AggregateReport, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_FIELDS)
        for rec in report.records:
            writer.writerow(
                [
                    rec.benchmark,
                    rec.mode,
                    rec.iterations,
                    repr(rec.mean_ns),
                    repr(rec.stddev_ns),
                    "" if rec.speedup is None else repr(rec.speedup),
                    "true" if rec.smt else "false",
                ]
            )
        return buf.getvalue()
    raise ValueError(f"unknown report format {fmt!r}")


def emit_report(report: AggregateReport, fmt: str, path: str | os.PathLike) -> None:
    """Write the report as JSON or CSV; ``"-"`` means stdout."""
    text = render_report(report, fmt)
    if os.fspath(path) == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write report to {os.fspath(path)}: {exc.strerror or exc}") from exc


def empty_report() -> AggregateReport:
    return AggregateReport([], {}, {}, meta=report_meta(None))

