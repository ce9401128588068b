"""Paired-instance benchmark harness."""

from relic.bench.pool import ComparatorPool
from relic.bench.protocol import (
    Placement,
    SoakResult,
    measure,
    plan_placement,
    run_paired_pool,
    run_paired_relic,
    run_paired_serial,
    soak,
)
from relic.bench.report import (
    AggregateReport,
    AggregationError,
    BenchmarkRecord,
    aggregate,
    emit_report,
    speedup,
)
from relic.bench.tasks import TASK_NAMES, BenchmarkTask, ValidationError, make_spin_task, make_task

__all__ = [
    "TASK_NAMES",
    "AggregateReport",
    "AggregationError",
    "BenchmarkRecord",
    "BenchmarkTask",
    "ComparatorPool",
    "Placement",
    "SoakResult",
    "ValidationError",
    "aggregate",
    "emit_report",
    "make_spin_task",
    "make_task",
    "measure",
    "plan_placement",
    "run_paired_pool",
    "run_paired_relic",
    "run_paired_serial",
    "soak",
    "speedup",
]
