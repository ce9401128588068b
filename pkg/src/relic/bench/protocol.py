"""Paired-instance measurement protocol.

Serial mode runs instance A then B on the calling thread. The parallel modes
hand A to the other thread (relic runtime or comparator pool), run B inline,
then wait. Timing uses one monotonic clock pair per batch so the clock read
cost is amortized over many microsecond-scale pairs.
"""

from __future__ import annotations

import logging
import math
import os
import statistics
import time
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator, Protocol

from relic import topology
from relic.bench.pool import ComparatorPool
from relic.bench.report import BenchmarkRecord, host_description
from relic.bench.tasks import BenchmarkTask, ValidationError
from relic.runtime import Runtime, RuntimeConfig, start

log = logging.getLogger(__name__)

DEFAULT_ITERATIONS = 100_000
DEFAULT_WARMUP = 1_000
DEFAULT_BATCH = 1_000


class Executor(Protocol):
    def submit(self, routine, arg=None) -> None: ...

    def wait(self) -> None: ...

    def shutdown(self) -> None: ...


@dataclass(frozen=True)
class Placement:
    """Where the main and helper threads run; ``smt`` if they share a core."""

    main_cpu: int | None = None
    helper_cpu: int | None = None
    smt: bool = False

    @property
    def pinned_cpus(self) -> tuple[int, int] | None:
        if self.main_cpu is None or self.helper_cpu is None:
            return None
        return (self.main_cpu, self.helper_cpu)


def plan_placement(pin: str | tuple[int, int] = "auto", topo: topology.CpuTopology | None = None) -> Placement:
    """Resolve a ``--pin`` setting into CPUs.

    ``"auto"`` prefers the lowest SMT sibling pair (main on the lower id),
    then two distinct physical cores; ``"none"`` or ``RELIC_NO_PIN=1``
    disables pinning. An explicit ``(main, helper)`` pair is used as given.
    """
    if pin == "none" or topology.pinning_disabled():
        return Placement()
    if topo is None:
        try:
            topo = topology.discover_topology()
        except topology.TopologyError as exc:
            log.warning("topology unavailable (%s); running unpinned", exc)
            return Placement()
    if pin == "auto":
        pair = topology.smt_sibling_pair(topo)
        if pair is not None:
            return Placement(pair[0], pair[1], smt=True)
        pair = topology.distinct_core_pair(topo)
        if pair is not None:
            return Placement(pair[0], pair[1], smt=False)
        return Placement()
    main_cpu, helper_cpu = pin
    return Placement(main_cpu, helper_cpu, smt=topo.same_core(main_cpu, helper_cpu))


@contextmanager
def pinned_main(placement: Placement) -> Iterator[None]:
    """Pin the calling thread for the duration of the block, then restore it."""
    if placement.main_cpu is None:
        yield
        return
    saved = topology.current_affinity()
    topology.pin_current_thread(placement.main_cpu)
    try:
        yield
    finally:
        os.sched_setaffinity(0, saved)


def open_executor(mode: str, placement: Placement = Placement()) -> Executor:
    if mode == "relic":
        return start(RuntimeConfig(assistant_cpu=placement.helper_cpu))
    if mode == "pool":
        return ComparatorPool(worker_cpu=placement.helper_cpu)
    raise ValueError(f"mode {mode!r} has no executor")


# -- one paired execution -------------------------------------------------


def _paired_parallel(task: BenchmarkTask, ex: Executor) -> int:
    a, b = task._prepared()
    task.reset()
    t0 = time.perf_counter_ns()
    ex.submit(task.run_one, a)
    task.run_one(b)
    ex.wait()
    elapsed = time.perf_counter_ns() - t0
    task.validate()
    return elapsed


def run_paired_serial(task: BenchmarkTask) -> int:
    """Run A then B on this thread; returns nanoseconds for the pair."""
    a, b = task._prepared()
    task.reset()
    t0 = time.perf_counter_ns()
    task.run_one(a)
    task.run_one(b)
    elapsed = time.perf_counter_ns() - t0
    task.validate()
    return elapsed


def run_paired_relic(task: BenchmarkTask, rt: Runtime) -> int:
    """Submit A to the assistant, run B inline, wait; returns nanoseconds."""
    return _paired_parallel(task, rt)


def run_paired_pool(task: BenchmarkTask, pool: ComparatorPool) -> int:
    """As :func:`run_paired_relic` but dispatched through the blocking pool."""
    return _paired_parallel(task, pool)


def _step_fn(task: BenchmarkTask, mode: str, ex: Executor | None):
    a, b = task._prepared()
    run_one = task.run_one
    if mode == "serial":

        def step():
            run_one(a)
            run_one(b)

    else:
        submit, wait = ex.submit, ex.wait

        def step():
            submit(run_one, a)
            run_one(b)
            wait()

    return step


# -- repeated runs ------------------------------------------------------------


def clock_warnings() -> list[str]:
    info = time.get_clock_info("perf_counter")
    if not info.monotonic:
        return ["perf_counter is not monotonic on this host"]
    if info.resolution > 1e-6:
        return [f"clock resolution {info.resolution:g}s is coarser than 1us"]
    return []


def measure(
    task: BenchmarkTask,
    mode: str,
    iterations: int = DEFAULT_ITERATIONS,
    warmup: int = DEFAULT_WARMUP,
    batch: int = DEFAULT_BATCH,
    seed: int | None = None,
    executor: Executor | None = None,
    placement: Placement = Placement(),
) -> BenchmarkRecord:
    """Time ``iterations`` paired executions of ``task`` in ``mode``.

    ``mean_ns`` is the total time over ``iterations``; ``stddev_ns`` is the
    spread of the per-batch means. Outputs are validated after the warmup and
    at the end of every batch, outside the timed region. For the parallel
    modes an ``executor`` is started (and stopped) unless one is given.
    """
    if not iterations >= batch >= 1:
        raise ValueError(f"need iterations >= batch >= 1, got iterations={iterations}, batch={batch}")
    if warmup < 0:
        raise ValueError("warmup must be >= 0")
    if task.instances is None:
        task.prepare()

    own_executor = mode != "serial" and executor is None
    if own_executor:
        executor = open_executor(mode, placement)
    try:
        step = _step_fn(task, mode, executor)
        task.reset()
        for _ in range(warmup):
            step()
        if warmup:
            task.validate()

        clock = time.perf_counter_ns
        batch_means = []
        total = 0
        remaining = iterations
        while remaining:
            size = min(batch, remaining)
            task.reset()
            t0 = clock()
            for _ in range(size):
                step()
            elapsed = clock() - t0
            task.validate()
            total += elapsed
            batch_means.append(elapsed / size)
            remaining -= size
    finally:
        if own_executor:
            executor.shutdown()

    return BenchmarkRecord(
        benchmark=task.name,
        mode=mode,
        iterations=iterations,
        warmup=warmup,
        batch=batch,
        mean_ns=max(total / iterations, math.ulp(0.0)),
        stddev_ns=statistics.pstdev(batch_means) if len(batch_means) > 1 else 0.0,
        smt=placement.smt,
        pinned_cpus=placement.pinned_cpus,
        host=host_description(),
        seed=task.seed if seed is None else seed,
        warnings=tuple(clock_warnings()),
    )


@dataclass(frozen=True)
class SoakResult:
    benchmark: str
    mode: str
    iterations: int
    failures: int
    first_failure: str | None = None


def soak(
    task: BenchmarkTask,
    mode: str,
    iterations: int = DEFAULT_ITERATIONS,
    executor: Executor | None = None,
    placement: Placement = Placement(),
) -> SoakResult:
    """Run ``iterations`` pairs, validating every single one; counts failures."""
    if task.instances is None:
        task.prepare()
    own_executor = mode != "serial" and executor is None
    if own_executor:
        executor = open_executor(mode, placement)
    failures = 0
    first = None
    try:
        if mode == "serial":
            run = run_paired_serial
            args: tuple = ()
        else:
            run = _paired_parallel
            args = (executor,)
        for _ in range(iterations):
            try:
                run(task, *args)
            except ValidationError as exc:
                failures += 1
                if first is None:
                    first = str(exc)
    finally:
        if own_executor:
            executor.shutdown()
    return SoakResult(task.name, mode, iterations, failures, first)
