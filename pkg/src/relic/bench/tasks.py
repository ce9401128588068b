"""Benchmark payloads: two identical, disjoint instances per task."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from relic.graph import (
    Graph,
    betweenness_centrality,
    bfs,
    connected_components_sv,
    generate_kronecker,
    pagerank,
    sssp,
    triangle_count,
)
from relic.json_kernel import parse, widget_document

GRAPH_KERNELS = ("bc", "bfs", "cc", "pr", "sssp", "tc")
TASK_NAMES = GRAPH_KERNELS + ("json",)
DEFAULT_SEED = 42
DEFAULT_SCALE = 5
DEFAULT_DEGREE = 4


class ValidationError(AssertionError):
    def __init__(self, benchmark: str, detail: str) -> None:
        super().__init__(f"{benchmark}: {detail}")
        self.benchmark = benchmark


@dataclass(eq=False)
class Instance:
    """One private input plus the slot its kernel writes into."""

    payload: Any
    output: Any = None


def outputs_identical(a: Any, b: Any) -> bool:
    """Bit-level equality for arrays, ``==`` for everything else."""
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        if not (isinstance(a, np.ndarray) and isinstance(b, np.ndarray)):
            return False
        return a.dtype == b.dtype and a.shape == b.shape and a.tobytes() == b.tobytes()
    return type(a) is type(b) and a == b


@dataclass(eq=False)
class BenchmarkTask:
    """A kernel, two private inputs for it, and the serial reference output.

    ``make_input`` must return a fresh object on every call so the two
    instances never share mutable state.
    """

    name: str
    kernel: Callable[[Any], Any]
    make_input: Callable[[], Any]
    seed: int = DEFAULT_SEED
    info: dict = field(default_factory=dict)
    instances: tuple[Instance, Instance] | None = None
    reference: Any = None

    def prepare(self) -> tuple[Instance, Instance]:
        a, b = Instance(self.make_input()), Instance(self.make_input())
        self.reference = self.kernel(self.make_input())
        self.instances = (a, b)
        return self.instances

    def run_one(self, instance: Instance) -> None:
        instance.output = self.kernel(instance.payload)

    def reset(self) -> None:
        for inst in self._prepared():
            inst.output = None

    def validate(self) -> None:
        for label, inst in zip("AB", self._prepared()):
            if inst.output is None:
                raise ValidationError(self.name, f"instance {label} produced no output")
            if not outputs_identical(inst.output, self.reference):
                raise ValidationError(self.name, f"instance {label} differs from the serial reference")

    def _prepared(self) -> tuple[Instance, Instance]:
        if self.instances is None:
            raise RuntimeError(f"task {self.name!r} used before prepare()")
        return self.instances


def _graph_kernel(name: str, bc_source: int) -> Callable[[Graph], Any]:
    if name == "bc":
        return lambda g: betweenness_centrality(g, bc_source)
    if name == "bfs":
        return lambda g: bfs(g, 0)
    if name == "cc":
        return connected_components_sv
    if name == "pr":
        return pagerank
    if name == "sssp":
        return lambda g: sssp(g, 0)
    if name == "tc":
        return triangle_count
    raise KeyError(name)


def make_task(
    name: str,
    seed: int = DEFAULT_SEED,
    scale: int = DEFAULT_SCALE,
    degree: int = DEFAULT_DEGREE,
    bc_source: int = 0,
) -> BenchmarkTask:
    """Build one of ``TASK_NAMES`` (not yet prepared)."""
    if name == "json":
        doc = widget_document()
        return BenchmarkTask(
            name,
            parse,
            lambda: bytearray(doc),
            seed=seed,
            info={"input_bytes": len(doc)},
        )
    if name not in GRAPH_KERNELS:
        raise ValueError(f"unknown benchmark {name!r}; choose from {', '.join(TASK_NAMES)}")
    base = generate_kronecker(scale, degree, seed, weighted=(name == "sssp"))
    return BenchmarkTask(
        name,
        _graph_kernel(name, bc_source),
        base.copy,
        seed=seed,
        info={"nodes": base.num_nodes, "undirected_edges": base.num_edges, "scale": scale, "degree": degree},
    )


def spin_ns(duration_ns: int) -> int:
    """Busy-wait on the monotonic clock for ``duration_ns``."""
    clock = time.perf_counter_ns
    deadline = clock() + duration_ns
    while clock() < deadline:
        pass
    return duration_ns


def make_spin_task(instance_ns: int, seed: int = DEFAULT_SEED) -> BenchmarkTask:
    """Calibration task whose instances each spin for ``instance_ns``."""
    return BenchmarkTask(
        f"spin{instance_ns}",
        spin_ns,
        lambda: instance_ns,
        seed=seed,
        info={"instance_ns": instance_ns},
    )
