"""SMT sibling discovery and thread pinning (Linux sysfs)."""

from __future__ import annotations

import glob
import logging
import os
import re
from dataclasses import dataclass, field
from pathlib import Path

log = logging.getLogger(__name__)

SYSFS_CPU_ROOT = "/sys/devices/system/cpu"
SIBLINGS_FILE = "topology/thread_siblings_list"
NO_PIN_ENV = "RELIC_NO_PIN"

_CPU_DIR_RE = re.compile(r"cpu(\d+)$")


class TopologyError(OSError):
    pass


class PinningError(OSError):
    pass


@dataclass(frozen=True)
class PhysicalCore:
    core_id: int
    logical_cpus: tuple[int, ...]


@dataclass(frozen=True)
class CpuTopology:
    cores: tuple[PhysicalCore, ...] = field(default_factory=tuple)

    @property
    def logical_cpus(self) -> list[int]:
        return sorted(c for core in self.cores for c in core.logical_cpus)

    def core_of(self, cpu: int) -> PhysicalCore | None:
        for core in self.cores:
            if cpu in core.logical_cpus:
                return core
        return None

    def same_core(self, cpu_a: int, cpu_b: int) -> bool:
        core = self.core_of(cpu_a)
        return core is not None and cpu_b in core.logical_cpus

    @classmethod
    def from_sibling_lists(cls, sibling_lists: dict[int, str]) -> "CpuTopology":
        """Build a topology from ``{cpu: sibling-list text}``.

        Cores are numbered in order of their lowest logical CPU.
        """
        groups = {tuple(parse_cpu_list(text)) for text in sibling_lists.values()}
        seen: set[int] = set()
        cores = []
        for i, group in enumerate(sorted(groups)):
            overlap = seen.intersection(group)
            if overlap:
                raise TopologyError(f"logical CPUs {sorted(overlap)} listed under two cores")
            seen.update(group)
            cores.append(PhysicalCore(core_id=i, logical_cpus=group))
        return cls(cores=tuple(cores))


def parse_cpu_list(text: str) -> list[int]:
    """Parse kernel cpu-list syntax such as ``"0,6"``, ``"0-1"`` or ``"0,2-3"``."""
    cpus: set[int] = set()
    text = text.strip()
    if not text:
        raise ValueError("empty cpu list")
    for item in text.split(","):
        item = item.strip()
        lo, sep, hi = item.partition("-")
        try:
            if sep:
                start, stop = int(lo), int(hi)
                if stop < start:
                    raise ValueError
                cpus.update(range(start, stop + 1))
            else:
                cpus.add(int(item))
        except ValueError:
            raise ValueError(f"malformed cpu list item {item!r} in {text!r}") from None
    return sorted(cpus)


def discover_topology(root: str | os.PathLike = SYSFS_CPU_ROOT) -> CpuTopology:
    pattern = os.path.join(os.fspath(root), "cpu*", SIBLINGS_FILE)
    sibling_lists = {}
    for path in glob.glob(pattern):
        cpu_dir = Path(path).parent.parent.name
        match = _CPU_DIR_RE.match(cpu_dir)
        if match is None:
            continue
        try:
            sibling_lists[int(match.group(1))] = Path(path).read_text()
        except OSError as exc:
            raise TopologyError(f"cannot read {path}: {exc}") from exc
    if not sibling_lists:
        raise TopologyError(f"no sibling lists found at {pattern}")
    return CpuTopology.from_sibling_lists(sibling_lists)


def smt_sibling_pair(topo: CpuTopology) -> tuple[int, int] | None:
    """Lowest-numbered pair of logical CPUs sharing one physical core."""
    pairs = [core.logical_cpus[:2] for core in topo.cores if len(core.logical_cpus) >= 2]
    if not pairs:
        return None
    return min(pairs)  # type: ignore[return-value]


def distinct_core_pair(topo: CpuTopology) -> tuple[int, int] | None:
    """Fallback placement: first CPU of the two lowest physical cores."""
    firsts = sorted(core.logical_cpus[0] for core in topo.cores)
    if len(firsts) < 2:
        return None
    return firsts[0], firsts[1]


def pinning_disabled() -> bool:
    return os.environ.get(NO_PIN_ENV, "") == "1"


def pin_current_thread(cpu: int) -> bool:
    """Restrict the calling thread to logical CPU ``cpu``.

    Returns False (and logs) when pinning is disabled through ``RELIC_NO_PIN=1``.
    """
    if pinning_disabled():
        log.info("%s=1: skipping pin to cpu %d", NO_PIN_ENV, cpu)
        return False
    if not isinstance(cpu, int) or cpu < 0:
        raise PinningError(f"invalid cpu id {cpu!r}")
    try:
        # pid 0 addresses the calling thread, not the whole process.
        os.sched_setaffinity(0, {cpu})
    except OSError as exc:
        raise PinningError(f"cannot pin thread to cpu {cpu}: {exc}") from exc
    return True


def current_affinity() -> set[int]:
    return set(os.sched_getaffinity(0))
