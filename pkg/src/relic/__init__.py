"""Fine-grained two-thread tasking for SMT sibling CPUs, plus benchmark payloads."""

from relic.runtime import Runtime, RuntimeConfig, start
from relic.spsc_queue import SpscRing, TaskDescriptor

__version__ = "0.1.0"

__all__ = ["Runtime", "RuntimeConfig", "SpscRing", "TaskDescriptor", "start"]
