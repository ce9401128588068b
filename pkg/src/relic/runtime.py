"""Two-thread task runtime for a pair of SMT sibling CPUs.

The thread that calls :func:`start` becomes the *main* thread and is the only
legal producer. The runtime owns one *assistant* thread which is the only
thread that ever executes submitted tasks. Both sides busy-wait; the relax
hint inside every spin loop is ``os.sched_yield()``, which under CPython also
releases the interpreter lock so the peer can make progress.

Typical use::

    rt = start()
    rt.submit(work, chunk_a)
    work(chunk_b)          # main thread's own share
    rt.wait()
    rt.shutdown()
"""

from __future__ import annotations

import logging
import os
import threading
from dataclasses import dataclass
from typing import Any, Callable

from relic import topology
from relic.spsc_queue import DEFAULT_CAPACITY, SpscRing, TaskDescriptor, is_power_of_two

log = logging.getLogger(__name__)

_relax = os.sched_yield


class RuntimeContractError(RuntimeError):
    """An operation was called from a thread that is not allowed to call it."""


class RecursiveSubmitError(RuntimeContractError):
    pass


class TaskFailedError(RuntimeError):
    """Raised by :meth:`Runtime.wait` when a task routine raised."""


class StartupError(RuntimeError):
    pass


@dataclass(frozen=True)
class RuntimeConfig:
    queue_capacity: int = DEFAULT_CAPACITY
    assistant_cpu: int | None = None
    auto_wake_on_submit: bool = True
    # False spins without yielding; under the GIL the peer then only runs at
    # interpreter switch-interval boundaries.
    spin_relax: bool = True

    def __post_init__(self):
        if not is_power_of_two(self.queue_capacity):
            raise ValueError(
                f"queue_capacity must be a power of two >= 1, got {self.queue_capacity!r}"
            )


class Runtime:
    """Handle returned by :func:`start`. See the module docstring."""

    def __init__(self, config: RuntimeConfig | None = None) -> None:
        self.config = config or RuntimeConfig()
        self.queue = SpscRing(self.config.queue_capacity)
        # submitted: written by main only. completed: written by assistant only.
        self.submitted = 0
        self.completed = 0
        self.sleep_requested = False
        self.running = False
        self.asleep = False
        self.main_thread_id: int | None = None
        self.assistant_thread_id: int | None = None
        self.assistant_affinity: set[int] | None = None
        self._wake = threading.Event()
        self._wake.set()
        self._stop = False
        self._errors: list[tuple[TaskDescriptor, BaseException]] = []
        self._thread: threading.Thread | None = None
        self._started = threading.Event()
        self._startup_exc: BaseException | None = None

    def __repr__(self) -> str:
        return (
            f"Runtime(running={self.running}, submitted={self.submitted}, "
            f"completed={self.completed}, sleep_requested={self.sleep_requested})"
        )

    def __enter__(self) -> "Runtime":
        return self

    def __exit__(self, *exc_info) -> None:
        self.shutdown()

    # -- lifecycle ------------------------------------------------------

    def _start(self) -> None:
        self.main_thread_id = threading.get_ident()
        self._thread = threading.Thread(
            target=self._assistant_entry, name="relic-assistant", daemon=True
        )
        self._thread.start()
        self._started.wait()
        if self._startup_exc is not None:
            self._thread.join()
            raise StartupError(f"assistant failed to start: {self._startup_exc}") from self._startup_exc
        self.running = True

    def shutdown(self) -> None:
        """Drain outstanding tasks, stop the assistant and join it. Idempotent."""
        if not self.running:
            return
        self._check_main("shutdown")
        self._stop = True
        self.sleep_requested = False
        self._wake.set()
        self._thread.join()
        self.running = False

    # -- producer side --------------------------------------------------

    def _check_main(self, what: str) -> None:
        me = threading.get_ident()
        if me == self.main_thread_id:
            return
        if me == self.assistant_thread_id:
            raise RecursiveSubmitError(
                f"{what}() called from inside a running task; recursive tasking is not supported"
            )
        raise RuntimeContractError(f"{what}() may only be called from the thread that started the runtime")

    def submit(self, routine: Callable[[Any], Any], arg: Any = None) -> None:
        """Queue ``routine(arg)`` for execution on the assistant thread.

        ``arg`` must stay valid until the next :meth:`wait` returns. Spins
        while the queue is full.
        """
        self._check_main("submit")
        if routine is None:
            raise ValueError("submit() needs a routine")
        if not self.running:
            raise RuntimeContractError("submit() on a runtime that is not running")
        if self.sleep_requested and self.config.auto_wake_on_submit:
            self.wake_up_hint()
        task = TaskDescriptor(routine, arg)
        push = self.queue.try_push
        if not push(task):
            relax = _relax if self.config.spin_relax else _no_relax
            while not push(task):
                relax()
        self.submitted += 1

    def wait(self) -> None:
        """Busy-wait until every submitted task has completed."""
        self._check_main("wait")
        submitted = self.submitted
        if self.completed != submitted:
            relax = _relax if self.config.spin_relax else _no_relax
            while self.completed != submitted:
                relax()
        if self._errors:
            errors, self._errors = self._errors, []
            task, exc = errors[0]
            raise TaskFailedError(
                f"{len(errors)} task(s) raised; first: {task.routine!r}: {exc!r}"
            ) from exc

    def sleep_hint(self) -> None:
        """Ask the assistant to suspend once the queue is empty."""
        self._check_main("sleep_hint")
        if self.sleep_requested:
            return
        self._wake.clear()
        self.sleep_requested = True

    def wake_up_hint(self) -> None:
        """Cancel a sleep request and signal a suspended assistant."""
        self._check_main("wake_up_hint")
        if not self.sleep_requested:
            return
        self.sleep_requested = False
        self._wake.set()

    @property
    def outstanding(self) -> int:
        return self.submitted - self.completed

    # -- consumer side --------------------------------------------------

    def _assistant_entry(self) -> None:
        self.assistant_thread_id = threading.get_ident()
        try:
            if self.config.assistant_cpu is not None:
                topology.pin_current_thread(self.config.assistant_cpu)
            self.assistant_affinity = topology.current_affinity()
        except BaseException as exc:
            self._startup_exc = exc
            self._started.set()
            return
        self._started.set()
        self._main_loop()

    def _main_loop(self) -> None:
        queue = self.queue
        read_available = queue.read_available
        front = queue.front
        pop = queue.pop
        relax = _relax if self.config.spin_relax else _no_relax
        wake = self._wake
        while True:
            if not read_available():
                if self._stop:
                    return
                if self.sleep_requested:
                    self.asleep = True
                    wake.wait()
                    self.asleep = False
                else:
                    relax()
                continue
            task = front()
            try:
                task.routine(task.arg)
            except BaseException as exc:  # surfaced to main by wait()
                self._errors.append((task, exc))
                log.debug("task %r raised %r", task.routine, exc)
            # Release the slot, then publish completion: wait() returning
            # implies both the routine's effects and an empty queue.
            pop()
            self.completed += 1


def _no_relax() -> None:
    pass


def start(config: RuntimeConfig | None = None) -> Runtime:
    """Spawn the assistant thread; the calling thread becomes the main thread."""
    rt = Runtime(config)
    rt._start()
    return rt
