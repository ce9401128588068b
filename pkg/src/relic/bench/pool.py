"""Suspension-based comparator: one worker fed through a lock-protected deque.

Both sides block on a condition variable instead of spinning, which is how
general-purpose pools usually park idle workers.
"""

from __future__ import annotations

import threading
from collections import deque
from typing import Any, Callable

from relic import topology


class ComparatorPool:
    def __init__(self, worker_cpu: int | None = None) -> None:
        self.worker_cpu = worker_cpu
        self.worker_affinity: set[int] | None = None
        self._cond = threading.Condition()
        self._tasks: deque = deque()
        self._submitted = 0
        self._completed = 0
        self._stop = False
        self._error: BaseException | None = None
        self._ready = threading.Event()
        self._thread = threading.Thread(target=self._worker, name="comparator-worker", daemon=True)
        self._thread.start()
        self._ready.wait()
        if self._error is not None:
            self._thread.join()
            raise self._error

    def __enter__(self) -> "ComparatorPool":
        return self

    def __exit__(self, *exc_info) -> None:
        self.shutdown()

    def submit(self, routine: Callable[[Any], Any], arg: Any = None) -> None:
        with self._cond:
            self._tasks.append((routine, arg))
            self._submitted += 1
            self._cond.notify_all()

    def wait(self) -> None:
        with self._cond:
            while self._completed != self._submitted:
                self._cond.wait()
            if self._error is not None:
                err, self._error = self._error, None
                raise RuntimeError(f"comparator task raised: {err!r}") from err

    def shutdown(self) -> None:
        if not self._thread.is_alive():
            return
        with self._cond:
            self._stop = True
            self._cond.notify_all()
        self._thread.join()

    def _worker(self) -> None:
        try:
            if self.worker_cpu is not None:
                topology.pin_current_thread(self.worker_cpu)
            self.worker_affinity = topology.current_affinity()
        except BaseException as exc:
            self._error = exc
            self._ready.set()
            return
        self._ready.set()
        cond = self._cond
        tasks = self._tasks
        while True:
            with cond:
                while not tasks and not self._stop:
                    cond.wait()
                if not tasks:
                    return
                routine, arg = tasks.popleft()
            try:
                routine(arg)
            except BaseException as exc:
                self._error = exc
            with cond:
                self._completed += 1
                cond.notify_all()
