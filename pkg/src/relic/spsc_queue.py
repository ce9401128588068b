"""Bounded single-producer single-consumer ring buffer.

A Lamport-style ring: the producer owns ``tail``, the consumer owns ``head``,
and each side keeps a stale copy of the other side's counter which it only
refreshes when the ring looks full (producer) or empty (consumer).

Correctness relies on each counter having exactly one writer and on the slot
store being ordered before the publishing counter store. Under CPython every
attribute load/store is atomic and program-ordered with respect to other
threads, which gives the acquire/release pairing the algorithm needs.
"""

from __future__ import annotations

from typing import Any, Callable, NamedTuple

DEFAULT_CAPACITY = 128


class TaskDescriptor(NamedTuple):
    """A routine and the opaque argument it is invoked with."""

    routine: Callable[[Any], Any]
    arg: Any = None


def is_power_of_two(value: int) -> bool:
    return isinstance(value, int) and value >= 1 and (value & (value - 1)) == 0


class SpscRing:
    """Fixed-capacity lock-free FIFO for exactly one producer and one consumer.

    ``try_push`` may only be called from the producer thread; ``read_available``,
    ``front`` and ``pop`` only from the consumer thread.

    >>> ring = SpscRing(4)
    >>> ring.try_push(TaskDescriptor(print, "a"))
    True
    >>> ring.read_available()
    1
    """

    __slots__ = (
        "capacity",
        "_mask",
        "_slots",
        "_head",
        "_tail",
        "_head_cache",
        "_tail_cache",
    )

    def __init__(self, capacity: int = DEFAULT_CAPACITY) -> None:
        if not is_power_of_two(capacity):
            raise ValueError(f"ring capacity must be a power of two >= 1, got {capacity!r}")
        self.capacity = capacity
        self._mask = capacity - 1
        self._slots: list[TaskDescriptor | None] = [None] * capacity
        # Consumer-owned.
        self._head = 0
        self._tail_cache = 0
        # Producer-owned.
        self._tail = 0
        self._head_cache = 0

    def __repr__(self) -> str:
        return f"SpscRing(capacity={self.capacity}, head={self._head}, tail={self._tail})"

    @property
    def head(self) -> int:
        return self._head

    @property
    def tail(self) -> int:
        return self._tail

    # -- producer side --------------------------------------------------

    def try_push(self, task: TaskDescriptor) -> bool:
        """Store ``task`` if there is room; never blocks."""
        tail = self._tail
        if tail - self._head_cache >= self.capacity:
            self._head_cache = self._head
            if tail - self._head_cache >= self.capacity:
                return False
        self._slots[tail & self._mask] = task
        # Publish after the slot write.
        self._tail = tail + 1
        return True

    def write_available(self) -> int:
        """Free slots as seen by the producer."""
        self._head_cache = self._head
        return self.capacity - (self._tail - self._head_cache)

    # -- consumer side --------------------------------------------------

    def read_available(self) -> int:
        tail = self._tail
        self._tail_cache = tail
        return tail - self._head

    def front(self) -> TaskDescriptor:
        """Return the oldest descriptor without removing it."""
        head = self._head
        if head == self._tail_cache:
            self._tail_cache = self._tail
            if head == self._tail_cache:
                raise IndexError("front() on an empty SpscRing")
        return self._slots[head & self._mask]  # type: ignore[return-value]

    def pop(self) -> None:
        head = self._head
        if head == self._tail_cache:
            self._tail_cache = self._tail
            if head == self._tail_cache:
                raise IndexError("pop() on an empty SpscRing")
        # Drop the reference so argument lifetimes are not extended by the ring.
        self._slots[head & self._mask] = None
        self._head = head + 1
