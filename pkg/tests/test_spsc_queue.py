import os
import random
import threading
from collections import deque

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relic.spsc_queue import SpscRing, TaskDescriptor


def noop(arg):
    return arg


def td(i):
    return TaskDescriptor(noop, i)


class TestConstruction:
    def test_capacity_128(self):
        ring = SpscRing(128)
        assert ring.capacity == 128
        assert ring.read_available() == 0
        assert ring.write_available() == 128

    def test_default_capacity_is_128(self):
        assert SpscRing().capacity == 128

    def test_single_slot(self):
        ring = SpscRing(1)
        assert ring.read_available() == 0
        assert ring.write_available() == 1

    @pytest.mark.parametrize("bad", [0, -4, 3, 100, 129, 2.0, "8"])
    def test_rejects_non_power_of_two(self, bad):
        with pytest.raises(ValueError):
            SpscRing(bad)


class TestPushPop:
    def test_push_onto_empty(self):
        ring = SpscRing(4)
        assert ring.try_push(td(0)) is True
        assert ring.read_available() == 1

    def test_full_at_128(self):
        ring = SpscRing(128)
        assert all(ring.try_push(td(i)) for i in range(128))
        assert ring.try_push(td(128)) is False
        assert ring.read_available() == 128
        # a failed push changes nothing
        assert ring.tail == 128 and ring.head == 0

    def test_wraparound_single_slot(self):
        ring = SpscRing(1)
        assert ring.try_push(td("a"))
        ring.pop()
        assert ring.try_push(td("b"))
        assert ring.front().arg == "b"

    def test_counts_after_three_pushes_one_pop(self):
        ring = SpscRing(8)
        for i in range(3):
            ring.try_push(td(i))
        ring.pop()
        assert ring.read_available() == 2

    def test_front_is_idempotent(self):
        ring = SpscRing(4)
        a, b = td("A"), td("B")
        ring.try_push(a)
        ring.try_push(b)
        assert ring.front() is a
        assert ring.front() is a

    def test_fifo(self):
        ring = SpscRing(4)
        a, b = td("A"), td("B")
        ring.try_push(a)
        ring.try_push(b)
        ring.pop()
        assert ring.front() is b

    def test_pop_to_empty(self):
        ring = SpscRing(4)
        ring.try_push(td("A"))
        ring.pop()
        assert ring.read_available() == 0

    def test_empty_front_and_pop_are_errors(self):
        ring = SpscRing(2)
        with pytest.raises(IndexError):
            ring.front()
        with pytest.raises(IndexError):
            ring.pop()

    def test_pop_releases_argument_reference(self):
        ring = SpscRing(2)
        ring.try_push(td(object()))
        ring.pop()
        assert ring._slots == [None, None]


ops = st.lists(st.sampled_from(["push", "pop", "front"]), max_size=400)


@settings(max_examples=200, deadline=None)
@given(ops, st.sampled_from([1, 2, 4, 8, 128]))
def test_matches_sequential_reference_queue(seq, capacity):
    ring = SpscRing(capacity)
    ref: deque = deque()
    counter = 0
    for op in seq:
        if op == "push":
            ok = ring.try_push(td(counter))
            assert ok == (len(ref) < capacity)
            if ok:
                ref.append(counter)
            counter += 1
        elif ref:
            if op == "pop":
                ring.pop()
                ref.popleft()
            else:
                assert ring.front().arg == ref[0]
        assert ring.read_available() == len(ref)
        assert 0 <= ring.tail - ring.head <= capacity


def _two_thread_transfer(n, capacity, seed):
    """Push 0..n-1 from a producer thread, pop on this thread; returns popped args."""
    ring = SpscRing(capacity)
    rng = random.Random(seed)
    bursts = [rng.randint(1, 2 * capacity) for _ in range(64)]

    def producer():
        prng = random.Random(seed + 1)
        i = 0
        while i < n:
            for _ in range(bursts[i % 64]):
                if i >= n:
                    break
                while not ring.try_push(TaskDescriptor(noop, (i, -i))):
                    os.sched_yield()
                i += 1
            if prng.random() < 0.3:
                os.sched_yield()

    t = threading.Thread(target=producer)
    t.start()
    got = []
    while len(got) < n:
        if not ring.read_available():
            os.sched_yield()
            continue
        for _ in range(rng.randint(1, ring.read_available())):
            task = ring.front()
            assert task.routine is noop
            got.append(task.arg)
            ring.pop()
    t.join()
    return got


def test_two_thread_fifo_small():
    n = 20_000
    got = _two_thread_transfer(n, 8, seed=1)
    assert got == [(i, -i) for i in range(n)]
