import threading
import time

import pytest

from relic import topology
from relic.runtime import (
    RecursiveSubmitError,
    RuntimeConfig,
    RuntimeContractError,
    StartupError,
    TaskFailedError,
    start,
)
from relic.spsc_queue import TaskDescriptor


@pytest.fixture
def rt():
    runtime = start()
    yield runtime
    runtime.shutdown()


def increment(box):
    box[0] += 1


def wait_until(pred, timeout=5.0):
    deadline = time.monotonic() + timeout
    while not pred():
        if time.monotonic() > deadline:
            return False
        time.sleep(0.001)
    return True


class TestStart:
    def test_fresh_counters(self, rt):
        assert rt.running
        assert rt.submitted == rt.completed == 0
        assert rt.queue.capacity == 128

    def test_bad_capacity(self):
        with pytest.raises(ValueError):
            start(RuntimeConfig(queue_capacity=100))

    def test_pinned_assistant(self, monkeypatch):
        monkeypatch.delenv(topology.NO_PIN_ENV, raising=False)
        topo = topology.discover_topology()
        pair = topology.smt_sibling_pair(topo)
        cpu = pair[1] if pair else topo.logical_cpus[0]
        with start(RuntimeConfig(assistant_cpu=cpu)) as runtime:
            assert runtime.assistant_affinity == {cpu}
            if pair:
                assert topo.same_core(pair[0], runtime.assistant_affinity.pop())

    def test_invalid_cpu_fails_startup_without_leaking_a_thread(self, monkeypatch):
        monkeypatch.delenv(topology.NO_PIN_ENV, raising=False)
        before = threading.active_count()
        with pytest.raises(StartupError):
            start(RuntimeConfig(assistant_cpu=999))
        assert threading.active_count() == before

    def test_no_pin_env_skips_pinning(self, monkeypatch):
        monkeypatch.setenv(topology.NO_PIN_ENV, "1")
        with start(RuntimeConfig(assistant_cpu=999)) as runtime:
            assert runtime.running


class TestSubmitWait:
    def test_single_task(self, rt):
        counter = [0]
        rt.submit(increment, counter)
        rt.wait()
        assert counter == [1]
        assert rt.submitted == rt.completed == 1

    def test_order_preserved_beyond_capacity(self, rt):
        seen = []
        for i in range(1000):
            rt.submit(seen.append, i)
        rt.wait()
        assert seen == list(range(1000))

    def test_wait_with_nothing_submitted(self, rt):
        rt.wait()
        assert rt.completed == 0

    def test_visibility_after_wait(self, rt):
        x = {}
        rt.submit(lambda d: d.__setitem__("x", 42), x)
        rt.wait()
        assert x["x"] == 42

    def test_interleaved_waits_every_flag_once(self, rt):
        n = 10_000
        flags = [0] * n

        def mark(i):
            flags[i] += 1

        for i in range(n):
            rt.submit(mark, i)
            if i % 100 == 99:
                rt.wait()
                assert rt.queue.read_available() == 0
        rt.wait()
        assert flags == [1] * n

    def test_tasks_run_on_assistant_only(self, rt):
        where = []
        for _ in range(50):
            rt.submit(lambda _: where.append(threading.get_ident()))
        rt.wait()
        assert set(where) == {rt.assistant_thread_id}
        assert rt.assistant_thread_id != threading.get_ident()

    def test_tasks_do_not_overlap(self, rt):
        marks = []

        def task(tag):
            marks.append(("start", tag))
            time.sleep(0.001)
            marks.append(("end", tag))

        rt.submit(task, "A")
        rt.submit(task, "B")
        rt.wait()
        assert marks == [("start", "A"), ("end", "A"), ("start", "B"), ("end", "B")]

    def test_counters_bounded(self, rt):
        gate = threading.Event()
        rt.submit(lambda _: gate.wait())
        # the running task keeps its slot until it returns
        for _ in range(rt.queue.capacity - 1):
            rt.submit(lambda _: None)
        assert rt.completed <= rt.submitted
        assert rt.submitted - rt.completed == rt.queue.capacity
        assert rt.queue.try_push(TaskDescriptor(print)) is False
        gate.set()
        rt.wait()

    def test_null_routine(self, rt):
        with pytest.raises(ValueError):
            rt.submit(None)

    def test_recursive_submit_is_reported(self, rt):
        rt.submit(lambda _: rt.submit(increment, [0]))
        with pytest.raises(TaskFailedError) as info:
            rt.wait()
        assert isinstance(info.value.__cause__, RecursiveSubmitError)
        assert "recursive" in str(info.value.__cause__)
        # the runtime keeps working afterwards
        box = [0]
        rt.submit(increment, box)
        rt.wait()
        assert box == [1]

    def test_foreign_thread_rejected(self, rt):
        errors = []

        def intruder():
            for call in (lambda: rt.submit(increment, [0]), rt.wait, rt.sleep_hint, rt.wake_up_hint):
                try:
                    call()
                except RuntimeContractError as exc:
                    errors.append(exc)

        t = threading.Thread(target=intruder)
        t.start()
        t.join()
        assert len(errors) == 4
        assert not any(isinstance(e, RecursiveSubmitError) for e in errors)

    def test_task_exception_surfaces_in_wait(self, rt):
        def boom(_):
            raise KeyError("x")

        rt.submit(boom)
        with pytest.raises(TaskFailedError):
            rt.wait()
        assert rt.completed == rt.submitted

    def test_without_relax_hint(self):
        with start(RuntimeConfig(spin_relax=False)) as runtime:
            box = [0]
            for _ in range(5):
                runtime.submit(increment, box)
            runtime.wait()
            assert box == [5]

    def test_small_queue_spins_until_space(self):
        with start(RuntimeConfig(queue_capacity=1)) as runtime:
            seen = []
            for i in range(200):
                runtime.submit(seen.append, i)
            runtime.wait()
            assert seen == list(range(200))


class TestHints:
    def test_sleep_releases_cpu(self, rt):
        rt.sleep_hint()
        assert wait_until(lambda: rt.asleep)

    def test_auto_wake_on_submit(self, rt):
        rt.sleep_hint()
        assert wait_until(lambda: rt.asleep)
        box = [0]
        rt.submit(increment, box)
        rt.wait()
        assert box == [1]
        assert not rt.sleep_requested

    def test_sleep_hint_idempotent(self, rt):
        rt.sleep_hint()
        rt.sleep_hint()
        assert rt.sleep_requested
        assert wait_until(lambda: rt.asleep)
        rt.wake_up_hint()
        assert wait_until(lambda: not rt.asleep)

    def test_wake_on_awake_runtime_is_noop(self, rt):
        rt.wake_up_hint()
        assert not rt.sleep_requested
        assert rt._wake.is_set()

    def test_explicit_wake_in_strict_mode(self):
        with start(RuntimeConfig(auto_wake_on_submit=False)) as runtime:
            runtime.sleep_hint()
            assert wait_until(lambda: runtime.asleep)
            runtime.wake_up_hint()
            box = [0]
            runtime.submit(increment, box)
            runtime.wait()
            assert box == [1]

    def test_strict_mode_does_not_wake_on_submit(self):
        with start(RuntimeConfig(auto_wake_on_submit=False)) as runtime:
            runtime.sleep_hint()
            assert wait_until(lambda: runtime.asleep)
            box = [0]
            runtime.submit(increment, box)
            time.sleep(0.05)
            assert box == [0]
            runtime.wake_up_hint()
            runtime.wait()
            assert box == [1]

    def test_alternating_sleep_wake(self, rt):
        n = 10_000
        counts = [0] * n

        def mark(i):
            counts[i] += 1

        for i in range(n):
            rt.sleep_hint()
            rt.wake_up_hint()
            rt.submit(mark, i)
        rt.wait()
        assert counts == [1] * n


class TestShutdown:
    def test_clean_join(self):
        runtime = start()
        thread = runtime._thread
        runtime.shutdown()
        assert not thread.is_alive()
        assert runtime.completed == 0
        assert not runtime.running

    def test_drains_outstanding(self):
        runtime = start()
        flag = []
        runtime.submit(flag.append, 1)
        runtime.shutdown()
        assert flag == [1]

    def test_double_shutdown(self):
        runtime = start()
        runtime.shutdown()
        runtime.shutdown()

    def test_shutdown_while_asleep(self):
        runtime = start()
        runtime.sleep_hint()
        assert wait_until(lambda: runtime.asleep)
        runtime.shutdown()
        assert not runtime._thread.is_alive()

    def test_submit_after_shutdown(self):
        runtime = start()
        runtime.shutdown()
        with pytest.raises(RuntimeContractError):
            runtime.submit(increment, [0])

    def test_independent_instances(self):
        results = {}

        def pair(tag):
            with start() as runtime:
                box = [0]
                for _ in range(1000):
                    runtime.submit(increment, box)
                runtime.wait()
                results[tag] = box[0]

        threads = [threading.Thread(target=pair, args=(i,)) for i in range(2)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert results == {0: 1000, 1: 1000}
