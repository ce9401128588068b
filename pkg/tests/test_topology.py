import threading

import pytest

from relic import topology
from relic.topology import CpuTopology, PhysicalCore, parse_cpu_list, smt_sibling_pair


def fake_sysfs(root, siblings: dict[int, str]):
    for cpu, text in siblings.items():
        d = root / f"cpu{cpu}" / "topology"
        d.mkdir(parents=True)
        (d / "thread_siblings_list").write_text(text + "\n")
    (root / "cpufreq").mkdir()
    return root


SIX_BY_TWO = {c: f"{c % 6},{c % 6 + 6}" for c in range(12)}


@pytest.mark.parametrize(
    "text, cpus",
    [
        ("0,6", [0, 6]),
        ("0-1", [0, 1]),
        ("0,2-3", [0, 2, 3]),
        ("7", [7]),
        (" 4-4\n", [4]),
        ("3,1,2", [1, 2, 3]),
    ],
)
def test_parse_cpu_list(text, cpus):
    assert parse_cpu_list(text) == cpus


@pytest.mark.parametrize("bad", ["", "a", "1-", "3-1", "1,,2"])
def test_parse_cpu_list_rejects(bad):
    with pytest.raises(ValueError):
        parse_cpu_list(bad)


def test_six_cores_two_threads(tmp_path):
    topo = topology.discover_topology(fake_sysfs(tmp_path, SIX_BY_TWO))
    assert len(topo.cores) == 6
    assert all(len(core.logical_cpus) == 2 for core in topo.cores)
    assert topo.logical_cpus == list(range(12))
    assert topo.cores[0].logical_cpus == (0, 6)


def test_discovery_is_pure(tmp_path):
    root = fake_sysfs(tmp_path, SIX_BY_TWO)
    assert topology.discover_topology(root) == topology.discover_topology(root)


def test_host_discovery_is_pure():
    assert topology.discover_topology() == topology.discover_topology()


def test_every_cpu_in_exactly_one_core():
    topo = topology.discover_topology()
    cpus = [c for core in topo.cores for c in core.logical_cpus]
    assert len(cpus) == len(set(cpus))
    assert all(list(core.logical_cpus) == sorted(core.logical_cpus) and core.logical_cpus for core in topo.cores)


def test_missing_source(tmp_path):
    with pytest.raises(topology.TopologyError) as info:
        topology.discover_topology(tmp_path / "nope")
    assert "nope" in str(info.value)


def test_inconsistent_source(tmp_path):
    with pytest.raises(topology.TopologyError):
        topology.discover_topology(fake_sysfs(tmp_path, {0: "0-1", 1: "1-2", 2: "1-2"}))


class TestSiblingPair:
    def test_single_core(self):
        assert smt_sibling_pair(CpuTopology((PhysicalCore(0, (0, 6)),))) == (0, 6)

    def test_no_smt(self):
        topo = CpuTopology.from_sibling_lists({0: "0", 1: "1"})
        assert smt_sibling_pair(topo) is None

    def test_lowest_pair_by_enumeration(self, tmp_path):
        topo = topology.discover_topology(fake_sysfs(tmp_path, SIX_BY_TWO))
        candidates = [
            (a, b)
            for core in topo.cores
            for a in core.logical_cpus
            for b in core.logical_cpus
            if a < b
        ]
        assert smt_sibling_pair(topo) == min(candidates) == (0, 6)

    def test_result_shares_a_core(self, tmp_path):
        topo = topology.discover_topology(fake_sysfs(tmp_path, {0: "0-3", 1: "0-3", 2: "0-3", 3: "0-3", 4: "4"}))
        a, b = smt_sibling_pair(topo)
        assert (a, b) == (0, 1)
        assert topo.same_core(a, b)

    def test_distinct_core_fallback(self):
        topo = CpuTopology.from_sibling_lists({0: "0", 1: "1", 2: "2"})
        assert topology.distinct_core_pair(topo) == (0, 1)
        assert topology.distinct_core_pair(CpuTopology.from_sibling_lists({0: "0"})) is None


def in_thread(fn):
    out = {}

    def run():
        try:
            out["value"] = fn()
        except BaseException as exc:
            out["error"] = exc

    t = threading.Thread(target=run)
    t.start()
    t.join()
    if "error" in out:
        raise out["error"]
    return out["value"]


class TestPinning:
    def test_pin_and_read_back(self, monkeypatch):
        monkeypatch.delenv(topology.NO_PIN_ENV, raising=False)
        cpu = topology.discover_topology().logical_cpus[0]

        def pin():
            assert topology.pin_current_thread(cpu) is True
            return topology.current_affinity()

        assert in_thread(pin) == {cpu}

    def test_pin_only_affects_caller(self, monkeypatch):
        monkeypatch.delenv(topology.NO_PIN_ENV, raising=False)
        before = topology.current_affinity()
        in_thread(lambda: topology.pin_current_thread(topology.discover_topology().logical_cpus[0]))
        assert topology.current_affinity() == before

    def test_nonexistent_cpu(self, monkeypatch):
        monkeypatch.delenv(topology.NO_PIN_ENV, raising=False)
        with pytest.raises(topology.PinningError):
            in_thread(lambda: topology.pin_current_thread(999))

    def test_negative_cpu(self, monkeypatch):
        monkeypatch.delenv(topology.NO_PIN_ENV, raising=False)
        with pytest.raises(topology.PinningError):
            topology.pin_current_thread(-1)

    def test_no_pin_env(self, monkeypatch):
        monkeypatch.setenv(topology.NO_PIN_ENV, "1")
        before = topology.current_affinity()
        assert topology.pin_current_thread(999) is False
        assert topology.current_affinity() == before

    def test_main_and_assistant_on_one_core(self, monkeypatch):
        monkeypatch.delenv(topology.NO_PIN_ENV, raising=False)
        topo = topology.discover_topology()
        pair = topology.smt_sibling_pair(topo)
        if pair is None:
            pytest.skip("host has no SMT sibling pair")
        from relic.runtime import RuntimeConfig, start

        def scenario():
            topology.pin_current_thread(pair[0])
            with start(RuntimeConfig(assistant_cpu=pair[1])) as rt:
                return topology.current_affinity(), rt.assistant_affinity

        main_aff, helper_aff = in_thread(scenario)
        assert main_aff == {pair[0]} and helper_aff == {pair[1]}
        assert pair[0] != pair[1] and topo.same_core(*pair)
