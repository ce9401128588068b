"""
Finding a sibling pair
======================

Logical CPUs that share one physical core are read from sysfs.
"""

from relic import topology

topo = topology.discover_topology()
for core in topo.cores:
    print("core", core.core_id, "->", core.logical_cpus)

pair = topology.smt_sibling_pair(topo)
print("lowest SMT pair:", pair)
print("fallback pair on distinct cores:", topology.distinct_core_pair(topo))

#%%
# A synthetic six-core, two-way SMT machine, described by its
# thread_siblings_list strings.

fake = topology.CpuTopology.from_sibling_lists({c: f"{c % 6},{c % 6 + 6}" for c in range(12)})
print("cores:", [c.logical_cpus for c in fake.cores])
print("pair:", topology.smt_sibling_pair(fake))
print("0 and 6 share a core:", fake.same_core(0, 6))
