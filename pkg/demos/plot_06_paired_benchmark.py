"""
Paired-instance timing
======================

Two identical instances of a kernel run either back to back on one thread
(serial) or split across two threads: the main thread runs B while the
other thread runs A. The helper is either the spinning assistant (relic)
or a worker that blocks on a condition variable (pool).
"""

from relic.bench import aggregate, make_task, measure, plan_placement
from relic.bench.protocol import pinned_main
from relic.bench.report import render_report

placement = plan_placement("auto")
print("placement:", placement)

records = []
with pinned_main(placement):
    for name in ("pr", "tc", "json"):
        task = make_task(name)
        task.prepare()
        for mode in ("serial", "relic", "pool"):
            records.append(measure(task, mode, iterations=5000, warmup=200, batch=500, placement=placement))

report = aggregate(records, clamp=False)
for r in report.records:
    print(f"{r.benchmark:5} {r.mode:7} {r.mean_ns / 1000:8.2f} us/pair  speedup {r.speedup:.2f}")
print("geomean speedup:", report.geomean_speedup)
print("clamped:", report.geomean_speedup_clamped)

#%%
# On a host with one logical CPU the two threads take turns, so a parallel
# speedup above 1.0 there is noise. The gap between relic and pool on the
# microsecond kernels still shows what suspension-based dispatch costs.

print(render_report(report, "csv"))
