"""``bench`` command line: run, topology, validate."""

from __future__ import annotations

import argparse
import logging
import sys

from relic import topology
from relic.bench.protocol import (
    DEFAULT_BATCH,
    DEFAULT_ITERATIONS,
    DEFAULT_WARMUP,
    Placement,
    measure,
    open_executor,
    pinned_main,
    plan_placement,
    soak,
)
from relic.bench.report import MODES, aggregate, emit_report, report_meta
from relic.bench.tasks import DEFAULT_SEED, TASK_NAMES, ValidationError, make_task
from relic.runtime import StartupError

log = logging.getLogger("relic.bench")


def _pin_arg(text: str):
    if text in ("auto", "none"):
        return text
    try:
        main_cpu, helper_cpu = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"--pin expects auto, none or CPU,CPU; got {text!r}") from None
    return (main_cpu, helper_cpu)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bench", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="time paired kernel executions")
    run.add_argument("--kernel", choices=TASK_NAMES + ("all",), default="all")
    run.add_argument("--mode", choices=MODES + ("all",), default="all")
    run.add_argument("--iterations", type=int, default=DEFAULT_ITERATIONS)
    run.add_argument("--warmup", type=int, default=DEFAULT_WARMUP)
    run.add_argument("--batch", type=int, default=DEFAULT_BATCH)
    run.add_argument("--seed", type=int, default=DEFAULT_SEED)
    run.add_argument("--bc-source", type=int, default=0)
    run.add_argument("--pin", type=_pin_arg, default="auto", help="auto, none, or MAIN_CPU,HELPER_CPU")
    run.add_argument("--clamp-outliers", action="store_true")
    run.add_argument("--output", default="-")
    run.add_argument("--format", choices=("json", "csv"), default="json")

    sub.add_parser("topology", help="print the core/sibling map")

    val = sub.add_parser("validate", help="run every correctness oracle without timing")
    val.add_argument("--seed", type=int, default=DEFAULT_SEED)
    val.add_argument("--iterations", type=int, default=1000, help="paired soak length per benchmark and mode")
    return parser


def cmd_topology(args) -> int:
    topo = topology.discover_topology()
    for core in topo.cores:
        print(f"core {core.core_id}: cpus {','.join(map(str, core.logical_cpus))}")
    pair = topology.smt_sibling_pair(topo)
    print(f"smt sibling pair: {'%d,%d' % pair if pair else 'none'}")
    return 0


def cmd_run(args) -> int:
    kernels = TASK_NAMES if args.kernel == "all" else (args.kernel,)
    modes = MODES if args.mode == "all" else tuple(dict.fromkeys(("serial", args.mode)))
    placement = plan_placement(args.pin)
    log.info("placement: %s", placement)
    tasks = {name: make_task(name, seed=args.seed, bc_source=args.bc_source) for name in kernels}
    for task in tasks.values():
        task.prepare()

    records = []
    try:
        with pinned_main(placement):
            for mode in modes:
                executor = None if mode == "serial" else open_executor(mode, placement)
                try:
                    for name, task in tasks.items():
                        log.info("measuring %s/%s", name, mode)
                        records.append(
                            measure(
                                task,
                                mode,
                                iterations=args.iterations,
                                warmup=args.warmup,
                                batch=args.batch,
                                seed=args.seed,
                                executor=executor,
                                placement=placement,
                            )
                        )
                finally:
                    if executor is not None:
                        executor.shutdown()
    except ValidationError as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return 1

    report = aggregate(records, clamp=args.clamp_outliers)
    report.meta = report_meta(
        args.seed,
        placement={"pinned_cpus": placement.pinned_cpus, "smt": placement.smt},
        tasks={name: task.info for name, task in tasks.items()},
    )
    emit_report(report, args.format, args.output)
    return 0


def cmd_validate(args) -> int:
    from relic.json_kernel import parse, widget_document
    from relic.json_kernel.conformance import CORPUS, run_corpus
    from relic.oracles import kernel_oracle_suite

    failed = False

    def status(ok: bool, what: str) -> None:
        nonlocal failed
        failed |= not ok
        print(f"[{'PASS' if ok else 'FAIL'}] {what}")

    fails = kernel_oracle_suite(seed=args.seed)
    for f in fails[:10]:
        print(f"    {f}")
    status(not fails, "graph kernels match brute-force oracles")

    mismatches = run_corpus()
    for case, got in mismatches:
        print(f"    {case.note}: expected {'accept' if case.accept else 'reject'}, got {'accept' if got else 'reject'}")
    status(not mismatches, f"JSON conformance corpus ({len(CORPUS)} cases)")
    status(parse(widget_document()).keys() == ["widget"], "widget sample parses with root key 'widget'")

    for name in TASK_NAMES:
        task = make_task(name, seed=args.seed)
        task.prepare()
        for mode in ("serial", "relic", "pool"):
            res = soak(task, mode, iterations=args.iterations, placement=Placement())
            status(res.failures == 0, f"{name}/{mode}: {res.iterations} paired runs equal serial reference")
    return 1 if failed else 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    handler = {"run": cmd_run, "topology": cmd_topology, "validate": cmd_validate}[args.command]
    try:
        return handler(args)
    except (OSError, StartupError) as exc:
        print(f"bench: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
