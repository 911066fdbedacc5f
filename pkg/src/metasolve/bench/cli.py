"""Benchmark command line.

Three subcommands: ``generate`` writes the instance suite, ``run`` executes
a pipeline over it (embedded by default, or against a running server via
--api), ``report`` turns a results CSV into an aligned summary table.

Exit codes: 0 success, 1 when any run is invalid, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from metasolve.bench import pipeline as pipeline_mod
from metasolve.bench import report as report_mod
from metasolve.bench import suite as suite_mod

USAGE_ERROR = 2
INVALID_RUNS = 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bench", description="Routing benchmark harness"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    generate = commands.add_parser("generate", help="write the instance suite")
    generate.add_argument("--seed", type=int, default=42)
    generate.add_argument("--out", required=True, help="output directory")

    run = commands.add_parser("run", help="run a pipeline over a suite")
    run.add_argument("--suite", required=True, help="directory of .vrp files")
    run.add_argument("--pipeline", choices=pipeline_mod.PIPELINES, required=True)
    run.add_argument("--runs", type=int, default=10)
    run.add_argument("--seed", type=int, default=42)
    run.add_argument("--out", required=True, help="results CSV path")
    run.add_argument("--api", help="server base URL; omitted runs embedded")
    run.add_argument(
        "--embedded", action="store_true", help="force in-process execution"
    )
    run.add_argument(
        "--tsp-solver", choices=sorted(pipeline_mod.TSP_SOLVERS), default="exact"
    )
    run.add_argument(
        "--parallel", action="store_true", help="run instances concurrently"
    )

    rep = commands.add_parser("report", help="summarize a results CSV")
    rep.add_argument("--in", dest="input", required=True, help="results CSV path")
    rep.add_argument("--out", required=True, help="summary text path")
    return parser


def cmd_generate(args) -> int:
    instances = suite_mod.generate_suite(args.seed)
    paths = suite_mod.write_suite(instances, args.out)
    print(f"wrote {len(paths)} instances to {args.out}")
    return 0


def cmd_run(args) -> int:
    if args.api and args.embedded:
        print("error: --api and --embedded are mutually exclusive", file=sys.stderr)
        return USAGE_ERROR
    instances = suite_mod.load_suite(args.suite)

    driver = None
    manager = None
    try:
        if args.api:
            driver = pipeline_mod.HttpDriver(args.api)
        else:
            from metasolve.catalog import build_default_manager

            manager = build_default_manager()
            driver = pipeline_mod.EmbeddedDriver(manager)

        def run_one(indexed):
            index, instance = indexed
            return pipeline_mod.run_pipeline(
                instance,
                args.pipeline,
                runs=args.runs,
                master_seed=args.seed,
                driver=driver,
                instance_index=index,
                tsp_solver=args.tsp_solver,
            )

        if args.parallel:
            with ThreadPoolExecutor(max_workers=4) as pool:
                grouped = list(pool.map(run_one, enumerate(instances)))
        else:
            grouped = [run_one(item) for item in enumerate(instances)]
    finally:
        if manager is not None:
            manager.close()
        if args.api and driver is not None:
            driver.close()

    runs = [run for group in grouped for run in group]
    report_mod.write_csv(runs, args.out)
    baselines = {
        instance.name: pipeline_mod.compute_baselines(instance)
        for instance in instances
    }
    report_mod.write_baselines(baselines, report_mod.baselines_path_for(args.out))

    invalid = [run for run in runs if not run.valid]
    print(
        f"{len(runs)} runs, {len(runs) - len(invalid)} valid, "
        f"results in {args.out}"
    )
    if invalid:
        for run in invalid[:10]:
            print(
                f"invalid: {run.instance_name} {run.pipeline} run {run.run_index}",
                file=sys.stderr,
            )
        return INVALID_RUNS
    return 0


def cmd_report(args) -> int:
    csv_path = Path(args.input)
    runs = report_mod.read_csv(csv_path)
    sidecar = report_mod.baselines_path_for(csv_path)
    baselines = report_mod.read_baselines(sidecar) if sidecar.exists() else {}
    report_mod.write_summary(runs, baselines, args.out)
    print(f"summary written to {args.out}")
    if any(not run.valid for run in runs):
        return INVALID_RUNS
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return USAGE_ERROR if exc.code not in (0, None) else 0
    handlers = {"generate": cmd_generate, "run": cmd_run, "report": cmd_report}
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
