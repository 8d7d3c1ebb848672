"""Command-line interface.

    tlsthermo simulate --config scenario.json --out run.csv [--plot]
    tlsthermo sweep --config scenario.json --param gamma_plus --from 0.01 --to 0.2 --steps 20 --out sweep.csv
    tlsthermo steady --config scenario.json [--out steady.csv]
    tlsthermo verify [--config scenario.json]

Exit codes: 0 ok, 1 validation error, 2 invariant failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import runs
from .errors import NoRelaxationError, ValidationError
from .scenario import SWEEP_PARAMS, ConfigError, SweepSpec, default_scenario, load_scenario
from .verify import run_checks

log = logging.getLogger("tlsthermo")

EXIT_OK, EXIT_INVALID, EXIT_INVARIANT = 0, 1, 2


def parse_args(argv=None):
    parser = argparse.ArgumentParser(prog="tlsthermo", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="time series of state and thermodynamic rates")
    p.add_argument("--config", required=True, type=Path)
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--plot", action="store_true", help="also write a gnuplot script next to the CSV")

    p = sub.add_parser("sweep", help="net variations as a function of one decay rate")
    p.add_argument("--config", required=True, type=Path)
    p.add_argument("--param", choices=SWEEP_PARAMS)
    p.add_argument("--from", dest="start", type=float)
    p.add_argument("--to", dest="stop", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--jobs", type=int, default=1, help="worker processes for sweep points")

    p = sub.add_parser("steady", help="closed-form steady-state record")
    p.add_argument("--config", required=True, type=Path)
    p.add_argument("--out", type=Path, help="optional CSV output")

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--config", type=Path)
    return parser.parse_args(argv)


def _sweep_spec(args, scenario) -> SweepSpec:
    base = scenario.sweep
    flags = {"param": "--param", "start": "--from", "stop": "--to", "steps": "--steps"}
    fields = {"param": args.param, "start": args.start, "stop": args.stop, "steps": args.steps}
    for key, value in list(fields.items()):
        if value is None:
            if base is None:
                raise ConfigError(f"sweep needs {flags[key]} or a 'sweep' block in the config")
            fields[key] = getattr(base, key)
    return SweepSpec(**fields)


def cmd_simulate(args) -> int:
    scenario = load_scenario(args.config)
    record = runs.simulate(scenario)
    args.out.write_text(record.to_csv())
    log.info("wrote %d rows to %s", len(record.times), args.out)
    if args.plot:
        script = args.out.with_suffix(".gp")
        script.write_text(runs.gnuplot_script(args.out.name))
        log.info("wrote plot script %s", script)
    return EXIT_OK


def cmd_sweep(args) -> int:
    scenario = load_scenario(args.config)
    spec = _sweep_spec(args, scenario)
    values = spec.values
    nets = runs.sweep(scenario, spec.param, values, jobs=args.jobs)
    args.out.write_text(runs.sweep_csv(spec.param, values, nets))
    log.info("wrote %d sweep rows to %s", len(values), args.out)
    return EXIT_OK


def cmd_steady(args) -> int:
    record = runs.steady_record(load_scenario(args.config))
    for key, value in record.items():
        print(f"{key} = {runs.format_value(value)}")
    if args.out:
        args.out.write_text(",".join(record) + "\n"
                            + ",".join(runs.format_value(v) for v in record.values()) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    scenario = load_scenario(args.config) if args.config else default_scenario()
    results = run_checks(scenario)
    for res in results:
        print(res.line())
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"{len(failed)} invariant(s) failed: {', '.join(failed)}")
        return EXIT_INVARIANT
    print(f"all {len(results)} invariants passed")
    return EXIT_OK


COMMANDS = {"simulate": cmd_simulate, "sweep": cmd_sweep, "steady": cmd_steady, "verify": cmd_verify}


def main(argv=None) -> int:
    args = parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (ValidationError, NoRelaxationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
