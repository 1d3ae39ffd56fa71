"""Command-line interface.

Subcommands:
  diagram      level diagram of a configured model (text table)
  paths        frequency-merged decay paths with weights (CSV)
  sweep        one-parameter sweep from a TOML config (CSV)
  repro        run a stock named experiment (CSV)
  populations  classical vs quantum population trajectories (CSV)

Common flags: --out sets the output file, --threads the worker count,
--tol-grid the photon-block convergence tolerance, --seed a reserved
reproducibility seed (the pipeline is deterministic and ignores it).
Default output directory comes from $CASCADESIM_OUTDIR, else the
current directory.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import experiments
from .spectrum import build_hamiltonian, diagonalize, level_diagram_record


def _out_path(args, default_name: str) -> Path:
    if args.out is not None:
        return Path(args.out)
    base = Path(os.environ.get("CASCADESIM_OUTDIR", "."))
    base.mkdir(parents=True, exist_ok=True)
    return base / default_name


def _add_common(p: argparse.ArgumentParser, needs_config: bool = True):
    if needs_config:
        p.add_argument("config", help="TOML model configuration file")
    p.add_argument("--out", help="output file path")
    p.add_argument("--threads", type=int, default=1,
                   help="worker processes for sweeps (default 1)")
    p.add_argument("--tol-grid", type=float, default=None,
                   help="photon-block grid convergence tolerance")
    p.add_argument("--seed", type=int, default=None,
                   help="reserved; results are deterministic")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cascadesim",
        description="Composite-emitter cascade simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diagram", help="print the level diagram")
    _add_common(p)
    p = sub.add_parser("paths", help="decay-path table")
    _add_common(p)
    p = sub.add_parser("sweep", help="run the sweep defined in the config")
    _add_common(p)
    p = sub.add_parser("repro", help="run a stock named experiment")
    p.add_argument("name", choices=experiments.NAMED_EXPERIMENTS)
    _add_common(p, needs_config=False)
    p = sub.add_parser("populations",
                       help="classical vs quantum population trajectories")
    _add_common(p)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except experiments.UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def _dispatch(args) -> int:
    if args.command == "repro":
        out = _out_path(args, f"{args.name}.csv")
        kwargs = {}
        if args.tol_grid is not None:
            kwargs["tol_grid"] = args.tol_grid
        if args.name == "populations_fig4":
            experiments.run_named_experiment(args.name, csv_path=out)
            print(f"wrote {out}")
            return 0
        rows = experiments.run_named_experiment(
            args.name, csv_path=out, threads=args.threads, **kwargs)
        return _report_rows(rows, out)

    model, sweep, options = experiments.load_config(args.config)
    if args.tol_grid is not None:
        options["tol_grid"] = args.tol_grid

    if args.command == "diagram":
        diagram = diagonalize(build_hamiltonian(model), model)
        text = level_diagram_record(diagram, model)
        if args.out is not None:
            Path(args.out).write_text(text + "\n")
            print(f"wrote {args.out}")
        else:
            print(text)
        return 0

    if args.command == "paths":
        out = _out_path(args, "paths.csv")
        experiments.path_table_csv(model, out)
        print(f"wrote {out}")
        return 0

    if args.command == "populations":
        out = _out_path(args, "populations.csv")
        experiments.population_comparison(model, out)
        print(f"wrote {out}")
        return 0

    if args.command == "sweep":
        if sweep is None:
            raise experiments.UsageError(
                "config has no [sweep] table; nothing to sweep")
        if args.tol_grid is not None:
            from dataclasses import replace
            sweep = replace(sweep, tol_grid=args.tol_grid)
        out = _out_path(args, "sweep.csv")
        rows = experiments.run_sweep(sweep, out, threads=args.threads)
        return _report_rows(rows, out)

    raise experiments.UsageError(f"unknown command {args.command!r}")


def _report_rows(rows, out) -> int:
    failed = [r for r in rows if r.error]
    print(f"wrote {out} ({len(rows)} rows, {len(failed)} failed)")
    for r in failed:
        print(f"  value={r.value:g}: {r.error}", file=sys.stderr)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
