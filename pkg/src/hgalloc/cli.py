"""Command-line entry point.

Subcommands: simulate (one config, capacity + op counts), sweep (vary one
parameter), cdf (per-UE throughput samples), oracle-compare (small instances
against the exhaustive optimum).  All outputs are CSV files in --out.
"""

import argparse
import os
import sys
from dataclasses import replace

from .harness import (ALGORITHMS, SWEEP_PARAMS, SweepSpec, op_count_scaling,
                      run_sweep, run_trials, write_capacity_csv, write_cdf_csv,
                      write_opcounts_csv)
from .scenario import SimConfig


def _parse_algos(text):
    algos = tuple(a.strip() for a in text.split(",") if a.strip())
    bad = set(algos) - set(ALGORITHMS)
    if bad:
        raise SystemExit(f"unknown algorithms: {sorted(bad)} "
                         f"(choose from {','.join(ALGORITHMS)})")
    if not algos:
        raise SystemExit("no algorithms given")
    return algos


def _parse_values(text, param):
    vals = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        vals.append(float(tok) if param == "eta_db" else int(tok))
    if not vals:
        raise SystemExit("no sweep values given")
    return vals


def _load_config(args):
    config = SimConfig.from_json(args.config) if args.config else SimConfig()
    if getattr(args, "seed", None) is not None:
        config = replace(config, master_seed=args.seed)
    return config


def _outdir(args):
    os.makedirs(args.out, exist_ok=True)
    return args.out


def _cmd_simulate(args):
    config = _load_config(args)
    algos = _parse_algos(args.algos)
    result = run_trials(config, algos)
    out = _outdir(args)
    write_capacity_csv(os.path.join(out, "capacity.csv"), result)
    rows = op_count_scaling([config]) if set(algos) & {"graph", "hypergraph"} else []
    if rows:
        write_opcounts_csv(os.path.join(out, "opcounts.csv"), rows)
    print(f"wrote {out}/capacity.csv" + (" and opcounts.csv" if rows else ""))


def _cmd_sweep(args):
    config = _load_config(args)
    spec = SweepSpec(
        swept_parameter=args.param,
        values=_parse_values(args.values, args.param),
        base_config=config,
        algorithms=_parse_algos(args.algos),
    )
    grid = run_sweep(spec)
    out = _outdir(args)
    write_capacity_csv(os.path.join(out, "capacity.csv"), grid)
    print(f"wrote {out}/capacity.csv")


def _cmd_cdf(args):
    config = _load_config(args)
    algos = _parse_algos(args.algos)
    result = run_trials(config, algos)
    out = _outdir(args)
    write_cdf_csv(os.path.join(out, "cdf.csv"), result)
    print(f"wrote {out}/cdf.csv")


def _cmd_oracle_compare(args):
    config = _load_config(args)
    result = run_trials(config, ("graph", "hypergraph", "optimal"))
    out = _outdir(args)
    write_capacity_csv(os.path.join(out, "capacity.csv"), result)
    print(f"wrote {out}/capacity.csv")


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="hgalloc",
        description="Channel allocation simulator for D2D underlay cells")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, algos=True):
        p.add_argument("--config", help="JSON config file (defaults if omitted)")
        p.add_argument("--seed", type=int, help="override master_seed")
        p.add_argument("--out", required=True, help="output directory")
        if algos:
            p.add_argument("--algos", default="graph,hypergraph",
                           help="comma list from: " + ",".join(ALGORITHMS))

    p = sub.add_parser("simulate", help="run one configuration")
    common(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("sweep", help="vary one parameter")
    common(p)
    p.add_argument("--param", required=True, choices=sorted(SWEEP_PARAMS))
    p.add_argument("--values", required=True, help="comma list of values")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("cdf", help="emit per-UE throughput samples")
    common(p)
    p.set_defaults(func=_cmd_cdf)

    p = sub.add_parser("oracle-compare",
                       help="compare against the exhaustive optimum (small N+M)")
    common(p, algos=False)
    p.set_defaults(func=_cmd_oracle_compare)

    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
