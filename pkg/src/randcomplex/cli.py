"""Command-line entry point.

Exit status: 0 success (or trivial / no quotient), 10 non-trivial class or
quotient found, 2 usage error, 3 infeasible (search budget or size cap),
1 any other failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .cochain import DEFAULT_GAUGE_BUDGET, write_cochain
from .complex import format_complex, read_complex, sample_complex
from .experiments import load_config, quotient_experiment, threshold_sweep
from .expansion import verify_expansion_exhaustive, verify_expansion_sampled
from .groups import GroupSpecError, build_group, catalog_entries, simple_group_catalog
from .search import (
    DEFAULT_NODE_BUDGET,
    InfeasibleError,
    count_hom_orbits,
    has_nontrivial_class,
    has_small_quotient,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_NONTRIVIAL = 0, 1, 2, 3, 10

log = logging.getLogger("randcomplex")


def _sample_arg(text: str):
    try:
        n, p, seed = text.split(",")
        return int(n), float(p), int(seed)
    except ValueError:
        raise argparse.ArgumentTypeError("expected n,p,seed")


def _complex_source(sub):
    src = sub.add_mutually_exclusive_group(required=True)
    src.add_argument("--complex", metavar="FILE", help="complex file ('n <n>' then 'i j k' lines)")
    src.add_argument("--sample", metavar="N,P,SEED", type=_sample_arg, help="draw Y(n, p) with this seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="randcomplex", description=__doc__.splitlines()[0])
    parser.add_argument("--log-level", default="WARNING")
    parser.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                        help="worker processes for Monte Carlo trials")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("sample", help="draw Y(n, p) and print it in complex file format")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write to this file instead of stdout")

    p = subs.add_parser("check", help="decide H^1(X; G) != {[1]} or a small quotient of pi_1")
    _complex_source(p)
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--group", help="coefficient group spec, e.g. C2, A5, PSL27")
    target.add_argument("--max-index", type=int, help="look for a quotient of order <= N")
    p.add_argument("--emit-witness", metavar="FILE")
    p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)

    p = subs.add_parser("cohomology-count", help="|H^1(X; G)| by enumeration")
    _complex_source(p)
    p.add_argument("--group", required=True)
    p.add_argument("--limit", type=int, default=10**6)

    p = subs.add_parser("verify-expansion", help="check |B(phi)| >= n ||[phi]|| / 3")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--group", required=True)
    p.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_GAUGE_BUDGET)

    for name, helptext in [("sweep", "threshold sweep over a p grid"),
                           ("quotient-exp", "small-quotient frequency at p = (6+7c) log n / n")]:
        p = subs.add_parser(name, help=helptext)
        p.add_argument("--config", required=True, help="key = value config file")
        p.add_argument("--seed", type=int, help="override the config seed")
        p.add_argument("--out", help="override the config output path")
        p.add_argument("--format", choices=["json", "csv"], default="json")

    p = subs.add_parser("catalog", help="simple groups of order <= N as JSON")
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="build each group and check simplicity")
    return parser


def _load_complex(args):
    if args.complex:
        return read_complex(args.complex)
    n, p, seed = args.sample
    return sample_complex(n, p, seed)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _cmd_sample(args) -> int:
    text = format_complex(sample_complex(args.n, args.p, args.seed))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_check(args) -> int:
    X = _load_complex(args)
    if args.group:
        report = has_nontrivial_class(X, build_group(args.group), args.node_budget)
        found = not report.trivial
        doc = report.to_dict()
    else:
        report = has_small_quotient(X, args.max_index, args.node_budget)
        found = report is not None
        doc = {"max_index": args.max_index, "quotient": found,
               "group": report.group if found else None,
               "witness": report.to_dict()["witness"] if found else None}
    doc["n"] = X.n
    doc["triangles"] = len(X)
    if found and args.emit_witness:
        write_cochain(report.witness, args.emit_witness)
    _emit(doc)
    return EXIT_NONTRIVIAL if found else EXIT_OK


def _cmd_count(args) -> int:
    X = _load_complex(args)
    G = build_group(args.group)
    orbits = count_hom_orbits(X, G, args.limit)
    _emit({"group": G.name, "n": X.n, "triangles": len(X), "orbits": orbits})
    return EXIT_OK


def _cmd_expansion(args) -> int:
    G = build_group(args.group)
    if args.mode == "exhaustive":
        report = verify_expansion_exhaustive(args.n, G)
    else:
        report = verify_expansion_sampled(args.n, G, args.trials, args.seed, args.budget)
    _emit(report.to_dict())
    return EXIT_OK if report.violations == 0 else EXIT_FAIL


def _cmd_experiment(args) -> int:
    config = load_config(args.config)
    if args.seed is not None:
        config.seed = args.seed
    if args.out is not None:
        config.out = args.out
    workers = max(1, args.threads)
    if args.command == "sweep":
        result = threshold_sweep(config, workers=workers)
    else:
        result = quotient_experiment(config, workers=workers)
    if config.out:
        for path in result.write(config.out):
            log.info("wrote %s", path)
    sys.stdout.write(result.to_csv() if args.format == "csv" else result.to_json(timing=False))
    return EXIT_OK


def _cmd_catalog(args) -> int:
    if args.verify:
        groups = simple_group_catalog(args.max_order, verify=True)
        rows = [{"name": G.name, "order": G.order, "abelian": G.abelian} for G in groups]
    else:
        rows = [{"name": e.name, "order": e.order, "abelian": e.abelian} for e in catalog_entries(args.max_order)]
    _emit(rows)
    return EXIT_OK


_COMMANDS = {
    "sample": _cmd_sample,
    "check": _cmd_check,
    "cohomology-count": _cmd_count,
    "verify-expansion": _cmd_expansion,
    "sweep": _cmd_experiment,
    "quotient-exp": _cmd_experiment,
    "catalog": _cmd_catalog,
}


def parse_and_dispatch(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK
    logging.basicConfig(level=args.log_level.upper(), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s", force=True)
    try:
        return _COMMANDS[args.command](args)
    except InfeasibleError as e:
        log.error("%s", e)
        return EXIT_INFEASIBLE
    except GroupSpecError as e:
        parser.print_usage(sys.stderr)
        log.error("%s", e)
        return EXIT_USAGE
    except (ValueError, OSError) as e:
        log.error("%s", e)
        return EXIT_FAIL


def main(argv=None) -> int:
    return parse_and_dispatch(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
