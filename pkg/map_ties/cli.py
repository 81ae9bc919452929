#!usr/bin/env
#Command line front end.
#Every subcommand reads an instance file, or fuzz settings, and prints a
#report to stdout as markdown (default), csv or json. Exit status is 0 when
#every checked property holds, 1 on a property violation and 2 on bad input.
#
#  Typical usage example:
#  $ map-ties analyze example1.json --json
#  $ map-ties partitions example1.json --i 2 --j 1
#  $ map-ties fuzz --seed 7 --trials 1000 --dump failures/
#


import argparse
import json
import logging
import sys
from map_ties.__about__ import __version__
from map_ties.extra import MapTiesError, render_table, table_records
from map_ties.model.model import ENUMERATION_LIMIT, check_index, instance_to_json, load_instance
from map_ties.classify.classify import bound_table, classification_rows, classify, verify_theorem
from map_ties.partitions.partitions import (atom_rows, cell_rows, family_rows, level_rows, partition_report,
    region_rows, tie_partitions)
from map_ties.harness.harness import FuzzConfig, run_fuzz, run_suite
from map_ties.montecarlo.montecarlo import estimate_metrics, estimates_to_json


LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2



#==================================================
#parser
#==================================================
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--md", dest="fmt", action="store_const", const="md", help="markdown tables (default)")
    fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv", help="csv tables")
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="one json document")
    common.add_argument("--workers", type=int, default=1, help="threads for the output scan")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    common.set_defaults(fmt="md")

    instance = argparse.ArgumentParser(add_help=False)
    instance.add_argument("file", help="instance file (json)")
    instance.add_argument("--limit", type=int, default=ENUMERATION_LIMIT,
                          help=f"largest n enumerated exhaustively (default {ENUMERATION_LIMIT})")

    parser = argparse.ArgumentParser(prog="map-ties", description="Exact MAP decoding ties on the binary symmetric channel")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("analyze", parents=[common, instance], help="a_n, b_n, delta_n and the bounds")
    sub = commands.add_parser("classify", parents=[common, instance], help="membership of every output")
    sub.add_argument("--i", type=int, help="only codeword i")
    sub = commands.add_parser("partitions", parents=[common, instance], help="tie partitions, levels and atoms")
    sub.add_argument("--i", type=int, help="reference codeword (default all)")
    sub.add_argument("--j", type=int, help="tying codeword (default all)")
    commands.add_parser("verify", parents=[common, instance], help="run the full property suite")
    sub = commands.add_parser("fuzz", parents=[common], help="property suite over random instances")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--trials", type=int, default=1000)
    sub.add_argument("--max-n", dest="max_n", type=int, default=8)
    sub.add_argument("--max-m", dest="max_m", type=int, default=6)
    sub.add_argument("--dump", help="directory for reproducer files of failing trials")
    sub = commands.add_parser("montecarlo", parents=[common, instance], help="sampled estimates")
    sub.add_argument("--samples", type=int, default=10**5)
    sub.add_argument("--seed", type=int, default=0)
    return parser



#==================================================
#commands
#==================================================
def _emit(fmt: str, sections: list, document: dict):
    """Print titled tables, or the json document"""

    if fmt == "json":
        print(json.dumps(document, indent=2))
        return
    blocks = []
    for title, (headers, rows) in sections:
        table = render_table(headers, rows, fmt=fmt)
        blocks.append(f"## {title}\n\n{table}" if fmt == "md" and title else table)
    print("\n\n".join(blocks))


def cmd_analyze(args) -> int:
    inst = load_instance(args.file, limit=args.limit)
    report = verify_theorem(inst, workers=args.workers)
    if args.fmt == "json":
        print(json.dumps(dict(instance=instance_to_json(inst), **report.to_json()), indent=2))
    else:
        print(bound_table(report, fmt=args.fmt))
    return EXIT_OK if report.passed else EXIT_VIOLATION


def cmd_classify(args) -> int:
    inst = load_instance(args.file, limit=args.limit)
    if args.i is not None:
        check_index(inst, args.i)
    headers, rows = classification_rows(inst, i=args.i)
    _emit(args.fmt, [(None, (headers, rows))],
          {"instance": instance_to_json(inst), "rows": table_records(headers, rows)})
    return EXIT_OK


def cmd_partitions(args) -> int:
    inst = load_instance(args.file, limit=args.limit)
    for index in (args.i, args.j):
        if index is not None:
            check_index(inst, index)
    if args.i is not None and args.i == args.j:
        raise MapTiesError("--i and --j must differ")
    indices = [args.i] if args.i is not None else list(range(1, inst.M + 1))
    classification = classify(inst, workers=args.workers)
    families = tie_partitions(inst, indices=indices)

    sections = [("regions", region_rows(inst, classification, indices)),
                ("families", family_rows(inst, families, j=args.j))]
    document = {"instance": instance_to_json(inst),
                "regions": table_records(*sections[0][1]), "families": table_records(*sections[1][1]), "pairs": []}
    passed = True
    for family in families:
        for j in family.tie:
            if args.j is not None and j != args.j:
                continue
            report = partition_report(inst, family.i, j, family=family)
            passed &= report.passed
            pair = {"cells": cell_rows(report), "levels": level_rows(report), "atoms": atom_rows(report)}
            sections += [(f"{name} (i, j) = ({family.i}, {j})", rows) for name, rows in pair.items()]
            entry = {"i": family.i, "j": j, "passed": report.passed,
                     "violations": [v.to_json() for c in report.checks for v in c.violations]}
            entry.update({name: table_records(*rows) for name, rows in pair.items()})
            document["pairs"].append(entry)
    _emit(args.fmt, sections, document)
    return EXIT_OK if passed else EXIT_VIOLATION


def cmd_verify(args) -> int:
    inst = load_instance(args.file, limit=args.limit)
    suite = run_suite(inst, workers=args.workers)
    headers = ["property", "checked", "passed", "violations"]
    rows = [[c.property, c.checked, str(c.passed).lower(), len(c.violations)] for c in suite.checks]
    _emit(args.fmt, [("properties", (headers, rows))], suite.to_json())
    return EXIT_OK if suite.passed else EXIT_VIOLATION


def cmd_fuzz(args) -> int:
    cfg = FuzzConfig(seed=args.seed, trials=args.trials, max_n=args.max_n, max_m=args.max_m)
    report = run_fuzz(cfg, workers=args.workers, dump=args.dump)
    headers = ["property", "cases checked"]
    rows = [[name, count] for name, count in sorted(report.checked.items())]
    summary = [["trials", report.trials], ["uniform prior", report.uniform_trials],
               ["tie-free", report.tie_free_trials], ["failures", len(report.failures)]]
    sections = [("corpus", (["quantity", "value"], summary)), ("properties", (headers, rows))]
    if report.failures:
        sections.append(("failures", (["trial", "property"], [[f["trial"], f["property"]] for f in report.failures])))
    _emit(args.fmt, sections, report.to_json())
    return EXIT_OK if report.passed else EXIT_VIOLATION


def cmd_montecarlo(args) -> int:
    inst = load_instance(args.file, limit=args.limit)
    estimates = estimate_metrics(inst, samples=args.samples, seed=args.seed, workers=args.workers)
    headers = ["metric", "point", "stderr", "ci_low", "ci_high", "samples", "seed"]
    rows = [[e.metric, f"{e.point:.6g}", f"{e.stderr:.3g}", f"{e.ci_low:.6g}", f"{e.ci_high:.6g}", e.samples, e.seed]
            for e in estimates]
    _emit(args.fmt, [(None, (headers, rows))],
          {"instance": instance_to_json(inst), "estimates": estimates_to_json(estimates)})
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "classify": cmd_classify, "partitions": cmd_partitions,
            "verify": cmd_verify, "fuzz": cmd_fuzz, "montecarlo": cmd_montecarlo}



#==================================================
#run
#==================================================
def run(argv=None) -> int:
    """Parse argv, run one subcommand and return the exit status

    Parameters
    ----------
    argv : `list`
        Arguments without the program name. Default is sys.argv[1:] \n

    Returns
    -------
    int
        0 pass, 1 property violation, 2 input error \n
    """

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    logging.basicConfig(stream=sys.stderr, level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (MapTiesError, IndexError, OSError) as err:
        print(f"map-ties: error: {err}", file=sys.stderr)
        return EXIT_INPUT


def main():
    sys.exit(run())
