"""Command-line reports: map censuses, claim verification, counting tables,
and single-map diagnostics.

Every command writes a deterministic report to standard output (diagnostics
go to standard error) and returns one of four exit codes: 0 success or pass,
1 verification failure or count disagreement, 2 usage/parse error, 3 refusal
by a size guard.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from typing import Optional, Sequence

from .classify import (
    CLAIM_IDS,
    CSV_COLUMNS,
    MAX_CENSUS_ARCS,
    AbelianProductGroup,
    CensusEntry,
    _require_odd_prime,
    abelian_group_catalogue,
    census_entries,
    count_regular_dihedral_maps,
    crt_lift_solutions,
    entry_for_map,
    triples_for,
    verify_claim,
)
from .groups import (
    CyclicGroup,
    DicyclicGroup,
    DihedralGroup,
    ElemAbelian2Group,
    FiniteGroup,
)
from .maps import SizeGuardError, build_map

SCHEMA_VERSION = 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cayleymaps",
        description=(
            "Census, verification, and diagnostic reports for prime-valent "
            "Cayley maps on abelian, dihedral, and dicyclic groups."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    census = sub.add_parser(
        "census",
        help="isomorphism-class census of regular maps over a group family",
    )
    census.add_argument(
        "--group",
        required=True,
        choices=("dihedral", "dicyclic", "abelian", "elem2"),
        help="group family to sweep",
    )
    census.add_argument("--p", required=True, type=int, help="odd prime valence")
    census.add_argument(
        "--n-max",
        required=True,
        type=int,
        dest="n_max",
        help="family bound: max n (dihedral/dicyclic), max order (abelian), "
        "or max rank (elem2)",
    )
    census.add_argument(
        "--format", choices=("json", "csv"), default="json", help="output format"
    )
    census.add_argument("--jobs", type=int, default=1, help="worker processes")

    verify = sub.add_parser(
        "verify", help="cross-check one named claim against the search oracle"
    )
    verify.add_argument(
        "--theorem",
        required=True,
        help=f"claim id, one of: {', '.join(CLAIM_IDS)}",
    )
    verify.add_argument("--p", type=int, help="odd prime valence")
    verify.add_argument("--n-max", type=int, dest="n_max", help="family bound")
    verify.add_argument("--jobs", type=int, default=1, help="worker processes")

    count = sub.add_parser(
        "count", help="closed-form class count for one parameter, cross-checked"
    )
    count.add_argument("--p", required=True, type=int, help="odd prime valence")
    count.add_argument("--n", required=True, type=int, help="dihedral parameter n")

    triples = sub.add_parser(
        "triples", help="table of admissible parameters and counts up to a bound"
    )
    triples.add_argument("--p", required=True, type=int, help="odd prime valence")
    triples.add_argument(
        "--n-max", required=True, type=int, dest="n_max", help="largest n to list"
    )

    checkmap = sub.add_parser(
        "checkmap", help="full diagnostic row for one explicitly given map"
    )
    checkmap.add_argument(
        "--group",
        required=True,
        help="group spec: D7, Dic3, Z6, E3, or a product like Z2xZ4",
    )
    checkmap.add_argument(
        "--xs",
        required=True,
        help="comma-separated generators in rotation order, e.g. b,a*b,a^3*b",
    )
    return parser


# -- group specs and element lists ---------------------------------------------


def parse_group_spec(spec: str) -> tuple[FiniteGroup, int]:
    """Turn a short group name into a group plus its report parameter n."""
    m = re.fullmatch(r"Dic(\d+)", spec)
    if m:
        n = int(m.group(1))
        return DicyclicGroup(n), n
    m = re.fullmatch(r"D(\d+)", spec)
    if m:
        n = int(m.group(1))
        return DihedralGroup(n), n
    m = re.fullmatch(r"E(\d+)", spec)
    if m:
        r = int(m.group(1))
        return ElemAbelian2Group(r), r
    m = re.fullmatch(r"Z(\d+)(?:xZ(\d+))+", spec)
    if m:
        mods = [int(d) for d in re.findall(r"\d+", spec)]
        group = AbelianProductGroup(mods)
        return group, group.order
    m = re.fullmatch(r"Z(\d+)", spec)
    if m:
        n = int(m.group(1))
        return CyclicGroup(n), n
    raise ValueError(
        f"cannot parse group spec {spec!r}; expected forms: D7, Dic3, Z6, "
        "E3, Z2xZ4"
    )


def parse_generator_list(group: FiniteGroup, text: str) -> list:
    tokens = [tok.strip() for tok in text.split(",")]
    if any(not tok for tok in tokens):
        raise ValueError(f"empty generator token in {text!r}")
    return [group.parse_element(tok) for tok in tokens]


# -- report emission -------------------------------------------------------------


def _emit_json(params: dict, entries: Sequence[CensusEntry]) -> None:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "params": params,
        "entries": [e.to_dict() for e in entries],
    }
    print(json.dumps(doc, indent=2))


def _emit_csv(entries: Sequence[CensusEntry]) -> None:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for e in entries:
        writer.writerow(e.csv_row())


def _count_line(n: int, p: int) -> tuple[str, bool]:
    formula = count_regular_dihedral_maps(n, p)
    enumerated = triples_for(n, p)
    lifted = crt_lift_solutions(n, p)
    agree = formula == len(enumerated) == len(lifted) and enumerated == lifted
    shown = ",".join(str(l) for l in enumerated)
    flag = "AGREE" if agree else "DISAGREE"
    return f"n={n} p={p} count={formula} l=[{shown}] {flag}", agree


# -- subcommand bodies -----------------------------------------------------------


def _census_targets(group_kind: str, n_max: int) -> list[tuple[FiniteGroup, int]]:
    if group_kind == "dihedral":
        return [(DihedralGroup(n), n) for n in range(3, n_max + 1)]
    if group_kind == "dicyclic":
        return [(DicyclicGroup(n), n) for n in range(2, n_max + 1)]
    if group_kind == "abelian":
        return [(g, g.order) for g in abelian_group_catalogue(n_max)]
    return [(ElemAbelian2Group(r), r) for r in range(1, n_max + 1)]


def _run_census(args: argparse.Namespace) -> int:
    _require_odd_prime(args.p)
    targets = _census_targets(args.group, args.n_max)
    # refuse the whole request up front: no partial reports
    for group, _ in targets:
        if group.order * args.p > MAX_CENSUS_ARCS:
            raise SizeGuardError(
                f"census guard: {group.name} at valence {args.p} needs "
                f"{group.order * args.p} arcs, above {MAX_CENSUS_ARCS}"
            )
    entries: list[CensusEntry] = []
    for group, n_param in targets:
        entries.extend(census_entries(group, n_param, args.p, args.jobs))
    if args.format == "csv":
        _emit_csv(entries)
    else:
        params = {
            "command": "census",
            "group": args.group,
            "p": args.p,
            "n_max": args.n_max,
        }
        _emit_json(params, entries)
    return 0


def _run_verify(args: argparse.Namespace) -> int:
    report = verify_claim(args.theorem, p=args.p, n_max=args.n_max, jobs=args.jobs)
    sys.stdout.write(report.as_text())
    return 0 if report.passed else 1


def _run_count(args: argparse.Namespace) -> int:
    line, agree = _count_line(args.n, args.p)
    print(line)
    return 0 if agree else 1


def _run_triples(args: argparse.Namespace) -> int:
    if args.n_max < 1:
        raise ValueError(f"--n-max must be positive, got {args.n_max}")
    all_agree = True
    for n in range(1, args.n_max + 1):
        line, agree = _count_line(n, args.p)
        all_agree = all_agree and agree
        print(line)
    return 0 if all_agree else 1


def _run_checkmap(args: argparse.Namespace) -> int:
    group, n_param = parse_group_spec(args.group)
    xs = parse_generator_list(group, args.xs)
    m = build_map(group, xs)
    entry = entry_for_map(m, n_param, "checkmap", with_graph_aut=True)
    params = {"command": "checkmap", "group": args.group, "xs": args.xs}
    _emit_json(params, [entry])
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        if args.command == "census":
            return _run_census(args)
        if args.command == "verify":
            return _run_verify(args)
        if args.command == "count":
            return _run_count(args)
        if args.command == "triples":
            return _run_triples(args)
        return _run_checkmap(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SizeGuardError as exc:
        print(f"size guard: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
