"""Command-line front end.

Subcommands:
  compute    twisted polynomial + factorization verdict for one knot/group
  scan       batch verification over all 2-bridge fractions up to a bound
  find-reps  list homomorphism assignments onto a metabelian group
  h3         continued-fraction certificate [3k1, 2m1, ...] for a fraction
  selftest   recompute the golden values and report pass/fail lines

Exit codes: 0 computed, 1 input error, 2 no representation (or no
certificate), 3 internal consistency failure.

Result records are JSON objects with stable field names:
  input, group, assignment, surjective, n, delta, twisted, phi, holds,
  cross_path_match, millis
Polynomials are written in the canonical text form (increasing degrees,
e.g. "1 - 3*t^3 + t^6"); `millis` is wall-clock time and is excluded from
any determinism comparison.  CSV output quotes the same fields as strings.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from multiprocessing import Pool
from pathlib import Path

from .exactalg import ExactnessError, LaurentPoly
from .groupcalc import Presentation, PresentationError, parse_presentation
from .knotdata import BUNDLED, presentation as bundled_presentation
from .metabelian import (
    MetaGroup,
    a4_group,
    find_homs,
    group_from_name,
    obstruction_passes,
    perm_rep,
)
from .twisted import NoUsableColumnError, check_factorization, twisted_alexander
from .twinring import NotInH3Error, twisted_via_recursion
from .twobridge import (
    FractionR,
    alexander_poly,
    enumerate_fractions,
    h3_expand,
    two_bridge_alexander,
    wirtinger_presentation,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NO_REP = 2
EXIT_INTERNAL = 3

FIELDS = ["input", "group", "assignment", "surjective", "n", "delta",
          "twisted", "phi", "holds", "cross_path_match", "millis"]


class InputError(Exception):
    pass


def _load_presentation(spec: str) -> Presentation:
    path = Path(spec)
    if path.exists():
        return parse_presentation(path.read_text(), name=path.stem)
    clean = spec.removesuffix(".pres")
    if clean in BUNDLED:
        return bundled_presentation(clean)
    raise InputError(f"presentation file not found: {spec}")


def _parse_assignment(text: str, group: MetaGroup, p: Presentation) -> dict:
    images = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        gen, eq, elem = chunk.partition("=")
        gen = gen.strip()
        if not eq or gen not in p.generators:
            raise InputError(f"bad assignment chunk {chunk!r}")
        images[gen] = group.parse_elem(elem.strip())
    missing = [g for g in p.generators if g not in images]
    if missing:
        raise InputError(f"assignment missing generators {missing}")
    return images


def _assignment_str(images: dict, p: Presentation) -> str:
    return "; ".join(f"{g}={images[g]}" for g in p.generators)


def _closure_surjective(group: MetaGroup, images: dict) -> bool:
    from .metabelian import _closure_size

    return _closure_size(group, list(images.values())) == group.order()


def _compute_records(p: Presentation, group: MetaGroup, delta: LaurentPoly,
                     assignments, input_name: str, cross_check: bool,
                     recursion_value=None) -> list[dict]:
    records = []
    for images, surjective in assignments:
        t0 = time.monotonic()
        rho = perm_rep(images, group, p)
        result = twisted_alexander(p, rho)
        if result.invariant is None:
            raise ExactnessError(
                f"non-polynomial determinant ratio for {input_name}")
        verdict = check_factorization(result.invariant, delta, group.n)
        cross = None
        if cross_check and recursion_value is not None and verdict.phi is not None:
            cross = verdict.phi == recursion_value
        millis = int((time.monotonic() - t0) * 1000)
        records.append({
            "input": input_name,
            "group": group.name(),
            "assignment": _assignment_str(images, p),
            "surjective": surjective,
            "n": group.n,
            "delta": str(delta),
            "twisted": str(result.invariant),
            "phi": str(verdict.phi) if verdict.phi is not None else None,
            "holds": verdict.holds,
            "cross_path_match": cross,
            "millis": millis,
        })
    return records


def _gather_assignments(p, group, args):
    """Either the explicit --assign, or the find_homs results."""
    if args.assign:
        images = _parse_assignment(args.assign, group, p)
        return [(images, _closure_surjective(group, images))]
    homs = find_homs(p, group, fix=args.fix)
    chosen = [(h.images, h.surjective) for h in homs
              if h.surjective or args.all]
    return chosen


def cmd_compute(args) -> int:
    group = group_from_name(args.group)
    if args.r:
        r = FractionR.parse(args.r)
        p = wirtinger_presentation(r)
        delta = two_bridge_alexander(r)
        input_name = str(r)
    else:
        p = _load_presentation(args.pres)
        delta = alexander_poly(p)
        input_name = p.name or args.pres
    if not args.assign and not obstruction_passes(delta, group.n, group.p):
        print(
            f"no representation: the resultant obstruction rules out a "
            f"surjection of {input_name} onto {group.name()}",
            file=sys.stderr)
        return EXIT_NO_REP
    assignments = _gather_assignments(p, group, args)
    if not assignments:
        print(f"no representation of {input_name} onto {group.name()} found",
              file=sys.stderr)
        return EXIT_NO_REP
    recursion_value = None
    if args.cross_check and group == a4_group() and args.r:
        try:
            recursion_value = twisted_via_recursion(FractionR.parse(args.r))
        except NotInH3Error:
            recursion_value = None
    records = _compute_records(p, group, delta, assignments, input_name,
                               args.cross_check, recursion_value)
    for rec in records:
        print(json.dumps(rec))
    return EXIT_OK


def _scan_one(packed):
    """Worker for scan: the record for one fraction (picklable).

    All surjective assignments found by the search are conjugate and share
    one invariant, so the scan emits a single row per fraction, labeled with
    the lexicographically smallest assignment.
    """
    beta, alpha, group_key, h3_only, cross_check = packed
    group = group_from_name(group_key)
    r = FractionR(beta, alpha)
    form = h3_expand(r)
    if h3_only and form is None:
        return []
    delta = two_bridge_alexander(r)
    if not obstruction_passes(delta, group.n, group.p):
        return []
    p = wirtinger_presentation(r)
    homs = find_homs(p, group)
    surjective = [h.images for h in homs if h.surjective]
    if not surjective:
        return []
    chosen = min(surjective, key=lambda images: _assignment_str(images, p))
    recursion_value = None
    if cross_check and group == a4_group() and form is not None:
        recursion_value = twisted_via_recursion(r)
    return _compute_records(p, group, delta, [(chosen, True)], str(r),
                            cross_check, recursion_value)


def cmd_scan(args) -> int:
    group = group_from_name(args.group)  # validate early
    jobs = []
    for r in enumerate_fractions(args.alpha_max):
        jobs.append((r.beta, r.alpha, args.group, args.h3_only,
                     args.cross_check))
    if args.jobs > 1:
        with Pool(args.jobs) as pool:
            chunks = pool.map(_scan_one, jobs)
    else:
        chunks = [_scan_one(j) for j in jobs]
    rows = [rec for chunk in chunks for rec in chunk]
    rows.sort(key=lambda rec: (
        int(rec["input"].split("/")[1]), int(rec["input"].split("/")[0]),
        rec["assignment"]))
    _write_rows(rows, args.out, jsonl=args.jsonl)
    print(f"scan: {len(rows)} rows for {group.name()} up to alpha = "
          f"{args.alpha_max} -> {args.out}", file=sys.stderr)
    return EXIT_OK


def _write_rows(rows: list[dict], out: str, jsonl: bool) -> None:
    if out == "-":
        _dump_rows(rows, sys.stdout, jsonl=True, csv_mode=False)
        return
    path = Path(out)
    try:
        with open(path, "w", newline="") as handle:
            if jsonl or path.suffix == ".jsonl":
                _dump_rows(rows, handle, True, csv_mode=False)
            elif path.suffix == ".json":
                _dump_rows(rows, handle, False, csv_mode=False)
            else:
                _dump_rows(rows, handle, False, csv_mode=True)
    except OSError as e:
        raise InputError(f"cannot write {out}: {e}") from e


def _dump_rows(rows, handle, jsonl: bool, csv_mode: bool) -> None:
    if csv_mode:
        writer = csv.DictWriter(handle, fieldnames=FIELDS)
        writer.writeheader()
        for rec in rows:
            writer.writerow(rec)
    elif jsonl:
        for rec in rows:
            handle.write(json.dumps(rec) + "\n")
    else:
        json.dump(rows, handle, indent=1)
        handle.write("\n")


def cmd_find_reps(args) -> int:
    group = group_from_name(args.group)
    if args.r:
        r = FractionR.parse(args.r)
        p = wirtinger_presentation(r)
        delta = two_bridge_alexander(r)
        name = str(r)
    else:
        p = _load_presentation(args.pres)
        delta = alexander_poly(p)
        name = p.name or args.pres
    possible = obstruction_passes(delta, group.n, group.p)
    if not possible:
        print(f"obstruction: no surjection of G({name}) onto {group.name()} "
              f"can exist (resultant test)")
    homs = find_homs(p, group, fix=args.fix)
    shown = [h for h in homs if h.surjective or args.all]
    for h in shown:
        print(h.describe())
    if not shown:
        print(f"no representation of {name} onto {group.name()} found",
              file=sys.stderr)
        return EXIT_NO_REP
    return EXIT_OK


def cmd_h3(args) -> int:
    r = FractionR.parse(args.r)
    form = h3_expand(r)
    if form is None:
        print(f"{r}: no certificate found within search bounds",
              file=sys.stderr)
        return EXIT_NO_REP
    print(str(form))
    return EXIT_OK


def cmd_selftest(args) -> int:
    from . import selftest

    failures = selftest.run(quick=args.quick, p7=args.p7, out=sys.stdout)
    return EXIT_OK if failures == 0 else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="metatap",
        description="Exact twisted Alexander polynomials for metabelian "
                    "representations of knot groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input_opts(sp, with_assign=True):
        sp.add_argument("--r", help="2-bridge fraction beta/alpha (both odd)")
        sp.add_argument("--pres", help="presentation file (or bundled name: "
                                       + ", ".join(BUNDLED) + ")")
        sp.add_argument("--group", required=True,
                        help="target group: A4 or M(n|p,k)")
        sp.add_argument("--fix", default=None,
                        help="generator pinned to s in the search "
                             "(default: first)")
        if with_assign:
            sp.add_argument("--assign", default=None,
                            help="explicit images, e.g. 'x=s; y=s b1 b4'")
        sp.add_argument("--all", action="store_true",
                        help="include non-surjective assignments")

    sp = sub.add_parser("compute", help="twisted polynomial for one input")
    add_input_opts(sp)
    sp.add_argument("--cross-check", action="store_true",
                    help="for A4 inputs in H(3): also run the "
                         "continued-fraction recursion path")
    sp.set_defaults(func=cmd_compute)

    sp = sub.add_parser("scan", help="batch verification over fractions")
    sp.add_argument("--alpha-max", type=int, required=True)
    sp.add_argument("--group", required=True)
    sp.add_argument("--out", required=True, help="output path (.csv/.json/"
                    ".jsonl) or - for stdout")
    sp.add_argument("--h3-only", action="store_true")
    sp.add_argument("--cross-check", action="store_true")
    sp.add_argument("--jsonl", action="store_true")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("find-reps", help="list homomorphism assignments")
    add_input_opts(sp, with_assign=False)
    sp.set_defaults(func=cmd_find_reps)

    sp = sub.add_parser("h3", help="continued-fraction certificate for --r")
    sp.add_argument("--r", required=True)
    sp.set_defaults(func=cmd_h3)

    sp = sub.add_parser("selftest", help="recompute the golden values")
    sp.add_argument("--quick", action="store_true",
                    help="skip the slower high-dimensional cases")
    sp.add_argument("--p7", action="store_true",
                    help="also run the optional 64-dimensional torus-knot "
                         "check (minutes; reported, not asserted)")
    sp.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("compute", "find-reps"):
        if bool(args.r) == bool(args.pres):
            print("exactly one of --r / --pres is required", file=sys.stderr)
            return EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, PresentationError, ValueError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except NoUsableColumnError as e:
        print(f"internal consistency failure: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except ExactnessError as e:
        print(f"internal consistency failure: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
