"""Batch command-line front end.

Commands: generate | verify | count | invariants | decompose.
Exit codes: 0 all selected checks certified, 1 any check refuted,
2 usage or input errors, 3 inconclusive results only.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .calabi_yau import (
    Instance,
    build_quadrics,
    chern_invariants,
    check_eigenspace,
    check_free_action,
    check_hilbert,
    check_smooth,
    count_points,
    random_instance,
    regular_rep_check,
    reid_surface,
)
from .enumeration import DEFAULT_POINT_CAP, worker_count
from .errors import (
    BadCharacteristic,
    EnumerationTooLarge,
    NoSquareRootOfMinusOne,
    Q8CYError,
)
from .fields import field_for, parse_field_string
from .ideal import GBLimits
from .quaternion import ELEMENTS, isotypic_dimensions
from .reports import (
    CERTIFIED,
    INCONCLUSIVE,
    REFUTED,
    VerificationReport,
    canonical_json_bytes,
)

ALL_CHECKS = ("eigen", "free", "smooth", "hilbert", "surface")
TOOL_VERSION = f"q8cy {__version__}"

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_USAGE


def _load_instance(path, allow_degenerate):
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    return Instance.from_json(obj, allow_degenerate=allow_degenerate)


def _write_bytes(path, data: bytes):
    with open(path, "wb") as fh:
        fh.write(data)


def cmd_generate(args) -> int:
    try:
        spec = parse_field_string(args.field)
    except ValueError as exc:
        return _fail(str(exc))
    fld = field_for(spec)
    try:
        if fld.characteristic() in (2, 3):
            raise BadCharacteristic(
                "characteristic 2 and 3 are outside the supported quadric theory")
        fld.sqrt_minus_one()
    except NoSquareRootOfMinusOne:
        return _fail(
            f"{fld.name()} has no square root of -1; the construction needs "
            "p = 1 mod 4 (or an even-degree extension)")
    except BadCharacteristic as exc:
        return _fail(str(exc))
    try:
        inst = random_instance(args.seed, spec)
    except ValueError as exc:
        return _fail(str(exc))
    data = canonical_json_bytes(inst.to_json())
    if args.out:
        _write_bytes(args.out, data)
    else:
        sys.stdout.write(data.decode())
    print(f"digest: {inst.digest()}")
    return EXIT_OK


def _exit_from_verdicts(verdicts) -> int:
    if any(v == REFUTED for v in verdicts):
        return EXIT_REFUTED
    if all(v == CERTIFIED for v in verdicts):
        return EXIT_OK
    return EXIT_INCONCLUSIVE


def cmd_verify(args) -> int:
    try:
        inst = _load_instance(args.instance, args.allow_degenerate)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        return _fail(f"cannot read instance: {exc}")
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    for c in checks:
        if c not in ALL_CHECKS:
            return _fail(f"unknown check {c!r}; choose from {','.join(ALL_CHECKS)}")
    if args.method not in ("groebner", "enumeration", "both"):
        return _fail("method must be groebner, enumeration or both")
    if args.ext_degree < 1:
        return _fail("--ext-degree must be >= 1")
    methods = ["groebner", "enumeration"] if args.method == "both" \
        else [args.method]
    limits = GBLimits(max_pair_reductions=args.gb_max_pairs,
                      max_term_ops=args.gb_max_terms)
    workers = worker_count()

    try:
        system = build_quadrics(inst)
    except (NoSquareRootOfMinusOne, BadCharacteristic) as exc:
        return _fail(str(exc))

    report = VerificationReport(instance_digest=inst.digest(),
                                tool_version=TOOL_VERSION)
    try:
        if "eigen" in checks:
            report.add(check_eigenspace(inst, system=system))
        if "free" in checks:
            for method in methods:
                report.add(check_free_action(
                    inst, method=method, ext_degree=args.ext_degree,
                    limits=limits, point_cap=args.point_cap, workers=workers,
                    system=system))
        if "smooth" in checks:
            for method in methods:
                report.add(check_smooth(
                    inst, method=method, ext_degree=args.ext_degree,
                    limits=limits, point_cap=args.point_cap, workers=workers,
                    system=system))
        if "hilbert" in checks:
            report.add(check_hilbert(inst, limits=limits, system=system))
        if "surface" in checks:
            _, records = reid_surface(inst, limits=limits,
                                      point_cap=args.point_cap,
                                      workers=workers, system=system)
            for rec in records:
                report.add(rec)
    except EnumerationTooLarge as exc:
        return _fail(str(exc))

    report.invariants = chern_invariants().to_json()
    for rec in report.records:
        line = f"{rec.name}[{rec.method}]: {rec.verdict}"
        if rec.verdict == REFUTED and rec.witnesses:
            line += f"  witness={json.dumps(rec.witnesses, sort_keys=True)}"
        print(line)
    if args.out:
        _write_bytes(args.out, report.canonical_bytes())
        print(f"report written to {args.out}")
    by_name = report.verdict_by_name()
    return _exit_from_verdicts(by_name.values())


def cmd_count(args) -> int:
    try:
        inst = _load_instance(args.instance, args.allow_degenerate)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        return _fail(f"cannot read instance: {exc}")
    if args.ext_degree < 1:
        return _fail("--ext-degree must be >= 1")
    try:
        pc = count_points(inst, ext_degree=args.ext_degree,
                          point_cap=args.point_cap, workers=worker_count())
    except (EnumerationTooLarge, ValueError, Q8CYError) as exc:
        return _fail(str(exc))
    for entry in pc.entries:
        print(f"k={entry['k']}  |X(F_{entry['field_size']})| = {entry['count']}"
              f"  (mod 8 = {entry['count_mod_8']})")
        hist = ", ".join(f"size {s}: {n}" for s, n in
                         sorted(entry["orbit_histogram"].items(),
                                key=lambda kv: int(kv[0])))
        print(f"     orbits: {hist if hist else 'none'}")
    if args.out:
        try:
            with open(args.out, "r", encoding="utf-8") as fh:
                obj = json.load(fh)
        except (OSError, json.JSONDecodeError):
            obj = {"version": 1, "tool_version": TOOL_VERSION,
                   "instance_digest": inst.digest(), "checks": [],
                   "invariants": {}, "timings": {}}
        obj["counts"] = pc.entries
        _write_bytes(args.out, canonical_json_bytes(obj))
        print(f"counts appended to {args.out}")
    return EXIT_OK


def cmd_invariants(_args) -> int:
    data = chern_invariants()
    print(f"deg = {data.degree_cover}")
    print(f"euler_cover = {data.euler_cover}")
    print(f"euler_quotient = {data.euler_quotient}")
    print(f"L^3 = {data.L3}")
    print(f"L.c2 = {data.L_c2}")
    rr = "exact" if data.rr_identity else "FAILS"
    print(f"1 = {data.L3}/6 + {data.L_c2}/12: {rr}")
    print(f"Miyaoka bound K^2 = L^3 = {data.L3} <= 5: "
          f"{'OK' if data.miyaoka_ok else 'FAILS'}")
    print(f"c1 coefficient = {data.series[1]}: "
          f"{'OK' if data.c1_is_zero else 'FAILS'}")
    rep = regular_rep_check()
    traces = rep.witnesses["traces"]
    print("regular character: ("
          + ", ".join(str(traces[g]) for g in ELEMENTS)
          + ") over (" + ", ".join(ELEMENTS) + f") -> {rep.verdict}")
    ok = (data.rr_identity and data.miyaoka_ok and data.c1_is_zero
          and rep.verdict == CERTIFIED)
    return EXIT_OK if ok else EXIT_REFUTED


def cmd_decompose(_args) -> int:
    dims, residual = isotypic_dimensions()
    for chi in ("1", "a", "b", "g"):
        print(f"character {chi}: {dims[chi]}")
    print(f"residual: {residual}")
    total = sum(dims.values()) + residual
    print(f"total: {total}")
    return EXIT_OK if (all(d == 5 for d in dims.values())
                       and residual == 16 and total == 36) else EXIT_REFUTED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="q8cy",
        description="Construct and certify quaternionic quadric intersections "
                    "in P^7 over exact fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="sample a seeded instance")
    g.add_argument("--field", required=True,
                   help="field spec: fp:13, fp:13^2, or qi")
    g.add_argument("--seed", type=int, default=1)
    g.add_argument("--out", help="write the instance file here")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="run certification checks on an instance")
    v.add_argument("instance", help="instance file (canonical JSON)")
    v.add_argument("--checks", default=",".join(ALL_CHECKS),
                   help=f"comma list from {','.join(ALL_CHECKS)}")
    v.add_argument("--method", default="both",
                   choices=("groebner", "enumeration", "both"))
    v.add_argument("--ext-degree", type=int, default=1)
    v.add_argument("--point-cap", type=int, default=DEFAULT_POINT_CAP)
    v.add_argument("--gb-max-pairs", type=int, default=GBLimits().max_pair_reductions)
    v.add_argument("--gb-max-terms", type=int, default=GBLimits().max_term_ops)
    v.add_argument("--allow-degenerate", action="store_true")
    v.add_argument("--out", help="write the report file here")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("count", help="count rational points and orbits")
    c.add_argument("instance")
    c.add_argument("--ext-degree", type=int, default=1)
    c.add_argument("--point-cap", type=int, default=DEFAULT_POINT_CAP)
    c.add_argument("--allow-degenerate", action="store_true")
    c.add_argument("--out", help="append counts to this report file")
    c.set_defaults(func=cmd_count)

    i = sub.add_parser("invariants", help="print the numerical invariants")
    i.set_defaults(func=cmd_invariants)

    d = sub.add_parser("decompose", help="print the quadric isotypic dimensions")
    d.set_defaults(func=cmd_decompose)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
