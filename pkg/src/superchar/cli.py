"""Command-line front door.

Every command is flag-driven and byte-deterministic: fixed label orders,
exact values, seeded spot checks.  Exit codes: 0 success, 1 a verification
or identity check failed, 2 unusable input or an enumeration cap was hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .cyclotomic import Cyclotomic
from .dual import dual_canonical, dual_orbit, enumerate_dual_orbits
from .gf import FieldElement, FiniteField, field_construct
from .nilpotent import parse_matrix, format_matrix
from .orbits import canonical_form, enumerate_superclasses, superclass_orbit
from .partitions import (
    format_coloured,
    parse_coloured,
    parse_colours,
    parse_partition,
    r_of,
)
from .table import (
    build_table,
    plancherel,
    table_to_csv,
    table_to_json,
    verify_theory,
)
from .tower import (
    FieldTower,
    TowerLabel,
    convergence_report,
    fsc_diagnostic,
    plancherel_profile,
)


def _jsonify(obj):
    if isinstance(obj, Cyclotomic):
        return obj.to_json()
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, FieldElement):
        return list(obj.coeffs)
    if isinstance(obj, dict):
        return {k: _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    return obj


def _group_json(n: int, field: FiniteField) -> dict:
    return {
        "n": n,
        "p": field.p,
        "m": field.m,
        "q": field.order,
        "modulus": list(field.modulus),
    }


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(obj, output: str | None) -> None:
    _emit(json.dumps(_jsonify(obj), indent=2) + "\n", output)


def _field(args) -> FiniteField:
    return field_construct(args.p, args.degree)


def cmd_table(args) -> int:
    field = _field(args)
    table = build_table(args.n, field, validate=args.validate)
    failures = [c for c in verify_theory(table) if not c[1]]
    for name, _, detail in failures:
        print(f"FAIL {name}: {detail}", file=sys.stderr)
    if failures:
        return 1
    if args.format == "csv":
        _emit(table_to_csv(table), args.output)
    else:
        _emit_json(table_to_json(table), args.output)
    return 0


def cmd_classify(args) -> int:
    field = _field(args)
    a = parse_matrix(args.matrix, args.n, field)
    if args.dual:
        label = dual_canonical(a)
        size = len(dual_orbit(a))
    else:
        label = canonical_form(a)
        size = len(superclass_orbit(a))
    _emit_json(
        {
            "group": _group_json(args.n, field),
            "dual": bool(args.dual),
            "input": format_matrix(a),
            "label": label.to_json(),
            "label_text": format_coloured(label),
            "orbit_size": size,
        },
        args.output,
    )
    return 0


def cmd_orbits(args) -> int:
    field = _field(args)
    rows = []
    if args.dual:
        orbits = enumerate_dual_orbits(
            args.n, field, validate=args.validate == "full"
        )
        for o in orbits:
            predicted = field.order ** r_of(o.label.partition)
            rows.append(
                {
                    "label": o.label.to_json(),
                    "label_text": format_coloured(o.label),
                    "size": o.size,
                    "r": r_of(o.label.partition),
                    "size_predicted_by_r": predicted,
                    "prediction_matches": predicted == o.size,
                }
            )
    else:
        for k in enumerate_superclasses(args.n, field):
            rows.append(
                {
                    "label": k.label.to_json(),
                    "label_text": format_coloured(k.label),
                    "size": k.size,
                }
            )
    _emit_json(
        {
            "group": _group_json(args.n, field),
            "dual": bool(args.dual),
            "orbits": rows,
        },
        args.output,
    )
    return 0


def cmd_verify(args) -> int:
    field = _field(args)
    table = build_table(args.n, field, validate=args.validate)
    checks = verify_theory(table)
    if args.format == "json":
        _emit_json(
            {
                "group": _group_json(args.n, field),
                "checks": [
                    {"check": name, "passed": ok, "detail": detail}
                    for name, ok, detail in checks
                ],
                "all_passed": all(ok for _, ok, _ in checks),
            },
            args.output,
        )
    else:
        lines = [
            f"{'PASS' if ok else 'FAIL'} {name}: {detail}"
            for name, ok, detail in checks
        ]
        _emit("\n".join(lines) + "\n", args.output)
    return 0 if all(ok for _, ok, _ in checks) else 1


def cmd_plancherel(args) -> int:
    field = _field(args)
    table = build_table(args.n, field, validate=args.validate)
    report = plancherel(table)
    _emit_json(
        {
            "group": _group_json(args.n, field),
            "weights": [[label, w] for label, w in report["weights"]],
            "identity_holds": report["identity_holds"],
            "failures": report["failures"],
        },
        args.output,
    )
    return 0 if report["identity_holds"] else 1


def _parse_int_list(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.split(",") if t.strip())


def cmd_tower(args) -> int:
    tower = FieldTower(args.p, _parse_int_list(args.degrees))
    base = tower.field(1)
    levels = _parse_int_list(args.levels) if args.levels else None

    if args.mode == "convergence":
        if not args.pi or not args.superclass:
            print("convergence mode needs --pi and --superclass", file=sys.stderr)
            return 2
        pi = parse_partition(args.pi, args.n)
        colours = parse_colours(args.colours or "", base)
        from .partitions import ColouredPartition

        label = TowerLabel.from_level1(
            tower, ColouredPartition(pi, colours, dual=True)
        )
        col = parse_coloured(args.superclass, args.n, base)
        report = convergence_report(label, col, max_level=args.max_level)
        report["label_text"] = format_coloured(label.level_label(label.m0))
        report["superclass_text"] = format_coloured(col)
        _emit_json(report, args.output)
        if report["verdict"] == "no defined levels in range":
            return 2
        return 0 if report["stabilized"] or report["verdict"].startswith("norm decays") else 1

    if args.mode == "fsc":
        report = fsc_diagnostic(args.n, tower, levels)
        _emit_json(report, args.output)
        ok = (
            report["stable_superclasses_match_center"]
            and report["stable_dual_orbits_match_superdiagonal"]
        )
        return 0 if ok else 1

    report = plancherel_profile(args.n, tower, levels)
    _emit_json(report, args.output)
    return 0 if report["strictly_increasing"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superchar",
        description="Exact supercharacter tables of unitriangular groups, "
        "two ways, with every identity checked in exact arithmetic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, tower_flags=False):
        p.add_argument("--n", type=int, required=True, help="matrix size")
        p.add_argument("--p", type=int, required=True, help="field characteristic")
        if tower_flags:
            p.add_argument(
                "--degrees",
                default="1,2,6",
                help="comma-separated divisor chain of field degrees",
            )
        else:
            p.add_argument(
                "--degree", type=int, default=1, help="field degree m for GF(p^m)"
            )
        p.add_argument("--output", help="write to a file instead of stdout")

    p = sub.add_parser("table", help="build and export the supercharacter table")
    common(p)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument(
        "--validate",
        choices=["full", "spot", "off"],
        default=None,
        help="route cross-check density (default: full up to |A|=4096, then spot)",
    )
    p.set_defaults(handler=cmd_table)

    p = sub.add_parser("classify", help="canonical label of a matrix or character")
    common(p)
    p.add_argument("--matrix", required=True, help='entries, e.g. "a12=1,a13=1"')
    p.add_argument(
        "--dual",
        action="store_true",
        help="read the matrix as a character pairing matrix",
    )
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("orbits", help="list superclasses or dual orbits with sizes")
    common(p)
    p.add_argument("--dual", action="store_true", help="list dual orbits")
    p.add_argument(
        "--validate",
        choices=["full", "off"],
        default="off",
        help="check dual BFS moves against the defining property",
    )
    p.set_defaults(handler=cmd_orbits)

    p = sub.add_parser("verify", help="run the axiom and identity suite")
    common(p)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--validate", choices=["full", "spot", "off"], default=None)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("plancherel", help="regular-character weights and identity")
    common(p)
    p.add_argument("--validate", choices=["full", "spot", "off"], default=None)
    p.set_defaults(handler=cmd_plancherel)

    p = sub.add_parser("tower", help="AF-tower convergence and growth reports")
    common(p, tower_flags=True)
    p.add_argument(
        "--mode",
        choices=["convergence", "fsc", "plancherel"],
        default="convergence",
    )
    p.add_argument("--pi", help='dual label partition, e.g. "1,4/2/3"')
    p.add_argument(
        "--colours",
        help='level-1 arc colours, e.g. "1,4=1"; extended up the tower',
    )
    p.add_argument(
        "--superclass",
        help='superclass label with level-1 colours, e.g. "1/2,3/4 | 2,3=1"',
    )
    p.add_argument("--levels", help="comma-separated levels for fsc/plancherel")
    p.add_argument("--max-level", type=int, default=None, dest="max_level")
    p.set_defaults(handler=cmd_tower)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except AssertionError as exc:
        # internal consistency failures, route disagreement included
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
