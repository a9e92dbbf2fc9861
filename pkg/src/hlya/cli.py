"""Command-line front end.

Exit codes: 0 = analysis ran (reported failures are data, not errors),
2 = invalid input (parse/validation), 3 = internal theorem violation --
the latter should never happen on shipped data and indicates a bug.
"""

from __future__ import annotations

import argparse
import sys

from .algebra import check_axioms
from .coboundary import OPERATORS, operator_by_level
from .cohomology import cohomology_report
from .deformation import (
    DEFAULT_ORDER,
    infinitesimal,
    obstruction_pair,
    second_order_probe,
    solve_second_order,
    trivialize,
    verify_deformation,
    verify_equivalence,
)
from .derivations import DEFAULT_K_MAX, check_der_is_lie, derivation_space
from .errors import InputError, TheoremViolationError
from .exactlin import rat_str
from . import serialize

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_THEOREM = 3


def _report_check(args) -> dict:
    a = serialize.load_algebra(args.algebra)
    report = check_axioms(a)
    return {
        "command": "check",
        "algebra": a.name or args.algebra,
        "dim": a.dim,
        "passed": {str(k): v for k, v in report.passed.items()},
        "counterexamples": {str(k): list(v) for k, v in report.counterexamples.items()},
        "all_passed": report.all_passed,
    }


def _report_cohomology(args) -> dict:
    a = serialize.load_algebra(args.algebra)
    report = cohomology_report(a)
    return {
        "command": "cohomology",
        "algebra": a.name or args.algebra,
        "dims": report.dims(),
        "h1_basis": [
            [rat_str(x) for x in report.h1.basis.column(j)] for j in range(report.h1.dim)
        ],
    }


def _report_derive(args) -> dict:
    a = serialize.load_algebra(args.algebra)
    closure = check_der_is_lie(a, args.k_max)
    spaces = {k: derivation_space(a, k) for k in range(args.k_max + 1)}
    return {
        "command": "derive",
        "algebra": a.name or args.algebra,
        "k_max": args.k_max,
        "dims": {str(k): sp.dim for k, sp in spaces.items()},
        "bases": {
            str(k): [
                [[rat_str(x) for x in row] for row in m.data] for m in sp.matrices(a.dim)
            ]
            for k, sp in spaces.items()
        },
        "closure_checked_pairs": closure.checked_pairs,
    }


def _deformation_report(report) -> dict:
    return {
        "ok": report.ok,
        "failures": {
            f"eq{eq}@n={n}": list(v)
            for (eq, n), v in sorted(report.failures.items())
            if v is not None
        },
    }


def _report_deform_check(args) -> dict:
    d = serialize.load_deformation(args.deformation)
    report = verify_deformation(d)
    return {
        "command": "deform-check",
        "base": d.base.name,
        "order": d.order,
        **_deformation_report(report),
    }


def _report_trivialize(args) -> dict:
    d = serialize.load_deformation(args.deformation)
    result = trivialize(d)
    out = {"command": "trivialize", "base": d.base.name, "order": d.order,
           "trivial": result.trivial}
    if result.trivial:
        out["gauge"] = serialize.gauge_to_obj(result.gauge)
    else:
        out["obstructed_at"] = result.obstructed_at
        f_r, g_r = result.representative
        out["representative"] = {
            "f": serialize.cochain_to_obj(f_r),
            "g": serialize.cochain_to_obj(g_r),
        }
    return out


def _report_equiv(args) -> dict:
    d1 = serialize.load_deformation(args.deformation)
    d2 = serialize.load_deformation(args.other)
    p = serialize.load_gauge(args.gauge)
    return {
        "command": "equiv",
        "base": d1.base.name,
        "order": d1.order,
        "equivalent": verify_equivalence(d1, d2, p),
    }


def _report_obstruct(args) -> dict:
    d = serialize.load_deformation(args.deformation)
    f1, g1 = infinitesimal(d)
    pair = obstruction_pair(d.base, f1, g1)
    out = {
        "command": "obstruct",
        "base": d.base.name,
        "in_z4z5": pair.in_z4z5,
        "F": serialize.cochain_to_obj(pair.first),
        "G": serialize.cochain_to_obj(pair.second),
    }
    if d.order >= 2 and not (d.f_seq[2].is_zero() and d.g_seq[2].is_zero()):
        f2, g2 = d.f_seq[2], d.g_seq[2]
    else:
        solved = solve_second_order(d.base, f1, g1)
        f2, g2 = solved if solved is not None else (None, None)
    if f2 is None:
        out["probe"] = None
        out["probe_note"] = "no second-order term solves the extension equation"
    else:
        try:
            probe = second_order_probe(d.base, f1, g1, f2, g2)
        except InputError as exc:
            out["probe"] = None
            out["probe_note"] = str(exc)
        else:
            out["probe"] = {
                f"eq{eq}@n=2": None if v is None else list(v)
                for eq, v in sorted(probe.failures.items())
            }
            out["extension_closes"] = probe.extension_closes
    return out


def _report_dump_operator(args) -> dict:
    a = serialize.load_algebra(args.algebra)
    op = operator_by_level(a, args.level)
    return {
        "command": "dump-operator",
        "algebra": a.name or args.algebra,
        "level": args.level,
        "domain_dims": [s.dim for s in op.domain],
        "codomain_dims": [s.dim for s in op.codomain],
        "matrix": serialize.matrix_to_obj(op.matrix),
    }


def _render_table(obj, indent: int = 0, out=None) -> str:
    lines = [] if out is None else out
    pad = "  " * indent
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                _render_table(v, indent + 1, lines)
            else:
                lines.append(f"{pad}{k}: {v if v or v == 0 or v is False else '-'}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                _render_table(v, indent, lines)
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{obj}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hlya",
        description="Exact computations for twisted binary/ternary algebras: "
        "axioms, cohomology, derivations, deformations.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--k-max", type=int, default=DEFAULT_K_MAX, dest="k_max")
    common.add_argument("--order", type=int, default=DEFAULT_ORDER)
    common.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(parents=[common], name="check", help="verify the defining axioms of an algebra file")
    p.add_argument("algebra")
    p.set_defaults(run=_report_check)

    p = sub.add_parser(parents=[common], name="cohomology", help="cocycle/coboundary/cohomology dimensions")
    p.add_argument("algebra")
    p.set_defaults(run=_report_cohomology)

    p = sub.add_parser(parents=[common], name="derive", help="twisted derivation spaces and closure check")
    p.add_argument("algebra")
    p.set_defaults(run=_report_derive)

    p = sub.add_parser(parents=[common], name="deform-check", help="verify the deformation equations")
    p.add_argument("deformation")
    p.set_defaults(run=_report_deform_check)

    p = sub.add_parser(parents=[common], name="trivialize", help="construct a trivializing gauge or report the obstruction")
    p.add_argument("deformation")
    p.set_defaults(run=_report_trivialize)

    p = sub.add_parser(parents=[common], name="equiv", help="check that a gauge carries one deformation to another")
    p.add_argument("deformation")
    p.add_argument("other")
    p.add_argument("gauge")
    p.set_defaults(run=_report_equiv)

    p = sub.add_parser(parents=[common], name="obstruct", help="obstruction pair of the infinitesimal + second-order probe")
    p.add_argument("deformation")
    p.set_defaults(run=_report_obstruct)

    p = sub.add_parser(parents=[common], name="dump-operator", help="dump one coboundary operator matrix")
    p.add_argument("algebra")
    p.add_argument("level", choices=sorted(OPERATORS))
    p.set_defaults(run=_report_dump_operator)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.run(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TheoremViolationError as exc:
        print(f"theorem violation: {exc}", file=sys.stderr)
        return EXIT_THEOREM
    if args.format == "json":
        text = serialize.dumps(report)
    else:
        text = _render_table(report) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
