"""Command-line surface.

Exit codes: 0 = computed (verdict true where the command has one),
1 = computed with verdict false, 2 = input or validation error.
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction

from . import asymptotics, datasets, genericity, monodromy, topzeta
from .algebra import RationalFunctionNF, default_var_names
from .report import digest_bytes, make_report, render_json, render_text
from .resolution import ResolutionDatum, SchemaError, dumps_datum, loads_datum


class InputError(Exception):
    pass


def _read_file(path: str) -> tuple[str, str]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return text, digest_bytes(text.encode("utf-8"))


def _load_validated(path: str) -> tuple[ResolutionDatum, str]:
    text, digest = _read_file(path)
    datum = loads_datum(text)
    validation = datum.validate()
    if not validation.ok:
        raise InputError(
            "invalid dataset:\n" + "\n".join(f"  - {v}" for v in validation.violations)
        )
    return datum, digest


def _rf_payload(z: RationalFunctionNF) -> dict:
    names = default_var_names(z.nvars)
    return {
        "string": z.format(names),
        "numerator": [
            {"exponents": list(e), "coefficient": str(c)} for e, c in z.numerator.sorted_terms()
        ],
        "denominator": [
            {"coefficients": list(f.coefficients), "constant": f.constant, "exponent": e}
            for f, e in z.denominator
        ],
    }


def _subtorus_payload(t: monodromy.Subtorus) -> dict:
    return {"primitive": list(t.primitive), "phase": str(t.phase)}


def _emit(report: dict, args) -> None:
    if args.format == "json":
        sys.stdout.write(render_json(report))
    else:
        sys.stdout.write(render_text(report, quiet=args.quiet))


def _emit_datum(datum: ResolutionDatum, args) -> None:
    text = dumps_datum(datum)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        if not args.quiet:
            sys.stdout.write(f"wrote {args.output}\n")
    else:
        sys.stdout.write(text)


# -- commands -----------------------------------------------------------------


def cmd_validate(args) -> int:
    text, digest = _read_file(args.file)
    datum = loads_datum(text)
    validation = datum.validate()
    report = make_report(
        "validate",
        {"file": args.file},
        {"violations": list(validation.violations), "warnings": list(validation.warnings)},
        verdict=validation.ok,
        input_digest=digest,
    )
    _emit(report, args)
    return 0 if validation.ok else 1


def cmd_topzeta(args) -> int:
    datum, digest = _load_validated(args.file)
    zeta = topzeta.build_topzeta(datum)
    if args.diagonal:
        zeta = topzeta.specialize_diagonal(zeta)
    report = make_report(
        "topzeta",
        {"file": args.file, "diagonal": bool(args.diagonal)},
        {"zeta": _rf_payload(zeta)},
        input_digest=digest,
    )
    _emit(report, args)
    return 0


def cmd_poles(args) -> int:
    datum, digest = _load_validated(args.file)
    zeta = topzeta.build_topzeta(datum)
    pole_report = topzeta.pole_orders(zeta, topzeta.candidate_hyperplanes(datum))
    names = default_var_names(zeta.nvars)
    result = {
        "zeta": _rf_payload(zeta),
        "candidates": [
            {"divisor": c.divisor_id, "form": c.form.format(names), "order": order}
            for c, order in pole_report.entries
        ],
        "classes": [
            {
                "form": cls.representative.format(names),
                "order": cls.order,
                "divisors": list(cls.divisor_ids),
            }
            for cls in pole_report.classes
        ],
    }
    report = make_report("poles", {"file": args.file}, result, input_digest=digest)
    _emit(report, args)
    return 0


def cmd_monzeta(args) -> int:
    datum, digest = _load_validated(args.file)
    zeta = monodromy.local_monodromy_zeta(datum, args.point)
    divisor = monodromy.torus_divisor(zeta)
    result = {
        "point": args.point,
        "factors": {
            "string": zeta.format(),
            "terms": [
                {"vector": list(v), "exponent": e} for v, e in sorted(zeta.factors.items())
            ],
        },
        "divisor": [
            {**_subtorus_payload(t), "multiplicity": m} for t, m in divisor.sorted_components()
        ],
        "cancelled": [
            {
                **_subtorus_payload(c.subtorus),
                "contributors": [{"divisor": d, "chi": chi} for d, chi in c.contributors],
            }
            for c in monodromy.cancellation_diagnostic(datum, args.point)
        ],
    }
    report = make_report(
        "monzeta", {"file": args.file, "point": args.point}, result, input_digest=digest
    )
    _emit(report, args)
    return 0


def cmd_support(args) -> int:
    datum, digest = _load_validated(args.file)
    support = sorted(monodromy.monodromy_support(datum), key=monodromy.Subtorus.sort_key)
    report = make_report(
        "support",
        {"file": args.file},
        {"subtori": [_subtorus_payload(t) for t in support]},
        input_digest=digest,
    )
    _emit(report, args)
    return 0


def cmd_check_mc(args) -> int:
    datum, digest = _load_validated(args.file)
    mc = monodromy.check_monodromy_conjecture(datum)
    names = default_var_names(datum.ncols)
    result = {
        "support": [_subtorus_payload(t) for t in mc.support],
        "candidates": [
            {
                "divisor": e.candidate.divisor_id,
                "form": e.candidate.form.format(names),
                "order": e.order,
                **_subtorus_payload(e.subtorus),
                "included": e.included,
            }
            for e in mc.entries
        ],
        "witnesses": [
            {"divisor": e.candidate.divisor_id, "form": e.candidate.form.format(names)}
            for e in mc.witnesses()
        ],
    }
    report = make_report(
        "check-mc", {"file": args.file}, result, verdict=mc.verdict, input_digest=digest
    )
    _emit(report, args)
    return 0 if mc.verdict else 1


def cmd_augment(args) -> int:
    datum, _ = _load_validated(args.file)
    k = None if args.symbolic else args.k
    aug = genericity.augment(datum, k)
    _emit_datum(aug.datum, args)
    return 0


def cmd_avg_check(args) -> int:
    datum, digest = _load_validated(args.file)
    avg = genericity.check_avg(datum)
    result = {
        "checks": [
            {
                "divisor": c.divisor_id,
                "neighbour": c.neighbour_id,
                "ratio": str(c.value),
                "ok": c.ok,
            }
            for c in avg.checks
        ],
        "violations": [
            f"{c.divisor_id}: discrepancy*b[{c.neighbour_id}]/b[{c.divisor_id}] = {c.value} "
            "is an integer"
            for c in avg.violations
        ],
    }
    report = make_report(
        "avg check", {"file": args.file}, result, verdict=avg.ok, input_digest=digest
    )
    _emit(report, args)
    return 0 if avg.ok else 1


def cmd_avg_make(args) -> int:
    datum, digest = _load_validated(args.file)
    ample = genericity.make_avg(datum)
    check = genericity.check_avg(datum, ample)
    result = {"d": ample.d, "b": dict(sorted(ample.b.items())), "passes_check": check.ok}
    report = make_report("avg make", {"file": args.file}, result, input_digest=digest)
    if getattr(args, "output", None):
        from dataclasses import replace

        divisors = [
            replace(d, ample_coeff=ample.b[d.id]) if d.exceptional else d
            for d in datum.divisors
        ]
        updated = ResolutionDatum(
            ambient_dim=datum.ambient_dim,
            p=datum.p,
            divisors=divisors,
            strata=list(datum.strata),
            points=list(datum.points),
            ample=ample,
            degrees=dict(datum.degrees),
            adjacent_pairs=list(datum.adjacent_pairs),
            augmented_k=datum.augmented_k,
        )
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(dumps_datum(updated))
    _emit(report, args)
    return 0


def cmd_strong_mc(args) -> int:
    datum, digest = _load_validated(args.file)
    certificate = genericity.strong_mc_certificate(datum, args.k)
    names = default_var_names(datum.p + 1)
    result = {
        "k": certificate.k,
        "contingency": certificate.contingency,
        "non_resonance": [
            {"divisor": c.divisor_id, "neighbour": c.neighbour_id, "ratio": str(c.value), "ok": c.ok}
            for c in certificate.avg.checks
        ],
        "threshold": None
        if certificate.threshold is None
        else {
            "k0": certificate.threshold.k0,
            "coincidences": [
                {"divisor": w.divisor_id, "other": w.other_id, "k": str(w.k_value)}
                for w in certificate.threshold.witnesses
            ],
        },
        "components": [
            {
                "divisor": c.divisor_id,
                "hyperplane": c.hyperplane.format(names),
                "root": str(c.root),
                "location": f"-{c.location_numerator}/({c.location_denominator})",
                "residue": str(c.residue),
            }
            for c in certificate.components
        ],
        "trivial": list(certificate.trivial_ids),
        "refusals": list(certificate.refusals),
    }
    report = make_report(
        "strong-mc",
        {"file": args.file, "k": args.k},
        result,
        verdict=certificate.ok,
        input_digest=digest,
    )
    _emit(report, args)
    return 0 if certificate.ok else 1


_TERM_RE = re.compile(r"^([+-]?)(\d+)?(?:\*?k(?:\^(\d+))?)?$")


def _parse_leading_term(text: str) -> asymptotics.LeadingTerm:
    match = _TERM_RE.match(text.replace(" ", ""))
    if not match or (match.group(2) is None and "k" not in text):
        raise InputError(f"cannot parse leading term {text!r} (expected forms like 5k^2, -k, 7)")
    sign = -1 if match.group(1) == "-" else 1
    coefficient = int(match.group(2)) if match.group(2) else 1
    if "k" in text:
        exponent = int(match.group(3)) if match.group(3) else 1
    else:
        exponent = 0
    return asymptotics.LeadingTerm(sign, coefficient, exponent)


def _leading_payload(term: asymptotics.LeadingTerm) -> dict:
    return {
        "sign": term.sign,
        "coefficient": term.coefficient,
        "exponent": term.exponent,
        "exact": term.exact,
        "string": str(term),
    }


def cmd_asym(args) -> int:
    if args.asym_command == "complement":
        term = asymptotics.leading_chi_complement(args.dim, args.deg)
        result = {"leading": _leading_payload(term)}
    elif args.asym_command == "section":
        term = asymptotics.leading_chi_section(args.dim, args.deg)
        result = {"leading": _leading_payload(term)}
    elif args.asym_command == "ambient":
        term = asymptotics.leading_chi_ambient(args.dim, args.deg)
        result = {"leading": _leading_payload(term)}
    else:
        tokens = [t for chunk in args.terms for t in chunk.split(",") if t]
        terms = [_parse_leading_term(t) for t in tokens]
        outcome = asymptotics.dominance_check(terms)
        result = {
            "vanishes": outcome.vanishes,
            "top": None if outcome.top is None else _leading_payload(outcome.top),
        }
    report = make_report(f"asym {args.asym_command}", vars_payload(args), result)
    _emit(report, args)
    return 0


def vars_payload(args) -> dict:
    skip = {"func", "format", "quiet"}
    return {k: v for k, v in vars(args).items() if k not in skip and v is not None}


def cmd_example(args) -> int:
    kwargs = {}
    if args.name == "sixone":
        if args.b1 is not None:
            kwargs["b1"] = args.b1
        if args.b2 is not None:
            kwargs["b2"] = args.b2
    elif args.b1 is not None or args.b2 is not None:
        raise InputError("--b1/--b2 apply to the sixone example only")
    try:
        datum = datasets.build_example(args.name, **kwargs)
    except KeyError as exc:
        raise InputError(str(exc)) from exc
    _emit_datum(datum, args)
    return 0


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--quiet", action="store_true")

    parser = argparse.ArgumentParser(
        prog="logzeta",
        description="Exact zeta functions, monodromy support and pole certificates "
        "from embedded-resolution data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="validate a dataset file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("topzeta", parents=[common], help="topological zeta function")
    s.add_argument("file")
    s.add_argument("--diagonal", action="store_true", help="specialise all variables to one")
    s.set_defaults(func=cmd_topzeta)

    s = sub.add_parser("poles", parents=[common], help="candidate hyperplanes and pole orders")
    s.add_argument("file")
    s.set_defaults(func=cmd_poles)

    s = sub.add_parser("monzeta", parents=[common], help="local monodromy zeta function")
    s.add_argument("file")
    s.add_argument("--point", required=True)
    s.set_defaults(func=cmd_monzeta)

    s = sub.add_parser("support", parents=[common], help="monodromy support")
    s.add_argument("file")
    s.set_defaults(func=cmd_support)

    s = sub.add_parser("check-mc", parents=[common], help="monodromy inclusion check")
    s.add_argument("file")
    s.set_defaults(func=cmd_check_mc)

    s = sub.add_parser("augment", parents=[common], help="attach the generic-section column")
    s.add_argument("file")
    group = s.add_mutually_exclusive_group(required=True)
    group.add_argument("--k", type=int)
    group.add_argument("--symbolic", action="store_true")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_augment)

    avg = sub.add_parser("avg", help="non-resonance subcone operations")
    avg_sub = avg.add_subparsers(dest="avg_command", required=True)
    s = avg_sub.add_parser("check", parents=[common], help="test the non-resonance condition")
    s.add_argument("file")
    s.set_defaults(func=cmd_avg_check)
    s = avg_sub.add_parser("make", parents=[common], help="perturb into the non-resonant subcone")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_avg_make)

    s = sub.add_parser("strong-mc", parents=[common], help="order-one pole certificates")
    s.add_argument("file")
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_strong_mc)

    asym = sub.add_parser("asym", help="leading-term calculus")
    asym_sub = asym.add_subparsers(dest="asym_command", required=True)
    for name in ("complement", "section", "ambient"):
        s = asym_sub.add_parser(name, parents=[common])
        s.add_argument("--dim", type=int, required=True)
        s.add_argument("--deg", type=int, required=True)
        s.set_defaults(func=cmd_asym)
    s = asym_sub.add_parser("dominance", parents=[common])
    s.add_argument(
        "terms",
        nargs="+",
        metavar="TERM",
        help="terms like 5k^2, -k, 7; comma-separate or put -- first for leading minus",
    )
    s.set_defaults(func=cmd_asym)

    s = sub.add_parser("example", parents=[common], help="emit a bundled dataset")
    s.add_argument("name", choices=sorted(datasets.BUILDERS))
    s.add_argument("-o", "--output")
    s.add_argument("--b1", type=int)
    s.add_argument("--b2", type=int)
    s.set_defaults(func=cmd_example)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, ZeroDivisionError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
