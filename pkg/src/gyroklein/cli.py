"""``gyroklein`` command line.

Exit codes: 0 success, 1 usage or parse error, 2 axiom or property
violation, 3 infeasible search.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any

from . import checks, errors
from .analytic import parse_model
from .finite import (
    FiniteGyrogroup,
    classify_subgyrogroup,
    cosets,
    enumerate_subgyrogroups,
    gamma_m,
    gyr_group,
    right_nucleus,
    validate_gyrogroup,
)
from .klein import (
    family_to_json,
    gyr_restricted_geometry,
    is_n_transitive,
    restricted_gyr_obstruction,
    transitivity_report,
    translation_geometry,
)
from .tables import read_table

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, EXIT_INFEASIBLE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dump(report: dict) -> str:
    return json.dumps(report, indent=2)


def _gyration_section(G: FiniteGyrogroup) -> dict[str, Any]:
    return {
        "is_group": G.is_group(),
        "nontrivial": [g.to_json() for g in G.nontrivial_gyrations],
        "gyr_group_order": len(gyr_group(G)),
    }


def _text_lines(report: dict) -> list[str]:
    lines = [f"source: {report['source']}"]
    for name, sec in report["sections"].items():
        if name == "validation":
            lines.append(f"valid gyrogroup: n={sec['n']}, identity={sec['identity']}")
        elif name == "gyrations":
            if sec["is_group"]:
                lines.append("group: gyrations trivial")
            else:
                cyc = ", ".join(g["cycles"] for g in sec["nontrivial"])
                lines.append(f"gyrogroup: {len(sec['nontrivial'])} nontrivial gyration(s): {cyc}")
                lines.append(f"|GYR(G)| = {sec['gyr_group_order']}")
        elif name == "nucleus":
            lines.append("right nucleus: {" + ", ".join(map(str, sec)) + "}")
        elif name == "subgyrogroups":
            lines.append(f"subgyrogroups ({len(sec)}):")
            for r in sec:
                flags = [k for k in ("is_L", "is_strong", "is_characteristic") if r[k]]
                lines.append(" ".join(["  {" + ", ".join(map(str, r["carrier"])) + "}"] + flags))
        elif name == "transitivity":
            lines.append(
                f"(G, Gamma_m) {sec['n']}-transitive: {str(sec['transitive']).lower()}, "
                f"sharp: {str(sec['sharp']).lower()} "
                f"(witnesses per tuple pair {sec['witness_counts_min']}..{sec['witness_counts_max']})"
            )
        elif name == "cosets":
            lines.append(f"cosets of {{{', '.join(map(str, sec['subgroup']))}}}: {sec['cosets']}")
            lines.append(f"  strong: {str(sec['strong']).lower()}, partition: {str(sec['partition']).lower()}")
        elif name == "gamma_m_order":
            lines.append(f"|Gamma_m| = {sec}")
        elif name == "restricted_gyr":
            lines.append(
                f"(G\\{{e}}, GYR) transitive: {str(sec['transitive']).lower()}"
                + (f"; no gyration sends {sec['obstruction'][0]} to {sec['obstruction'][1]}" if sec["obstruction"] else "")
            )
    return lines


def _load(path: str) -> FiniteGyrogroup:
    return validate_gyrogroup(read_table(path))


def build_report(path: str, args: argparse.Namespace | None = None) -> dict:
    G = _load(path)
    sections: dict[str, Any] = {
        "validation": {"n": G.n, "identity": G.identity, "inverses": list(G.inv)},
        "gyrations": _gyration_section(G),
    }
    wants_default = args is None or not any(
        [args.nucleus, args.subgyrogroups, args.transitivity, args.cosets, args.gamma_m_order, args.restricted_gyr]
    )
    if wants_default or args.nucleus:
        sections["nucleus"] = sorted(right_nucleus(G))
    if args is not None:
        if args.subgyrogroups:
            sections["subgyrogroups"] = [r.to_json() for r in enumerate_subgyrogroups(G)]
        if args.transitivity:
            sections["transitivity"] = transitivity_report(translation_geometry(G), args.transitivity).to_json()
        if args.cosets:
            H = frozenset(int(x) for x in args.cosets.split(","))
            rep = classify_subgyrogroup(G, H)
            cs = cosets(G, H)
            partition = sum(len(c) for c in cs) == G.n
            sections["cosets"] = {
                "subgroup": sorted(H),
                "cosets": family_to_json(cs),
                "strong": rep.is_strong,
                "L": rep.is_L,
                "partition": partition,
            }
        if args.gamma_m_order:
            sections["gamma_m_order"] = len(gamma_m(G))
        if args.restricted_gyr:
            if G.n >= 2:
                geo = gyr_restricted_geometry(G)
                obs = restricted_gyr_obstruction(G)
                sections["restricted_gyr"] = {
                    "points": list(geo.labels),
                    "transitive": is_n_transitive(geo, 1),
                    "obstruction": list(obs) if obs else None,
                }
    return {"source": path, "sections": sections}


def cmd_verify(args) -> int:
    report = build_report(args.file)
    print(_dump(report) if args.json else "\n".join(_text_lines(report)))
    return EXIT_OK


def cmd_analyze(args) -> int:
    report = build_report(args.file, args)
    print(_dump(report) if args.json else "\n".join(_text_lines(report)))
    return EXIT_OK


def cmd_analytic(args) -> int:
    try:
        model = parse_model(args.model, tolerance=args.tolerance)
    except ValueError as exc:
        print(f"gyroklein analytic: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    names = [c.strip() for c in args.check.split(",") if c.strip()]
    if names == ["all"]:
        names = checks.suite_names(model)
    unknown = [n for n in names if n not in checks.SUITES]
    if unknown:
        print(f"gyroklein analytic: error: unknown check(s) {unknown}; choose from {sorted(checks.SUITES)}", file=sys.stderr)
        return EXIT_USAGE
    config = checks.SuiteConfig(seed=args.seed, samples=args.samples, max_radius=args.max_radius)
    reports = []
    for name in names:
        try:
            reports.append(config.run(name, model))
        except ValueError as exc:
            print(f"gyroklein analytic: error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    if args.json:
        print(_dump({"model": model.spec, "reports": [r.to_json() for r in reports]}))
    else:
        for r in reports:
            status = "pass" if r.passed else "FAIL"
            print(f"{r.check:16s} {status}  max_error={r.max_error:.3e}  tol={r.tolerance:.0e}  samples={r.samples}  seed={r.seed}")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VIOLATION


def make_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="gyroklein", description="Gyrogroups and their Klein geometries.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="validate a Cayley table and list its gyrations")
    v.add_argument("file")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("analyze", help="nucleus, subgyrogroups, cosets and transitivity of a table")
    a.add_argument("file")
    a.add_argument("--nucleus", action="store_true")
    a.add_argument("--subgyrogroups", action="store_true")
    a.add_argument("--transitivity", type=int, metavar="N")
    a.add_argument("--cosets", metavar="a,b,c", help="comma-separated carrier of a subgyrogroup")
    a.add_argument("--gamma-m-order", action="store_true")
    a.add_argument("--restricted-gyr", action="store_true")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_analyze)

    n = sub.add_parser("analytic", help="seeded property suites for the disk and ball models")
    n.add_argument("--model", required=True, help="disk, mobius-ball:d or einstein-ball:d")
    n.add_argument("--check", default="all", help=f"comma list from {sorted(checks.SUITES)} or 'all'")
    n.add_argument("--samples", type=int)
    n.add_argument("--seed", type=int, default=0)
    n.add_argument("--max-radius", type=float)
    n.add_argument("--tolerance", type=float, default=1e-9)
    n.add_argument("--json", action="store_true")
    n.set_defaults(func=cmd_analytic)
    return ap


def main(argv: list[str] | None = None) -> int:
    try:
        args = make_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except errors.TableFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except errors.GyrogroupAxiomError as exc:
        print(f"not a gyrogroup: {exc}", file=sys.stderr)
        if exc.counterexample:
            print(f"counterexample: {list(exc.counterexample)}", file=sys.stderr)
        return EXIT_VIOLATION
    except errors.Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (errors.NotASubgyrogroup, errors.EmptySubset, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
