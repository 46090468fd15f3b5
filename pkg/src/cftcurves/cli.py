"""Command-line interface.

Exit codes: 0 success, 1 a checked claim was not reproduced, 2 bad input,
3 an internal invariant was violated.  Reports go to stdout as a summary
table (default) or JSON (--format json); --json PATH also writes the JSON.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .classgroup import BoundsExceeded, ray_class_group
from .config import ConfigError, load_curve, load_experiment, parse_yaml_value, thread_count
from .curve import CurveError
from .experiment import compare_curves, run_experiment
from .functions import Divisor
from .lseries import (
    TheoryViolation,
    characters,
    constant_twist_check,
    has_poles_off_one,
    is_constant,
    l_polynomial,
    predicted_degree,
    primitive,
)
from .zeta import zeta_l_polynomial

EXIT_OK, EXIT_VERDICT, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# output helpers


def _table(rows: list[tuple], header: tuple) -> str:
    rows = [tuple(str(c) for c in r) for r in rows]
    widths = [max(len(str(h)), *(len(r[i]) for r in rows)) if rows else len(str(h))
              for i, h in enumerate(header)]
    line = "  ".join(str(h).ljust(w) for h, w in zip(header, widths))
    out = [line, "  ".join("-" * w for w in widths)]
    out += ["  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(out)


def _emit(args, report: dict, summary: str) -> None:
    text = json.dumps(report, indent=2, sort_keys=False)
    if args.json:
        Path(args.json).write_text(text + "\n")
    if args.format == "json":
        print(text)
    else:
        print(summary)


def _modulus(curve, text: str | None) -> Divisor:
    if not text:
        return Divisor()
    rec = parse_yaml_value(text, "--modulus")
    try:
        D = Divisor.from_record(curve, rec)
    except (TypeError, ValueError) as exc:
        raise InputError(f"--modulus: {exc}") from None
    if not D.is_effective():
        raise InputError("--modulus must be effective")
    if any(P.is_infinite for P in D.support):
        raise InputError("--modulus may not contain the place at infinity")
    return D


# ---------------------------------------------------------------------------
# commands


def cmd_zeta(args) -> int:
    curves = [load_curve(c) for c in args.curves]
    entries, rows = [], []
    status = EXIT_OK
    for C in curves:
        P = zeta_l_polynomial(C)
        counts = [C.count_points(m) for m in range(1, 2 * C.genus + 1)]
        fe, weil = P.functional_equation_ok(), P.weil_ok()
        if not (fe and weil and P.degree == 2 * C.genus and P.int_coeffs()[0] == 1):
            status = EXIT_INVARIANT
        entries.append({
            "curve": C.to_record(), "genus": C.genus, "point_counts": counts,
            "L_polynomial": P.int_coeffs(), "class_number": P.value_at_one().to_int(),
            "functional_equation": fe, "weil": weil,
        })
        rows.append((C.name, C.genus, counts, str(P), P.value_at_one().to_int(), fe, weil))
    report = {"command": "zeta", "curves": entries}
    summary = _table(rows, ("curve", "g", "N_1..N_2g", "P(T)", "h", "fe", "weil"))
    if len(curves) > 1:
        equal = all(e["L_polynomial"] == entries[0]["L_polynomial"] for e in entries)
        report["all_equal"] = equal
        summary += f"\nzeta functions equal: {equal}"
        if args.expect_equal and not equal and status == EXIT_OK:
            status = EXIT_VERDICT
    _emit(args, report, summary)
    return status


def cmd_places(args) -> int:
    C = load_curve(args.curve)
    per, rows = [], []
    status = EXIT_OK
    for d in range(1, args.max_degree + 1):
        ps = C.places_of_degree(d)
        mob = C.place_counts_via_mobius(d)
        if mob != len(ps):
            status = EXIT_INVARIANT
        kinds = {k: sum(P.kind == k for P in ps) for k in ("inf", "split", "inert", "ram")}
        per.append({"degree": d, "count": len(ps), "mobius": mob, "kinds": kinds,
                    "places": [P.descriptor() for P in ps] if d <= args.list_upto else None})
        rows.append((d, len(ps), mob, kinds["split"], kinds["inert"], kinds["ram"] + kinds["inf"]))
    report = {"command": "places", "curve": C.to_record(), "degrees": per}
    summary = _table(rows, ("deg", "places", "mobius", "split", "inert", "ram/inf"))
    listed = [f"  deg {e['degree']}: " + ", ".join(e["places"]) for e in per if e["places"]]
    if listed:
        summary += "\n" + "\n".join(listed)
    _emit(args, report, summary)
    return status


def cmd_rayclass(args) -> int:
    C = load_curve(args.curve)
    D = _modulus(C, args.modulus)
    G = ray_class_group(C, D, args.B, args.n_max, orientation=args.orientation)
    rec = G.describe()
    rec["command"] = "rayclass"
    rec["curve"] = C.to_record()
    ok = G.torsion_order == G.target and G.rank == 1
    summary = _table([(D.label(), G.invariants, G.torsion_order, G.target, G.B, G.level)],
                     ("modulus", "invariants", "torsion", "expected", "B", "n"))
    _emit(args, rec, summary)
    return EXIT_OK if ok else EXIT_INVARIANT


def cmd_lseries(args) -> int:
    C = load_curve(args.curve)
    D = _modulus(C, args.modulus)
    G = ray_class_group(C, D, args.B, args.n_max, orientation=args.orientation)
    chars = characters(G, args.order, exact=args.exact)
    if args.limit is not None:
        chars = chars[: args.limit]
    entries, rows = [], []
    status = EXIT_OK
    for chi in chars:
        L = l_polynomial(chi)
        prim = primitive(chi)
        const = is_constant(prim)
        weil = L.weil_ok()
        twist = constant_twist_check(chi, args.N or L.degree + 2)
        deg_ok = const or L.degree == predicted_degree(prim)
        poles_ok = (not const) or prim.is_trivial() or has_poles_off_one(L)
        if not (weil and twist and deg_ok and poles_ok):
            status = EXIT_INVARIANT
        entries.append({
            "modulus": D.label(), "character": list(chi.images), "order": chi.order,
            "conductor": chi.conductor.label(), "constant": const,
            "L": L.to_record(), "degree": L.degree, "weil": weil, "twist_identity": twist,
        })
        rows.append((list(chi.images), chi.conductor.label(), "const" if const else "geom",
                     L.degree, weil, twist))
    report = {"command": "lseries", "curve": C.to_record(), "modulus": D.label(),
              "invariants": G.invariants, "characters": entries}
    summary = _table(rows, ("chi", "conductor", "type", "deg L", "weil", "twist"))
    _emit(args, report, summary)
    return status


def cmd_experiment(args) -> int:
    cfg = load_experiment(args.config)
    if args.orientation:
        cfg.orientation = args.orientation
    report = run_experiment(cfg)
    report["command"] = "covers-experiment"
    rows = []
    for entry in report["curves"]:
        for run in entry["runs"]:
            for g in run["groups"]:
                rows.append((entry["curve"]["name"], run["orientation"], g["split_place"],
                             g["cover_N1"], g["all_covers_have_points"]))
    v = report["verdict"]
    summary = _table(rows, ("curve", "orientation", "S", "N1 of covers", "all have points"))
    summary += "\n" + "\n".join(f"{k}: {v[k]}" for k in v)
    _emit(args, report, summary)
    return EXIT_OK if v["passed"] else EXIT_VERDICT


def cmd_compare(args) -> int:
    A, B = load_curve(args.curve_a), load_curve(args.curve_b)
    rep = compare_curves(A, B, args.shape, args.degree, args.order, args.orientation)
    rep["command"] = "compare"
    summary = "\n".join(f"{k}: {rep[k]}" for k in
                        ("zeta_equal", "spectrum_sizes", "distinct_L", "only_in_first",
                         "only_in_second", "spectra_equal", "short_circuit") if k in rep)
    _emit(args, rep, summary)
    if args.expect == "differ" and rep["spectra_equal"]:
        return EXIT_VERDICT
    if args.expect == "equal" and not rep["spectra_equal"]:
        return EXIT_VERDICT
    return EXIT_OK


def cmd_dynsys(args) -> int:
    from .dynamics import build_system, check_action_laws, saturation_example
    C = load_curve(args.curve)
    D = _modulus(C, args.modulus)
    if D.is_zero():
        raise InputError("dynsys-check needs a nonzero modulus")
    S = build_system(C, D, orientation=args.orientation)
    laws = check_action_laws(S, args.samples, args.seed)
    hsub = S.h_subspace_report()
    sat = saturation_example(S)
    report = {
        "command": "dynsys-check", "curve": C.to_record(), "modulus": D.label(),
        "seed": args.seed, "unit_group_order": S.unit_order,
        "laws": [r.to_record() for r in laws], "h_subspaces": hsub, "saturation": sat,
    }
    rows = [(r.name, r.samples, r.passed) for r in laws]
    summary = _table(rows, ("law", "samples", "passed"))
    summary += "\n" + _table([(h["m"], h["classes"], h["quotient_order"], h["ray_class_order"],
                               h["bijective"]) for h in hsub],
                             ("1_m support", "classes", "Cl_D^0/iota", "Cl_m^0", "bijective"))
    _emit(args, report, summary)
    ok = all(r.passed for r in laws) and all(h["bijective"] for h in hsub) and sat["equal_after"]
    return EXIT_OK if ok else EXIT_VERDICT


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cftcurves", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("table", "json"), default="table")
        p.add_argument("--json", metavar="PATH", help="also write the JSON report here")

    def group_opts(p):
        p.add_argument("--modulus", help="YAML list of [place, multiplicity]; "
                       "place = {u: [coeffs], branch: plus|minus|inert|ramified}")
        p.add_argument("--B", type=int, default=None, help="generator degree bound")
        p.add_argument("--n-max", type=int, default=None, help="relation harvesting level")
        p.add_argument("--orientation", choices=("arithmetic", "geometric"), default="arithmetic")

    p = sub.add_parser("zeta", help="point counts and zeta numerators")
    p.add_argument("curves", nargs="+", help="builtin name (X+, X-, E) or YAML curve file")
    p.add_argument("--expect-equal", action="store_true",
                   help="exit 1 unless all zeta functions agree")
    common(p)
    p.set_defaults(fn=cmd_zeta)

    p = sub.add_parser("places", help="places by degree with Mobius cross-check")
    p.add_argument("curve")
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--list-upto", type=int, default=2, help="list descriptors up to this degree")
    common(p)
    p.set_defaults(fn=cmd_places)

    p = sub.add_parser("rayclass", help="ray class group structure")
    p.add_argument("curve")
    group_opts(p)
    common(p)
    p.set_defaults(fn=cmd_rayclass)

    p = sub.add_parser("lseries", help="L-polynomials of the characters of a ray class group")
    p.add_argument("curve")
    group_opts(p)
    p.add_argument("--order", type=int, default=3)
    p.add_argument("--exact", action="store_true", help="only characters of exact order")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--N", type=int, default=None, help="truncation for the twist check")
    common(p)
    p.set_defaults(fn=cmd_lseries)

    p = sub.add_parser("covers-experiment", help="cyclic covers over a modulus family")
    p.add_argument("config", help="YAML experiment config")
    p.add_argument("--orientation", choices=("arithmetic", "geometric", "both"), default=None)
    common(p)
    p.set_defaults(fn=cmd_experiment)

    p = sub.add_parser("compare", help="compare zeta functions and L-spectra of two curves")
    p.add_argument("curve_a")
    p.add_argument("curve_b")
    p.add_argument("--shape", default="2P+Q+R")
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--order", type=int, default=3)
    p.add_argument("--orientation", choices=("arithmetic", "geometric"), default="arithmetic")
    p.add_argument("--expect", choices=("differ", "equal"), default=None)
    common(p)
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("dynsys-check", help="action laws of the finite dynamical system")
    p.add_argument("curve")
    p.add_argument("--modulus", required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--orientation", choices=("arithmetic", "geometric"), default="arithmetic")
    common(p)
    p.set_defaults(fn=cmd_dynsys)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        thread_count()
        return args.fn(args)
    except (ConfigError, CurveError, InputError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BoundsExceeded as exc:
        print(f"bounds exceeded: {exc} (raise --B / --n-max)", file=sys.stderr)
        return EXIT_INVARIANT
    except (TheoryViolation, ArithmeticError, AssertionError) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
