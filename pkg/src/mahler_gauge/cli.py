"""Command-line front end.

Exit codes: 0 the checked statement holds, 1 it fails or stays undecided,
2 usage or input error, 3 the statement's hypothesis is not satisfied.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction
from typing import Any, List, Optional, Sequence

from mpmath import libmp

from .energy import PointConfiguration, check_thm_2_1
from .errors import DomainError, HypothesisNotSatisfied, PrecisionError
from .interval import Interval, mpf_to_fraction
from .measure import check_cor_1_5, check_l1, check_mahler_classical, check_thm_1_2, mahler_measure
from .numfield import (
    check_field_bounds,
    compute_M_OK,
    find_generators,
    find_generators_real_variant,
    load_field_spec,
)
from .polyexact import parse_poly
from .report import jsonable
from .suites import SUITES, report_csv, report_json, run_suite

EXIT_HOLDS, EXIT_FAILS, EXIT_USAGE, EXIT_HYPOTHESIS = 0, 1, 2, 3


def _emit(doc: Any, out: Optional[str] = None) -> None:
    text = json.dumps(jsonable(doc), sort_keys=True, indent=2)
    print(text)
    if out:
        with open(out, "a") as fh:
            fh.write(json.dumps(jsonable(doc), sort_keys=True) + "\n")


def _verdict(holds: Optional[bool]) -> int:
    return EXIT_HOLDS if holds is True else EXIT_FAILS


def _r_arg(text: str):
    if text == "auto":
        return "auto"
    try:
        return Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"r must be a number or 'auto', got {text!r}") from None


def _fmt(iv: Interval, digits: int = 20) -> str:
    if iv.exact is not None:
        return f"{iv.exact} (exact)"
    return f"{libmp.to_str(iv.mid, digits)} +- {libmp.to_str(iv.rad, 3)}"


# -- commands ---------------------------------------------------------------------


def cmd_measure(args) -> int:
    f = parse_poly(args.poly)
    res = mahler_measure(f, precision=args.precision)
    if args.json:
        doc = {
            "poly": str(f),
            "M": res.value,
            "l1_window": list(res.l1_window) if res.l1_window else None,
            "precision_bits": res.roots.precision,
            "certified": res.roots.certified,
            "roots": [
                {"value": [str(r.value.real), str(r.value.imag)], "radius": str(r.radius), "exact": r.exact}
                for r in res.roots.roots
            ],
        }
        _emit(doc)
        return EXIT_HOLDS
    lo, hi = res.l1_window
    print(f"f = {f}")
    print(f"M = {_fmt(res.value)}")
    print(f"L1 window: {lo} <= M <= {hi}")
    print(f"roots ({res.roots.precision} bits, certified={res.roots.certified}):")
    for r in res.roots.roots:
        if r.exact is not None:
            print(f"  {r.exact}")
        else:
            z = complex(r.value)
            print(f"  {z.real:.15g}{z.imag:+.15g}i  (radius {float(r.radius):.2e})")
    return EXIT_HOLDS


def cmd_check(args) -> int:
    f = parse_poly(args.poly)
    if args.subject == "mahler":
        rep = check_mahler_classical(f, args.precision)
    elif args.subject == "l1":
        rep = check_l1(f, args.precision)
    elif args.subject == "paired":
        rep = check_thm_1_2(f, r=args.r, precision=args.precision)
    else:
        rep = check_cor_1_5(f, r=args.r, precision=args.precision)
    _emit(rep.to_json())
    return _verdict(rep.holds)


def cmd_energy(args) -> int:
    try:
        cfg = PointConfiguration.load(args.config)
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainError(f"cannot read configuration: {exc}") from exc
    r = 1 if args.r == "auto" else args.r
    rep, trace = check_thm_2_1(cfg, r)
    _emit({"report": rep.to_json(), "trace": None if trace is None else trace.to_json()})
    ok = rep.holds is True and (trace is None or trace.all_hold is True)
    return EXIT_HOLDS if ok else EXIT_FAILS


def _T_list(args) -> List[Fraction]:
    Ts = [Fraction(t) for t in (args.T or [10])]
    if len(Ts) == 1 and args.count > 1:
        Ts = [Ts[0] * (i + 1) for i in range(args.count)]
    return Ts


def _default_T_max(order) -> Fraction:
    # the defining polynomial is a monic generator, so its measure bounds M(O_K)
    hi = Fraction(mpf_to_fraction(mahler_measure(order.poly).value.hi))
    bound = Fraction(math.ceil(hi))
    if order.field_disc is not None:
        bound = min(bound, Fraction(abs(order.field_disc)))
    return bound


def cmd_field(args) -> int:
    try:
        order = load_field_spec(args.spec)
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainError(f"cannot read field spec: {exc}") from exc
    c = "auto" if args.c is None else Fraction(args.c)
    if args.action == "info":
        _emit(order.to_json(), args.out)
        return EXIT_HOLDS
    if args.action in ("search-gen", "search-gen-real"):
        if args.action == "search-gen":
            if order.s == 0:
                raise HypothesisNotSatisfied("totally real field: no complex embedding; use 'field search-gen-real'")
            recs = find_generators(order, _T_list(args), c)
        else:
            recs = find_generators_real_variant(order, _T_list(args), c)
        for rec in recs:
            _emit(rec.to_json(), args.out)
        return _verdict(all(r.verified is True for r in recs))
    if args.action == "min-mahler":
        t_max = Fraction(args.T_max) if args.T_max is not None else _default_T_max(order)
        res = compute_M_OK(order, t_max)
        _emit({"field": str(order.poly), **res.to_json()}, args.out)
        return EXIT_HOLDS if res.status == "computed" else EXIT_FAILS
    # check-bounds
    if order.field_disc is None:
        raise DomainError("check-bounds needs the field discriminant ('disc' in the field spec)")
    if args.M is not None:
        value: Any = Fraction(args.M)
    else:
        t_max = Fraction(args.T_max) if args.T_max is not None else _default_T_max(order)
        res = compute_M_OK(order, t_max)
        if res.value is None:
            raise DomainError(f"M(O_K) {res.status} (T_max={t_max})")
        value = res
    reps = check_field_bounds(order, value)
    for rep in reps:
        _emit(rep.to_json(), args.out)
    return _verdict(all(r.holds is True for r in reps))


def cmd_repro(args) -> int:
    results = run_suite(args.suite, seed=args.seed, workers=args.workers)
    try:
        os.makedirs(args.out, exist_ok=True)
        stem = os.path.join(args.out, f"repro_{args.suite}")
        with open(stem + ".json", "w") as fh:
            fh.write(report_json(results, args.seed))
        with open(stem + ".csv", "w") as fh:
            fh.write(report_csv(results))
    except OSError as exc:
        print(f"error: cannot write report: {exc}", file=sys.stderr)
        return EXIT_USAGE
    ok = True
    for res in results:
        c = res.counts
        ok = ok and res.passed
        print(f"{res.name:13s} {c['holds']}/{c['total']} hold, {c['fails']} fail, {c['undecided']} undecided ({res.elapsed:.1f}s)")
        for rec in res.failures()[:10]:
            print(f"  FAIL {rec.suite}/{rec.check}: {rec.input}")
    print(f"wrote {stem}.json and {stem}.csv")
    return EXIT_HOLDS if ok else EXIT_FAILS


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mahler-gauge", description="Mahler measure versus discriminant checks")
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("measure", help="Mahler measure of an integer polynomial")
    m.add_argument("poly")
    m.add_argument("--precision", type=int, default=None, help="starting precision in bits")
    m.add_argument("--json", action="store_true")
    m.set_defaults(func=cmd_measure)

    c = sub.add_parser("check", help="check one inequality for a polynomial")
    c.add_argument("subject", choices=["mahler", "paired", "l1", "cor15"])
    c.add_argument("poly")
    c.add_argument("--r", type=_r_arg, default=Fraction(1), help="pairing radius r >= 1 or 'auto'")
    c.add_argument("--precision", type=int, default=None)
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("energy", help="paired-energy bound for a point configuration file")
    e.add_argument("config")
    e.add_argument("--r", type=_r_arg, default=Fraction(1))
    e.set_defaults(func=cmd_energy)

    f = sub.add_parser("field", help="number-field searches and bounds")
    f.add_argument("action", choices=["info", "search-gen", "min-mahler", "check-bounds", "search-gen-real"])
    f.add_argument("spec", help='field-spec JSON file: {"poly": ..., "basis": ..., "disc": ...}')
    f.add_argument("--T", nargs="+", default=None, help="translation parameters")
    f.add_argument("--count", type=int, default=1, help="with a single --T, use T, 2T, ..., count*T")
    f.add_argument("--c", default=None, help="box side (default: automatic)")
    f.add_argument("--T-max", dest="T_max", default=None, help="measure bound for the M(O_K) search (default: measure of the defining polynomial)")
    f.add_argument("--M", default=None, help="known M(O_K) for check-bounds")
    f.add_argument("--out", default=None, help="append JSON records to this file")
    f.set_defaults(func=cmd_field)

    r = sub.add_parser("repro", help="run a reproduction suite")
    r.add_argument("suite", choices=["all"] + list(SUITES))
    r.add_argument("--seed", type=int, default=42)
    r.add_argument("--out", default="repro_out")
    r.add_argument("--workers", type=int, default=1)
    r.set_defaults(func=cmd_repro)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except HypothesisNotSatisfied as exc:
        print(f"hypothesis not satisfied: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (DomainError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionError as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_FAILS


if __name__ == "__main__":
    sys.exit(main())
