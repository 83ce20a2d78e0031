"""Reproduction suites: every quantitative claim as a batch of checks.

Each suite returns a :class:`SuiteResult` whose records are canonical dicts
(sorted keys, stable order), so identical seeds give byte-identical JSON.
Independent checks can be spread over a process pool.
"""

from __future__ import annotations

import csv
import io
import json
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .config import default_precision
from .energy import (
    check_thm_2_1,
    config_discriminant,
    config_measure,
    configuration_from_roots,
    random_paired_configuration,
    sharpness_family,
    sharpness_ratios,
)
from .interval import Interval
from .measure import (
    check_cor_1_5,
    check_eisenstein_bounds,
    check_l1,
    check_mahler_classical,
    check_thm_1_2,
    mahler_measure,
)
from .numfield import (
    IMAGINARY_QUADRATIC,
    build_order,
    check_field_bounds,
    compute_M_OK,
    find_generators,
    find_generators_real_variant,
    imaginary_quadratic_order,
    min_measure_by_elements,
)
from .polyexact import IntPolynomial, discriminant_exact, family_eisenstein, family_footnote1
from .report import InequalityReport, jsonable
from .roots import find_roots


def _show(x: Any) -> str:
    if isinstance(x, Interval):
        x = x.to_json()
    if isinstance(x, dict) and "lo" in x:
        if x["exact"] is not None:
            return x["exact"]
        lo, hi = float(x["lo"]), float(x["hi"])
        return f"{(lo + hi) / 2:.12g}"
    return str(x)


@dataclass
class CheckRecord:
    suite: str
    check: str
    input: str
    lhs: Any
    rhs: Any
    holds: Optional[bool]
    relation: str = ">="
    details: Dict[str, Any] = field(default_factory=dict)
    slack: Any = None

    def __post_init__(self):
        if self.slack is None and self.relation != "==":
            try:
                self.slack = self.lhs - self.rhs
            except TypeError:
                self.slack = None

    @classmethod
    def from_report(cls, suite: str, rep: InequalityReport, check: Optional[str] = None, **extra) -> "CheckRecord":
        details = {"precision_bits": rep.precision_bits, **rep.details, **extra}
        return cls(suite, check or rep.name, rep.input, rep.lhs, rep.rhs, rep.holds, rep.relation, details)

    @classmethod
    def identity(cls, suite: str, check: str, input: str, value, expected, **extra) -> "CheckRecord":
        return cls(suite, check, input, value, expected, value == expected, "==", dict(extra))

    def to_json(self) -> Dict[str, Any]:
        return jsonable(
            {
                "suite": self.suite,
                "check": self.check,
                "input": self.input,
                "relation": self.relation,
                "lhs": self.lhs,
                "rhs": self.rhs,
                "slack": self.slack,
                "holds": self.holds,
                "details": self.details,
            }
        )

    def csv_row(self) -> List[str]:
        slack = self.slack
        return [self.suite, self.check, _show(self.lhs), _show(self.rhs), str(self.holds), "" if slack is None else _show(slack)]


@dataclass
class SuiteResult:
    name: str
    records: List[CheckRecord]
    seed: Optional[int]
    elapsed: float = 0.0
    extra: Dict[str, Any] = field(default_factory=dict)

    @property
    def counts(self) -> Dict[str, int]:
        out = {"total": len(self.records), "holds": 0, "fails": 0, "undecided": 0}
        for r in self.records:
            out["holds" if r.holds is True else "fails" if r.holds is False else "undecided"] += 1
        return out

    @property
    def passed(self) -> bool:
        return all(r.holds is True for r in self.records)

    def failures(self) -> List[CheckRecord]:
        return [r for r in self.records if r.holds is not True]

    def to_json(self) -> Dict[str, Any]:
        pol = default_precision()
        return jsonable(
            {
                "suite": self.name,
                "seed": self.seed,
                "precision": {"bits": pol.bits, "cap": pol.cap},
                "counts": self.counts,
                "passed": self.passed,
                "extra": self.extra,
                "records": [r.to_json() for r in self.records],
            }
        )


def merge(name: str, parts: Sequence[SuiteResult], seed: Optional[int]) -> SuiteResult:
    recs = [r for p in parts for r in p.records]
    extra = {p.name: p.extra for p in parts if p.extra}
    return SuiteResult(name, recs, seed, sum(p.elapsed for p in parts), extra)


def _run(func: Callable, items: Sequence, workers: int) -> List[Any]:
    if workers <= 1 or len(items) < 2:
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items, chunksize=max(1, len(items) // (4 * workers))))


def _timed(name: str, seed: Optional[int], build: Callable[[], Tuple[List[CheckRecord], Dict]]) -> SuiteResult:
    t0 = time.perf_counter()
    recs, extra = build()
    return SuiteResult(name, recs, seed, time.perf_counter() - t0, extra)


# -- identities ---------------------------------------------------------------


def suite_footnote1(ps=(2, 3, 5, 7), ds=range(2, 7)) -> SuiteResult:
    """(p+1)x^d - p: |Delta|, M and the Mahler ratio, all exact."""

    def build():
        recs = []
        for p in ps:
            for d in ds:
                fam = family_footnote1(p, d)
                f = fam.poly
                tag = str(f)
                disc = discriminant_exact(f)
                recs.append(CheckRecord.identity("footnote1", "abs_disc", tag, abs(disc), fam.disc_abs))
                rep = check_mahler_classical(f)
                recs.append(CheckRecord.identity("footnote1", "measure", tag, rep.details["measure"].exact, fam.measure))
                recs.append(
                    CheckRecord.identity("footnote1", "mahler_ratio", tag, rep.details["ratio"].exact, Fraction(p + 1, p) ** (d - 1))
                )
                recs.append(CheckRecord.from_report("footnote1", rep))
                recs.append(CheckRecord.from_report("footnote1", check_l1(f)))
        return recs, {}

    return _timed("footnote1", None, build)


def suite_eisenstein(ps=(2, 3, 5), ds=range(2, 9)) -> SuiteResult:
    """x^d + p x^(d-1) + (-1)^(d+1) p: |Delta| formula and both upper bounds."""

    def build():
        recs = []
        for p in ps:
            for d in ds:
                fam = family_eisenstein(p, d)
                tag = str(fam.poly)
                recs.append(CheckRecord.identity("eisenstein", "abs_disc", tag, abs(discriminant_exact(fam.poly)), fam.disc_abs))
                for rep in check_eisenstein_bounds(p, d):
                    recs.append(CheckRecord.from_report("eisenstein", rep))
                recs.append(CheckRecord.from_report("eisenstein", check_mahler_classical(fam.poly)))
                recs.append(CheckRecord.from_report("eisenstein", check_l1(fam.poly)))
        return recs, {}

    return _timed("eisenstein", None, build)


def suite_cyclotomic_binomials(max_d: int = 20) -> SuiteResult:
    """|Delta(x^d - 1)| = d^d by the resultant route."""

    def build():
        recs = []
        for d in range(2, max_d + 1):
            f = IntPolynomial.monomial(d) - IntPolynomial((1,))
            recs.append(CheckRecord.identity("xd_minus_1", "abs_disc", str(f), abs(discriminant_exact(f)), d**d))
        return recs, {}

    return _timed("xd_minus_1", None, build)


def suite_identities(seed: Optional[int] = None, workers: int = 1) -> SuiteResult:
    return merge("identities", [suite_footnote1(), suite_eisenstein(), suite_cyclotomic_binomials()], seed)


# -- polynomial inequalities ------------------------------------------------------


def random_integer_polynomial(rng: random.Random, max_degree: int = 8, bound: int = 100) -> IntPolynomial:
    d = rng.randint(2, max_degree)
    lead = rng.choice([x for x in range(-bound, bound + 1) if x])
    return IntPolynomial(tuple(rng.randint(-bound, bound) for _ in range(d)) + (lead,))


def extremal_binomial(rng: random.Random, max_degree: int = 8, bound: int = 100) -> IntPolynomial:
    d = rng.randint(2, max_degree)
    a = rng.randint(1, bound)
    return IntPolynomial((rng.choice([-1, 1]) * a,) + (0,) * (d - 1) + (rng.choice([-1, 1]) * a,))


def _classical_item(f: IntPolynomial) -> List[Dict]:
    rep = check_mahler_classical(f)
    recs = [CheckRecord.from_report("thm_1_1", rep), CheckRecord.from_report("thm_1_1", check_l1(f))]
    extremal = rep.details["extremal_binomial"]
    eq = rep.details["equality"]
    recs.append(
        CheckRecord(
            "thm_1_1",
            "equality_characterization",
            str(f),
            eq,
            extremal,
            eq is extremal if eq is not None else extremal is False,
            "==",
        )
    )
    return [r.to_json() for r in recs]


def suite_thm_1_1(seed: int = 0, n: int = 1000, n_equality: int = 20, workers: int = 1) -> SuiteResult:
    def build():
        rng = random.Random(seed)
        polys = [random_integer_polynomial(rng) for _ in range(n)] + [extremal_binomial(rng) for _ in range(n_equality)]
        rows = _run(_classical_item, polys, workers)
        recs = [_record_from_json(x) for chunk in rows for x in chunk]
        return recs, {"random": n, "equality_instances": n_equality}

    return _timed("thm_1_1", seed, build)


def random_paired_polynomial(rng: random.Random, max_degree: int = 8) -> Tuple[IntPolynomial, int]:
    """Monic integer polynomial whose roots of modulus > r pair up; returns (f, r).

    Large roots come from x^2 + b x + c with b^2 < 4c and c > r^2 (conjugate
    pairs) or x^2 - a^2 with a > r; small roots from x - a with |a| <= r and
    quadratics of constant term <= r^2 with complex roots.
    """
    r = rng.choice([1, 1, 2, 3])
    target = rng.randint(2, max_degree)
    f = IntPolynomial((1,))
    while f.degree < target:
        room = target - f.degree
        kind = rng.random()
        if room >= 2 and kind < 0.5:
            c = rng.randint(r * r + 1, r * r + 60)
            b = rng.randint(-math.isqrt(4 * c - 1), math.isqrt(4 * c - 1))
            if b * b >= 4 * c:
                continue
            g = IntPolynomial((c, b, 1))
        elif room >= 2 and kind < 0.6:
            a = rng.randint(r + 1, r + 12)
            g = IntPolynomial((-a * a, 0, 1))
        elif room >= 2 and kind < 0.7:
            c = rng.randint(1, r * r)
            lim = math.isqrt(4 * c - 1) if c > 0 else 0
            b = rng.randint(-lim, lim)
            if b * b >= 4 * c:
                continue
            g = IntPolynomial((c, b, 1))
        else:
            g = IntPolynomial((-rng.randint(-r, r), 1))
        f = f * g
    return f, r


def _paired_item(item: Tuple[IntPolynomial, int]) -> List[Dict]:
    f, r = item
    recs = [
        CheckRecord.from_report("thm_1_2", check_thm_1_2(f, r=r)),
        CheckRecord.from_report("thm_1_2", check_cor_1_5(f, r=r)),
        CheckRecord.from_report("thm_1_2", check_l1(f)),
    ]
    return [x.to_json() for x in recs]


def suite_thm_1_2(seed: int = 0, n: int = 1000, family_max: int = 100, workers: int = 1) -> SuiteResult:
    def build():
        rng = random.Random(seed)
        items = [random_paired_polynomial(rng) for _ in range(n)]
        rows = _run(_paired_item, items, workers)
        recs = [_record_from_json(x) for chunk in rows for x in chunk]
        for R in range(1, family_max + 1):
            f = IntPolynomial((R * R, 0, 1))
            rep = check_thm_1_2(f, r=1)
            slack = rep.slack.exact
            recs.append(CheckRecord.from_report("thm_1_2", rep, check="paired_roots_family"))
            recs.append(CheckRecord.identity("thm_1_2", "paired_family_slack_zero", str(f), slack, Fraction(0)))
            recs.append(CheckRecord.from_report("thm_1_2", check_cor_1_5(f, r=1)))
            recs.append(CheckRecord.from_report("thm_1_2", check_l1(f)))
        return recs, {"random": n, "family": f"x^2+R^2, R=1..{family_max}"}

    return _timed("thm_1_2", seed, build)


def suite_inequalities(seed: int = 0, workers: int = 1) -> SuiteResult:
    return merge("inequalities", [suite_thm_1_1(seed, workers=workers), suite_thm_1_2(seed, workers=workers)], seed)


# -- energy -----------------------------------------------------------------------


_TRACE_FLAGS = ("C0", "per_pair", "S_sizes", "S_bounds", "c_dm", "tail", "decomposition", "algebra", "pair_product")


def _energy_item(item) -> List[Dict]:
    k, d, r, cfg = item
    rep, trace = check_thm_2_1(cfg, r)
    recs = [CheckRecord.from_report("thm_2_1", rep, k=k, d=d)]
    if trace is not None:
        flags = trace.flags()
        for name in _TRACE_FLAGS:
            recs.append(CheckRecord("thm_2_1", f"trace_{name}", rep.input, flags[name], True, flags[name], "=="))
    return [x.to_json() for x in recs]


def random_energy_items(seed: int, n: int) -> List[Tuple[int, int, Fraction, Any]]:
    rng = random.Random(seed)
    items = []
    for _ in range(n):
        k = rng.choice([2, 3, 5])
        d = rng.randint(2, 12)
        r = rng.choice([Fraction(1), Fraction(3, 2), Fraction(2)])
        items.append((k, d, r, random_paired_configuration(rng, k, d, r)))
    return items


def suite_thm_2_1(seed: int = 0, n: int = 1000, workers: int = 1) -> SuiteResult:
    def build():
        rows = _run(_energy_item, random_energy_items(seed, n), workers)
        return [_record_from_json(x) for chunk in rows for x in chunk], {"random": n}

    return _timed("thm_2_1", seed, build)


def suite_sharpness(k: int = 2, d: int = 3, r=1, exponents=range(1, 7)) -> SuiteResult:
    """Ratios along the antipodal family as R grows by decades."""

    def build():
        recs = []
        table = []
        prev = None
        cap = Fraction(2 * r) ** (d * (d - 1))
        for e in exponents:
            R = 10**e
            tag = f"sharpness_family({k},{d},{r},10^{e})"
            sharp, weak = sharpness_ratios(sharpness_family(k, d, r, R))
            table.append({"R": f"10^{e}", "ratio_2d_3": float(sharp), "ratio_2d_4": float(weak)})
            recs.append(CheckRecord.from_report("sharpness", InequalityReport.compare("ratio_lower", tag, sharp, Fraction(39, 10), sharp.prec)))
            recs.append(CheckRecord.from_report("sharpness", InequalityReport.compare("ratio_upper", tag, cap, sharp, sharp.prec)))
            if e >= 4:
                recs.append(
                    CheckRecord.from_report(
                        "sharpness", InequalityReport.compare("ratio_near_4", tag, Fraction(101, 100) * 4, sharp, sharp.prec)
                    )
                )
            if prev is not None:
                recs.append(
                    CheckRecord.from_report(
                        "sharpness", InequalityReport.compare("weak_ratio_growth", tag, weak / prev, Fraction(50), sharp.prec)
                    )
                )
            prev = weak
        return recs, {"table": table}

    return _timed("sharpness", None, build)


def _equivalence_item(f: IntPolynomial) -> List[Dict]:
    rs = find_roots(f)
    cfg = configuration_from_roots(rs)
    m_poly = mahler_measure(f, rs).value
    m_cfg = config_measure(cfg)
    d_poly = abs(discriminant_exact(f))
    d_cfg = config_discriminant(cfg).value
    d_cfg = d_cfg if isinstance(d_cfg, Interval) else Interval.point(d_cfg)
    rel_m = abs(float(m_cfg) - float(m_poly)) / float(m_poly)
    rel_d = abs(float(d_cfg) - d_poly) / d_poly if d_poly else abs(float(d_cfg))
    tol = Fraction(1, 10**9)
    recs = [
        CheckRecord("equivalence", "measure_relative_error", str(f), Fraction(rel_m), tol, rel_m <= 1e-9, "<="),
        CheckRecord("equivalence", "disc_relative_error", str(f), Fraction(rel_d), tol, rel_d <= 1e-9, "<="),
    ]
    return [x.to_json() for x in recs]


def suite_equivalence(seed: int = 0, n: int = 200, workers: int = 1) -> SuiteResult:
    """Point-configuration values of the roots against the polynomial values."""

    def build():
        rng = random.Random(seed)
        polys = []
        while len(polys) < n:
            d = rng.randint(2, 8)
            f = IntPolynomial(tuple(rng.randint(-20, 20) for _ in range(d)) + (1,))
            if discriminant_exact(f) != 0:
                polys.append(f)
        rows = _run(_equivalence_item, polys, workers)
        return [_record_from_json(x) for chunk in rows for x in chunk], {"random": n}

    return _timed("equivalence", seed, build)


def suite_energy(seed: int = 0, workers: int = 1) -> SuiteResult:
    return merge(
        "energy",
        [suite_thm_2_1(seed, workers=workers), suite_sharpness(), suite_equivalence(seed, workers=workers)],
        seed,
    )


# -- number fields --------------------------------------------------------------------


GENERATOR_FIELDS = (
    ("Q(i)", "x^2+1", -4),
    ("Q(sqrt(-3))", "x^2-x+1", -3),
    ("Q(zeta_5)", "x^4+x^3+x^2+x+1", 125),
    ("cubic -23", "x^3-x-1", -23),
)
DEFAULT_T_SEQUENCE = (10, 20, 30, 40, 50)


def _generator_records(label: str, recs_in) -> List[CheckRecord]:
    out = []
    seen = set()
    for rec in recs_in:
        tag = f"{label} T={rec.T} alpha={list(rec.alpha_coords)}"
        for name, ok in sorted(rec.checks.items()):
            out.append(CheckRecord("generators", name, tag, ok, True, ok, "==", {"record": rec.to_json()} if name == "separation" else {}))
        out.append(
            CheckRecord.from_report(
                "generators",
                InequalityReport.compare("ratio_le_c_K", tag, Interval.point(rec.c_K), rec.ratio, rec.M.prec),
            )
        )
        key = tuple(rec.alpha_coords)
        out.append(CheckRecord("generators", "distinct", tag, key not in seen, True, key not in seen, "=="))
        seen.add(key)
    return out


def suite_generators(T_list: Sequence[int] = DEFAULT_T_SEQUENCE) -> SuiteResult:
    def build():
        recs: List[CheckRecord] = []
        extra = {}
        for label, poly, disc in GENERATOR_FIELDS:
            order = build_order(poly, field_disc=disc)
            found = find_generators(order, list(T_list))
            recs.extend(_generator_records(label, found))
            recs.append(CheckRecord.identity("generators", "count", label, len(found), len(T_list)))
            extra[label] = [r.to_json() for r in found]
        qi = build_order("x^2+1", field_disc=-4)
        first = find_generators(qi, [10], c=2)[0]
        recs.append(CheckRecord.identity("generators", "qi_alpha", "Q(i) T=10 c=2", list(first.alpha_coords), [11, 17]))
        recs.append(CheckRecord.identity("generators", "qi_minpoly", "Q(i) T=10 c=2", str(first.minpoly), "x^2-22x+410"))
        recs.append(CheckRecord.identity("generators", "qi_measure", "Q(i) T=10 c=2", first.M.exact, Fraction(410)))
        recs.append(CheckRecord.identity("generators", "qi_abs_disc", "Q(i) T=10 c=2", abs(first.disc_f), 1156))
        for label, poly in (("real quadratic 8", "x^2-2"), ("cubic -23", "x^3-x-1")):
            order = build_order(poly)
            found = find_generators_real_variant(order, list(T_list))
            recs.extend(_generator_records(label + " (real)", found))
            extra[label + " (real)"] = [r.to_json() for r in found]
        return recs, extra

    return _timed("generators", None, build)


EQUALITY_DISCS = (-4, -8, -20)


def suite_imaginary_quadratic(discs: Iterable[int] = tuple(IMAGINARY_QUADRATIC)) -> SuiteResult:
    """M(O_K) two ways, then every field bound; equality expected exactly at -4, -8, -20."""

    def build():
        recs = []
        table = []
        for disc in discs:
            order = imaginary_quadratic_order(disc)
            T_max = max(2, abs(disc) // 4 + 1)
            by_poly = compute_M_OK(order, T_max)
            by_elem = min_measure_by_elements(order, T_max)
            tag = f"disc_K={disc}"
            same = by_poly.value is not None and by_elem.value is not None and by_poly.value.exact == by_elem.value.exact
            recs.append(
                CheckRecord(
                    "imaginary_quadratic",
                    "oracles_agree",
                    tag,
                    by_poly.value,
                    by_elem.value,
                    same and by_poly.value.exact is not None,
                    "==",
                    {"witness": str(by_poly.witness), "oracle_witness": str(by_elem.witness)},
                )
            )
            for rep in check_field_bounds(order, by_poly):
                recs.append(CheckRecord.from_report("imaginary_quadratic", rep))
                if rep.name == "imaginary_quadratic":
                    eq = rep.equality
                    expected = disc in EQUALITY_DISCS
                    recs.append(CheckRecord("imaginary_quadratic", "equality_pattern", tag, eq, expected, eq is expected, "=="))
            table.append({"disc_K": disc, "M_OK": str(by_poly.value.exact), "witness": str(by_poly.witness)})
        zeta = build_order("x^4+x^3+x^2+x+1", field_disc=125)
        res = compute_M_OK(zeta, 1)
        for rep in check_field_bounds(zeta, res):
            recs.append(CheckRecord.from_report("imaginary_quadratic", rep, check=f"zeta5_{rep.name}"))
        return recs, {"table": table}

    return _timed("imaginary_quadratic", None, build)


def suite_fields(seed: Optional[int] = None, workers: int = 1) -> SuiteResult:
    return merge("fields", [suite_generators(), suite_imaginary_quadratic()], seed)


SUITES = {
    "identities": suite_identities,
    "inequalities": suite_inequalities,
    "energy": suite_energy,
    "fields": suite_fields,
}


def run_suite(name: str, seed: int = 42, workers: int = 1) -> List[SuiteResult]:
    names = list(SUITES) if name == "all" else [name]
    if any(n not in SUITES for n in names):
        raise KeyError(name)
    return [SUITES[n](seed=seed, workers=workers) for n in names]


def _record_from_json(data: Dict) -> CheckRecord:
    """Rebuild a record from its JSON form (used when checks ran in workers)."""
    return CheckRecord(
        data["suite"],
        data["check"],
        data["input"],
        data["lhs"],
        data["rhs"],
        data["holds"],
        data["relation"],
        data["details"],
        data["slack"],
    )


def report_json(results: Sequence[SuiteResult], seed: int) -> str:
    totals = {"total": 0, "holds": 0, "fails": 0, "undecided": 0}
    for res in results:
        for k, v in res.counts.items():
            totals[k] += v
    doc = {"seed": seed, "suites": [r.to_json() for r in results], "summary": totals}
    return json.dumps(doc, sort_keys=True, indent=1)


def report_csv(results: Sequence[SuiteResult]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["suite", "check", "lhs", "rhs", "holds", "slack"])
    for res in results:
        for rec in res.records:
            w.writerow(rec.csv_row())
    return buf.getvalue()
