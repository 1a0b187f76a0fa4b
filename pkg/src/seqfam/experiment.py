"""Report assembly for the command-line driver.

Every function here returns plain dicts ready for ``json.dumps``; wall-clock
timings are only recorded when asked for, so reports are byte-stable across
runs otherwise.
"""

from __future__ import annotations

import time
from contextlib import contextmanager

import numpy as np

import seqfam
from seqfam.families import (
    Orientation,
    PolySpec,
    QuadraticFamilyParams,
    SequenceFamily,
    build_polynomial_family,
    build_quadratic_family,
    dual_family,
    enumerate_gms_quadratics,
    enumerate_squarefree_upto,
    quadratic_symbol_matrix,
)
from seqfam.measures import (
    BudgetExceeded,
    SearchBudget,
    SpecificationPattern,
    complete_weil_sum,
    count_matching_sequences,
    cross_correlation,
    evaluate_witness,
    family_complexity,
    largest_guaranteed,
    theorem_bound_raw,
    theorem_orders,
    weil_limit,
    weil_ratio,
)
from seqfam.measures.reference import window_sum
from seqfam.ntcore import Prime, find_quadratic_nonresidue, is_prime, legendre_symbol

SCHEMA = "seqfam-report-1"
LOG_BASE = "e"


class Stopwatch:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.stages: dict[str, float] = {}

    @contextmanager
    def stage(self, name: str):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.stages[name] = self.stages.get(name, 0.0) + time.perf_counter() - t0

    def as_dict(self) -> dict | None:
        return {k: round(v, 6) for k, v in self.stages.items()} if self.enabled else None


def _budget_dict(budget: SearchBudget, outcome: str) -> dict:
    return {"max_evaluations": budget.max_evaluations, "on_overflow": budget.on_overflow.value, "outcome": outcome}


def _measure_entry(ell: int, res) -> dict:
    w = res.witness
    return {"ell": ell, "value": res.value, "witness": None if w is None else {"M": w.M, "D": list(w.D), "I": list(w.I)}}


def weil_extremes(p: int, b: int) -> dict:
    """Max |sum| over distinct pairs, plus whether every diagonal sum equals p."""
    h = (p - 1) // 2
    mat = np.empty((h, p), dtype=np.int64)
    for n in range(1, h + 1):
        mat[n - 1] = [legendre_symbol(n * n - b * i * i, p) for i in range(p)]
    gram = mat @ mat.T
    off = gram[~np.eye(h, dtype=bool)]
    return {
        "max_abs_sum": int(np.abs(off).max()) if off.size else 0,
        "limit": weil_limit(p),
        "diagonal_equals_p": bool(np.all(np.diag(gram) == p)),
    }


def phi_table(fam: SequenceFamily, ells, budget: SearchBudget, threads: int | None) -> dict:
    return {ell: cross_correlation(fam, ell, budget, threads=threads) for ell in ells}


def analyze_family(
    fam: SequenceFamily,
    *,
    ell_max: int,
    complexity: bool,
    budget: SearchBudget,
    threads: int | None = None,
    timings: bool = False,
    p: int | None = None,
    b: int | None = None,
    orientation: str | None = None,
) -> dict:
    """Full report for one family (the ``measure`` subcommand)."""
    sw = Stopwatch(timings)
    F, N = fam.size, fam.length
    with sw.stage("cross_correlation"):
        phis = phi_table(fam, range(1, ell_max + 1), budget, threads)
    report: dict = {
        "schema": SCHEMA,
        "kind": "measure",
        "params": {
            "p": p,
            "b": b,
            "orientation": orientation,
            "F": F,
            "N": N,
            "label": fam.label,
            "ell_max": ell_max,
            "log_base": LOG_BASE,
            "tool_version": seqfam.__version__,
        },
        "measures": [_measure_entry(ell, r) for ell, r in phis.items()],
        "complexity": None,
        "theorem_bound": None,
        "weil": None,
        "ratios": None,
    }
    if complexity:
        with sw.stage("family_complexity"):
            report["complexity"] = family_complexity(fam, budget).to_dict()
        if F >= 2:
            with sw.stage("dual_cross_correlation"):
                dual = dual_family(fam)
                dual_phis = [cross_correlation(dual, i, budget, threads=threads).value for i in range(1, theorem_orders(F) + 1)]
            raw = theorem_bound_raw(F, dual_phis)
            report["theorem_bound"] = {"raw": raw, "clamped": max(0, raw), "dual_phis": dual_phis}
    if p is not None and b is not None:
        with sw.stage("weil"):
            report["weil"] = weil_extremes(p, b)
        report["ratios"] = [
            {"ell": ell, "phi": r.value, "ratio": weil_ratio(r.value, ell, p)} for ell, r in phis.items()
        ]
    report["timings"] = sw.as_dict()
    report["budget"] = _budget_dict(budget, "ok")
    return report


def _orientation_block(fam: SequenceFamily, phis: dict, dual_phis: dict, budget: SearchBudget) -> tuple[dict, dict]:
    F = fam.size
    comp = family_complexity(fam, budget)
    orders = theorem_orders(F)
    dual_vals = [dual_phis[i].value for i in range(1, orders + 1)]
    raw = theorem_bound_raw(F, dual_vals)
    witnesses_ok = all(
        r.witness is not None and abs(evaluate_witness(fam, r.witness)) == r.value for r in phis.values()
    )
    if comp.blocking_pattern is not None:
        witnesses_ok = witnesses_ok and count_matching_sequences(fam, comp.blocking_pattern) == 0
    guaranteed = largest_guaranteed(F, dual_vals)
    checks = {
        "theorem": comp.value >= max(0, raw),
        "entropy": 2**comp.value <= F,
        "witnesses": witnesses_ok,
        "sufficient_condition": comp.value >= guaranteed,
    }
    block = {
        "complexity": comp.to_dict(),
        "measures": [_measure_entry(ell, r) for ell, r in sorted(phis.items())],
        "dual_phis": dual_vals,
        "theorem_bound": {"raw": raw, "clamped": max(0, raw)},
        "guaranteed_j": guaranteed,
    }
    return block, checks


def verify_quadratic_prime(p: int, ell: int, budget: SearchBudget, threads: int | None = None, timings: bool = False) -> dict:
    sw = Stopwatch(timings)
    b = find_quadratic_nonresidue(p).value
    h = (p - 1) // 2
    row: dict = {"p": p, "b": b, "F": h, "N": h}
    try:
        with sw.stage("families"):
            fam_n = build_quadratic_family(QuadraticFamilyParams(p, b, Orientation.BY_OUTER_N))
            fam_i = build_quadratic_family(QuadraticFamilyParams(p, b, Orientation.BY_OUTER_I))
            mat = quadratic_symbol_matrix(p, b)
            # (n^2 - b i^2 / p) = (-b / p) (i^2 - b^-1 n^2 / p), and (-b / p) = (-1)^((p+1)/2)
            swapped = quadratic_symbol_matrix(p, pow(b, -1, p)).T
        sign = (-1) ** ((p + 1) // 2)
        checks = {
            "distinct": len(set(fam_n.members)) == h and len(set(fam_i.members)) == h,
            "sign_symmetry": bool(np.array_equal(mat, sign * swapped)),
            "transpose": dual_family(fam_n) == fam_i,
        }
        with sw.stage("weil"):
            weil = weil_extremes(p, b)
        checks["weil"] = weil["max_abs_sum"] <= weil["limit"] and weil["diagonal_equals_p"]
        top = max(ell, theorem_orders(h))
        with sw.stage("cross_correlation"):
            phis_n = phi_table(fam_n, range(1, top + 1), budget, threads)
            phis_i = phi_table(fam_i, range(1, top + 1), budget, threads)
        with sw.stage("complexity"):
            block_n, checks_n = _orientation_block(fam_n, phis_n, phis_i, budget)
            block_i, checks_i = _orientation_block(fam_i, phis_i, phis_n, budget)
    except BudgetExceeded as exc:
        row.update(status="SKIPPED", reason=str(exc), timings=sw.as_dict())
        return row
    for name in checks_n:
        checks[f"{name}_by_n"] = checks_n[name]
        checks[f"{name}_by_i"] = checks_i[name]
    checks["phi_le_n"] = all(r.value <= h for r in list(phis_n.values()) + list(phis_i.values()))
    row.update(
        status="PASS" if all(checks.values()) else "FAIL",
        checks=checks,
        distinct_members=len(set(fam_n.members)),
        weil=weil,
        orientations={"by_n": block_n, "by_i": block_i},
        ratios=[
            {"ell": k, "phi": phis_n[k].value, "ratio": weil_ratio(phis_n[k].value, k, p)} for k in range(1, ell + 1)
        ],
        timings=sw.as_dict(),
    )
    return row


def gms_family(p: int) -> SequenceFamily:
    return build_polynomial_family(p, enumerate_gms_quadratics(p), f"gms2 p={p}")


def gms_certificate(p: int) -> SpecificationPattern:
    """e_1 = e_{p-1} in every member, so opposite signs there are never matched."""
    return SpecificationPattern((1, p - 1), (1, -1))


def verify_gms_prime(p: int, budget: SearchBudget, timings: bool = False) -> dict:
    sw = Stopwatch(timings)
    row: dict = {"p": p}
    try:
        with sw.stage("families"):
            fam = gms_family(p)
        with sw.stage("complexity"):
            comp = family_complexity(fam, budget)
    except BudgetExceeded as exc:
        row.update(status="SKIPPED", reason=str(exc), timings=sw.as_dict())
        return row
    cert = gms_certificate(p)
    matched = count_matching_sequences(fam, cert)
    checks = {
        "complexity_le_1": comp.value <= 1,
        "certificate_unmatched": matched == 0,
        "first_equals_second_last": bool(np.array_equal(fam.signs[:, 0], fam.signs[:, p - 2])),
        "entropy": 2**comp.value <= fam.size,
        "witnesses": comp.blocking_pattern is None or count_matching_sequences(fam, comp.blocking_pattern) == 0,
    }
    row.update(
        status="PASS" if all(checks.values()) else "FAIL",
        F=fam.size,
        N=fam.length,
        checks=checks,
        complexity=comp.to_dict(),
        certificate={**cert.to_dict(), "matches": matched},
        timings=sw.as_dict(),
    )
    return row


def primes_in_range(p_min: int, p_max: int) -> list[int]:
    return [q for q in range(max(p_min, 11), p_max + 1) if is_prime(q)]


def verify_range(
    p_min: int,
    p_max: int,
    ell: int,
    family: str,
    budget: SearchBudget,
    threads: int | None = None,
    timings: bool = False,
) -> dict:
    primes = primes_in_range(p_min, p_max)
    if not primes:
        raise ValueError(f"no primes >= 11 in [{p_min}, {p_max}]")
    if family == "quadratic":
        rows = [verify_quadratic_prime(q, ell, budget, threads, timings) for q in primes]
    elif family == "gms2":
        rows = [verify_gms_prime(q, budget, timings) for q in primes]
    else:
        raise ValueError(f"unsupported family {family!r}")
    counts = {s: sum(r["status"] == s for r in rows) for s in ("PASS", "FAIL", "SKIPPED")}
    return {
        "schema": SCHEMA,
        "kind": "verify",
        "params": {
            "p_min": p_min,
            "p_max": p_max,
            "ell": ell,
            "family": family,
            "log_base": LOG_BASE,
            "tool_version": seqfam.__version__,
        },
        "budget": _budget_dict(budget, "skipped" if counts["SKIPPED"] else "ok"),
        "primes": rows,
        "summary": counts,
    }


def squarefree_shift_family(p: int, k: int, d: int, limit: int) -> tuple[SequenceFamily, PolySpec, PolySpec]:
    polys = enumerate_squarefree_upto(p, k, limit)
    f = next((g for g in polys if g.degree == k), None)
    if f is None:
        f = next(g for g in enumerate_squarefree_upto(p, k) if g.degree == k)
        polys.append(f)
    g = f.shift(d)
    if g not in polys:
        polys.append(g)
    fam = build_polynomial_family(p, polys, f"squarefree-shift p={p} k={k} d={d} count={len(polys)}")
    return fam, f, g


def compare_family(
    kind: str,
    p: int,
    ell: int,
    budget: SearchBudget,
    *,
    d: int = 1,
    k: int = 2,
    limit: int = 64,
    threads: int | None = None,
) -> dict:
    p = Prime(p)
    extra: dict = {}
    checks: dict = {}
    if kind == "quadratic":
        b = find_quadratic_nonresidue(p).value
        fam = build_quadratic_family(QuadraticFamilyParams(p, b))
    elif kind == "gms2":
        fam = gms_family(p)
        cert = gms_certificate(p)
        matched = count_matching_sequences(fam, cert)
        extra["certificate"] = {**cert.to_dict(), "matches": matched}
        checks["certificate_unmatched"] = matched == 0
    elif kind == "squarefree-shift":
        if not 1 <= d < p:
            raise ValueError(f"shift d must be in [1, {p - 1}]")
        fam, f, g = squarefree_shift_family(p, k, d, limit)
        ig = fam.members.index(build_polynomial_family(p, [g]).members[0]) + 1
        if_ = fam.members.index(build_polynomial_family(p, [f]).members[0]) + 1
        I, D, M = (ig, if_), (0, d), p - d
        value = window_sum(fam.signs, I, D, M)
        bound = p - d - 2 * k
        extra["shift_pair"] = {
            "f": str(f),
            "g": str(g),
            "witness": {"M": M, "D": list(D), "I": list(I)},
            "value": abs(value),
            "claimed_lower_bound": bound,
        }
        checks["shift_pair_bound"] = abs(value) >= bound
    else:
        raise ValueError(f"unsupported family kind {kind!r}")
    comp = family_complexity(fam, budget)
    phis = phi_table(fam, range(1, ell + 1), budget, threads)
    if kind == "gms2":
        checks["complexity_le_1"] = comp.value <= 1
    if kind == "squarefree-shift" and 2 in phis:
        checks["phi2_ge_shift_pair"] = phis[2].value >= extra["shift_pair"]["value"]
    return {
        "schema": SCHEMA,
        "kind": "compare",
        "params": {"family": kind, "p": int(p), "ell": ell, "F": fam.size, "N": fam.length, "label": fam.label,
                   "tool_version": seqfam.__version__},
        "complexity": comp.to_dict(),
        "measures": [_measure_entry(e, r) for e, r in phis.items()],
        **extra,
        "checks": checks,
        "status": "PASS" if all(checks.values()) else "FAIL",
    }
