"""Theorem bound, the counting sufficient condition and Weil-sum checks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb, isqrt
from typing import Sequence

from seqfam.families import SequenceFamily
from seqfam.measures.budget import DEFAULT_BUDGET, SearchBudget
from seqfam.measures.correlation import cross_correlation
from seqfam.ntcore import Prime, legendre_symbol


def theorem_orders(F: int) -> int:
    """Number of orders 1..floor(log2 F) entering the complexity bound."""
    return F.bit_length() - 1


def _ceil_log2_ratio(a: int, b: int) -> int:
    """ceil(log2 a - log2 b) for positive integers: smallest t with b*2^t >= a."""
    t = a.bit_length() - b.bit_length() - 1
    while not _ge_scaled(b, t, a):
        t += 1
    while _ge_scaled(b, t - 1, a):
        t -= 1
    return t


def _ge_scaled(b: int, t: int, a: int) -> bool:
    return (b << t) >= a if t >= 0 else b >= (a << -t)


def theorem_bound_raw(F: int, dual_phis: Sequence[int]) -> int:
    """ceil(log2 F - log2 max(dual_phis)) - 1, in exact integer arithmetic."""
    if F < 2:
        raise ValueError("the bound needs at least two members")
    if len(dual_phis) != theorem_orders(F):
        raise ValueError(f"expected {theorem_orders(F)} dual measures, got {len(dual_phis)}")
    if any(int(v) <= 0 for v in dual_phis):
        raise ValueError("dual cross-correlation values must be positive")
    return _ceil_log2_ratio(F, max(int(v) for v in dual_phis)) - 1


def theorem_lower_bound(F: int, dual_phis: Sequence[int]) -> int:
    return max(0, theorem_bound_raw(F, dual_phis))


def specification_guaranteed(F: int, j: int, phis: Sequence[int]) -> bool:
    """True iff F > sum_{l=1..j} C(j, l) * phi_l."""
    if len(phis) != j:
        raise ValueError(f"expected {j} measures, got {len(phis)}")
    return F > sum(comb(j, ell) * int(v) for ell, v in enumerate(phis, start=1))


def largest_guaranteed(F: int, phis: Sequence[int]) -> int:
    """Largest j <= len(phis) for which the sufficient condition holds (0 if none)."""
    best = 0
    for j in range(1, len(phis) + 1):
        if specification_guaranteed(F, j, phis[:j]):
            best = j
    return best


def complete_weil_sum(p: int, b: int, n1: int, n2: int) -> int:
    """sum_{i=0..p-1} (n1^2 - b i^2 / p) (n2^2 - b i^2 / p)."""
    p = Prime(p)
    h = (p - 1) // 2
    if not (1 <= n1 <= h and 1 <= n2 <= h):
        raise ValueError(f"n1, n2 must lie in [1, {h}]")
    if legendre_symbol(b, p) != -1:
        raise ValueError(f"b={b} is not a quadratic nonresidue mod {p}")
    return sum(
        legendre_symbol(n1 * n1 - b * i * i, p) * legendre_symbol(n2 * n2 - b * i * i, p)
        for i in range(p)
    )


def weil_limit(p: int) -> int:
    """floor(3 sqrt(p))."""
    return isqrt(9 * p)


@dataclass(frozen=True)
class RatioRow:
    ell: int
    phi: int
    ratio: float

    def to_dict(self) -> dict:
        return {"ell": self.ell, "phi": self.phi, "ratio": self.ratio}


def weil_ratio(phi: int, ell: int, p: int) -> float:
    return phi / (ell * math.sqrt(p) * math.log(p))


def weil_ratio_report(
    fam: SequenceFamily,
    p: int,
    ell_max: int,
    budget: SearchBudget = DEFAULT_BUDGET,
    *,
    phis: dict[int, int] | None = None,
    **kwargs,
) -> list[RatioRow]:
    """phi_l / (l sqrt(p) ln p) for l = 1..ell_max; observational only."""
    if ell_max < 1:
        raise ValueError("ell_max must be at least 1")
    phis = dict(phis or {})
    rows = []
    for ell in range(1, ell_max + 1):
        if ell not in phis:
            phis[ell] = cross_correlation(fam, ell, budget, **kwargs).value
        rows.append(RatioRow(ell, phis[ell], weil_ratio(phis[ell], ell, p)))
    return rows
