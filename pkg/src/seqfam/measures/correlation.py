from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import NamedTuple

import numpy as np

from seqfam.families import BinarySequence, SequenceFamily
from seqfam.measures import _common
from seqfam.measures._backend import get_kernels
from seqfam.measures.budget import DEFAULT_BUDGET, SearchBudget
from seqfam.measures.reference import window_sum


@dataclass(frozen=True)
class CorrelationWitness:
    """A window length M, nondecreasing shifts D and 1-based members I."""

    M: int
    D: tuple[int, ...]
    I: tuple[int, ...]
    signed_sum: int

    def to_dict(self) -> dict:
        return {"M": self.M, "D": list(self.D), "I": list(self.I), "signed_sum": self.signed_sum}


class CorrelationResult(NamedTuple):
    value: int
    witness: CorrelationWitness | None


def correlation_cost(fam: SequenceFamily, ell: int) -> int:
    """Number of canonical (D, I) configurations the search evaluates.

    Each configuration is one packed product covering every window, so this
    is also the count the budget is charged for.
    """
    K = len(fam.equality_classes()[1])
    nq = K * fam.length
    return sum(comb(nq - q0 - 1, ell - 1) for q0 in range(min(K, nq)))


def cross_correlation(
    fam: SequenceFamily,
    ell: int,
    budget: SearchBudget = DEFAULT_BUDGET,
    *,
    threads: int | None = None,
    backend: str | None = None,
) -> CorrelationResult:
    """Exact cross-correlation measure of order ``ell``.

    The search runs over sets of distinct (equality class, shift) pairs whose
    smallest shift is 0; a common offset of all shifts is folded into the
    window start, so one packed product per set covers every admissible
    (M, D).  Among maximisers the witness with the lexicographically smallest
    (I, D, M) is returned.
    """
    if ell < 1:
        raise ValueError("order ell must be at least 1")
    budget.check(f"cross-correlation of order {ell}", correlation_cost(fam, ell))
    kernels = get_kernels(backend)
    if threads is not None:
        kernels.set_threads(threads)
    _, reps = fam.equality_classes()
    K, N = len(reps), fam.length
    S = _common.shifted_rows(np.ascontiguousarray(fam.bits[reps]))
    value, q, start, M = kernels.phi_search(S, K, N, ell)
    if q is None:
        return CorrelationResult(0, None)
    I = tuple(int(reps[x % K]) + 1 for x in q)
    D = tuple(x // K + start for x in q)
    signed = window_sum(fam.signs, I, D, M)
    if abs(signed) != value:
        raise AssertionError(f"witness re-evaluates to {signed}, search reported {value}")
    return CorrelationResult(value, CorrelationWitness(M, D, I, signed))


def auto_correlation(
    seq: BinarySequence,
    ell: int,
    budget: SearchBudget = DEFAULT_BUDGET,
    **kwargs,
) -> CorrelationResult:
    """Correlation measure of a single sequence (shifts forced distinct)."""
    return cross_correlation(SequenceFamily((seq,), "single"), ell, budget, **kwargs)


def evaluate_witness(fam: SequenceFamily, witness: CorrelationWitness) -> int:
    """Signed sum of a witness recomputed by the scalar path."""
    return window_sum(fam.signs, witness.I, witness.D, witness.M)
