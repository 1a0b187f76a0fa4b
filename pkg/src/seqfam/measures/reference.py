"""Naive scalar evaluations used to audit the optimised searches.

Nothing here touches the packed representation: every sum is a plain loop
over the (F, N) sign matrix with 1-based member indices, as in the
definitions.
"""

from __future__ import annotations

import itertools

import numpy as np


def window_sum(signs: np.ndarray, I, D, M: int) -> int:
    """sum_{n=1..M} e[i_1, n+d_1] * ... * e[i_l, n+d_l] (1-based I)."""
    total = 0
    for n in range(1, M + 1):
        prod = 1
        for i, d in zip(I, D):
            prod *= int(signs[i - 1, n + d - 1])
        total += prod
    return total


def _equal_rows(signs: np.ndarray) -> list[list[bool]]:
    F = signs.shape[0]
    return [[bool(np.array_equal(signs[a], signs[b])) for b in range(F)] for a in range(F)]


def is_admissible(signs: np.ndarray, I, D, M: int) -> bool:
    F, N = signs.shape
    ell = len(I)
    if len(D) != ell or ell == 0 or M < 1:
        return False
    if any(not 1 <= i <= F for i in I):
        return False
    if D[0] < 0 or any(D[a] > D[a + 1] for a in range(ell - 1)) or M + D[-1] > N:
        return False
    eq = _equal_rows(signs)
    for a in range(ell):
        for b in range(a + 1, ell):
            if D[a] == D[b] and eq[I[a] - 1][I[b] - 1]:
                return False
    return True


def naive_cross_correlation(signs: np.ndarray, ell: int):
    """Exhaustive max over (I, D, M) in lexicographic order.

    Returns ``(value, (I, D, M))`` where the witness is the lexicographically
    first maximiser, or ``(0, None)`` if no configuration is admissible.
    """
    F, N = signs.shape
    eq = _equal_rows(signs)
    best, witness = 0, None
    for I in itertools.product(range(1, F + 1), repeat=ell):
        for D in itertools.combinations_with_replacement(range(N), ell):
            if any(
                D[a] == D[b] and eq[I[a] - 1][I[b] - 1]
                for a in range(ell)
                for b in range(a + 1, ell)
            ):
                continue
            running = 0
            for M in range(1, N - D[-1] + 1):
                prod = 1
                for i, d in zip(I, D):
                    prod *= int(signs[i - 1, M + d - 1])
                running += prod
                if abs(running) > best:
                    best, witness = abs(running), (I, D, M)
    return best, witness


def naive_family_complexity(signs: np.ndarray) -> int:
    """Greatest j such that every specification of size j is matched."""
    F, N = signs.shape
    rows = [tuple(int(x) for x in r) for r in signs]
    j = 0
    while j < N:
        size = j + 1
        for pos in itertools.combinations(range(N), size):
            for eps in itertools.product((1, -1), repeat=size):
                if not any(all(r[q] == e for q, e in zip(pos, eps)) for r in rows):
                    return j
        j = size
    return j
