"""Vectorised numpy kernels; reference-speed fallback for the numba path."""

from __future__ import annotations

import itertools

import numpy as np

from seqfam.measures import _common

window_witness = _common.window_witness


def _window_values(acc: np.ndarray, L: np.ndarray) -> np.ndarray:
    n = acc.shape[0]
    by = np.ascontiguousarray(acc, dtype="<u8").view(np.uint8).reshape(n, -1)
    cur = np.zeros(n, dtype=np.int64)
    hi = np.zeros(n, dtype=np.int64)
    lo = np.zeros(n, dtype=np.int64)
    for j in range(by.shape[1]):
        nbits = np.clip(L - 8 * j, 0, 8)
        if not nbits.any():
            break
        b = by[:, j]
        np.maximum(hi, cur + _common.MAX_PREFIX[nbits, b], out=hi)
        np.minimum(lo, cur + _common.MIN_PREFIX[nbits, b], out=lo)
        cur += _common.TOTAL[nbits, b]
    return hi - lo


def phi_search(S: np.ndarray, K: int, N: int, ell: int):
    """Same contract as the numba ``phi_search``."""
    nq = K * N
    if nq < ell:
        return 0, None, -1, -1
    best_v = -1
    best_key = None
    shifts = np.arange(nq) // K

    def consider(prefix: tuple[int, ...], acc0: np.ndarray, lo_q: int, hi_q: int) -> None:
        nonlocal best_v, best_key
        qs = np.arange(lo_q, hi_q)
        if len(qs) == 0:
            return
        L = N - shifts[qs]
        keep = L >= best_v
        qs, L = qs[keep], L[keep]
        if len(qs) == 0:
            return
        acc = S[qs] ^ acc0
        vals = _window_values(acc, L)
        for r in np.flatnonzero(vals >= best_v):
            v = int(vals[r])
            if v < best_v:
                continue
            q = (*prefix, int(qs[r]))
            s, m = window_witness(acc[r], int(L[r]))
            key = (tuple(x % K for x in q), tuple(x // K + s for x in q), m)
            if v > best_v or key < best_key[0]:
                best_v = v
                best_key = (key, q, s, m)

    if ell == 1:
        consider((), np.zeros(S.shape[1], dtype=np.uint64), 0, K)
    else:
        for q0 in range(K):
            for mid in itertools.combinations(range(q0 + 1, nq - 1), ell - 2):
                prefix = (q0, *mid)
                if N - prefix[-1] // K < best_v:
                    continue
                acc0 = np.bitwise_xor.reduce(S[list(prefix)], axis=0)
                consider(prefix, acc0, prefix[-1] + 1, nq)
    _, q, s, m = best_key
    return best_v, q, s, m


def first_uncovered(bits: np.ndarray, j: int, chunk: int = 4096):
    """Same contract as the numba ``first_uncovered``."""
    F, N = bits.shape
    size = 1 << j
    weights = (1 << np.arange(j - 1, -1, -1)).astype(np.int64)
    combos = itertools.combinations(range(N), j)
    while True:
        block = np.array(list(itertools.islice(combos, chunk)), dtype=np.int64).reshape(-1, j)
        if len(block) == 0:
            return np.zeros(0, dtype=np.int64), -1
        codes = bits[:, block].astype(np.int64) @ weights  # (F, nblock)
        occ = np.zeros((len(block), size), dtype=bool)
        occ[np.arange(len(block))[None, :], codes] = True
        missing = ~occ.all(axis=1)
        if missing.any():
            r = int(np.argmax(missing))
            return block[r].copy(), int(np.argmin(occ[r]))


def set_threads(n: int) -> int:
    return 1
