"""JIT-compiled search kernels.

Same contracts as ``_numpy_kernels``; selected unless SEQFAM_DISABLE_NUMBA
is set or numba is missing.
"""

from __future__ import annotations

import os

import numba as nb
import numpy as np

from seqfam.measures import _common

if "NUMBA_THREADING_LAYER_PRIORITY" not in os.environ:
    # prefer OpenMP; an outdated TBB otherwise triggers a warning on first use
    nb.config.THREADING_LAYER_PRIORITY = ["omp", "tbb", "workqueue"]

_window_witness = nb.njit(cache=True)(_common.window_witness)

_U8 = np.uint64(0xFF)


@nb.njit(cache=True)
def _window_value(acc, L, tot, mxp, mnp):
    cur = 0
    hi = 0
    lo = 0
    rem = L
    w = 0
    while rem > 0:
        word = acc[w]
        sh = 0
        while rem > 0 and sh < 64:
            n = 8 if rem >= 8 else rem
            b = np.int64((word >> np.uint64(sh)) & _U8)
            v = cur + mxp[n, b]
            if v > hi:
                hi = v
            v = cur + mnp[n, b]
            if v < lo:
                lo = v
            cur += tot[n, b]
            rem -= n
            sh += 8
        w += 1
    return hi - lo


@nb.njit(cache=True)
def _key_less(cq, cs, cm, bq, bs, bm, K):
    # order: classes (I), then shifts (D), then window length (M)
    ell = cq.shape[0]
    for a in range(ell):
        x = cq[a] % K
        y = bq[a] % K
        if x != y:
            return x < y
    for a in range(ell):
        x = cq[a] // K + cs
        y = bq[a] // K + bs
        if x != y:
            return x < y
    return cm < bm


@nb.njit(cache=True)
def _classes_greater(cq, bq, K):
    for a in range(cq.shape[0]):
        x = cq[a] % K
        y = bq[a] % K
        if x != y:
            return x > y
    return False


@nb.njit(cache=True)
def _run_task(S, K, N, ell, q0, q1, tot, mxp, mnp, best_q):
    nq = K * N
    W = S.shape[1]
    idx = np.empty(ell, dtype=np.int64)
    acc = np.zeros((ell + 1, W), dtype=np.uint64)
    best_v = -1
    best_s = -1
    best_m = -1

    idx[0] = q0
    for w in range(W):
        acc[1, w] = S[q0, w]
    start = 1
    if ell >= 2:
        idx[1] = q1
        for w in range(W):
            acc[2, w] = acc[1, w] ^ S[q1, w]
        start = 2

    level = start
    if start < ell:
        idx[level] = idx[level - 1]
    while True:
        if level < ell:
            idx[level] += 1
            q = idx[level]
            if q > nq - (ell - level) or N - q // K < best_v:
                level -= 1
                if level < start:
                    break
                continue
            for w in range(W):
                acc[level + 1, w] = acc[level, w] ^ S[q, w]
            if level < ell - 1:
                level += 1
                idx[level] = q
                continue
        # all ell slots filled: evaluate
        L = N - idx[ell - 1] // K
        if L >= best_v:
            v = _window_value(acc[ell], L, tot, mxp, mnp)
            if v > best_v or (v == best_v and not _classes_greater(idx, best_q, K)):
                s, m = _window_witness(acc[ell], L)
                if v > best_v or _key_less(idx, s, m, best_q, best_s, best_m, K):
                    best_v = v
                    best_s = s
                    best_m = m
                    for a in range(ell):
                        best_q[a] = idx[a]
        if start == ell:
            break
    return best_v, best_s, best_m


@nb.njit(parallel=True, cache=True)
def _run_tasks(S, K, N, ell, tasks, tot, mxp, mnp):
    T = tasks.shape[0]
    out_v = np.empty(T, dtype=np.int64)
    out_s = np.empty(T, dtype=np.int64)
    out_m = np.empty(T, dtype=np.int64)
    out_q = np.zeros((T, ell), dtype=np.int64)
    for t in nb.prange(T):
        bq = np.zeros(ell, dtype=np.int64)
        v, s, m = _run_task(S, K, N, ell, tasks[t, 0], tasks[t, 1], tot, mxp, mnp, bq)
        out_v[t] = v
        out_s[t] = s
        out_m[t] = m
        for a in range(ell):
            out_q[t, a] = bq[a]
    return out_v, out_q, out_s, out_m


def phi_search(S: np.ndarray, K: int, N: int, ell: int):
    """Best canonical configuration: (value, q tuple, start, length).

    Work is split into tasks by the first two slots; each task keeps its own
    best and the caller-visible result is the reduction of task results in
    task order, so it does not depend on the thread count.
    """
    nq = K * N
    if ell == 1:
        tasks = np.array([(q0, -1) for q0 in range(K)], dtype=np.int64)
    else:
        tasks = np.array(
            [(q0, q1) for q0 in range(K) for q1 in range(q0 + 1, nq - ell + 2)],
            dtype=np.int64,
        ).reshape(-1, 2)
    if len(tasks) == 0:
        return 0, None, -1, -1
    v, q, s, m = _run_tasks(S, K, N, ell, tasks, _common.TOTAL, _common.MAX_PREFIX, _common.MIN_PREFIX)
    best = v.max()
    keys = [
        (tuple(int(x) % K for x in q[t]), tuple(int(x) // K + int(s[t]) for x in q[t]), int(m[t]), t)
        for t in np.flatnonzero(v == best)
    ]
    *_, t = min(keys)
    return int(best), tuple(int(x) for x in q[t]), int(s[t]), int(m[t])


@nb.njit(cache=True)
def first_uncovered(bits, j):
    """First position subset (lexicographic) of size j on which some sign
    pattern is missing, with the smallest missing pattern code."""
    F, N = bits.shape
    pos = np.arange(j)
    size = 1 << j
    occ = np.zeros(size, dtype=np.bool_)
    while True:
        occ[:] = False
        cnt = 0
        for k in range(F):
            code = 0
            for a in range(j):
                code = (code << 1) | bits[k, pos[a]]
            if not occ[code]:
                occ[code] = True
                cnt += 1
        if cnt < size:
            for code in range(size):
                if not occ[code]:
                    return pos.copy(), code
        a = j - 1
        while a >= 0 and pos[a] == N - j + a:
            a -= 1
        if a < 0:
            return pos[:0].copy(), -1
        pos[a] += 1
        for c in range(a + 1, j):
            pos[c] = pos[c - 1] + 1


def set_threads(n: int) -> int:
    n = max(1, min(int(n), nb.config.NUMBA_NUM_THREADS))
    nb.set_num_threads(n)
    return n
