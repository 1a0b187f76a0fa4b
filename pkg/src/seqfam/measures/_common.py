"""Pieces shared by the numba and numpy kernel backends."""

from __future__ import annotations

import numpy as np


def _byte_tables() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    # For a byte b whose low nb bits are valid entries (bit 1 -> -1), the
    # total of those entries and the max/min over their prefix sums of
    # length 1..nb.  Row nb = 0 is all zeros.
    tot = np.zeros((9, 256), dtype=np.int64)
    mxp = np.zeros((9, 256), dtype=np.int64)
    mnp = np.zeros((9, 256), dtype=np.int64)
    for nb in range(1, 9):
        for b in range(256):
            cur, hi, lo = 0, -9, 9
            for k in range(nb):
                cur += -1 if (b >> k) & 1 else 1
                hi, lo = max(hi, cur), min(lo, cur)
            tot[nb, b], mxp[nb, b], mnp[nb, b] = cur, hi, lo
    return tot, mxp, mnp


TOTAL, MAX_PREFIX, MIN_PREFIX = _byte_tables()


def shifted_rows(rep_bits: np.ndarray) -> np.ndarray:
    """Packed suffixes of every class representative at every shift.

    Row ``q = d * K + c`` holds entries d+1..N of representative c, starting
    at bit 0, so the product of several (c, d) choices is the XOR of rows.
    """
    K, N = rep_bits.shape
    W = -(-N // 64)
    out = np.zeros((K * N, W), dtype=np.uint64)
    buf = np.zeros(W * 64, dtype=np.uint8)
    for d in range(N):
        for c in range(K):
            buf[:] = 0
            buf[: N - d] = rep_bits[c, d:]
            out[d * K + c] = np.packbits(buf, bitorder="little").view("<u8")
    return out


def window_witness(acc: np.ndarray, L: int) -> tuple[int, int]:
    """Earliest window (start, length) of the first L entries of a packed
    word array whose |sum| equals the maximum over all windows."""
    P = np.zeros(L + 1, dtype=np.int64)
    for k in range(L):
        bit = (acc[k >> 6] >> np.uint64(k & 63)) & np.uint64(1)
        P[k + 1] = P[k] + 1 - 2 * np.int64(bit)
    hi = P.max()
    lo = P.min()
    for s in range(L):
        if P[s] == hi:
            target = lo
        elif P[s] == lo:
            target = hi
        else:
            continue
        for t in range(s + 1, L + 1):
            if P[t] == target:
                return s, t - s
    return -1, -1
