"""Pure-Python (numpy-vectorized) implementations of the hot kernels.

This module mirrors the API of the compiled core `stopset._accel` and is
selected by `stopset.kernels` when the extension is not built.  Both
backends must produce identical results; the test suite compares them.

Kernel contract
---------------
Matrices are passed as packed bit rows: `numpy.uint64` arrays of shape
(m, W) with W = ceil(n/64); bit j of word k of a row is column 64*k + j
(0-based).  Single-word variants take shape-(m,) arrays for n <= 64.
"""

from __future__ import annotations

import numpy as np

_LUT16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.uint8)
_M16 = np.uint64(0xFFFF)


def _popcount_u64(arr: np.ndarray) -> np.ndarray:
    """Per-element popcount of a uint64 array."""
    out = _LUT16[(arr & _M16).astype(np.int64)].astype(np.int64)
    for shift in (16, 32, 48):
        out += _LUT16[((arr >> np.uint64(shift)) & _M16).astype(np.int64)]
    return out


def exhaustive_ss_counts(row_masks: np.ndarray, n: int) -> np.ndarray:
    """Count, for each weight w, the vectors x in F_2^n with no row of
    the matrix having integer inner product exactly 1 against x.

    Sweeps all 2^n vectors; the caller enforces the n guard.
    """
    counts = np.zeros(n + 1, dtype=np.int64)
    total = 1 << n
    chunk = 1 << 22
    rows = np.asarray(row_masks, dtype=np.uint64)
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        xs = np.arange(start, stop, dtype=np.uint64)
        alive = np.ones(stop - start, dtype=bool)
        for h in rows:
            alive &= _popcount_u64(xs & h) != 1
        if alive.any():
            weights = _popcount_u64(xs[alive])
            counts += np.bincount(weights, minlength=n + 1)
    return counts


def codeword_weight_counts(rows: np.ndarray, n_cols: int) -> np.ndarray:
    """Weight histogram of m*G over all nonzero messages m (with message
    multiplicity).  rows has shape (K, W); the caller enforces the K guard.
    """
    rows = np.asarray(rows, dtype=np.uint64)
    k, w_words = rows.shape
    k1 = min(k, 13)
    # all XOR combinations of the first k1 rows, built by doubling
    part = np.zeros((1, w_words), dtype=np.uint64)
    for i in range(k1):
        part = np.concatenate([part, part ^ rows[i]], axis=0)
    counts = np.zeros(n_cols + 1, dtype=np.int64)
    rest = k - k1
    for msg_hi in range(1 << rest):
        cw = np.zeros(w_words, dtype=np.uint64)
        for i in range(rest):
            if (msg_hi >> i) & 1:
                cw ^= rows[k1 + i]
        full = part ^ cw
        weights = _popcount_u64(full).sum(axis=1)
        if msg_hi == 0:
            weights = weights[1:]  # drop the all-zero message
        counts += np.bincount(weights, minlength=n_cols + 1)
    return counts


def gray_count_dmin_ge2(L: int, w: int, start: int, stop: int) -> int:
    """Count L x w binary matrices, over reflected-Gray-code positions
    [start, stop), in which no nonzero row combination has weight 1.
    """
    mask = np.uint64((1 << w) - 1)
    lut = np.zeros(1 << w, dtype=bool)
    for v in range(1 << w):
        lut[v] = bin(v).count("1") == 1
    count = 0
    chunk = 1 << 20
    for lo in range(start, stop, chunk):
        hi = min(lo + chunk, stop)
        idx = np.arange(lo, hi, dtype=np.uint64)
        codes = idx ^ (idx >> np.uint64(1))
        bad = np.zeros(hi - lo, dtype=bool)
        rows = [(codes >> np.uint64(j * w)) & mask for j in range(L)]
        for coeff in range(1, 1 << L):
            combo = np.zeros(hi - lo, dtype=np.uint64)
            for j in range(L):
                if (coeff >> j) & 1:
                    combo ^= rows[j]
            bad |= lut[combo.astype(np.int64)]
        count += int(np.count_nonzero(~bad))
    return count


def _stopping_dfs(row_masks, col_rows, n, w_max, counts, out):
    """Branch on a pinned row's candidate columns; emit supports with no
    row at inner product exactly 1.  Masks are Python ints."""
    m = len(row_masks)
    cnt = [0] * m
    included: list[int] = []
    state = {"inc": 0, "exc": 0}

    def rec():
        pinned_best = -1
        best_mask = 0
        best_size = -1
        blocked = ~(state["inc"] | state["exc"])
        for i in range(m):
            if cnt[i] == 1:
                cand = row_masks[i] & blocked
                if cand == 0:
                    return  # this row can never escape inner product 1
                size = bin(cand).count("1")
                if best_size < 0 or size < best_size:
                    pinned_best, best_mask, best_size = i, cand, size
        if pinned_best < 0:
            if included:
                counts[len(included)] += 1
                if out is not None:
                    out.append(tuple(sorted(included)))
            if len(included) == w_max:
                return
            best_mask = blocked & ((1 << n) - 1)
        elif len(included) == w_max:
            return  # no budget left to fix the pinned row
        frame_exc = 0
        c_mask = best_mask
        while c_mask:
            c_bit = c_mask & -c_mask
            c_mask ^= c_bit
            c = c_bit.bit_length() - 1
            state["inc"] |= c_bit
            included.append(c)
            for i in col_rows[c]:
                cnt[i] += 1
            rec()
            for i in col_rows[c]:
                cnt[i] -= 1
            included.pop()
            state["inc"] ^= c_bit
            state["exc"] |= c_bit
            frame_exc |= c_bit
        state["exc"] ^= frame_exc

    rec()


def _rows_to_ints(rows: np.ndarray) -> list[int]:
    rows = np.asarray(rows, dtype=np.uint64)
    out = []
    for r in rows:
        v = 0
        for k in range(rows.shape[1] - 1, -1, -1):
            v = (v << 64) | int(r[k])
        out.append(v)
    return out


def stopping_sets_up_to(rows: np.ndarray, n: int, w_max: int) -> list[tuple[int, ...]]:
    """All nonempty stopping supports of weight <= w_max, as 0-based
    column tuples (unsorted between supports)."""
    masks = _rows_to_ints(rows)
    col_rows = [[i for i, h in enumerate(masks) if (h >> c) & 1] for c in range(n)]
    counts = np.zeros(w_max + 1, dtype=np.int64)
    out: list[tuple[int, ...]] = []
    _stopping_dfs(masks, col_rows, n, w_max, counts, out)
    return out


def stopping_set_census(rows: np.ndarray, n: int, w_max: int) -> np.ndarray:
    """Per-weight counts of nonempty stopping supports of weight <= w_max."""
    masks = _rows_to_ints(rows)
    col_rows = [[i for i, h in enumerate(masks) if (h >> c) & 1] for c in range(n)]
    counts = np.zeros(w_max + 1, dtype=np.int64)
    _stopping_dfs(masks, col_rows, n, w_max, counts, None)
    return counts


def peel_residual_batch(rows: np.ndarray, patterns: np.ndarray, n: int) -> np.ndarray:
    """Resolve every erased position that some row isolates, repeatedly,
    for each pattern.  Returns the residual erased sets (packed words).

    Vectorized across trials; within one pass rows are applied in order,
    which does not change the (unique) fixed point.
    """
    rows = np.asarray(rows, dtype=np.uint64)
    residual = np.asarray(patterns, dtype=np.uint64).copy()
    if residual.ndim == 1:
        residual = residual[:, None]
    active = np.ones(residual.shape[0], dtype=bool)
    while active.any():
        idx = np.flatnonzero(active)
        sub = residual[idx]
        changed = np.zeros(len(idx), dtype=bool)
        for h in rows:
            hit = sub & h
            deg = _popcount_u64(hit).sum(axis=1)
            single = deg == 1
            if single.any():
                sub[single] &= ~hit[single]
                changed |= single
        residual[idx] = sub
        still = changed & (_popcount_u64(sub).sum(axis=1) > 0)
        active[:] = False
        active[idx[still]] = True
    return residual


def failure_counts_by_weight(row_masks: np.ndarray, n: int) -> np.ndarray:
    """For each pattern weight, the number of erasure patterns the peeling
    pass fails to clear.  Sweeps all 2^n patterns; caller enforces the guard.
    """
    rows = np.asarray(row_masks, dtype=np.uint64).reshape(-1, 1)
    counts = np.zeros(n + 1, dtype=np.int64)
    total = 1 << n
    chunk = 1 << 18
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        pats = np.arange(start, stop, dtype=np.uint64)[:, None]
        res = peel_residual_batch(rows.reshape(-1), pats, n)
        failed = _popcount_u64(res).sum(axis=1) > 0
        if failed.any():
            weights = _popcount_u64(pats[failed, 0])
            counts += np.bincount(weights, minlength=n + 1)
    return counts
