# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot kernels.

Same API and semantics as `stopset._fallback`; see the contract note
there.  Packed rows are (m, W) uint64 arrays, bit j of word k = column
64*k + j (0-based).
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

import numpy as np

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

ctypedef unsigned long long u64


cdef inline int _bit_index(u64 v) nogil:
    cdef int b = 0
    while not (v & 1):
        v >>= 1
        b += 1
    return b


def exhaustive_ss_counts(row_masks, int n):
    """Per-weight counts of vectors x with no row at inner product 1."""
    cdef u64[::1] rows = np.ascontiguousarray(row_masks, dtype=np.uint64)
    cdef int m = rows.shape[0]
    counts_arr = np.zeros(n + 1, dtype=np.int64)
    cdef long long[::1] counts = counts_arr
    cdef u64 x = 0, total = (<u64>1) << n
    cdef int i, ok
    with nogil:
        while x < total:
            ok = 1
            for i in range(m):
                if __builtin_popcountll(rows[i] & x) == 1:
                    ok = 0
                    break
            if ok:
                counts[__builtin_popcountll(x)] += 1
            x += 1
    return counts_arr


def codeword_weight_counts(rows, int n_cols):
    """Weight histogram of row combinations over all nonzero coefficient
    vectors, by Gray-code sweep of the 2^K messages."""
    cdef u64[:, ::1] r = np.ascontiguousarray(rows, dtype=np.uint64)
    cdef int k = r.shape[0]
    cdef int n_words = r.shape[1]
    counts_arr = np.zeros(n_cols + 1, dtype=np.int64)
    cdef long long[::1] counts = counts_arr
    cdef u64* cw = <u64*>malloc(n_words * sizeof(u64))
    if cw == NULL:
        raise MemoryError()
    cdef u64 idx = 1, total = (<u64>1) << k
    cdef u64 gray, prev_gray = 0
    cdef int j, bit, weight
    try:
        with nogil:
            memset(cw, 0, n_words * sizeof(u64))
            while idx < total:
                gray = idx ^ (idx >> 1)
                bit = _bit_index(gray ^ prev_gray)
                prev_gray = gray
                weight = 0
                for j in range(n_words):
                    cw[j] ^= r[bit, j]
                    weight += __builtin_popcountll(cw[j])
                counts[weight] += 1
                idx += 1
    finally:
        free(cw)
    return counts_arr


def gray_count_dmin_ge2(int L, int w, u64 start, u64 stop):
    """Count matrices over Gray positions [start, stop) in which no
    nonzero row combination has weight 1.

    One Gray step flips one matrix bit, which flips the same column bit
    in exactly 2^(L-1) combination vectors; combination weights and the
    number of weight-1 combinations are maintained incrementally.
    """
    if start >= stop:
        return 0
    cdef int n_combo = 1 << L
    cdef int half = n_combo >> 1
    cdef unsigned int* comboval = <unsigned int*>malloc(n_combo * sizeof(unsigned int))
    cdef signed char* wt = <signed char*>malloc(n_combo)
    cdef int* row_combos = <int*>malloc(L * half * sizeof(int))
    cdef long long count = 0
    cdef int cnt1 = 0
    cdef int i, j, r, c, t
    cdef u64 pos, gray, prev_gray
    cdef unsigned int cbit
    if comboval == NULL or wt == NULL or row_combos == NULL:
        free(comboval); free(wt); free(row_combos)
        raise MemoryError()
    try:
        for r in range(L):
            t = 0
            for i in range(1, n_combo):
                if (i >> r) & 1:
                    row_combos[r * half + t] = i
                    t += 1
        prev_gray = start ^ (start >> 1)
        comboval[0] = 0
        wt[0] = 0
        for i in range(1, n_combo):
            comboval[i] = 0
            for r in range(L):
                if (i >> r) & 1:
                    comboval[i] ^= <unsigned int>((prev_gray >> (r * w)) & (((<u64>1) << w) - 1))
            wt[i] = <signed char>__builtin_popcountll(comboval[i])
            if wt[i] == 1:
                cnt1 += 1
        with nogil:
            if cnt1 == 0:
                count += 1
            pos = start + 1
            while pos < stop:
                gray = pos ^ (pos >> 1)
                t = _bit_index(gray ^ prev_gray)
                prev_gray = gray
                r = t / w
                c = t % w
                cbit = (<unsigned int>1) << c
                for j in range(half):
                    i = row_combos[r * half + j]
                    comboval[i] ^= cbit
                    if comboval[i] & cbit:
                        if wt[i] == 0:
                            cnt1 += 1
                        elif wt[i] == 1:
                            cnt1 -= 1
                        wt[i] += 1
                    else:
                        if wt[i] == 2:
                            cnt1 += 1
                        elif wt[i] == 1:
                            cnt1 -= 1
                        wt[i] -= 1
                if cnt1 == 0:
                    count += 1
                pos += 1
    finally:
        free(comboval)
        free(wt)
        free(row_combos)
    return count


# ---------------------------------------------------------------------------
# stopping-set search
# ---------------------------------------------------------------------------

cdef struct DfsCtx:
    int m
    int n
    int n_words
    int w_max
    u64* rows       # m * n_words packed rows
    u64* top        # n_words: mask of valid columns
    int* col_ptr    # n + 1 (CSR offsets)
    int* col_rows   # rows containing each column
    int* cnt        # per-row count of included in-row columns
    u64* inc        # included columns
    u64* exc        # excluded columns
    u64* frame_exc  # per-depth scratch: exclusions to undo on frame exit
    u64* branch     # per-depth scratch: branch column set of the frame
    u64* inter      # shared scratch: intersection of pinned candidates
    int* included   # included column stack
    int depth
    long long* counts


cdef int _dfs(DfsCtx* ctx, object out) except -1:
    """Branch on a pinned row's candidate columns (include one, then bar
    it from the remaining branches); emit the included set whenever no
    row sits at inner product exactly 1."""
    cdef int i, k, t, c, size
    cdef int best_row = -1, best_size = -1
    cdef int pinned = 0
    cdef u64 word, cand
    cdef int n_words = ctx.n_words
    cdef u64* inter = ctx.inter
    for k in range(n_words):
        inter[k] = ctx.top[k]
    for i in range(ctx.m):
        if ctx.cnt[i] == 1:
            pinned += 1
            size = 0
            for k in range(n_words):
                cand = ctx.rows[i * n_words + k] & ~(ctx.inc[k] | ctx.exc[k])
                inter[k] &= cand
                size += __builtin_popcountll(cand)
            if size == 0:
                return 0  # pinned at inner product 1 for good: dead branch
            if best_size < 0 or size < best_size:
                best_row = i
                best_size = size
    if best_row < 0:
        if ctx.depth > 0:
            ctx.counts[ctx.depth] += 1
            if out is not None:
                out.append(tuple(sorted(ctx.included[t] for t in range(ctx.depth))))
        if ctx.depth == ctx.w_max:
            return 0
    elif ctx.depth == ctx.w_max:
        return 0  # no budget left to raise the pinned row past 1

    cdef bint last_budget = pinned > 0 and ctx.depth + 1 == ctx.w_max
    cdef u64* frame_exc = ctx.frame_exc + ctx.depth * n_words
    cdef u64* branch = ctx.branch + ctx.depth * n_words
    for k in range(n_words):
        if last_budget:
            # one column left: it must meet every pinned row at once
            branch[k] = inter[k]
        elif best_row >= 0:
            branch[k] = ctx.rows[best_row * n_words + k] & ~(ctx.inc[k] | ctx.exc[k])
        else:
            branch[k] = ctx.top[k] & ~(ctx.inc[k] | ctx.exc[k])
    memset(frame_exc, 0, n_words * sizeof(u64))
    for k in range(n_words):
        word = branch[k]
        while word:
            c = 64 * k + _bit_index(word & (<u64>0 - word))
            word &= word - 1
            ctx.inc[c >> 6] |= (<u64>1) << (c & 63)
            ctx.included[ctx.depth] = c
            ctx.depth += 1
            for t in range(ctx.col_ptr[c], ctx.col_ptr[c + 1]):
                ctx.cnt[ctx.col_rows[t]] += 1
            _dfs(ctx, out)
            for t in range(ctx.col_ptr[c], ctx.col_ptr[c + 1]):
                ctx.cnt[ctx.col_rows[t]] -= 1
            ctx.depth -= 1
            ctx.inc[c >> 6] &= ~((<u64>1) << (c & 63))
            ctx.exc[c >> 6] |= (<u64>1) << (c & 63)
            frame_exc[c >> 6] |= (<u64>1) << (c & 63)
    for k in range(n_words):
        ctx.exc[k] &= ~frame_exc[k]
    return 0


cdef void _build_col_adjacency(u64* rows, int m, int n_words, int n,
                               int* col_ptr, int* col_rows) noexcept nogil:
    cdef int i, k, c
    cdef u64 word
    cdef int* cursor = <int*>malloc(n * sizeof(int))
    for c in range(n):
        cursor[c] = col_ptr[c]
    for i in range(m):
        for k in range(n_words):
            word = rows[i * n_words + k]
            while word:
                c = 64 * k + _bit_index(word & (<u64>0 - word))
                word &= word - 1
                col_rows[cursor[c]] = i
                cursor[c] += 1
    free(cursor)


cdef _run_dfs(rows, int n, int w_max, bint collect):
    cdef u64[:, ::1] r = np.ascontiguousarray(rows, dtype=np.uint64)
    cdef int m = r.shape[0]
    cdef int n_words = r.shape[1]
    counts_arr = np.zeros(w_max + 1, dtype=np.int64)
    cdef long long[::1] counts = counts_arr
    cdef DfsCtx ctx
    cdef int i, k, c
    cdef u64 word
    ctx.m = m; ctx.n = n; ctx.n_words = n_words; ctx.w_max = w_max
    ctx.depth = 0
    ctx.rows = <u64*>malloc(m * n_words * sizeof(u64))
    ctx.top = <u64*>malloc(n_words * sizeof(u64))
    ctx.col_ptr = <int*>malloc((n + 1) * sizeof(int))
    ctx.col_rows = NULL
    ctx.cnt = <int*>malloc(m * sizeof(int))
    ctx.inc = <u64*>malloc(n_words * sizeof(u64))
    ctx.exc = <u64*>malloc(n_words * sizeof(u64))
    ctx.frame_exc = <u64*>malloc((w_max + 1) * n_words * sizeof(u64))
    ctx.branch = <u64*>malloc((w_max + 1) * n_words * sizeof(u64))
    ctx.inter = <u64*>malloc(n_words * sizeof(u64))
    ctx.included = <int*>malloc((w_max + 1) * sizeof(int))
    ctx.counts = &counts[0]
    if (ctx.rows == NULL or ctx.top == NULL or ctx.col_ptr == NULL or
            ctx.cnt == NULL or ctx.inc == NULL or ctx.exc == NULL or
            ctx.frame_exc == NULL or ctx.branch == NULL or ctx.inter == NULL or
            ctx.included == NULL):
        _free_ctx(&ctx)
        raise MemoryError()
    try:
        for i in range(m):
            for k in range(n_words):
                ctx.rows[i * n_words + k] = r[i, k]
        for k in range(n_words):
            if 64 * (k + 1) <= n:
                ctx.top[k] = <u64>0 - 1
            elif 64 * k < n:
                ctx.top[k] = ((<u64>1) << (n - 64 * k)) - 1
            else:
                ctx.top[k] = 0
        for c in range(n + 1):
            ctx.col_ptr[c] = 0
        for i in range(m):
            for k in range(n_words):
                word = ctx.rows[i * n_words + k]
                while word:
                    c = 64 * k + _bit_index(word & (<u64>0 - word))
                    word &= word - 1
                    ctx.col_ptr[c + 1] += 1
        for c in range(n):
            ctx.col_ptr[c + 1] += ctx.col_ptr[c]
        ctx.col_rows = <int*>malloc((ctx.col_ptr[n] if ctx.col_ptr[n] else 1) * sizeof(int))
        if ctx.col_rows == NULL:
            raise MemoryError()
        _build_col_adjacency(ctx.rows, m, n_words, n, ctx.col_ptr, ctx.col_rows)
        memset(ctx.cnt, 0, m * sizeof(int))
        memset(ctx.inc, 0, n_words * sizeof(u64))
        memset(ctx.exc, 0, n_words * sizeof(u64))
        out = [] if collect else None
        _dfs(&ctx, out)
        return counts_arr, out
    finally:
        _free_ctx(&ctx)


cdef void _free_ctx(DfsCtx* ctx) noexcept nogil:
    free(ctx.rows)
    free(ctx.top)
    free(ctx.col_ptr)
    free(ctx.col_rows)
    free(ctx.cnt)
    free(ctx.inc)
    free(ctx.exc)
    free(ctx.frame_exc)
    free(ctx.branch)
    free(ctx.inter)
    free(ctx.included)


def stopping_sets_up_to(rows, int n, int w_max):
    """All nonempty stopping supports of weight <= w_max as 0-based column
    tuples (unsorted between supports)."""
    counts, out = _run_dfs(rows, n, w_max, True)
    return out


def stopping_set_census(rows, int n, int w_max):
    """Per-weight counts of nonempty stopping supports of weight <= w_max."""
    counts, _ = _run_dfs(rows, n, w_max, False)
    return counts


# ---------------------------------------------------------------------------
# peeling decoder
# ---------------------------------------------------------------------------

def peel_residual_batch(rows, patterns, int n):
    """Residual erased sets after peeling, one per pattern row.

    In-erasure row degrees only decrease, so every row crosses degree 1
    at most once per trial and a length-m worklist suffices.
    """
    cdef u64[:, ::1] r = np.ascontiguousarray(rows, dtype=np.uint64)
    pat_arr = np.ascontiguousarray(patterns, dtype=np.uint64)
    if pat_arr.ndim == 1:
        pat_arr = pat_arr[:, None]
    res_arr = pat_arr.copy()
    cdef u64[:, ::1] res = res_arr
    cdef int m = r.shape[0]
    cdef int n_words = r.shape[1]
    cdef int trials = res.shape[0]
    if res.shape[1] != n_words:
        raise ValueError("pattern word count differs from matrix word count")
    cdef int* deg = <int*>malloc(m * sizeof(int))
    cdef int* queue = <int*>malloc(m * sizeof(int))
    cdef int* col_ptr = <int*>malloc((n + 1) * sizeof(int))
    cdef int* col_rows = NULL
    cdef u64* packed = <u64*>malloc(m * n_words * sizeof(u64))
    cdef int i, k, c, t, head, tail, row, j
    cdef u64 hit, word
    if deg == NULL or queue == NULL or col_ptr == NULL or packed == NULL:
        free(deg); free(queue); free(col_ptr); free(packed)
        raise MemoryError()
    try:
        for i in range(m):
            for k in range(n_words):
                packed[i * n_words + k] = r[i, k]
        for c in range(n + 1):
            col_ptr[c] = 0
        for i in range(m):
            for k in range(n_words):
                word = packed[i * n_words + k]
                while word:
                    c = 64 * k + _bit_index(word & (<u64>0 - word))
                    word &= word - 1
                    col_ptr[c + 1] += 1
        for c in range(n):
            col_ptr[c + 1] += col_ptr[c]
        col_rows = <int*>malloc((col_ptr[n] if col_ptr[n] else 1) * sizeof(int))
        if col_rows == NULL:
            raise MemoryError()
        _build_col_adjacency(packed, m, n_words, n, col_ptr, col_rows)
        with nogil:
            for t in range(trials):
                head = 0
                tail = 0
                for i in range(m):
                    deg[i] = 0
                    for k in range(n_words):
                        deg[i] += __builtin_popcountll(packed[i * n_words + k] & res[t, k])
                    if deg[i] == 1:
                        queue[tail] = i
                        tail += 1
                while head < tail:
                    row = queue[head]
                    head += 1
                    if deg[row] != 1:
                        continue  # stale: resolved to 0 before processing
                    c = -1
                    for k in range(n_words):
                        hit = packed[row * n_words + k] & res[t, k]
                        if hit:
                            c = 64 * k + _bit_index(hit)
                            break
                    res[t, c >> 6] &= ~((<u64>1) << (c & 63))
                    for j in range(col_ptr[c], col_ptr[c + 1]):
                        i = col_rows[j]
                        deg[i] -= 1
                        if deg[i] == 1:
                            queue[tail] = i
                            tail += 1
    finally:
        free(deg)
        free(queue)
        free(col_ptr)
        free(col_rows)
        free(packed)
    return res_arr


def failure_counts_by_weight(row_masks, int n):
    """Number of erasure patterns the peeling pass fails to clear, per
    pattern weight, over all 2^n patterns."""
    cdef u64[::1] rows = np.ascontiguousarray(row_masks, dtype=np.uint64)
    cdef int m = rows.shape[0]
    counts_arr = np.zeros(n + 1, dtype=np.int64)
    cdef long long[::1] counts = counts_arr
    cdef int* deg = <int*>malloc(m * sizeof(int))
    cdef int* queue = <int*>malloc(m * sizeof(int))
    if deg == NULL or queue == NULL:
        free(deg); free(queue)
        raise MemoryError()
    cdef u64 pat = 1, total = (<u64>1) << n
    cdef u64 erased, hit
    cdef int i, head, tail, row, c
    try:
        with nogil:
            while pat < total:
                erased = pat
                head = 0
                tail = 0
                for i in range(m):
                    deg[i] = __builtin_popcountll(rows[i] & erased)
                    if deg[i] == 1:
                        queue[tail] = i
                        tail += 1
                while head < tail:
                    row = queue[head]
                    head += 1
                    if deg[row] != 1:
                        continue
                    hit = rows[row] & erased
                    c = _bit_index(hit)
                    erased &= ~((<u64>1) << c)
                    for i in range(m):
                        if (rows[i] >> c) & 1:
                            deg[i] -= 1
                            if deg[i] == 1:
                                queue[tail] = i
                                tail += 1
                if erased:
                    counts[__builtin_popcountll(pat)] += 1
                pat += 1
    finally:
        free(deg)
        free(queue)
    return counts_arr
