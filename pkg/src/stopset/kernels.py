"""Hot-kernel backend selection.

The compiled extension `stopset._accel` is preferred; the pure-Python
implementation `stopset._fallback` is used when the extension has not
been built.  Both export the same functions with identical semantics
(see the contract note in `stopset._fallback`).

`BACKEND` is "c" or "python".  Benchmarks and tests may import the two
modules directly to compare them.
"""

from __future__ import annotations

import numpy as np

try:
    from stopset import _accel as _impl

    BACKEND = "c"
except ImportError:  # extension not built
    from stopset import _fallback as _impl

    BACKEND = "python"

exhaustive_ss_counts = _impl.exhaustive_ss_counts
codeword_weight_counts = _impl.codeword_weight_counts
gray_count_dmin_ge2 = _impl.gray_count_dmin_ge2
stopping_sets_up_to = _impl.stopping_sets_up_to
stopping_set_census = _impl.stopping_set_census
peel_residual_batch = _impl.peel_residual_batch
failure_counts_by_weight = _impl.failure_counts_by_weight

_MASK64 = (1 << 64) - 1


def words_per_row(n: int) -> int:
    return max(1, (n + 63) // 64)


def pack_masks(masks, n: int) -> np.ndarray:
    """Pack an iterable of row bitmask ints into a (m, W) uint64 array."""
    w_words = words_per_row(n)
    masks = list(masks)
    out = np.empty((len(masks), w_words), dtype=np.uint64)
    for i, mask in enumerate(masks):
        for k in range(w_words):
            out[i, k] = (mask >> (64 * k)) & _MASK64
    return out


def unpack_words(words: np.ndarray) -> int:
    """Inverse of pack_masks for a single packed row."""
    v = 0
    for k in range(len(words) - 1, -1, -1):
        v = (v << 64) | int(words[k])
    return v
