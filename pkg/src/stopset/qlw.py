"""Counting L x w binary matrices whose row combinations avoid weight 1.

The count (call it the d_min >= 2 count) feeds the exact extended-random
ensemble formula.  Three independent routes are provided:

  count_dmin2        Gray-code sweep of all 2^(L*w) matrices; a single bit
                     flip updates exactly 2^(L-1) of the combination
                     vectors, so the sweep is incremental.
  count_dmin2_naive  direct sweep computing every combination fresh;
                     reference implementation for cross-checks.
  count_dmin2_rank   exact decomposition over row spaces: sum over the
                     subspaces of F_2^w that contain no weight-1 vector of
                     the number of L-row matrices spanning each.  Feasible
                     for any L when w is small; used where 2^(L*w) sweeps
                     cannot run.

Known identities baked into tests: count(1,w) = 2^w - w, count(L,1) = 1,
count(L,2) = 2^L.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from stopset import kernels
from stopset.errors import EnumerationLimit
from stopset.weights import BoundPair

GRAY_SWEEP_LIMIT = 30  # max L*w for the 2^(L*w) sweeps
RANK_W_LIMIT = 8       # max w for subspace enumeration of F_2^w


def _validate(L: int, w: int) -> None:
    if L < 1 or w < 1:
        raise ValueError("L and w must be >= 1")


def count_dmin2(L: int, w: int, threads: int = 1) -> int:
    """Gray-code sweep count of L x w matrices with no nonzero row
    combination of weight 1.

    `threads` > 1 partitions the Gray index range; the partial counts sum
    to the same total for any partition.
    """
    _validate(L, w)
    if L * w > GRAY_SWEEP_LIMIT:
        raise EnumerationLimit(
            f"L*w={L * w} exceeds the 2^(L*w) sweep guard ({GRAY_SWEEP_LIMIT})"
        )
    total = 1 << (L * w)
    if threads <= 1:
        return int(kernels.gray_count_dmin_ge2(L, w, 0, total))
    bounds = [total * i // threads for i in range(threads + 1)]
    ranges = [(L, w, bounds[i], bounds[i + 1]) for i in range(threads)]
    import multiprocessing

    with multiprocessing.Pool(threads) as pool:
        parts = pool.starmap(_count_range, ranges)
    return sum(parts)


def _count_range(L: int, w: int, start: int, stop: int) -> int:
    return int(kernels.gray_count_dmin_ge2(L, w, start, stop))


def count_dmin2_naive(L: int, w: int) -> int:
    """Direct per-matrix check over all 2^(L*w) matrices (slow; reference
    for the incremental sweep)."""
    _validate(L, w)
    if L * w > GRAY_SWEEP_LIMIT:
        raise EnumerationLimit(
            f"L*w={L * w} exceeds the 2^(L*w) sweep guard ({GRAY_SWEEP_LIMIT})"
        )
    mask = (1 << w) - 1
    weight1 = {1 << j for j in range(w)}
    count = 0
    for code in range(1 << (L * w)):
        rows = [(code >> (j * w)) & mask for j in range(L)]
        ok = True
        for coeffs in range(1, 1 << L):
            v = 0
            for j in range(L):
                if (coeffs >> j) & 1:
                    v ^= rows[j]
            if v in weight1:
                ok = False
                break
        count += ok
    return count


@lru_cache(maxsize=None)
def _subspace_profile(w: int) -> tuple[int, ...]:
    """profile[k] = number of k-dimensional subspaces of F_2^w containing
    no weight-1 vector, by sweeping reduced-echelon bases."""
    profile = [0] * (w + 1)
    profile[0] = 1
    for k in range(1, w + 1):
        cnt = 0
        for pivots in combinations(range(w), k):
            pivot_set = set(pivots)
            free = [
                (i, c)
                for i, p in enumerate(pivots)
                for c in range(p + 1, w)
                if c not in pivot_set
            ]
            for bits in product((0, 1), repeat=len(free)):
                basis = [1 << pivots[i] for i in range(k)]
                for (i, c), b in zip(free, bits):
                    if b:
                        basis[i] |= 1 << c
                if _no_weight1_span(basis, k):
                    cnt += 1
        profile[k] = cnt
    return tuple(profile)


def _no_weight1_span(basis: list[int], k: int) -> bool:
    for coeffs in range(1, 1 << k):
        v = 0
        for i in range(k):
            if (coeffs >> i) & 1:
                v ^= basis[i]
        if v and (v & (v - 1)) == 0:
            return False
    return True


def count_dmin2_rank(L: int, w: int) -> int:
    """Row-space decomposition count: valid matrices grouped by their row
    space V; #(L x k full-rank coefficient matrices) per k-dim V."""
    _validate(L, w)
    if w > RANK_W_LIMIT:
        raise EnumerationLimit(
            f"w={w} exceeds the subspace enumeration guard ({RANK_W_LIMIT})"
        )
    profile = _subspace_profile(w)
    total = 0
    for k in range(0, min(L, w) + 1):
        span_count = 1
        for i in range(k):
            span_count *= 2**L - 2**i
        total += profile[k] * span_count
    return total


def dmin2_count_auto(L: int, w: int) -> int:
    """Exact count by whichever route is feasible (rank decomposition for
    small w, Gray sweep otherwise)."""
    _validate(L, w)
    if w <= RANK_W_LIMIT:
        return count_dmin2_rank(L, w)
    if L * w <= GRAY_SWEEP_LIMIT:
        return count_dmin2(L, w)
    raise EnumerationLimit(f"no exact route for L={L}, w={w}")


def bounds_dmin2(L: int, w: int) -> BoundPair:
    """Exact-rational bounds on the count.

    Lower: first-moment (union) bound on weight-1 words, improved by the
    all-even-rows construction 2^(L(w-1)).  Upper: second-moment bound.
    """
    _validate(L, w)
    space = Fraction(2 ** (L * w))
    a = max(1 - Fraction((2**L - 1) * w, 2**w), Fraction(0))
    lower = max(space * a, Fraction(2 ** (L * w - L)))
    good = 1 - Fraction(w, 2**w)
    upper = space * good / (Fraction((2**L - 1) * w, 2**w) + good)
    return BoundPair(lower=lower, upper=upper)


@dataclass
class QTable:
    """Map (L, w) -> exact d_min >= 2 count."""

    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def __getitem__(self, key: tuple[int, int]) -> int:
        if key not in self.entries:
            raise KeyError(f"no count for (L, w) = {key}")
        return self.entries[key]

    def __setitem__(self, key: tuple[int, int], value: int) -> None:
        L, w = key
        _validate(L, w)
        if not 0 <= value <= 2 ** (L * w):
            raise ValueError("count out of range")
        self.entries[key] = value

    def __contains__(self, key) -> bool:
        return key in self.entries

    def to_json(self) -> str:
        items = [
            {"L": L, "w": w, "count": c}
            for (L, w), c in sorted(self.entries.items())
        ]
        return json.dumps({"entries": items}, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "QTable":
        data = json.loads(text)
        table = cls()
        for item in data["entries"]:
            table[item["L"], item["w"]] = int(item["count"])
        return table


def build_qtable(l_max: int, w_max: int, method: str = "auto",
                 threads: int = 1) -> QTable:
    """Counts for all 1 <= L <= l_max, 1 <= w <= w_max."""
    table = QTable()
    for L in range(1, l_max + 1):
        for w in range(1, w_max + 1):
            if method == "auto":
                table[L, w] = dmin2_count_auto(L, w)
            elif method == "gray":
                table[L, w] = count_dmin2(L, w, threads=threads)
            elif method == "rank":
                table[L, w] = count_dmin2_rank(L, w)
            elif method == "naive":
                table[L, w] = count_dmin2_naive(L, w)
            else:
                raise ValueError(f"unknown method {method!r}")
    return table
