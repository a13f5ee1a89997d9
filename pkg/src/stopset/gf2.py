"""Bit-packed binary matrices and exhaustive stopping-set computations.

A support set S (1-based column indices) is a stopping set of H when the
submatrix of H restricted to S has no row of weight exactly 1; vectors are
classified through the indicator q_H(x) = #{i : h_i . x = 1}, where "." is
the integer inner product.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import inf
from typing import Iterable, Sequence

import numpy as np

from stopset import kernels
from stopset.errors import DimensionMismatch, EnumerationLimit
from stopset.weights import WeightDistribution

EXHAUSTIVE_N_LIMIT = 30
MESSAGE_K_LIMIT = 24


class BinaryMatrix:
    """Immutable m x n matrix over GF(2), rows packed as Python ints.

    Bit j (0-based) of a row mask is column j+1.  Construction validates
    that no bit beyond column n is set.
    """

    __slots__ = ("m", "n", "_rows", "_packed")

    def __init__(self, row_masks: Iterable[int], n: int):
        rows = tuple(int(r) for r in row_masks)
        if n < 1 or not rows:
            raise ValueError("matrix dimensions must satisfy m, n >= 1")
        top = (1 << n) - 1
        for r in rows:
            if r < 0 or r & ~top:
                raise ValueError("row mask has bits outside column range")
        object.__setattr__(self, "m", len(rows))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_rows", rows)
        object.__setattr__(self, "_packed", None)

    def __setattr__(self, name, value):
        raise AttributeError("BinaryMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "BinaryMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            raise ValueError("matrix dimensions must satisfy m, n >= 1")
        n = len(rows[0])
        masks = []
        for r in rows:
            if len(r) != n:
                raise ValueError("ragged rows")
            if any(b not in (0, 1) for b in r):
                raise ValueError("entries must be 0 or 1")
            masks.append(sum(1 << j for j, b in enumerate(r) if b))
        return cls(masks, n)

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls([1 << j for j in range(n)], n)

    @property
    def row_masks(self) -> tuple[int, ...]:
        return self._rows

    def row(self, i: int) -> list[int]:
        return [(self._rows[i] >> j) & 1 for j in range(self.n)]

    def to_rows(self) -> list[list[int]]:
        return [self.row(i) for i in range(self.m)]

    def packed(self) -> np.ndarray:
        """(m, W) uint64 view for the kernels; cached."""
        if self._packed is None:
            object.__setattr__(
                self, "_packed", kernels.pack_masks(self._rows, self.n)
            )
        return self._packed

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BinaryMatrix)
            and self.n == other.n
            and self._rows == other._rows
        )

    def __hash__(self) -> int:
        return hash((self.n, self._rows))

    def __repr__(self) -> str:
        return f"BinaryMatrix(m={self.m}, n={self.n})"


@dataclass(frozen=True, order=True)
class SupportSet:
    """Sorted 1-based column indices."""

    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if any(i < 1 for i in idx):
            raise ValueError("support indices are 1-based")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError("support indices must be strictly increasing")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def from_mask(cls, mask: int) -> "SupportSet":
        return cls(tuple(j + 1 for j in range(mask.bit_length()) if (mask >> j) & 1))

    def mask(self) -> int:
        return sum(1 << (i - 1) for i in self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __contains__(self, i) -> bool:
        return i in self.indices


@dataclass(frozen=True)
class StoppingReport:
    """Result of a bounded stopping-distance search.

    `distance` is None when no nonempty stopping set of weight <= w_max
    exists; `multiplicity` counts stopping sets at the reported distance.
    """

    distance: int | None
    multiplicity: int | None
    w_max: int

    def __post_init__(self):
        if (self.distance is None) != (self.multiplicity is None):
            raise ValueError("distance and multiplicity must be set together")
        if self.multiplicity is not None and self.multiplicity < 1:
            raise ValueError("multiplicity must be >= 1 when a distance is found")

    @property
    def found(self) -> bool:
        return self.distance is not None


def _vector_mask(H: BinaryMatrix, x) -> int:
    if isinstance(x, SupportSet):
        mask = x.mask()
        if mask >> H.n:
            raise DimensionMismatch("support exceeds column count")
        return mask
    xs = list(x)
    if len(xs) != H.n:
        raise DimensionMismatch(f"vector length {len(xs)} != n={H.n}")
    if any(b not in (0, 1) for b in xs):
        raise ValueError("vector entries must be 0 or 1")
    return sum(1 << j for j, b in enumerate(xs) if b)


def ss_indicator(H: BinaryMatrix, x) -> int:
    """Number of rows whose integer inner product with x is exactly 1."""
    mask = _vector_mask(H, x)
    return sum(1 for h in H.row_masks if (h & mask).bit_count() == 1)


def is_stopping_vector(H: BinaryMatrix, x) -> bool:
    """True when no row of H isolates a single 1 of x."""
    mask = _vector_mask(H, x)
    return all((h & mask).bit_count() != 1 for h in H.row_masks)


def ss_weight_distribution_exhaustive(H: BinaryMatrix) -> WeightDistribution:
    """Exact per-weight stopping-set counts by sweeping all 2^n vectors."""
    if H.n > EXHAUSTIVE_N_LIMIT:
        raise EnumerationLimit(
            f"n={H.n} exceeds the 2^n sweep guard ({EXHAUSTIVE_N_LIMIT})"
        )
    masks = np.array(H.row_masks, dtype=np.uint64)
    counts = kernels.exhaustive_ss_counts(masks, H.n)
    return WeightDistribution.from_counts(counts.tolist(), n=H.n)


def enumerate_stopping_sets(H: BinaryMatrix, w_max: int) -> list[SupportSet]:
    """All nonempty stopping sets of weight <= w_max.

    Output is sorted by (weight, indices) and does not depend on how the
    search tree was traversed or partitioned.
    """
    if not 1 <= w_max <= H.n:
        raise ValueError("w_max must satisfy 1 <= w_max <= n")
    raw = kernels.stopping_sets_up_to(H.packed(), H.n, w_max)
    sets = [SupportSet(tuple(i + 1 for i in cols)) for cols in raw]
    sets.sort(key=lambda s: (len(s), s.indices))
    return sets


def stopping_distance(H: BinaryMatrix, w_max: int | None = None) -> StoppingReport:
    """Smallest weight of a nonempty stopping set, searched up to w_max
    (default min(n, 10)), with its multiplicity."""
    if w_max is None:
        w_max = min(H.n, 10)
    if not 1 <= w_max <= H.n:
        raise ValueError("w_max must satisfy 1 <= w_max <= n")
    packed = H.packed()
    # iterative deepening: each level is far cheaper than the next
    for w in range(1, w_max + 1):
        counts = kernels.stopping_set_census(packed, H.n, w)
        if counts[w] > 0:
            return StoppingReport(distance=w, multiplicity=int(counts[w]), w_max=w_max)
    return StoppingReport(distance=None, multiplicity=None, w_max=w_max)


def codeword_weight_distribution(G: BinaryMatrix) -> WeightDistribution:
    """Weight histogram of the map m -> m*G over all nonzero messages m,
    counted with message multiplicity."""
    if G.m > MESSAGE_K_LIMIT:
        raise EnumerationLimit(
            f"K={G.m} exceeds the 2^K message sweep guard ({MESSAGE_K_LIMIT})"
        )
    counts = kernels.codeword_weight_counts(G.packed(), G.n)
    return WeightDistribution.from_counts(counts.tolist(), n=G.n)


def min_distance(G: BinaryMatrix):
    """min{w >= 1 : some nonzero message has weight-w image}; inf if none."""
    dist = codeword_weight_distribution(G)
    for w in range(1, G.n + 1):
        if dist[w] != 0:
            return w
    return inf


def redundant_extend(H: BinaryMatrix, degree: int) -> BinaryMatrix:
    """Replace each consecutive `degree`-row block of H by all nonzero
    GF(2) combinations of the block's rows (block by block, combination
    coefficients in binary counting order).  Preserves the row space.
    """
    if degree < 1:
        raise ValueError("extension degree must be >= 1")
    if H.m % degree:
        raise ValueError(f"extension degree {degree} does not divide m={H.m}")
    out = []
    for b in range(H.m // degree):
        block = H.row_masks[b * degree : (b + 1) * degree]
        for i in range(1, 1 << degree):
            v = 0
            for j in range(degree):
                if (i >> j) & 1:
                    v ^= block[j]
            out.append(v)
    return BinaryMatrix(out, H.n)


def row_space_canonical(H: BinaryMatrix) -> tuple[int, ...]:
    """Canonical (reduced row echelon, zero rows dropped) row-space basis,
    usable as an equality key for GF(2) row spaces."""
    work = list(H.row_masks)
    basis: list[int] = []
    for col in range(H.n):
        bit = 1 << col
        pivot = next((r for r in work if r & bit), None)
        if pivot is None:
            continue
        work = [r ^ pivot if r & bit else r for r in work if r != pivot]
        basis = [b ^ pivot if b & bit else b for b in basis]
        basis.append(pivot)
    return tuple(sorted(basis))
