"""Exact weight-distribution container and rational bound pairs.

All distribution entries are kept as exact `fractions.Fraction` values;
floating-point views (base-2 logarithms) are derived afterwards so that
cancellation-prone closed forms never run in float arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import inf, log2
from typing import Iterable, Sequence


def log2_fraction(value: Fraction) -> float:
    """log2 of a nonnegative rational, safe for values far beyond float range.

    Returns -inf for zero.
    """
    if value < 0:
        raise ValueError("log2 of a negative value")
    if value == 0:
        return -inf
    return _log2_int(value.numerator) - _log2_int(value.denominator)


def _log2_int(x: int) -> float:
    bl = x.bit_length()
    if bl <= 512:
        return log2(x)
    shift = bl - 512
    return log2(x >> shift) + shift


@dataclass(frozen=True)
class WeightDistribution:
    """Counts (or ensemble-average counts) indexed by Hamming weight.

    `values[w]` is the exact entry for weight w.  The distribution may be
    a computed prefix: `values` covers weights 0..w_hi with w_hi <= n,
    which is how large-n scans avoid evaluating entries they never read.
    """

    n: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 1 <= len(self.values) <= self.n + 1:
            raise ValueError("values must cover weights 0..w_hi with w_hi <= n")
        if any(v < 0 for v in self.values):
            raise ValueError("weight distribution entries must be nonnegative")

    @property
    def w_hi(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, w: int) -> Fraction:
        return self.values[w]

    def __len__(self) -> int:
        return len(self.values)

    def log2_view(self) -> list[float]:
        """Float view log2(values[w]), with -inf at exact zeros."""
        return [log2_fraction(v) for v in self.values]

    def csv_rows(self) -> list[tuple[int, int, int, float]]:
        """Rows (w, numerator, denominator, log2) for lossless export."""
        return [
            (w, v.numerator, v.denominator, log2_fraction(v))
            for w, v in enumerate(self.values)
        ]

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "entries": [
                {
                    "w": w,
                    "numerator": str(v.numerator),
                    "denominator": str(v.denominator),
                    "log2": log2_fraction(v),
                }
                for w, v in enumerate(self.values)
            ],
        }

    @classmethod
    def from_counts(cls, counts: Sequence[int] | Iterable[int], n: int | None = None):
        vals = tuple(Fraction(int(c)) for c in counts)
        return cls(n=len(vals) - 1 if n is None else n, values=vals)


@dataclass(frozen=True)
class BoundPair:
    """An exact rational lower/upper bound pair."""

    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("lower bound exceeds upper bound")

    def contains(self, value) -> bool:
        return self.lower <= value <= self.upper
