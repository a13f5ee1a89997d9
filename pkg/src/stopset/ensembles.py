"""Average stopping-set weight distributions of matrix ensembles.

Every formula is evaluated in exact rational arithmetic (entries span
10^-14 .. 10^4 in the bundled reference tables, and the extended-ensemble
forms subtract nearly equal huge integers, so floats are derived only as
views).  Families:

  random(m, n)                 all 2^(mn) binary m x n matrices
  constant row(m, n, r)        all rows of weight exactly r
  bipartite(n, c, d)           regular (c, d) bipartite-graph ensemble
  redundant random(m, n, L)    degree-L extension of every random matrix
  redundant constant row       degree-2 extension of the constant-row set

The degree-L extension replaces each consecutive L-row block by all
2^L - 1 nonzero combinations of its rows, so ensemble averages factor
over blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Union

import numpy as np

from stopset.gf2 import BinaryMatrix, redundant_extend
from stopset.weights import BoundPair, WeightDistribution


@dataclass(frozen=True)
class RandomEnsemble:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("m, n must be >= 1")


@dataclass(frozen=True)
class ConstantRowEnsemble:
    m: int
    n: int
    r: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("m, n must be >= 1")
        if not 1 <= self.r <= self.n:
            raise ValueError("row weight r must satisfy 1 <= r <= n")


@dataclass(frozen=True)
class BipartiteEnsemble:
    n: int
    c: int
    d: int

    def __post_init__(self):
        if self.n < 1 or self.c < 1 or self.d < 1:
            raise ValueError("n, c, d must be >= 1")
        if (self.n * self.c) % self.d:
            raise ValueError("d must divide n*c (integral check-node count)")


@dataclass(frozen=True)
class RedundantRandomEnsemble:
    m: int
    n: int
    degree: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1 or self.degree < 1:
            raise ValueError("m, n, degree must be >= 1")
        if self.m % self.degree:
            raise ValueError("extension degree must divide m")


@dataclass(frozen=True)
class RedundantConstantRowEnsemble:
    m: int
    n: int
    r: int
    degree: int = 2

    def __post_init__(self):
        if self.degree != 2:
            raise ValueError("closed form exists for extension degree 2 only")
        if self.m % 2:
            raise ValueError("extension degree 2 requires even m")
        if not 1 <= self.r <= self.n:
            raise ValueError("row weight r must satisfy 1 <= r <= n")


EnsembleSpec = Union[
    RandomEnsemble,
    ConstantRowEnsemble,
    BipartiteEnsemble,
    RedundantRandomEnsemble,
    RedundantConstantRowEnsemble,
]


# ---------------------------------------------------------------------------
# per-entry closed forms (exact rationals)
# ---------------------------------------------------------------------------

def ss_entry_random(m: int, n: int, w: int) -> Fraction:
    """C(n,w) (1 - w 2^-w)^m: of the 2^w in-support row patterns, exactly
    w have weight 1."""
    if w == 0:
        return Fraction(1)
    return Fraction(comb(n, w)) * Fraction(2**w - w, 2**w) ** m


def ss_entry_const_row(m: int, n: int, r: int, w: int) -> Fraction:
    """C(n,w) (1 - w C(n-w,r-1)/C(n,r))^m: weight-r rows meeting the
    support in exactly one place number w C(n-w, r-1)."""
    if w == 0:
        return Fraction(1)
    return Fraction(comb(n, w)) * (1 - Fraction(w * comb(n - w, r - 1), comb(n, r))) ** m


def power_coef(d: int, reps: int, k: int) -> int:
    """Coefficient of x^k in ((1+x)^d - d*x)^reps.

    Expanded over the split ((1+x)^d, -d*x):
      sum_j C(reps, j) (-d)^j C(d (reps - j), k - j).
    """
    return sum(
        comb(reps, j) * (-d) ** j * comb(d * (reps - j), k - j)
        for j in range(0, min(reps, k) + 1)
    )


def power_coefs_truncated(d: int, reps: int, k_max: int) -> list[int]:
    """Coefficients 0..k_max of ((1+x)^d - d*x)^reps via truncated
    polynomial powering (square-and-multiply with a degree cap).

    Alternative route to `power_coef`; the two are cross-checked in tests.
    """
    base = [comb(d, k) for k in range(0, min(d, k_max) + 1)]
    if k_max >= 1:
        base[1] -= d

    def mul(a, b):
        out = [0] * (min(len(a) + len(b) - 1, k_max + 1))
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            top = min(len(b), len(out) - i)
            for j in range(top):
                out[i + j] += ai * b[j]
        return out

    result = [1]
    e = reps
    sq = base
    while e:
        if e & 1:
            result = mul(result, sq)
        e >>= 1
        if e:
            sq = mul(sq, sq)
    result += [0] * (k_max + 1 - len(result))
    return result


def ss_entry_bipartite(n: int, c: int, d: int, w: int) -> Fraction:
    """C(n,w) coef[((1+x)^d - dx)^(nc/d), x^(wc)] / C(nc, wc)."""
    if w == 0:
        return Fraction(1)
    reps = n * c // d
    return Fraction(comb(n, w)) * Fraction(power_coef(d, reps, w * c), comb(n * c, w * c))


def ss_entry_redundant_random_deg2(m: int, n: int, w: int) -> Fraction:
    """Degree-2 extension of the random ensemble.

    Counts pairs (h1, h2) with h1.x != 1, h2.x != 1, (h1+h2).x != 1 as
    (2^n - w 2^(n-w))^2 - V with
      V = 2^(2(n-w)+1) sum_{g=2..w} C(w,g) (w-g),
    then raises to the m/2 independent blocks.
    """
    if w == 0:
        return Fraction(1)
    if m % 2:
        raise ValueError("degree-2 extension requires even m")
    V = 2 ** (2 * (n - w) + 1) * sum(comb(w, g) * (w - g) for g in range(2, w + 1))
    pair_count = (2**n - w * 2 ** (n - w)) ** 2 - V
    return Fraction(comb(n, w)) * Fraction(pair_count ** (m // 2), 2 ** (m * n))


def ss_entry_redundant_const_row_deg2(m: int, n: int, r: int, w: int) -> Fraction:
    """Degree-2 extension of the constant-row-weight ensemble."""
    if w == 0:
        return Fraction(1)
    if m % 2:
        raise ValueError("degree-2 extension requires even m")
    V = 2 * sum(
        (w - g) * comb(w, g) * comb(n - w, r - g - 1) * comb(n - w, r - g)
        for g in range(2, min(w - 1, r - 1) + 1)
    )
    pair_count = (comb(n, r) - w * comb(n - w, r - 1)) ** 2 - V
    return Fraction(comb(n, w)) * Fraction(pair_count ** (m // 2), comb(n, r) ** m)


def ss_entry_redundant_random(m: int, n: int, degree: int, w: int,
                              dmin2_count: int) -> Fraction:
    """Exact entry for the degree-L extended random ensemble, given the
    number `dmin2_count` of L x w matrices whose nonzero row combinations
    all avoid weight 1 (see stopset.qlw).

    Each block contributes dmin2_count * 2^(L(n-w)) admissible choices.
    """
    if w == 0:
        return Fraction(1)
    if m % degree:
        raise ValueError("extension degree must divide m")
    per_block = dmin2_count * 2 ** (degree * (n - w))
    return Fraction(comb(n, w)) * Fraction(per_block ** (m // degree), 2 ** (m * n))


def bounds_redundant_random(m: int, n: int, degree: int, w: int) -> BoundPair:
    """Exact-rational bounds sandwiching the degree-L extended random
    ensemble entry at weight w (they coincide with the exact value at
    degree 1)."""
    if m % degree:
        raise ValueError("extension degree must divide m")
    if not 1 <= w <= n:
        raise ValueError("w must satisfy 1 <= w <= n")
    nw = Fraction(comb(n, w))
    a = max(1 - Fraction((2**degree - 1) * w, 2**w), Fraction(0))
    lower = nw * max(a ** (m // degree), Fraction(1, 2**m))
    good = 1 - Fraction(w, 2**w)
    b = good / (Fraction((2**degree - 1) * w, 2**w) + good)
    upper = nw * b ** (m // degree)
    return BoundPair(lower=lower, upper=upper)


def codeword_count_mean(k: int, n: int, w: int) -> Fraction:
    """Mean over all k x n binary matrices of the number of nonzero
    messages mapping to a weight-w word: (2^k - 1) 2^-n C(n,w)."""
    if k < 1 or n < 1 or not 1 <= w <= n:
        raise ValueError("require k, n >= 1 and 1 <= w <= n")
    return Fraction((2**k - 1) * comb(n, w), 2**n)


def codeword_count_second_moment(k: int, n: int, w: int) -> Fraction:
    """Second moment of the same count: mean^2 + mean (1 - C(n,w) 2^-n)."""
    mean = codeword_count_mean(k, n, w)
    return mean**2 + mean * (1 - Fraction(comb(n, w), 2**n))


# ---------------------------------------------------------------------------
# distribution builders and dispatch
# ---------------------------------------------------------------------------

def _build(n: int, entry: Callable[[int], Fraction], w_hi: int | None) -> WeightDistribution:
    hi = n if w_hi is None else w_hi
    if not 0 <= hi <= n:
        raise ValueError("w_hi out of range")
    return WeightDistribution(n=n, values=tuple(entry(w) for w in range(hi + 1)))


def avg_ss_random(m: int, n: int, w_hi: int | None = None) -> WeightDistribution:
    return _build(n, lambda w: ss_entry_random(m, n, w), w_hi)


def avg_ss_const_row(m: int, n: int, r: int, w_hi: int | None = None) -> WeightDistribution:
    return _build(n, lambda w: ss_entry_const_row(m, n, r, w), w_hi)


def avg_ss_bipartite(n: int, c: int, d: int, w_hi: int | None = None) -> WeightDistribution:
    if (n * c) % d:
        raise ValueError("d must divide n*c")
    return _build(n, lambda w: ss_entry_bipartite(n, c, d, w), w_hi)


def avg_ss_redundant_random_deg2(m: int, n: int, w_hi: int | None = None) -> WeightDistribution:
    return _build(n, lambda w: ss_entry_redundant_random_deg2(m, n, w), w_hi)


def avg_ss_redundant_const_row_deg2(m: int, n: int, r: int,
                                    w_hi: int | None = None) -> WeightDistribution:
    return _build(n, lambda w: ss_entry_redundant_const_row_deg2(m, n, r, w), w_hi)


def avg_ss_redundant_random_exact(m: int, n: int, degree: int, qtable,
                                  w_hi: int | None = None) -> WeightDistribution:
    """Exact distribution of the degree-L extended random ensemble from a
    table of d_min >= 2 matrix counts (raises KeyError on a missing entry)."""

    def entry(w: int) -> Fraction:
        if w == 0:
            return Fraction(1)
        return ss_entry_redundant_random(m, n, degree, w, qtable[degree, w])

    return _build(n, entry, w_hi)


def avg_ss_entry(spec: EnsembleSpec, w: int, qtable=None) -> Fraction:
    """Single exact entry for any ensemble family."""
    if isinstance(spec, RandomEnsemble):
        return ss_entry_random(spec.m, spec.n, w)
    if isinstance(spec, ConstantRowEnsemble):
        return ss_entry_const_row(spec.m, spec.n, spec.r, w)
    if isinstance(spec, BipartiteEnsemble):
        return ss_entry_bipartite(spec.n, spec.c, spec.d, w)
    if isinstance(spec, RedundantConstantRowEnsemble):
        return ss_entry_redundant_const_row_deg2(spec.m, spec.n, spec.r, w)
    if isinstance(spec, RedundantRandomEnsemble):
        if spec.degree == 2:
            return ss_entry_redundant_random_deg2(spec.m, spec.n, w)
        if spec.degree == 1:
            return ss_entry_random(spec.m, spec.n, w)
        if qtable is None:
            from stopset.qlw import dmin2_count_auto

            count = dmin2_count_auto(spec.degree, w) if w else 0
        else:
            count = qtable[spec.degree, w] if w else 0
        return ss_entry_redundant_random(spec.m, spec.n, spec.degree, w, count)
    raise TypeError(f"unknown ensemble spec {spec!r}")


def avg_ss_distribution(spec: EnsembleSpec, w_hi: int | None = None,
                        qtable=None) -> WeightDistribution:
    return _build(spec.n, lambda w: avg_ss_entry(spec, w, qtable=qtable), w_hi)


# ---------------------------------------------------------------------------
# typical stopping distance
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TypicalDistance:
    """Largest s whose average count of stopping sets below weight s is
    still < 1 (so some ensemble member has stopping distance >= s).

    `crossed` is False when even the full cumulative sum stays below 1;
    the reported value is then n + 1.
    """

    value: int
    crossed: bool


def typical_stopping_distance(dist: WeightDistribution) -> TypicalDistance:
    """Crossing point of the cumulative average stopping-set count at 1."""
    return typical_stopping_distance_fn(lambda w: dist[w], dist.w_hi, dist.n)


def typical_stopping_distance_fn(entry: Callable[[int], Fraction], w_hi: int,
                                 n: int) -> TypicalDistance:
    """Lazy variant: `entry(w)` is called for w = 1, 2, ... only until the
    cumulative sum reaches 1 (entries beyond w_hi raise IndexError)."""
    partial = Fraction(0)
    for s in range(1, n + 2):
        # partial == sum of entries 1..s-1 here
        if partial >= 1:
            return TypicalDistance(value=s - 1, crossed=True)
        if s <= n:
            if s > w_hi:
                raise IndexError(
                    f"cumulative sum needs entry w={s} beyond available w_hi={w_hi}"
                )
            partial += entry(s)
    return TypicalDistance(value=n + 1, crossed=False)


def typical_stopping_distance_of(spec: EnsembleSpec, qtable=None) -> TypicalDistance:
    """Typical stopping distance of an ensemble, evaluating only the
    entries the crossing needs."""
    return typical_stopping_distance_fn(
        lambda w: avg_ss_entry(spec, w, qtable=qtable), spec.n, spec.n
    )


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def sample_matrix(spec: EnsembleSpec, rng: np.random.Generator) -> BinaryMatrix:
    """Draw one matrix uniformly from the ensemble."""
    if isinstance(spec, RandomEnsemble):
        return _sample_random(spec.m, spec.n, rng)
    if isinstance(spec, ConstantRowEnsemble):
        masks = []
        for _ in range(spec.m):
            cols = rng.choice(spec.n, size=spec.r, replace=False)
            masks.append(sum(1 << int(j) for j in cols))
        return BinaryMatrix(masks, spec.n)
    if isinstance(spec, RedundantRandomEnsemble):
        base = _sample_random(spec.m, spec.n, rng)
        return redundant_extend(base, spec.degree)
    if isinstance(spec, RedundantConstantRowEnsemble):
        base = sample_matrix(ConstantRowEnsemble(spec.m, spec.n, spec.r), rng)
        return redundant_extend(base, spec.degree)
    raise TypeError(f"cannot sample from {spec!r}")


def _sample_random(m: int, n: int, rng: np.random.Generator) -> BinaryMatrix:
    n_bytes = (n + 7) // 8
    top = (1 << n) - 1
    masks = [
        int.from_bytes(rng.bytes(n_bytes), "little") & top for _ in range(m)
    ]
    return BinaryMatrix(masks, n)
