"""Erasure-channel model, peeling decoder, and block-error evaluation.

Decoding works on erasure supports only: failure of the iterative decoder
depends on nothing but whether the erased set contains a nonempty stopping
set, so the all-zero codeword suffices and no symbol values are tracked.
The residual erased set after peeling is the unique maximal stopping set
inside the pattern (empty exactly on success).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt

import numpy as np

from stopset import kernels
from stopset.errors import DimensionMismatch, EnumerationLimit
from stopset.gf2 import BinaryMatrix, SupportSet

EXACT_N_LIMIT = 20
WILSON_Z95 = 1.959963984540054


@dataclass(frozen=True)
class ErasurePattern:
    """Erased column positions (1-based) of a length-n word."""

    n: int
    erased: SupportSet

    def __post_init__(self):
        if self.erased.indices and self.erased.indices[-1] > self.n:
            raise DimensionMismatch("erased index beyond block length")

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "ErasurePattern":
        return cls(n=n, erased=SupportSet.from_mask(mask))

    def mask(self) -> int:
        return self.erased.mask()

    def __len__(self) -> int:
        return len(self.erased)


@dataclass(frozen=True)
class PeelResult:
    success: bool
    residual: SupportSet


@dataclass(frozen=True)
class SimResult:
    """Monte Carlo block-error estimate with its Wilson 95% interval."""

    epsilon: float
    trials: int
    failures: int
    estimate: float
    ci95: tuple[float, float]
    seed: int

    def __post_init__(self):
        if not 0 <= self.failures <= self.trials:
            raise ValueError("failures must lie in [0, trials]")


def trial_seed_sequence(master_seed: int, trial: int) -> np.random.SeedSequence:
    """Counter-style per-trial seed: reproducible for any execution order
    or worker count."""
    return np.random.SeedSequence(entropy=(int(master_seed), int(trial)))


def sample_erasures(n: int, epsilon: float, trial_seed) -> ErasurePattern:
    """Erase each of the n positions independently with probability
    epsilon; deterministic given the trial seed."""
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError("epsilon must lie in [0, 1]")
    if not isinstance(trial_seed, np.random.SeedSequence):
        trial_seed = np.random.SeedSequence(int(trial_seed))
    rng = np.random.default_rng(trial_seed)
    hits = rng.random(n) < epsilon
    mask = 0
    for j in np.flatnonzero(hits):
        mask |= 1 << int(j)
    return ErasurePattern.from_mask(n, mask)


def erasure_mask_batch(n: int, epsilon: float, master_seed: int,
                       trials: int, start: int = 0) -> np.ndarray:
    """(trials, W) packed erasure patterns for trial indices
    start..start+trials-1, one independently seeded draw per index."""
    w_words = kernels.words_per_row(n)
    out = np.zeros((trials, w_words), dtype=np.uint64)
    for i in range(trials):
        rng = np.random.default_rng(trial_seed_sequence(master_seed, start + i))
        hits = rng.random(n) < epsilon
        mask = 0
        for j in np.flatnonzero(hits):
            mask |= 1 << int(j)
        for k in range(w_words):
            out[i, k] = (mask >> (64 * k)) & 0xFFFFFFFFFFFFFFFF
    return out


def peel_decode(H: BinaryMatrix, pattern: ErasurePattern) -> PeelResult:
    """Repeatedly resolve an erased position isolated by some row; succeed
    iff the erased set empties."""
    if pattern.n != H.n:
        raise DimensionMismatch("pattern length differs from column count")
    pat = kernels.pack_masks([pattern.mask()], H.n)
    residual_words = kernels.peel_residual_batch(H.packed(), pat, H.n)[0]
    residual_mask = kernels.unpack_words(residual_words)
    return PeelResult(
        success=residual_mask == 0,
        residual=SupportSet.from_mask(residual_mask),
    )


def decode_failure_batch(H: BinaryMatrix, patterns: np.ndarray) -> np.ndarray:
    """Boolean failure flags for a (T, W) packed pattern batch."""
    residual = kernels.peel_residual_batch(H.packed(), patterns, H.n)
    return residual.any(axis=1)


def block_error_exact(H: BinaryMatrix, epsilon) -> Fraction:
    """Exact decoder block-error probability: sum over all 2^n erasure
    patterns of eps^|E| (1-eps)^(n-|E|) [peeling fails on E]."""
    if H.n > EXACT_N_LIMIT:
        raise EnumerationLimit(
            f"n={H.n} exceeds the 2^n pattern sweep guard ({EXACT_N_LIMIT})"
        )
    eps = Fraction(epsilon)
    if not 0 <= eps <= 1:
        raise ValueError("epsilon must lie in [0, 1]")
    masks = np.array(H.row_masks, dtype=np.uint64)
    fail_by_weight = kernels.failure_counts_by_weight(masks, H.n)
    total = Fraction(0)
    for k in range(H.n + 1):
        if fail_by_weight[k]:
            total += int(fail_by_weight[k]) * eps**k * (1 - eps) ** (H.n - k)
    return total


def wilson_interval(failures: int, trials: int, z: float = WILSON_Z95) -> tuple[float, float]:
    """Wilson score interval; well behaved at zero observed failures."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    p = failures / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (p + z2 / (2 * trials)) / denom
    half = (z / denom) * sqrt(p * (1 - p) / trials + z2 / (4 * trials * trials))
    # the bounds are exactly 0/1 at the boundary counts; avoid float residue
    lo = 0.0 if failures == 0 else max(0.0, center - half)
    hi = 1.0 if failures == trials else min(1.0, center + half)
    return (lo, hi)


def block_error_monte_carlo(H: BinaryMatrix, epsilon: float, trials: int,
                            seed: int, threads: int = 1) -> SimResult:
    """Failure frequency of the peeling decoder over independently seeded
    trials.  Per-trial seeds derive from (seed, trial index), so the
    estimate does not depend on execution order or `threads`."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if threads <= 1:
        patterns = erasure_mask_batch(H.n, epsilon, seed, trials)
        failures = int(decode_failure_batch(H, patterns).sum())
    else:
        import multiprocessing

        bounds = [trials * i // threads for i in range(threads + 1)]
        jobs = [
            (H.row_masks, H.n, epsilon, seed, bounds[i], bounds[i + 1])
            for i in range(threads)
        ]
        with multiprocessing.Pool(threads) as pool:
            failures = sum(pool.starmap(_mc_range, jobs))
    return SimResult(
        epsilon=epsilon,
        trials=trials,
        failures=failures,
        estimate=failures / trials,
        ci95=wilson_interval(failures, trials),
        seed=seed,
    )


def _mc_range(row_masks, n, epsilon, seed, start, stop) -> int:
    H = BinaryMatrix(row_masks, n)
    patterns = erasure_mask_batch(n, epsilon, seed, stop - start, start=start)
    return int(decode_failure_batch(H, patterns).sum())
