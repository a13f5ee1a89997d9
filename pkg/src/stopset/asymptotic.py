"""Asymptotic growth rates of average stopping-set counts and their
critical exponents.

Growth rates are per-symbol base-2 logarithms unless noted; the bipartite
curve is natively in nats and converted, which leaves sign crossings (and
hence exponents) unchanged.  Roots are found by a coarse bracket scan
followed by bisection, derivative-free on purpose: the curves are steep
near 0 where the exponents live.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import inf, log, log2

BRACKET_STEP = 1e-3
BISECT_TOL = 1e-12
RESIDUAL_LIMIT = 1e-10


def binary_entropy(x: float) -> float:
    """-x log2 x - (1-x) log2(1-x), with the 0 log 0 -> 0 convention."""
    if not 0.0 <= x <= 1.0:
        raise ValueError("binary entropy is defined on [0, 1]")
    if x in (0.0, 1.0):
        return 0.0
    return -x * log2(x) - (1.0 - x) * log2(1.0 - x)


def entropy_nats(x: float) -> float:
    if not 0.0 <= x <= 1.0:
        raise ValueError("entropy is defined on [0, 1]")
    if x in (0.0, 1.0):
        return 0.0
    return -x * log(x) - (1.0 - x) * log(1.0 - x)


def growth_rate_random(ell: float) -> float:
    """The random ensemble grows like the number of supports itself."""
    return binary_entropy(ell)


def growth_rate_const_row(ell: float, rate: float, r: int) -> float:
    """H(l) + (1-R) log2(1 - r l (1-l)^(r-1)); -inf where the row-survival
    factor is nonpositive."""
    if not 0.0 < rate < 1.0:
        raise ValueError("design rate must lie in (0, 1)")
    if r < 1:
        raise ValueError("row weight must be >= 1")
    h = binary_entropy(ell)
    arg = 1.0 - r * ell * (1.0 - ell) ** (r - 1)
    if arg <= 0.0:
        return -inf
    return h + (1.0 - rate) * log2(arg)


def solve_degree_fixed_point(ell: float, d: int) -> float:
    """Positive root x0 of x((1+x)^(d-1) - 1) / ((1+x)^d - dx) = ell.

    The left side increases from 0 to 1 on (0, inf), so the root is
    bracketed by doubling and then bisected; residual <= 1e-12.
    """
    if not 0.0 < ell < 1.0:
        raise ValueError("ell must lie in (0, 1)")
    if d < 2:
        raise ValueError("degree d must be >= 2")

    def g(x: float) -> float:
        p = (1.0 + x) ** (d - 1)
        return x * (p - 1.0) / (p * (1.0 + x) - d * x)

    lo, hi = 0.0, 1.0
    while g(hi) < ell:
        hi *= 2.0
        if hi > 1e18:
            raise ArithmeticError("failed to bracket the fixed point")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if g(mid) < ell:
            lo = mid
        else:
            hi = mid
        if hi - lo <= BISECT_TOL * max(1.0, hi) and abs(g(0.5 * (lo + hi)) - ell) <= 1e-12:
            break
    return 0.5 * (lo + hi)


def growth_rate_bipartite(ell: float, c: int, d: int, bits: bool = True) -> float:
    """(c/d) ln(((1+x0)^d - d x0) / x0^(l d)) - (c-1) H_e(l), with x0 the
    degree fixed point; converted to bits by default."""
    if c < 2 or d < 2:
        raise ValueError("node degrees must be >= 2")
    if not 0.0 < ell < 1.0:
        raise ValueError("ell must lie in (0, 1)")
    x0 = solve_degree_fixed_point(ell, d)
    val = (c / d) * log(((1.0 + x0) ** d - d * x0) / x0 ** (ell * d))
    val -= (c - 1) * entropy_nats(ell)
    return val / log(2.0) if bits else val


@dataclass(frozen=True)
class GrowthBounds:
    """Growth-rate bounds for the extended random ensemble at one point.

    `integer_ratio` is False when (1-R)/mu is not an integer, where the
    underlying extension is not constructible and the formulas are used
    as a continuous extrapolation.
    """

    lower: float
    upper: float
    integer_ratio: bool


def growth_bounds_redundant(ell: float, rate: float, mu: float) -> GrowthBounds:
    """Bounds on the extended-random growth rate; tight (= H(l)) above mu."""
    if not 0.0 <= ell <= 1.0:
        raise ValueError("ell must lie in [0, 1]")
    if not 0.0 < rate < 1.0:
        raise ValueError("design rate must lie in (0, 1)")
    if not 0.0 < mu <= 1.0 - rate:
        raise ValueError("mu must lie in (0, 1-R]")
    h = binary_entropy(ell)
    ratio = (1.0 - rate) / mu
    integral = abs(ratio - round(ratio)) < 1e-9
    if ell > mu:
        return GrowthBounds(lower=h, upper=h, integer_ratio=integral)
    return GrowthBounds(
        lower=h - (1.0 - rate),
        upper=h - (1.0 - rate) * (1.0 - ell / mu),
        integer_ratio=integral,
    )


@dataclass(frozen=True)
class ExponentResult:
    """A sign-crossing point of a growth-rate curve.

    `residual` is |curve value| at the reported point; `crossed` is False
    when the curve never goes negative on the scanned range (the exponent
    is then reported as 0).
    """

    value: float
    residual: float
    iterations: int
    crossed: bool = True


def _least_positive_root(f, scan_hi: float = 0.5) -> ExponentResult:
    """First sign change of f on (0, scan_hi]: coarse scan, then bisection."""
    prev = BRACKET_STEP * 1e-6
    if f(prev) >= 0.0:
        return ExponentResult(value=0.0, residual=abs(f(prev)), iterations=0,
                              crossed=False)
    ell = BRACKET_STEP
    while ell <= scan_hi + 1e-15:
        if f(ell) >= 0.0:
            lo, hi = prev, ell
            iters = 0
            while hi - lo > BISECT_TOL:
                mid = 0.5 * (lo + hi)
                if f(mid) < 0.0:
                    lo = mid
                else:
                    hi = mid
                iters += 1
            root = 0.5 * (lo + hi)
            return ExponentResult(value=root, residual=abs(f(root)),
                                  iterations=iters)
        prev = ell
        ell += BRACKET_STEP
    return ExponentResult(value=0.0, residual=abs(f(scan_hi)), iterations=0,
                          crossed=False)


def critical_exponent_bounds(rate: float, mu: float) -> tuple[ExponentResult, ExponentResult]:
    """(lower-curve root, upper-curve root): the normalized weights where
    the two growth-rate bounds turn nonnegative.

    The lower-bound curve H(l) - (1-R)(1 - l/mu) crosses first; the upper
    H(l) - (1-R) crossing depends on R only.
    """
    if not 0.0 < rate < 1.0:
        raise ValueError("design rate must lie in (0, 1)")
    if not 0.0 < mu <= 1.0 - rate:
        raise ValueError("mu must lie in (0, 1-R]")
    alpha_low = _least_positive_root(
        lambda l: binary_entropy(l) - (1.0 - rate) * (1.0 - l / mu)
    )
    alpha_up = _least_positive_root(lambda l: binary_entropy(l) - (1.0 - rate))
    return alpha_low, alpha_up


def critical_exponent_bipartite(c: int, d: int, bits: bool = True) -> ExponentResult:
    """Least positive normalized weight where the bipartite growth rate
    turns nonnegative."""
    if c < 3:
        raise ValueError("variable-node degree must be >= 3")
    return _least_positive_root(lambda l: growth_rate_bipartite(l, c, d, bits=bits))


def max_exponent_over_degrees(rate: float, c_min: int = 3, c_max: int = 20) -> tuple[int, float]:
    """Maximize the bipartite critical exponent over variable-node degrees
    c in [c_min, c_max] at fixed design rate (d = c/(1-R) must be integral
    to be scanned); ties break toward smaller c."""
    if not 3 <= c_min <= c_max:
        raise ValueError("need 3 <= c_min <= c_max")
    best_c, best_val = None, -1.0
    for c in range(c_min, c_max + 1):
        d_exact = c / (1.0 - rate)
        d = round(d_exact)
        if abs(d_exact - d) > 1e-9:
            continue
        val = critical_exponent_bipartite(c, d).value
        if val > best_val:
            best_c, best_val = c, val
    if best_c is None:
        raise ValueError("no integral check-node degree in the scanned range")
    return best_c, best_val
