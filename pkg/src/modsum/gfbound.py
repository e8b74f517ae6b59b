"""Numeric evaluation of the sum-set generating function at the N-th root of unity.

g_A(x) = prod_i (1 + x^{a_i}) expands to the sum of x^s over all subset sums s
(with multiplicity).  When A is sumset-distinct mod N, the attained residues
plus the missing ones exhaust Z/NZ, so g_A(w) + sum over missing s of w^s = 0
at w = exp(2*pi*i/N); the residual of that identity and the triangle-inequality
bound |g_A(w)| <= #missing are both checked numerically here.  Each factor has
magnitude sqrt(2 + 2*cos(2*pi*a/N)), which exceeds 1 + eps whenever
a < (1 - eps) * N / 3; that per-factor growth is what makes a small missing
budget force a large element.

Everything is double precision with a pairwise product; tolerances scale with
2^n because the exact identity sums N unit vectors.
"""

import cmath
import math
from dataclasses import dataclass

from .errors import NotDistinctError
from .subsetsum import ResidueSet, compute_sumset, is_sumset_distinct

RESIDUAL_TOL_PER_SET = 1e-9  # times 2^n


def _pairwise_product(factors: list[complex]) -> complex:
    if len(factors) == 1:
        return factors[0]
    mid = len(factors) // 2
    return _pairwise_product(factors[:mid]) * _pairwise_product(factors[mid:])


def factor_magnitude(a: int, modulus: int) -> float:
    """|1 + w^a| = sqrt(2 + 2 cos(2 pi a / N))."""
    return math.sqrt(max(0.0, 2.0 + 2.0 * math.cos(2.0 * math.pi * a / modulus)))


def growth_factor_floor(eps: float) -> float:
    """sqrt(2 - 2 cos(pi/3 + 2 eps pi/3)) — the per-factor floor, > 1 + eps."""
    return math.sqrt(2.0 - 2.0 * math.cos(math.pi / 3 + 2 * eps * math.pi / 3))


@dataclass(frozen=True)
class GfEvaluation:
    modulus: int
    value: complex
    magnitude: float
    factor_magnitudes: tuple[float, ...]
    missing_phase_sum: complex | None  # only for sumset-distinct input
    residual: float | None  # |g + sum over missing of w^s|, ditto


def eval_g(a: ResidueSet) -> GfEvaluation:
    """Evaluate g_A at w_N, with per-factor magnitudes and the missing-phase residual."""
    n = a.modulus
    step = 2.0 * math.pi / n
    factors = [1.0 + cmath.exp(1j * step * e) for e in a.elements]
    value = _pairwise_product(factors)
    magnitudes = tuple(factor_magnitude(e, n) for e in a.elements)
    if not is_sumset_distinct(a):
        return GfEvaluation(n, value, abs(value), magnitudes, None, None)
    missing = compute_sumset(a).missing()
    phase_sum = complex(
        math.fsum(math.cos(step * s) for s in missing),
        math.fsum(math.sin(step * s) for s in missing),
    )
    return GfEvaluation(n, value, abs(value), magnitudes, phase_sum, abs(value + phase_sum))


def verify_magnitude_bound(a: ResidueSet) -> bool:
    """|g_A(w_N)| <= t for sumset-distinct A with t = N - 2^|A| missing residues."""
    if not is_sumset_distinct(a):
        raise NotDistinctError(f"{a.elements} is not sumset-distinct mod {a.modulus}")
    n = len(a)
    t = a.modulus - (1 << n)
    tolerance = RESIDUAL_TOL_PER_SET * (1 << n)
    return eval_g(a).magnitude <= t + tolerance


@dataclass(frozen=True)
class GrowthCheck:
    """Per-factor margins over 1 + eps when max A < (1 - eps) N / 3."""

    eps: float
    threshold: float  # (1 - eps) * N / 3
    hypothesis_met: bool
    factors: tuple[tuple[int, float, float], ...]  # (element, magnitude, margin)
    product_floor: float  # (1 + eps)^n, only meaningful when hypothesis met
    all_factors_exceed: bool


def epsilon_growth_check(a: ResidueSet, eps: float) -> GrowthCheck:
    """Check that every factor magnitude beats 1 + eps under the max-element hypothesis.

    Elements are used as given; folding them to symmetric residues first
    gives the sharper reading of the hypothesis.
    """
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must be in (0, 1), got {eps}")
    n = a.modulus
    threshold = (1.0 - eps) * n / 3.0
    hypothesis = max(a.elements) < threshold
    rows = tuple(
        (e, factor_magnitude(e, n), factor_magnitude(e, n) - (1.0 + eps))
        for e in a.elements
    )
    exceed = all(margin > 0.0 for _, _, margin in rows)
    return GrowthCheck(eps, threshold, hypothesis, rows, (1.0 + eps) ** len(a), exceed)
