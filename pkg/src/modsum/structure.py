"""Structural classification of maximum-size sumset-distinct sets.

For moduli just above a power of two the sumset-distinct sets of full size
have rigid shapes, and each shape here is an executable predicate:

* N = 2^n      -- the elements carry every 2-adic valuation 0..n-1 exactly once;
* N = 2^n + 1
  and 2^n + 3  -- the set is {±lambda*2^i} for a unit lambda and some signs;
* N = 2^n + 2  -- the set either contains N/2 on top of a solution mod N/2,
                  or is one odd element plus the double of a solution mod N/2.

Each non-trivial report carries a witness that is re-verified before being
returned.  The integer-side checks (distinct subset sums over Z, the small
element bound, the dyadic window report) live here as well.
"""

from dataclasses import dataclass, field
from math import gcd

from .equivalence import are_equivalent, res_collapse
from .errors import (
    CollisionError,
    NonIntegralError,
    NotDistinctError,
    PreconditionFailedError,
    TooLargeError,
    WrongModulusShapeError,
)
from .modring import euler_phi, reduce_res, units, v2
from .subsetsum import ResidueSet, is_sumset_distinct

FAMILY_POW2 = "pow2-valuation"
FAMILY_PM_POW2 = "pm-lambda-pow2"
FAMILY_CASE_I = "two-n-plus-2-case-i"
FAMILY_CASE_II = "two-n-plus-2-case-ii"
FAMILY_NONE = "unclassified"

INTEGER_ORACLE_LIMIT = 24


@dataclass(frozen=True)
class StructureReport:
    family: str
    witness: dict | None = None
    details: str = ""


def _require_shape(a: ResidueSet, offsets: tuple[int, ...]) -> int:
    n = len(a)
    if all(a.modulus != (1 << n) + off for off in offsets):
        shapes = " or ".join(f"2^{n}+{off}" if off else f"2^{n}" for off in offsets)
        raise WrongModulusShapeError(
            f"modulus {a.modulus} is not {shapes} for a {n}-element set"
        )
    return a.modulus - (1 << n)


def check_valuation_form(a: ResidueSet) -> StructureReport:
    """Modulus 2^n: classified iff the 2-adic valuations are exactly {0,...,n-1}."""
    _require_shape(a, (0,))
    n = len(a)
    vals = sorted((v2(e), e) for e in a.elements)
    if [v for v, _ in vals] != list(range(n)):
        return StructureReport(
            FAMILY_NONE, details=f"valuation multiset {[v for v, _ in vals]}"
        )
    ordering = [e for _, e in vals]
    return StructureReport(
        FAMILY_POW2,
        witness={"ordering": ordering},
        details="one element per 2-adic valuation 0..n-1",
    )


def check_dilated_powers_form(a: ResidueSet) -> StructureReport:
    """Modulus 2^n+1 or 2^n+3: classified iff A = {±lambda*2^i} for a unit lambda."""
    _require_shape(a, (1, 3))
    n = len(a)
    modulus = a.modulus
    if not is_sumset_distinct(a):
        return StructureReport(FAMILY_NONE, details="not sumset-distinct")
    powers = ResidueSet.make(modulus, (1 << i for i in range(n)))
    if not are_equivalent(a, powers):
        return StructureReport(FAMILY_NONE, details="not a dilate of the powers of two")
    folded = res_collapse(a).elements
    for lam in units(modulus):
        if tuple(sorted(reduce_res(lam << i, modulus) for i in range(n))) == folded:
            signs = 0
            for i in range(n):
                if (lam << i) % modulus not in a.elements:
                    signs |= 1 << i
            rebuilt = tuple(
                sorted(
                    (modulus - (lam << i) % modulus) if (signs >> i) & 1 else (lam << i) % modulus
                    for i in range(n)
                )
            )
            if rebuilt != a.elements:
                raise AssertionError("dilated-powers witness failed to reconstruct")
            return StructureReport(
                FAMILY_PM_POW2,
                witness={"lambda": lam, "signs": signs},
                details=f"A = {{±{lam}·2^i}} mod {modulus}",
            )
    raise AssertionError("equivalent to the powers of two but no witness found")


def classify_pow2_plus2(a: ResidueSet) -> StructureReport:
    """Modulus 2^n+2: reduce to a solution mod N/2 through N/2-membership or halving."""
    n = len(a)
    if n < 2:
        raise WrongModulusShapeError("classification needs at least 2 elements")
    _require_shape(a, (2,))
    modulus = a.modulus
    half = modulus // 2

    if half in a.elements:
        rest = [e for e in a.elements if e != half]
        try:
            sub = ResidueSet.make(half, (e % half for e in rest))
        except CollisionError:
            sub = None
        if sub is not None and is_sumset_distinct(sub):
            witness = {
                "case": "ii",
                "half": half,
                "reduced": list(sub.elements),
                "sub_report": check_dilated_powers_form(sub),
            }
            rebuilt = {half} | {e for e in rest}
            if rebuilt != set(a.elements):
                raise AssertionError("case-ii witness failed to reconstruct")
            return StructureReport(
                FAMILY_CASE_II,
                witness=witness,
                details=f"contains N/2={half}; remainder solves mod {half}",
            )

    odds = [e for e in a.elements if e % 2 == 1]
    if len(odds) == 1:
        evens = [e for e in a.elements if e % 2 == 0]
        sub = ResidueSet.make(half, (e // 2 for e in evens)) if evens else None
        if sub is not None and is_sumset_distinct(sub):
            rebuilt = {odds[0]} | {2 * e % modulus for e in sub.elements}
            if rebuilt != set(a.elements):
                raise AssertionError("case-i witness failed to reconstruct")
            return StructureReport(
                FAMILY_CASE_I,
                witness={
                    "case": "i",
                    "odd": odds[0],
                    "halved": list(sub.elements),
                    "sub_report": check_dilated_powers_form(sub),
                },
                details=f"one odd element {odds[0]}; halved evens solve mod {half}",
            )
    return StructureReport(FAMILY_NONE, details="matches neither reduction to N/2")


def dilation_count_formula(n: int) -> int:
    """Closed-form number of sumset-distinct size-n sets mod 2^n+1: 2^n*phi(N)/(2n)."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    modulus = (1 << n) + 1
    numerator = (1 << n) * euler_phi(modulus)
    if numerator % (2 * n):
        raise NonIntegralError(
            f"2^{n}*phi({modulus}) = {numerator} is not divisible by {2 * n}"
        )
    return numerator // (2 * n)


def relative_prime_check(a: ResidueSet) -> bool:
    """Modulus 2^n+1 or 2^n+3: every element must be a unit for distinctness to hold."""
    _require_shape(a, (1, 3))
    return all(gcd(e, a.modulus) == 1 for e in a.elements)


def integer_distinct_subset_sums(elements) -> bool:
    """True iff all subset sums over the integers are distinct (bitset doubling)."""
    elems = [int(x) for x in elements]
    if len(elems) > INTEGER_ORACLE_LIMIT:
        raise TooLargeError(f"limited to {INTEGER_ORACLE_LIMIT} elements, got {len(elems)}")
    if any(x < 1 for x in elems):
        raise ValueError("elements must be positive integers")
    if len(set(elems)) != len(elems):
        return False
    bits = 1
    for x in elems:
        shifted = bits << x
        if shifted & bits:
            return False
        bits |= shifted
    return True


@dataclass(frozen=True)
class SmallElementReport:
    """Per-element check 3*a < 1 + s(A) for the elements a <= 2^(n-1)-1."""

    total_plus_one: int
    checked: tuple[tuple[int, int], ...]  # (element, margin = N - 3a)
    all_pass: bool


def small_element_bound_check(elements) -> SmallElementReport:
    """Distinct-subset-sum set over Z: elements below 2^(n-1) stay under (1+s(A))/3."""
    elems = sorted(int(x) for x in elements)
    if not elems:
        raise ValueError("need at least one element")
    if not integer_distinct_subset_sums(elems):
        raise NotDistinctError(f"{elems} does not have distinct subset sums over Z")
    n = len(elems)
    bound = 1 + sum(elems)
    threshold = (1 << (n - 1)) - 1
    checked = tuple((a, bound - 3 * a) for a in elems if a <= threshold)
    return SmallElementReport(bound, checked, all(m > 0 for _, m in checked))


@dataclass(frozen=True)
class WindowReport:
    """Per-index check 2^(i-1) <= a_i <= 2^(i-1) + t (1-based, ascending)."""

    t: int
    indices: tuple[tuple[int, int, bool], ...] = field(default=())  # (i, a_i, in window)
    violating_prefix_end: int = 0  # largest index that violates; 0 when none

    @property
    def all_pass(self) -> bool:
        return self.violating_prefix_end == 0


def dyadic_window_check(elements, t: int) -> WindowReport:
    """Report which indices of a distinct-subset-sum set sit in their dyadic window.

    The window claim is asserted only "for every large i" upstream, so no
    pass/fail judgement is made here beyond flagging the violating prefix.
    """
    elems = sorted(int(x) for x in elements)
    if not elems:
        raise ValueError("need at least one element")
    n = len(elems)
    if sum(elems) >= (1 << n) + t:
        raise PreconditionFailedError(
            f"s(A) = {sum(elems)} >= 2^{n} + {t}; window check needs s(A) < 2^n + t"
        )
    if not integer_distinct_subset_sums(elems):
        raise NotDistinctError(f"{elems} does not have distinct subset sums over Z")
    rows = []
    worst = 0
    for i, a in enumerate(elems, start=1):
        lo = 1 << (i - 1)
        ok = lo <= a <= lo + t
        if not ok:
            worst = i
        rows.append((i, a, ok))
    return WindowReport(t, tuple(rows), worst)
