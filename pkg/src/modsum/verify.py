"""Both-direction cross-checks between the enumerator and the structure predicates.

Each driver enumerates every sumset-distinct set at its scale, independently
builds the set family predicted by the corresponding characterization, and
compares the two collections exactly — so both the "every solution has the
shape" and the "every shape is a solution" directions are exercised.  The
drivers return plain result records; the CLI and the acceptance suite render
them.
"""

import random
from dataclasses import dataclass, field
from itertools import product
from math import gcd

from .constructions import construct_large_min_sum
from .enumeration import count_all, enumerate_all
from .equivalence import min_orbit_sum
from .modring import units, v2
from .structure import (
    FAMILY_NONE,
    check_dilated_powers_form,
    check_valuation_form,
    classify_pow2_plus2,
    dilation_count_formula,
    relative_prime_check,
)
from .subsetsum import ResidueSet, is_sumset_distinct, missing_residues


@dataclass(frozen=True)
class VerificationResult:
    name: str
    n: int
    modulus: int
    passed: bool
    counts: dict = field(default_factory=dict)
    counterexample: tuple | None = None
    note: str = ""


def _freeze(sets) -> set[frozenset]:
    return {frozenset(s.elements) if isinstance(s, ResidueSet) else frozenset(s) for s in sets}


def verify_valuation_characterization(n: int, *, workers: int = 1, force: bool = False) -> VerificationResult:
    """Modulus 2^n: enumerated sets == sets with one element per 2-adic valuation."""
    modulus = 1 << n
    enumerated = list(enumerate_all(n, modulus, workers=workers, force=force))
    classes = [[a for a in range(1, modulus) if v2(a) == j] for j in range(n)]
    structured = {frozenset(combo) for combo in product(*classes)}
    enum_frozen = _freeze(enumerated)
    predicate_ok = all(
        check_valuation_form(s).family != FAMILY_NONE for s in enumerated
    )
    passed = enum_frozen == structured and predicate_ok
    counter = None
    if not passed:
        diff = enum_frozen.symmetric_difference(structured)
        counter = tuple(sorted(next(iter(diff)))) if diff else None
    return VerificationResult(
        "valuation-characterization",
        n,
        modulus,
        passed,
        counts={
            "enumerated": len(enum_frozen),
            "structured": len(structured),
            "formula": 1 << (n * (n - 1) // 2),
        },
        counterexample=counter,
    )


def _pm_dilate_family(n: int, modulus: int) -> set[frozenset]:
    """All sets {±lambda*2^i mod N} over units lambda and sign choices."""
    out: set[frozenset] = set()
    powers = [(1 << i) for i in range(n)]
    for lam in units(modulus):
        base = [lam * p % modulus for p in powers]
        for mask in range(1 << n):
            out.add(
                frozenset(
                    (modulus - e) if (mask >> i) & 1 else e for i, e in enumerate(base)
                )
            )
    return out


def verify_dilated_powers_characterization(
    n: int, offset: int, *, workers: int = 1, force: bool = False
) -> VerificationResult:
    """Modulus 2^n+1 or 2^n+3: enumerated sets == {±lambda*2^i} forms."""
    if offset not in (1, 3):
        raise ValueError(f"offset must be 1 or 3, got {offset}")
    modulus = (1 << n) + offset
    enumerated = list(enumerate_all(n, modulus, workers=workers, force=force))
    formed = _pm_dilate_family(n, modulus)
    enum_frozen = _freeze(enumerated)
    predicate_ok = all(
        check_dilated_powers_form(s).family != FAMILY_NONE for s in enumerated
    )
    units_ok = all(relative_prime_check(s) for s in enumerated)
    passed = enum_frozen == formed and predicate_ok and units_ok
    counter = None
    if enum_frozen != formed:
        diff = enum_frozen.symmetric_difference(formed)
        counter = tuple(sorted(next(iter(diff))))
    return VerificationResult(
        "dilated-powers-characterization",
        n,
        modulus,
        passed,
        counts={"enumerated": len(enum_frozen), "structured": len(formed)},
        counterexample=counter,
    )


def _half_or_odd_family(n: int, modulus: int) -> set[frozenset]:
    """Sets built from solutions mod N/2: {N/2} + lifts, or one odd + doubled set."""
    half = modulus // 2
    sub = [s.elements for s in enumerate_all(n - 1, half)]
    out: set[frozenset] = set()
    for elems in sub:
        for lift_mask in range(1 << (n - 1)):
            lifted = frozenset(
                e + half if (lift_mask >> i) & 1 else e for i, e in enumerate(elems)
            )
            out.add(lifted | {half})
    for elems in sub:
        doubled = [2 * e % modulus for e in elems]
        for odd in range(1, modulus, 2):
            out.add(frozenset(doubled) | {odd})
    return out


def verify_half_or_odd_classification(
    n: int, *, workers: int = 1, force: bool = False, samples: int = 2000, seed: int = 0
) -> VerificationResult:
    """Modulus 2^n+2: enumerated sets == the two reductions to N/2; classifier agrees."""
    modulus = (1 << n) + 2
    enumerated = list(enumerate_all(n, modulus, workers=workers, force=force))
    formed = _half_or_odd_family(n, modulus)
    enum_frozen = _freeze(enumerated)
    predicate_ok = all(
        classify_pow2_plus2(s).family != FAMILY_NONE for s in enumerated
    )
    # the classifier must reject non-distinct sets as well
    rng = random.Random(seed)
    rejected_ok = True
    for _ in range(samples):
        elems = tuple(sorted(rng.sample(range(1, modulus), n)))
        candidate = ResidueSet(modulus, elems)
        if is_sumset_distinct(candidate):
            continue
        if classify_pow2_plus2(candidate).family != FAMILY_NONE:
            rejected_ok = False
            break
    passed = enum_frozen == formed and predicate_ok and rejected_ok
    counter = None
    if enum_frozen != formed:
        diff = enum_frozen.symmetric_difference(formed)
        counter = tuple(sorted(next(iter(diff))))
    return VerificationResult(
        "half-or-odd-classification",
        n,
        modulus,
        passed,
        counts={"enumerated": len(enum_frozen), "structured": len(formed)},
        counterexample=counter,
    )


def verify_closed_form_count(n: int, *, workers: int = 1, force: bool = False) -> VerificationResult:
    """Modulus 2^n+1: enumerated count equals 2^n*phi(N)/(2n)."""
    modulus = (1 << n) + 1
    counted = count_all(n, modulus, workers=workers, force=force)
    expected = dilation_count_formula(n)
    return VerificationResult(
        "closed-form-count",
        n,
        modulus,
        counted == expected,
        counts={"enumerated": counted, "formula": expected},
    )


def verify_unit_elements(n: int, *, workers: int = 1, force: bool = False) -> VerificationResult:
    """Moduli 2^n+1 and 2^n+3: every element of every solution is a unit."""
    counts = {}
    counter = None
    passed = True
    for offset in (1, 3):
        modulus = (1 << n) + offset
        total = 0
        for s in enumerate_all(n, modulus, workers=workers, force=force):
            total += 1
            if not relative_prime_check(s):
                passed = False
                counter = s.elements
        counts[f"modulus-{modulus}"] = total
    return VerificationResult(
        "unit-elements", n, (1 << n) + 1, passed, counts=counts, counterexample=counter
    )


def verify_missing_decomposition(
    n: int, *, offsets: tuple[int, ...] = (1, 3, 5), workers: int = 1, force: bool = False
) -> VerificationResult:
    """Odd t: missing residues split into the forced singleton plus pairs summing 2x."""
    counts = {}
    counter = None
    passed = True
    for t in offsets:
        modulus = (1 << n) + t
        total = 0
        for s in enumerate_all(n, modulus, workers=workers, force=force):
            total += 1
            pattern = missing_residues(s)
            ok = (
                len(pattern.missing) == t
                and pattern.singleton is not None
                and 2 * pattern.singleton % modulus == pattern.total_sum
                and len(pattern.pairs) == (t - 1) // 2
                and all((y + z) % modulus == 2 * pattern.singleton % modulus for y, z in pattern.pairs)
                and all((pattern.total_sum - m) % modulus in pattern.missing for m in pattern.missing)
            )
            if ok and t == 3:
                ok = gcd((pattern.singleton - pattern.pairs[0][0]) % modulus, modulus) == 1
            if not ok:
                passed = False
                counter = s.elements
        counts[f"modulus-{modulus}"] = total
    return VerificationResult(
        "missing-decomposition", n, (1 << n) + 1, passed, counts=counts, counterexample=counter
    )


def verify_large_min_sum(n: int) -> VerificationResult:
    """Modulus 2^n+9 family: no orbit representative sums below N (exhaustive units)."""
    built = construct_large_min_sum(n)
    value, lam = min_orbit_sum(built.result)
    return VerificationResult(
        "large-min-sum",
        n,
        built.modulus,
        value >= built.modulus,
        counts={"min_orbit_sum": value, "witness_lambda": lam},
    )


THEOREM_DRIVERS = {
    "thm3": lambda n, **kw: verify_valuation_characterization(n, **kw),
    "thm4": lambda n, **kw: verify_dilated_powers_characterization(n, 1, **kw),
    "thm5": lambda n, **kw: verify_dilated_powers_characterization(n, 3, **kw),
    "thm6": lambda n, **kw: verify_half_or_odd_classification(n, **kw),
    "cor1": lambda n, **kw: verify_closed_form_count(n, **kw),
    "lemma6": lambda n, **kw: verify_unit_elements(n, **kw),
    "lemma7": lambda n, **kw: verify_missing_decomposition(n, **kw),
    "appendixB": lambda n, **kw: verify_large_min_sum(n),
}


def run_theorem(name: str, n_values, *, workers: int = 1, force: bool = False) -> list[VerificationResult]:
    driver = THEOREM_DRIVERS.get(name)
    if driver is None:
        raise ValueError(f"unknown theorem {name!r}; choose from {sorted(THEOREM_DRIVERS)}")
    results = []
    for n in n_values:
        results.append(driver(n, workers=workers, force=force))
    return results
