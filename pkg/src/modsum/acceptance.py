"""The reproduction suite: one callable per acceptance criterion.

Each criterion returns a CriterionResult whose payload is canonical-JSON
serializable; the determinism criterion reruns the counting and
characterization payloads under several worker counts and compares the
serialized bytes.  `modsum repro` and tests/test_acceptance.py both drive
this module, printing one pass/fail line per criterion.
"""

import json
import random
import time
from dataclasses import dataclass
from math import gcd

from .constructions import (
    construct_large_min_sum,
    construct_near_third,
    construct_perturbation,
    registry_sets,
)
from .enumeration import count_all
from .equivalence import apply_dilation, apply_signs, are_equivalent, min_orbit_sum
from .gfbound import RESIDUAL_TOL_PER_SET, eval_g
from .structure import dilation_count_formula
from .subsetsum import (
    ResidueSet,
    compute_sumset,
    is_sumset_distinct,
    oracle_sumset_multiplicities,
)
from .verify import (
    verify_dilated_powers_characterization,
    verify_half_or_odd_classification,
    verify_valuation_characterization,
)


@dataclass(frozen=True)
class CriterionResult:
    index: int
    name: str
    passed: bool
    summary: str
    payload: object

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[criterion {self.index:2d}] {status} {self.name}: {self.summary}"


def canonical_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _closed_form_payload(workers: int) -> dict:
    rows = []
    for n in range(2, 9):
        modulus = (1 << n) + 1
        rows.append(
            {
                "n": n,
                "modulus": modulus,
                "count": count_all(n, modulus, workers=workers),
                "formula": dilation_count_formula(n),
            }
        )
    return {"rows": rows}


def criterion_closed_form_counts(workers: int = 1) -> CriterionResult:
    payload = _closed_form_payload(workers)
    spot = {2: 4, 3: 8, 8: 4096}
    ok = all(r["count"] == r["formula"] for r in payload["rows"]) and all(
        r["count"] == spot[r["n"]] for r in payload["rows"] if r["n"] in spot
    )
    counts = [r["count"] for r in payload["rows"]]
    return CriterionResult(1, "closed-form-counts", ok, f"counts n=2..8: {counts}", payload)


def _valuation_payload(workers: int) -> dict:
    rows = []
    for n in range(2, 6):
        res = verify_valuation_characterization(n, workers=workers)
        rows.append({"n": n, "passed": res.passed, **res.counts})
    return {"rows": rows}


def criterion_valuation_characterization(workers: int = 1) -> CriterionResult:
    payload = _valuation_payload(workers)
    expected = {2: 2, 3: 8, 4: 64, 5: 1024}
    ok = all(r["passed"] and r["enumerated"] == expected[r["n"]] for r in payload["rows"])
    counts = [r["enumerated"] for r in payload["rows"]]
    return CriterionResult(
        2, "valuation-characterization", ok, f"counts n=2..5: {counts}", payload
    )


def _dilated_powers_payload(workers: int) -> dict:
    rows = []
    for n in range(3, 7):
        for offset in (1, 3):
            res = verify_dilated_powers_characterization(n, offset, workers=workers)
            rows.append(
                {"n": n, "modulus": res.modulus, "passed": res.passed, **res.counts}
            )
    return {"rows": rows}


def criterion_dilated_powers(workers: int = 1) -> CriterionResult:
    payload = _dilated_powers_payload(workers)
    count_3_11 = next(
        r["enumerated"] for r in payload["rows"] if r["n"] == 3 and r["modulus"] == 11
    )
    ok = all(r["passed"] for r in payload["rows"]) and count_3_11 == 40
    return CriterionResult(
        3,
        "dilated-powers-characterization",
        ok,
        f"n=3..6 both offsets pass; count(3,11)={count_3_11}",
        payload,
    )


def _half_or_odd_payload(workers: int) -> dict:
    rows = []
    for n in range(3, 7):
        res = verify_half_or_odd_classification(n, workers=workers)
        rows.append({"n": n, "modulus": res.modulus, "passed": res.passed, **res.counts})
    return {"rows": rows}


def criterion_half_or_odd(workers: int = 1) -> CriterionResult:
    payload = _half_or_odd_payload(workers)
    count_3_10 = next(r["enumerated"] for r in payload["rows"] if r["n"] == 3)
    ok = all(r["passed"] for r in payload["rows"]) and count_3_10 == 32
    return CriterionResult(
        4,
        "half-or-odd-classification",
        ok,
        f"n=3..6 pass; count(3,10)={count_3_10}",
        payload,
    )


def criterion_named_sets() -> CriterionResult:
    entries = {e.name: e for e in registry_sets()}
    erdos = entries["erdos-616"]
    concluding = entries["concluding-36"]
    ok = (
        erdos.verified["sumset_distinct"]
        and max(erdos.residue_set.elements) == 161
        and 3 * 161 < 616
        and concluding.verified["sumset_distinct"]
    )
    payload = {
        name: {"modulus": e.residue_set.modulus, "verified": e.verified}
        for name, e in entries.items()
    }
    return CriterionResult(
        5, "named-set-regression", ok, "erdos-616 and concluding-36 verified", payload
    )


def criterion_near_third() -> CriterionResult:
    rows = []
    ok = True
    for n, k in ((5, 2), (9, 4), (13, 6)):
        built = construct_near_third(n, k)
        distinct = is_sumset_distinct(built.result)
        within = built.max_element <= built.bound
        ok = ok and distinct and within
        rows.append(
            {
                "n": n,
                "k": k,
                "modulus": built.modulus,
                "max": built.max_element,
                "bound": built.bound,
            }
        )
    ok = ok and rows[0]["max"] == 13
    return CriterionResult(
        6,
        "near-third-construction",
        ok,
        f"(5,2) max={rows[0]['max']} <= {rows[0]['bound']:.2f}; all within bound",
        {"rows": rows},
    )


def criterion_large_min_sum() -> CriterionResult:
    rows = []
    ok = True
    for n in range(8, 13):
        built = construct_large_min_sum(n)
        value, lam = min_orbit_sum(built.result)
        ok = ok and is_sumset_distinct(built.result) and value >= built.modulus
        rows.append(
            {"n": n, "modulus": built.modulus, "min_orbit_sum": value, "lambda": lam}
        )
    return CriterionResult(
        7,
        "large-min-sum-family",
        ok,
        f"min orbit sums {[r['min_orbit_sum'] for r in rows]} all >= N",
        {"rows": rows},
    )


def _pick_bit(rng: random.Random, mask: int) -> int:
    """Uniform random set-bit index of a nonzero bitmap."""
    count = mask.bit_count()
    if count <= 16:
        positions = []
        while mask:
            low = mask & -mask
            mask ^= low
            positions.append(low.bit_length() - 1)
        return rng.choice(positions)
    # dense mask: rejection against the width is cheap
    width = mask.bit_length()
    while True:
        idx = rng.randrange(width)
        if (mask >> idx) & 1:
            return idx


def sample_walk_set(rng: random.Random, n: int, modulus: int) -> ResidueSet | None:
    """One random sumset-distinct set via a random valid-extension walk."""
    full = (1 << modulus) - 1
    for _ in range(32):
        diff = 1
        elems = []
        alive = True
        for _ in range(n):
            avail = ~diff & full
            if avail == 0:
                alive = False
                break
            a = _pick_bit(rng, avail)
            r1 = ((diff << a) | (diff >> (modulus - a))) & full
            r2 = ((diff << (modulus - a)) | (diff >> a)) & full
            diff |= r1 | r2
            elems.append(a)
        if alive:
            return ResidueSet(modulus, tuple(sorted(elems)))
    return None


def _scramble(rng: random.Random, rset: ResidueSet) -> ResidueSet:
    """Random orbit member: dilate by a random unit, then flip random signs."""
    modulus = rset.modulus
    while True:
        lam = rng.randrange(1, modulus)
        if gcd(lam, modulus) == 1:
            break
    mask = rng.randrange(1 << len(rset))
    dilated = apply_dilation(rset, lam)
    return apply_signs(dilated, mask)


def sample_distinct_set(rng: random.Random, n: int) -> ResidueSet:
    """A randomized sumset-distinct set with |A| = n.

    Tight moduli (t as small as 1) are covered by scrambling the power set or
    a perturbation set across its orbit; roomy moduli by free random walks.
    """
    kind = rng.randrange(3)
    if kind == 0:
        t = rng.choice((1, 2, 3, 5, 9, 15, 31))
        modulus = (1 << n) + t
        base = ResidueSet.make(modulus, ((1 << i) for i in range(n)))
        return _scramble(rng, base)
    if kind == 1 and n >= 4:
        r = rng.randrange(1, 4)
        p = [0] * n
        budget = rng.randrange(r + 1)
        tail = rng.randrange(1, 3)
        for i in range(n - tail, n):
            p[i] = budget
        built = construct_perturbation(n, r, p)
        return _scramble(rng, built.result)
    # roomy modulus: random walks rarely dead-end there
    t = (1 << max(1, n - 2)) + rng.randrange(1 << max(1, n - 2))
    modulus = (1 << n) + t
    walked = sample_walk_set(rng, n, modulus)
    if walked is not None:
        return walked
    return _scramble(rng, ResidueSet.make(modulus, ((1 << i) for i in range(n))))


def criterion_gf_identity(samples: int = 1000, seed: int = 20240801) -> CriterionResult:
    rng = random.Random(seed)
    worst_residual_ratio = 0.0
    ok = True
    for _ in range(samples):
        n = rng.randrange(3, 13)
        rset = sample_distinct_set(rng, n)
        ev = eval_g(rset)
        tol = RESIDUAL_TOL_PER_SET * (1 << n)
        t_actual = rset.modulus - (1 << n)
        if ev.residual is None or ev.residual >= tol or ev.magnitude > t_actual + tol:
            ok = False
            break
        worst_residual_ratio = max(worst_residual_ratio, ev.residual / tol)
    payload = {"samples": samples, "worst_residual_ratio": worst_residual_ratio}
    return CriterionResult(
        8,
        "generating-function-identity",
        ok,
        f"{samples} sets: residual within tolerance, |g| <= t",
        payload,
    )


def criterion_oracle_agreement(samples: int = 500, seed: int = 977) -> CriterionResult:
    rng = random.Random(seed)
    ok = True
    distinct_seen = 0
    for _ in range(samples):
        n = rng.randrange(1, 13)
        modulus = rng.randrange(max(4, 1 << min(n, 4)), 1 << 12)
        elems = tuple(sorted(rng.sample(range(1, modulus), n)))
        rset = ResidueSet(modulus, elems)
        bitmap = compute_sumset(rset)
        oracle = oracle_sumset_multiplicities(rset)
        if set(bitmap.support()) != set(oracle):
            ok = False
            break
        if sum(oracle.values()) != 1 << n:
            ok = False
            break
        if is_sumset_distinct(rset):
            distinct_seen += 1
            if bitmap.popcount != 1 << n:
                ok = False
                break
    payload = {"samples": samples, "distinct_seen": distinct_seen}
    return CriterionResult(
        9,
        "oracle-agreement",
        ok,
        f"{samples} random sets agree with the 2^n oracle ({distinct_seen} distinct)",
        payload,
    )


def _valid_perturbation_vectors(n: int, r: int) -> list[tuple[int, ...]]:
    """All p-vectors with entries in [0, r] satisfying the growth conditions."""
    found = []

    def extend(p: tuple[int, ...], running: int) -> None:
        if len(p) == n:
            if p[-1] <= r:
                found.append(p)
            return
        lo = running if p else 0
        for value in range(lo, r + 1):
            extend(p + (value,), running + value)

    extend((), 0)
    return found


def criterion_perturbation_inequivalence() -> CriterionResult:
    n, r = 10, 1
    vectors = _valid_perturbation_vectors(n, r)
    expected = [
        tuple([0] * 10),
        tuple([0] * 9 + [1]),
        tuple([0] * 8 + [1, 1]),
    ]
    ok = sorted(vectors) == sorted(expected)
    built = [construct_perturbation(n, r, p) for p in vectors]
    pairs = []
    for i in range(len(built)):
        for j in range(i + 1, len(built)):
            equivalent = are_equivalent(built[i].result, built[j].result)
            pairs.append({"p1": list(built[i].p), "p2": list(built[j].p), "equivalent": equivalent})
            ok = ok and not equivalent
    payload = {"vectors": [list(v) for v in vectors], "pairs": pairs}
    return CriterionResult(
        10,
        "perturbation-inequivalence",
        ok,
        f"{len(vectors)} valid vectors pairwise inequivalent",
        payload,
    )


def criterion_worker_determinism(worker_counts=(1, 2, 8)) -> CriterionResult:
    builders = {
        "closed-form": _closed_form_payload,
        "valuation": _valuation_payload,
        "dilated-powers": _dilated_powers_payload,
        "half-or-odd": _half_or_odd_payload,
    }
    ok = True
    detail = {}
    for name, builder in builders.items():
        blobs = [canonical_json(builder(w)) for w in worker_counts]
        identical = all(b == blobs[0] for b in blobs)
        detail[name] = identical
        ok = ok and identical
    return CriterionResult(
        11,
        "worker-determinism",
        ok,
        f"criteria 1-4 byte-identical for workers {list(worker_counts)}",
        detail,
    )


CRITERIA = (
    criterion_closed_form_counts,
    criterion_valuation_characterization,
    criterion_dilated_powers,
    criterion_half_or_odd,
    criterion_named_sets,
    criterion_near_third,
    criterion_large_min_sum,
    criterion_gf_identity,
    criterion_oracle_agreement,
    criterion_perturbation_inequivalence,
    criterion_worker_determinism,
)


def run_all(printer=print) -> list[CriterionResult]:
    results = []
    for criterion in CRITERIA:
        start = time.perf_counter()
        result = criterion()
        elapsed = time.perf_counter() - start
        if printer is not None:
            printer(f"{result.line()} [{elapsed:.1f}s]")
        results.append(result)
    return results
