"""Explicit families of sumset-distinct sets, with hard parameter validation.

Every generator re-checks its output (distinctness plus the family's side
conditions) before returning, so the constructions double as regression
fixtures.  Named one-off sets live in data/registry.json and are re-verified
on load.
"""

import json
from dataclasses import dataclass
from importlib import resources

from .equivalence import are_equivalent, min_orbit_sum, res_collapse
from .errors import (
    BadParityError,
    BadValuationError,
    BoundViolatedError,
    InvalidPerturbationError,
    ModsumError,
    ScaleGuardError,
)
from .modring import v2
from .subsetsum import ResidueSet, is_sumset_distinct


def construct_powers(n: int, modulus: int) -> ResidueSet:
    """{1, 2, 4, ..., 2^(n-1)} mod N; sumset-distinct whenever 2^n <= N."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if (1 << n) > modulus:
        raise ScaleGuardError(f"2^{n} > {modulus}: the power sums would wrap")
    result = ResidueSet.make(modulus, (1 << i for i in range(n)))
    assert is_sumset_distinct(result)
    return result


@dataclass(frozen=True)
class NearThirdConstruction:
    """A maximum-size set whose largest element stays near N/3."""

    n: int
    k: int
    modulus: int
    base: ResidueSet  # superincreasing set whose dilate is folded
    dilation: int
    result: ResidueSet
    max_element: int
    bound: float  # N/3 + N/2^k


def construct_near_third(n: int, k: int) -> NearThirdConstruction:
    """Set mod N = 2^n + 2^k + 1 (n-k odd) with max element <= N/3 + N/2^k.

    Builds a superincreasing base, dilates it by (N-1)/3, and folds into
    symmetric residues; the fold lands every element below the bound.
    """
    if not (n > k >= 1):
        raise ValueError(f"need n > k >= 1, got n={n}, k={k}")
    if (n - k) % 2 == 0:
        raise BadParityError(
            f"n-k = {n - k} is even, so 3 does not divide 2^{n - k}+1"
        )
    modulus = (1 << n) + (1 << k) + 1
    base_elems = [1 << (i - 1) for i in range(1, n - k + 1)]
    base_elems += [
        (1 << (i - 1 - (n - k))) * ((1 << (n - k)) + 1) for i in range(n - k + 1, n + 1)
    ]
    base = ResidueSet.make(modulus, base_elems)
    lam = (modulus - 1) // 3
    dilated = ResidueSet.make(modulus, (lam * e % modulus for e in base.elements))
    result = res_collapse(dilated)
    if not is_sumset_distinct(result):
        raise ModsumError(f"near-third construction failed distinctness at (n={n}, k={k})")
    bound = modulus / 3 + modulus / (1 << k)
    max_element = max(result.elements)
    if max_element > bound:
        raise BoundViolatedError(
            f"max element {max_element} exceeds N/3 + N/2^{k} = {bound:.3f}"
        )
    return NearThirdConstruction(n, k, modulus, base, lam, result, max_element, bound)


@dataclass(frozen=True)
class PerturbationConstruction:
    """Powers of two shifted by a slow-growing perturbation vector."""

    n: int
    r: int
    p: tuple[int, ...]
    t: int
    modulus: int
    result: ResidueSet


def construct_perturbation(n: int, r: int, p) -> PerturbationConstruction:
    """{2^i + p_i} mod 2^n + (2r+3), for p with p_{i+1} >= p_0+...+p_i, r >= p_{n-1}."""
    p = tuple(int(x) for x in p)
    if r < 1:
        raise InvalidPerturbationError(f"r must be >= 1, got {r}")
    if len(p) != n:
        raise InvalidPerturbationError(f"p has {len(p)} entries, expected n={n}")
    if any(x < 0 for x in p):
        raise InvalidPerturbationError(f"negative entry in p: {p}")
    running = 0
    for i in range(n - 1):
        running += p[i]
        if p[i + 1] < running:
            raise InvalidPerturbationError(
                f"p_{i + 1} = {p[i + 1]} < p_0+...+p_{i} = {running}"
            )
    if p[n - 1] > r:
        raise InvalidPerturbationError(f"p_{n - 1} = {p[n - 1]} > r = {r}")
    t = 2 * r + 3
    modulus = (1 << n) + t
    result = ResidueSet.make(modulus, ((1 << i) + p[i] for i in range(n)))
    total = sum(result.elements)
    assert is_sumset_distinct(result)
    assert total <= (1 << n) - 1 + t
    return PerturbationConstruction(n, r, p, t, modulus, result)


def construct_prefix_powers(prefix, n: int, modulus: int) -> ResidueSet:
    """prefix ∪ {2^i, ..., 2^(n-1)} mod N, where prefix element j has valuation j.

    Requires N > 2^n - 2^i + sum(prefix) so all subset sums stay below N.
    """
    prefix = [int(x) for x in prefix]
    i = len(prefix)
    if i > n:
        raise ValueError(f"prefix of length {i} longer than n = {n}")
    for j, a in enumerate(prefix):
        if a < 1 or v2(a) != j:
            raise BadValuationError(f"prefix element {a} at index {j} needs v2 = {j}")
    threshold = (1 << n) - (1 << i) + sum(prefix)
    if modulus <= threshold:
        raise BoundViolatedError(
            f"N = {modulus} must exceed 2^{n} - 2^{i} + sum(prefix) = {threshold}"
        )
    result = ResidueSet.make(modulus, prefix + [1 << j for j in range(i, n)])
    assert is_sumset_distinct(result)
    return result


@dataclass(frozen=True)
class LargeMinSumConstruction:
    """A family mod 2^n + 9 whose whole orbit has element sum >= N."""

    n: int
    modulus: int
    result: ResidueSet
    alternate: ResidueSet  # an equivalent representative, verified equivalent


def construct_large_min_sum(n: int) -> LargeMinSumConstruction:
    """{3, 6, 12, 24, 2^4, ..., 2^(n-1)} mod 2^n + 9, for n >= 8."""
    if n < 8:
        raise ScaleGuardError(f"family defined for n >= 8, got {n}")
    modulus = (1 << n) + 9
    result = ResidueSet.make(
        modulus, [3, 6, 12, 24] + [1 << i for i in range(4, n)]
    )
    alternate = ResidueSet.make(
        modulus,
        [1 << i for i in range(n - 4)]
        + [
            5 * (1 << (n - 4)) + 3,
            3 * (1 << (n - 3)) + 3,
            (1 << (n - 2)) + 3,
            (1 << (n - 1)) + 3,
        ],
    )
    if not is_sumset_distinct(result):
        raise ModsumError(f"large-min-sum family failed distinctness at n={n}")
    if not are_equivalent(result, alternate):
        raise ModsumError(f"alternate representative not equivalent at n={n}")
    return LargeMinSumConstruction(n, modulus, result, alternate)


@dataclass(frozen=True)
class RegistryEntry:
    name: str
    residue_set: ResidueSet
    expected: dict[str, bool]
    verified: dict[str, bool]

    @property
    def ok(self) -> bool:
        return self.expected == self.verified


def is_perturbation_form(a: ResidueSet) -> bool:
    """Does A match {2^i + p_i} with a valid perturbation vector and 2*p_max < t?"""
    n = len(a)
    t = a.modulus - (1 << n)
    if t <= 0:
        return False
    p = [e - (1 << i) for i, e in enumerate(a.elements)]
    if any(x < 0 for x in p):
        return False
    running = 0
    for i in range(n - 1):
        running += p[i]
        if p[i + 1] < running:
            return False
    return 2 * p[n - 1] < t


def _evaluate_property(name: str, a: ResidueSet) -> bool:
    modulus = a.modulus
    if name == "sumset_distinct":
        return is_sumset_distinct(a)
    if name == "max_below_third":
        return 3 * max(a.elements) < modulus
    if name == "contains_half":
        return modulus % 2 == 0 and modulus // 2 in a.elements
    if name == "single_odd":
        return sum(e % 2 for e in a.elements) == 1
    if name == "perturbation_form":
        return is_perturbation_form(a)
    if name == "min_orbit_sum_at_least_modulus":
        return min_orbit_sum(a)[0] >= modulus
    raise ValueError(f"unknown registry property {name!r}")


def registry_sets() -> list[RegistryEntry]:
    """The named sets shipped with the package, re-verified on every load."""
    raw = json.loads(
        resources.files("modsum").joinpath("data/registry.json").read_text()
    )
    entries = []
    for item in raw:
        rset = ResidueSet.make(item["modulus"], item["elements"])
        expected = dict(item["expected"])
        verified = {name: _evaluate_property(name, rset) for name in expected}
        entry = RegistryEntry(item["name"], rset, expected, verified)
        if not entry.ok:
            raise ModsumError(
                f"registry entry {entry.name!r} failed re-verification: "
                f"expected {expected}, got {verified}"
            )
        entries.append(entry)
    return entries


@dataclass(frozen=True)
class ConstructionSpec:
    """Family selector plus its parameters, as used by the CLI."""

    family: str
    params: dict

    def build(self):
        if self.family == "powers":
            return construct_powers(self.params["n"], self.params["modulus"])
        if self.family in ("thm2-dilation", "thm2"):
            return construct_near_third(self.params["n"], self.params["k"])
        if self.family == "perturbation":
            return construct_perturbation(
                self.params["n"], self.params["r"], self.params["p"]
            )
        if self.family == "example10":
            return construct_prefix_powers(
                self.params["prefix"], self.params["n"], self.params["modulus"]
            )
        if self.family == "appendix-b":
            return construct_large_min_sum(self.params["n"])
        if self.family == "registry":
            entries = registry_sets()
            name = self.params.get("name")
            if name is None:
                return entries
            for entry in entries:
                if entry.name == name:
                    return entry
            raise ValueError(f"no registry entry named {name!r}")
        raise ValueError(f"unknown construction family {self.family!r}")
