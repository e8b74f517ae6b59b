"""The equivalence group on sumset-distinct sets and its canonical forms.

Two moves preserve sumset-distinctness: negating any single element
(a -> N - a) and dilating the whole set by a unit of Z/NZ.  The group they
generate partitions the sumset-distinct sets into orbits.  A canonical orbit
representative is computed by folding every dilate into symmetric residues
(elements in [1, N//2]) and taking the lexicographically smallest sorted
result over all units; this is total, deterministic, and cheap at desk scale
(one pass over the phi(N) units).
"""

from dataclasses import dataclass
from math import gcd

from .errors import ModulusMismatchError, NotCoprimeError, NotDistinctError
from .modring import mod_inverse, reduce_res, units
from .subsetsum import ResidueSet, is_sumset_distinct


@dataclass(frozen=True)
class OrbitDescriptor:
    """Canonical representative of an orbit plus a witness back to the input.

    witness_lambda dilates the canonical set onto the fold of the input;
    witness_signs (bit i = negate element i of that sorted dilate) then
    recovers the input set exactly.  orbit_size counts the distinct sets in
    the orbit.
    """

    canonical: ResidueSet
    orbit_size: int
    witness_lambda: int
    witness_signs: int

    def reconstruct(self) -> ResidueSet:
        dilated = apply_dilation(self.canonical, self.witness_lambda)
        return apply_signs(dilated, self.witness_signs)


def apply_signs(a: ResidueSet, mask: int) -> ResidueSet:
    """Negate the elements of A selected by mask (bit i -> element i, sorted order)."""
    n = a.modulus
    if mask < 0 or mask >= 1 << len(a):
        raise ValueError(f"sign mask {mask} needs one bit per element")
    flipped = [
        (n - e) if (mask >> i) & 1 else e for i, e in enumerate(a.elements)
    ]
    return ResidueSet.make(n, flipped)


def apply_dilation(a: ResidueSet, lam: int) -> ResidueSet:
    """Multiply every element by lam; lam must be a unit of Z/NZ."""
    n = a.modulus
    g = gcd(lam, n)
    if g != 1:
        raise NotCoprimeError(f"gcd({lam}, {n}) = {g}; dilation needs a unit")
    return ResidueSet.make(n, (lam * e % n for e in a.elements))


def res_collapse(a: ResidueSet) -> ResidueSet:
    """Replace every element by its symmetric residue in [1, N//2].

    Two elements collapsing together means a pair sums to 0 mod N, so the
    input was not sumset-distinct; this surfaces as a CollisionError.
    """
    n = a.modulus
    return ResidueSet.make(n, (reduce_res(e, n) for e in a.elements))


def _folded_key(elements: tuple[int, ...], lam: int, n: int) -> tuple[int, ...]:
    return tuple(sorted(reduce_res(lam * e % n, n) for e in elements))


def canonical_form(a: ResidueSet) -> OrbitDescriptor:
    """Lexicographically smallest folded dilate of A, with witness and orbit size."""
    if not is_sumset_distinct(a):
        raise NotDistinctError(f"{a.elements} is not sumset-distinct mod {a.modulus}")
    n = a.modulus
    k = len(a)
    best: tuple[int, ...] | None = None
    best_lambda = 1
    folds: set[tuple[int, ...]] = set()
    for lam in units(n):
        key = _folded_key(a.elements, lam, n)
        folds.add(key)
        if best is None or key < best:
            best = key
            best_lambda = lam
    canonical = ResidueSet(n, best)
    orbit_size = len(folds) << k
    if n % 2 == 0 and n // 2 in best:
        # negating N/2 is the identity, so that element contributes no sign choice
        orbit_size >>= 1
    witness_lambda = mod_inverse(best_lambda, n)
    dilated = apply_dilation(canonical, witness_lambda)
    in_a = set(a.elements)
    signs = 0
    for i, e in enumerate(dilated.elements):
        if e not in in_a:
            signs |= 1 << i
    descriptor = OrbitDescriptor(canonical, orbit_size, witness_lambda, signs)
    if descriptor.reconstruct().elements != a.elements:
        raise AssertionError("orbit witness failed to reconstruct its input")
    return descriptor


def are_equivalent(a: ResidueSet, b: ResidueSet) -> bool:
    """True iff A and B lie in the same sign/dilation orbit."""
    if a.modulus != b.modulus:
        raise ModulusMismatchError(f"moduli differ: {a.modulus} vs {b.modulus}")
    if len(a) != len(b):
        return False
    return canonical_form(a).canonical == canonical_form(b).canonical


def min_orbit_sum(a: ResidueSet) -> tuple[int, int]:
    """Minimum element sum over all orbit representatives, with an achieving unit.

    Sign flips can lower each element only down to its symmetric residue, so
    the minimum is min over units lam of sum_i res(lam * a_i); the smallest
    lam attaining it is returned.
    """
    if not is_sumset_distinct(a):
        raise NotDistinctError(f"{a.elements} is not sumset-distinct mod {a.modulus}")
    n = a.modulus
    best = None
    best_lambda = 1
    for lam in units(n):
        total = sum(reduce_res(lam * e % n, n) for e in a.elements)
        if best is None or total < best:
            best = total
            best_lambda = lam
    return best, best_lambda
