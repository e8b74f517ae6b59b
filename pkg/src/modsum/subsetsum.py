"""Subset sums modulo N: the S(A) bitmap, distinctness test, missing residues.

The sum set S(A) of an n-element set A is held as an N-bit integer (bit s set
iff some subset of A sums to s mod N).  Adding an element a replaces S by
S | rot(S, a) where rot is a cyclic rotation of the N-bit vector, so the whole
map costs n big-int operations.  A is sumset-distinct exactly when every such
step doubles the popcount, i.e. S and rot(S, a) are disjoint at every step.

A slow oracle that walks all 2^n subsets is kept alongside as an independent
cross-check of the bitmap engine.
"""

from dataclasses import dataclass

from .errors import (
    CollisionError,
    DecompositionUnavailableError,
    NotDistinctError,
    TooLargeError,
)
from .modring import _check_modulus

ORACLE_LIMIT = 24


@dataclass(frozen=True)
class ResidueSet:
    """Sorted distinct nonzero residues modulo a fixed N."""

    modulus: int
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        n = _check_modulus(self.modulus)
        if not self.elements:
            raise ValueError("a residue set needs at least one element")
        prev = 0
        for e in self.elements:
            if not 0 < e < n:
                raise ValueError(f"element {e} outside [1, {n - 1}]")
            if e <= prev:
                raise ValueError("elements must be strictly increasing")
            prev = e

    @classmethod
    def make(cls, modulus: int, elements) -> "ResidueSet":
        """Reduce arbitrary integers mod N; reject zero and collisions."""
        n = _check_modulus(modulus)
        reduced = []
        seen = set()
        for x in elements:
            r = int(x) % n
            if r == 0:
                raise CollisionError(
                    f"element {x} reduces to 0 mod {n} (already the empty-subset sum)"
                )
            if r in seen:
                raise CollisionError(f"elements collide at {r} mod {n}")
            seen.add(r)
            reduced.append(r)
        return cls(n, tuple(sorted(reduced)))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.elements

    def total(self) -> int:
        """Sum of the elements, reduced mod N."""
        return sum(self.elements) % self.modulus


@dataclass(frozen=True)
class SumsetBitmap:
    """Characteristic vector of S(A) over Z/NZ, bit s <=> s attained."""

    modulus: int
    bits: int
    popcount: int

    def __contains__(self, s: int) -> bool:
        return bool((self.bits >> (s % self.modulus)) & 1)

    def support(self) -> tuple[int, ...]:
        return tuple(s for s in range(self.modulus) if (self.bits >> s) & 1)

    def missing(self) -> tuple[int, ...]:
        return tuple(s for s in range(self.modulus) if not (self.bits >> s) & 1)


@dataclass(frozen=True)
class MissingPattern:
    """The residues absent from S(A), with the odd-N singleton/pair split.

    For odd N the missing set is closed under s -> total_sum - s; its unique
    fixed point total_sum/2 is the singleton and every other missing y pairs
    with (2x - y) mod N, so each pair sums to 2x.
    """

    modulus: int
    missing: tuple[int, ...]
    singleton: int | None
    pairs: tuple[tuple[int, int], ...]
    total_sum: int


def compute_sumset(a: ResidueSet) -> SumsetBitmap:
    """Bitmap of all subset sums of A mod N (bit 0 set: the empty subset)."""
    n = a.modulus
    mask = (1 << n) - 1
    bits = 1
    for e in a.elements:
        bits |= ((bits << e) | (bits >> (n - e))) & mask
    return SumsetBitmap(n, bits, bits.bit_count())


def is_sumset_distinct(a: ResidueSet) -> bool:
    """True iff all 2^|A| subset sums are distinct mod N.

    Aborts at the first element whose shifted copy of S overlaps S (the
    popcount would fail to double there).
    """
    n = a.modulus
    if (1 << len(a.elements)) > n:
        return False
    mask = (1 << n) - 1
    bits = 1
    for e in a.elements:
        shifted = ((bits << e) | (bits >> (n - e))) & mask
        if shifted & bits:
            return False
        bits |= shifted
    return True


def missing_residues(a: ResidueSet, *, require_decomposition: bool = False) -> MissingPattern:
    """Complement of S(A), decomposed into singleton + pairs when N is odd.

    The missing list is always filled; for even N the decomposition fields
    stay empty (raise instead by passing require_decomposition=True).
    """
    if not is_sumset_distinct(a):
        raise NotDistinctError(f"{a.elements} is not sumset-distinct mod {a.modulus}")
    n = a.modulus
    missing = compute_sumset(a).missing()
    total = a.total()
    if n % 2 == 0:
        if require_decomposition:
            raise DecompositionUnavailableError(
                f"modulus {n} is even; no singleton/pair decomposition"
            )
        return MissingPattern(n, missing, None, (), total)
    x = total * pow(2, -1, n) % n
    missing_set = set(missing)
    if x not in missing_set:
        raise NotDistinctError(
            f"half of the total sum ({x}) is attained; {a.elements} cannot be sumset-distinct"
        )
    pairs = []
    used = {x}
    for y in missing:
        if y in used:
            continue
        z = (2 * x - y) % n
        if z not in missing_set or z in used:
            raise NotDistinctError(
                f"missing set of {a.elements} is not closed under s -> {total} - s"
            )
        used.update((y, z))
        pairs.append((min(y, z), max(y, z)))
    return MissingPattern(n, missing, x, tuple(pairs), total)


def oracle_sumset_multiplicities(a: ResidueSet) -> dict[int, int]:
    """Exact subset count per residue, by walking all 2^n subsets (Gray code).

    Deliberately independent of the bitmap engine; used to validate it.
    """
    k = len(a.elements)
    if k > ORACLE_LIMIT:
        raise TooLargeError(f"oracle limited to {ORACLE_LIMIT} elements, got {k}")
    n = a.modulus
    counts = [0] * n
    counts[0] = 1
    elems = a.elements
    in_subset = [False] * k
    current = 0
    for step in range(1, 1 << k):
        j = (step & -step).bit_length() - 1
        if in_subset[j]:
            current = (current - elems[j]) % n
        else:
            current = (current + elems[j]) % n
        in_subset[j] = not in_subset[j]
        counts[current] += 1
    return {r: c for r, c in enumerate(counts) if c}
