"""Exact arithmetic over Z/NZ: symmetric residues, inverses, totient, 2-adic valuation.

Everything here is a pure function on plain ints.  Moduli are capped at 2^32 so
that all intermediate products and sums stay well inside 64 bits on any backend.
"""

from dataclasses import dataclass
from math import gcd

from .errors import NotCoprimeError

MODULUS_CAP = 1 << 32


def _check_modulus(n: int) -> int:
    n = int(n)
    if n < 2:
        raise ValueError(f"modulus must be >= 2, got {n}")
    if n > MODULUS_CAP:
        raise ValueError(f"modulus {n} exceeds the 2^32 cap")
    return n


@dataclass(frozen=True)
class Modulus:
    """A modulus N, with its dyadic split N = 2^n + t, 0 <= t < 2^n."""

    value: int

    def __post_init__(self) -> None:
        _check_modulus(self.value)

    @property
    def n(self) -> int:
        return self.value.bit_length() - 1

    @property
    def t(self) -> int:
        return self.value - (1 << self.n)

    def __int__(self) -> int:
        return self.value


def reduce_res(x: int, modulus: int) -> int:
    """Symmetric representative of x mod N: min(x mod N, -x mod N), in [0, N//2]."""
    n = _check_modulus(modulus)
    r = x % n
    return min(r, (n - r) % n)


def v2(x: int) -> int:
    """Largest k with 2^k dividing x.  Undefined (rejected) for x = 0."""
    x = int(x)
    if x < 1:
        raise ValueError(f"2-adic valuation needs a positive integer, got {x}")
    return (x & -x).bit_length() - 1


def mod_inverse(lam: int, modulus: int) -> int:
    """Inverse of lam in Z/NZ; raises NotCoprimeError when gcd(lam, N) > 1."""
    n = _check_modulus(modulus)
    g = gcd(lam, n)
    if g != 1:
        raise NotCoprimeError(f"gcd({lam}, {n}) = {g}, no inverse")
    return pow(lam, -1, n)


def euler_phi(n: int) -> int:
    """Number of units of Z/NZ, by trial factorization (fine for N <= 2^32)."""
    n = int(n)
    if n < 1:
        raise ValueError(f"euler_phi needs a positive integer, got {n}")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            result -= result // p
            while m % p == 0:
                m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        result -= result // m
    return result


def units(modulus: int) -> list[int]:
    """All units of Z/NZ in ascending order."""
    n = _check_modulus(modulus)
    return [lam for lam in range(1, n) if gcd(lam, n) == 1]
