"""Compiled kernel for the sign-folded weighted count used by count_all.

Same algorithm as enumeration._count_shard, restated on the complement
bitmap U of the difference set (a candidate stays viable iff it sits in U;
adding element a maps U to U & (U << a) & (U >> a), cyclically).  Bitmaps are
W = ceil(N/64) little-endian uint64 words and the DFS runs on preallocated
stack arrays, so the whole shard count stays inside one nopython region.

Falls back silently when numba is unavailable (enumeration keeps the pure
Python reference in that case).
"""

import numpy as np
from numba import int64, njit, uint64

_M1 = uint64(0x5555555555555555)
_M2 = uint64(0x3333333333333333)
_M4 = uint64(0x0F0F0F0F0F0F0F0F)
_H01 = uint64(0x0101010101010101)
_FULL = uint64(0xFFFFFFFFFFFFFFFF)


@njit(uint64(uint64), cache=True, inline="always")
def _pop64(x):
    x = x - ((x >> uint64(1)) & _M1)
    x = (x & _M2) + ((x >> uint64(2)) & _M2)
    x = (x + (x >> uint64(4))) & _M4
    return (x * _H01) >> uint64(56)


@njit(cache=True)
def _rot_into(out, x, a, n_bits, n_words, topmask):
    """out = cyclic left rotation of the n_bits-bit vector x by a, 1 <= a < n_bits."""
    q = a // 64
    r = a % 64
    for i in range(n_words):
        w = uint64(0)
        j = i - q
        if 0 <= j < n_words:
            if r == 0:
                w = x[j]
            else:
                w = x[j] << uint64(r)
        if r != 0:
            j2 = i - q - 1
            if 0 <= j2 < n_words:
                w |= x[j2] >> uint64(64 - r)
        out[i] = w
    m = n_bits - a
    q = m // 64
    r = m % 64
    for i in range(n_words):
        w = uint64(0)
        j = i + q
        if j < n_words:
            if r == 0:
                w = x[j]
            else:
                w = x[j] >> uint64(r)
        if r != 0:
            j2 = i + q + 1
            if j2 < n_words:
                w |= x[j2] << uint64(64 - r)
        out[i] |= w
    out[n_words - 1] &= topmask


@njit(cache=True)
def _count_shard_kernel(n, n_bits, first):
    half = n_bits // 2
    if first > half:
        return int64(0)
    even = n_bits % 2 == 0
    n_words = (n_bits + 63) // 64
    topbits = n_bits - 64 * (n_words - 1)
    topmask = _FULL if topbits == 64 else uint64((int64(1) << topbits) - 1)

    weight0 = int64(1) if (even and first == half) else int64(2)
    if n == 1:
        return weight0

    # complement of the difference set of {first}: everything except 0, ±first
    u0 = np.empty(n_words, dtype=np.uint64)
    for i in range(n_words):
        u0[i] = _FULL
    u0[n_words - 1] = topmask
    u0[0] &= ~uint64(1)
    u0[first // 64] &= ~(uint64(1) << uint64(first % 64))
    other = n_bits - first
    u0[other // 64] &= ~(uint64(1) << uint64(other % 64))

    # candidates: bits first+1 .. half of u0
    v0 = np.zeros(n_words, dtype=np.uint64)
    lo = first + 1
    if lo <= half:
        for i in range(n_words):
            base = 64 * i
            if base + 63 < lo or base > half:
                continue
            a = lo - base
            if a < 0:
                a = 0
            b = half - base
            if b > 63:
                b = 63
            if b - a == 63:
                v0[i] = _FULL
            else:
                v0[i] = uint64(((int64(1) << (b - a + 1)) - 1) << a)
            v0[i] &= u0[i]

    c0 = int64(0)
    for i in range(n_words):
        c0 += int64(_pop64(v0[i]))
    if c0 < n - 1:
        return int64(0)

    cap = n * (half + 2) + 4
    stack_u = np.empty((cap, n_words), dtype=np.uint64)
    stack_v = np.empty((cap, n_words), dtype=np.uint64)
    stack_k = np.empty(cap, dtype=np.int64)
    stack_w = np.empty(cap, dtype=np.int64)
    for i in range(n_words):
        stack_u[0, i] = u0[i]
        stack_v[0, i] = v0[i]
    stack_k[0] = 1
    stack_w[0] = weight0
    top = 1

    uframe = np.empty(n_words, dtype=np.uint64)
    vframe = np.empty(n_words, dtype=np.uint64)
    r1 = np.empty(n_words, dtype=np.uint64)
    r2 = np.empty(n_words, dtype=np.uint64)
    half_word = half // 64
    half_bit = uint64(1) << uint64(half % 64)
    total = int64(0)
    last_level = n - 1

    while top > 0:
        top -= 1
        k = stack_k[top]
        w = stack_w[top]
        for i in range(n_words):
            uframe[i] = stack_u[top, i]
            vframe[i] = stack_v[top, i]
        if k == last_level:
            c = int64(0)
            for i in range(n_words):
                c += int64(_pop64(vframe[i]))
            if c > 0:
                if even and (vframe[half_word] & half_bit) != uint64(0):
                    total += w * (2 * c - 1)
                else:
                    total += w * 2 * c
            continue
        needed = n - k - 1
        for wi in range(n_words):
            bits = vframe[wi]
            while bits != uint64(0):
                low = bits & (uint64(0) - bits)
                bits ^= low
                vframe[wi] = bits
                a = 64 * wi + int64(_pop64(low - uint64(1)))
                _rot_into(r1, uframe, a, n_bits, n_words, topmask)
                _rot_into(r2, uframe, n_bits - a, n_bits, n_words, topmask)
                c = int64(0)
                for j in range(n_words):
                    keep = r1[j] & r2[j]
                    u2 = uframe[j] & keep
                    v2 = vframe[j] & keep
                    stack_u[top, j] = u2
                    stack_v[top, j] = v2
                    c += int64(_pop64(v2))
                if c >= needed:
                    stack_k[top] = k + 1
                    stack_w[top] = w * 2
                    top += 1
    return total


def count_shard_fast(n: int, modulus: int, first: int) -> int:
    """Weighted folded count of one first-element shard (compiled path)."""
    return int(_count_shard_kernel(n, modulus, first))
