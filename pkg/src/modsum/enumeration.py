"""Exhaustive enumeration and counting of sumset-distinct sets at desk scale.

Search organization
-------------------
Sets are built as ascending element tuples.  The running state per prefix is
the difference set D = S - S of its subset sums, held as an N-bit integer:
an element a keeps the sums doubling exactly when a is outside D, and then
D' = D | (D + a) | (D - a).  Candidates for the next element are read off the
complement of D in one mask operation, so a dead prefix costs nothing beyond
its own creation.

Shards and determinism
----------------------
The top-level frontier is the list of single-element prefixes; each shard is
completed independently (workers share nothing), and shard outputs are merged
in first-element order, so the stream is in lexicographic order and identical
for any worker count.

count_all enumerates sign-folded sets (all elements in [1, N//2]) and weights
each by the number of its sign lifts (2^k, halved when N is even and N/2 is
present, since negating N/2 does nothing).  Flipping signs preserves
distinctness and folding is collision-free on distinct sets, so the weighted
count is exact; the equality with the plain stream length is under test.

Checkpoints
-----------
A checkpoint is written at shard boundaries: a JSON-lines file with a header
object, one record per pending frontier prefix (elements plus the hex sum-set
bitmap), and a trailer carrying the emitted count and a SHA-256 checksum of
everything above it.  Resuming replays the identical remaining stream.
"""

import hashlib
import json
import os
from collections import deque
from dataclasses import dataclass
from itertools import islice
from multiprocessing import Pool

from .equivalence import canonical_form
from .errors import (
    CorruptCheckpointError,
    NotDistinctError,
    ScaleGuardError,
    VersionMismatchError,
)
from .modring import _check_modulus
from .subsetsum import ResidueSet

_FAST_COUNT = False  # resolved lazily so importing modsum never pays the JIT toolchain

CHECKPOINT_VERSION = 1
DEFAULT_MAX_ELEMENTS = 14
DEFAULT_MAX_MODULUS = 1 << 20
SCALE_GUARD_ENV = "MODSUM_SCALE_GUARD"

MODE_ALL = "all"
MODE_CANONICAL = "canonical-only"
_MODES = (MODE_ALL, MODE_CANONICAL)


def _scale_limits() -> tuple[int, int] | None:
    """Desk-scale limits (max n, max N), or None when disabled via environment."""
    raw = os.environ.get(SCALE_GUARD_ENV)
    if raw is None:
        return (DEFAULT_MAX_ELEMENTS, DEFAULT_MAX_MODULUS)
    raw = raw.strip()
    if raw.lower() in {"off", "none"}:
        return None
    if ":" in raw:
        left, right = raw.split(":", 1)
        return (int(left), int(right))
    raise ValueError(f"cannot parse {SCALE_GUARD_ENV}={raw!r}; use 'off' or 'MAXN:MAXMOD'")


def _check_scale(n: int, modulus: int, force: bool) -> None:
    if n < 1:
        raise ValueError(f"need at least one element, got n={n}")
    if (1 << n) > modulus:
        raise ScaleGuardError(
            f"2^{n} > {modulus}: no size-{n} set can be sumset-distinct mod {modulus}"
        )
    if force:
        return
    limits = _scale_limits()
    if limits is None:
        return
    max_n, max_mod = limits
    if n > max_n or modulus > max_mod:
        raise ScaleGuardError(
            f"(n={n}, N={modulus}) exceeds the desk-scale guard "
            f"(n <= {max_n}, N <= {max_mod}); pass force=True or set {SCALE_GUARD_ENV}"
        )


def _prefix_state(modulus: int, elements: tuple[int, ...]) -> tuple[int, int]:
    """(sum-set bitmap, difference-set bitmap) of a prefix; rejects non-distinct ones."""
    full = (1 << modulus) - 1
    bits = 1
    diff = 1
    for e in elements:
        if (diff >> e) & 1:
            raise NotDistinctError(f"prefix {elements} is not sumset-distinct mod {modulus}")
        bits |= ((bits << e) | (bits >> (modulus - e))) & full
        r1 = ((diff << e) | (diff >> (modulus - e))) & full
        r2 = ((diff << (modulus - e)) | (diff >> e)) & full
        diff |= r1 | r2
    return bits, diff


def _complete_shard(args) -> list[tuple[int, ...]]:
    """All sumset-distinct completions of one frontier prefix, in lex order."""
    n, modulus, mode, prefix = args
    full = (1 << modulus) - 1
    _, diff = _prefix_state(modulus, prefix)
    half = modulus // 2
    results: list[tuple[int, ...]] = []

    def emit(elements: tuple[int, ...]) -> None:
        if mode == MODE_CANONICAL:
            if elements[-1] > half:
                return  # canonical sets are folded, all elements <= N//2
            rset = ResidueSet(modulus, elements)
            if canonical_form(rset).canonical.elements != elements:
                return
        results.append(elements)

    def rec(elements: tuple[int, ...], diff: int, cands: int, k: int) -> None:
        if k + 1 == n:
            while cands:
                low = cands & -cands
                cands ^= low
                emit(elements + (low.bit_length() - 1,))
            return
        needed = n - k - 1
        while cands:
            low = cands & -cands
            cands ^= low
            a = low.bit_length() - 1
            r1 = ((diff << a) | (diff >> (modulus - a))) & full
            r2 = ((diff << (modulus - a)) | (diff >> a)) & full
            d2 = diff | r1 | r2
            c2 = cands & ~d2
            if c2.bit_count() >= needed:
                rec(elements + (a,), d2, c2, k + 1)

    k = len(prefix)
    if k > n:
        return results
    if k == n:
        emit(prefix)
        return results
    last = prefix[-1]
    above = full >> (last + 1) << (last + 1)
    cands = ~diff & above
    if cands.bit_count() >= n - k:
        rec(prefix, diff, cands, k)
    return results


def _count_shard(args) -> int:
    """Weighted count of folded sets whose smallest element is `first`."""
    n, modulus, first = args
    half = modulus >> 1
    if first > half:
        return 0
    even = modulus % 2 == 0
    full = (1 << modulus) - 1
    diff = 1 | (1 << first) | (1 << (modulus - first))
    weight = 1 if (even and first == half) else 2
    if n == 1:
        return weight
    half_bits = (1 << (half + 1)) - 2  # bits 1..half
    above = full >> (first + 1) << (first + 1)
    cands = half_bits & above & ~diff
    total = 0
    stack = [(diff, cands, 1, weight)]
    last_level = n - 1
    while stack:
        diff, cands, k, weight = stack.pop()
        if k == last_level:
            c = cands.bit_count()
            if c:
                if even and (cands >> half) & 1:
                    total += weight * (2 * c - 1)
                else:
                    total += weight * 2 * c
            continue
        needed = n - k - 1
        while cands:
            low = cands & -cands
            cands ^= low
            a = low.bit_length() - 1
            r1 = ((diff << a) | (diff >> (modulus - a))) & full
            r2 = ((diff << (modulus - a)) | (diff >> a)) & full
            d2 = diff | r1 | r2
            c2 = cands & ~d2
            if c2.bit_count() >= needed:
                stack.append((d2, c2, k + 1, weight * 2))
    return total


def _fast_counter():
    global _FAST_COUNT
    if _FAST_COUNT is False:
        try:
            from ._fastcount import count_shard_fast
        except Exception:  # numba missing or failed to compile
            count_shard_fast = None
        _FAST_COUNT = count_shard_fast
    return _FAST_COUNT


def _count_shard_best(args) -> int:
    """Compiled shard counter when numba is present, pure-Python reference otherwise."""
    fast = _fast_counter()
    if fast is not None:
        return fast(*args)
    return _count_shard(args)


@dataclass(frozen=True)
class EnumerationCheckpoint:
    """Pending work of an interrupted run, resumable to the identical stream."""

    n: int
    modulus: int
    mode: str
    frontier: tuple[tuple[int, ...], ...]
    emitted: int
    version: int = CHECKPOINT_VERSION

    def save(self, path) -> None:
        header = {
            "version": self.version,
            "n": self.n,
            "modulus": self.modulus,
            "mode": self.mode,
        }
        lines = [json.dumps(header, sort_keys=True, separators=(",", ":"))]
        for prefix in self.frontier:
            bits, _ = _prefix_state(self.modulus, prefix)
            record = {"elements": list(prefix), "bitmap": format(bits, "x")}
            lines.append(json.dumps(record, sort_keys=True, separators=(",", ":")))
        body = "".join(line + "\n" for line in lines).encode()
        checksum = hashlib.sha256(body).hexdigest()
        trailer = json.dumps(
            {"emitted": self.emitted, "checksum": checksum},
            sort_keys=True,
            separators=(",", ":"),
        )
        with open(path, "wb") as fh:
            fh.write(body)
            fh.write(trailer.encode() + b"\n")

    @classmethod
    def load(cls, path) -> "EnumerationCheckpoint":
        with open(path, "rb") as fh:
            raw = fh.read()
        lines = raw.splitlines(keepends=True)
        if len(lines) < 2:
            raise CorruptCheckpointError(f"{path}: truncated checkpoint")
        body = b"".join(lines[:-1])
        try:
            trailer = json.loads(lines[-1])
            header = json.loads(lines[0])
        except json.JSONDecodeError as exc:
            raise CorruptCheckpointError(f"{path}: malformed JSON ({exc})") from exc
        if not isinstance(trailer, dict) or "checksum" not in trailer:
            raise CorruptCheckpointError(f"{path}: missing checksum trailer")
        if hashlib.sha256(body).hexdigest() != trailer["checksum"]:
            raise CorruptCheckpointError(f"{path}: checksum mismatch")
        version = header.get("version")
        if version != CHECKPOINT_VERSION:
            raise VersionMismatchError(
                f"{path}: checkpoint version {version}, expected {CHECKPOINT_VERSION}"
            )
        n = header["n"]
        modulus = header["modulus"]
        mode = header["mode"]
        if mode not in _MODES:
            raise CorruptCheckpointError(f"{path}: unknown mode {mode!r}")
        frontier = []
        for line in lines[1:-1]:
            record = json.loads(line)
            prefix = tuple(record["elements"])
            if not prefix or any(not 0 < e < modulus for e in prefix):
                raise CorruptCheckpointError(f"{path}: prefix {prefix} out of range")
            if list(prefix) != sorted(set(prefix)):
                raise CorruptCheckpointError(f"{path}: prefix {prefix} not ascending")
            try:
                bits, _ = _prefix_state(modulus, prefix)
            except NotDistinctError as exc:
                raise CorruptCheckpointError(f"{path}: {exc}") from exc
            if format(bits, "x") != record["bitmap"]:
                raise CorruptCheckpointError(f"{path}: bitmap mismatch for {prefix}")
            frontier.append(prefix)
        return cls(n, modulus, mode, tuple(frontier), trailer["emitted"])


class Enumeration:
    """A resumable enumeration run over first-element shards."""

    def __init__(
        self,
        n: int,
        modulus: int,
        mode: str = MODE_ALL,
        *,
        workers: int = 1,
        force: bool = False,
        _frontier: tuple[tuple[int, ...], ...] | None = None,
        _emitted: int = 0,
    ) -> None:
        modulus = _check_modulus(modulus)
        if mode not in _MODES:
            raise ValueError(f"mode must be one of {_MODES}, got {mode!r}")
        _check_scale(n, modulus, force)
        self.n = n
        self.modulus = modulus
        self.mode = mode
        self.workers = max(1, int(workers))
        if _frontier is None:
            _frontier = tuple((e,) for e in range(1, modulus))
        self._frontier: deque[tuple[int, ...]] = deque(_frontier)
        self.emitted = _emitted

    @classmethod
    def from_checkpoint(cls, path, *, workers: int = 1, force: bool = False) -> "Enumeration":
        state = EnumerationCheckpoint.load(path)
        return cls(
            state.n,
            state.modulus,
            state.mode,
            workers=workers,
            force=force,
            _frontier=state.frontier,
            _emitted=state.emitted,
        )

    def checkpoint(self) -> EnumerationCheckpoint:
        """Snapshot of the pending shards; valid between shard completions."""
        return EnumerationCheckpoint(
            self.n, self.modulus, self.mode, tuple(self._frontier), self.emitted
        )

    def save(self, path) -> None:
        self.checkpoint().save(path)

    @property
    def frontier(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self._frontier)

    def next_shard(self) -> list[ResidueSet] | None:
        """Complete the next pending shard; None when the run is finished."""
        if not self._frontier:
            return None
        prefix = self._frontier[0]
        raw = _complete_shard((self.n, self.modulus, self.mode, prefix))
        self._frontier.popleft()
        self.emitted += len(raw)
        return [ResidueSet(self.modulus, elems) for elems in raw]

    def __iter__(self):
        if self.workers == 1:
            while True:
                shard = self.next_shard()
                if shard is None:
                    return
                yield from shard
        with Pool(self.workers) as pool:
            while self._frontier:
                batch = list(islice(self._frontier, self.workers * 4))
                args = [(self.n, self.modulus, self.mode, p) for p in batch]
                for raw in pool.map(_complete_shard, args):
                    self._frontier.popleft()
                    self.emitted += len(raw)
                    for elems in raw:
                        yield ResidueSet(self.modulus, elems)


def enumerate_all(
    n: int,
    modulus: int,
    mode: str = MODE_ALL,
    *,
    workers: int = 1,
    force: bool = False,
):
    """Every sumset-distinct size-n set mod N, exactly once, in lex order.

    In canonical-only mode, only sets that equal their own canonical form are
    emitted (one representative per sign/dilation orbit).
    """
    yield from Enumeration(n, modulus, mode, workers=workers, force=force)


def count_all(n: int, modulus: int, *, workers: int = 1, force: bool = False) -> int:
    """Number of sumset-distinct size-n sets mod N, without materializing them."""
    modulus = _check_modulus(modulus)
    _check_scale(n, modulus, force)
    shards = [(n, modulus, first) for first in range(1, modulus // 2 + 1)]
    if workers <= 1:
        return sum(_count_shard_best(s) for s in shards)
    with Pool(workers) as pool:
        chunk = max(1, len(shards) // (workers * 8))
        return sum(pool.map(_count_shard_best, shards, chunksize=chunk))
