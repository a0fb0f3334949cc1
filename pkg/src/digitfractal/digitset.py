"""Digit sets, their substitutions, and the automatic sequences they generate.

A digit set ``(q, A)`` with ``0 in A`` describes two objects at once: the
set of reals in [0, 1] whose base-q expansion uses only digits from ``A``,
and the binary sequence ``f`` with ``f(n) = 1`` iff every base-q digit of
``n`` lies in ``A``.  The sequence is the fixed point, started from ``1``,
of the length-q substitution ``1 -> w, 0 -> 0^q`` where ``w`` has ones
exactly at the positions in ``A``.

Words are kept as packed bit arrays (``numpy.packbits``, big-endian within
each byte) so that prefixes of ``10**8`` symbols stay around 12 MB.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import (
    BaseTooSmall,
    BudgetExceeded,
    DigitOutOfRange,
    DuplicateDigit,
    MissingZero,
)

DEFAULT_BUDGET = 10**8

# Index chunk for oracle generation; a multiple of 8 so packed chunks concatenate.
_CHUNK = 1 << 22


@dataclass(frozen=True)
class DigitSet:
    q: int
    digits: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.digits)

    @property
    def is_full(self) -> bool:
        return self.m == self.q

    def mask(self) -> np.ndarray:
        """Boolean lookup table ``mask[d] == (d in A)`` for ``d < q``."""
        out = np.zeros(self.q, dtype=bool)
        out[list(self.digits)] = True
        return out

    def __str__(self) -> str:
        return f"q={self.q}, A={{{','.join(map(str, self.digits))}}}"


def new_digit_set(q: int, digits: Iterable[int]) -> DigitSet:
    """Validate ``(q, digits)`` and return a :class:`DigitSet` with sorted digits."""
    digits = [int(d) for d in digits]
    if q < 2:
        raise BaseTooSmall(f"base must be at least 2, got {q}")
    bad = [d for d in digits if not 0 <= d <= q - 1]
    if bad:
        raise DigitOutOfRange(f"digits {bad} outside [0, {q - 1}]")
    if len(set(digits)) != len(digits):
        raise DuplicateDigit(f"repeated digits in {digits}")
    if 0 not in digits:
        raise MissingZero(f"digit set {sorted(digits)} must contain 0")
    return DigitSet(q, tuple(sorted(digits)))


def check_budget(size: int, budget: int | None) -> None:
    budget = DEFAULT_BUDGET if budget is None else budget
    if size > budget:
        raise BudgetExceeded(size, budget)


@dataclass(frozen=True)
class Word:
    """A finite binary word stored as packed bits."""

    length: int
    packed: np.ndarray = field(repr=False, compare=False)

    @classmethod
    def from_bits(cls, bits: np.ndarray) -> Word:
        bits = np.asarray(bits, dtype=bool)
        packed = np.packbits(bits)
        packed.setflags(write=False)
        return cls(len(bits), packed)

    @classmethod
    def from_string(cls, text: str) -> Word:
        text = text.strip()
        if set(text) - {"0", "1"}:
            raise ValueError("word must consist of '0' and '1' characters")
        return cls.from_bits(np.frombuffer(text.encode("ascii"), dtype=np.uint8) == ord("1"))

    def bits(self) -> np.ndarray:
        return np.unpackbits(self.packed, count=self.length).astype(bool)

    def ones(self) -> np.ndarray:
        """Indices ``n`` with bit ``n`` set, in increasing order."""
        return np.flatnonzero(self.bits())

    def count_ones(self) -> int:
        # Padding bits past `length` are always zero.
        return int(np.unpackbits(self.packed).sum())

    def startswith(self, other: Word) -> bool:
        if other.length > self.length:
            return False
        return bool(np.array_equal(self.bits()[: other.length], other.bits()))

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, n: int) -> int:
        if not 0 <= n < self.length:
            raise IndexError(n)
        return int(self.packed[n >> 3] >> (7 - (n & 7)) & 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.length == other.length and np.array_equal(self.packed, other.packed)

    def __hash__(self) -> int:
        return hash((self.length, self.packed.tobytes()))

    def __str__(self) -> str:
        return (self.bits().view(np.uint8) + ord("0")).tobytes().decode("ascii")


@dataclass(frozen=True)
class Substitution:
    q: int
    image_of_one: Word
    image_of_zero: Word

    def __str__(self) -> str:
        return f"1 -> {self.image_of_one}, 0 -> {self.image_of_zero}"


@dataclass(frozen=True, eq=False)
class SequencePrefix(Word):
    """The word ``rho^k(1)``, i.e. ``f(0) ... f(q^k - 1)``."""

    level: int = 0


def build_substitution(ds: DigitSet) -> Substitution:
    one = np.zeros(ds.q, dtype=bool)
    one[list(ds.digits)] = True
    return Substitution(ds.q, Word.from_bits(one), Word.from_bits(np.zeros(ds.q, dtype=bool)))


def _prefix(bits: np.ndarray, k: int) -> SequencePrefix:
    packed = np.packbits(bits)
    packed.setflags(write=False)
    return SequencePrefix(len(bits), packed, k)


def iterate_substitution(sub: Substitution, k: int, *, budget: int | None = None) -> SequencePrefix:
    """Return ``rho^k(1)``, a word of length ``q**k``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    check_budget(sub.q**k, budget)
    image = sub.image_of_one.bits()
    if sub.image_of_zero.count_ones():
        raise ValueError("image of 0 must be the all-zero word")
    word = np.ones(1, dtype=bool)
    for _ in range(k):
        # 0 -> 0^q and 1 -> image, so each step is an outer AND.
        word = (word[:, None] & image[None, :]).ravel()
    return _prefix(word, k)


def digit_membership(ds: DigitSet, n: int) -> int:
    """Return ``f(n)``: 1 iff every base-q digit of ``n`` lies in the digit set."""
    if n < 0:
        raise ValueError("n must be a natural number")
    allowed = set(ds.digits)
    while n:
        n, d = divmod(n, ds.q)
        if d not in allowed:
            return 0
    return 1


def membership_prefix(ds: DigitSet, k: int, *, budget: int | None = None) -> SequencePrefix:
    """Build ``f(0) ... f(q^k - 1)`` by testing the digits of every index.

    This does not touch the substitution, which makes it the cross-check for
    :func:`iterate_substitution`.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    size = ds.q**k
    check_budget(size, budget)
    mask = ds.mask()
    chunks = []
    for start in range(0, size, _CHUNK):
        n = np.arange(start, min(start + _CHUNK, size), dtype=np.int64)
        ok = np.ones(len(n), dtype=bool)
        for _ in range(k):
            n, d = np.divmod(n, ds.q)
            ok &= mask[d]
        chunks.append(np.packbits(ok))
    packed = np.concatenate(chunks) if chunks else np.zeros(0, dtype=np.uint8)
    packed.setflags(write=False)
    return SequencePrefix(size, packed, k)


def hausdorff_dimension(ds: DigitSet) -> float:
    """``log_q(m)``, returned as exactly 0.0 for ``m == 1`` and 1.0 for ``m == q``."""
    if ds.m == 1:
        return 0.0
    if ds.m == ds.q:
        return 1.0
    return math.log(ds.m) / math.log(ds.q)
