"""Exact representations of coefficient vectors, sign assignments and the
threshold comparators everything else is built on.

All arithmetic is integer or reduced-rational.  Norms are never
materialized: every comparison against ``rho * ||a||`` is carried out on
squares with explicit sign bookkeeping, so boundary cases (a sign sum
exactly equal to the norm) are decided exactly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

from .errors import DimensionError, InvalidCoefficient, InvalidThreshold, ZeroNorm

# Reduced rational with positive denominator; the stdlib type already
# maintains exactly the invariants we need.
Rational = Fraction

RationalLike = Union[int, Fraction]

# Masks must fit comfortably in one machine word.
MAX_DIMENSION = 63


class Ordering3(enum.IntEnum):
    """Exact three-way comparison outcome."""

    BELOW = -1
    AT = 0
    ABOVE = 1


def _cmp(lhs: int, rhs: int) -> Ordering3:
    if lhs < rhs:
        return Ordering3.BELOW
    if lhs == rhs:
        return Ordering3.AT
    return Ordering3.ABOVE


@dataclass(frozen=True)
class CoeffVec:
    """Canonical nonnegative integer coefficient vector.

    Invariants: entries sorted non-increasing, gcd of the nonzero entries
    is 1 (all-zero is allowed), and ``norm_sq`` equals the sum of squares.
    Probabilistic statements about sign sums are scale invariant, so the
    integer scaling loses nothing.
    """

    entries: tuple[int, ...]
    norm_sq: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        e = self.entries
        if not isinstance(e, tuple):
            raise InvalidCoefficient("entries must be a tuple of integers")
        if len(e) == 0:
            raise InvalidCoefficient("empty coefficient vector")
        if len(e) > MAX_DIMENSION:
            raise DimensionError(f"dimension {len(e)} exceeds cap {MAX_DIMENSION}")
        for x in e:
            if not isinstance(x, int) or isinstance(x, bool):
                raise InvalidCoefficient(f"entry {x!r} is not an integer")
            if x < 0:
                raise InvalidCoefficient(f"negative entry {x}")
        if any(e[i] < e[i + 1] for i in range(len(e) - 1)):
            raise InvalidCoefficient("entries must be sorted non-increasing")
        g = 0
        for x in e:
            g = gcd(g, x)
        if g > 1:
            raise InvalidCoefficient(f"entries share common factor {g}; canonicalize first")
        object.__setattr__(self, "norm_sq", sum(x * x for x in e))

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def total(self) -> int:
        return sum(self.entries)

    def is_zero(self) -> bool:
        return self.norm_sq == 0

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.entries)


@dataclass(frozen=True)
class SignAssignment:
    """One of the 2^n sign vectors, packed as a bitmask.

    Bit ``i`` set means coordinate ``i+1`` carries sign -1.  Equivalently
    the mask encodes the subset J of flipped (1-indexed) positions, so the
    uniform measure on masks is the uniform measure on sign vectors.
    """

    mask: int
    n: int

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_DIMENSION:
            raise DimensionError(f"dimension {self.n} out of range")
        if not 0 <= self.mask < (1 << self.n):
            raise DimensionError(f"mask {self.mask:#x} does not fit dimension {self.n}")

    @classmethod
    def from_indices(cls, indices: Iterable[int], n: int) -> "SignAssignment":
        """Build the sign vector with -1 exactly at the given 1-indexed positions."""
        mask = 0
        for i in indices:
            if not 1 <= i <= n:
                raise DimensionError(f"index {i} out of range 1..{n}")
            mask |= 1 << (i - 1)
        return cls(mask, n)

    @property
    def indices(self) -> tuple[int, ...]:
        """Sorted 1-indexed positions carrying sign -1."""
        return tuple(i + 1 for i in range(self.n) if (self.mask >> i) & 1)

    def signs(self) -> tuple[int, ...]:
        return tuple(-1 if (self.mask >> i) & 1 else 1 for i in range(self.n))

    def complement(self) -> "SignAssignment":
        return SignAssignment(self.mask ^ ((1 << self.n) - 1), self.n)

    def __str__(self) -> str:
        return f"({','.join(str(i) for i in self.indices)})_{self.n}"


@dataclass(frozen=True)
class DyadicProb:
    """Exact probability count / 2^n."""

    count: int
    n: int

    def __post_init__(self) -> None:
        if self.n < 0 or not 0 <= self.count <= (1 << self.n):
            raise InvalidCoefficient(f"bad dyadic probability {self.count}/2^{self.n}")

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.count, 1 << self.n)

    def __str__(self) -> str:
        return str(self.fraction)


def canonicalize(raw: Sequence[RationalLike]) -> CoeffVec:
    """Sort, common-denominator-scale and gcd-reduce a nonnegative vector.

    Accepts integers and exact rationals; floats are rejected because they
    are not exact.  The all-zero vector is allowed; callers that need a
    positive norm must check for it.
    """
    if len(raw) == 0:
        raise InvalidCoefficient("empty coefficient vector")
    if all(isinstance(x, int) and not isinstance(x, bool) for x in raw):
        if any(x < 0 for x in raw):
            raise InvalidCoefficient("negative entry")
        ints = sorted(raw, reverse=True)
        g = 0
        for x in ints:
            g = gcd(g, x)
        if g > 1:
            ints = [x // g for x in ints]
        return CoeffVec(tuple(ints))
    fracs = []
    for x in raw:
        if isinstance(x, float):
            raise InvalidCoefficient(f"float entry {x!r}; use int or Fraction")
        if isinstance(x, int) and not isinstance(x, bool):
            x = Fraction(x)
        if not isinstance(x, Fraction):
            raise InvalidCoefficient(f"entry {x!r} is not an exact number")
        if x < 0:
            raise InvalidCoefficient(f"negative entry {x}")
        fracs.append(x)
    scale = 1
    for x in fracs:
        scale = scale * x.denominator // gcd(scale, x.denominator)
    ints = sorted((int(x * scale) for x in fracs), reverse=True)
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return CoeffVec(tuple(ints))


def parse_vector(text: str) -> CoeffVec:
    """Parse the comma-separated vector format, e.g. "2,2,1,1,1" or "1/2,1/2"."""
    parts = [p.strip() for p in text.split(",")]
    if parts == [""]:
        raise InvalidCoefficient("empty vector string")
    entries = []
    for p in parts:
        try:
            entries.append(Fraction(p))
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidCoefficient(f"cannot parse entry {p!r}") from exc
    return canonicalize(entries)


def sign_sum(a: CoeffVec, s: SignAssignment) -> int:
    """The exact signed sum a_1 s_1 + ... + a_n s_n."""
    if a.n != s.n:
        raise DimensionError(f"vector has n={a.n}, sign assignment has n={s.n}")
    neg = 0
    m = s.mask
    while m:
        low = m & -m
        neg += a.entries[low.bit_length() - 1]
        m ^= low
    return a.total - 2 * neg


def cmp_abs_vs_norm(a: CoeffVec, s: SignAssignment) -> Ordering3:
    """Compare |a.s| with ||a|| exactly (via squares)."""
    d = sign_sum(a, s)
    return _cmp(d * d, a.norm_sq)


def cmp_sum_vs_scaled_norm(a: CoeffVec, s: SignAssignment, rho: RationalLike) -> Ordering3:
    """Compare the signed sum a.s with rho * ||a|| exactly.

    rho must be a nonnegative exact rational and the vector must have a
    positive norm.  The comparison squares both sides after the sign of
    a.s has been dealt with, so no irrational value is ever formed.
    """
    rho = Fraction(rho)
    if rho < 0:
        raise InvalidThreshold(f"negative threshold multiplier {rho}")
    if a.norm_sq == 0:
        raise ZeroNorm("zero vector has no direction")
    d = sign_sum(a, s)
    if d < 0:
        return Ordering3.BELOW
    num, den = rho.numerator, rho.denominator
    return _cmp(d * d * den * den, num * num * a.norm_sq)
