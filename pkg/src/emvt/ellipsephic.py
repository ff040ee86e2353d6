"""Membership, enumeration, and residue-class decomposition of digit-restricted sets.

The set E carried by a DigitSet consists of the positive integers whose
base-p expansion uses only permitted digits.  Zero is never a member, even
when 0 is a permitted digit.  Enumeration is digit-recursive (cost is
proportional to the output, never to the range scanned), and counting is a
digit walk that never materializes the list.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from ._util import digit_lookup, digits_lsf
from .digitset import DigitSet, make_digit_set, squares_digit_set


@dataclass(frozen=True)
class EllipsephicSet:
    """The digit-restricted set E attached to a digit set."""

    digit_set: DigitSet

    @property
    def p(self) -> int:
        return self.digit_set.p

    @property
    def digits(self) -> tuple[int, ...]:
        return self.digit_set.digits

    @property
    def r(self) -> int:
        return self.digit_set.r

    @classmethod
    def from_digits(cls, p: int, digits) -> "EllipsephicSet":
        return cls(make_digit_set(p, digits))

    @classmethod
    def squares(cls, p: int) -> "EllipsephicSet":
        return cls(squares_digit_set(p))


@dataclass(frozen=True)
class DigitExpansion:
    """Base-p digits of a value, least significant first."""

    digits: tuple[int, ...]
    base: int

    @property
    def value(self) -> int:
        v = 0
        for d in reversed(self.digits):
            v = v * self.base + d
        return v

    def __str__(self) -> str:
        # Most significant digit first, explicit base suffix, e.g. 11_3.
        # Bases above 10 can have multi-decimal digits; separate those by dots.
        msf = list(reversed(self.digits))
        if any(d > 9 for d in msf):
            body = ".".join(str(d) for d in msf)
        else:
            body = "".join(str(d) for d in msf)
        return f"{body}_{self.base}"


def expansion(n: int, p: int) -> DigitExpansion:
    if n < 0:
        raise ValueError("expansion is defined for nonnegative integers")
    return DigitExpansion(digits=tuple(digits_lsf(n, p)), base=p)


def contains(es: EllipsephicSet, n: int) -> bool:
    """Membership test: n >= 1 and every base-p digit permitted."""
    if n < 1:
        return False
    allowed = digit_lookup(es.digits)
    p = es.p
    while n:
        n, d = divmod(n, p)
        if d not in allowed:
            return False
    return True


def iter_up_to(es: EllipsephicSet, X: int) -> Iterator[int]:
    """Yield the members of E in [1, X] in ascending order.

    Digit-recursive generation: shorter expansions first, then a tight walk
    along the digits of X for full-length values.
    """
    if X < 1:
        raise ValueError(f"X must be >= 1, got {X}")
    p = es.p
    digs = es.digits
    nonzero = tuple(d for d in digs if d != 0)
    xd = digits_lsf(X, p)[::-1]  # most significant first
    L = len(xd)

    def free(prefix: int, k: int) -> Iterator[int]:
        # All k free digit positions appended to prefix, ascending.
        if k == 0:
            yield prefix
            return
        for d in digs:
            yield from free(prefix * p + d, k - 1)

    # Every admissible string shorter than X's expansion is below X.
    for length in range(1, L):
        for lead in nonzero:
            yield from free(lead, length - 1)

    def tight(prefix: int, i: int) -> Iterator[int]:
        if i == L:
            yield prefix
            return
        allowed = nonzero if i == 0 else digs
        for d in allowed:
            if d < xd[i]:
                yield from free(prefix * p + d, L - 1 - i)
            elif d == xd[i]:
                yield from tight(prefix * p + d, i + 1)

    yield from tight(0, 0)


def enumerate_up_to(es: EllipsephicSet, X: int) -> list[int]:
    """The members of E in [1, X], ascending."""
    return list(iter_up_to(es, X))


def count_up_to(es: EllipsephicSet, X: int) -> int:
    """|E intersected with [1, X]| by a digit walk; agrees with enumeration."""
    if X < 1:
        raise ValueError(f"X must be >= 1, got {X}")
    p = es.p
    digs = es.digits
    r = len(digs)
    n_lead = sum(1 for d in digs if d != 0)
    xd = digits_lsf(X, p)[::-1]
    L = len(xd)
    total = sum(n_lead * r ** (length - 1) for length in range(1, L))
    for i in range(L):
        allowed = [d for d in digs if d != 0] if i == 0 else digs
        total += sum(1 for d in allowed if d < xd[i]) * r ** (L - 1 - i)
        if xd[i] not in allowed:
            break
    else:
        total += 1  # X itself is admissible
    return total


def class_members(es: EllipsephicSet, xi: int, a: int, X: int) -> list[int]:
    """Members of E(X) congruent to xi mod p^a, ascending.

    Empty when the low a digits of xi include a forbidden digit; any xi in
    [0, p^a) is accepted.
    """
    if a < 1:
        raise ValueError(f"a must be >= 1, got {a}")
    mod = es.p**a
    if not 0 <= xi < mod:
        raise ValueError(f"xi must lie in [0, {mod}), got {xi}")
    return [x for x in iter_up_to(es, X) if x % mod == xi]
