"""Digit-level carry analysis for sum congruences over restricted digits.

A congruence sum(x_i) = sum(y_i) mod p^d between t-tuples of digit strings
factors through the base-p digit positions: at each position the tuple of
digit differences must absorb the incoming carry and emit p times the
outgoing one, with carries confined to [1-t, t-1].  The carry-chain dynamic
program counts solutions position by position and must agree exactly with
direct construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from ._util import digit_lookup, digits_lsf
from .counting import WeightAssignment
from .digitset import DigitSet
from .ellipsephic import EllipsephicSet, enumerate_up_to
from .errors import InvalidRange, InvariantViolation


@dataclass(frozen=True)
class DigitSumTupleSet:
    """All ordered t-tuples over the permitted digits with a given sum."""

    t: int
    h: int
    tuples: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.tuples)


def tuples_with_digit_sum(digit_set: DigitSet, t: int, h: int) -> DigitSumTupleSet:
    """Enumerate the ordered t-tuples of permitted digits summing to h."""
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    digits = digit_set.digits
    found: list[tuple[int, ...]] = []
    if 0 <= h <= t * digits[-1]:
        lo, hi = digits[0], digits[-1]

        def rec(prefix: tuple[int, ...], remaining: int, target: int) -> None:
            if remaining == 0:
                if target == 0:
                    found.append(prefix)
                return
            for d in digits:
                rest = target - d
                if rest < (remaining - 1) * lo or rest > (remaining - 1) * hi:
                    continue
                rec(prefix + (d,), remaining - 1, rest)

        rec((), t, h)
    return DigitSumTupleSet(t=t, h=h, tuples=tuple(found))


def digit_sum_counts(digit_set: DigitSet, t: int) -> list[int]:
    """|A_t(h)| for h = 0 .. t*max_digit, by iterated exact convolution."""
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    top = digit_set.max_digit
    cur = [0] * (t * top + 1)
    cur[0] = 1
    width = 0
    for _ in range(t):
        nxt = [0] * (t * top + 1)
        for n in range(width + 1):
            c = cur[n]
            if c:
                for d in digit_set.digits:
                    nxt[n + d] += c
        width += top
        cur = nxt
    return cur


def max_tuple_count(digit_set: DigitSet, t: int) -> tuple[int, int]:
    """(max over h of |A_t(h)|, smallest h attaining it)."""
    counts = digit_sum_counts(digit_set, t)
    best = max(counts)
    return best, counts.index(best)


def paired_difference_counts(digit_set: DigitSet, t: int) -> dict[int, int]:
    """Counts of ordered pairs of t-tuples whose digit sums differ by h."""
    counts = digit_sum_counts(digit_set, t)
    top = len(counts) - 1
    out: dict[int, int] = {}
    for h in range(-top, top + 1):
        total = sum(
            counts[m] * counts[m - h]
            for m in range(max(0, h), min(top, top + h) + 1)
        )
        if total:
            out[h] = total
    return out


@dataclass(frozen=True)
class CarryVector:
    """Carries between digit positions c..d-1; each lies in [1-t, t-1]."""

    t: int
    c: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        for v in self.values:
            if not 1 - self.t <= v <= self.t - 1:
                raise ValueError(f"carry {v} outside [{1 - self.t}, {self.t - 1}]")


def realized_carry_chain(
    p: int, t: int, c: int, d: int, xs: tuple[int, ...], ys: tuple[int, ...]
) -> CarryVector:
    """Recover the carries of a solution pair; raises if the chain breaks.

    For tuples with sum(xs) = sum(ys) mod p^d and matching digits below
    position c, the per-position digit-sum differences plus the incoming
    carry must be an exact multiple of p at positions c..d-1.
    """
    carries = []
    carry = 0
    for r in range(c, d):
        scale = p**r
        diff = sum((x // scale) % p for x in xs) - sum((y // scale) % p for y in ys)
        total = diff + carry
        if total % p != 0:
            raise InvariantViolation(f"carry chain breaks at position {r}")
        carry = total // p
        carries.append(carry)
    return CarryVector(t=t, c=c, values=tuple(carries))


def string_universe(digit_set: DigitSet, length: int) -> list[int]:
    """Values of all digit strings of the given length (leading zeros allowed)."""
    values = [0]
    scale = 1
    for _ in range(length):
        values = [v + d * scale for v in values for d in digit_set.digits]
        scale *= digit_set.p
    return sorted(values)


def _admissible_value(digit_set: DigitSet, value: int, length: int) -> bool:
    """Is value expressible as a length-long admissible string (with padding)?"""
    if length == 0:
        return value == 0
    allowed = digit_lookup(digit_set.digits)
    for _ in range(length):
        value, dgt = divmod(value, digit_set.p)
        if dgt not in allowed:
            return False
    return value == 0


def carry_dp_count(
    digit_set: DigitSet,
    t: int,
    c: int,
    d: int,
    z: tuple[int, ...],
    D: int,
) -> int:
    """Count pairs of t-tuples of length-D digit strings with x = y = z mod p^c
    and sum(x_i) = sum(y_i) mod p^d, by the carry-chain dynamic program.

    The universe is digit strings of length D (value 0 and leading zeros
    included).  Positions below c are pinned to z's digits; positions c..d-1
    run through the carry DP; positions at d and above are free and
    contribute r^(2t(D-d)) completions per solution.
    """
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    if not 0 <= c <= d <= D:
        raise InvalidRange(f"need 0 <= c <= d <= D, got c={c} d={d} D={D}")
    if len(z) != t:
        raise ValueError(f"z must have {t} entries, got {len(z)}")
    p = digit_set.p
    mod_c = p**c
    for zi in z:
        if not 0 <= zi < mod_c:
            raise ValueError(f"z entries must lie in [0, p^c) = [0, {mod_c})")
    if any(not _admissible_value(digit_set, zi, c) for zi in z):
        return 0

    pair_counts = paired_difference_counts(digit_set, t)
    carries = range(1 - t, t)
    state = {0: 1}
    for _ in range(c, d):
        nxt: dict[int, int] = {}
        for lam_prev, ways in state.items():
            for lam in carries:
                trans = pair_counts.get(lam * p - lam_prev, 0)
                if trans:
                    nxt[lam] = nxt.get(lam, 0) + ways * trans
        state = nxt
    total = sum(state.values())
    return total * digit_set.r ** (2 * t * (D - d))


def direct_congruence_count(
    digit_set: DigitSet,
    t: int,
    c: int,
    d: int,
    z: tuple[int, ...],
    X: int,
    include_zero: bool = False,
) -> int:
    """Count pairs of t-tuples with x = y = z mod p^c and equal sums mod p^d.

    Variables range over E(X) by default; with include_zero=True (X must be
    an exact power p^D) they range over all length-D digit strings, the
    same universe as the carry DP.
    """
    dist = _sum_distribution(digit_set, t, c, d, z, X, None, include_zero)
    return sum(m * m for m in dist.values())


def _variable_universe(
    digit_set: DigitSet, X: int, include_zero: bool
) -> list[int]:
    if not include_zero:
        return enumerate_up_to(EllipsephicSet(digit_set), X)
    length = 0
    v = 1
    while v < X:
        v *= digit_set.p
        length += 1
    if v != X:
        raise ValueError(f"include_zero universe needs X = p^D, got X={X}")
    return string_universe(digit_set, length)


def _sum_distribution(
    digit_set: DigitSet,
    t: int,
    c: int,
    d: int,
    z: tuple[int, ...],
    X: int,
    weights: WeightAssignment | None,
    include_zero: bool,
) -> dict[int, int | float]:
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    if c > d:
        raise InvalidRange(f"need c <= d, got c={c} d={d}")
    if len(z) != t:
        raise ValueError(f"z must have {t} entries, got {len(z)}")
    p = digit_set.p
    mod_c, mod_d = p**c, p**d
    universe = _variable_universe(digit_set, X, include_zero)
    weighted = weights is not None and not weights.is_zero_one()
    coords = []
    for zi in z:
        if not 0 <= zi < mod_c:
            raise ValueError(f"z entries must lie in [0, p^c) = [0, {mod_c})")
        dist: dict[int, int | float] = {}
        for x in universe:
            if x % mod_c != zi:
                continue
            w = 1 if weights is None else weights.weight(x)
            if w == 0:
                continue
            if not weighted:
                w = 1
            key = x % mod_d
            dist[key] = dist.get(key, 0) + w
        coords.append(dist)
    total: dict[int, int | float] = {0: 1.0 if weighted else 1}
    for dist in coords:
        items = sorted(dist.items()) if weighted else list(dist.items())
        acc = sorted(total.items()) if weighted else list(total.items())
        nxt: dict[int, int | float] = {}
        for sigma, m in acc:
            for key, w in items:
                ks = (sigma + key) % mod_d
                nxt[ks] = nxt.get(ks, 0) + m * w
        total = nxt
    return total


@dataclass(frozen=True)
class DiagonalRatioReport:
    """Congruence count versus its fully-congruent diagonal core.

    lhs counts pairs with equal sums mod p^d; rhs_core counts the subset
    whose variables agree coordinatewise mod p^d.  The subset inequality
    lhs >= rhs_core is exact; the ratio and the per-digit bound factor are
    reported for inspection, never asserted.
    """

    p: int
    digits: tuple[int, ...]
    t: int
    c: int
    d: int
    z: tuple[int, ...]
    X: int
    lhs: int | float
    rhs_core: int | float
    ratio: float | None
    bound_factor: int

    def to_json(self) -> str:
        return json.dumps(
            {
                "p": self.p,
                "digits": list(self.digits),
                "t": self.t,
                "c": self.c,
                "d": self.d,
                "z": list(self.z),
                "X": self.X,
                "lhs": str(self.lhs),
                "rhs_core": str(self.rhs_core),
                "ratio": self.ratio,
                "bound_factor": self.bound_factor,
            }
        )


def diagonal_ratio_report(
    digit_set: DigitSet,
    t: int,
    c: int,
    d: int,
    z: tuple[int, ...],
    X: int,
    weights: WeightAssignment | None = None,
    include_zero: bool = False,
) -> DiagonalRatioReport:
    """Compare the congruence count against its coordinatewise-diagonal core."""
    dist = _sum_distribution(digit_set, t, c, d, z, X, weights, include_zero)
    weighted = weights is not None and not weights.is_zero_one()
    if weighted:
        lhs: int | float = sum(dist[k] ** 2 for k in sorted(dist))
    else:
        lhs = sum(m * m for m in dist.values())

    p = digit_set.p
    mod_c, mod_d = p**c, p**d
    universe = _variable_universe(digit_set, X, include_zero)
    rhs_core: int | float = 1.0 if weighted else 1
    for zi in z:
        buckets: dict[int, int | float] = {}
        for x in universe:
            if x % mod_c != zi:
                continue
            w = 1 if weights is None else weights.weight(x)
            if w == 0:
                continue
            if not weighted:
                w = 1
            key = x % mod_d
            buckets[key] = buckets.get(key, 0) + w
        keys = sorted(buckets) if weighted else list(buckets)
        rhs_core *= sum(buckets[k] ** 2 for k in keys)

    if weighted:
        if lhs < rhs_core - 1e-9 * max(1.0, abs(rhs_core)):
            raise InvariantViolation("diagonal core exceeded the full count")
    elif lhs < rhs_core:
        raise InvariantViolation("diagonal core exceeded the full count")
    ratio = (lhs / rhs_core) if rhs_core else None
    return DiagonalRatioReport(
        p=p,
        digits=digit_set.digits,
        t=t,
        c=c,
        d=d,
        z=tuple(z),
        X=X,
        lhs=lhs,
        rhs_core=rhs_core,
        ratio=ratio,
        bound_factor=max_tuple_count(digit_set, t)[0] ** (d - c),
    )
