"""Digit sets, ambient source sets, and exact t-fold representation profiles.

A digit set is a prime base p together with the permitted digits in
[0, p-1].  Source sets are explicit finite truncations of an ambient set of
nonnegative integers (e.g. the squares up to some bound); their ordered
t-fold representation counts r_t(n) are computed exactly and can be ratio-
checked against a power law n^delta.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

import numpy as np

from ._util import is_prime
from .errors import EmptyProfile, InadmissibleDigits, NonPrimeBase

# int64 kernels are only used when every count provably fits.
_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class DigitSet:
    """A prime base p > 2 and the permitted digits, sorted, each in [0, p-1]."""

    p: int
    digits: tuple[int, ...]

    @property
    def r(self) -> int:
        """Number of permitted digits."""
        return len(self.digits)

    @property
    def max_digit(self) -> int:
        return self.digits[-1]


def make_digit_set(p: int, digits: Iterable[int]) -> DigitSet:
    """Validate and normalize a digit set.

    Digits outside [0, p-1] are dropped; the survivors are deduplicated and
    sorted.  Raises NonPrimeBase unless p is a prime > 2, and
    InadmissibleDigits unless 2 <= r <= p-1 afterwards.
    """
    if p <= 2 or not is_prime(p):
        raise NonPrimeBase(f"base must be a prime > 2, got {p}")
    kept = sorted({int(d) for d in digits if 0 <= int(d) <= p - 1})
    if not 2 <= len(kept) <= p - 1:
        raise InadmissibleDigits(
            f"need between 2 and {p - 1} digits in [0, {p - 1}], got {len(kept)}"
        )
    return DigitSet(p=p, digits=tuple(kept))


def squares_digit_set(p: int) -> DigitSet:
    """The square digits below p: {k*k : k >= 0, k*k <= p-1}."""
    if p <= 2 or not is_prime(p):
        raise NonPrimeBase(f"base must be a prime > 2, got {p}")
    digits = []
    k = 0
    while k * k <= p - 1:
        digits.append(k * k)
        k += 1
    return make_digit_set(p, digits)


@dataclass(frozen=True)
class DigitSourceSet:
    """A finite, sorted truncation of an ambient set of nonnegative integers."""

    elements: tuple[int, ...]
    description: str = ""

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def max_element(self) -> int:
        return self.elements[-1] if self.elements else 0


def make_source(elements: Iterable[int], description: str = "") -> DigitSourceSet:
    """Normalize (sort, deduplicate) a source set; rejects negatives."""
    elems = sorted({int(e) for e in elements})
    if elems and elems[0] < 0:
        raise ValueError("source elements must be nonnegative")
    return DigitSourceSet(elements=tuple(elems), description=description)


def squares_source(max_value: int) -> DigitSourceSet:
    """All squares k*k <= max_value."""
    if max_value < 0:
        raise ValueError("max_value must be nonnegative")
    out = []
    k = 0
    while k * k <= max_value:
        out.append(k * k)
        k += 1
    return DigitSourceSet(elements=tuple(out), description=f"squares <= {max_value}")


def digit_source(digit_set: DigitSet) -> DigitSourceSet:
    """The digit set itself, viewed as a source set."""
    return DigitSourceSet(
        elements=digit_set.digits,
        description=f"digits of base {digit_set.p}",
    )


@dataclass(frozen=True)
class RepresentationProfile:
    """Exact ordered t-fold representation counts r_t(n) for 0 <= n <= maxN."""

    t: int
    maxN: int
    counts: tuple[int, ...]

    def total(self) -> int:
        return sum(self.counts)


def representation_counts(
    source: DigitSourceSet, t: int, maxN: int
) -> RepresentationProfile:
    """Count ordered t-tuples from the source summing to each n <= maxN.

    Exact iterated convolution; truncating at maxN after each step is safe
    because elements are nonnegative (partial sums never shrink).
    """
    if t < 2:
        raise ValueError(f"t must be >= 2, got {t}")
    if maxN < 0:
        raise ValueError(f"maxN must be >= 0, got {maxN}")
    elems = [e for e in source.elements if e <= maxN]
    if not elems:
        return RepresentationProfile(t=t, maxN=maxN, counts=(0,) * (maxN + 1))
    if len(elems) ** t < _INT64_SAFE:
        counts = _conv_int64(elems, t, maxN)
    else:
        counts = _conv_bigint(elems, t, maxN)
    return RepresentationProfile(t=t, maxN=maxN, counts=tuple(counts))


def _conv_int64(elems: list[int], t: int, maxN: int) -> list[int]:
    cur = np.zeros(maxN + 1, dtype=np.int64)
    cur[0] = 1
    for _ in range(t):
        nxt = np.zeros(maxN + 1, dtype=np.int64)
        for e in elems:
            nxt[e:] += cur[: maxN + 1 - e]
        cur = nxt
    return cur.tolist()


def _conv_bigint(elems: list[int], t: int, maxN: int) -> list[int]:
    cur = [0] * (maxN + 1)
    cur[0] = 1
    for _ in range(t):
        nxt = [0] * (maxN + 1)
        for n, c in enumerate(cur):
            if c:
                for e in elems:
                    if n + e > maxN:
                        break
                    nxt[n + e] += c
        cur = nxt
    return cur


@dataclass(frozen=True)
class DeltaFitReport:
    """Max of r_t(n)/n^delta over 1 <= n <= maxN, and where it is attained."""

    delta: float
    max_ratio: float
    argmax_n: int

    def to_json(self) -> str:
        return json.dumps(
            {"delta": self.delta, "max_ratio": self.max_ratio, "argmax_n": self.argmax_n}
        )


def delta_fit(profile: RepresentationProfile, delta: float) -> DeltaFitReport:
    """Report the largest ratio r_t(n)/n^delta for n in [1, maxN].

    n = 0 is excluded (0^delta is undefined); ties resolve to the smallest n.
    """
    if delta < 0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    if profile.maxN < 1:
        raise EmptyProfile("profile must cover at least n = 1")
    counts = np.asarray(profile.counts[1:], dtype=np.float64)
    ns = np.arange(1, profile.maxN + 1, dtype=np.float64)
    ratios = counts / ns**delta
    idx = int(np.argmax(ratios))  # argmax returns the first (smallest n) maximum
    return DeltaFitReport(delta=float(delta), max_ratio=float(ratios[idx]), argmax_n=idx + 1)


def write_profile_csv(profile: RepresentationProfile, fh: IO[str]) -> None:
    """Serialize a profile with header ``n,count``."""
    writer = csv.writer(fh)
    writer.writerow(["n", "count"])
    for n, c in enumerate(profile.counts):
        writer.writerow([n, c])


def read_profile_csv(fh: IO[str], t: int) -> RepresentationProfile:
    reader = csv.reader(fh)
    header = next(reader)
    if header != ["n", "count"]:
        raise ValueError(f"expected header n,count, got {header!r}")
    counts: list[int] = []
    for row in reader:
        if not row:
            continue
        n, c = int(row[0]), int(row[1])
        if n != len(counts):
            raise ValueError(f"non-contiguous profile row at n={n}")
        counts.append(c)
    return RepresentationProfile(t=t, maxN=len(counts) - 1, counts=tuple(counts))


def profile_oracle(elements: Sequence[int], t: int, maxN: int) -> list[int]:
    """Independent nested-loop oracle for r_t; exponential in t, test-sized only."""
    elements = sorted(elements)
    counts = [0] * (maxN + 1)

    def rec(depth: int, acc: int) -> None:
        if depth == t:
            if acc <= maxN:
                counts[acc] += 1
            return
        for e in elements:
            if acc + e > maxN:
                break
            rec(depth + 1, acc + e)

    rec(0, 0)
    return counts
