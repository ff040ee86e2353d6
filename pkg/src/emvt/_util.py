"""Small shared helpers: primality, base-p digit manipulation."""

from __future__ import annotations

from functools import lru_cache


def is_prime(n: int) -> bool:
    """Trial division; bases here are desk-scale so nothing fancier is needed."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def digits_lsf(n: int, p: int) -> list[int]:
    """Base-p digits of n >= 0, least significant first; [0] for n = 0."""
    if n == 0:
        return [0]
    out = []
    while n:
        n, d = divmod(n, p)
        out.append(d)
    return out


def from_digits_lsf(digits: list[int] | tuple[int, ...], p: int) -> int:
    value = 0
    for d in reversed(digits):
        value = value * p + d
    return value


@lru_cache(maxsize=None)
def digit_lookup(digits: tuple[int, ...]) -> frozenset[int]:
    return frozenset(digits)
