"""Internal numpy kernels for large exact convolutions and paired energies.

Keys are moment vectors packed into a single int64 (m1 * stride + m2); the
caller guarantees the packing cannot overflow.  Masses ride in int64 only
when the caller has proved every intermediate stays below 2^62; otherwise
the dict-based arbitrary-precision path in counting.py is used instead.
Sums of squared masses are always accumulated in Python integers, so
energies are exact at any magnitude.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

# Work-chunk sizes; these shape memory use, never results.
DEFAULT_PAIR_CHUNK = 1 << 23
_BOUNDS_SAMPLE = 1 << 16
_BOUNDS_SEED = 1789


@dataclass
class KeyedCounts:
    """Sparse exact distribution: strictly increasing int64 keys with masses."""

    keys: np.ndarray
    masses: np.ndarray
    s: int

    def __len__(self) -> int:
        return len(self.keys)

    @property
    def total(self) -> int | float:
        if len(self.masses) == 0:
            return 0
        if self.masses.dtype.kind == "f":
            return float(self.masses.sum())
        return int(self.masses.sum(dtype=object))


def from_items(items: list[tuple[int, int]], s: int) -> KeyedCounts:
    items = sorted(items)
    keys = np.fromiter((k for k, _ in items), dtype=np.int64, count=len(items))
    masses = np.fromiter((m for _, m in items), dtype=np.int64, count=len(items))
    return KeyedCounts(keys=keys, masses=masses, s=s)


def _aggregate(keys: np.ndarray, masses: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Group duplicate keys, summing masses; returns sorted unique keys."""
    order = np.argsort(keys, kind="stable")
    ks = keys[order]
    ms = masses[order]
    if len(ks) == 0:
        return ks, ms
    starts = np.flatnonzero(np.r_[True, ks[1:] != ks[:-1]])
    return ks[starts], np.add.reduceat(ms, starts)


def _merge(a_keys, a_masses, b_keys, b_masses):
    return _aggregate(np.concatenate([a_keys, b_keys]), np.concatenate([a_masses, b_masses]))


def convolve(
    a: KeyedCounts,
    b: KeyedCounts,
    pair_chunk: int = DEFAULT_PAIR_CHUNK,
    workers: int = 1,
) -> KeyedCounts:
    """Exact sparse convolution a (+) b over packed keys.

    Chunked over rows of the larger operand; chunk results merge in row
    order, so output is identical for any chunk size or worker count.
    """
    s = a.s + b.s
    if len(a) == 0 or len(b) == 0:
        return KeyedCounts(np.empty(0, np.int64), np.empty(0, np.int64), s)
    if len(a) < len(b):
        a, b = b, a
    rows = max(1, pair_chunk // len(b))

    def run(lo: int) -> tuple[np.ndarray, np.ndarray]:
        ka = a.keys[lo : lo + rows]
        ma = a.masses[lo : lo + rows]
        keys = (ka[:, None] + b.keys[None, :]).ravel()
        masses = (ma[:, None] * b.masses[None, :]).ravel()
        return _aggregate(keys, masses)

    offsets = list(range(0, len(a), rows))
    if workers > 1 and len(offsets) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, offsets))
    else:
        parts = [run(lo) for lo in offsets]
    out_keys = np.empty(0, np.int64)
    out_masses = np.empty(0, np.int64)
    for keys, masses in parts:
        out_keys, out_masses = _merge(out_keys, out_masses, keys, masses)
    return KeyedCounts(keys=out_keys, masses=out_masses, s=s)


def exact_square_sum(masses: np.ndarray) -> int:
    """Sum of squared masses as an exact Python integer.

    Mass values repeat heavily, so squaring the distinct values is far
    cheaper than converting every entry.
    """
    if len(masses) == 0:
        return 0
    vals, cnts = np.unique(masses, return_counts=True)
    return sum(int(v) * int(v) * int(c) for v, c in zip(vals.tolist(), cnts.tolist()))


def energy(kc: KeyedCounts) -> int:
    return exact_square_sum(kc.masses)


def _pair_bounds(a: KeyedCounts, b: KeyedCounts, n_buckets: int) -> list[int]:
    """Deterministic, roughly mass-balanced key-range boundaries for pairing."""
    lo = int(a.keys[0] + b.keys[0])
    hi = int(a.keys[-1] + b.keys[-1]) + 1
    if n_buckets <= 1:
        return [lo, hi]
    rng = np.random.default_rng(_BOUNDS_SEED)
    sa = a.keys[rng.integers(0, len(a), size=_BOUNDS_SAMPLE)]
    sb = b.keys[rng.integers(0, len(b), size=_BOUNDS_SAMPLE)]
    samples = np.sort(sa + sb)
    cuts = samples[np.linspace(0, len(samples) - 1, n_buckets + 1).astype(np.int64)][1:-1]
    bounds = sorted({lo, hi, *(int(c) for c in cuts.tolist())})
    return [v for v in bounds if lo <= v <= hi]


def _bucket_ranges(
    a: KeyedCounts, b: KeyedCounts, lo: int, hi: int, symmetric: bool
) -> tuple[np.ndarray, np.ndarray, int]:
    """Per-row slices of b's keys whose pair sums land in [lo, hi)."""
    starts = np.searchsorted(b.keys, lo - a.keys, side="left")
    stops = np.searchsorted(b.keys, hi - a.keys, side="left")
    if symmetric:
        starts = np.maximum(starts, np.arange(len(a), dtype=starts.dtype))
    lengths = np.maximum(stops - starts, 0)
    return starts, lengths, int(lengths.sum())


def _gather_bucket(a, b, starts, lengths, symmetric):
    rows = np.flatnonzero(lengths)
    lens = lengths[rows]
    total = int(lens.sum())
    offsets = np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(lens) - lens, lens)
    b_idx = np.repeat(starts[rows], lens) + offsets
    keys = np.repeat(a.keys[rows], lens) + b.keys[b_idx]
    masses = np.repeat(a.masses[rows], lens) * b.masses[b_idx]
    if symmetric:
        off_diag = b_idx > np.repeat(rows, lens)
        masses += masses * off_diag  # double the i < j products
    return keys, masses


def paired_energy(
    a: KeyedCounts,
    b: KeyedCounts,
    pair_chunk: int = DEFAULT_PAIR_CHUNK,
    workers: int = 1,
    symmetric: bool | None = None,
    dense_cap: int = 1 << 26,
) -> int:
    """Energy of the convolution a (+) b without materializing it.

    The key space is partitioned into disjoint ranges; every pair sum lands
    in exactly one range, so per-range group-by totals are complete and
    their squared sums add up to the energy.  Exact integer arithmetic
    makes the result identical for any bucket partition or worker count.
    When a and b are the same distribution, only ordered pairs i <= j are
    gathered and off-diagonal products are doubled.

    Dense ranges accumulate through float64 bincount, which is exact here:
    every bin total is bounded by the product of the two total masses, and
    the caller-facing guard keeps that below 2^53.
    """
    if len(a) == 0 or len(b) == 0:
        return 0
    if symmetric is None:
        symmetric = a is b
    # Bin totals stay integral in float64 only below 2^53; the sum of all
    # pair masses (with symmetric doubling) is exactly total(a) * total(b).
    dense_ok = 2 * a.total * b.total < (1 << 53)
    total_pairs = len(a) * len(b)
    bounds = _pair_bounds(a, b, max(1, -(-total_pairs // pair_chunk)))

    # Subdivide ranges whose realized pair count exceeds the chunk target;
    # a range spanning a single key can no longer split and is taken as is.
    tasks: list[tuple[int, int]] = []
    stack = [(bounds[i], bounds[i + 1]) for i in range(len(bounds) - 1)][::-1]
    while stack:
        lo, hi = stack.pop()
        _, _, n = _bucket_ranges(a, b, lo, hi, symmetric)
        if n == 0:
            continue
        if n <= 2 * pair_chunk or hi - lo <= 1:
            tasks.append((lo, hi))
        else:
            mid = (lo + hi) // 2
            stack.append((mid, hi))
            stack.append((lo, mid))

    def run(task: tuple[int, int]) -> int:
        lo, hi = task
        starts, lengths, n = _bucket_ranges(a, b, lo, hi, symmetric)
        if n == 0:
            return 0
        keys, masses = _gather_bucket(a, b, starts, lengths, symmetric)
        span = hi - lo
        if dense_ok and span <= min(4 * n, dense_cap):
            sums = np.bincount(keys - lo, weights=masses.astype(np.float64), minlength=span)
            totals = sums[sums != 0.0].astype(np.int64)
        else:
            _, totals = _aggregate(keys, masses)
        return exact_square_sum(totals)

    if workers > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, tasks))
    else:
        parts = [run(t) for t in tasks]
    return sum(parts)
