"""Exact solution counting for the quadratic two-equation power-sum system.

Two s-tuples solve the system (equal first and second power sums) exactly
when their moment vectors (sum, sum of squares) coincide, so every count
here is an energy: the sum of squared masses of a sparse moment-vector
distribution.  Unweighted counts are exact integers end to end; weighted
counts use double precision with a fixed reduction order and a documented
1e-9 relative tolerance.

Large unweighted computations ride on int64 numpy kernels only when bounds
prove no intermediate can overflow; everything else uses Python's
arbitrary-precision integers.
"""

from __future__ import annotations

import heapq
import itertools
import json
import struct
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import IO, Iterable, Mapping

from . import _engine
from .ellipsephic import EllipsephicSet, enumerate_up_to
from .errors import MemoryBudgetExceeded, OracleTooLarge

# A moment vector is the pair (sum of values, sum of squared values).
MomentVector = tuple[int, int]

DEFAULT_MEMORY_BUDGET = 4 << 30  # bytes
DEFAULT_ORACLE_CAP = 10**9  # tuple pairs: Y^(2s)

_DICT_ENTRY_BYTES = 200
_ARRAY_ENTRY_BYTES = 16
_INT64_SAFE = 1 << 62


def moment_of(values: Iterable[int]) -> MomentVector:
    m1 = 0
    m2 = 0
    for v in values:
        m1 += v
        m2 += v * v
    return (m1, m2)


@dataclass(frozen=True)
class WeightAssignment:
    """Per-element weights in [0, 1]; unlisted elements get the default."""

    values: Mapping[int, float]
    default: float = 0.0

    def __post_init__(self) -> None:
        bad = [x for x, w in self.values.items() if not 0.0 <= w <= 1.0]
        if bad or not 0.0 <= self.default <= 1.0:
            raise ValueError("weights must lie in [0, 1]")

    def weight(self, x: int) -> float:
        return self.values.get(x, self.default)

    def is_zero_one(self) -> bool:
        """True when every weight is exactly 0 or 1 (counts stay integral)."""
        return self.default in (0.0, 1.0) and all(
            w in (0.0, 1.0) for w in self.values.values()
        )

    @classmethod
    def from_members(cls, members: Iterable[int]) -> "WeightAssignment":
        return cls(values={int(x): 1.0 for x in members}, default=0.0)


@dataclass
class MomentDistribution:
    """Sparse map from moment vectors to exact integer or real masses."""

    s: int
    entries: dict[MomentVector, int | float]
    weighted: bool = False

    def support_size(self) -> int:
        return len(self.entries)

    def total_mass(self) -> int | float:
        if self.weighted:
            return sum(self.entries[k] for k in sorted(self.entries))
        return sum(self.entries.values())


def _supported_members(
    es: EllipsephicSet, X: int, weights: WeightAssignment | None
) -> tuple[list[int], list[int] | list[float], bool]:
    """Members with positive weight, their masses, and integrality flag."""
    members = enumerate_up_to(es, X)
    if weights is None:
        return members, [1] * len(members), True
    if weights.is_zero_one():
        kept = [x for x in members if weights.weight(x) == 1.0]
        return kept, [1] * len(kept), True
    kept, masses = [], []
    for x in members:
        w = weights.weight(x)
        if w > 0.0:
            kept.append(x)
            masses.append(w)
    return kept, masses, False


def base_distribution(
    es: EllipsephicSet, X: int, weights: WeightAssignment | None = None
) -> MomentDistribution:
    """The one-fold distribution: (x, x^2) -> weight for each member of E(X)."""
    members, masses, integral = _supported_members(es, X, weights)
    entries: dict[MomentVector, int | float] = {
        (x, x * x): m for x, m in zip(members, masses)
    }
    return MomentDistribution(s=1, entries=entries, weighted=not integral)


def convolve(
    d1: MomentDistribution,
    d2: MomentDistribution,
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
) -> MomentDistribution:
    """Exact sparse convolution; masses multiply, moment vectors add."""
    weighted = d1.weighted or d2.weighted
    s = d1.s + d2.s
    if not d1.entries or not d2.entries:
        return MomentDistribution(s=s, entries={}, weighted=weighted)
    predicted = min(len(d1.entries) * len(d2.entries), _grid_bound(d1, d2))
    if predicted * _DICT_ENTRY_BYTES > memory_budget:
        raise MemoryBudgetExceeded(
            f"convolution support may reach {predicted} entries; "
            "use vinogradov_count's meet-in-the-middle strategy instead"
        )
    items1 = sorted(d1.entries.items()) if weighted else list(d1.entries.items())
    items2 = sorted(d2.entries.items()) if weighted else list(d2.entries.items())
    out: dict[MomentVector, int | float] = {}
    for (a1, a2), m1 in items1:
        for (b1, b2), m2 in items2:
            key = (a1 + b1, a2 + b2)
            out[key] = out.get(key, 0) + m1 * m2
    return MomentDistribution(s=s, entries=out, weighted=weighted)


def _grid_bound(d1: MomentDistribution, d2: MomentDistribution) -> int:
    spans = []
    for i in (0, 1):
        span = 1
        for d in (d1, d2):
            vals = [k[i] for k in d.entries]
            span += max(vals) - min(vals)
        spans.append(span)
    return spans[0] * spans[1]


def energy(d: MomentDistribution) -> int | float:
    """Sum of squared masses: the exact solution count of the system."""
    if d.weighted:
        return sum(d.entries[k] ** 2 for k in sorted(d.entries))
    return sum(m * m for m in d.entries.values())


# ---------------------------------------------------------------------------
# Vinogradov counts
# ---------------------------------------------------------------------------


def _predict_support(y: int, k: int, xmax: int) -> int:
    """Upper bound on the k-fold moment support over y values up to xmax."""
    grid = (k * xmax + 1) * (k * xmax * xmax + 1)
    return min(comb(y + k - 1, k), grid)


def _int64_safe(members: list[int], s: int) -> bool:
    if not members:
        return True
    xmax = members[-1]
    stride = s * xmax * xmax + 1
    max_key = s * xmax * stride + s * xmax * xmax
    return max_key < _INT64_SAFE and len(members) ** s < _INT64_SAFE // 2


def _build_keyed(members: list[int], stride: int) -> _engine.KeyedCounts:
    return _engine.from_items([(x * stride + x * x, 1) for x in members], s=1)


def _fold_keyed(
    base: _engine.KeyedCounts, k: int, pair_chunk: int, workers: int
) -> _engine.KeyedCounts:
    if k == 0:
        return _engine.from_items([(0, 1)], s=0)
    cur = base
    for _ in range(k - 1):
        cur = _engine.convolve(cur, base, pair_chunk=pair_chunk, workers=workers)
    return cur


def _dict_base(members: list[int], masses) -> dict[MomentVector, int | float]:
    return {(x, x * x): m for x, m in zip(members, masses)}


def _dict_fold(
    base: dict, k: int, weighted: bool, memory_budget: int
) -> dict[MomentVector, int | float]:
    if k == 0:
        return {(0, 0): 1.0 if weighted else 1}
    cur = MomentDistribution(s=1, entries=base, weighted=weighted)
    b = MomentDistribution(s=1, entries=base, weighted=weighted)
    for _ in range(k - 1):
        cur = convolve(cur, b, memory_budget=memory_budget)
    return cur.entries


def _dict_paired_energy(da: dict, db: dict, weighted: bool) -> int | float:
    """Energy of the convolution of two dicts, streamed without building it.

    Each sorted half yields per-anchor streams that stay sorted under
    componentwise shifts, so a heap merge visits pair sums in key order and
    group totals can be squared on the fly.
    """
    if not da or not db:
        return 0.0 if weighted else 0
    items_b = sorted(db.items())

    def shifted(key_a, mass_a):
        (a1, a2) = key_a
        for (b1, b2), mb in items_b:
            yield ((a1 + b1, a2 + b2), mass_a * mb)

    streams = [shifted(k, m) for k, m in sorted(da.items())]
    acc = 0.0 if weighted else 0
    run_key = None
    run_mass = 0.0 if weighted else 0
    for key, mass in heapq.merge(*streams):
        if key == run_key:
            run_mass += mass
        else:
            acc += run_mass * run_mass
            run_key, run_mass = key, mass
    acc += run_mass * run_mass
    return acc


def vinogradov_count(
    es: EllipsephicSet,
    X: int,
    s: int,
    weights: WeightAssignment | None = None,
    strategy: str = "auto",
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
    workers: int = 1,
    pair_chunk: int | None = None,
) -> int | float:
    """Count solution pairs of s-tuples from E(X) with equal moment vectors.

    Unit weights give the unweighted count; real weights in [0, 1] give the
    weighted count.  ``strategy`` is "auto", "full" (materialize the s-fold
    distribution) or "mitm" (pair two half-fold distributions on matched
    keys without materializing the s-fold map).  All strategies return
    identical integers for unweighted input.
    """
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    if strategy not in ("auto", "full", "mitm"):
        raise ValueError(f"unknown strategy {strategy!r}")
    members, masses, integral = _supported_members(es, X, weights)
    if not members:
        return 0 if integral else 0.0
    if pair_chunk is None:
        # Each in-flight chunk costs ~64 bytes per pair across its temporaries.
        pair_chunk = max(
            1024, min(_engine.DEFAULT_PAIR_CHUNK, memory_budget // (512 * max(1, workers)))
        )

    y = len(members)
    xmax = members[-1]
    use_arrays = integral and _int64_safe(members, s)
    entry_bytes = _ARRAY_ENTRY_BYTES if use_arrays else _DICT_ENTRY_BYTES
    full_bytes = _predict_support(y, s, xmax) * entry_bytes * 3
    half_bytes = _predict_support(y, (s + 1) // 2, xmax) * entry_bytes * 4

    if strategy == "auto":
        if full_bytes <= memory_budget:
            strategy = "full"
        elif half_bytes <= memory_budget:
            strategy = "mitm"
        else:
            raise MemoryBudgetExceeded(
                f"neither strategy fits in {memory_budget} bytes "
                f"(full needs ~{full_bytes}, halves ~{half_bytes})"
            )
    elif strategy == "full" and full_bytes > memory_budget:
        raise MemoryBudgetExceeded(
            f"full convolution needs ~{full_bytes} bytes > budget {memory_budget}"
        )
    elif strategy == "mitm" and half_bytes > memory_budget:
        raise MemoryBudgetExceeded(
            f"half distributions need ~{half_bytes} bytes > budget {memory_budget}"
        )

    if use_arrays:
        stride = s * xmax * xmax + 1
        base = _build_keyed(members, stride)
        if strategy == "full":
            folded = _fold_keyed(base, s, pair_chunk, workers)
            return _engine.energy(folded)
        hi = _fold_keyed(base, (s + 1) // 2, pair_chunk, workers)
        lo = hi if s % 2 == 0 else _fold_keyed(base, s // 2, pair_chunk, workers)
        return _engine.paired_energy(hi, lo, pair_chunk=pair_chunk, workers=workers)

    base = _dict_base(members, masses)
    weighted = not integral
    if strategy == "full":
        folded = _dict_fold(base, s, weighted, memory_budget)
        return energy(MomentDistribution(s=s, entries=folded, weighted=weighted))
    hi = _dict_fold(base, (s + 1) // 2, weighted, memory_budget)
    lo = hi if s % 2 == 0 else _dict_fold(base, s // 2, weighted, memory_budget)
    return _dict_paired_energy(hi, lo, weighted)


def brute_force_count(
    es: EllipsephicSet, X: int, s: int, oracle_cap: int = DEFAULT_ORACLE_CAP
) -> int:
    """Independent oracle: enumerate all s-tuples, group by moment vector.

    Shares no code with the convolution engine.  Refuses configurations
    whose implied tuple-pair count Y^(2s) exceeds the cap.
    """
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    members = enumerate_up_to(es, X)
    y = len(members)
    if y ** (2 * s) > oracle_cap:
        raise OracleTooLarge(
            f"Y^(2s) = {y}^{2 * s} exceeds the oracle cap {oracle_cap}"
        )
    groups: Counter[MomentVector] = Counter()
    for tup in itertools.product(members, repeat=s):
        m1 = 0
        m2 = 0
        for v in tup:
            m1 += v
            m2 += v * v
        groups[(m1, m2)] += 1
    return sum(c * c for c in groups.values())


# ---------------------------------------------------------------------------
# Residue-class restrictions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassNorm:
    """Squared weight mass of the members congruent to xi mod p^a."""

    a: int
    xi: int
    value2: int | float


def _class_members_masses(
    es: EllipsephicSet, X: int, xi: int, a: int, weights: WeightAssignment | None
) -> tuple[list[int], list[int] | list[float], bool]:
    members, masses, integral = _supported_members(es, X, weights)
    if a == 0:
        return members, masses, integral
    mod = es.p**a
    kept_m, kept_w = [], []
    for x, m in zip(members, masses):
        if x % mod == xi % mod:
            kept_m.append(x)
            kept_w.append(m)
    return kept_m, kept_w, integral


def class_norm(
    es: EllipsephicSet,
    X: int,
    xi: int,
    a: int,
    weights: WeightAssignment | None = None,
) -> ClassNorm:
    """Sum of squared weights over the class x = xi mod p^a in E(X).

    a = 0 is the whole-set convention (any xi accepted).
    """
    if a < 0:
        raise ValueError(f"a must be >= 0, got {a}")
    if a >= 1 and not 0 <= xi < es.p**a:
        raise ValueError(f"xi must lie in [0, p^a) = [0, {es.p ** a})")
    _, masses, integral = _class_members_masses(es, X, xi, a, weights)
    if integral:
        return ClassNorm(a=a, xi=xi, value2=sum(masses))
    return ClassNorm(a=a, xi=xi, value2=sum(w * w for w in masses))


def admissible_residues(es: EllipsephicSet, a: int) -> list[int]:
    """Residues mod p^a whose length-a digit string uses only permitted digits."""
    if a < 0:
        raise ValueError(f"a must be >= 0, got {a}")
    values = [0]
    scale = 1
    for _ in range(a):
        values = [v + d * scale for v in values for d in es.digits]
        scale *= es.p
    return sorted(values)


@dataclass(frozen=True)
class RestrictedEnergy:
    """Raw class-restricted solution count plus its normalization factor.

    The raw count is exact; dividing by rho_a2^t * rho_b2^(2t) gives the
    normalized value used in the weighted aggregates.
    """

    raw: int | float
    t: int
    rho_a2: int | float
    rho_b2: int | float

    @property
    def normalization(self) -> Fraction | float | None:
        if self.rho_a2 == 0 or self.rho_b2 == 0:
            return None
        denom_a = self.rho_a2**self.t
        denom_b = self.rho_b2 ** (2 * self.t)
        if isinstance(self.rho_a2, int) and isinstance(self.rho_b2, int):
            return Fraction(1, denom_a * denom_b)
        return 1.0 / (denom_a * denom_b)

    @property
    def normalized(self) -> Fraction | float | None:
        norm = self.normalization
        if norm is None:
            return None
        return self.raw * norm


def _difference_distribution(
    entries: dict[MomentVector, int | float],
    weighted: bool,
    memory_budget: int,
) -> dict[MomentVector, int | float]:
    n = len(entries)
    if n * n * _DICT_ENTRY_BYTES > memory_budget:
        raise MemoryBudgetExceeded(
            f"difference distribution may reach {n * n} entries"
        )
    items = sorted(entries.items()) if weighted else list(entries.items())
    out: dict[MomentVector, int | float] = {}
    for (a1, a2), ma in items:
        for (b1, b2), mb in items:
            key = (a1 - b1, a2 - b2)
            out[key] = out.get(key, 0) + ma * mb
    return out


def restricted_energy(
    es: EllipsephicSet,
    X: int,
    t: int,
    a: int,
    b: int,
    xi: int,
    eta: int,
    weights: WeightAssignment | None = None,
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
) -> RestrictedEnergy:
    """Raw count of solutions linking a t-fold and a 2t-fold class block.

    Counts tuples (x, y, u, v) with x, y in E(X)^t congruent to xi mod p^a,
    u, v in E(X)^(2t) congruent to eta mod p^b, whose moment-vector
    differences match: moments(x) - moments(y) = moments(u) - moments(v).
    Computed by matching the two difference distributions key by key.
    """
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    if a < 0 or b < 0:
        raise ValueError("a and b must be >= 0")
    mem_x, mass_x, integral_x = _class_members_masses(es, X, xi, a, weights)
    mem_u, mass_u, integral_u = _class_members_masses(es, X, eta, b, weights)
    integral = integral_x and integral_u
    weighted = not integral
    rho_a2 = class_norm(es, X, xi, a, weights).value2
    rho_b2 = class_norm(es, X, eta, b, weights).value2
    if not mem_x or not mem_u:
        raw: int | float = 0 if integral else 0.0
        return RestrictedEnergy(raw=raw, t=t, rho_a2=rho_a2, rho_b2=rho_b2)
    fold_t = _dict_fold(_dict_base(mem_x, mass_x), t, weighted, memory_budget)
    fold_2t = _dict_fold(_dict_base(mem_u, mass_u), 2 * t, weighted, memory_budget)
    diff_t = _difference_distribution(fold_t, weighted, memory_budget)
    diff_2t = _difference_distribution(fold_2t, weighted, memory_budget)
    small, large = (diff_t, diff_2t) if len(diff_t) <= len(diff_2t) else (diff_2t, diff_t)
    keys = sorted(small) if weighted else small
    raw = 0.0 if weighted else 0
    for key in keys:
        other = large.get(key)
        if other is not None:
            raw += small[key] * other
    return RestrictedEnergy(raw=raw, t=t, rho_a2=rho_a2, rho_b2=rho_b2)


def class_pair_aggregate(
    es: EllipsephicSet,
    X: int,
    t: int,
    a: int,
    b: int,
    h: int,
    weights: WeightAssignment | None = None,
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
) -> Fraction | float:
    """Norm-weighted sum of normalized restricted energies over class pairs
    whose representatives differ by exactly the (h-1)-th power of p.

    Classes are labelled by their canonical integer representatives (the
    digit strings); the divisibility test applies to the absolute
    difference, and an exact power never divides zero, so coincident
    representatives are skipped.
    """
    if a < 1 or b < 1 or h < 1:
        raise ValueError("a, b, h must be >= 1")
    p = es.p
    exact_pow = p ** (h - 1)
    rho0_2 = class_norm(es, X, 0, 0, weights).value2
    if rho0_2 == 0:
        return Fraction(0) if weights is None else 0.0
    integral = weights is None or weights.is_zero_one()
    total: Fraction | float = Fraction(0) if integral else 0.0
    norms_a = {
        xi: class_norm(es, X, xi, a, weights).value2 for xi in admissible_residues(es, a)
    }
    norms_b = {
        eta: class_norm(es, X, eta, b, weights).value2
        for eta in admissible_residues(es, b)
    }
    for xi, na in norms_a.items():
        if na == 0:
            continue
        for eta, nb in norms_b.items():
            if nb == 0:
                continue
            diff = abs(xi - eta)
            if diff == 0:
                continue
            q, rem = divmod(diff, exact_pow)
            if rem != 0 or q % p == 0:
                continue
            res = restricted_energy(
                es, X, t, a, b, xi, eta, weights, memory_budget=memory_budget
            )
            normalized = res.normalized
            if normalized is None:
                continue
            total += na * nb * normalized
    if integral:
        return total / (Fraction(rho0_2) ** 2)
    return total / float(rho0_2) ** 2


def reduced_energy_mod(
    es: EllipsephicSet,
    X: int,
    s: int,
    c: int,
    weights: WeightAssignment | None = None,
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
) -> int | float:
    """Count solution pairs of the system taken mod p^c in both equations.

    Folds each moment coordinate mod p^c before convolving, so the support
    never exceeds p^(2c); once p^c outgrows s*X^2 the count equals the
    exact one.
    """
    if c < 1:
        raise ValueError(f"c must be >= 1, got {c}")
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    members, masses, integral = _supported_members(es, X, weights)
    if not members:
        return 0 if integral else 0.0
    mod = es.p**c
    weighted = not integral
    base: dict[MomentVector, int | float] = {}
    for x, m in zip(members, masses):
        key = (x % mod, (x * x) % mod)
        base[key] = base.get(key, 0) + m
    cur = base
    for _ in range(s - 1):
        if len(cur) * len(base) * _DICT_ENTRY_BYTES > memory_budget:
            raise MemoryBudgetExceeded("folded convolution exceeds the memory budget")
        items_cur = sorted(cur.items()) if weighted else list(cur.items())
        items_base = sorted(base.items()) if weighted else list(base.items())
        nxt: dict[MomentVector, int | float] = {}
        for (a1, a2), ma in items_cur:
            for (b1, b2), mb in items_base:
                key = ((a1 + b1) % mod, (a2 + b2) % mod)
                nxt[key] = nxt.get(key, 0) + ma * mb
        cur = nxt
    return energy(MomentDistribution(s=s, entries=cur, weighted=weighted))


def partition_by_congruence(
    es: EllipsephicSet,
    X: int,
    s: int,
    h: int,
    xi: int = 0,
    weights: WeightAssignment | None = None,
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
) -> tuple[int | float, int | float]:
    """Split a class-restricted count by whether all 2s variables agree mod p^h.

    Restricts all variables to xi mod p^(h-1) (xi is ignored when h = 1),
    then returns (all-congruent part, remainder); the parts sum exactly to
    the restricted count.
    """
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    p = es.p
    if h == 1:
        xi = 0
    elif not 0 <= xi < p ** (h - 1):
        raise ValueError(f"xi must lie in [0, p^(h-1)) = [0, {p ** (h - 1)})")

    def fold_energy(level: int, residue: int) -> int | float:
        mem, mass, integral = _class_members_masses(es, X, residue, level, weights)
        if not mem:
            return 0 if integral else 0.0
        folded = _dict_fold(_dict_base(mem, mass), s, not integral, memory_budget)
        return energy(MomentDistribution(s=s, entries=folded, weighted=not integral))

    total = fold_energy(h - 1, xi)
    all_congruent: int | float = 0
    for j in range(p):
        eta = xi + j * p ** (h - 1)
        all_congruent += fold_energy(h, eta)
    return all_congruent, total - all_congruent


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

_CACHE_MAGIC = b"EMVT"
_CACHE_VERSION = 1
_HEADER = struct.Struct("<4sIII")


def save_distribution(d: MomentDistribution, fh: IO[bytes]) -> None:
    """Spill an unweighted distribution to the binary cache format.

    Little-endian records of (m1: 8 bytes, m2: 8 bytes, mass: 16 bytes)
    after a 16-byte header.
    """
    if d.weighted:
        raise ValueError("only exact integer distributions can be spilled")
    fh.write(_HEADER.pack(_CACHE_MAGIC, _CACHE_VERSION, d.s, len(d.entries)))
    for (m1, m2), mass in sorted(d.entries.items()):
        if m1 < 0 or m2 < 0:
            raise ValueError("cache format requires nonnegative moment vectors")
        fh.write(m1.to_bytes(8, "little"))
        fh.write(m2.to_bytes(8, "little"))
        fh.write(int(mass).to_bytes(16, "little"))


def load_distribution(fh: IO[bytes]) -> MomentDistribution:
    header = fh.read(_HEADER.size)
    magic, version, s, count = _HEADER.unpack(header)
    if magic != _CACHE_MAGIC:
        raise ValueError(f"bad magic {magic!r}")
    if version != _CACHE_VERSION:
        raise ValueError(f"unsupported cache version {version}")
    entries: dict[MomentVector, int] = {}
    for _ in range(count):
        rec = fh.read(32)
        if len(rec) != 32:
            raise ValueError("truncated cache file")
        m1 = int.from_bytes(rec[0:8], "little")
        m2 = int.from_bytes(rec[8:16], "little")
        mass = int.from_bytes(rec[16:32], "little")
        entries[(m1, m2)] = mass
    return MomentDistribution(s=s, entries=entries, weighted=False)


def count_result_json(
    es: EllipsephicSet,
    X: int,
    s: int,
    y: int,
    count: int | float,
    method: str,
    wall_ms: float | None = None,
) -> str:
    """Serialize a count result; the count rides as a decimal string."""
    out: dict = {"p": es.p, "digits": list(es.digits), "X": X}
    b = _power_of(X, es.p)
    if b is not None:
        out["B"] = b
    out.update({"s": s, "Y": y, "count": str(count), "method": method})
    if wall_ms is not None:
        out["wall_ms"] = wall_ms
    return json.dumps(out)


def _power_of(X: int, p: int) -> int | None:
    b = 0
    v = 1
    while v < X:
        v *= p
        b += 1
    return b if v == X else None
