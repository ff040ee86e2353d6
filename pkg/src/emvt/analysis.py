"""Growth-exponent fitting and representation counts for sums of squares.

Counts are exact; only the log-log fits are floating point.  Exponent fits
never assert asymptotic bounds beyond wide bands: implied constants and
finite-size effects make tight checks unsound.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from math import isqrt, log
from typing import IO

import numpy as np

from .counting import DEFAULT_MEMORY_BUDGET, WeightAssignment, vinogradov_count
from .ellipsephic import EllipsephicSet, count_up_to, enumerate_up_to
from .errors import MemoryBudgetExceeded, NonpositiveCount, TooFewPoints

_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class GrowthPoint:
    B: int
    X: int
    Y: int
    count: int


@dataclass(frozen=True)
class GrowthSeries:
    """Exact (X, Y, count) triples at X = p^B for increasing B."""

    points: tuple[GrowthPoint, ...]

    def __post_init__(self) -> None:
        bs = [pt.B for pt in self.points]
        if bs != sorted(set(bs)):
            raise ValueError("points must have strictly increasing B")
        for pt in self.points:
            if pt.Y <= 0 or pt.count <= 0:
                raise ValueError("Y and count must be positive")


def growth_series(
    es: EllipsephicSet,
    s: int,
    b_values: list[int],
    strategy: str = "auto",
    weights: WeightAssignment | None = None,
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
    workers: int = 1,
) -> GrowthSeries:
    """Compute counts at X = p^B for each B, ready for exponent fitting."""
    pts = []
    for b in b_values:
        x = es.p**b
        y = count_up_to(es, x)
        count = vinogradov_count(
            es, x, s, weights=weights, strategy=strategy,
            memory_budget=memory_budget, workers=workers,
        )
        pts.append(GrowthPoint(B=b, X=x, Y=y, count=int(count)))
    return GrowthSeries(points=tuple(pts))


def write_series_csv(series: GrowthSeries, fh: IO[str]) -> None:
    writer = csv.writer(fh)
    writer.writerow(["B", "X", "Y", "count"])
    for pt in series.points:
        writer.writerow([pt.B, pt.X, pt.Y, pt.count])


def read_series_csv(fh: IO[str]) -> GrowthSeries:
    reader = csv.reader(fh)
    header = next(reader)
    if header != ["B", "X", "Y", "count"]:
        raise ValueError(f"expected header B,X,Y,count, got {header!r}")
    pts = [
        GrowthPoint(B=int(r[0]), X=int(r[1]), Y=int(r[2]), count=int(r[3]))
        for r in reader
        if r
    ]
    return GrowthSeries(points=tuple(pts))


@dataclass(frozen=True)
class ExponentFit:
    predictor: str
    slope: float
    intercept: float
    r_squared: float
    n_points: int

    def to_json(self) -> str:
        return json.dumps(
            {
                "predictor": self.predictor,
                "slope": self.slope,
                "intercept": self.intercept,
                "r_squared": self.r_squared,
                "n_points": self.n_points,
            }
        )


def fit_exponent(series: GrowthSeries, predictor: str = "Y") -> ExponentFit:
    """Ordinary least squares of log(count) against log(Y) or log(X)."""
    if predictor not in ("Y", "X"):
        raise ValueError(f"predictor must be 'Y' or 'X', got {predictor!r}")
    if len(series.points) < 3:
        raise TooFewPoints(f"need >= 3 points, got {len(series.points)}")
    for pt in series.points:
        if pt.count <= 0:
            raise NonpositiveCount(f"count {pt.count} at B={pt.B}")
    xs = [log(pt.Y if predictor == "Y" else pt.X) for pt in series.points]
    ys = [log(pt.count) for pt in series.points]
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    if sxx == 0.0:
        raise ValueError("predictor values are constant; exponent is undefined")
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = my - slope * mx
    ss_res = sum((y - (slope * x + intercept)) ** 2 for x, y in zip(xs, ys))
    ss_tot = sum((y - my) ** 2 for y in ys)
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return ExponentFit(
        predictor=predictor,
        slope=slope,
        intercept=intercept,
        r_squared=r_squared,
        n_points=n,
    )


def pairwise_slope(series: GrowthSeries, predictor: str = "Y") -> float:
    """Slope through the top two points only (the large-X end of the series)."""
    if len(series.points) < 2:
        raise TooFewPoints("need >= 2 points for a pairwise slope")
    p1, p2 = series.points[-2], series.points[-1]
    x1, x2 = (p1.Y, p2.Y) if predictor == "Y" else (p1.X, p2.X)
    return (log(p2.count) - log(p1.count)) / (log(x2) - log(x1))


@dataclass(frozen=True)
class WaringProfile:
    """R(n): ordered s-tuple counts with squared sum n, for n <= X."""

    s: int
    X: int
    R: tuple[int, ...]
    N: int

    def sum_counts(self) -> int:
        return sum(self.R[1:])


def waring_counts(
    es: EllipsephicSet,
    s: int,
    X: int,
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
) -> WaringProfile:
    """Exact representation counts as sums of s squares of members.

    Variables come from E(isqrt(X)); the constraint is the exact inequality
    sum of squares <= X, so truncating after every convolution step is
    lossless (squares are nonnegative).
    """
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    if X < 1:
        raise ValueError(f"X must be >= 1, got {X}")
    if (X + 1) * 9 > memory_budget:
        raise MemoryBudgetExceeded(f"profile of length {X + 1} exceeds the budget")
    members = enumerate_up_to(es, isqrt(X)) if isqrt(X) >= 1 else []
    squares = [x * x for x in members if x * x <= X]
    if len(members) ** s < _INT64_SAFE and squares:
        cur = np.zeros(X + 1, dtype=np.int64)
        cur[0] = 1
        for _ in range(s):
            nxt = np.zeros(X + 1, dtype=np.int64)
            for sq in squares:
                nxt[sq:] += cur[: X + 1 - sq]
            cur = nxt
        counts = cur.tolist()
    else:
        counts = [0] * (X + 1)
        counts[0] = 1
        for _ in range(s):
            nxt = [0] * (X + 1)
            for n, c in enumerate(counts):
                if c:
                    for sq in squares:
                        if n + sq > X:
                            break
                        nxt[n + sq] += c
            counts = nxt
    n_repr = sum(1 for n in range(1, X + 1) if counts[n] > 0)
    return WaringProfile(s=s, X=X, R=tuple(counts), N=n_repr)


def write_waring_csv(profile: WaringProfile, fh: IO[str]) -> None:
    writer = csv.writer(fh)
    writer.writerow(["n", "R"])
    for n, c in enumerate(profile.R):
        writer.writerow([n, c])


@dataclass(frozen=True)
class CauchyReport:
    """The exact inequality S1^2 <= N * S2 and the lower bound it implies."""

    s1: int
    s2: int
    n_represented: int
    lower_bound: int
    holds: bool

    def to_json(self) -> str:
        return json.dumps(
            {
                "s1": str(self.s1),
                "s2": str(self.s2),
                "n_represented": self.n_represented,
                "lower_bound": self.lower_bound,
                "holds": self.holds,
            }
        )


def cauchy_bound_check(profile: WaringProfile) -> CauchyReport:
    """Verify S1^2 <= N*S2 exactly and report ceil(S1^2/S2) <= N."""
    s1 = sum(profile.R[1:])
    s2 = sum(c * c for c in profile.R[1:])
    holds = s1 * s1 <= profile.N * s2
    lower = -(-s1 * s1 // s2) if s2 else 0
    return CauchyReport(
        s1=s1, s2=s2, n_represented=profile.N, lower_bound=lower, holds=holds
    )
