"""Exact state counting behind the embedding-efficiency upper bound.

For a group of n pixels, a per-pixel change cap z, and a quota q of pixels
allowed to use the full +/-z change (the rest stay within +/-(z-1)), this
module counts the admissible change states and their total linear and
squared change, exactly, with arbitrary-precision integers. A brute-force
enumerator provides an independent oracle for the same three quantities.

On top of the counts sit the chart primitives: efficiency points per
(n, z, q) query, the upper envelope over a sweep, cubic least-squares
fitting of envelope points, and point-to-curve distance.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cache
from typing import Iterable, Sequence

import numpy as np

_ORACLE_LIMIT = 10**8

METRIC_STANDARD = "standard"
METRIC_PROPOSED = "proposed"
NORM_LITERAL = "literal"
NORM_MEAN = "mean"
NORM_MEAN_PER_PIXEL = "mean-per-pixel"

_METRICS = (METRIC_STANDARD, METRIC_PROPOSED)
_NORMALIZATIONS = (NORM_LITERAL, NORM_MEAN, NORM_MEAN_PER_PIXEL)


class BoundError(ValueError):
    pass


class InvalidQuery(BoundError):
    pass


class QueryTooLarge(BoundError):
    """Brute-force enumeration would exceed the state guard."""


class DegenerateQuery(BoundError):
    """Only the all-zero state exists; efficiency is unbounded."""


class EmptyRange(BoundError):
    pass


class RankDeficient(BoundError):
    pass


class InvalidDomain(BoundError):
    pass


@dataclass(frozen=True)
class BoundQuery:
    """State-family query: n pixels, cap z, at most q pixels at the full cap."""

    n: int
    z: int
    q: int

    def __post_init__(self) -> None:
        if self.n < 1 or self.z < 1 or not 0 <= self.q <= self.n:
            raise InvalidQuery(f"bad query n={self.n} z={self.z} q={self.q}")


@dataclass(frozen=True)
class BoundResult:
    """Exact counts for one query: states, sum |delta|, sum delta^2."""

    state_count: int
    change_sum_linear: int
    change_sum_squared: int


@dataclass(frozen=True)
class BoundPoint:
    """One chart point: payload and efficiencies derived from the counts.

    Under the mean-per-pixel normalization the standard efficiency equals
    its mean value (the per-pixel factors cancel), so eff_standard is
    always populated; eff_proposed carries the requested normalization.
    """

    query: BoundQuery
    alpha: float
    inv_alpha: float
    eff_standard: float
    eff_proposed: float
    normalization: str

    def efficiency(self, metric: str) -> float:
        if metric == METRIC_STANDARD:
            return self.eff_standard
        if metric == METRIC_PROPOSED:
            return self.eff_proposed
        raise ValueError(f"metric {metric!r} not one of {_METRICS}")


@cache
def _count(n: int, z: int, q: int) -> int:
    if q == 0:
        return (2 * z - 1) ** n
    if q == n:
        return (2 * z + 1) ** n
    return 2 * _count(n - 1, z, q - 1) + (2 * z - 1) * _count(n - 1, z, q)


@cache
def _sum_full_cube(n: int, z: int, squared: bool) -> int:
    """Total change over every state of [-z, z]^n.

    Splits the group in two; the product state space turns the sum into
    count(left) * sum(right) + count(right) * sum(left). Any split yields
    the same value; floor(n/2) keeps recursion shallow.
    """
    if n == 0 or z == 0:
        return 0
    if n == 1:
        return 2 * sum(i * i if squared else i for i in range(1, z + 1))
    a = n // 2
    b = n - a
    return (2 * z + 1) ** a * _sum_full_cube(b, z, squared) + (
        2 * z + 1
    ) ** b * _sum_full_cube(a, z, squared)


def _shell_sum(n: int, z: int, q: int, squared: bool) -> int:
    """Total change over states with exactly q pixels at magnitude z.

    2^q sign choices and comb(n, q) positions for the capped pixels; the
    capped pixels contribute q * z (or q * z^2) per state of the remaining
    cube, the rest contribute the full-cube sum at cap z - 1.
    """
    unit = z * z if squared else z
    rest_states = (2 * (z - 1) + 1) ** (n - q)
    return (2**q) * math.comb(n, q) * (
        q * unit * rest_states + _sum_full_cube(n - q, z - 1, squared)
    )


def _sum_changes(n: int, z: int, q: int, squared: bool) -> int:
    if q == n:
        return _sum_full_cube(n, z, squared)
    return _sum_full_cube(n, z - 1, squared) + sum(
        _shell_sum(n, z, i, squared) for i in range(1, q + 1)
    )


def count_states(query: BoundQuery) -> int:
    """Number of admissible change states, exactly."""
    return _count(query.n, query.z, query.q)


def sum_changes_linear(query: BoundQuery) -> int:
    """Sum of |delta_i| over every admissible state, exactly."""
    return _sum_changes(query.n, query.z, query.q, squared=False)


def sum_changes_squared(query: BoundQuery) -> int:
    """Sum of delta_i^2 over every admissible state, exactly."""
    return _sum_changes(query.n, query.z, query.q, squared=True)


def bound_counts(query: BoundQuery) -> BoundResult:
    return BoundResult(
        state_count=count_states(query),
        change_sum_linear=sum_changes_linear(query),
        change_sum_squared=sum_changes_squared(query),
    )


def enumerate_oracle(query: BoundQuery) -> BoundResult:
    """Brute-force re-count by walking every vector in [-z, z]^n.

    Independent of the recurrences above on purpose; guarded so a desk run
    stays bounded.
    """
    n, z, q = query.n, query.z, query.q
    if (2 * z + 1) ** n > _ORACLE_LIMIT:
        raise QueryTooLarge(f"(2*{z}+1)^{n} states exceed the enumeration guard")
    states = 0
    lin = 0
    sq = 0
    for deltas in itertools.product(range(-z, z + 1), repeat=n):
        at_cap = sum(1 for d in deltas if abs(d) == z)
        if at_cap > q:
            continue
        states += 1
        lin += sum(abs(d) for d in deltas)
        sq += sum(d * d for d in deltas)
    return BoundResult(states, lin, sq)


def bound_point(
    query: BoundQuery,
    metric: str = METRIC_PROPOSED,
    normalization: str = NORM_MEAN_PER_PIXEL,
) -> BoundPoint:
    """Efficiency chart point for one query.

    literal divides the payload by the raw change totals as the defining
    equations read; mean divides by the per-state average; mean-per-pixel
    additionally spreads the average over the n pixels so the value is
    commensurate with per-pixel MSE.
    """
    if metric not in _METRICS:
        raise ValueError(f"metric {metric!r} not one of {_METRICS}")
    if normalization not in _NORMALIZATIONS:
        raise ValueError(
            f"normalization {normalization!r} not one of {_NORMALIZATIONS}"
        )
    counts = bound_counts(query)
    if counts.state_count < 2 or counts.change_sum_linear == 0:
        raise DegenerateQuery(
            f"query {query} admits only the zero state; efficiency unbounded"
        )
    states = counts.state_count
    lin = counts.change_sum_linear
    sq = counts.change_sum_squared
    payload = math.log2(states)
    alpha = payload / query.n
    if normalization == NORM_LITERAL:
        eff_std = payload / lin
        eff_prop = payload / math.sqrt(sq)
    elif normalization == NORM_MEAN:
        eff_std = payload * states / lin
        eff_prop = payload / math.sqrt(sq / states)
    else:
        eff_std = payload * states / lin
        eff_prop = alpha / math.sqrt(sq / (states * query.n))
    return BoundPoint(
        query=query,
        alpha=alpha,
        inv_alpha=1.0 / alpha,
        eff_standard=eff_std,
        eff_proposed=eff_prop,
        normalization=normalization,
    )


def frontier(
    n_values: Iterable[int],
    z_values: Iterable[int],
    metric: str = METRIC_PROPOSED,
    normalization: str = NORM_MEAN_PER_PIXEL,
) -> list[BoundPoint]:
    """Upper envelope of the (inv_alpha, efficiency) sweep.

    Generates every (n, z, q) point with q in [1, n], sorts by inverse
    payload, and keeps only points whose efficiency strictly exceeds
    everything at smaller-or-equal inverse payload.
    """
    ns = sorted(set(n_values))
    zs = sorted(set(z_values))
    if not ns or not zs:
        raise EmptyRange("need at least one n and one z")
    points = [
        bound_point(BoundQuery(n, z, q), metric, normalization)
        for n in ns
        for z in zs
        for q in range(1, n + 1)
    ]
    points.sort(key=lambda p: (p.inv_alpha, -p.efficiency(metric)))
    envelope: list[BoundPoint] = []
    best = -math.inf
    for point in points:
        eff = point.efficiency(metric)
        if eff > best:
            envelope.append(point)
            best = eff
    return envelope


def frontier_value_at(
    envelope: Sequence[BoundPoint], inv_alpha: float, metric: str
) -> float:
    """Best efficiency the envelope certifies at a given inverse payload.

    The envelope is a rising staircase; any point at larger inverse payload
    can always fall back on the best smaller-or-equal entry, so the value
    is the running maximum (the last envelope entry at or left of x).
    """
    value = -math.inf
    for point in envelope:
        if point.inv_alpha <= inv_alpha + 1e-12:
            value = max(value, point.efficiency(metric))
    return value


# ---------------------------------------------------------------------------
# cubic reference curve


@dataclass(frozen=True)
class CubicPoly:
    """y = c3 x^3 + c2 x^2 + c1 x + c0."""

    c3: float
    c2: float
    c1: float
    c0: float

    def coefficients(self) -> tuple[float, float, float, float]:
        return (self.c3, self.c2, self.c1, self.c0)


# Reference cubic fit of the proposed-efficiency bound used by the distance
# reports (the CLI's --eq43 preset).
REFERENCE_BOUND_POLY = CubicPoly(2.994, -10.5, 10.82, -1.098)


def cubic_eval(poly: CubicPoly, x: float) -> float:
    """Horner evaluation."""
    return ((poly.c3 * x + poly.c2) * x + poly.c1) * x + poly.c0


def cubic_fit(points: Sequence[tuple[float, float]]) -> CubicPoly:
    """Ordinary least-squares cubic through (x, y) samples.

    Needs at least four distinct x values; solved with numpy's QR-based
    least squares, so exact samples of a cubic are recovered to rounding.
    """
    xs = np.asarray([p[0] for p in points], dtype=float)
    ys = np.asarray([p[1] for p in points], dtype=float)
    if len(set(xs.tolist())) < 4:
        raise RankDeficient("need at least 4 distinct x values")
    design = np.vander(xs, 4)
    coeffs, *_ = np.linalg.lstsq(design, ys, rcond=None)
    return CubicPoly(*(float(c) for c in coeffs))


def fit_residual(poly: CubicPoly, points: Sequence[tuple[float, float]]) -> float:
    """Sum of squared residuals of a fit."""
    return float(sum((cubic_eval(poly, x) - y) ** 2 for x, y in points))


def distance_to_curve(
    poly: CubicPoly,
    point: tuple[float, float],
    mode: str = "euclidean",
    domain: tuple[float, float] = (0.0, 3.0),
) -> float:
    """Distance from a point to the curve.

    vertical is |poly(x0) - y0|. euclidean minimizes the straight-line
    distance over the domain: a 10^4-sample scan brackets the minimum and
    golden-section refines it, so the result is deterministic.
    """
    x0, y0 = point
    if mode == "vertical":
        return abs(cubic_eval(poly, x0) - y0)
    if mode != "euclidean":
        raise ValueError(f"mode {mode!r} not one of vertical/euclidean")
    lo, hi = domain
    if not lo < hi:
        raise InvalidDomain(f"domain [{lo}, {hi}] is empty")

    def dist_sq(x: float) -> float:
        dy = cubic_eval(poly, x) - y0
        dx = x - x0
        return dx * dx + dy * dy

    xs = np.linspace(lo, hi, 10_001)
    values = (xs - x0) ** 2 + (
        ((poly.c3 * xs + poly.c2) * xs + poly.c1) * xs + poly.c0 - y0
    ) ** 2
    idx = int(np.argmin(values))
    a = xs[max(idx - 1, 0)]
    b = xs[min(idx + 1, len(xs) - 1)]
    # Golden-section search on the bracketing interval.
    ratio = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - ratio * (b - a)
    d = a + ratio * (b - a)
    while b - a > 1e-12:
        if dist_sq(c) < dist_sq(d):
            b = d
        else:
            a = c
        c = b - ratio * (b - a)
        d = a + ratio * (b - a)
    return math.sqrt(min(dist_sq((a + b) / 2.0), float(values[idx])))
