"""Newton polygons as slope-sorted multisets of coprime segments.

A segment ``(m, n)`` has height ``m + n``, dimension ``n`` and slope
``n / (m + n)``; its minimal word is ``1^m 0^n``.  A polygon is drawn as the
convex line graph from ``(0, 0)`` to ``(h, d)``, shallowest slope first.
``zeta`` precedes ``xi`` when the graph of ``zeta`` lies on or above that of
``xi``; the straight line is the top of each poset and the polygon made of
``(1,0)`` and ``(0,1)`` pieces is its bottom.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .words import direct_sum_all, simple_word


class PolygonError(ValueError):
    """Malformed segments or polygons, or violated preconditions."""


@dataclass(frozen=True, order=True)
class Segment:
    m: int
    n: int

    def __post_init__(self) -> None:
        if self.m < 0 or self.n < 0 or (self.m, self.n) == (0, 0):
            raise PolygonError(f"invalid segment ({self.m},{self.n})")
        if gcd(self.m, self.n) != 1:
            raise PolygonError(f"segment ({self.m},{self.n}) is not coprime")

    @property
    def height(self) -> int:
        return self.m + self.n

    @property
    def slope(self) -> Fraction:
        return Fraction(self.n, self.m + self.n)

    @property
    def word(self) -> str:
        return simple_word(self.m, self.n)

    def __str__(self) -> str:
        return f"({self.m},{self.n})"


def _slope_key(s: Segment):
    return (-s.slope, s.m)


@dataclass(frozen=True)
class NewtonPolygon:
    """Segments are kept steepest first (slopes weakly decreasing)."""

    segments: tuple[Segment, ...]

    @property
    def height(self) -> int:
        return sum(s.height for s in self.segments)

    @property
    def dimension(self) -> int:
        return sum(s.n for s in self.segments)

    @property
    def endpoint(self) -> tuple[int, int]:
        return (self.height, self.dimension)

    def __len__(self) -> int:
        return len(self.segments)

    @cached_property
    def breakpoints(self) -> tuple[tuple[int, int], ...]:
        """Vertices of the graph left to right, starting at (0, 0)."""
        pts = [(0, 0)]
        x = y = 0
        for s in reversed(self.segments):
            x, y = x + s.height, y + s.n
            pts.append((x, y))
        return tuple(pts)

    @cached_property
    def counter(self) -> Counter:
        return Counter(self.segments)

    def __str__(self) -> str:
        if not self.segments:
            return "0"
        parts = []
        for seg in sorted(self.counter, key=_slope_key):
            k = self.counter[seg]
            parts.append(f"{k}{seg}" if k > 1 else str(seg))
        return "+".join(parts)

    def to_json(self) -> list[list[int]]:
        return [[s.m, s.n] for s in self.segments]

    def __add__(self, other: "NewtonPolygon") -> "NewtonPolygon":
        return np_normalize(self.segments + other.segments)

    def __sub__(self, other: "NewtonPolygon") -> "NewtonPolygon":
        rest = self.counter - other.counter
        if other.counter - self.counter:
            raise PolygonError(f"{other} is not contained in {self}")
        return np_normalize(rest.elements())


def np_normalize(segs: Iterable) -> NewtonPolygon:
    out = []
    for s in segs:
        out.append(s if isinstance(s, Segment) else Segment(*s))
    return NewtonPolygon(tuple(sorted(out, key=_slope_key)))


_TERM = re.compile(r"\s*(\d*)\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*")


def parse_polygon(text: str) -> NewtonPolygon:
    """Parse ``"(2,3)+4(1,1)"``; terms may come in any order."""
    text = text.strip()
    if not text:
        raise PolygonError("empty polygon")
    segs = []
    for term in text.split("+"):
        mt = _TERM.fullmatch(term)
        if not mt:
            raise PolygonError(f"cannot parse term {term!r}")
        k = int(mt.group(1)) if mt.group(1) else 1
        if k < 1:
            raise PolygonError(f"multiplicity must be positive in {term!r}")
        segs += [(int(mt.group(2)), int(mt.group(3)))] * k
    return np_normalize(segs)


def polygon_from_json(obj: Sequence[Sequence[int]]) -> NewtonPolygon:
    return np_normalize(tuple(p) for p in obj)


def straight_line(h: int, d: int) -> NewtonPolygon:
    """The polygon whose graph is the segment from (0,0) to (h,d)."""
    if not 0 <= d <= h:
        raise PolygonError(f"bad endpoint ({h},{d})")
    if h == 0:
        return NewtonPolygon(())
    g = gcd(h - d, d)
    return np_normalize([((h - d) // g, d // g)] * g)


def bottom_polygon(h: int, d: int) -> NewtonPolygon:
    """``(h-d)(1,0) + d(0,1)``, the lowest polygon with endpoint (h,d)."""
    return np_normalize([(1, 0)] * (h - d) + [(0, 1)] * d)


# ---------------------------------------------------------------------------
# Graph values, order, area statistic
# ---------------------------------------------------------------------------


def np_eval(xi: NewtonPolygon, x) -> Fraction:
    x = Fraction(x)
    pts = xi.breakpoints
    if not 0 <= x <= xi.height:
        raise PolygonError(f"x = {x} outside [0, {xi.height}]")
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        if x <= x1:
            return y0 + Fraction(y1 - y0, x1 - x0) * (x - x0)
    return Fraction(pts[-1][1])


def _check_endpoints(zeta: NewtonPolygon, xi: NewtonPolygon) -> None:
    if zeta.endpoint != xi.endpoint:
        raise PolygonError(f"endpoints differ: {zeta.endpoint} vs {xi.endpoint}")


def precedes(zeta: NewtonPolygon, xi: NewtonPolygon) -> bool:
    """zeta lies on or above xi (both graphs share their endpoints)."""
    _check_endpoints(zeta, xi)
    xs = {x for x, _ in zeta.breakpoints} | {x for x, _ in xi.breakpoints}
    return all(np_eval(zeta, x) >= np_eval(xi, x) for x in xs)


def strictly_precedes(zeta: NewtonPolygon, xi: NewtonPolygon) -> bool:
    return zeta != xi and precedes(zeta, xi)


def c_value(zeta: NewtonPolygon, xi: NewtonPolygon) -> int:
    """``2 * sum_{i=1..h} (zeta(i) - xi(i))``, which must be a non-negative integer."""
    if not precedes(zeta, xi):
        raise PolygonError(f"{zeta} does not precede {xi}")
    total = 2 * sum(np_eval(zeta, i) - np_eval(xi, i) for i in range(1, xi.height + 1))
    if total.denominator != 1 or total < 0:
        raise ArithmeticError(f"c({zeta}, {xi}) = {total} is not a non-negative integer")
    return int(total)


def c_of(xi: NewtonPolygon) -> int:
    """Area statistic against the straight line with the same endpoints."""
    return c_value(straight_line(*xi.endpoint), xi)


# ---------------------------------------------------------------------------
# Enumeration and saturation
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _coprime_segments(h: int) -> tuple[Segment, ...]:
    segs = [
        Segment(m, n)
        for m in range(h + 1)
        for n in range(h + 1 - m)
        if (m, n) != (0, 0) and gcd(m, n) == 1
    ]
    return tuple(sorted(segs, key=_slope_key))


@lru_cache(maxsize=None)
def _enumerate(h: int, d: int) -> tuple[NewtonPolygon, ...]:
    segs = _coprime_segments(h)
    out: list[NewtonPolygon] = []

    def rec(start: int, h_left: int, d_left: int, acc: list[Segment]) -> None:
        if h_left == 0:
            if d_left == 0:
                out.append(NewtonPolygon(tuple(acc)))
            return
        for k in range(start, len(segs)):
            s = segs[k]
            if s.height <= h_left and s.n <= d_left:
                acc.append(s)
                rec(k, h_left - s.height, d_left - s.n, acc)
                acc.pop()

    rec(0, h, d, [])
    return tuple(out)


def enumerate_nps(h: int, d: int) -> list[NewtonPolygon]:
    """Every Newton polygon of height h and dimension d, each once."""
    if not 0 <= d <= h:
        return []
    return list(_enumerate(h, d))


class PolygonPoset:
    """The polygons of one endpoint with their order precomputed.

    ``above[i]`` is the set of indices j with ``polys[j]`` strictly
    preceding ``polys[i]`` (its graph lies higher).
    """

    def __init__(self, h: int, d: int):
        self.h, self.d = h, d
        self.polys = enumerate_nps(h, d)
        self.index = {p: i for i, p in enumerate(self.polys)}
        vals = [tuple(np_eval(p, x) for x in range(h + 1)) for p in self.polys]
        n = len(self.polys)
        self.above: list[frozenset[int]] = []
        for i in range(n):
            self.above.append(
                frozenset(
                    j for j in range(n) if j != i and all(a >= b for a, b in zip(vals[j], vals[i]))
                )
            )
        self.below = [frozenset(j for j in range(n) if i in self.above[j]) for i in range(n)]

    def is_saturated(self, zeta: NewtonPolygon, xi: NewtonPolygon) -> bool:
        i, j = self.index[xi], self.index[zeta]
        if j not in self.above[i]:
            raise PolygonError(f"{zeta} does not strictly precede {xi}")
        return not (self.above[i] & self.below[j])

    def covers_down(self, xi: NewtonPolygon) -> list[NewtonPolygon]:
        """Saturated zeta strictly above xi (upper covers in the graph sense)."""
        i = self.index[xi]
        return [self.polys[j] for j in sorted(self.above[i]) if not (self.above[i] & self.below[j])]


@lru_cache(maxsize=None)
def poset(h: int, d: int) -> PolygonPoset:
    return PolygonPoset(h, d)


def is_saturated(zeta: NewtonPolygon, xi: NewtonPolygon) -> bool:
    """No polygon eta with zeta strictly preceding eta strictly preceding xi."""
    _check_endpoints(zeta, xi)
    if not strictly_precedes(zeta, xi):
        raise PolygonError(f"{zeta} does not strictly precede {xi}")
    return poset(*xi.endpoint).is_saturated(zeta, xi)


def saturated_below(xi: NewtonPolygon) -> list[NewtonPolygon]:
    """All zeta such that zeta precedes xi and the pair is saturated."""
    return poset(*xi.endpoint).covers_down(xi)


# ---------------------------------------------------------------------------
# Minimal words
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def minimal_word(xi: NewtonPolygon) -> str:
    return direct_sum_all(s.word for s in xi.segments)


def two_segment_closed_form(m1: int, n1: int, m2: int, n2: int) -> str:
    """Minimal word of ``(m1,n1) + (m2,n2)`` when slope2 < 1/2 < slope1."""
    s1, s2 = Segment(m1, n1), Segment(m2, n2)
    if not s2.slope < Fraction(1, 2) < s1.slope:
        raise PolygonError(f"need slope2 < 1/2 < slope1 for {s1}+{s2}")
    return (
        "1" * m1 + "0" * (n1 - m1) + "1" * n2 + "0" * m1 + "1" * (m2 - n2) + "0" * n2
    )


# ---------------------------------------------------------------------------
# Lattice triangles
# ---------------------------------------------------------------------------


def cross(a: Sequence[int], b: Sequence[int]) -> int:
    return a[0] * b[1] - a[1] * b[0]


def lattice_interior_empty(a: Sequence[int], b: Sequence[int]) -> bool:
    """Scan the bounding box of the triangle (0, a, b) for interior lattice points."""
    det = cross(a, b)
    if det <= 0:
        raise PolygonError(f"<a,b> = {det} is not positive")
    xs = np.arange(min(0, a[0], b[0]), max(0, a[0], b[0]) + 1)
    ys = np.arange(min(0, a[1], b[1]), max(0, a[1], b[1]) + 1)
    px, py = np.meshgrid(xs, ys)
    # strictly left of 0->a, of a->b, and of b->0 (counter-clockwise orientation)
    inside = (
        (a[0] * py - a[1] * px > 0)
        & ((b[0] - a[0]) * (py - a[1]) - (b[1] - a[1]) * (px - a[0]) > 0)
        & (px * b[1] - py * b[0] > 0)
    )
    return not inside.any()
