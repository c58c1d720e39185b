"""Okounkov-body polygons with respect to a general flag.

Two independent routes produce the same polygon: summing scaled elementary
bodies of a Minkowski decomposition, and a direct parametric sweep that
tracks the positive part of d - t*C between breakpoints.  Within a segment
where the negative-part support is constant the positive part is affine in
t, so breakpoints are exact roots of affine (support change) or quadratic
(boundary of the effective cone) equations; nothing is sampled.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .decompose import Decomposition
from .errors import DomainError, InputError, InternalError
from .lattice import (
    DivClass,
    SurfaceModel,
    curve_rows,
    eff_facets,
    flag_row,
    intersect,
    pair_rows,
)
from .zariski import _augmented_support, zariski_decompose

Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class BodyPolygon:
    """Convex polygon with exact rational vertices, canonically ordered.

    Counterclockwise, starting at the bottom-most (then left-most) vertex;
    consecutive collinear vertices are removed, so equality of bodies is
    equality of vertex lists.  Degenerate cases: two vertices for a segment,
    one for a point.
    """

    vertices: tuple[Point, ...]

    @classmethod
    def from_cycle(cls, points: Sequence[Point]) -> "BodyPolygon":
        pts = [(Fraction(x), Fraction(y)) for x, y in points]
        dedup: list[Point] = []
        for p in pts:
            if not dedup or dedup[-1] != p:
                dedup.append(p)
        if len(dedup) > 1 and dedup[0] == dedup[-1]:
            dedup.pop()
        if not dedup:
            raise InputError("polygon needs at least one point")
        hull = _collapse_degenerate(dedup)
        if len(hull) > 2:
            twice = sum(
                hull[i][0] * hull[(i + 1) % len(hull)][1]
                - hull[(i + 1) % len(hull)][0] * hull[i][1]
                for i in range(len(hull))
            )
            if twice < 0:
                hull.reverse()
            hull = _strip_collinear(hull)
            start = min(range(len(hull)), key=lambda i: (hull[i][1], hull[i][0]))
            hull = hull[start:] + hull[:start]
        return cls(tuple(hull))

    def is_point(self) -> bool:
        return len(self.vertices) == 1

    def is_segment(self) -> bool:
        return len(self.vertices) == 2

    def edge_vectors(self) -> list[Point]:
        """Boundary edges in counterclockwise order; a segment contributes
        both directions, a point none."""
        v = self.vertices
        if len(v) == 1:
            return []
        if len(v) == 2:
            d = (v[1][0] - v[0][0], v[1][1] - v[0][1])
            return [d, (-d[0], -d[1])]
        return [
            (v[(i + 1) % len(v)][0] - v[i][0], v[(i + 1) % len(v)][1] - v[i][1])
            for i in range(len(v))
        ]

    def contains_point(self, p: Point) -> bool:
        x, y = Fraction(p[0]), Fraction(p[1])
        v = self.vertices
        if len(v) == 1:
            return (x, y) == v[0]
        if len(v) == 2:
            (x0, y0), (x1, y1) = v
            cross = (x1 - x0) * (y - y0) - (y1 - y0) * (x - x0)
            if cross != 0:
                return False
            t_num = (x - x0) * (x1 - x0) + (y - y0) * (y1 - y0)
            t_den = (x1 - x0) ** 2 + (y1 - y0) ** 2
            return 0 <= t_num <= t_den
        for i in range(len(v)):
            x0, y0 = v[i]
            x1, y1 = v[(i + 1) % len(v)]
            if (x1 - x0) * (y - y0) - (y1 - y0) * (x - x0) < 0:
                return False
        return True

    def contains(self, other: "BodyPolygon") -> bool:
        return all(self.contains_point(p) for p in other.vertices)


def _cross(a: Point, b: Point) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def _collapse_degenerate(pts: list[Point]) -> list[Point]:
    """Points/segments come out of sums and scaling; normalize them."""
    if len(pts) == 1:
        return pts
    p0 = pts[0]
    direction = next((p for p in pts[1:] if p != p0), None)
    if direction is None:
        return [p0]
    dvec = (direction[0] - p0[0], direction[1] - p0[1])
    if all(_cross(dvec, (p[0] - p0[0], p[1] - p0[1])) == 0 for p in pts):
        lo = min(pts, key=lambda p: (p[1], p[0]))
        hi = max(pts, key=lambda p: (p[1], p[0]))
        return [lo] if lo == hi else [lo, hi]
    return pts


def _strip_collinear(cycle: list[Point]) -> list[Point]:
    out: list[Point] = []
    n = len(cycle)
    for i in range(n):
        prev, cur, nxt = cycle[i - 1], cycle[i], cycle[(i + 1) % n]
        a = (cur[0] - prev[0], cur[1] - prev[1])
        b = (nxt[0] - cur[0], nxt[1] - cur[1])
        if _cross(a, b) != 0:
            out.append(cur)
    return out if out else [cycle[0]]


@dataclass(frozen=True)
class SimplexSpec:
    """Elementary body Delta(height, length): a right triangle with legs on
    the axes, degenerating to a vertical segment when length is zero."""

    height: Fraction
    length: Fraction

    def __post_init__(self):
        object.__setattr__(self, "height", Fraction(self.height))
        object.__setattr__(self, "length", Fraction(self.length))
        if self.height < 0 or self.length < 0:
            raise InputError("simplex height and length must be nonnegative")


def simplex_body(spec: SimplexSpec) -> BodyPolygon:
    z = Fraction(0)
    if spec.length == 0 and spec.height == 0:
        return BodyPolygon.from_cycle([(z, z)])
    if spec.length == 0:
        return BodyPolygon.from_cycle([(z, z), (z, spec.height)])
    if spec.height == 0:
        return BodyPolygon.from_cycle([(z, z), (spec.length, z)])
    return BodyPolygon.from_cycle([(z, z), (spec.length, z), (z, spec.height)])


def scale(a: BodyPolygon, c: int | Fraction) -> BodyPolygon:
    c = Fraction(c)
    if c < 0:
        raise InputError("polygon scaling factor must be nonnegative")
    if c == 0:
        return BodyPolygon.from_cycle([(Fraction(0), Fraction(0))])
    return BodyPolygon.from_cycle([(c * x, c * y) for x, y in a.vertices])


def _edge_sort_key(v: Point):
    # total angular order on directions in [0, 2*pi), exact
    upper = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
    return upper


def minkowski_sum(a: BodyPolygon, b: BodyPolygon) -> BodyPolygon:
    """Exact Minkowski sum by merging edge vectors in angular order."""
    start_a = min(a.vertices, key=lambda p: (p[1], p[0]))
    start_b = min(b.vertices, key=lambda p: (p[1], p[0]))
    edges = a.edge_vectors() + b.edge_vectors()
    if not edges:
        return BodyPolygon.from_cycle([(start_a[0] + start_b[0], start_a[1] + start_b[1])])

    def cmp(u: Point, v: Point) -> int:
        hu, hv = _edge_sort_key(u), _edge_sort_key(v)
        if hu != hv:
            return -1 if hu < hv else 1
        c = _cross(u, v)
        if c > 0:
            return -1
        if c < 0:
            return 1
        return 0

    edges.sort(key=functools.cmp_to_key(cmp))
    merged: list[Point] = []
    for e in edges:
        if merged and cmp(merged[-1], e) == 0:
            merged[-1] = (merged[-1][0] + e[0], merged[-1][1] + e[1])
        else:
            merged.append(e)
    cycle: list[Point] = [(start_a[0] + start_b[0], start_a[1] + start_b[1])]
    for e in merged:
        last = cycle[-1]
        cycle.append((last[0] + e[0], last[1] + e[1]))
    if cycle[0] != cycle[-1]:
        raise InternalError("edge merge did not close the polygon")
    return BodyPolygon.from_cycle(cycle[:-1])


def area(a: BodyPolygon) -> Fraction:
    """Exact shoelace area (zero for segments and points)."""
    v = a.vertices
    if len(v) < 3:
        return Fraction(0)
    twice = Fraction(0)
    for i in range(len(v)):
        x0, y0 = v[i]
        x1, y1 = v[(i + 1) % len(v)]
        twice += x0 * y1 - x1 * y0
    if twice < 0:
        raise InternalError("polygon vertices are not counterclockwise")
    return twice / 2


def body_from_decomposition(dec: Decomposition) -> BodyPolygon:
    """Minkowski sum of the scaled elementary bodies of the terms."""
    total = BodyPolygon.from_cycle([(Fraction(0), Fraction(0))])
    for weight, element in dec.terms:
        piece = scale(simplex_body(SimplexSpec(element.height, element.length)), weight)
        total = minkowski_sum(total, piece)
    return total


# --------------------------------------------------------------------------
# direct computation
# --------------------------------------------------------------------------


def mu(s: SurfaceModel, d: DivClass) -> Fraction:
    """Largest t with d - t*C still pseudo-effective (facet-ratio formula)."""
    facets, lin = eff_facets(s)
    c = s.flag_curve
    d_vals = [sum(f[i] * d.nums[i] for i in range(s.rank)) for f in facets]
    if any(v < 0 for v in d_vals) or any(
        sum(l[i] * d.nums[i] for i in range(s.rank)) != 0 for l in lin
    ):
        raise DomainError("mu is only defined for pseudo-effective classes")
    best: Optional[Fraction] = None
    for f, dv in zip(facets, d_vals):
        cv = sum(f[i] * c.nums[i] for i in range(s.rank))
        if cv > 0:
            ratio = Fraction(dv * c.den, cv * d.den)
            if best is None or ratio < best:
                best = ratio
    if best is None:
        raise InternalError("flag curve pairs zero with every facet; model degenerate")
    return best


def _exact_sqrt(f: Fraction) -> Optional[Fraction]:
    if f < 0:
        return None
    num, den = f.numerator, f.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def _boundary_step(
    s: SurfaceModel, p0: DivClass, p1: DivClass
) -> tuple[Optional[Fraction], bool]:
    """Smallest delta > 0 with (p0 + delta*p1)^2 = 0.

    Returns (delta, irrational_flag).  An irrational root means the
    effective boundary is not reached inside the current support segment,
    so a support change must occur first.
    """
    a = intersect(s, p1, p1)
    b = 2 * intersect(s, p0, p1)
    c = intersect(s, p0, p0)
    if a == 0:
        if b < 0:
            return -c / b, False
        return None, False
    disc = b * b - 4 * a * c
    if disc < 0:
        return None, False
    root = _exact_sqrt(disc)
    if root is None:
        return None, True
    candidates = sorted(((-b - root) / (2 * a), (-b + root) / (2 * a)))
    for t in candidates:
        if t > 0:
            return t, False
    return None, False


def body_direct(s: SurfaceModel, d: DivClass) -> BodyPolygon:
    """The Okounkov body by sweeping t from 0 to mu_C(d).

    Independent of the decomposition route: only the Zariski support loop is
    shared.  Big non-nef classes are replaced by their positive part (their
    bodies agree for a general flag); nef classes of square zero give the
    vertical segment of length C.d.
    """
    pair = zariski_decompose(s, d)
    p = pair.positive
    zero = Fraction(0)
    if p.is_zero():
        return BodyPolygon.from_cycle([(zero, zero)])
    if intersect(s, p, p) == 0:
        return simplex_body(SimplexSpec(intersect(s, s.flag_curve, p), zero))

    c = s.flag_curve
    t = Fraction(0)
    beta0 = intersect(s, c, p)
    breakpoints: list[Point] = [(t, beta0)]
    current = p
    rows = curve_rows(s)
    for _ in range(len(s.negative_curves) + 2):
        support, _, _, p0, p1 = _augmented_support(s, current, -c)
        delta_boundary, irrational = _boundary_step(s, p0, p1)
        delta_entry: Optional[Fraction] = None
        v0 = pair_rows(rows, p0)
        v1 = pair_rows(rows, p1)
        in_support = set(support)
        for j in range(len(rows)):
            if j in in_support or v1[j] >= 0:
                continue
            cand = Fraction(-v0[j] * p1.den, v1[j] * p0.den)
            if cand <= 0:
                raise InternalError("support segment of nonpositive width")
            if delta_entry is None or cand < delta_entry:
                delta_entry = cand
        if delta_boundary is not None and (
            delta_entry is None or delta_boundary <= delta_entry
        ):
            t_end = t + delta_boundary
            breakpoints.append(
                (t_end, intersect(s, c, p0) + delta_boundary * intersect(s, c, p1))
            )
            return _polygon_from_breakpoints(breakpoints)
        if delta_entry is None:
            raise InternalError(
                "sweep found neither a support change nor the effective boundary"
            )
        if irrational and intersect(
            s, p0 + delta_entry * p1, p0 + delta_entry * p1
        ) <= 0:
            raise InternalError("effective boundary passed at an irrational point")
        t = t + delta_entry
        breakpoints.append(
            (t, intersect(s, c, p0) + delta_entry * intersect(s, c, p1))
        )
        current = current - delta_entry * c
    raise InternalError("sweep failed to terminate")


def _polygon_from_breakpoints(breakpoints: list[Point]) -> BodyPolygon:
    zero = Fraction(0)
    mu_val, beta_end = breakpoints[-1]
    if mu_val <= 0:
        raise InternalError("big class with zero sweep width")
    cycle: list[Point] = [(zero, zero), (mu_val, zero)]
    if beta_end > 0:
        cycle.append((mu_val, beta_end))
    for x, y in reversed(breakpoints[:-1]):
        cycle.append((x, y))
    return BodyPolygon.from_cycle(cycle)
