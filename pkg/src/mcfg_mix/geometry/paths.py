"""Exact lattice paths and rational polylines.

Coordinates are ``int`` or :class:`fractions.Fraction`; nothing here ever
touches floating point.  Path-distance is measured in the L1 metric, which
coincides with Euclidean length on the axis-parallel unit steps of lattice
paths and keeps every distance rational after truncation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, NamedTuple, Union

from ..language import STEP, check_o2

Number = Union[int, Fraction]


class RationalPoint(NamedTuple):
    x: Number
    y: Number

    def __add__(self, other):  # type: ignore[override]
        return RationalPoint(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return RationalPoint(self.x - other[0], self.y - other[1])

    def scale(self, k: Number) -> "RationalPoint":
        return RationalPoint(self.x * k, self.y * k)

    def __repr__(self):
        return f"({_fmt(self.x)}, {_fmt(self.y)})"


LatticePoint = RationalPoint
ORIGIN = RationalPoint(0, 0)


def _fmt(v: Number) -> str:
    if isinstance(v, Fraction) and v.denominator != 1:
        return f"{v.numerator}/{v.denominator}"
    return str(int(v))


def _norm(v: Number) -> Number:
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


def point(x, y) -> RationalPoint:
    """Exact point from ints, Fractions or decimal strings such as ``"3.3"``."""
    if isinstance(x, float) or isinstance(y, float):
        raise TypeError("floats are not exact; pass a str or Fraction")
    return RationalPoint(_norm(Fraction(x)), _norm(Fraction(y)))


def cross(o, a, b) -> Number:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def l1(p, q) -> Number:
    return abs(p[0] - q[0]) + abs(p[1] - q[1])


@dataclass(frozen=True)
class PolyPath:
    """A polyline with exact vertices; ``params[i]`` is the path-distance of vertex i."""

    vertices: tuple[RationalPoint, ...]

    def __post_init__(self):
        if not self.vertices:
            raise ValueError("a path has at least one vertex")
        object.__setattr__(
            self, "vertices", tuple(RationalPoint(_norm(v[0]), _norm(v[1])) for v in self.vertices)
        )
        for a, b in zip(self.vertices, self.vertices[1:]):
            if a == b:
                raise ValueError(f"repeated consecutive vertex {a}")

    @cached_property
    def params(self) -> tuple[Number, ...]:
        out = [0]
        for a, b in zip(self.vertices, self.vertices[1:]):
            out.append(out[-1] + l1(a, b))
        return tuple(out)

    @property
    def start(self) -> RationalPoint:
        return self.vertices[0]

    @property
    def end(self) -> RationalPoint:
        return self.vertices[-1]

    @property
    def length(self) -> Number:
        return self.params[-1]

    def segments(self) -> Iterator[tuple[int, RationalPoint, RationalPoint]]:
        for i in range(len(self.vertices) - 1):
            yield i, self.vertices[i], self.vertices[i + 1]

    def translate(self, offset) -> "PolyPath":
        return PolyPath(tuple(v + offset for v in self.vertices))

    def point_at(self, d: Number) -> RationalPoint:
        """Point at path-distance ``d``."""
        if not 0 <= d <= self.length:
            raise ValueError(f"distance {d} outside [0, {self.length}]")
        ps = self.params
        for i in range(len(ps) - 1):
            if ps[i] <= d <= ps[i + 1]:
                return _interp(self.vertices[i], self.vertices[i + 1], Fraction(d - ps[i], ps[i + 1] - ps[i]))
        return self.vertices[0]

    def is_closed(self) -> bool:
        return self.start == self.end


def _interp(a, b, t: Number) -> RationalPoint:
    if t == 0:
        return RationalPoint(*a)
    if t == 1:
        return RationalPoint(*b)
    return RationalPoint(_norm(a[0] + (b[0] - a[0]) * t), _norm(a[1] + (b[1] - a[1]) * t))


@dataclass(frozen=True)
class LatticePath:
    """Path of a string over the O2 alphabet, one unit step per symbol."""

    start: RationalPoint
    steps: str
    points: tuple[RationalPoint, ...] = field(init=False, repr=False)

    def __post_init__(self):
        check_o2(self.steps)
        x, y = self.start
        pts = [RationalPoint(x, y)]
        for c in self.steps:
            dx, dy = STEP[c]
            x, y = x + dx, y + dy
            pts.append(RationalPoint(x, y))
        object.__setattr__(self, "start", RationalPoint(*self.start))
        object.__setattr__(self, "points", tuple(pts))

    @property
    def end(self) -> RationalPoint:
        return self.points[-1]

    @property
    def length(self) -> int:
        return len(self.steps)

    def to_poly(self) -> PolyPath:
        return PolyPath(self.points)


Path = Union[LatticePath, PolyPath]


def as_poly(p: Path) -> PolyPath:
    return p.to_poly() if isinstance(p, LatticePath) else p


def path_of(w: str, start=ORIGIN) -> LatticePath:
    return LatticePath(RationalPoint(*start), w)


def is_closed(p: Path) -> bool:
    return as_poly(p).is_closed()


def on_segment(q, a, b) -> bool:
    if cross(a, b, q) != 0:
        return False
    return min(a[0], b[0]) <= q[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= q[1] <= max(a[1], b[1])


def path_distances_at(p: Path, q) -> list[Number]:
    """Every path-distance at which ``p`` passes through ``q``, ascending."""
    poly = as_poly(p)
    q = RationalPoint(_norm(Fraction(q[0])), _norm(Fraction(q[1])))
    if len(poly.vertices) == 1:
        return [0] if poly.start == q else []
    out = set()
    ps = poly.params
    for i, a, b in poly.segments():
        if on_segment(q, a, b):
            out.add(_norm(Fraction(ps[i] + l1(a, q))))
    return sorted(out)


def subpath(p: Path, d1: Number, d2: Number) -> PolyPath:
    """Portion of ``p`` between path-distances d1 <= d2, re-based to start at 0."""
    poly = as_poly(p)
    if not 0 <= d1 <= d2 <= poly.length:
        raise ValueError(f"need 0 <= {d1} <= {d2} <= {poly.length}")
    verts = [poly.point_at(d1)]
    for v, dv in zip(poly.vertices, poly.params):
        if d1 < dv < d2:
            verts.append(v)
    last = poly.point_at(d2)
    if last != verts[-1]:
        verts.append(last)
    return PolyPath(tuple(verts))


# ---------------------------------------------------------------------------
# intersections


@dataclass(frozen=True)
class Contact:
    """Common part of two paths: a point, or a collinear overlap piece.

    ``d1``/``d2`` are path-distances on the first/second path at ``q``; for
    an overlap, ``q_end`` with ``d1_end``/``d2_end`` is the other end.
    """

    q: RationalPoint
    d1: Number
    d2: Number
    overlap: bool = False
    q_end: RationalPoint | None = None
    d1_end: Number | None = None
    d2_end: Number | None = None

    def endpoints(self) -> list[tuple[RationalPoint, Number, Number]]:
        out = [(self.q, self.d1, self.d2)]
        if self.overlap:
            out.append((self.q_end, self.d1_end, self.d2_end))
        return out


def _param_on(a, b, q) -> Fraction:
    """Fraction t with q = a + t (b - a), assuming q lies on the segment."""
    if b[0] != a[0]:
        return Fraction(q[0] - a[0]) / (b[0] - a[0])
    return Fraction(q[1] - a[1]) / (b[1] - a[1])


def segment_intersection(a, b, c, d):
    """Intersection of segments ab and cd.

    Returns None, ``("point", q, t, u)`` or ``("overlap", (q0, t0, u0), (q1, t1, u1))``
    where t and u are fractions along ab and cd.
    """
    if max(a[0], b[0]) < min(c[0], d[0]) or max(c[0], d[0]) < min(a[0], b[0]):
        return None
    if max(a[1], b[1]) < min(c[1], d[1]) or max(c[1], d[1]) < min(a[1], b[1]):
        return None
    d1 = cross(c, d, a)
    d2 = cross(c, d, b)
    d3 = cross(a, b, c)
    d4 = cross(a, b, d)
    rx, ry = b[0] - a[0], b[1] - a[1]
    sx, sy = d[0] - c[0], d[1] - c[1]
    denom = rx * sy - ry * sx
    if denom != 0:
        if (d1 > 0 and d2 > 0) or (d1 < 0 and d2 < 0) or (d3 > 0 and d4 > 0) or (d3 < 0 and d4 < 0):
            return None
        t = Fraction((c[0] - a[0]) * sy - (c[1] - a[1]) * sx) / denom
        u = Fraction((c[0] - a[0]) * ry - (c[1] - a[1]) * rx) / denom
        return ("point", _interp(a, b, t), t, u)
    if d3 != 0:
        return None
    # collinear: project onto ab
    rr = rx * rx + ry * ry
    tc = Fraction((c[0] - a[0]) * rx + (c[1] - a[1]) * ry) / rr
    td = Fraction((d[0] - a[0]) * rx + (d[1] - a[1]) * ry) / rr
    lo, hi = max(Fraction(0), min(tc, td)), min(Fraction(1), max(tc, td))
    if lo > hi:
        return None
    q0, q1 = _interp(a, b, lo), _interp(a, b, hi)
    u0, u1 = _param_on(c, d, q0), _param_on(c, d, q1)
    if lo == hi:
        return ("point", q0, lo, u0)
    return ("overlap", (q0, lo, u0), (q1, hi, u1))


def _dist(poly: PolyPath, i: int, t) -> Number:
    ps = poly.params
    return _norm(Fraction(ps[i] + (ps[i + 1] - ps[i]) * t))


def intersections(p1: Path, p2: Path) -> list[Contact]:
    """All common points of two paths with their path-distances on both."""
    a, b = as_poly(p1), as_poly(p2)
    if len(a.vertices) == 1 or len(b.vertices) == 1:
        single, other, flip = (a, b, False) if len(a.vertices) == 1 else (b, a, True)
        out = []
        for d in path_distances_at(other, single.start):
            out.append(Contact(single.start, d, 0) if flip else Contact(single.start, 0, d))
        return out
    seen_pts = set()
    seen_ov = set()
    out = []
    for i, s0, s1 in a.segments():
        for j, t0, t1 in b.segments():
            hit = segment_intersection(s0, s1, t0, t1)
            if hit is None:
                continue
            if hit[0] == "point":
                _, q, t, u = hit
                key = (q, _dist(a, i, t), _dist(b, j, u))
                if key not in seen_pts:
                    seen_pts.add(key)
                    out.append(Contact(*key))
            else:
                (q0, t0_, u0), (q1, t1_, u1) = hit[1], hit[2]
                key = (q0, q1, _dist(a, i, t0_), _dist(a, i, t1_), _dist(b, j, u0), _dist(b, j, u1))
                if key in seen_ov:
                    continue
                seen_ov.add(key)
                out.append(Contact(
                    q0, _dist(a, i, t0_), _dist(b, j, u0), True,
                    q1, _dist(a, i, t1_), _dist(b, j, u1),
                ))
    # drop point contacts that are endpoints of a reported overlap
    ends = {(e[0], e[1], e[2]) for c in out if c.overlap for e in c.endpoints()}
    return [c for c in out if c.overlap or (c.q, c.d1, c.d2) not in ends]


def intersection_points(p1: Path, p2: Path) -> set[tuple[RationalPoint, Number, Number]]:
    """Set of ``(Q, d_on_p1, d_on_p2)``; overlaps contribute their endpoints."""
    return {e for c in intersections(p1, p2) for e in c.endpoints()}


def self_intersections(p: Path) -> set[RationalPoint]:
    """Points where the path meets itself other than at consecutive-segment joints."""
    poly = as_poly(p)
    segs = list(poly.segments())
    out = set()
    for i, a0, a1 in segs:
        for j, b0, b1 in segs[i + 1:]:
            hit = segment_intersection(a0, a1, b0, b1)
            if hit is None:
                continue
            if hit[0] == "point":
                q = hit[1]
                if j == i + 1 and q == a1:
                    continue
                out.add(q)
            else:
                out.add(hit[1][0])
                out.add(hit[2][0])
    return out
