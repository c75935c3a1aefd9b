"""Regions enclosed by an excursion and its closing segment.

The subpath between the excursion's end points and the segment joining them
are cut at every mutual intersection into a planar graph; its bounded faces
are the regions.  Overlapping lobes therefore add up instead of cancelling
as they would under a signed shoelace sum.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cmp_to_key

from .config import Configuration, Excursion
from .paths import Number, PolyPath, RationalPoint, _interp, _param_on, as_poly, on_segment, segment_intersection, subpath


def shoelace(vertices) -> Number:
    """Signed area of a closed polygon given without its repeated first vertex."""
    n = len(vertices)
    s = 0
    for i in range(n):
        x0, y0 = vertices[i]
        x1, y1 = vertices[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return Fraction(s) / 2


def excursion_curve(p, e: Excursion) -> list[tuple[RationalPoint, RationalPoint]]:
    """Edges of sub(Q1, Q2) followed by seg(Q2, Q1)."""
    sub = subpath(as_poly(p), e.d1, e.d2)
    edges = [(a, b) for _, a, b in sub.segments()]
    if sub.end != sub.start:
        edges.append((sub.end, sub.start))
    return edges


def _split_edges(edges):
    cuts = [{Fraction(0), Fraction(1)} for _ in edges]
    for i, (a, b) in enumerate(edges):
        for j in range(i + 1, len(edges)):
            c, d = edges[j]
            hit = segment_intersection(a, b, c, d)
            if hit is None:
                continue
            if hit[0] == "point":
                cuts[i].add(hit[2])
                cuts[j].add(hit[3])
            else:
                for q, t, u in hit[1:]:
                    cuts[i].add(t)
                    cuts[j].add(u)
    out = set()
    for (a, b), ts in zip(edges, cuts):
        pts = [_interp(a, b, t) for t in sorted(ts)]
        for u, v in zip(pts, pts[1:]):
            if u != v:
                out.add((u, v) if u < v else (v, u))
    return out


def _half(v) -> int:
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def _ccw_cmp(u, v) -> int:
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu - hv
    c = u[0] * v[1] - u[1] * v[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def faces(edges) -> list[list[RationalPoint]]:
    """Bounded faces of the arrangement of ``edges``, as CCW vertex cycles."""
    und = _split_edges(list(edges))
    nbrs: dict = {}
    for u, v in und:
        nbrs.setdefault(u, []).append(v)
        nbrs.setdefault(v, []).append(u)
    order = {}
    for v, ns in nbrs.items():
        ns.sort(key=cmp_to_key(lambda a, b, v=v: _ccw_cmp((a[0] - v[0], a[1] - v[1]), (b[0] - v[0], b[1] - v[1]))))
        order[v] = {n: i for i, n in enumerate(ns)}
    seen = set()
    out = []
    for u, v in sorted(und) + sorted((v, u) for u, v in und):
        if (u, v) in seen:
            continue
        cycle = []
        a, b = u, v
        while (a, b) not in seen:
            seen.add((a, b))
            cycle.append(a)
            ns = nbrs[b]
            # next edge: first clockwise from the reversed edge b->a
            w = ns[(order[b][a] - 1) % len(ns)]
            a, b = b, w
        if shoelace(cycle) > 0:
            out.append(cycle)
    return out


def excursion_area(p, e: Excursion) -> Number:
    if e.zero_area:
        return 0
    total = sum((shoelace(f) for f in faces(excursion_curve(p, e))), Fraction(0))
    return total.numerator if total.denominator == 1 else total


def _strictly_inside(q, cycle) -> bool:
    inside = False
    n = len(cycle)
    for i in range(n):
        a, b = cycle[i], cycle[(i + 1) % n]
        if (a[1] > q[1]) != (b[1] > q[1]):
            x = a[0] + Fraction(q[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
            if x > q[0]:
                inside = not inside
    return inside


def is_filled(p, e: Excursion, cfg: Configuration) -> bool:
    """True iff some P[k'] lies strictly inside one of the excursion's regions."""
    if e.zero_area:
        return False
    edges = excursion_curve(p, e)
    taus = [cfg.tau(a) for a, _ in edges]
    n2 = cfg.norm2
    lo = math.ceil(Fraction(min(taus)) / (2 * n2))
    hi = math.floor(Fraction(max(taus)) / (2 * n2))
    fs = None
    for k in range(lo, hi + 1):
        q = cfg.P(k)
        if any(on_segment(q, a, b) for a, b in edges):
            continue
        if fs is None:
            fs = faces(edges)
        if any(_strictly_inside(q, f) for f in fs):
            return True
    return False
