"""Truncation of excursions and the normalisation loop built on it.

A truncation offset ``delta`` in (0, 1) places the cutting line m at
``tau = (2k + 1 +/- delta) |d|^2``: a fraction of the way from line k
towards the next P point on the excursion's side.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .config import (
    Configuration,
    Excursion,
    all_excursions,
    check_constraints,
    crossing_count,
    find_excursions,
)
from .paths import Number, PolyPath, RationalPoint, _interp, _norm, segment_intersection
from .regions import excursion_area


class BlockReason(str, enum.Enum):
    CONSTRAINT_I = "constraint (i)"
    CONSTRAINT_II = "constraint (ii)"
    CONSTRAINT_III = "constraint (iii)"
    CONSTRAINT_IV = "constraint (iv)"
    SELF_INTERSECTION = "self-intersection"
    NO_CUT_POINTS = "no cut points"


_BY_INDEX = [BlockReason.CONSTRAINT_I, BlockReason.CONSTRAINT_II,
             BlockReason.CONSTRAINT_III, BlockReason.CONSTRAINT_IV]


def _m_contacts(cfg: Configuration, poly: PolyPath, target: Number):
    """(path-distance, point) of every point of ``poly`` with tau == target."""
    vs, ps = poly.vertices, poly.params
    g = [cfg.tau(v) - target for v in vs]
    out = []
    for i, gi in enumerate(g):
        if gi == 0:
            out.append((ps[i], vs[i]))
    for i in range(len(vs) - 1):
        g0, g1 = g[i], g[i + 1]
        if g0 != 0 and g1 != 0 and (g0 > 0) != (g1 > 0):
            t = Fraction(g0) / (g0 - g1)
            out.append((_norm(ps[i] + (ps[i + 1] - ps[i]) * t), _interp(vs[i], vs[i + 1], t)))
    return sorted(out)


def cut_points(cfg: Configuration, which: str, e: Excursion, offset: Number):
    """Q'1 and Q'2 on line m, or None where m is not reached."""
    poly = cfg.path(which, 0)
    sign = 1 if e.side == "right" else -1
    target = (2 * e.k + 1 + sign * Fraction(offset)) * cfg.norm2
    hits = _m_contacts(cfg, poly, target)
    before = [h for h in hits if h[0] < e.d1]
    after = [h for h in hits if h[0] > e.d2]
    return (before[-1] if before else None), (after[0] if after else None)


def truncated_shape(cfg: Configuration, which: str, c1, c2) -> PolyPath:
    poly = cfg.path(which, 0)
    (d1, q1), (d2, q2) = c1, c2
    verts = [v for v, dv in zip(poly.vertices, poly.params) if dv < d1]
    verts.append(q1)
    if q2 != q1:
        verts.append(q2)
    verts += [v for v, dv in zip(poly.vertices, poly.params) if dv > d2]
    o = cfg.P(0)
    return PolyPath(tuple(RationalPoint(v[0] - o[0], v[1] - o[1]) for v in verts))


def _segment_meets_path(poly: PolyPath, a, b) -> bool:
    """Whether the new segment ab touches ``poly`` anywhere except its own joints."""
    if a == b:
        return False
    segs = list(poly.segments())
    me = next(i for i, s0, s1 in segs if (s0, s1) == (a, b))
    for j, c, d in segs:
        if j == me:
            continue
        hit = segment_intersection(a, b, c, d)
        if hit is None:
            continue
        if hit[0] == "point" and ((j == me - 1 and hit[1] == a) or (j == me + 1 and hit[1] == b)):
            continue
        return True
    return False


def truncate(cfg: Configuration, which: str, e: Excursion, offset: Number):
    """Truncate excursion ``e`` of A[0] or B[0]; a new Configuration or a BlockReason.

    The shape changes, so every translate of the path changes with it.
    """
    cfg.require_geometry()
    offset = Fraction(offset)
    if not 0 < offset < 1:
        raise ValueError(f"offset must lie strictly between 0 and 1, got {offset}")
    if which not in ("A", "B"):
        raise ValueError(f"path must be 'A' or 'B', got {which!r}")
    if e not in find_excursions(cfg, cfg.path(which, 0), e.k):
        raise ValueError(f"not an excursion of {which}[0]: {e}")
    c1, c2 = cut_points(cfg, which, e, offset)
    if c1 is None or c2 is None:
        return BlockReason.NO_CUT_POINTS
    new = cfg.with_shape(which, truncated_shape(cfg, which, c1, c2))
    if _segment_meets_path(new.path(which, 0), c1[1], c2[1]):
        return BlockReason.SELF_INTERSECTION
    before = check_constraints(cfg, exact=True).holds
    after = check_constraints(new, exact=True).holds
    for i in (1, 2, 3, 0):
        if before[i] and not after[i]:
            return _BY_INDEX[i]
    return new


@dataclass(frozen=True)
class Truncation:
    which: str
    excursion: Excursion
    offset: Fraction
    area: Number
    count_before: int
    count_after: int


@dataclass
class NormalForm:
    """Result of :func:`normalize`; unpacks as ``(A, B, trace)``."""

    config: Configuration
    trace: list[Truncation] = field(default_factory=list)
    scans: int = 0

    @property
    def shape_a(self) -> PolyPath:
        return self.config.shape_a

    @property
    def shape_b(self) -> PolyPath:
        return self.config.shape_b

    def __iter__(self):
        return iter((self.config.A(0), self.config.B(0), self.trace))


def offset_schedule(max_exp: int = 3) -> list[Fraction]:
    return [Fraction(1, 2 ** n) for n in range(1, max_exp + 1)]


def candidates(cfg: Configuration) -> list[tuple]:
    """Excursions of both paths in scan order: area, line, path-distance."""
    out = []
    for which in ("A", "B"):
        p = cfg.path(which, 0)
        for e in all_excursions(cfg, which):
            out.append((excursion_area(p, e), e.k, e.d1, e.d2, which, e))
    out.sort(key=lambda c: c[:5])
    return out


def normalize(cfg: Configuration, max_exp: int = 3, max_steps: int | None = None) -> NormalForm:
    """Truncate until no excursion of A[0] or B[0] admits a truncation.

    Offsets come from :func:`offset_schedule`; an excursion that blocks at
    every offset counts as untruncatable.
    """
    cfg.require_geometry()
    result = NormalForm(cfg)
    schedule = offset_schedule(max_exp)
    while max_steps is None or len(result.trace) < max_steps:
        result.scans += 1
        step = None
        for area, _, _, _, which, e in candidates(result.config):
            for off in schedule:
                out = truncate(result.config, which, e, off)
                if isinstance(out, Configuration):
                    step = (which, e, off, area, out)
                    break
            if step:
                break
        if step is None:
            break
        which, e, off, area, new = step
        result.trace.append(Truncation(
            which, e, off, area, crossing_count(result.config), crossing_count(new)))
        result.config = new
    return result
