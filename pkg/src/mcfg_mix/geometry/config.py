"""Configurations of two paths, the lines between the points P[k], and the
four constraints whose violations license a split.

Line ``k`` is the perpendicular bisector of P[k] and P[k+1].  With
``tau(Q) = 2 (Q - P[0]) . d`` a point lies on line k iff
``tau(Q) == (2k + 1) |d|^2``; larger tau is "right" (towards P[k+1]).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from ..language import COMPLEMENT, STEP, Displacement, displacement, has_balanced_substring
from .paths import (
    ORIGIN,
    Number,
    PolyPath,
    RationalPoint,
    _interp,
    _norm,
    as_poly,
    intersections,
    path_of,
)

Side = Literal["right", "left"]


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class Configuration:
    """Shapes of the two paths, drawn from the origin, plus the displacement.

    ``shape_a`` runs from (0, 0) to d and ``shape_b`` from (0, 0) to -d; the
    path A[k] is ``shape_a`` translated to P[k] = origin + k d, and likewise
    B[k].  ``x``/``y`` hold the source strings while the shapes are still
    lattice paths of them.
    """

    shape_a: PolyPath
    shape_b: PolyPath
    d: Displacement
    origin: RationalPoint = ORIGIN
    x: str | None = None
    y: str | None = None

    @classmethod
    def from_strings(cls, x: str, y: str, origin=ORIGIN) -> "Configuration":
        d = displacement(x)
        if displacement(y) != -d:
            raise GeometryError(f"x y is not closed: {x!r} {y!r}")
        return cls(path_of(x).to_poly(), path_of(y).to_poly(), d, RationalPoint(*origin), x, y)

    @classmethod
    def from_shapes(cls, shape_a, shape_b, origin=ORIGIN) -> "Configuration":
        a, b = PolyPath(tuple(shape_a)), PolyPath(tuple(shape_b))
        if a.start != ORIGIN or b.start != ORIGIN:
            raise GeometryError("shapes start at (0, 0)")
        if a.end != RationalPoint(-b.end[0], -b.end[1]):
            raise GeometryError("shape ends must be opposite")
        end = a.end
        if any(isinstance(v, Fraction) for v in end):
            raise GeometryError("displacement must be integral")
        return cls(a, b, Displacement(int(end[0]), int(end[1])), RationalPoint(*origin))

    @property
    def is_lattice(self) -> bool:
        return self.x is not None

    @property
    def norm2(self) -> int:
        return self.d.i * self.d.i + self.d.j * self.d.j

    def P(self, k: int) -> RationalPoint:
        return RationalPoint(self.origin[0] + k * self.d.i, self.origin[1] + k * self.d.j)

    def A(self, k: int) -> PolyPath:
        return self.shape_a.translate(self.P(k))

    def B(self, k: int) -> PolyPath:
        return self.shape_b.translate(self.P(k))

    def path(self, which: str, k: int = 0) -> PolyPath:
        return self.A(k) if which == "A" else self.B(k)

    def shape(self, which: str) -> PolyPath:
        return self.shape_a if which == "A" else self.shape_b

    def with_shape(self, which: str, shape: PolyPath) -> "Configuration":
        if which == "A":
            return Configuration(shape, self.shape_b, self.d, self.origin)
        return Configuration(self.shape_a, shape, self.d, self.origin)

    def tau(self, q) -> Number:
        return 2 * ((q[0] - self.origin[0]) * self.d.i + (q[1] - self.origin[1]) * self.d.j)

    def line_value(self, q, k: int) -> Number:
        """Signed value; zero on line k, positive on its right."""
        return self.tau(q) - (2 * k + 1) * self.norm2

    def on_line(self, q, k: int) -> bool:
        return self.line_value(q, k) == 0

    def require_geometry(self) -> None:
        if self.d.is_zero:
            raise GeometryError("displacement (0, 0): lines are undefined")


def line_range(cfg: Configuration, poly: PolyPath) -> range:
    """Indices k of the lines that the path can touch."""
    taus = [cfg.tau(v) for v in poly.vertices]
    n2 = cfg.norm2
    lo = math.ceil((Fraction(min(taus)) / n2 - 1) / 2)
    hi = math.floor((Fraction(max(taus)) / n2 - 1) / 2)
    return range(lo, hi + 1)


# ---------------------------------------------------------------------------
# crossings


@dataclass(frozen=True)
class Crossing:
    """A maximal contact of a path with line k.

    ``before``/``after`` are +1 (right), -1 (left) or 0 when the contact
    touches a path end.  The contact is a crossing when the sides differ and
    a touch when they agree.
    """

    k: int
    entry: RationalPoint
    exit: RationalPoint
    d_entry: Number
    d_exit: Number
    before: int
    after: int

    @property
    def is_crossing(self) -> bool:
        return self.before != 0 and self.after != 0 and self.before != self.after

    @property
    def is_touch(self) -> bool:
        return self.before != 0 and self.before == self.after

    @property
    def direction(self) -> str | None:
        if not self.is_crossing:
            return None
        return "right_to_left" if self.before > 0 else "left_to_right"


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def contacts_with_line(cfg: Configuration, p, k: int) -> list[Crossing]:
    """All maximal contacts of path ``p`` with line k, in path order."""
    poly = as_poly(p)
    vs, ps = poly.vertices, poly.params
    g = [cfg.line_value(v, k) for v in vs]
    out: list[Crossing] = []
    n = len(vs)
    i = 0
    # walk vertices; an open contact is (entry point, entry d, before side)
    open_c = None
    if g[0] == 0:
        open_c = (vs[0], ps[0], 0)
    for i in range(n - 1):
        g0, g1 = g[i], g[i + 1]
        if open_c is not None:
            if g1 == 0:
                continue  # contact continues along a segment on the line
            out.append(Crossing(k, open_c[0], vs[i], open_c[1], ps[i], open_c[2], _sign(g1)))
            open_c = None
            # fall through: segment leaves the line, no interior zero
            continue
        if g1 == 0:
            open_c = (vs[i + 1], ps[i + 1], _sign(g0))
        elif (g0 > 0) != (g1 > 0):
            t = Fraction(g0) / (g0 - g1)
            q = _interp(vs[i], vs[i + 1], t)
            d = _norm(Fraction(ps[i] + (ps[i + 1] - ps[i]) * t))
            out.append(Crossing(k, q, q, d, d, _sign(g0), _sign(g1)))
    if open_c is not None:
        out.append(Crossing(k, open_c[0], vs[-1], open_c[1], ps[-1], open_c[2], 0))
    return out


def crossings_of_line(cfg: Configuration, p, k: int) -> list[Crossing]:
    cfg.require_geometry()
    return [c for c in contacts_with_line(cfg, p, k) if c.is_crossing]


# ---------------------------------------------------------------------------
# excursions


@dataclass(frozen=True)
class Excursion:
    k: int
    side: Side
    q1: RationalPoint
    q2: RationalPoint
    d1: Number
    d2: Number
    zero_area: bool = False

    def sort_key(self):
        return (self.k, self.d1, self.d2)


def find_excursions(cfg: Configuration, p, k: int) -> list[Excursion]:
    """Excursions of ``p`` at line k, nested ones included.

    Every pair of crossings (earlier leaving a side, later returning to it)
    is an excursion from that side; a touch is a zero-area excursion on its
    own.
    """
    cfg.require_geometry()
    cs = contacts_with_line(cfg, p, k)
    out = []
    for a, c1 in enumerate(cs):
        if c1.is_touch:
            out.append(Excursion(k, "right" if c1.before > 0 else "left",
                                 c1.entry, c1.exit, c1.d_entry, c1.d_exit, True))
            continue
        if not c1.is_crossing:
            continue
        for c2 in cs[a + 1:]:
            if c2.is_crossing and c2.after == c1.before:
                out.append(Excursion(k, "right" if c1.before > 0 else "left",
                                     c1.entry, c2.exit, c1.d_entry, c2.d_exit))
    return out


def all_excursions(cfg: Configuration, which: str) -> list[Excursion]:
    """Excursions of A[0] (``which='A'``) or B[0] at every line they reach."""
    p = cfg.path(which, 0)
    out = []
    for k in line_range(cfg, p):
        out += find_excursions(cfg, p, k)
    return out


def crossing_count(cfg: Configuration) -> int:
    """Total contact weight of A[0] and B[0] over all lines.

    A crossing weighs 1 and a touch 2 (a coincident leave-and-return pair),
    so every truncation lowers the total by at least 2.
    """
    total = 0
    for which in ("A", "B"):
        p = cfg.path(which, 0)
        for k in line_range(cfg, p):
            for c in contacts_with_line(cfg, p, k):
                total += 1 if c.is_crossing else 2 if c.is_touch else 0
    return total


# ---------------------------------------------------------------------------
# constraints and split conditions


@dataclass(frozen=True)
class SplitWitness:
    """A violated constraint, read as a licence to split.

    ``condition`` is 1..4; ``distances`` is keyed by path name, e.g.
    ``{"A0": 6, "A1": 1}``.
    """

    condition: int
    point: RationalPoint | None
    distances: dict = field(default_factory=dict, compare=False)

    def sort_key(self):
        return (self.condition, *self.distances.values())


@dataclass(frozen=True)
class ConstraintReport:
    holds: tuple[bool, bool, bool, bool]
    witnesses: tuple[SplitWitness | None, ...]

    @property
    def all_hold(self) -> bool:
        return all(self.holds)

    def violated(self) -> list[int]:
        return [i + 1 for i, h in enumerate(self.holds) if not h]


def _first_dir(poly: PolyPath):
    a, b = poly.vertices[0], poly.vertices[1]
    return (b[0] - a[0], b[1] - a[1])


def _opposite(u, v) -> bool:
    return u[0] * v[1] - u[1] * v[0] == 0 and u[0] * v[0] + u[1] * v[1] < 0


def _best(cands):
    return min(cands, key=lambda w: tuple(w.distances.values())) if cands else None


def _pair_witnesses(contacts, excluded, cond, names, strict: bool):
    """Candidate witnesses over contacts of two paths.

    ``strict`` asks for d1 > d2 (conditions 3 and 4); otherwise any common
    point outside ``excluded`` counts (condition 2).
    """
    out = []

    def ok(q, d1, d2):
        return q not in excluded and (not strict or d1 > d2)

    for c in contacts:
        for q, d1, d2 in c.endpoints():
            if ok(q, d1, d2):
                out.append(SplitWitness(cond, q, {names[0]: d1, names[1]: d2}))
        if c.overlap:
            # interior points: d1 - d2 is linear along the piece
            f0, f1 = c.d1 - c.d2, c.d1_end - c.d2_end
            if strict and max(f0, f1) <= 0:
                continue
            if strict:
                hi, lo = (f0, f1) if f0 >= f1 else (f1, f0)
                s = Fraction(1, 2) if lo > 0 else Fraction(hi, 2 * (hi - lo))
                t = s if f0 >= f1 else 1 - s
            else:
                t = Fraction(1, 2)
            q = _interp(c.q, c.q_end, t)
            d1 = _norm(c.d1 + (c.d1_end - c.d1) * t)
            d2 = _norm(c.d2 + (c.d2_end - c.d2) * t)
            if ok(q, d1, d2):
                out.append(SplitWitness(cond, q, {names[0]: d1, names[1]: d2}))
    return out


def _general_witnesses(cfg: Configuration) -> list[SplitWitness | None]:
    P0, P1 = cfg.P(0), cfg.P(1)
    A0, A1, B0, B1 = cfg.A(0), cfg.A(1), cfg.B(0), cfg.B(1)
    w1 = None
    if _opposite(_first_dir(A0), _first_dir(B0)):
        w1 = SplitWitness(1, P0, {"A0": 0, "B0": 0})
    w2 = _best(_pair_witnesses(intersections(A0, B1), {P0, P1}, 2, ("A0", "B1"), False))
    w3 = _best(_pair_witnesses(intersections(A0, A1), {P1}, 3, ("A0", "A1"), True))
    w4 = _best(_pair_witnesses(intersections(B1, B0), {P0}, 4, ("B1", "B0"), True))
    return [w1, w2, w3, w4]


def _walk(w: str, start) -> list[tuple[int, int]]:
    x, y = start
    pts = [(x, y)]
    for c in w:
        dx, dy = STEP[c]
        x, y = x + dx, y + dy
        pts.append((x, y))
    return pts


def lattice_witnesses(x: str, y: str, origin=(0, 0)) -> list[SplitWitness | None]:
    """Vertex-only evaluation, exact for self-avoiding x and y with |xy| > 2.

    On such paths any common point off the lattice lies on a shared unit
    edge whose end points already witness the same condition.
    """
    d = displacement(x)
    P0 = (origin[0], origin[1])
    P1 = (P0[0] + d.i, P0[1] + d.j)
    a0 = {v: i for i, v in enumerate(_walk(x, P0))}
    b0 = {v: i for i, v in enumerate(_walk(y, P0))}
    A1 = _walk(x, P1)
    B1 = _walk(y, P1)
    w1 = SplitWitness(1, ORIGIN + P0, {"A0": 0, "B0": 0}) if COMPLEMENT[x[0]] == y[0] else None
    c2 = [(a0[q], j, q) for j, q in enumerate(B1) if q in a0 and q != P0 and q != P1]
    c3 = [(a0[q], j, q) for j, q in enumerate(A1) if q != P1 and a0.get(q, -1) > j]
    c4 = [(j, b0[q], q) for j, q in enumerate(B1) if q != P0 and q in b0 and j > b0[q]]
    out = [w1]
    for cond, cands, names in ((2, c2, ("A0", "B1")), (3, c3, ("A0", "A1")), (4, c4, ("B1", "B0"))):
        if cands:
            d1, d2, q = min(cands)
            out.append(SplitWitness(cond, RationalPoint(*q), {names[0]: d1, names[1]: d2}))
        else:
            out.append(None)
    return out


def lattice_fast_path_applies(x: str, y: str) -> bool:
    return (
        len(x) + len(y) > 2 and not displacement(x).is_zero
        and not has_balanced_substring(x) and not has_balanced_substring(y)
    )


def check_constraints(cfg: Configuration, exact: bool = False) -> ConstraintReport:
    """Evaluate the four constraints; ``exact`` forces the general intersection path."""
    cfg.require_geometry()
    if len(cfg.shape_a.vertices) < 2 or len(cfg.shape_b.vertices) < 2:
        raise GeometryError("both paths must be nonempty")
    fast = not exact and cfg.is_lattice and lattice_fast_path_applies(cfg.x, cfg.y)
    ws = lattice_witnesses(cfg.x, cfg.y, cfg.origin) if fast else _general_witnesses(cfg)
    return ConstraintReport(tuple(w is None for w in ws), tuple(ws))


def four_split_conditions(cfg: Configuration, exact: bool = False) -> list[SplitWitness]:
    report = check_constraints(cfg, exact)
    return [w for w in report.witnesses if w is not None]
