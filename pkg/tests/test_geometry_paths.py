from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mcfg_mix.geometry import (
    PolyPath,
    intersection_points,
    intersections,
    is_closed,
    path_distances_at,
    path_of,
    point,
    segment_intersection,
    self_intersections,
    subpath,
)
from mcfg_mix.language import from_unicode

from conftest import FIG1, FIG3, FIG4, poly

words = st.text(alphabet="aAbB", max_size=12)


def test_path_of_examples():
    p = path_of(from_unicode("ab̄āb̄āb"), (0, 0))
    assert p.end == (-1, -1)
    assert p.points[:4] == ((0, 0), (1, 0), (1, -1), (0, -1))
    single = path_of("", (5, 7))
    assert single.points == ((5, 7),) and single.length == 0
    loop = path_of("aA")
    assert is_closed(loop) and (1, 0) in loop.points


def test_closedness():
    assert not is_closed(path_of("ab"))
    x, y = FIG1
    assert is_closed(path_of(x + y))
    assert not is_closed(path_of(x))


def test_point_refuses_floats():
    assert point("3.3", 1) == (Fraction(33, 10), 1)
    with pytest.raises(TypeError):
        point(0.1, 0)


@given(words, st.integers(-5, 5), st.integers(-5, 5))
def test_lattice_path_invariants(w, i, j):
    p = path_of(w, (i, j))
    assert len(p.points) == len(w) + 1
    for a, b in zip(p.points, p.points[1:]):
        assert abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1
    assert p.to_poly().length == len(w) or len(set(p.points)) == 1
    assert 0 in path_distances_at(p, p.start)


def test_path_distances_fig1():
    a0 = path_of(FIG1[0])
    assert 3 in path_distances_at(a0, (0, -1))
    assert Fraction(5, 2) in path_distances_at(a0, (Fraction(1, 2), -1))
    assert path_distances_at(a0, (7, 7)) == []
    # the path passes (0, -1) twice: after a b̄ ā and again at the very end of x y
    closed = path_of(FIG1[0] + FIG1[1])
    assert path_distances_at(closed, (0, 0)) == [0, 8]


def test_subpath_examples():
    a0 = path_of(FIG1[0]).to_poly()
    assert subpath(a0, 0, 3).vertices == ((0, 0), (1, 0), (1, -1), (0, -1))
    assert subpath(a0, 0, a0.length) == a0
    assert subpath(a0, 2, 2).vertices == ((1, -1),)
    mid = subpath(a0, Fraction(1, 2), Fraction(5, 2))
    assert mid.vertices == ((Fraction(1, 2), 0), (1, 0), (1, -1), (Fraction(1, 2), -1))
    with pytest.raises(ValueError):
        subpath(a0, 3, 2)


@given(words.filter(bool), st.data())
def test_subpath_reparameterizes(w, data):
    p = path_of(w).to_poly()
    d1 = data.draw(st.integers(0, 2 * len(w))) / Fraction(2)
    d2 = data.draw(st.integers(int(2 * d1), 2 * len(w))) / Fraction(2)
    s = subpath(p, d1, d2)
    assert s.length == d2 - d1
    assert s.start == p.point_at(d1) and s.end == p.point_at(d2)
    assert s.point_at((d2 - d1) / 2) == p.point_at((d1 + d2) / 2)


def test_intersections_fig3_and_fig4():
    x, y = FIG3
    a0 = path_of(x)
    b1 = path_of(y, a0.end)
    assert (1, 1) in {q for q, _, _ in intersection_points(a0, b1)}
    x, y = FIG4
    a0 = path_of(x, (-3, 0))
    a1 = path_of(x, (0, 0))
    hits = intersection_points(a0, a1)
    assert ((0, 1), 6, 1) in hits


def test_disjoint_paths_do_not_meet():
    assert intersections(path_of("aa"), path_of("aa", (0, 3))) == []
    assert intersection_points(path_of("b", (5, 5)), path_of("ab")) == set()


def test_collinear_overlap_reported_once():
    p = poly((0, 0), (4, 0))
    q = poly((1, 0), (3, 0), (3, 2))
    cs = intersections(p, q)
    assert len(cs) == 1 and cs[0].overlap
    assert {e[0] for e in cs[0].endpoints()} == {(1, 0), (3, 0)}
    assert segment_intersection((0, 0), (2, 0), (2, 0), (2, 5))[:2] == ("point", (2, 0))
    assert segment_intersection((0, 0), (1, 1), (0, 1), (1, 2)) is None


def test_point_path_intersection():
    dot = PolyPath((point(1, 0),))
    assert intersection_points(dot, path_of("aa")) == {((1, 0), 0, 1)}


def brute_common_points(w1, s1, w2, s2):
    """Oracle for lattice paths: common points among half-step samples."""
    def samples(w, s):
        pts = path_of(w, s).points
        out = {}
        for i, (a, b) in enumerate(zip(pts, pts[1:])):
            for t in (0, Fraction(1, 2)):
                q = (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)
                out.setdefault(q, set()).add(i + t)
        out.setdefault(pts[-1], set()).add(len(w))
        return out

    A, B = samples(w1, s1), samples(w2, s2)
    return {(q, da, db) for q in A.keys() & B.keys() for da in A[q] for db in B[q]}


@given(words, words, st.integers(-2, 2), st.integers(-2, 2))
def test_intersections_match_lattice_oracle(w1, w2, i, j):
    got = intersection_points(path_of(w1), path_of(w2, (i, j)))
    want = brute_common_points(w1, (0, 0), w2, (i, j))
    # lattice contacts happen at lattice points or along shared unit edges;
    # every lattice-point contact must be found, and nothing off the paths
    lattice = {(q, a, b) for q, a, b in want
               if q[0] == int(q[0]) and q[1] == int(q[1]) and a == int(a) and b == int(b)}
    assert lattice <= got | {e for c in intersections(path_of(w1), path_of(w2, (i, j))) if c.overlap
                             for e in _overlap_lattice_points(c)}
    for q, a, b in got:
        assert a in path_distances_at(path_of(w1), q)
        assert b in path_distances_at(path_of(w2, (i, j)), q)


def _overlap_lattice_points(c):
    (q0, a0, b0), (q1, a1, b1) = c.endpoints()
    n = int(abs(a1 - a0))
    sa = 1 if a1 >= a0 else -1
    sb = 1 if b1 >= b0 else -1
    out = set()
    for t in range(n + 1):
        q = (q0[0] + (q1[0] - q0[0]) * Fraction(t, max(n, 1)), q0[1] + (q1[1] - q0[1]) * Fraction(t, max(n, 1)))
        out.add((q, a0 + sa * t, b0 + sb * t))
    return out


def test_self_intersections():
    assert self_intersections(path_of("abAB")) == {(0, 0)}
    assert self_intersections(path_of("aab")) == set()
    assert path_of("aA").to_poly().vertices[0] in self_intersections(path_of("aA"))
