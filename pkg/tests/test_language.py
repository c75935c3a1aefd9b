import itertools
import random
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from mcfg_mix.language import (
    COMPLEMENT,
    O2_ALPHABET,
    RemovalRecord,
    count_o2,
    displacement,
    enumerate_o2,
    from_unicode,
    has_balanced_substring,
    is_mix,
    is_o2,
    lift,
    reduce,
    sample_o2,
    shortest_balanced,
    to_unicode,
)

o2_text = st.text(alphabet="aAbB", max_size=14)


def brute_o2(w):
    return w.count("a") == w.count("A") and w.count("b") == w.count("B")


def test_membership_examples():
    assert is_o2("")
    assert is_o2(from_unicode("ab̄āb̄ābba"))
    assert not is_o2(from_unicode("aab̄"))
    assert is_mix("abccba") and is_mix("") and not is_mix("abcc")


def test_bad_symbols_rejected():
    with pytest.raises(ValueError):
        is_o2("abc")
    with pytest.raises(ValueError):
        is_mix("abd")


def test_complement_is_an_involution():
    assert len(O2_ALPHABET) == 4
    assert COMPLEMENT["a"] == "A" and COMPLEMENT["b"] == "B"
    for c in O2_ALPHABET:
        assert COMPLEMENT[COMPLEMENT[c]] == c != COMPLEMENT[c]


def test_unicode_round_trip():
    assert from_unicode("ab̄āb̄ābba") == "aBABAbba"
    assert from_unicode("aā") == "aA"
    assert from_unicode(to_unicode("aAbB")) == "aAbB"


def test_displacement_examples():
    assert displacement(from_unicode("ab̄āb̄āb")) == (-1, -1)
    assert displacement("") == (0, 0)
    assert displacement(from_unicode("bbaab̄aab̄ā")) == (3, 0)


@given(o2_text)
def test_displacement_properties(w):
    d = displacement(w)
    assert abs(d.i) + abs(d.j) <= len(w)
    assert (d.i + d.j) % 2 == len(w) % 2
    assert is_o2(w) == d.is_zero == brute_o2(w)


def test_enumeration_small():
    assert list(enumerate_o2(0)) == [""]
    assert list(enumerate_o2(2)) == ["", "aA", "Aa", "bB", "Bb"]


def test_enumeration_matches_filtered_product():
    got = Counter(len(w) for w in enumerate_o2(8))
    for n in range(0, 9, 2):
        want = sum(1 for t in itertools.product("aAbB", repeat=n) if brute_o2("".join(t)))
        assert got[n] == want == count_o2(n)
    assert [got[n] for n in (0, 2, 4, 6, 8)] == [1, 4, 36, 400, 4900]


def test_enumeration_order():
    ws = list(enumerate_o2(6))
    key = {c: i for i, c in enumerate("aAbB")}
    assert ws == sorted(ws, key=lambda w: (len(w), [key[c] for c in w]))
    assert len(ws) == len(set(ws))


def test_count_closed_form_is_central_binomial_square():
    from math import comb

    for n in range(8):
        assert count_o2(2 * n) == comb(2 * n, n) ** 2
    assert count_o2(10) == 63504
    assert count_o2(7) == 0


def test_sample_basics():
    assert sample_o2(0, 5) == ""
    assert sample_o2(2, 11) in {"aA", "Aa", "bB", "Bb"}
    assert sample_o2(12, 3) == sample_o2(12, 3)
    with pytest.raises(ValueError):
        sample_o2(3, 0)


def test_sample_uniform_at_length_four():
    rng = random.Random(20240611)
    draws = 100_000
    freq = Counter(sample_o2(4, rng) for _ in range(draws))
    assert len(freq) == 36
    p = 1 / 36
    sigma = (draws * p * (1 - p)) ** 0.5
    for w in enumerate_o2(4):
        if len(w) == 4:
            assert abs(freq[w] - draws * p) <= 3 * sigma + 1, w


def test_reduce_examples():
    x, y, rec = reduce("aAb", "B")
    assert (x, y) == ("b", "B")
    assert rec.removals == (((0, 2), 0),)
    x, y, rec = reduce("ab", "AB")
    assert (x, y, rec.removals) == ("ab", "AB", ())
    x, y, rec = reduce(from_unicode("abāb̄"), "")
    assert (x, y) == ("", "")
    assert rec.removals == (((0, 4), 0),)


def _fewest_removals(w):
    """Oracle: fewest deletions of balanced substrings that empty w, by BFS."""
    from collections import deque

    seen = {w}
    queue = deque([(w, 0)])
    while queue:
        s, k = queue.popleft()
        if s == "":
            return k
        for i in range(len(s)):
            for j in range(i + 2, len(s) + 1, 2):
                t = s[:i] + s[j:]
                if brute_o2(s[i:j]) and t not in seen:
                    seen.add(t)
                    queue.append((t, k + 1))
    return None


def test_reduce_matches_fewest_removals_on_square():
    w = from_unicode("abāb̄")
    assert shortest_balanced(w) == (0, 4)
    assert _fewest_removals(w) == len(reduce(w, "")[2].removals) == 1


@given(st.text(alphabet="aAbB", max_size=8))
def test_reduce_empties_exactly_the_balanced_strings(w):
    xr, _, _ = reduce(w, "")
    assert (xr == "") == (_fewest_removals(w) is not None) == brute_o2(w)


@given(o2_text, o2_text)
def test_reduce_properties(x, y):
    xr, yr, rec = reduce(x, y)
    assert not has_balanced_substring(xr) and not has_balanced_substring(yr)
    assert displacement(xr) == displacement(x) and displacement(yr) == displacement(y)
    assert is_o2(xr) == is_o2(x)
    assert reduce(xr, yr)[:2] == (xr, yr) and reduce(xr, yr)[2].removals == ()
    for side, (s, r) in enumerate(((x, xr), (y, yr))):
        m = rec.index_maps[side]
        assert list(m) == sorted(set(m))
        assert "".join(s[i] for i in m) == r
        assert rec.lengths[side] == len(s)
    # recorded intervals nest or are disjoint
    ivs = [(lo, hi, side) for (lo, hi), side in rec.removals]
    for (a, b, s1), (c, d, s2) in itertools.combinations(ivs, 2):
        if s1 == s2:
            assert b <= c or d <= a or (a <= c and d <= b) or (c <= a and b <= d)


@given(o2_text, o2_text)
def test_removed_material_is_balanced(x, y):
    xr, yr, rec = reduce(x, y)
    for side, s in enumerate((x, y)):
        for (lo, hi), sd in rec.removals:
            if sd == side:
                assert brute_o2(s[lo:hi])


def test_lift_examples():
    empty = RemovalRecord((), (tuple(range(5)), ()), (5, 0))
    assert lift(empty, 3, 0) == 3
    _, _, rec = reduce("aAb", "B")
    assert lift(rec, 0, 0) == 2
    assert lift(rec, 1, 0) == 3
    with pytest.raises(ValueError):
        lift(rec, 2, 0)


@given(o2_text, o2_text, st.data())
def test_lift_preserves_balance(x, y, data):
    xr, yr, rec = reduce(x, y)
    for side, (s, r) in enumerate(((x, xr), (y, yr))):
        cut = data.draw(st.integers(0, len(r)))
        c = lift(rec, cut, side)
        assert 0 <= c <= len(s)
        assert displacement(s[:c]) == displacement(r[:cut])
        assert displacement(s[c:]) == displacement(r[cut:])
