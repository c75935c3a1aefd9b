"""Membership oracles for O2 and MIX, enumeration, sampling and substring reduction.

Strings over the O2 alphabet use the ASCII convention shared by the whole
package: ``a``, ``A``, ``b``, ``B`` stand for a, a-bar, b, b-bar.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterator, NamedTuple

A, ABAR, B, BBAR = "a", "A", "b", "B"
O2_ALPHABET = (A, ABAR, B, BBAR)
MIX_ALPHABET = ("a", "b", "c")
COMPLEMENT = {A: ABAR, ABAR: A, B: BBAR, BBAR: B}

STEP = {A: (1, 0), ABAR: (-1, 0), B: (0, 1), BBAR: (0, -1)}

_UNICODE = {"\u0101": ABAR, "a\u0304": ABAR, "b\u0304": BBAR}


def from_unicode(text: str) -> str:
    """Translate ``ā``/``b̄`` (precomposed or combining macron) to ``A``/``B``."""
    for src, dst in sorted(_UNICODE.items(), key=lambda kv: -len(kv[0])):
        text = text.replace(src, dst)
    return text


def to_unicode(w: str) -> str:
    return w.replace(ABAR, "\u0101").replace(BBAR, "b\u0304")


def check_o2(w: str) -> None:
    bad = set(w) - set(O2_ALPHABET)
    if bad:
        raise ValueError(f"symbols outside the O2 alphabet: {sorted(bad)}")


class Displacement(NamedTuple):
    """End point of the lattice path of a string started at the origin."""

    i: int
    j: int

    def __neg__(self) -> "Displacement":
        return Displacement(-self.i, -self.j)

    @property
    def is_zero(self) -> bool:
        return self.i == 0 and self.j == 0


def displacement(w: str) -> Displacement:
    check_o2(w)
    return Displacement(w.count(A) - w.count(ABAR), w.count(B) - w.count(BBAR))


def is_o2(w: str) -> bool:
    check_o2(w)
    return w.count(A) == w.count(ABAR) and w.count(B) == w.count(BBAR)


def is_mix(w: str) -> bool:
    bad = set(w) - set(MIX_ALPHABET)
    if bad:
        raise ValueError(f"symbols outside the MIX alphabet: {sorted(bad)}")
    return w.count("a") == w.count("b") == w.count("c")


def enumerate_o2(max_len: int) -> Iterator[str]:
    """Yield every O2 string of length <= max_len, by length then lexicographically.

    Lexicographic order is over the alphabet order ``a < A < b < B``.
    """
    for n in range(0, max_len + 1, 2):
        for w in itertools.product(O2_ALPHABET, repeat=n):
            if w.count(A) == w.count(ABAR) and w.count(B) == w.count(BBAR):
                yield "".join(w)


def count_o2(length: int) -> int:
    """Closed-form number of O2 strings of a given length."""
    if length % 2:
        return 0
    n = length // 2
    return sum(_multinomial(length, k, n - k) for k in range(n + 1))


def _multinomial(length: int, k: int, m: int) -> int:
    return math.factorial(length) // (
        math.factorial(k) ** 2 * math.factorial(m) ** 2
    )


def sample_o2(length: int, seed: int | random.Random) -> str:
    """Uniform random element of O2 of the given (even) length.

    The number of ``a`` symbols is drawn with exact integer multinomial
    weights, then the multiset is shuffled uniformly.
    """
    if length < 0 or length % 2:
        raise ValueError(f"O2 strings have even length, got {length}")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    n = length // 2
    weights = [_multinomial(length, k, n - k) for k in range(n + 1)]
    r = rng.randrange(sum(weights))
    k = 0
    while r >= weights[k]:
        r -= weights[k]
        k += 1
    symbols = [A] * k + [ABAR] * k + [B] * (n - k) + [BBAR] * (n - k)
    rng.shuffle(symbols)
    return "".join(symbols)


def prefix_counts(w: str) -> tuple[list[int], list[int]]:
    pi, pj = [0], [0]
    for c in w:
        di, dj = STEP[c]
        pi.append(pi[-1] + di)
        pj.append(pj[-1] + dj)
    return pi, pj


def shortest_balanced(w: str) -> tuple[int, int] | None:
    """Leftmost among the shortest nonempty O2 substrings, as ``[start, end)``."""
    pi, pj = prefix_counts(w)
    n = len(w)
    for length in range(2, n + 1, 2):
        for s in range(n - length + 1):
            e = s + length
            if pi[e] == pi[s] and pj[e] == pj[s]:
                return s, e
    return None


def has_balanced_substring(w: str) -> bool:
    """True iff some nonempty substring is in O2, i.e. the path revisits a point."""
    seen = set()
    x = y = 0
    seen.add((0, 0))
    for c in w:
        dx, dy = STEP[c]
        x += dx
        y += dy
        if (x, y) in seen:
            return True
        seen.add((x, y))
    return False


@dataclass(frozen=True)
class RemovalRecord:
    """Bookkeeping of a reduction, enough to map reduced cuts back.

    ``removals`` lists ``((start, end), side)`` in removal order, with
    intervals in original coordinates (side 0 is the first string).  Later
    intervals may contain earlier ones, but never partially overlap them.
    ``index_maps[side][r]`` is the original position of reduced symbol ``r``.
    """

    removals: tuple[tuple[tuple[int, int], int], ...]
    index_maps: tuple[tuple[int, ...], tuple[int, ...]]
    lengths: tuple[int, int]


def reduce(x: str, y: str) -> tuple[str, str, RemovalRecord]:
    """Exhaustively delete nonempty O2 substrings from ``x`` and ``y``.

    Each step removes the shortest balanced substring over both strings;
    ties go to ``x`` before ``y``, then to the leftmost occurrence.
    """
    check_o2(x)
    check_o2(y)
    cur = [list(x), list(y)]
    orig = [list(range(len(x))), list(range(len(y)))]
    removals = []
    while True:
        best = None
        for side in (0, 1):
            hit = shortest_balanced("".join(cur[side]))
            if hit and (best is None or hit[1] - hit[0] < best[1][1] - best[1][0]):
                best = (side, hit)
        if best is None:
            break
        side, (s, e) = best
        removals.append(((orig[side][s], orig[side][e - 1] + 1), side))
        del cur[side][s:e]
        del orig[side][s:e]
    record = RemovalRecord(
        tuple(removals), (tuple(orig[0]), tuple(orig[1])), (len(x), len(y))
    )
    return "".join(cur[0]), "".join(cur[1]), record


def lift(record: RemovalRecord, cut: int, side: int) -> int:
    """Map a cut in a reduced string to a cut in the original string.

    Removed material adjacent to the cut goes to the left part.
    """
    index_map = record.index_maps[side]
    if not 0 <= cut <= len(index_map):
        raise ValueError(f"cut {cut} outside reduced string of length {len(index_map)}")
    if cut == len(index_map):
        return record.lengths[side]
    return index_map[cut]
