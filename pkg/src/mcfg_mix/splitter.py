"""Constructive derivations of R(x, y) for every pair with xy in O2.

:func:`find_split` follows the inductive argument case by case and falls
back on the geometric split witnesses once the easy cases are exhausted;
:func:`brute_force_split` is an independent search over every rule
instantiation, kept for cross-checking and diagnostics.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .geometry import Configuration, SplitWitness, four_split_conditions
from .geometry.config import lattice_fast_path_applies, lattice_witnesses
from .grammar import DerivationNode, axiom_for, node
from .language import check_o2, displacement, is_o2, lift, prefix_counts, reduce

WRAP, BALANCED, AFFIX, GEOMETRIC, BRUTE = "wrap", "balanced side", "affix", "geometric", "brute force"


class SplitError(RuntimeError):
    """No case produced a valid split; for valid input this contradicts the theorem."""


@dataclass(frozen=True)
class SplitDecision:
    """A rule instantiation deriving R(x, y) from two smaller R facts.

    ``cuts`` are positions in the parent strings: for rules 2 and 3 one cut
    in x and one in y; for rule 4 two cuts in x; for rule 5 two cuts in y.
    """

    rule_id: int
    x: str
    y: str
    cuts: tuple[int, int]
    case: str
    detail: str = ""
    witness: SplitWitness | None = field(default=None, compare=False)

    @property
    def bindings(self) -> dict[str, tuple[int, int, int]]:
        """Rule variable -> (side, start, end) in the parent pair."""
        return _bindings(self.rule_id, len(self.x), len(self.y), self.cuts)

    @property
    def children(self) -> tuple[tuple[str, str], tuple[str, str]]:
        return _children(self.rule_id, self.x, self.y, self.cuts)

    @property
    def parts(self) -> tuple[str, str, str, str]:
        (a, b), (c, d) = self.children
        return a, b, c, d

    @property
    def is_wrap(self) -> bool:
        return ("", "") in self.children

    def annotation(self) -> dict:
        note = {"case": self.case, "cuts": list(self.cuts)}
        if self.detail:
            note["detail"] = self.detail
        return note


def _bindings(rule_id, nx, ny, cuts):
    c, e = cuts
    if rule_id == 2:
        return {"x": (0, 0, c), "p": (0, c, nx), "y": (1, 0, e), "q": (1, e, ny)}
    if rule_id == 3:
        return {"x": (0, 0, c), "p": (0, c, nx), "q": (1, 0, e), "y": (1, e, ny)}
    if rule_id == 4:
        return {"x": (0, 0, c), "p": (0, c, e), "y": (0, e, nx), "q": (1, 0, ny)}
    if rule_id == 5:
        return {"p": (0, 0, nx), "x": (1, 0, c), "q": (1, c, e), "y": (1, e, ny)}
    raise ValueError(f"rule {rule_id} is not a combining rule")


def _children(rule_id, x, y, cuts):
    b = _bindings(rule_id, len(x), len(y), cuts)
    s = (x, y)

    def get(v):
        side, lo, hi = b[v]
        return s[side][lo:hi]

    return (get("x"), get("y")), (get("p"), get("q"))


def compose(rule_id: int, left: tuple[str, str], right: tuple[str, str]) -> tuple[str, str]:
    """Parent pair of rule ``rule_id`` applied to children R(x, y), R(p, q)."""
    (x, y), (p, q) = left, right
    if rule_id == 2:
        return x + p, y + q
    if rule_id == 3:
        return x + p, q + y
    if rule_id == 4:
        return x + p + y, q
    if rule_id == 5:
        return p, x + q + y
    raise ValueError(f"rule {rule_id} is not a combining rule")


def validate_decision(d: SplitDecision, x: str, y: str) -> bool:
    """Independent check of everything a decision promises."""
    if d.rule_id not in (2, 3, 4, 5) or (d.x, d.y) != (x, y):
        return False
    nx, ny = len(x), len(y)
    c, e = d.cuts
    if d.rule_id in (2, 3) and not (0 <= c <= nx and 0 <= e <= ny):
        return False
    if d.rule_id == 4 and not 0 <= c <= e <= nx:
        return False
    if d.rule_id == 5 and not 0 <= c <= e <= ny:
        return False
    left, right = _children(d.rule_id, x, y, d.cuts)
    if compose(d.rule_id, left, right) != (x, y):
        return False
    if not (is_o2(left[0] + left[1]) and is_o2(right[0] + right[1])):
        return False
    total = nx + ny
    if ("", "") in (left, right):
        other = right if left == ("", "") else left
        return other != (x, y) and other[0] != "" and other[1] != ""
    if not (len(left[0] + left[1]) < total and len(right[0] + right[1]) < total):
        return False
    if d.case == GEOMETRIC and sum(1 for part in (*left, *right) if part) < 3:
        return False
    return True


def _check_pair(x: str, y: str) -> None:
    check_o2(x)
    check_o2(y)
    if not is_o2(x + y):
        raise ValueError(f"x y is not in O2: {x!r} {y!r}")
    if len(x) <= 1 and len(y) <= 1:
        raise ValueError(f"({x!r}, {y!r}) is a base case, there is nothing to split")


def _affix(w: str) -> tuple[int | None, int | None]:
    """Length of the shortest balanced proper prefix and of the shortest balanced proper suffix."""
    pi, pj = prefix_counts(w)
    n = len(w)
    pre = next((k for k in range(2, n, 2) if pi[k] == 0 and pj[k] == 0), None)
    suf = next((k for k in range(2, n, 2) if pi[n - k] == pi[n] and pj[n - k] == pj[n]), None)
    return pre, suf


def _geometric(x: str, y: str) -> SplitDecision:
    xr, yr, rec = reduce(x, y)
    if lattice_fast_path_applies(xr, yr):
        ws = [w for w in lattice_witnesses(xr, yr) if w is not None]
    else:
        ws = four_split_conditions(Configuration.from_strings(xr, yr))
    if not ws:
        raise SplitError(f"no split condition holds for reduced pair ({xr!r}, {yr!r})")
    w = ws[0]
    dist = w.distances
    if w.condition == 1:
        rule, cuts = 2, (lift(rec, 1, 0), lift(rec, 1, 1))
    elif w.condition == 2:
        rule, cuts = 3, (lift(rec, dist["A0"], 0), lift(rec, dist["B1"], 1))
    elif w.condition == 3:
        rule, cuts = 4, (lift(rec, dist["A1"], 0), lift(rec, dist["A0"], 0))
    else:
        rule, cuts = 5, (lift(rec, dist["B0"], 1), lift(rec, dist["B1"], 1))
    detail = f"condition {w.condition}"
    if rec.removals:
        detail += f" on reduced ({xr}, {yr})"
    return SplitDecision(rule, x, y, cuts, GEOMETRIC, detail, w)


def find_split(x: str, y: str) -> SplitDecision:
    """First applicable case: wrap, balanced side, balanced affix, geometry."""
    _check_pair(x, y)
    if not x:
        return SplitDecision(5, x, y, (1, 1), WRAP, "x empty")
    if not y:
        return SplitDecision(4, x, y, (1, 1), WRAP, "y empty")
    if is_o2(x):
        return SplitDecision(4, x, y, (1, 1), BALANCED, "x balanced")
    if is_o2(y):
        return SplitDecision(5, x, y, (1, 1), BALANCED, "y balanced")
    pre, suf = _affix(x)
    if pre is not None:
        return SplitDecision(2, x, y, (pre, 0), AFFIX, "prefix of x")
    if suf is not None:
        return SplitDecision(2, x, y, (len(x) - suf, len(y)), AFFIX, "suffix of x")
    pre, suf = _affix(y)
    if pre is not None:
        return SplitDecision(5, x, y, (pre, len(y)), AFFIX, "prefix of y")
    if suf is not None:
        return SplitDecision(2, x, y, (len(x), len(y) - suf), AFFIX, "suffix of y")
    d = _geometric(x, y)
    if not validate_decision(d, x, y):
        raise SplitError(_diagnose(x, y, d))
    return d


def _instantiations(nx: int, ny: int):
    for rule in (2, 3):
        for c in range(nx + 1):
            for e in range(ny + 1):
                yield rule, (c, e)
    for c, e in itertools.combinations_with_replacement(range(nx + 1), 2):
        yield 4, (c, e)
    for c, e in itertools.combinations_with_replacement(range(ny + 1), 2):
        yield 5, (c, e)


def brute_force_split(x: str, y: str) -> SplitDecision:
    """First valid instantiation of rules 2-5; non-wrapping splits are preferred."""
    _check_pair(x, y)
    wraps = []
    for rule, cuts in _instantiations(len(x), len(y)):
        d = SplitDecision(rule, x, y, cuts, BRUTE)
        if validate_decision(d, x, y):
            if not d.is_wrap:
                return d
            wraps.append(d)
    if wraps:
        return wraps[0]
    raise SplitError(f"no rule instantiation splits ({x!r}, {y!r})")


def _diagnose(x: str, y: str, d: SplitDecision | None) -> str:
    try:
        alt = brute_force_split(x, y)
        oracle = f"brute force finds rule {alt.rule_id} with cuts {alt.cuts}"
    except SplitError:
        oracle = "brute force finds no split either"
    got = "no decision" if d is None else f"invalid rule {d.rule_id} cuts {d.cuts} ({d.detail})"
    return f"split of ({x!r}, {y!r}) failed: {got}; {oracle}"


def derive_constructive(
    x: str, y: str, annotate: bool = True, memo: dict | None = None
) -> DerivationNode:
    """Derivation of R(x, y) built by repeated :func:`find_split`.

    ``memo`` may be shared between calls over a corpus; trees are immutable,
    so sharing subtrees is safe.
    """
    check_o2(x)
    check_o2(y)
    if displacement(x) != -displacement(y):
        raise ValueError(f"x y is not in O2: {x!r} {y!r}")
    return _derive(x, y, annotate, {} if memo is None else memo)


def _derive(x: str, y: str, annotate: bool, memo: dict) -> DerivationNode:
    hit = memo.get((x, y))
    if hit is not None:
        return hit
    rid = axiom_for(x, y)
    if rid is not None:
        out = node(rid)
    else:
        d = find_split(x, y)
        left, right = d.children
        out = node(
            d.rule_id,
            _derive(*left, annotate, memo),
            _derive(*right, annotate, memo),
            note=d.annotation() if annotate else None,
        )
    memo[(x, y)] = out
    return out


def derive_string(w: str, annotate: bool = True) -> DerivationNode:
    """Derivation of S(w) via rule 1 over R(w, "")."""
    if not is_o2(w):
        raise ValueError(f"{w!r} is not in O2")
    return node(1, derive_constructive(w, "", annotate))
