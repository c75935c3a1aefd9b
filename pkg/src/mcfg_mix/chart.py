"""Agenda-driven bottom-up chart recognition for rank <= 2 MCFGs.

Items are kept internally as flat tuples ``(pred, s0, e0, s1, e1, ...)``.
Each (rule, role) pair is compiled once per grammar into an index probe:
the boundaries of the partner item that are pinned by adjacency in the
rule's composition form a dictionary key, so combining never scans the
chart blindly.
"""

from __future__ import annotations

import functools
import itertools
import operator
from collections import deque
from dataclasses import dataclass
from typing import Callable, Sequence

from .grammar import (
    DerivationNode,
    Grammar,
    GrammarError,
    Lit,
    Predicate,
    Rule,
    Var,
    check_string,
    validate_grammar,
)


@dataclass(frozen=True)
class ChartItem:
    predicate: Predicate
    spans: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Justification:
    rule_id: int
    premises: tuple[ChartItem, ...]


# A boundary reference (which, slot, offset): position = item[slot] + offset,
# where which = 0 is the popped item and 1 the partner.
_Ref = tuple[int, int, int]


@dataclass
class _Template:
    """How to build a rule's left-hand side from one or two child items."""

    rule: Rule
    lhs_pred: int
    role: int
    other_pred: int | None
    key_sig: tuple[int, ...] = ()
    key_src: tuple[tuple[int, int], ...] = ()  # (slot in popped item, offset)
    self_checks: tuple[tuple[int, int, int], ...] = ()  # popped item: slot == slot + off
    cross_checks: tuple[tuple[int, int, int, int, int], ...] = ()
    lit_checks: tuple[tuple[int, int, int, str], ...] = ()
    bounds: tuple[_Ref | None, ...] = ()  # lhs start/end per argument
    free_args: tuple[tuple[int, tuple[str, ...]], ...] = ()  # arg index, literal run
    # Set when the lhs is a plain selection of child boundaries: maps the
    # concatenated (popped + partner) tuple straight to the lhs spans.
    fast: Callable | None = None

    def __post_init__(self):
        src = self.key_src
        if all(off == 0 for _, off in src) and len(src) > 1:
            self.key_of = operator.itemgetter(*(sl for sl, _ in src))
        else:
            self.key_of = lambda I: tuple(I[sl] + off for sl, off in src)


def _slot(arg: int, end: bool) -> int:
    return 1 + 2 * arg + (1 if end else 0)


def _compile_rule(rule: Rule, role: int, pidx: dict[Predicate, int]) -> _Template:
    """Work out boundary formulas for ``rule`` when child ``role`` is popped."""
    which = (lambda c: 0 if c == role else 1) if rule.rank == 2 else (lambda c: 0)
    eqs: list[tuple[_Ref, _Ref]] = []  # a == b
    lits: list[tuple[int, int, int, str]] = []
    bounds: list[_Ref | None] = []
    free = []
    for a, seq in enumerate(rule.composition):
        vars_at = [m for m, t in enumerate(seq) if isinstance(t, Var)]
        if not vars_at:
            bounds += [None, None]
            free.append((a, tuple(t.symbol for t in seq)))
            continue

        def start(m):
            t = seq[m]
            return (which(t.child), _slot(t.arg, False), 0)

        def end(m):
            t = seq[m]
            return (which(t.child), _slot(t.arg, True), 0)

        first, last = vars_at[0], vars_at[-1]
        w0, s0, _ = start(first)
        w1, s1, _ = end(last)
        bounds += [(w0, s0, -first), (w1, s1, len(seq) - 1 - last)]
        for m in range(first):
            lits.append((w0, s0, m - first, seq[m].symbol))
        for m in range(last + 1, len(seq)):
            lits.append((w1, s1, m - last - 1, seq[m].symbol))
        for ma, mb in zip(vars_at, vars_at[1:]):
            we, se, _ = end(ma)
            for m in range(ma + 1, mb):
                lits.append((we, se, m - ma - 1, seq[m].symbol))
            ws, ss, _ = start(mb)
            eqs.append(((ws, ss, 0), (we, se, mb - ma - 1)))

    self_checks, cross, key = [], [], {}
    for (wa, sa, _), (wb, sb, off) in eqs:
        # position(a) == position(b) + off
        if wa == wb == 0:
            self_checks.append((sa, sb, off))
        elif wa == wb:
            cross.append((wa, sa, wb, sb, off))
        elif wa == 1 and sa not in key:
            key[sa] = (sb, off)
        elif wb == 1 and sb not in key:
            key[sb] = (sa, -off)
        else:
            cross.append((wa, sa, wb, sb, off))
    sig = tuple(sorted(key))
    fast = None
    if rule.rank == 2 and not (lits or free or cross) and all(b[2] == 0 for b in bounds):
        width = 1 + 2 * rule.rhs[role].fanout
        fast = operator.itemgetter(*(sl + (width if wh else 0) for wh, sl, _ in bounds))
    return _Template(
        rule=rule,
        lhs_pred=pidx[rule.lhs],
        role=role,
        other_pred=pidx[rule.rhs[1 - role]] if rule.rank == 2 else None,
        key_sig=sig,
        key_src=tuple(key[s] for s in sig),
        self_checks=tuple(self_checks),
        cross_checks=tuple(cross),
        lit_checks=tuple(lits),
        bounds=tuple(bounds),
        free_args=tuple(free),
        fast=fast,
    )


@dataclass
class _Compiled:
    grammar: Grammar
    pidx: dict[Predicate, int]
    preds: tuple[Predicate, ...]
    axioms: tuple[Rule, ...]
    # templates triggered by a popped item of a given predicate
    triggers: dict[int, tuple[_Template, ...]]
    # index signatures to maintain per predicate
    signatures: dict[int, tuple[tuple[int, ...], ...]]


@functools.lru_cache(maxsize=32)
def _compile(g: Grammar) -> _Compiled:
    report = validate_grammar(g)
    if not report.ok:
        raise GrammarError("invalid grammar: " + "; ".join(v.message for v in report.violations))
    preds = tuple(g.predicates)
    pidx = {p: i for i, p in enumerate(preds)}
    triggers: dict[int, list[_Template]] = {i: [] for i in range(len(preds))}
    sigs: dict[int, set] = {i: set() for i in range(len(preds))}
    axioms = []
    for r in g.rules:
        if r.rank == 0:
            axioms.append(r)
            continue
        for role in range(r.rank):
            t = _compile_rule(r, role, pidx)
            triggers[pidx[r.rhs[role]]].append(t)
            if t.other_pred is not None:
                sigs[t.other_pred].add(t.key_sig)
    return _Compiled(
        g, pidx, preds, tuple(axioms),
        {k: tuple(v) for k, v in triggers.items()},
        {k: tuple(sorted(v)) for k, v in sigs.items()},
    )


def _placements(run: tuple[str, ...], w: Sequence[str]) -> list[tuple[int, int]]:
    m, n = len(run), len(w)
    return [(p, p + m) for p in range(n - m + 1) if tuple(w[p:p + m]) == run]


class Chart:
    """Result of exhaustive closure over one input."""

    def __init__(self, compiled: _Compiled, w: Sequence[str], prune: bool, agenda: str):
        self._c = compiled
        self.w = w
        self.n = len(w)
        self.prune = prune
        self.deductions = 0
        # item -> (rule_id, premises); insertion order is proof order
        self.just: dict[tuple, tuple[int, tuple[tuple, ...]]] = {}
        self._run(agenda)

    # -- closure ---------------------------------------------------------
    def _ok(self, item: tuple) -> bool:
        n = self.n
        prev = 0 if self.prune else None
        for k in range(1, len(item), 2):
            s, e = item[k], item[k + 1]
            if s < 0 or e > n or s > e:
                return False
            if prev is not None:
                if s < prev:
                    return False
                prev = e
        return True

    def _emit(self, item, rule_id, premises, agenda_q):
        self.deductions += 1
        if item in self.just:
            return
        self.just[item] = (rule_id, premises)
        agenda_q.append(item)

    def _build(self, t: _Template, I: tuple, J: tuple | None, agenda_q) -> None:
        src = (I, J)
        w, n = self.w, self.n
        for wa, sa, wb, sb, off in t.cross_checks:
            if src[wa][sa] != src[wb][sb] + off:
                return
        for which, slot, off, sym in t.lit_checks:
            p = src[which][slot] + off
            if p < 0 or p >= n or w[p] != sym:
                return
        flat = []
        for ref in t.bounds:
            if ref is None:
                flat.append(None)
            else:
                flat.append(src[ref[0]][ref[1]] + ref[2])
        premises = (I,) if J is None else ((J, I) if t.role == 1 else (I, J))
        choices = [_placements(run, w) for _, run in t.free_args]
        for combo in itertools.product(*choices):
            spans = list(flat)
            for (a, _), (s, e) in zip(t.free_args, combo):
                spans[2 * a], spans[2 * a + 1] = s, e
            item = (t.lhs_pred, *spans)
            if self._ok(item):
                self._emit(item, t.rule.id, premises, agenda_q)

    def _run(self, agenda: str) -> None:
        c = self._c
        w = self.w
        agenda_q: deque = deque()
        index: dict[int, dict[tuple, dict[tuple, list]]] = {
            p: {sig: {} for sig in sigs} for p, sigs in c.signatures.items()
        }
        for r in c.axioms:
            choices = [_placements(tuple(t.symbol for t in seq), w) for seq in r.composition]
            for combo in itertools.product(*choices):
                item = (c.pidx[r.lhs], *(b for span in combo for b in span))
                if self._ok(item):
                    self._emit(item, r.id, (), agenda_q)
        pop = agenda_q.popleft if agenda == "fifo" else agenda_q.pop
        push = agenda_q.append
        just = self.just
        while agenda_q:
            I = pop()
            p = I[0]
            for sig, table in index[p].items():
                table.setdefault(tuple(I[s] for s in sig), []).append(I)
            for t in c.triggers[p]:
                if t.self_checks and any(I[sa] != I[sb] + off for sa, sb, off in t.self_checks):
                    continue
                if t.other_pred is None:
                    self._build(t, I, None, agenda_q)
                    continue
                key = t.key_of(I)
                partners = index[t.other_pred][t.key_sig].get(key)
                if not partners:
                    continue
                # copy: I may land in its own partner list within this loop
                partners = tuple(partners)
                if t.fast is None:
                    for J in partners:
                        self._build(t, I, J, agenda_q)
                    continue
                get, lp, rid, role = t.fast, t.lhs_pred, t.rule.id, t.role
                mono = self.prune and len(t.bounds) > 2
                pair = len(t.bounds) == 4
                for J in partners:
                    spans = get(I + J)
                    if mono and (
                        spans[1] > spans[2] if pair else
                        any(spans[k] > spans[k + 1] for k in range(1, len(spans) - 1, 2))
                    ):
                        continue
                    self.deductions += 1
                    item = (lp, *spans)
                    if item not in just:
                        just[item] = (rid, (J, I) if role else (I, J))
                        push(item)

    # -- queries ---------------------------------------------------------
    def _to_item(self, key: tuple) -> ChartItem:
        pred = self._c.preds[key[0]]
        return ChartItem(pred, tuple(zip(key[1::2], key[2::2])))

    def _key(self, item: ChartItem) -> tuple:
        return (self._c.pidx[item.predicate], *(b for s in item.spans for b in s))

    @property
    def goal(self) -> ChartItem:
        return ChartItem(self._c.grammar.start, ((0, self.n),))

    def accepted(self) -> bool:
        return self._key(self.goal) in self.just

    def __contains__(self, item: ChartItem) -> bool:
        return self._key(item) in self.just

    def __len__(self) -> int:
        return len(self.just)

    def items(self) -> list[ChartItem]:
        return [self._to_item(k) for k in self.just]

    def justification(self, item: ChartItem) -> Justification:
        rid, prem = self.just[self._key(item)]
        return Justification(rid, tuple(self._to_item(k) for k in prem))

    def derivation(self, item: ChartItem | None = None) -> DerivationNode | None:
        """Tree for ``item`` (default: the goal) from first-proof justifications."""
        root = self._key(item or self.goal)
        if root not in self.just:
            return None
        built: dict[tuple, DerivationNode] = {}
        stack = [root]
        while stack:
            k = stack[-1]
            if k in built:
                stack.pop()
                continue
            rid, prem = self.just[k]
            missing = [p for p in prem if p not in built]
            if missing:
                stack.extend(missing)
                continue
            stack.pop()
            built[k] = DerivationNode(rid, tuple(built[p] for p in prem))
        return built[root]

    def substrings(self, item: ChartItem) -> tuple[str, ...]:
        return tuple("".join(self.w[s:e]) for s, e in item.spans)


def parse(g: Grammar, w: Sequence[str], prune: bool | None = None, agenda: str = "fifo") -> Chart:
    """Run the closure. ``prune=None`` follows the grammar's monotone hint."""
    if agenda not in ("fifo", "lifo"):
        raise ValueError(f"unknown agenda order {agenda!r}")
    check_string(g, w)
    compiled = _compile(g)
    return Chart(compiled, w, g.monotone if prune is None else prune, agenda)


def recognize(g: Grammar, w: Sequence[str], prune: bool | None = None, agenda: str = "fifo") -> bool:
    return parse(g, w, prune, agenda).accepted()


def derive(g: Grammar, w: Sequence[str], prune: bool | None = None) -> DerivationNode | None:
    return parse(g, w, prune).derivation()


def chart_stats(g: Grammar, w: Sequence[str], prune: bool | None = None) -> dict[str, int]:
    ch = parse(g, w, prune)
    return {"items": len(ch), "deductions": ch.deductions}
