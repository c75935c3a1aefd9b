"""Multiple context-free grammars: rules, validation, derivation trees.

A rule's composition gives one sequence of terms per left-hand-side
argument.  A term is either a terminal literal or a reference to argument
``arg`` of right-hand-side child ``child`` (both 0-based).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .language import A, ABAR, B, BBAR, O2_ALPHABET


@dataclass(frozen=True)
class Predicate:
    name: str
    fanout: int

    def __str__(self):
        return f"{self.name}/{self.fanout}"


@dataclass(frozen=True)
class Lit:
    symbol: str


@dataclass(frozen=True)
class Var:
    child: int
    arg: int


Term = Union[Lit, Var]


@dataclass(frozen=True)
class Rule:
    id: int
    lhs: Predicate
    rhs: tuple[Predicate, ...]
    composition: tuple[tuple[Term, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.rhs)


@dataclass(frozen=True)
class Grammar:
    terminals: tuple[str, ...]
    predicates: tuple[Predicate, ...]
    rules: tuple[Rule, ...]
    start: Predicate
    # Hint for the recognizer: every derivable item keeps argument i
    # entirely before argument i+1 in the input.
    monotone: bool = False

    def rule(self, rule_id: int) -> Rule:
        for r in self.rules:
            if r.id == rule_id:
                return r
        raise KeyError(f"no rule with id {rule_id}")


@dataclass(frozen=True)
class DerivationNode:
    rule_id: int
    children: tuple["DerivationNode", ...] = ()
    # Free-form provenance (e.g. which proof case produced the split).
    note: dict | None = field(default=None, compare=False, hash=False)

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0)


class GrammarError(ValueError):
    pass


class StructureError(ValueError):
    """A derivation tree does not fit the grammar."""


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    rule_id: int | None = None


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def __bool__(self):
        return bool(self.violations)


def validate_grammar(g: Grammar) -> ValidationReport:
    out: list[Violation] = []
    preds = {p.name: p for p in g.predicates}
    terminals = set(g.terminals)
    if g.start.fanout != 1:
        out.append(Violation("start fanout", f"start {g.start} must have fanout 1"))
    if g.start.name not in preds:
        out.append(Violation("unresolved predicate", f"start {g.start} not declared"))
    for p in g.predicates:
        if p.fanout < 1:
            out.append(Violation("fanout", f"{p} has fanout < 1"))
    for r in g.rules:
        if r.rank > 2:
            out.append(Violation("rank exceeds 2", f"rule {r.id} has rank {r.rank}", r.id))
        for p in (r.lhs, *r.rhs):
            if preds.get(p.name) != p:
                out.append(Violation("unresolved predicate", f"rule {r.id} uses {p}", r.id))
        if len(r.composition) != r.lhs.fanout:
            out.append(Violation(
                "arity mismatch",
                f"rule {r.id}: {len(r.composition)} arguments for {r.lhs}", r.id))
        used: dict[tuple[int, int], int] = {}
        for seq in r.composition:
            for t in seq:
                if isinstance(t, Lit):
                    if t.symbol not in terminals:
                        out.append(Violation(
                            "unknown terminal", f"rule {r.id}: {t.symbol!r}", r.id))
                elif t.child >= r.rank or t.arg >= r.rhs[t.child].fanout:
                    out.append(Violation(
                        "unresolved variable", f"rule {r.id}: {t} out of range", r.id))
                else:
                    used[(t.child, t.arg)] = used.get((t.child, t.arg), 0) + 1
        for c, p in enumerate(r.rhs):
            for a in range(p.fanout):
                n = used.get((c, a), 0)
                if n == 0:
                    out.append(Violation(
                        "deleted variable", f"rule {r.id}: child {c} arg {a} unused", r.id))
                elif n > 1:
                    out.append(Violation(
                        "duplicated variable",
                        f"rule {r.id}: child {c} arg {a} used {n} times", r.id))
    # reachability from the start predicate
    reach = {g.start.name}
    changed = True
    while changed:
        changed = False
        for r in g.rules:
            if r.lhs.name in reach:
                for p in r.rhs:
                    if p.name not in reach:
                        reach.add(p.name)
                        changed = True
    for p in g.predicates:
        if p.name not in reach:
            out.append(Violation("unreachable predicate", f"{p} not reachable from start"))
    return ValidationReport(tuple(out))


def yield_of(g: Grammar, d: DerivationNode) -> tuple[str, ...]:
    """Evaluate a derivation tree bottom-up to the argument tuple of its root."""
    r = g.rule(d.rule_id)
    if len(d.children) != r.rank:
        raise StructureError(
            f"rule {r.id} has rank {r.rank} but node has {len(d.children)} children")
    parts = []
    for i, child in enumerate(d.children):
        child_rule = g.rule(child.rule_id)
        if child_rule.lhs != r.rhs[i]:
            raise StructureError(
                f"rule {r.id} slot {i} expects {r.rhs[i]}, child rule {child_rule.id} "
                f"derives {child_rule.lhs}")
        parts.append(yield_of(g, child))
    return tuple(
        "".join(t.symbol if isinstance(t, Lit) else parts[t.child][t.arg] for t in seq)
        for seq in r.composition
    )


S_PRED = Predicate("S", 1)
R_PRED = Predicate("R", 2)


def mix_o2_grammar() -> Grammar:
    """The 10-rule MCFG generating O2, rules numbered 1..10."""
    x, y, p, q = Var(0, 0), Var(0, 1), Var(1, 0), Var(1, 1)
    RR = (R_PRED, R_PRED)
    rules = (
        Rule(1, S_PRED, (R_PRED,), ((x, y),)),
        Rule(2, R_PRED, RR, ((x, p), (y, q))),
        Rule(3, R_PRED, RR, ((x, p), (q, y))),
        Rule(4, R_PRED, RR, ((x, p, y), (q,))),
        Rule(5, R_PRED, RR, ((p,), (x, q, y))),
        Rule(6, R_PRED, (), ((Lit(A),), (Lit(ABAR),))),
        Rule(7, R_PRED, (), ((Lit(ABAR),), (Lit(A),))),
        Rule(8, R_PRED, (), ((Lit(B),), (Lit(BBAR),))),
        Rule(9, R_PRED, (), ((Lit(BBAR),), (Lit(B),))),
        Rule(10, R_PRED, (), ((), ())),
    )
    return Grammar(O2_ALPHABET, (S_PRED, R_PRED), rules, S_PRED, monotone=True)


# ---------------------------------------------------------------------------
# text format:  R(x p, q y) <- R(x, y) R(p, q)      R(a, A) <-      R(eps, eps) <-

_ATOM = re.compile(r"\s*([A-Za-z_][\w']*)\s*\(([^()]*)\)")
EPS = "eps"


def _atoms(text: str, lineno: int) -> list[tuple[str, list[str]]]:
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _ATOM.match(text, pos)
        if not m:
            raise GrammarError(f"line {lineno}: cannot parse {text[pos:]!r}")
        args = [a.strip() for a in m.group(2).split(",")] if m.group(2).strip() else []
        out.append((m.group(1), args))
        pos = m.end()
    return out


def parse_grammar(text: str, start: str | None = None) -> Grammar:
    """Parse the one-rule-per-line format; rules get ids 1, 2, ... in order."""
    raw = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "<-" not in line:
            raise GrammarError(f"line {lineno}: missing '<-'")
        head, body = line.split("<-", 1)
        heads = _atoms(head, lineno)
        if len(heads) != 1:
            raise GrammarError(f"line {lineno}: exactly one left-hand side expected")
        raw.append((lineno, heads[0], _atoms(body, lineno)))
    if not raw:
        raise GrammarError("empty grammar")

    fanouts: dict[str, int] = {}

    def note(name, n, lineno):
        if fanouts.setdefault(name, n) != n:
            raise GrammarError(f"line {lineno}: {name} used with fanouts {fanouts[name]} and {n}")

    for lineno, (hname, hargs), body in raw:
        note(hname, len(hargs), lineno)
        for bname, bargs in body:
            note(bname, len(bargs), lineno)
    preds = {n: Predicate(n, f) for n, f in fanouts.items()}

    rules, terminals = [], []
    for rid, (lineno, (hname, hargs), body) in enumerate(raw, 1):
        binding: dict[str, Var] = {}
        for c, (_, bargs) in enumerate(body):
            for a, v in enumerate(bargs):
                if len(v.split()) != 1:
                    raise GrammarError(f"line {lineno}: body arguments must be single variables")
                if v in binding:
                    raise GrammarError(f"line {lineno}: variable {v} bound twice")
                binding[v] = Var(c, a)
        comp = []
        for arg in hargs:
            seq = []
            for tok in arg.split():
                if tok == EPS:
                    continue
                if tok in binding:
                    seq.append(binding[tok])
                else:
                    seq.append(Lit(tok))
                    if tok not in terminals:
                        terminals.append(tok)
            comp.append(tuple(seq))
        rules.append(Rule(rid, preds[hname], tuple(preds[b] for b, _ in body), tuple(comp)))
    start_pred = preds[start] if start else rules[0].lhs
    return Grammar(tuple(terminals), tuple(preds.values()), tuple(rules), start_pred)


_VARNAMES = ("x", "y", "p", "q", "u", "v", "s", "t")


def format_rule(r: Rule) -> str:
    def var(t: Var) -> str:
        k = t.child * max((p.fanout for p in r.rhs), default=1) + t.arg
        return _VARNAMES[k] if k < len(_VARNAMES) else f"v{t.child}_{t.arg}"

    head = ", ".join(
        " ".join(t.symbol if isinstance(t, Lit) else var(t) for t in seq) or EPS
        for seq in r.composition
    )
    body = " ".join(
        f"{p.name}(" + ", ".join(var(Var(c, a)) for a in range(p.fanout)) + ")"
        for c, p in enumerate(r.rhs)
    )
    return f"{r.lhs.name}({head}) <- {body}".rstrip()


def format_grammar(g: Grammar) -> str:
    return "\n".join(format_rule(r) for r in g.rules) + "\n"


# ---------------------------------------------------------------------------
# derivation trees on the wire


def derivation_to_dict(d: DerivationNode, annotate: bool = True) -> dict:
    out: dict = {"rule": d.rule_id, "children": [derivation_to_dict(c, annotate) for c in d.children]}
    if annotate and d.note:
        out["annotation"] = d.note
    return out


def derivation_from_dict(obj: dict) -> DerivationNode:
    return DerivationNode(
        int(obj["rule"]),
        tuple(derivation_from_dict(c) for c in obj.get("children", ())),
        obj.get("annotation"),
    )


def derivation_to_json(d: DerivationNode, annotate: bool = True) -> str:
    return json.dumps(derivation_to_dict(d, annotate), separators=(",", ":"))


def derivation_to_sexpr(d: DerivationNode) -> str:
    if not d.children:
        return f"({d.rule_id})"
    return f"({d.rule_id} " + " ".join(derivation_to_sexpr(c) for c in d.children) + ")"


def leaf(rule_id: int) -> DerivationNode:
    return DerivationNode(rule_id)


def node(rule_id: int, *children: DerivationNode, note: dict | None = None) -> DerivationNode:
    return DerivationNode(rule_id, tuple(children), note)


def iter_nodes(d: DerivationNode) -> Iterable[DerivationNode]:
    yield d
    for c in d.children:
        yield from iter_nodes(c)


def axiom_for(x: str, y: str) -> int | None:
    """Rule id of the axiom deriving ``R(x, y)`` in the O2 grammar, if any."""
    return {(A, ABAR): 6, (ABAR, A): 7, (B, BBAR): 8, (BBAR, B): 9, ("", ""): 10}.get((x, y))


def check_string(g: Grammar, w: Sequence[str]) -> None:
    bad = set(w) - set(g.terminals)
    if bad:
        raise ValueError(f"symbols outside the grammar's terminals: {sorted(bad)}")
