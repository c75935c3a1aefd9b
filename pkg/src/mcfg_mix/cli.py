"""Command line interface: ``mcfg-mix <command> ...``.

Exit codes: 0 success/accept, 1 reject or failed check, 2 usage error.
Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import itertools
import math
import os
import random
import statistics
import sys
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import chart
from .geometry import Configuration, GeometryError, four_split_conditions, to_json, to_svg
from .grammar import (
    derivation_to_json,
    derivation_to_sexpr,
    mix_o2_grammar,
    node,
    parse_grammar,
    yield_of,
)
from .language import (
    O2_ALPHABET,
    STEP,
    check_o2,
    displacement,
    from_unicode,
    is_o2,
    reduce,
    sample_o2,
)
from .splitter import SplitError, derive_constructive

# ---------------------------------------------------------------------------
# drivers, usable without the argument parser


def default_jobs() -> int:
    raw = os.environ.get("MCFG_MIX_JOBS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"MCFG_MIX_JOBS must be an integer, got {raw!r}") from None


def _pmap(fn, tasks, jobs: int):
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, tasks))


@dataclass
class CheckReport:
    max_len: int
    method: str
    accepted: dict[int, int] = field(default_factory=dict)
    mismatches: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _constructive_accepts(w: str) -> bool:
    if not is_o2(w):
        return False
    g = mix_o2_grammar()
    return yield_of(g, node(1, derive_constructive(w, "", annotate=False))) == (w,)


def _check_chunk(task) -> tuple[Counter, list[str]]:
    n, method, r, jobs = task
    g = mix_o2_grammar()
    acc: Counter = Counter()
    bad = []
    for idx, t in enumerate(itertools.product(O2_ALPHABET, repeat=n)):
        if idx % jobs != r:
            continue
        w = "".join(t)
        truth = is_o2(w)
        answers = []
        if method in ("chart", "both"):
            answers.append(chart.recognize(g, w))
        if method in ("constructive", "both"):
            answers.append(_constructive_accepts(w))
        if any(a != truth for a in answers):
            bad.append(w)
        acc[n] += all(answers)
    return acc, bad


def run_check(max_len: int, method: str = "chart", jobs: int = 1) -> CheckReport:
    """Compare recognition with the counting oracle on every string up to ``max_len``."""
    report = CheckReport(max_len, method)
    tasks = [(n, method, r, jobs) for n in range(max_len + 1) for r in range(jobs)]
    for acc, bad in _pmap(_check_chunk, tasks, jobs):
        for n, c in acc.items():
            report.accepted[n] = report.accepted.get(n, 0) + c
        report.mismatches += bad
    report.mismatches.sort(key=lambda w: (len(w), w))
    for n in range(max_len + 1):
        report.accepted.setdefault(n, 0)
    return report


def self_avoiding(max_len: int):
    """Every string of length 1..max_len whose path never revisits a point."""
    out = []

    def walk(w, pos, seen):
        if w:
            out.append(w)
        if len(w) == max_len:
            return
        for c in O2_ALPHABET:
            dx, dy = STEP[c]
            q = (pos[0] + dx, pos[1] + dy)
            if q not in seen:
                seen.add(q)
                walk(w + c, q, seen)
                seen.remove(q)

    walk("", (0, 0), {(0, 0)})
    return out


def admissible_pairs(max_len: int):
    """Pairs (x, y): both nonempty and self-avoiding, xy closed, 2 < |xy| <= max_len.

    Self-avoiding is the same as having no nonempty O2 substring.
    """
    saw = self_avoiding(max_len - 1) if max_len >= 2 else []
    by_disp: dict = {}
    for w in saw:
        by_disp.setdefault(displacement(w), []).append(w)
    for x in saw:
        for y in by_disp.get(-displacement(x), ()):
            if 2 < len(x) + len(y) <= max_len:
                yield x, y


@dataclass
class LemmaReport:
    admissible: int = 0
    counterexamples: list[tuple[str, str]] = field(default_factory=list)
    fired: Counter = field(default_factory=Counter)
    first: Counter = field(default_factory=Counter)
    by_length: Counter = field(default_factory=Counter)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def merge(self, other: "LemmaReport") -> None:
        self.admissible += other.admissible
        self.counterexamples += other.counterexamples
        self.fired.update(other.fired)
        self.first.update(other.first)
        self.by_length.update(other.by_length)


def _lemma_one(rep: LemmaReport, x: str, y: str, exact: bool) -> None:
    ws = four_split_conditions(Configuration.from_strings(x, y), exact=exact)
    rep.admissible += 1
    rep.by_length[len(x) + len(y)] += 1
    if not ws:
        rep.counterexamples.append((x, y))
        return
    rep.first[ws[0].condition] += 1
    for w in ws:
        rep.fired[w.condition] += 1


def _lemma_chunk(task) -> LemmaReport:
    max_len, r, jobs, exact = task
    rep = LemmaReport()
    for i, (x, y) in enumerate(admissible_pairs(max_len)):
        if i % jobs == r:
            _lemma_one(rep, x, y, exact)
    return rep


def run_lemma_check(max_len: int, jobs: int = 1, exact: bool = False) -> LemmaReport:
    """Check that some split condition holds for every admissible pair."""
    rep = LemmaReport()
    for part in _pmap(_lemma_chunk, [(max_len, r, jobs, exact) for r in range(jobs)], jobs):
        rep.merge(part)
    rep.counterexamples.sort()
    return rep


def run_lemma_sample(samples: int, length: int, seed: int, exact: bool = False) -> LemmaReport:
    """Random O2 strings, random cut, reduced; admissible reductions are checked."""
    rng = random.Random(seed)
    rep = LemmaReport()
    for _ in range(samples):
        w = sample_o2(length, rng)
        c = rng.randint(0, length)
        x, y, _ = reduce(w[:c], w[c:])
        if x and y and len(x) + len(y) > 2:
            _lemma_one(rep, x, y, exact)
    return rep


@dataclass
class BenchRow:
    length: int
    samples: int
    items: float
    deductions: float
    recognize_ms: tuple[float, float]
    constructive_ms: tuple[float, float]


def _quantiles(xs: list[float]) -> tuple[float, float]:
    xs = sorted(xs)
    p95 = xs[min(len(xs) - 1, math.ceil(0.95 * len(xs)) - 1)]
    return statistics.median(xs), p95


def run_bench(lengths: list[int], samples: int, seed: int, chart_max: int = 40) -> list[BenchRow]:
    """Time recognition and constructive derivation on sampled O2 strings.

    The chart is skipped above ``chart_max`` symbols, where it gets slow.
    """
    g = mix_o2_grammar()
    rng = random.Random(seed)
    rows = []
    for n in lengths:
        words = [sample_o2(n, rng) for _ in range(samples)]
        items, deds, rt, ct = [], [], [], []
        for w in words:
            if n <= chart_max:
                t0 = time.perf_counter()
                ch = chart.parse(g, w)
                ok = ch.accepted()
                rt.append((time.perf_counter() - t0) * 1e3)
                if not ok:
                    raise RuntimeError(f"recognizer rejected O2 string {w!r}")
                items.append(len(ch))
                deds.append(ch.deductions)
            t0 = time.perf_counter()
            derive_constructive(w, "", annotate=False)
            ct.append((time.perf_counter() - t0) * 1e3)
        nan = float("nan")
        rows.append(BenchRow(
            n, samples,
            statistics.median(items) if items else nan,
            statistics.median(deds) if deds else nan,
            _quantiles(rt) if rt else (nan, nan),
            _quantiles(ct),
        ))
    return rows


def growth_exponent(points: list[tuple[int, float]]) -> float:
    """Least-squares slope of log(value) against log(length)."""
    pts = [(math.log(n), math.log(v)) for n, v in points if n > 0 and v > 0]
    if len(pts) < 2:
        raise ValueError("need at least two lengths to fit an exponent")
    xs, ys = zip(*pts)
    return statistics.linear_regression(xs, ys).slope


# ---------------------------------------------------------------------------
# argument parsing


class UsageError(Exception):
    pass


def _word(text: str, unicode: bool) -> str:
    w = from_unicode(text) if unicode else text
    try:
        check_o2(w)
    except ValueError as e:
        raise UsageError(str(e)) from None
    return w


def _k_range(text: str) -> range:
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise UsageError(f"--k-range wants a..b, got {text!r}") from None
    if hi < lo:
        raise UsageError(f"empty --k-range {text!r}")
    return range(lo, hi + 1)


def _origin(text: str):
    try:
        a, b = text.split(",")
        return int(a), int(b)
    except ValueError:
        raise UsageError(f"--origin wants X,Y, got {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma separated integers, got {text!r}") from None


def cmd_recognize(args, out) -> int:
    if args.grammar:
        try:
            g = parse_grammar(Path(args.grammar).read_text())
        except OSError as e:
            raise UsageError(f"cannot read grammar: {e}") from None
        except ValueError as e:
            raise UsageError(f"bad grammar: {e}") from None
        text = from_unicode(args.string) if args.unicode else args.string
        w = text.split() if " " in text else list(text)
        try:
            ok = chart.recognize(g, w)
        except ValueError as e:
            raise UsageError(str(e)) from None
    else:
        ok = chart.recognize(mix_o2_grammar(), _word(args.string, args.unicode))
    print("accept" if ok else "reject", file=out)
    return 0 if ok else 1


def cmd_derive(args, out) -> int:
    w = _word(args.string, args.unicode)
    g = mix_o2_grammar()
    if not is_o2(w):
        print(f"error: {w!r} is not in O2, no derivation exists", file=sys.stderr)
        return 1
    if args.method == "chart":
        tree = chart.derive(g, w)
    else:
        tree = node(1, derive_constructive(w, ""))
    if tree is None or yield_of(g, tree) != (w,):
        print(f"error: derivation of {w!r} does not replay", file=sys.stderr)
        return 1
    print(derivation_to_json(tree) if args.format == "json" else derivation_to_sexpr(tree), file=out)
    return 0


def cmd_check(args, out) -> int:
    rep = run_check(args.max_len, args.method, args.jobs)
    print(f"method {rep.method}, lengths 0..{rep.max_len}", file=out)
    for n in range(rep.max_len + 1):
        print(f"length {n}: {rep.accepted[n]} accepted", file=out)
    print(f"mismatches: {len(rep.mismatches)}", file=out)
    for w in rep.mismatches[:20]:
        print(f"  {w}", file=out)
    return 0 if rep.ok else 1


def cmd_lemma_check(args, out) -> int:
    if args.samples is not None:
        if args.len is None:
            raise UsageError("--samples needs --len")
        if args.len % 2:
            raise UsageError("--len must be even")
        rep = run_lemma_sample(args.samples, args.len, args.seed, args.exact)
        print(f"sampled {args.samples} cuts of length {args.len} (seed {args.seed})", file=out)
    else:
        if args.max_len is None:
            raise UsageError("give --max-len N or --samples K --len L")
        rep = run_lemma_check(args.max_len, args.jobs, args.exact)
        print(f"all admissible pairs with |xy| <= {args.max_len}", file=out)
    print(f"admissible pairs: {rep.admissible}", file=out)
    for n in sorted(rep.by_length):
        print(f"  |xy| = {n}: {rep.by_length[n]}", file=out)
    for c in (1, 2, 3, 4):
        print(f"condition {c}: holds for {rep.fired[c]}, first for {rep.first[c]}", file=out)
    print(f"counterexamples: {len(rep.counterexamples)}", file=out)
    for x, y in rep.counterexamples[:20]:
        print(f"  x={x} y={y}", file=out)
    return 0 if rep.ok else 1


def cmd_geometry(args, out) -> int:
    x, y = _word(args.x, args.unicode), _word(args.y, args.unicode)
    if not x or not y:
        raise UsageError("both strings must be nonempty")
    try:
        cfg = Configuration.from_strings(x, y, args.origin)
        cfg.require_geometry()
    except GeometryError as e:
        raise UsageError(str(e)) from None
    if args.svg:
        Path(args.svg).write_text(to_svg(cfg, args.k_range))
    if args.json:
        Path(args.json).write_text(to_json(cfg, args.k_range))
    if not args.svg and not args.json:
        out.write(to_json(cfg, args.k_range))
    return 0


def cmd_bench(args, out) -> int:
    if any(n < 0 or n % 2 for n in args.lengths):
        raise UsageError("lengths must be even and nonnegative")
    rows = run_bench(args.lengths, args.samples, args.seed, args.chart_max)
    print("length samples items deductions recognize_med_ms recognize_p95_ms "
          "constructive_med_ms constructive_p95_ms", file=out)
    for r in rows:
        print(f"{r.length} {r.samples} {r.items:g} {r.deductions:g} "
              f"{r.recognize_ms[0]:.3f} {r.recognize_ms[1]:.3f} "
              f"{r.constructive_ms[0]:.3f} {r.constructive_ms[1]:.3f}", file=out)
    fit = [(r.length, r.items) for r in rows if 8 <= r.length <= 24 and r.items == r.items]
    if len(fit) >= 2:
        print(f"chart item growth exponent (lengths 8..24): {growth_exponent(fit):.3f}", file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mcfg-mix", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def strings(sp):
        sp.add_argument("--unicode", action="store_true", help="accept ā and b̄ in input strings")

    r = sub.add_parser("recognize", help="decide membership of one string")
    src = r.add_mutually_exclusive_group()
    src.add_argument("--grammar", metavar="FILE", help="grammar in text format")
    src.add_argument("--mix-o2", action="store_true", help="the built-in O2 grammar (default)")
    r.add_argument("string")
    strings(r)
    r.set_defaults(fn=cmd_recognize)

    d = sub.add_parser("derive", help="print a derivation of S(w)")
    d.add_argument("string")
    d.add_argument("--method", choices=("chart", "constructive"), default="chart")
    d.add_argument("--format", choices=("json", "sexpr"), default="json")
    strings(d)
    d.set_defaults(fn=cmd_derive)

    c = sub.add_parser("check", help="compare against the counting oracle exhaustively")
    c.add_argument("--max-len", type=int, required=True)
    c.add_argument("--method", choices=("chart", "constructive", "both"), default="both")
    c.add_argument("--jobs", type=int, default=None)
    c.set_defaults(fn=cmd_check)

    lc = sub.add_parser("lemma-check", help="every admissible pair has a split condition")
    lc.add_argument("--max-len", type=int)
    lc.add_argument("--samples", type=int)
    lc.add_argument("--len", type=int)
    lc.add_argument("--seed", type=int, default=0)
    lc.add_argument("--exact", action="store_true", help="use segment geometry instead of vertices")
    lc.add_argument("--jobs", type=int, default=None)
    lc.set_defaults(fn=cmd_lemma_check)

    g = sub.add_parser("geometry", help="JSON and SVG views of the paths of (x, y)")
    g.add_argument("x")
    g.add_argument("y")
    g.add_argument("--k-range", type=str, default="0..1")
    g.add_argument("--origin", type=str, default="0,0", help="position of P[0]")
    g.add_argument("--svg", metavar="FILE")
    g.add_argument("--json", metavar="FILE")
    strings(g)
    g.set_defaults(fn=cmd_geometry)

    b = sub.add_parser("bench", help="timing table on sampled strings")
    b.add_argument("--lengths", type=str, default="8,12,16,20,24")
    b.add_argument("--samples", type=int, default=5)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--chart-max", type=int, default=40)
    b.set_defaults(fn=cmd_bench)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if hasattr(args, "jobs"):
            args.jobs = default_jobs() if args.jobs is None else args.jobs
            if args.jobs < 1:
                raise UsageError("--jobs must be positive")
        if getattr(args, "max_len", None) is not None and args.max_len < 0:
            raise UsageError("--max-len must be nonnegative")
        if args.command == "geometry":
            args.k_range = _k_range(args.k_range)
            args.origin = _origin(args.origin)
        if args.command == "bench":
            args.lengths = _int_list(args.lengths)
        return args.fn(args, out)
    except (UsageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except SplitError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
