import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mcfg_mix.cli import admissible_pairs
from mcfg_mix.geometry import (
    BlockReason,
    Configuration,
    all_excursions,
    check_constraints,
    crossing_count,
    find_excursions,
    normalize,
    offset_schedule,
    self_intersections,
    truncate,
)
from mcfg_mix.geometry.normal import candidates, cut_points
from mcfg_mix.language import displacement, sample_o2

from conftest import FIG1, FIG4

ADMISSIBLE = list(admissible_pairs(10))


def drawn_excursion(cfg):
    """The detour drawn in the figure: right excursion from (0, 2.3) back to (0, 1)."""
    return next(e for e in find_excursions(cfg, cfg.A(0), 0)
                if e.side == "right" and e.q1 == (0, Fraction(23, 10)) and e.q2 == (0, 1))


def test_fig5_truncation_matches_fig6(fig5):
    e = drawn_excursion(fig5)
    c1, c2 = cut_points(fig5, "A", e, Fraction(1, 2))
    # line m is x = 1 (offset 1/2 toward P[1] = (2, -1/2))
    assert c1[1] == (1, Fraction(33, 10)) and c2[1] == (1, Fraction(3, 2))
    out = truncate(fig5, "A", e, Fraction(1, 2))
    assert isinstance(out, Configuration)
    F = Fraction
    assert out.A(0).vertices == (
        (-2, F(-1, 2)), (-2, 4), (1, 4), (1, F(33, 10)), (1, F(3, 2)), (F(3, 2), F(7, 4)), (2, F(-1, 2)),
    )
    assert crossing_count(fig5) - crossing_count(out) >= 2
    assert crossing_count(fig5) == 6 and crossing_count(out) == 2
    assert find_excursions(out, out.A(0), 0) == []


def test_truncation_moves_every_translate(fig5):
    out = truncate(fig5, "A", drawn_excursion(fig5), Fraction(1, 2))
    for k in (-1, 1, 2):
        assert out.A(k) == out.A(0).translate(out.P(k) - out.P(0))
    assert out.B(1) == fig5.B(1)


def test_normalize_fig5(fig5):
    nf = normalize(fig5)
    A, B, trace = nf
    assert all_excursions(nf.config, "A") == [] and all_excursions(nf.config, "B") == []
    assert len(trace) == 2
    # smallest area first: the nested excursion goes before the outer ones
    areas = [t.area for t in trace]
    assert areas == sorted(areas)
    for t in trace:
        assert t.count_before - t.count_after >= 2
    assert A.start == fig5.P(0) and A.end == fig5.P(1) and B == fig5.B(0)


def test_normalize_excursion_free_is_identity():
    cfg = Configuration.from_strings(*FIG4)
    nf = normalize(cfg)
    assert nf.trace == [] and nf.config == cfg and nf.scans == 1


def test_channel_is_blocked_by_constraint_ii(channel):
    e = next(e for e in all_excursions(channel, "A") if e.side == "right" and not e.zero_area)
    assert check_constraints(channel, exact=True).holds[1]
    reasons = set()
    for q in range(2, 9):
        for p in range(1, q):
            out = truncate(channel, "A", e, Fraction(p, q))
            reasons.add(out)
    assert reasons == {BlockReason.CONSTRAINT_II}


def test_truncate_rejects_bad_arguments(fig5):
    e = drawn_excursion(fig5)
    for off in (0, 1, Fraction(3, 2), -1):
        with pytest.raises(ValueError):
            truncate(fig5, "A", e, off)
    with pytest.raises(ValueError):
        truncate(fig5, "C", e, Fraction(1, 2))
    with pytest.raises(ValueError):
        truncate(fig5, "B", e, Fraction(1, 2))


def test_offset_schedule():
    assert offset_schedule() == [Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)]
    assert offset_schedule(1) == [Fraction(1, 2)]


def test_zero_area_truncation_always_succeeds():
    seen = 0
    for x, y in ADMISSIBLE[::5]:
        cfg = Configuration.from_strings(x, y)
        for which in ("A", "B"):
            for e in all_excursions(cfg, which):
                if not e.zero_area:
                    continue
                seen += 1
                outs = [truncate(cfg, which, e, off) for off in offset_schedule()]
                assert any(isinstance(o, Configuration) for o in outs), (x, y, which, e, outs)
    assert seen > 500


def test_zero_area_truncation_of_fig1():
    cfg = Configuration.from_strings(*FIG1)
    for e in all_excursions(cfg, "A"):
        assert e.zero_area
        assert isinstance(truncate(cfg, "A", e, Fraction(1, 2)), Configuration)


def _check_success(cfg, which, new):
    old_p, new_p = cfg.path(which, 0), new.path(which, 0)
    assert (new_p.start, new_p.end) == (old_p.start, old_p.end)
    assert new.d == cfg.d
    assert crossing_count(new) < crossing_count(cfg)
    if not self_intersections(old_p):
        assert not self_intersections(new_p)
    before = check_constraints(cfg, exact=True).holds
    after = check_constraints(new, exact=True).holds
    assert all(a or not b for a, b in zip(after, before))


@settings(max_examples=60)
@given(st.sampled_from(ADMISSIBLE), st.sampled_from([Fraction(1, 2), Fraction(1, 3), Fraction(1, 8)]))
def test_successful_truncation_invariants(pair, off):
    cfg = Configuration.from_strings(*pair)
    for which in ("A", "B"):
        for e in all_excursions(cfg, which):
            out = truncate(cfg, which, e, off)
            if isinstance(out, Configuration):
                _check_success(cfg, which, out)
            else:
                assert isinstance(out, BlockReason)


def test_fig5_truncation_invariants(fig5):
    for _, _, _, _, which, e in candidates(fig5):
        for off in offset_schedule():
            out = truncate(fig5, which, e, off)
            if isinstance(out, Configuration):
                _check_success(fig5, which, out)


def test_normalize_bound_on_random_pairs():
    rng = random.Random(7)
    runs = 0
    while runs < 40:
        w = sample_o2(2 * rng.randint(2, 6), rng)
        cut = rng.randint(1, len(w) - 1)
        x, y = w[:cut], w[cut:]
        if displacement(x).is_zero:
            continue
        runs += 1
        cfg = Configuration.from_strings(x, y)
        nf = normalize(cfg)
        assert len(nf.trace) <= crossing_count(cfg) // 2
        assert nf.scans == len(nf.trace) + 1
        for t in nf.trace:
            assert t.count_after <= t.count_before - 2
        # nothing left that the schedule can truncate
        for _, _, _, _, which, e in candidates(nf.config):
            for off in offset_schedule():
                assert not isinstance(truncate(nf.config, which, e, off), Configuration)


def test_normalize_max_steps(fig5):
    assert len(normalize(fig5, max_steps=1).trace) == 1


def test_blocked_reason_values():
    assert BlockReason.CONSTRAINT_II == "constraint (ii)"
    assert {r.value for r in BlockReason} >= {"self-intersection", "no cut points"}
