"""Truncate an excursion and normalize, printing each step.

The configuration has d = (4, 0) and P[0] = (-2, -1/2), so line 0 is x = 0.
A[0] dips across it twice; one of the outer detours holds a smaller one.

Run:  python3 demos/truncation.py
"""

from fractions import Fraction as F

from mcfg_mix.geometry import (
    Configuration,
    all_excursions,
    crossing_count,
    excursion_area,
    normalize,
)

A0 = [(-2, F(-1, 2)), (-2, 4), (1, 4), (1, F(33, 10)), (0, F(23, 10)), (0, F(9, 5)), (-1, 1),
      (-1, F(-1, 4)), (1, F(-1, 4)), (F(-1, 2), F(3, 4)), (0, 1), (F(3, 2), F(7, 4)), (2, F(-1, 2))]
B1 = [(2, F(-1, 2)), (0, -2), (-2, F(-1, 2))]


def build() -> Configuration:
    o = (F(-2), F(-1, 2))
    p1 = (o[0] + 4, o[1])
    a = [(x - o[0], y - o[1]) for x, y in A0]
    b = [(x - p1[0], y - p1[1]) for x, y in B1]
    return Configuration.from_shapes(a, b, origin=o)


def main() -> None:
    cfg = build()
    print(f"crossings before: {crossing_count(cfg)}")
    for e in all_excursions(cfg, "A"):
        print(f"  {e.side:5} excursion at line {e.k}: {e.q1} -> {e.q2}, area {excursion_area(cfg.A(0), e)}")
    nf = normalize(cfg)
    for t in nf.trace:
        print(f"truncated a {t.excursion.side} excursion of area {t.area} at offset {t.offset}: "
              f"{t.count_before} -> {t.count_after} crossings")
    print(f"normal form after {nf.scans} scans; A[0] vertices:")
    for v in nf.config.A(0).vertices:
        print("  ", tuple(str(c) for c in v))


if __name__ == "__main__":
    main()
