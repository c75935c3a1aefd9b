"""Walk through the four figure pairs: membership, split conditions and the split taken.

Run:  python3 demos/figures.py [outdir]
Writes one SVG per figure into ``outdir`` (default: the current directory).
"""

import sys
from pathlib import Path

from mcfg_mix.chart import recognize
from mcfg_mix.geometry import Configuration, four_split_conditions, to_svg
from mcfg_mix.grammar import mix_o2_grammar
from mcfg_mix.language import reduce, to_unicode
from mcfg_mix.splitter import find_split

FIGURES = {
    1: (("aBABAb", "ba"), (0, 0)),
    2: (("abaBB", "AAb"), (0, 0)),
    3: (("baaab", "AABBA"), (0, 0)),
    4: (("bbaaBaaBA", "AAA"), (-3, 0)),
}


def main(outdir: Path) -> None:
    g = mix_o2_grammar()
    outdir.mkdir(parents=True, exist_ok=True)
    for n, ((x, y), origin) in FIGURES.items():
        cfg = Configuration.from_strings(x, y, origin=origin)
        print(f"figure {n}: x = {to_unicode(x)}, y = {to_unicode(y)}")
        print(f"  displacement {tuple(cfg.d)}, S(xy) accepted: {recognize(g, x + y)}")
        rx, ry, _ = reduce(x, y)
        if (rx, ry) != (x, y):
            print(f"  reduces to ({rx}, {ry}); the paths revisit points")
        else:
            for w in four_split_conditions(cfg, exact=True):
                dist = ", ".join(f"{k}={v}" for k, v in w.distances.items())
                print(f"  condition {w.condition} at {w.point} ({dist})")
        d = find_split(x, y)
        print(f"  split: rule {d.rule_id} ({d.case}), children {d.children}")
        path = outdir / f"fig{n}.svg"
        path.write_text(to_svg(cfg, range(-1, 2)))
        print(f"  wrote {path}")


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path("."))
