"""JSON and SVG views of a configuration.

JSON keeps rationals exact (``"7/2"``); SVG rounds them for display only.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .config import Configuration, all_excursions, check_constraints, contacts_with_line, line_range
from .paths import intersections
from .regions import excursion_area, is_filled


def rat(v) -> int | str:
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return int(v)


def _pt(q) -> list:
    return [rat(q[0]), rat(q[1])]


def _contacts(p1, p2) -> list[dict]:
    # adjacent overlap pieces share an end point; report it once
    seen: dict[tuple, bool] = {}
    for c in intersections(p1, p2):
        for q, d1, d2 in c.endpoints():
            key = (q, d1, d2)
            seen[key] = seen.get(key, False) or c.overlap
    return [
        {"point": _pt(q), "d": [rat(d1), rat(d2)], "overlap": ov}
        for (q, d1, d2), ov in sorted(seen.items(), key=lambda kv: (kv[0][1], kv[0][2]))
    ]


def config_to_dict(cfg: Configuration, k_range: range = range(-1, 2)) -> dict:
    report = check_constraints(cfg)
    doc = {
        "x": cfg.x,
        "y": cfg.y,
        "displacement": [cfg.d.i, cfg.d.j],
        "origin": _pt(cfg.origin),
        "paths": {
            f"{w}[{k}]": [_pt(v) for v in cfg.path(w, k).vertices]
            for w in ("A", "B") for k in k_range
        },
        "points": {f"P[{k}]": _pt(cfg.P(k)) for k in k_range},
        "intersections": {
            "A[0]&B[1]": _contacts(cfg.A(0), cfg.B(1)),
            "A[0]&A[1]": _contacts(cfg.A(0), cfg.A(1)),
            "B[1]&B[0]": _contacts(cfg.B(1), cfg.B(0)),
        },
        "constraints": {
            name: {
                "holds": h,
                "witness": None if w is None else {
                    "condition": w.condition,
                    "point": _pt(w.point),
                    "distances": {kk: rat(vv) for kk, vv in w.distances.items()},
                },
            }
            for name, h, w in zip(("i", "ii", "iii", "iv"), report.holds, report.witnesses)
        },
    }
    crossings, excursions = [], []
    for w in ("A", "B"):
        p = cfg.path(w, 0)
        for k in line_range(cfg, p):
            for c in contacts_with_line(cfg, p, k):
                crossings.append({
                    "path": f"{w}[0]", "k": k, "entry": _pt(c.entry), "exit": _pt(c.exit),
                    "d": [rat(c.d_entry), rat(c.d_exit)],
                    "kind": c.direction or ("touch" if c.is_touch else "end"),
                })
        for e in all_excursions(cfg, w):
            excursions.append({
                "path": f"{w}[0]", "k": e.k, "side": e.side,
                "q1": _pt(e.q1), "q2": _pt(e.q2), "d": [rat(e.d1), rat(e.d2)],
                "area": rat(excursion_area(p, e)), "filled": is_filled(p, e, cfg),
            })
    doc["crossings"] = crossings
    doc["excursions"] = excursions
    return doc


def to_json(cfg: Configuration, k_range: range = range(-1, 2)) -> str:
    return json.dumps(config_to_dict(cfg, k_range), indent=2, sort_keys=True) + "\n"


def _num(v) -> str:
    s = f"{float(v):.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


UNIT = 40
_STYLE = {
    "A": 'stroke="black" stroke-width="2"',
    "B": 'stroke="black" stroke-width="2" stroke-dasharray="2,3"',
}


def to_svg(cfg: Configuration, k_range: range = range(0, 1)) -> str:
    """Paths on a unit grid, lines between P points dashed, P points as dots."""
    paths = [(w, k, cfg.path(w, k)) for w in ("A", "B") for k in k_range]
    pts = [v for _, _, p in paths for v in p.vertices] + [cfg.P(k) for k in k_range]
    xs = [Fraction(v[0]) for v in pts]
    ys = [Fraction(v[1]) for v in pts]
    x0, x1, y0, y1 = min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1

    def sx(v):
        return _num((Fraction(v) - x0) * UNIT)

    def sy(v):
        return _num((y1 - Fraction(v)) * UNIT)

    w, h = _num((x1 - x0) * UNIT), _num((y1 - y0) * UNIT)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        f'<rect width="{w}" height="{h}" fill="white"/>',
    ]
    for gx in range(int(x0), int(x1) + 1):
        out.append(f'<line x1="{sx(gx)}" y1="0" x2="{sx(gx)}" y2="{h}" stroke="#ddd" stroke-width="1"/>')
    for gy in range(int(y0), int(y1) + 1):
        out.append(f'<line x1="0" y1="{sy(gy)}" x2="{w}" y2="{sy(gy)}" stroke="#ddd" stroke-width="1"/>')
    if not cfg.d.is_zero:
        reach = (x1 - x0) + (y1 - y0)
        ks = sorted({k for _, _, p in paths for k in line_range(cfg, p)})
        for k in ks:
            mx = cfg.P(k)[0] + Fraction(cfg.d.i, 2)
            my = cfg.P(k)[1] + Fraction(cfg.d.j, 2)
            n = abs(cfg.d.i) + abs(cfg.d.j)
            ux, uy = Fraction(-cfg.d.j, n) * reach, Fraction(cfg.d.i, n) * reach
            out.append(
                f'<line x1="{sx(mx - ux)}" y1="{sy(my - uy)}" x2="{sx(mx + ux)}" y2="{sy(my + uy)}" '
                f'stroke="gray" stroke-width="1" stroke-dasharray="6,4"/>'
            )
    for which, k, p in paths:
        style = _STYLE[which] + ("" if k == 0 else ' stroke-opacity="0.45"')
        coords = " ".join(f"{sx(v[0])},{sy(v[1])}" for v in p.vertices)
        out.append(f'<polyline points="{coords}" fill="none" {style}><title>{which}[{k}]</title></polyline>')
    for k in k_range:
        q = cfg.P(k)
        out.append(f'<circle cx="{sx(q[0])}" cy="{sy(q[1])}" r="4" fill="black"><title>P[{k}]</title></circle>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
