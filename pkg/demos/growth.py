"""Chart size against input length on sampled O2 strings, with a log-log fit.

Run:  python3 demos/growth.py [max_len]
"""

import sys

from mcfg_mix.cli import growth_exponent, run_bench


def main(max_len: int) -> None:
    rows = run_bench(list(range(8, max_len + 1, 4)), samples=5, seed=0)
    print(f"{'n':>4} {'items':>8} {'deductions':>11} {'parse ms':>9}")
    for r in rows:
        print(f"{r.length:>4} {r.items:>8.0f} {r.deductions:>11.0f} {r.recognize_ms[0]:>9.1f}")
    pts = [(r.length, r.items) for r in rows]
    print(f"items grow like n^{growth_exponent(pts):.2f}")
    print(f"deductions grow like n^{growth_exponent([(r.length, r.deductions) for r in rows]):.2f}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 32)
