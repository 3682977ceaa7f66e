"""Recompute pi_{i + j sigma}(HZ / a_lambda(1)) and freeze it as a golden file."""
import argparse
from pathlib import Path

from slicetower.euler_quotients import derive_b_pattern

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[2, 4, 8])
    ap.add_argument("--window", type=int, default=6)
    ap.add_argument("--out", type=Path, default=GOLDEN)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for n in args.n:
        pat = derive_b_pattern(n, args.window)
        path = args.out / f"b_pattern_C{n}.json"
        pat.save(path)
        print(f"C_{n}: {len(pat.entries)} entries -> {path}")
        for j in sorted({j for _, j in pat.entries}):
            row = "  ".join(pat[(i, j)].symbol() for i in range(-args.window, args.window + 1))
            print(f"  j={j:+d}: {row}")


if __name__ == "__main__":
    main()
