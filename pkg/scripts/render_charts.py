"""Render the standard charts for C_2, C_4, C_8 into a directory."""
import argparse
from pathlib import Path

from slicetower.cli import JobConfig, cmd_chart


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("charts"))
    ap.add_argument("--window", type=int, default=6)
    ap.add_argument("--format", default="svg", choices=["svg", "tsv", "json"])
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for n in (2, 4, 8):
        for d in [None] + [2 ** j for j in range(n.bit_length())]:
            cfg = JobConfig(n, d, args.window, args.format)
            name = f"C{n}_{'S0' if d is None else f'a{d}'}.{args.format}"
            (args.out / name).write_text(cmd_chart(cfg))
            print(name)


if __name__ == "__main__":
    main()
