"""Sweep every family over the acceptance ranges and write one CSV per family.

    python scripts/family_sweeps.py --out results/ --jobs 4
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ccczagreb.cli import main as cli_main

SWEEPS = {
    "dihedral": ["--m", "3..60"],
    "dicyclic": ["--m", "2..30"],
    "semidihedral": ["--m", "2..15"],
    "v8m": ["--m", "1..15"],
    "unm": ["--n", "2..4", "--m", "3..16"],
    "gpmn": ["--p", "2,3", "--m", "1..4", "--n", "1..3"],
}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    worst = 0
    for family, ranges in SWEEPS.items():
        target = args.out / f"{family}.csv"
        code = cli_main(["scan", "--family", family, *ranges, "--format", "csv",
                         "--jobs", str(args.jobs), "--output", str(target)])
        print(f"{family:13s} exit {code}  -> {target}")
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
