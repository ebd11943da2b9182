#!/usr/bin/env python3
"""Parameter sweep over families x sizes x levels, writing sweep.csv.

The defaults reproduce the size/lightness trend tables; tweak via flags, e.g.

    python scripts/run_sweep.py --ns 256 1024 --seeds 0 1 2 --out results/

Rows land in <out>/sweep.csv with the stable column set; per-cell progress
goes to stdout as the grid runs.
"""
import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from lightspanner.cli import run_sweep
from lightspanner.generate import FAMILIES


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--families", nargs="+", choices=FAMILIES, default=["geometric_unit_square"])
    ap.add_argument("--ns", nargs="+", type=int, default=[256, 1024, 4096])
    ap.add_argument("--ks", nargs="+", type=int, default=[2])
    ap.add_argument("--epss", nargs="+", type=float, default=[0.05])
    ap.add_argument("--seeds", nargs="+", type=int, default=[0, 1, 2, 3, 4])
    ap.add_argument("--mode", choices=("all_pairs", "sampled"), default="sampled")
    ap.add_argument("--sample-size", type=int, default=64)
    ap.add_argument("--out", default=".")
    args = ap.parse_args()

    out_path = os.path.join(args.out, "sweep.csv")
    rows = run_sweep(
        families=args.families,
        ns=args.ns,
        ks=args.ks,
        epss=args.epss,
        seeds=args.seeds,
        mode=args.mode,
        sample_size=args.sample_size,
        out_path=out_path,
        progress=print,
    )
    print(f"wrote {out_path}: {len(rows)} cells")
    return 0


if __name__ == "__main__":
    sys.exit(main())
