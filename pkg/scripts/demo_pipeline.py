#!/usr/bin/env python3
"""End-to-end walkthrough: generate a graph, build the spanner, certify it.

Everything happens through the same code paths as the CLI, but in-process so
the intermediate objects can be printed. Useful as a smoke test and as a
template for notebook-style exploration.
"""
import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from lightspanner.generate import generate_graph
from lightspanner.spanner import build_spanner
from lightspanner.verify import verify_lemma_suite, verify_lightness, verify_stretch


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", default="geometric_unit_square")
    ap.add_argument("--n", type=int, default=400)
    ap.add_argument("--eps", type=float, default=0.05)
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--mode", choices=("all_pairs", "sampled"), default="all_pairs")
    args = ap.parse_args()

    g = generate_graph(args.family, args.n, seed=args.seed)
    print(f"graph: {args.family} n={g.n} m={g.m} total weight {g.total_weight():.4g}")

    sp = build_spanner(g, args.eps, args.k, args.seed)
    print(f"spanner: {sp.size} edges, weight {sp.weight():.4g}")
    for tag, (count, weight) in sorted(sp.per_phase().items()):
        if count:
            print(f"  {tag:10s} {count:6d} edges   weight {weight:.4g}")

    stretch = verify_stretch(g, sp, mode=args.mode)
    print(
        f"stretch [{stretch.mode}]: {'PASS' if stretch.passed else 'FAIL'}   "
        f"worst multiplicative {stretch.worst_mult_stretch:.4f}, "
        f"worst additive slack {stretch.worst_additive_slack:.4g} "
        f"(budget {stretch.bound_used:.4g})"
    )

    lightness = verify_lightness(g, sp)
    print(f"lightness: {lightness.lightness:.4f} (w(H) / w(MST))")

    suite = verify_lemma_suite(g, sp)
    for result in suite.results:
        print(
            f"check {result.name:24s} {'PASS' if result.passed else 'FAIL'} "
            f"({result.checked} facts)"
        )
    return 0 if stretch.passed and suite.passed else 1


if __name__ == "__main__":
    sys.exit(main())
