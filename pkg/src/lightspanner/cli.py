"""Command-line front end: generate, build, verify, inspect, sweep.

Artifacts use fixed names inside --output-dir (graph.<fmt>, spanner.json,
spanner.edge_list, stretch_report.json, lightness_report.json, sweep.csv) so
pipelines can chain commands without passing filenames around. All writes are
atomic (temp file + rename) and byte-deterministic for a given command line
and inputs: JSON is dumped with sorted keys and no timestamps.

Exit codes: 0 success (and every requested verification passed), 1 a
verification reported violations, 2 an error in any stage.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from typing import Callable, Iterable, Sequence

from .errors import SpannerError
from .generate import FAMILIES, generate_graph
from .graph import WeightedGraph
from .graphio import FORMATS, read_graph, write_graph
from .nets import EPS_SAFE_LIMIT
from .spanner import Spanner, build_spanner, build_wmax_spanner, spanner_from_json_dict
from .verify import verify_lightness, verify_stretch

SWEEP_HEADER = (
    "n",
    "k",
    "eps",
    "seed",
    "family",
    "size",
    "lightness",
    "worst_mult",
    "worst_slack",
    "bound",
    "runtime_ms",
)


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    tmp = os.path.join(directory, f".{os.path.basename(path)}.tmp")
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _dump_json(path: str, payload: dict) -> None:
    _atomic_write(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _load_graph(args: argparse.Namespace) -> WeightedGraph:
    return read_graph(args.input, args.format)


def _write_spanner_artifacts(sp: Spanner, out_dir: str) -> None:
    _dump_json(os.path.join(out_dir, "spanner.json"), sp.to_json_dict())
    sub = WeightedGraph(
        sp.host.n, [(u, v, sp.host.weight_of(u, v)) for u, v in sorted(sp.edges)]
    )
    os.makedirs(out_dir, exist_ok=True)
    write_graph(sub, os.path.join(out_dir, "spanner.edge_list"), "edge_list")


def _print_spanner_summary(sp: Spanner) -> None:
    print(f"spanner: kind={sp.params.kind} n={sp.host.n} size={sp.size} weight={sp.weight():.6g}")
    for tag, (count, weight) in sorted(sp.per_phase().items()):
        if count:
            print(f"  {tag}: {count} edges, weight {weight:.6g}")


def cmd_gen(args: argparse.Namespace) -> int:
    g = generate_graph(
        args.family,
        args.n,
        seed=args.seed,
        p=args.p,
        radius=args.radius,
        rows=args.rows,
        cols=args.cols,
        weight_range=(args.weight_lo, args.weight_hi),
    )
    os.makedirs(args.output_dir, exist_ok=True)
    path = os.path.join(args.output_dir, f"graph.{args.format}")
    write_graph(g, path, args.format)
    print(f"wrote {path}: n={g.n} m={g.m} weight={g.total_weight():.6g}")
    return 0


def cmd_build(args: argparse.Namespace) -> int:
    g = _load_graph(args)
    sp = build_spanner(
        g, args.eps, args.k, args.seed, unsafe_eps=args.unsafe_eps, keep_internals=False
    )
    _write_spanner_artifacts(sp, args.output_dir)
    _print_spanner_summary(sp)
    return 0


def cmd_build_wmax(args: argparse.Namespace) -> int:
    g = _load_graph(args)
    sp = build_wmax_spanner(g, args.eps, keep_internals=False)
    _write_spanner_artifacts(sp, args.output_dir)
    _print_spanner_summary(sp)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    g = _load_graph(args)
    with open(args.spanner, "r", encoding="utf-8") as fh:
        sp = spanner_from_json_dict(json.load(fh), g)
    stretch = verify_stretch(
        g, sp, mode=args.mode, sample_size=args.sample_size, seed=args.seed
    )
    lightness = verify_lightness(g, sp)
    _dump_json(os.path.join(args.output_dir, "stretch_report.json"), stretch.to_json_dict())
    _dump_json(os.path.join(args.output_dir, "lightness_report.json"), lightness.to_json_dict())
    print(
        f"stretch: {'PASS' if stretch.passed else 'FAIL'} "
        f"(pairs={stretch.pairs_checked} worst_mult={stretch.worst_mult_stretch:.6g} "
        f"worst_slack={stretch.worst_additive_slack:.6g} bound={stretch.bound_used:.6g})"
    )
    print(
        f"lightness: {'PASS' if lightness.passed else 'FAIL'} "
        f"(size={lightness.size} lightness={lightness.lightness:.6g})"
    )
    return 0 if stretch.passed and lightness.passed else 1


def cmd_inspect(args: argparse.Namespace) -> int:
    payload: dict = {}
    if args.input:
        g = read_graph(args.input, args.format)
        weights = [w for _, _, w in g.edges]
        payload["graph"] = {
            "n": g.n,
            "m": g.m,
            "total_weight": g.total_weight(),
            "min_weight": min(weights),
            "max_weight": max(weights),
        }
    if args.spanner:
        with open(args.spanner, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        payload["spanner"] = {
            key: raw.get(key)
            for key in ("kind", "n", "size", "weight", "eps", "k", "seed", "scale", "per_phase")
        }
    if not payload:
        raise SpannerError("inspect needs --input and/or --spanner")
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


def run_sweep(
    *,
    families: Sequence[str],
    ns: Sequence[int],
    ks: Sequence[int],
    epss: Sequence[float],
    seeds: Sequence[int],
    mode: str = "sampled",
    sample_size: int = 64,
    out_path: str | None = None,
    unsafe_eps: bool = False,
    progress: Callable[[str], None] | None = None,
) -> list[dict]:
    """Build and verify every grid cell; returns one row dict per cell.

    Cells run in a fixed nested order (family, n, k, eps, seed) so CSV
    output is deterministic. The row's runtime_ms measures construction
    only; verification cost depends on the mode and is not the artifact
    under test.
    """
    rows: list[dict] = []
    for family in families:
        for n in ns:
            for k in ks:
                for eps in epss:
                    for seed in seeds:
                        g = generate_graph(family, n, seed=seed)
                        start = time.perf_counter()
                        sp = build_spanner(
                            g, eps, k, seed, unsafe_eps=unsafe_eps, keep_internals=False
                        )
                        runtime_ms = (time.perf_counter() - start) * 1000.0
                        stretch = verify_stretch(
                            g, sp, mode=mode, sample_size=sample_size, seed=seed
                        )
                        lightness = verify_lightness(g, sp)
                        if not stretch.passed:
                            raise SpannerError(
                                f"stretch violation in sweep cell "
                                f"(family={family} n={n} k={k} eps={eps} seed={seed})"
                            )
                        row = {
                            "n": n,
                            "k": k,
                            "eps": eps,
                            "seed": seed,
                            "family": family,
                            "size": sp.size,
                            "lightness": lightness.lightness,
                            "worst_mult": stretch.worst_mult_stretch,
                            "worst_slack": stretch.worst_additive_slack,
                            "bound": stretch.bound_used,
                            "runtime_ms": runtime_ms,
                            # extra keys for callers; not part of the CSV schema
                            "h0_weight": lightness.per_phase.get("H0", (0, 0.0))[1],
                            "mst_weight": lightness.mst_weight,
                        }
                        rows.append(row)
                        if progress is not None:
                            progress(
                                f"cell family={family} n={n} k={k} eps={eps} seed={seed}: "
                                f"size={sp.size} lightness={lightness.lightness:.3f} "
                                f"({runtime_ms:.0f} ms)"
                            )
    if out_path is not None:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=SWEEP_HEADER, extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
        _atomic_write(out_path, buf.getvalue())
    return rows


def cmd_sweep(args: argparse.Namespace) -> int:
    out_path = os.path.join(args.output_dir, "sweep.csv")
    rows = run_sweep(
        families=args.families,
        ns=args.ns,
        ks=args.ks,
        epss=args.epss,
        seeds=args.seeds,
        mode=args.mode,
        sample_size=args.sample_size,
        out_path=out_path,
        unsafe_eps=args.unsafe_eps,
        progress=lambda line: print(line),
    )
    print(f"wrote {out_path}: {len(rows)} cells")
    return 0


def _add_io_flags(p: argparse.ArgumentParser, *, needs_input: bool = True) -> None:
    if needs_input:
        p.add_argument("--input", required=True, help="graph file to read")
    p.add_argument("--format", choices=FORMATS, default="edge_list", help="graph file format")
    p.add_argument("--output-dir", default=".", help="directory for artifacts")


def _add_eps_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--eps", type=float, required=True, help=f"stretch parameter, in (0, {EPS_SAFE_LIMIT})")
    p.add_argument(
        "--unsafe-eps",
        action="store_true",
        help=f"accept eps up to 1 (guarantee thresholds assume eps < {EPS_SAFE_LIMIT})",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lightspanner",
        description="Construct and certify light near-additive graph spanners.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a connected weighted graph")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", type=float, default=None, help="edge probability (erdos_renyi)")
    p.add_argument("--radius", type=float, default=None, help="connection radius (geometric)")
    p.add_argument("--rows", type=int, default=None, help="grid rows")
    p.add_argument("--cols", type=int, default=None, help="grid cols")
    p.add_argument("--weight-lo", type=float, default=1.0)
    p.add_argument("--weight-hi", type=float, default=2.0)
    _add_io_flags(p, needs_input=False)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("build", help="build the hierarchical spanner")
    _add_io_flags(p)
    _add_eps_flags(p)
    p.add_argument("--k", type=int, required=True, help="number of sampled levels, >= 1")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("build-wmax", help="build the heavy-edge variant spanner")
    _add_io_flags(p)
    p.add_argument("--eps", type=float, required=True, help="stretch parameter, > 0")
    p.set_defaults(func=cmd_build_wmax)

    p = sub.add_parser("verify", help="verify a spanner against its graph")
    _add_io_flags(p)
    p.add_argument("--spanner", required=True, help="spanner.json produced by build")
    p.add_argument("--mode", choices=("all_pairs", "sampled"), default="all_pairs")
    p.add_argument("--sample-size", type=int, default=64)
    p.add_argument("--seed", type=int, default=0, help="source sample seed (sampled mode)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("inspect", help="summarize a graph and/or spanner file")
    p.add_argument("--input", default=None, help="graph file to read")
    p.add_argument("--format", choices=FORMATS, default="edge_list")
    p.add_argument("--spanner", default=None, help="spanner.json to read")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("sweep", help="build+verify a parameter grid, appending CSV rows")
    p.add_argument("--families", nargs="+", choices=FAMILIES, required=True)
    p.add_argument("--ns", nargs="+", type=int, required=True)
    p.add_argument("--ks", nargs="+", type=int, required=True)
    p.add_argument("--epss", nargs="+", type=float, required=True)
    p.add_argument("--seeds", nargs="+", type=int, default=[0])
    p.add_argument("--mode", choices=("all_pairs", "sampled"), default="sampled")
    p.add_argument("--sample-size", type=int, default=64)
    p.add_argument("--unsafe-eps", action="store_true")
    p.add_argument("--output-dir", default=".")
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv: Iterable[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(list(argv) if argv is not None else None)
    try:
        return args.func(args)
    except SpannerError as exc:
        print(f"error in {args.command}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error in {args.command}: invalid parameter: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error in {args.command}: i/o failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
