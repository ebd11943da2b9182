"""Reading and writing graphs in the two supported text formats.

edge_list: first meaningful line is the vertex count n, then one
"u v w" line per edge with 0-based ids. '#' starts a comment.

dimacs: "c ..." comments, one "p sp <n> <m>" header, then "a u v w"
arc lines with 1-based (or arbitrary sparse positive) ids. Ids are
re-indexed to 0..n-1 on load; the sorted original ids are kept on the
graph as ``labels`` and used again when writing.

Both readers reject duplicate edges and non-positive weights, naming
the offending line.
"""
from __future__ import annotations

import io
import os
from typing import IO, Iterable

from .errors import GraphFormatError
from .graph import WeightedGraph

FORMATS = ("edge_list", "dimacs")


def _open_text(source, mode: str):
    if isinstance(source, (str, os.PathLike)):
        return open(source, mode, encoding="utf-8"), True
    return source, False


def _meaningful_lines(stream: IO[str], comment_prefixes: tuple[str, ...]) -> Iterable[tuple[int, str]]:
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith(comment_prefixes):
            continue
        yield lineno, line


def read_edge_list(source) -> WeightedGraph:
    stream, owned = _open_text(source, "r")
    try:
        lines = _meaningful_lines(stream, ("#",))
        try:
            lineno, header = next(lines)
        except StopIteration:
            raise GraphFormatError("empty edge_list input") from None
        try:
            n = int(header.split()[0])
        except ValueError:
            raise GraphFormatError(f"expected vertex count, got {header!r}", lineno) from None
        edges = []
        seen = set()
        for lineno, line in lines:
            parts = line.split()
            if len(parts) != 3:
                raise GraphFormatError(f"expected 'u v w', got {line!r}", lineno)
            try:
                u, v, w = int(parts[0]), int(parts[1]), float(parts[2])
            except ValueError:
                raise GraphFormatError(f"could not parse edge {line!r}", lineno) from None
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"vertex id outside 0..{n - 1} in {line!r}", lineno)
            if u == v:
                raise GraphFormatError(f"self loop at vertex {u}", lineno)
            if not (w > 0):
                raise GraphFormatError(f"non-positive weight {w}", lineno)
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphFormatError(f"duplicate edge ({key[0]}, {key[1]})", lineno)
            seen.add(key)
            edges.append((u, v, w))
        return WeightedGraph(n, edges)
    finally:
        if owned:
            stream.close()


def write_edge_list(g: WeightedGraph, dest) -> None:
    stream, owned = _open_text(dest, "w")
    try:
        stream.write(f"{g.n}\n")
        for u, v, w in g.edges:
            stream.write(f"{u} {v} {w!r}\n")
    finally:
        if owned:
            stream.close()


def read_dimacs(source) -> WeightedGraph:
    stream, owned = _open_text(source, "r")
    try:
        n = m = None
        raw_edges: list[tuple[int, int, float, int]] = []
        ids: set[int] = set()
        for lineno, line in _meaningful_lines(stream, ("c",)):
            parts = line.split()
            if parts[0] == "p":
                if n is not None:
                    raise GraphFormatError("second 'p' header", lineno)
                if len(parts) != 4 or parts[1] != "sp":
                    raise GraphFormatError(f"expected 'p sp n m', got {line!r}", lineno)
                try:
                    n, m = int(parts[2]), int(parts[3])
                except ValueError:
                    raise GraphFormatError(f"bad 'p' header {line!r}", lineno) from None
            elif parts[0] == "a":
                if n is None:
                    raise GraphFormatError("arc line before 'p' header", lineno)
                if len(parts) != 4:
                    raise GraphFormatError(f"expected 'a u v w', got {line!r}", lineno)
                try:
                    u, v, w = int(parts[1]), int(parts[2]), float(parts[3])
                except ValueError:
                    raise GraphFormatError(f"could not parse arc {line!r}", lineno) from None
                if u < 1 or v < 1:
                    raise GraphFormatError(f"dimacs ids must be >= 1 in {line!r}", lineno)
                if not (w > 0):
                    raise GraphFormatError(f"non-positive weight {w}", lineno)
                raw_edges.append((u, v, w, lineno))
                ids.add(u)
                ids.add(v)
            else:
                raise GraphFormatError(f"unrecognized line {line!r}", lineno)
        if n is None:
            raise GraphFormatError("missing 'p sp n m' header")
        if len(ids) > n:
            raise GraphFormatError(f"{len(ids)} distinct ids but header says n={n}")
        labels = sorted(ids)
        index = {orig: i for i, orig in enumerate(labels)}
        edges = []
        seen = set()
        for u, v, w, lineno in raw_edges:
            iu, iv = index[u], index[v]
            if iu == iv:
                raise GraphFormatError(f"self loop at id {u}", lineno)
            key = (iu, iv) if iu < iv else (iv, iu)
            if key in seen:
                raise GraphFormatError(f"duplicate edge ({u}, {v})", lineno)
            seen.add(key)
            edges.append((iu, iv, w))
        if len(labels) < n:
            # header promises more vertices than the arcs mention
            raise GraphFormatError(f"only {len(labels)} ids seen but header says n={n}")
        if m is not None and m != len(edges):
            raise GraphFormatError(f"header says m={m} but {len(edges)} arcs found")
        return WeightedGraph(n, edges, labels=labels)
    finally:
        if owned:
            stream.close()


def write_dimacs(g: WeightedGraph, dest) -> None:
    labels = g.labels if g.labels is not None else tuple(range(1, g.n + 1))
    stream, owned = _open_text(dest, "w")
    try:
        stream.write(f"p sp {g.n} {g.m}\n")
        for u, v, w in g.edges:
            stream.write(f"a {labels[u]} {labels[v]} {w!r}\n")
    finally:
        if owned:
            stream.close()


def read_graph(path, fmt: str = "edge_list") -> WeightedGraph:
    if fmt == "edge_list":
        return read_edge_list(path)
    if fmt == "dimacs":
        return read_dimacs(path)
    raise ValueError(f"unknown graph format {fmt!r}, expected one of {FORMATS}")


def write_graph(g: WeightedGraph, path, fmt: str = "edge_list") -> None:
    if fmt == "edge_list":
        write_edge_list(g, path)
    elif fmt == "dimacs":
        write_dimacs(g, path)
    else:
        raise ValueError(f"unknown graph format {fmt!r}, expected one of {FORMATS}")


def loads_edge_list(text: str) -> WeightedGraph:
    return read_edge_list(io.StringIO(text))
