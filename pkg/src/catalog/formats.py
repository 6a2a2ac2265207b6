"""Codecs: plantri's planar_code and plain edge-list text.

planar_code (1-byte variant): the header ``>>planar_code<<`` followed by
graphs, each one byte ``n`` then, for every vertex 1..n, its neighbors
(1-based) in clockwise order terminated by a zero byte.
"""

from pathlib import Path
from typing import Iterable, Iterator, List, Tuple, Union

import networkx as nx

from src.errors import (
    BadHeaderError,
    DisconnectedError,
    EdgeListError,
    InvalidRotationError,
    NotSimpleError,
    PlanarCodeError,
    TruncatedError,
)
from src.graph.plane_graph import PlaneGraph, build_embedding

HEADER = b">>planar_code<<"


def read_planar_code(data: bytes) -> Iterator[PlaneGraph]:
    if not data.startswith(HEADER):
        raise BadHeaderError(f"missing {HEADER.decode()} header", offset=0)
    pos = len(HEADER)
    while pos < len(data):
        start = pos
        n = data[pos]
        pos += 1
        if n == 0:
            raise PlanarCodeError("vertex count 0 (2-byte planar_code is not supported)", offset=start)
        rotation = {}
        for v in range(n):
            order: List[int] = []
            while True:
                if pos >= len(data):
                    raise TruncatedError(f"graph starting at {start} ends inside vertex {v + 1}", offset=pos)
                code = data[pos]
                if code == 0:
                    pos += 1
                    break
                if code > n:
                    raise PlanarCodeError(f"neighbor {code} out of range 1..{n}", offset=pos)
                if code - 1 == v or code - 1 in order:
                    raise PlanarCodeError(f"vertex {v + 1} lists {code} as a loop or twice", offset=pos)
                order.append(code - 1)
                pos += 1
            rotation[v] = tuple(order)
        try:
            graph = PlaneGraph(rotation=rotation)
        except (InvalidRotationError, DisconnectedError, NotSimpleError) as exc:
            raise PlanarCodeError(f"invalid embedding: {exc}", offset=start) from exc
        yield graph


def write_planar_code(graphs: Iterable[PlaneGraph]) -> bytes:
    out = bytearray(HEADER)
    for g in graphs:
        labels = {v: i + 1 for i, v in enumerate(g.vertices)}
        if g.n > 255:
            raise PlanarCodeError(f"n={g.n} does not fit the 1-byte format")
        out.append(g.n)
        for v in g.vertices:
            out.extend(labels[w] for w in g.rotation[v])
            out.append(0)
    return bytes(out)


def read_edge_list(text: str) -> Tuple[List[Tuple[int, int]], List[int]]:
    """Parse ``u v`` lines; a single label declares an isolated vertex, ``#`` starts a comment."""
    edges: List[Tuple[int, int]] = []
    vertices: List[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        try:
            labels = [int(field) for field in fields]
        except ValueError as exc:
            raise EdgeListError(f"line {lineno}: expected integer labels, got {raw!r}") from exc
        if len(labels) == 1:
            vertices.append(labels[0])
        elif len(labels) == 2:
            edges.append((labels[0], labels[1]))
        else:
            raise EdgeListError(f"line {lineno}: expected 'u v', got {raw!r}")
        if any(label < 0 for label in labels):
            raise EdgeListError(f"line {lineno}: labels must be non-negative")
    return edges, vertices


def write_edge_list(g: Union[PlaneGraph, nx.Graph]) -> str:
    graph = g.graph if isinstance(g, PlaneGraph) else g
    lines = [f"{min(u, v)} {max(u, v)}" for u, v in graph.edges]
    lines.sort(key=lambda line: tuple(int(x) for x in line.split()))
    isolated = [str(v) for v in sorted(graph.nodes) if graph.degree(v) == 0]
    return "\n".join(isolated + lines) + "\n"


def parse_graphs(data: bytes) -> List[PlaneGraph]:
    """Every graph of planar_code bytes, or the single graph of edge-list text."""
    if data.startswith(HEADER):
        return list(read_planar_code(data))
    edges, vertices = read_edge_list(data.decode("utf-8"))
    return [build_embedding(edges, vertices)]


def load_graphs(path: Union[str, Path]) -> List[PlaneGraph]:
    return parse_graphs(Path(path).read_bytes())
