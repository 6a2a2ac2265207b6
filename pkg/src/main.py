"""Command-line entry point: color instances, run theorem scans, generate corpora, search for tightness witnesses.

Results go to stdout, logs to stderr. Exit codes: 0 success, 1 usage or data
error, 2 UNSAT (color) or failures found (verify), 3 no witness under the cap
(search-tight).
"""

import sys
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import click
import networkx as nx
import typer
from loguru import logger

from config.settings import settings
from src.catalog.enumerate import enumerate_small_planar
from src.catalog.families import generate_4ore, make_k4prime
from src.catalog.formats import HEADER, load_graphs, parse_graphs, read_edge_list, write_planar_code
from src.catalog.manifest import manifest_hash, slices_for
from src.coloring.colorer import is_k_critical
from src.errors import FaceTooLongError, ImproperPartialError, NonPlanarError, PlanarToolkitError
from src.graph.plane_graph import PlaneGraph, build_embedding, embed_graph, face_census, triangle_count, validate_cycle
from src.graph.surgery import iter_k4prime
from src.models.graph import ConstraintSet
from src.models.report import CorpusFilter, TheoremId
from src.reductions.engine import reduce_and_color
from src.verify.bounds import ky_sides
from src.verify.theorems import scan_graphs
from src.verify.tightness import PATTERNS, search_tightness

EXIT_UNSAT = 2
EXIT_FAILURES = 2
EXIT_NO_WITNESS = 3

app = typer.Typer(
    name="planar",
    help="Plane-graph 3-coloring toolkit: reductions, theorem harness, corpora.",
    add_completion=False,
    no_args_is_help=True,
    pretty_exceptions_enable=False,
)


class Family(str, Enum):
    ENUM = "enum"
    ORE = "4ore"
    K4PRIME = "k4prime"


def _configure_logging(level: str) -> None:
    logger.remove()
    logger.add(sys.stderr, level=level.upper())


@app.callback()
def main(log_level: str = typer.Option(settings.log_level, "--log-level", help="loguru level for stderr")):
    _configure_logging(log_level)


# Argument parsing helpers

def _pair(text: str, flag: str) -> tuple:
    try:
        u, v = (int(x) for x in text.split(","))
    except ValueError:
        raise typer.BadParameter(f"expected u,v, got {text!r}", param_hint=flag) from None
    return u, v


def _fixed(values: Sequence[str]) -> Dict[int, int]:
    fixed: Dict[int, int] = {}
    for text in values:
        try:
            v, c = (int(x) for x in text.split("="))
        except ValueError:
            raise typer.BadParameter(f"expected v=c, got {text!r}", param_hint="--fix") from None
        fixed[v] = c
    return fixed


def _face_colors(g: PlaneGraph, text: str) -> Dict[int, int]:
    try:
        left, right = text.split("=")
        face = [int(x) for x in left.split(",")]
        colors = [int(x) for x in right.split(",")]
    except ValueError:
        raise typer.BadParameter(f"expected f1,..,fk=c1,..,ck, got {text!r}", param_hint="--face") from None
    if len(face) != len(colors):
        raise typer.BadParameter("face and color lists differ in length", param_hint="--face")
    cycle = validate_cycle(g, face)
    if len(cycle) > 5:
        raise FaceTooLongError(f"face of length {len(cycle)} exceeds 5")
    for i in range(len(cycle)):
        if colors[i] == colors[(i + 1) % len(cycle)]:
            raise ImproperPartialError(f"adjacent face vertices {cycle[i]} and {cycle[(i + 1) % len(cycle)]} "
                                       f"share color {colors[i]}")
    return dict(zip(cycle, colors))


def _read_input(in_path: Optional[Path], use_stdin: bool) -> bytes:
    if in_path is not None and use_stdin:
        raise typer.BadParameter("--in and --stdin are mutually exclusive")
    if in_path is None and not use_stdin:
        raise typer.BadParameter("one of --in or --stdin is required")
    if use_stdin:
        return sys.stdin.buffer.read()
    return in_path.read_bytes()


def _plane_from_bytes(data: bytes) -> PlaneGraph:
    graphs = parse_graphs(data)
    if not graphs:
        raise typer.BadParameter("planar_code input holds no graph")
    return graphs[0]


def _nx_from_bytes(data: bytes) -> nx.Graph:
    """Like _plane_from_bytes but keeps non-planar edge lists."""
    if data.startswith(HEADER):
        return _plane_from_bytes(data).graph
    edges, vertices = read_edge_list(data.decode("utf-8"))
    graph = nx.Graph()
    graph.add_nodes_from(vertices)
    graph.add_edges_from(edges)
    return graph


# Commands

@app.command()
def color(
    in_path: Optional[Path] = typer.Option(None, "--in", help="edge-list or planar_code file"),
    use_stdin: bool = typer.Option(False, "--stdin", help="read the graph from stdin"),
    fix: List[str] = typer.Option([], "--fix", help="v=c, repeatable"),
    equal: List[str] = typer.Option([], "--equal", help="u,v, repeatable"),
    distinct: List[str] = typer.Option([], "--distinct", help="u,v, repeatable"),
    face: Optional[str] = typer.Option(None, "--face", help="f1,..,fk=c1,..,ck facial precoloring"),
    trace: bool = typer.Option(False, "--trace", help="print the reduction trace"),
):
    """3-color a plane graph under constraints; prints `v color` lines or UNSAT."""
    g = _plane_from_bytes(_read_input(in_path, use_stdin))
    fixed = _fixed(fix)
    if face:
        for v, c in _face_colors(g, face).items():
            if fixed.get(v, c) != c:
                raise typer.BadParameter(f"--face color of {v} conflicts with --fix")
            fixed[v] = c
    cs = ConstraintSet(
        fixed=fixed,
        equal_pairs=frozenset(_pair(p, "--equal") for p in equal),
        distinct_pairs=frozenset(_pair(p, "--distinct") for p in distinct),
    )
    result = reduce_and_color(g, cs)
    if result.coloring is None:
        typer.echo("UNSAT")
    else:
        for line in result.coloring.to_lines():
            typer.echo(line)
    if trace:
        for line in result.trace.to_lines():
            typer.echo(line)
    if result.coloring is None:
        raise typer.Exit(EXIT_UNSAT)


def _default_filter(theorem: TheoremId, max_n: int) -> CorpusFilter:
    try:
        slices = slices_for(theorem)
    except FileNotFoundError:
        logger.warning(f"manifest {settings.corpus_manifest_path} not found, scanning all graphs")
        slices = []
    if slices:
        return slices[0].filter.model_copy(update={"max_n": max_n})
    return CorpusFilter(max_n=max_n)


@app.command()
def verify(
    theorem: TheoremId = typer.Option(..., "--theorem"),
    max_n: int = typer.Option(..., "--max-n"),
    corpus: Optional[Path] = typer.Option(None, "--corpus", help="planar_code or edge-list file instead of enumeration"),
    jobs: Optional[int] = typer.Option(None, "--jobs"),
    summary: Optional[Path] = typer.Option(None, "--summary", help="write a JSON summary here"),
    progress: bool = typer.Option(False, "--progress"),
):
    """Check a theorem over a corpus; prints the report, exit 2 on failures."""
    if corpus is not None:
        graphs = [g for g in load_graphs(corpus) if g.n <= max_n]
    else:
        filt = _default_filter(theorem, max_n)
        logger.info(f"enumerating {filt.describe()}")
        graphs = list(enumerate_small_planar(filt, progress=progress))
    report = scan_graphs(graphs, theorem, jobs=jobs, progress=progress)
    for line in report.to_lines():
        typer.echo(line)
    if summary is not None:
        digest = manifest_hash() if Path(settings.corpus_manifest_path).exists() else ""
        summary.write_bytes(report.summary(digest) + b"\n")
    if not report.passed:
        raise typer.Exit(EXIT_FAILURES)


@app.command()
def generate(
    family: Family = typer.Option(..., "--family"),
    max_n: int = typer.Option(..., "--max-n"),
    out: Path = typer.Option(..., "--out"),
    max_triangles: Optional[int] = typer.Option(None, "--max-triangles", help="enum only"),
    progress: bool = typer.Option(False, "--progress"),
):
    """Write a corpus as planar_code."""
    if family == Family.ENUM:
        graphs = list(enumerate_small_planar(CorpusFilter(max_n=max_n, max_triangles=max_triangles),
                                             progress=progress))
    elif family == Family.ORE:
        graphs = []
        depth = 0
        while 4 + 3 * depth <= max_n:
            for graph in generate_4ore(depth):
                try:
                    graphs.append(embed_graph(graph))
                except NonPlanarError:
                    logger.warning(f"skipping non-planar 4-Ore graph on {graph.number_of_nodes()} vertices")
            depth += 1
    else:
        graphs = [make_k4prime()] if max_n >= 7 else []
    out.write_bytes(write_planar_code(graphs))
    typer.echo(f"graphs={len(graphs)}")


@app.command("search-tight")
def search_tight(
    pattern: str = typer.Option(..., "--pattern", help=f"one of: {', '.join(PATTERNS)}"),
    max_n: int = typer.Option(..., "--max-n"),
    jobs: Optional[int] = typer.Option(None, "--jobs"),
    out: Optional[Path] = typer.Option(None, "--out", help="write witness graphs as planar_code"),
):
    """Search for minimal instances where a relaxed hypothesis fails; exit 3 if none under the cap."""
    if pattern not in PATTERNS:
        raise typer.BadParameter(f"unknown pattern {pattern!r}", param_hint="--pattern")
    witnesses = search_tightness(pattern, max_n, jobs=jobs)
    if not witnesses:
        typer.echo(f"no witness with n <= {max_n}")
        raise typer.Exit(EXIT_NO_WITNESS)
    for i, witness in enumerate(witnesses):
        plane = PlaneGraph(rotation=witness.rotation)
        edges = " ".join(f"{u}-{v}" for u, v in plane.edges)
        typer.echo(f"witness {i} n={witness.n} m={plane.m} edges=[{edges}]")
        for line in witness.constraint_lines():
            typer.echo(f"  {line}")
    if out is not None:
        out.write_bytes(write_planar_code(PlaneGraph(rotation=w.rotation) for w in witnesses))


@app.command()
def criticality(
    in_path: Optional[Path] = typer.Option(None, "--in"),
    use_stdin: bool = typer.Option(False, "--stdin"),
    k: int = typer.Option(4, "--k"),
):
    """k-criticality verdict plus the edge-bound line."""
    graph = _nx_from_bytes(_read_input(in_path, use_stdin))
    verdict = "yes" if is_k_critical(graph, k) else "no"
    lhs, rhs = ky_sides(graph)
    typer.echo(f"{k}-critical: {verdict}")
    typer.echo(f"3m={lhs} 5n-2={rhs}")


@app.command()
def stats(
    in_path: Optional[Path] = typer.Option(None, "--in"),
    use_stdin: bool = typer.Option(False, "--stdin"),
):
    """Counts: vertices, edges, faces, triangles, face lengths, K4' occurrences."""
    g = _plane_from_bytes(_read_input(in_path, use_stdin))
    census = face_census(g)
    lengths = ",".join(f"{length}:{count}" for length, count in sorted(census.items()))
    typer.echo(f"n={g.n} m={g.m} triangles={triangle_count(g)}")
    typer.echo(f"f={len(g.faces)} face_lengths={lengths}")
    typer.echo(f"k4prime={sum(1 for _ in iter_k4prime(g))}")


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return the exit status instead of exiting."""
    try:
        rv = app(args=list(argv) if argv is not None else None, prog_name="planar", standalone_mode=False)
    except click.exceptions.Abort:
        typer.echo("aborted", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except PlanarToolkitError as exc:
        typer.echo(f"error: {exc}", err=True)
        return 1
    except (OSError, KeyError, ValueError) as exc:
        logger.exception(f"unexpected error: {exc}")
        typer.echo(f"error: {exc}", err=True)
        return 1
    return rv if isinstance(rv, int) else 0


if __name__ == "__main__":
    sys.exit(run())
