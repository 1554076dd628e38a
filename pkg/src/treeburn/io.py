"""Flat-file formats: edge lists, sequence files and DOT export.

Edge list: first non-comment line is ``n``, then one ``u v`` pair per line.
Lines starting with ``#`` and blank lines are ignored.  Sequence files hold
one decimal vertex id per line.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Union

from .errors import TreeError
from .tree import Tree, build_tree

PathLike = Union[str, Path]


def _data_lines(text: str):
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            yield line


def parse_edge_list(text: str) -> Tree:
    lines = _data_lines(text)
    try:
        n = int(next(lines))
    except StopIteration:
        raise TreeError("edge list is empty") from None
    edges = []
    for line in lines:
        parts = line.split()
        if len(parts) != 2:
            raise TreeError(f"malformed edge line: {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return build_tree(n, edges)


def format_edge_list(t: Tree) -> str:
    rows = [str(t.n)] + [f"{u} {v}" for u, v in t.edges]
    return "\n".join(rows) + "\n"


def read_edge_list(path: PathLike) -> Tree:
    return parse_edge_list(Path(path).read_text())


def write_edge_list(t: Tree, path: PathLike) -> None:
    Path(path).write_text(format_edge_list(t), newline="\n")


def parse_sequence(text: str) -> list:
    return [int(line) for line in _data_lines(text)]


def format_sequence(seq: Iterable[int]) -> str:
    return "".join(f"{int(v)}\n" for v in seq)


def read_sequence(path: PathLike) -> list:
    return parse_sequence(Path(path).read_text())


def write_sequence(seq: Iterable[int], path: PathLike) -> None:
    Path(path).write_text(format_sequence(seq), newline="\n")


def to_dot(t: Tree, name: str = "T", highlight: Iterable[int] = ()) -> str:
    """Undirected DOT graph; ``highlight`` vertices are drawn filled."""
    marked = set(highlight)
    out = [f"graph {name} {{"]
    for v in range(t.n):
        style = ', style=filled, fillcolor="orange"' if v in marked else ""
        out.append(f'  {v} [label="{v}"{style}];')
    for u, v in t.edges:
        out.append(f"  {u} -- {v};")
    out.append("}")
    return "\n".join(out) + "\n"
