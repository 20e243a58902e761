"""Quivers, their doubles, and the quiver text format.

Internally a double quiver numbers its edges ``0 .. 2n-1``: the declared
edges come first in declaration order, then their reverses in the same
order, so edge ``k`` and edge ``k + n`` are mutual reverses and the integer
order is the global edge order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property


class QuiverError(ValueError):
    """Malformed quiver, or an edge/vertex lookup that failed."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]  # (name, tail, head)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex name")
        names = [e[0] for e in self.edges]
        if len(set(names)) != len(names):
            raise QuiverError("duplicate edge name")
        known = set(self.vertices)
        for name, tail, head in self.edges:
            if tail not in known or head not in known:
                raise QuiverError(f"edge {name!r} uses an undeclared vertex")
            if name.endswith("*"):
                raise QuiverError(f"edge name {name!r} may not end in '*'")

    @classmethod
    def from_edges(cls, vertices, edges) -> "Quiver":
        return cls(tuple(vertices), tuple(tuple(e) for e in edges))


class DoubleQuiver:
    """The double of a quiver: every edge ``e`` gains a reverse ``e*``."""

    def __init__(self, base: Quiver):
        self.base = base
        self.n = n = len(base.edges)
        self.vertex_names = base.vertices
        self.vertex_index = {v: i for i, v in enumerate(base.vertices)}
        tails = [self.vertex_index[t] for _, t, _ in base.edges]
        heads = [self.vertex_index[h] for _, _, h in base.edges]
        self.tail = tuple(tails + heads)
        self.head = tuple(heads + tails)
        names = [e[0] for e in base.edges]
        self.names = tuple(names + [s + "*" for s in names])
        self.edge_index = {s: i for i, s in enumerate(self.names)}
        self._hash = hash(base)

    def __eq__(self, other):
        return isinstance(other, DoubleQuiver) and self.base == other.base

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        # rebuild on unpickling so the cached hash matches the receiving process
        return (DoubleQuiver, (self.base,))

    def __repr__(self):
        return f"DoubleQuiver({self.base!r})"

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_names)

    @property
    def num_edges(self) -> int:
        return 2 * self.n

    @cached_property
    def edge_ids(self) -> range:
        return range(2 * self.n)

    def reverse(self, x: int) -> int:
        if not 0 <= x < 2 * self.n:
            raise QuiverError(f"unknown edge id {x}")
        return x + self.n if x < self.n else x - self.n

    def in_q(self, x: int) -> bool:
        """True for declared edges, False for the added reverses."""
        return x < self.n

    def edge(self, name: str) -> int:
        try:
            return self.edge_index[name]
        except KeyError:
            raise QuiverError(f"unknown edge {name!r}") from None

    def vertex(self, name: str) -> int:
        try:
            return self.vertex_index[name]
        except KeyError:
            raise QuiverError(f"unknown vertex {name!r}") from None


def build_double(q: Quiver) -> DoubleQuiver:
    return DoubleQuiver(q)


_NAME = r"[A-Za-z0-9_]+"
_EDGE_RE = re.compile(rf"^\s*({_NAME})\s*:\s*({_NAME})\s*->\s*({_NAME})\s*$")


def parse_quiver(text: str) -> Quiver:
    """Parse the two-line quiver format.

    ``vertices: v w`` declares vertices; ``edges: a: v -> w, b: w -> w``
    declares edges.  Blank lines and ``#`` comments are ignored.  The
    ``edges:`` line may be omitted for a quiver without edges.
    """
    vertices: list[str] | None = None
    edges: list[tuple[str, str, str]] = []
    edge_line = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in ("vertices", "edges"):
            raise QuiverError(f"expected 'vertices:' or 'edges:', got {line!r}", lineno)
        if key == "vertices":
            if vertices is not None:
                raise QuiverError("vertices declared twice", lineno)
            vertices = rest.split()
            for v in vertices:
                if not re.fullmatch(_NAME, v):
                    raise QuiverError(f"bad vertex name {v!r}", lineno)
            if len(set(vertices)) != len(vertices):
                raise QuiverError("duplicate vertex name", lineno)
        else:
            if edge_line is not None:
                raise QuiverError("edges declared twice", lineno)
            edge_line = lineno
            if not rest.strip():
                continue
            for chunk in rest.split(","):
                m = _EDGE_RE.match(chunk)
                if m is None:
                    raise QuiverError(f"bad edge declaration {chunk.strip()!r}", lineno)
                edges.append(m.groups())
    declared = set(vertices or ())
    seen = set()
    for name, tail, head in edges:
        if name in seen:
            raise QuiverError(f"duplicate edge name {name!r}", edge_line)
        seen.add(name)
        for v in (tail, head):
            if v not in declared:
                raise QuiverError(f"edge {name!r}: undeclared vertex {v!r}", edge_line)
    if vertices is None:
        raise QuiverError("missing 'vertices:' line", edge_line)
    return Quiver.from_edges(vertices, edges)


def load_quiver(path) -> DoubleQuiver:
    with open(path, encoding="utf-8") as fh:
        return build_double(parse_quiver(fh.read()))
