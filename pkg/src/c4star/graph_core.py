"""Bitset graphs on at most 64 vertices.

Row ``v`` of a :class:`Graph` is an int whose bit ``u`` is set when ``uv`` is an
edge, so a codegree is ``(rows[u] & rows[v]).bit_count()``.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

MAX_ORDER = 64


class GraphFormatError(ValueError):
    """Base class for bit-matrix parse failures."""

    def __init__(self, message: str, path: str | None = None):
        self.detail = message
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)

    def in_file(self, path) -> "GraphFormatError":
        err = copy.copy(self)
        err.path = str(path)
        err.args = (f"{path}: {self.detail}",)
        return err


class NonSquare(GraphFormatError):
    pass


class NotSymmetric(GraphFormatError):
    def __init__(self, message: str, pair: tuple[int, int] = (-1, -1), path: str | None = None):
        self.pair = pair
        super().__init__(message, path)


class LoopPresent(GraphFormatError):
    def __init__(self, message: str, vertex: int = -1, path: str | None = None):
        self.vertex = vertex
        super().__init__(message, path)


class BadCharacter(GraphFormatError):
    def __init__(self, message: str, line: int = 0, column: int = 0, path: str | None = None):
        self.line = line
        self.column = column
        super().__init__(message, path)


class OrderOutOfRange(GraphFormatError):
    pass


class SameVertex(ValueError):
    pass


class VertexOutOfRange(IndexError):
    pass


@dataclass(frozen=True)
class Graph:
    order: int
    rows: tuple[int, ...]

    def __post_init__(self):
        n = self.order
        if not 1 <= n <= MAX_ORDER:
            raise OrderOutOfRange(f"order {n} outside 1..{MAX_ORDER}")
        if len(self.rows) != n:
            raise NonSquare(f"{len(self.rows)} rows for order {n}")
        full = (1 << n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise NonSquare(f"row {v} has bits beyond column {n - 1}")
            if row >> v & 1:
                raise LoopPresent(f"loop at vertex {v}", vertex=v)
        for u in range(n):
            for v in range(u + 1, n):
                if (self.rows[u] >> v & 1) != (self.rows[v] >> u & 1):
                    raise NotSymmetric(f"entry ({u},{v}) differs from ({v},{u})", pair=(u, v))

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * order
        for u, v in edges:
            if u == v:
                raise LoopPresent(f"loop at vertex {u}", vertex=u)
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(order, tuple(rows))

    @classmethod
    def empty(cls, order: int) -> "Graph":
        return cls(order, (0,) * order)

    @classmethod
    def cycle(cls, order: int) -> "Graph":
        return cls.from_edges(order, ((i, (i + 1) % order) for i in range(order)))

    @classmethod
    def complete(cls, order: int) -> "Graph":
        return cls.from_edges(order, combinations(range(order), 2))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.rows[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.order) for v in _bits(self.rows[u] >> (u + 1) << (u + 1))]

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def complement(self) -> "Graph":
        full = (1 << self.order) - 1
        return Graph(self.order, tuple(full & ~r & ~(1 << v) for v, r in enumerate(self.rows)))


@dataclass(frozen=True)
class GraphStats:
    degree_sequence: tuple[int, ...]
    min_degree: int
    max_degree: int
    edge_count: int
    complement_max_degree: int


def _bits(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def parse_graph(text: str) -> Graph:
    """Parse the bit-matrix text format: a decimal order line, then one row per vertex."""
    lines = text.split("\n")
    for i, line in enumerate(lines, start=1):
        if line.startswith("\ufeff"):
            raise BadCharacter("byte-order mark not allowed", line=i, column=1)
    header = lines[0].rstrip()
    if not header:
        raise NonSquare("missing order line")
    for col, ch in enumerate(header, start=1):
        if not ch.isdigit() or not ch.isascii():
            raise BadCharacter(f"unexpected {ch!r} in order line", line=1, column=col)
    n = int(header)
    if not 1 <= n <= MAX_ORDER:
        raise OrderOutOfRange(f"order {n} outside 1..{MAX_ORDER}")

    body = lines[1:]
    while body and not body[-1].strip():
        body.pop()
    if len(body) != n:
        raise NonSquare(f"expected {n} rows, found {len(body)}")

    rows = []
    for r, line in enumerate(body):
        lineno = r + 2
        row = 0
        count = 0
        for col, ch in enumerate(line.rstrip(), start=1):
            if ch == " ":
                continue
            if ch not in "01":
                raise BadCharacter(f"unexpected {ch!r}", line=lineno, column=col)
            if ch == "1" and count < MAX_ORDER:
                row |= 1 << count
            count += 1
        if count != n:
            raise NonSquare(f"row {r} has {count} entries, expected {n}")
        rows.append(row)

    for v, row in enumerate(rows):
        if row >> v & 1:
            raise LoopPresent(f"loop at vertex {v}", vertex=v)
    for u in range(n):
        for v in range(n):
            if (rows[u] >> v & 1) != (rows[v] >> u & 1):
                raise NotSymmetric(f"entry ({u},{v}) differs from ({v},{u})", pair=(u, v))
    return Graph(n, tuple(rows))


def serialize_graph(g: Graph) -> str:
    lines = [str(g.order)]
    for row in g.rows:
        lines.append("".join("1" if row >> j & 1 else "0" for j in range(g.order)))
    return "\n".join(lines)


def codegree(g: Graph, u: int, v: int) -> int:
    for x in (u, v):
        if not 0 <= x < g.order:
            raise VertexOutOfRange(f"vertex {x} not in 0..{g.order - 1}")
    if u == v:
        raise SameVertex(f"codegree needs two distinct vertices, got {u} twice")
    return (g.rows[u] & g.rows[v]).bit_count()


def contains_c4(g: Graph) -> bool:
    rows = g.rows
    for u in range(g.order):
        ru = rows[u]
        for v in range(u + 1, g.order):
            if (ru & rows[v]).bit_count() >= 2:
                return True
    return False


def count_c4(g: Graph) -> int:
    # each 4-cycle is seen once from each of its two diagonals
    rows = g.rows
    total = 0
    for u in range(g.order):
        ru = rows[u]
        for v in range(u + 1, g.order):
            c = (ru & rows[v]).bit_count()
            total += c * (c - 1) // 2
    return total // 2


def graph_stats(g: Graph) -> GraphStats:
    degs = tuple(r.bit_count() for r in g.rows)
    lo = min(degs)
    return GraphStats(
        degree_sequence=degs,
        min_degree=lo,
        max_degree=max(degs),
        edge_count=sum(degs) // 2,
        complement_max_degree=g.order - 1 - lo,
    )


def min_degree(g: Graph) -> int:
    return min(r.bit_count() for r in g.rows)


def from_rows(rows: Sequence[int]) -> Graph:
    return Graph(len(rows), tuple(rows))
