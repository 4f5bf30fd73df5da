"""Extremal numbers ex(q; C4): the most edges a C4-free graph on q vertices can have."""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .graph_core import Graph, OrderOutOfRange, contains_c4

log = logging.getLogger(__name__)

KINDS = ("exact", "upper", "lower")
PROVENANCES = ("paper-cited", "computed", "analytic")
_PROVENANCE_ALIASES = {"paper": "paper-cited"}


@dataclass(frozen=True)
class ExEntry:
    """One value of ex(q; C4).

    ``kind`` is ``exact`` (attained and proved maximal), ``upper`` (a proved
    cap), or ``lower`` (attained but not proved maximal, e.g. a search that ran
    out of budget). Only ``exact`` and ``upper`` entries may bound f.
    """

    q: int
    value: int
    kind: str
    provenance: str
    graph: Graph | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        if self.provenance == "computed" and self.kind == "exact":
            g = self.graph
            if g is None:
                raise ValueError(f"computed ex({self.q}) entry needs an attaining graph")
            if g.order != self.q or g.edge_count() != self.value or contains_c4(g):
                raise ValueError(f"stored graph does not attain ex({self.q}) = {self.value}")

    @property
    def confirmed(self) -> bool:
        return self.kind in ("exact", "upper")


class ExTable:
    def __init__(self, entries=()):
        self._entries: dict[int, ExEntry] = {}
        for e in entries:
            self.add(e)

    @classmethod
    def load(cls, path) -> "ExTable":
        table = cls()
        for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.split("\t") if "\t" in line else line.split()
            if fields[0] == "q":
                continue
            if len(fields) != 4:
                raise ValueError(f"{path}:{lineno}: expected 4 columns, got {len(fields)}")
            q, value, kind, prov = fields
            prov = _PROVENANCE_ALIASES.get(prov, prov)
            table.add(ExEntry(int(q), int(value), kind, prov))
        return table

    @classmethod
    def load_default(cls) -> "ExTable":
        return cls.load(default_table_path())

    def add(self, entry: ExEntry) -> None:
        old = self._entries.get(entry.q)
        if old is not None:
            if old.kind == "upper" and entry.kind == "exact" and entry.value > old.value:
                raise ValueError(f"exact ex({entry.q}) = {entry.value} exceeds cap {old.value}")
            if old.kind == "exact" and entry.kind == "upper" and entry.value < old.value:
                raise ValueError(f"cap {entry.value} below exact ex({entry.q}) = {old.value}")
            if old.kind == "exact" and entry.kind == "exact" and entry.value != old.value:
                raise ValueError(f"conflicting exact values for ex({entry.q})")
            # never let an unconfirmed value displace a confirmed one
            if old.confirmed and not entry.confirmed:
                return
            if old.kind == "exact" and entry.kind == "upper":
                return
        self._entries[entry.q] = entry

    def get(self, q: int) -> ExEntry | None:
        if q < 1:
            raise OrderOutOfRange(f"ex(q; C4) needs q >= 1, got {q}")
        return self._entries.get(q)

    def confirmed(self) -> list[ExEntry]:
        return [self._entries[q] for q in sorted(self._entries) if self._entries[q].confirmed]

    def __iter__(self):
        return iter(self._entries[q] for q in sorted(self._entries))

    def __len__(self):
        return len(self._entries)

    def to_tsv(self) -> str:
        lines = ["q\tvalue\tkind\tprovenance"]
        for e in self:
            lines.append(f"{e.q}\t{e.value}\t{e.kind}\t{e.provenance}")
        return "\n".join(lines) + "\n"


def default_table_path() -> Path:
    return Path(str(resources.files("c4star") / "data" / "ex_c4.tsv"))


_default: ExTable | None = None


def default_table() -> ExTable:
    global _default
    if _default is None:
        _default = ExTable.load_default()
    return _default


def ex_known(q: int, table: ExTable | None = None) -> ExEntry | None:
    return (table if table is not None else default_table()).get(q)


def reiman_upper(q: int) -> int:
    """floor(q (1 + sqrt(4q - 3)) / 4), computed in integers."""
    if q < 1:
        raise OrderOutOfRange(f"q must be >= 1, got {q}")
    # floor((q + sqrt(M)) / 4) == (q + isqrt(M)) // 4 for every integer M >= 0
    return (q + math.isqrt(q * q * (4 * q - 3))) // 4


class _OutOfTime(Exception):
    pass


class _Found(Exception):
    pass


class _Search:
    """Is there a C4-free graph with >= ``target`` edges, max degree ``d`` and min degree ``t``?

    Vertex 0 carries the maximum degree and is joined to 1..d; the remaining
    pairs are decided in lexicographic order.
    """

    def __init__(self, q: int, d: int, t: int, target: int, caps: list[int], deadline: float):
        self.q = q
        self.d = d
        self.t = t
        self.target = target
        self.caps = caps
        self.deadline = deadline
        self.nodes = 0
        self.pairs = [(u, v) for u in range(1, q) for v in range(u + 1, q)]
        self.rows = [0] * q
        self.rows[0] = sum(1 << v for v in range(1, d + 1))
        self.deg = [0] * q
        self.deg[0] = d
        for v in range(1, d + 1):
            self.rows[v] = 1
            self.deg[v] = 1
        self.rem = [0] + [q - 2] * (q - 1)
        self.found: list[int] | None = None

    def _addable(self, u: int, v: int) -> bool:
        # uv closes a 4-cycle u-v-w-x iff some neighbour w of v shares a neighbour with u
        rows = self.rows
        ru = rows[u]
        x = rows[v]
        while x:
            low = x & -x
            if ru & rows[low.bit_length() - 1]:
                return False
            x ^= low
        return True

    def run(self) -> list[int] | None:
        if any(self.deg[w] + self.rem[w] < self.t for w in range(self.q)):
            return None
        try:
            self._dfs(0, self.d)
        except _Found:
            return self.found
        return None

    def _dfs(self, i: int, edges: int) -> None:
        self.nodes += 1
        if self.nodes & 4095 == 0 and time.monotonic() > self.deadline:
            raise _OutOfTime
        if i == len(self.pairs):
            if edges >= self.target:
                self.found = list(self.rows)
                raise _Found
            return
        u, v = self.pairs[i]
        d = self.d
        rows, deg, rem = self.rows, self.deg, self.rem
        # decided edges + what row u can still take + ex on the untouched tail u+1..q-1
        room = min(self.q - v, d - deg[u])
        if edges + room + self.caps[self.q - u - 1] < self.target:
            return
        rem[u] -= 1
        rem[v] -= 1
        if deg[u] < d and deg[v] < d and self._addable(u, v):
            rows[u] |= 1 << v
            rows[v] |= 1 << u
            deg[u] += 1
            deg[v] += 1
            self._dfs(i + 1, edges + 1)
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
            deg[u] -= 1
            deg[v] -= 1
        if deg[u] + rem[u] >= self.t and deg[v] + rem[v] >= self.t:
            self._dfs(i + 1, edges)
        rem[u] += 1
        rem[v] += 1


def ex_exact(q: int, budget: float = 60.0, table: ExTable | None = None) -> ExEntry:
    """Compute ex(q; C4) by branch and bound and cache it into ``table``.

    Orders 1..q are solved in turn. For order k the search repeatedly asks for
    a graph with more edges than the best so far; such a graph has minimum
    degree at least ``target - ex(k-1)`` (delete a minimum-degree vertex), and
    vertex 0 is relabelled to carry the maximum degree ``d`` with neighbours
    1..d, ``d`` tried from high to low.

    If ``budget`` seconds run out, the best graph found so far is returned as
    a ``lower`` entry and nothing is cached as exact.
    """
    if q < 1:
        raise OrderOutOfRange(f"q must be >= 1, got {q}")
    if budget <= 0:
        raise ValueError("budget must be positive")
    table = table if table is not None else default_table()
    deadline = time.monotonic() + budget

    entry = ExEntry(1, 0, "exact", "computed", Graph.empty(1))
    caps = [0, 0]
    for k in range(2, q + 1):
        known = table.get(k)
        if known is not None and known.kind == "exact" and known.provenance == "computed":
            entry = known
        else:
            entry = _solve(k, caps, entry.graph, deadline)
            if entry.kind != "exact":
                log.warning("ex(%d; C4): budget exhausted, best found %d edges (unconfirmed)", k, entry.value)
                if k < q:
                    return ExEntry(q, entry.value, "lower", "computed", _pad(entry.graph, q))
                return entry
            table.add(entry)
        caps.append(entry.value)
    if q == 1:
        table.add(entry)
    return entry


def _pad(g: Graph, q: int) -> Graph:
    return Graph(q, g.rows + (0,) * (q - g.order))


def _solve(q: int, caps: list[int], prev: Graph, deadline: float) -> ExEntry:
    base = caps[q - 1]
    best, best_rows = base, list(_pad(prev, q).rows)
    try:
        while True:
            target = best + 1
            t = target - base
            rows = None
            for d in range(q - 1, 0, -1):
                if (q * d) // 2 < target:
                    break
                if t > d:
                    continue
                rows = _Search(q, d, t, target, caps, deadline).run()
                if rows is not None:
                    break
            if rows is None:
                break
            best_rows = rows
            best = sum(r.bit_count() for r in rows) // 2
    except _OutOfTime:
        return ExEntry(q, best, "lower", "computed", Graph(q, tuple(best_rows)))
    return ExEntry(q, best, "exact", "computed", Graph(q, tuple(best_rows)))
