from __future__ import annotations

import copy
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

RULES = (
    "seed", "par3", "square", "cop3", "thm5", "unified", "pro2",
    "witness", "counting", "chen", "monotone", "pro", "lemma1",
)


class Inconsistent(Exception):
    def __init__(self, n: int, lo_chain, hi_chain):
        self.n = n
        self.lo_chain = list(lo_chain)
        self.hi_chain = list(hi_chain)
        lo = self.lo_chain[-1] if self.lo_chain else None
        hi = self.hi_chain[-1] if self.hi_chain else None
        super().__init__(
            f"f({n}): lower bound {lo.value if lo else '?'} ({lo.format() if lo else '-'}) "
            f"exceeds upper bound {hi.value if hi else '?'} ({hi.format() if hi else '-'})"
        )


class SeedInconsistent(Inconsistent):
    pass


class SeedFileMissing(FileNotFoundError):
    pass


@dataclass(frozen=True)
class DerivationRecord:
    """One tightening: ``rule`` applied to ``inputs`` gave ``side`` of f(n) the bound ``value``."""

    rule: str
    n: int
    side: str
    value: int
    inputs: tuple[tuple[str, object], ...] = ()
    step: int = -1

    def __post_init__(self):
        if self.rule not in RULES:
            raise ValueError(f"unknown rule {self.rule!r}")
        if self.side not in ("lo", "hi"):
            raise ValueError(f"side must be lo or hi, got {self.side!r}")

    def get(self, key: str):
        for k, v in self.inputs:
            if k == key:
                return v
        raise KeyError(key)

    def format(self) -> str:
        args = ",".join(f"{k}={v}" for k, v in self.inputs if k != "citation")
        op = ">=" if self.side == "lo" else "<="
        return f"{self.rule}({args}): f({self.n}){op}{self.value}"


@dataclass
class BoundInterval:
    n: int
    lo: int | None = None
    hi: int | None = None
    lo_chain: list[DerivationRecord] = field(default_factory=list)
    hi_chain: list[DerivationRecord] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.lo is not None and self.lo == self.hi

    @property
    def status(self) -> str:
        if self.lo is not None and self.hi is not None:
            return "exact" if self.lo == self.hi else "range"
        if self.hi is not None:
            return "hi-only"
        if self.lo is not None:
            return "lo-only"
        return "unknown"


class BoundTable:
    def __init__(self, n_max: int, seed_mode: str = "full"):
        if n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {n_max}")
        if seed_mode not in ("full", "holdout"):
            raise ValueError(f"seed_mode must be full or holdout, got {seed_mode!r}")
        self.n_max = n_max
        self.seed_mode = seed_mode
        self.intervals = {n: BoundInterval(n) for n in range(1, n_max + 1)}
        self.seed_span = 0
        self._step = 0

    def __contains__(self, n: int) -> bool:
        return n in self.intervals

    def __getitem__(self, n: int) -> BoundInterval:
        return self.intervals[n]

    def lo(self, n: int) -> int | None:
        iv = self.intervals.get(n)
        return iv.lo if iv else None

    def hi(self, n: int) -> int | None:
        iv = self.intervals.get(n)
        return iv.hi if iv else None

    def copy(self) -> "BoundTable":
        return copy.deepcopy(self)

    def records(self):
        for n in sorted(self.intervals):
            iv = self.intervals[n]
            yield from iv.lo_chain
            yield from iv.hi_chain

    def tighten(self, rec: DerivationRecord) -> bool:
        """Apply ``rec`` if it improves its endpoint; returns whether it did."""
        iv = self.intervals.get(rec.n)
        if iv is None:
            return False
        if rec.side == "lo":
            if iv.lo is not None and rec.value <= iv.lo:
                return False
        elif iv.hi is not None and rec.value >= iv.hi:
            return False
        self._step += 1
        rec = replace(rec, step=self._step)
        if rec.side == "lo":
            iv.lo = rec.value
            iv.lo_chain.append(rec)
        else:
            iv.hi = rec.value
            iv.hi_chain.append(rec)
        if iv.lo is not None and iv.hi is not None and iv.lo > iv.hi:
            cls = SeedInconsistent if rec.rule == "seed" else Inconsistent
            raise cls(iv.n, iv.lo_chain, iv.hi_chain)
        return True

    def to_tsv(self, chains: bool = False) -> str:
        head = ["n", "lo", "hi", "status", "rules"]
        if chains:
            head += ["lo_chain", "hi_chain"]
        lines = ["\t".join(head)]
        for n in sorted(self.intervals):
            iv = self.intervals[n]
            rules = []
            if iv.lo_chain:
                rules.append(f"lo:{iv.lo_chain[-1].rule}")
            if iv.hi_chain:
                rules.append(f"hi:{iv.hi_chain[-1].rule}")
            row = [
                str(n),
                "-" if iv.lo is None else str(iv.lo),
                "-" if iv.hi is None else str(iv.hi),
                iv.status,
                ";".join(rules) or "-",
            ]
            if chains:
                row.append(" | ".join(r.format() for r in iv.lo_chain) or "-")
                row.append(" | ".join(r.format() for r in iv.hi_chain) or "-")
            lines.append("\t".join(row))
        return "\n".join(lines) + "\n"


def default_seed_path() -> Path:
    return Path(str(resources.files("c4star") / "data" / "f_known.tsv"))


@dataclass(frozen=True)
class SeedRow:
    n: int
    lo: int | None
    hi: int | None
    kind: str
    source: str
    citation: str


def read_seed_file(path=None) -> list[SeedRow]:
    path = Path(path) if path is not None else default_seed_path()
    if not path.exists():
        raise SeedFileMissing(str(path))
    rows = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if fields[0] == "n":
            continue
        if len(fields) != 6:
            raise ValueError(f"{path}:{lineno}: expected 6 columns, got {len(fields)}")
        n, lo, hi, kind, source, citation = fields
        row = SeedRow(
            int(n),
            None if lo == "-" else int(lo),
            None if hi == "-" else int(hi),
            kind,
            source,
            citation,
        )
        if kind not in ("exact", "lo", "hi", "range"):
            raise ValueError(f"{path}:{lineno}: unknown kind {kind!r}")
        if source not in ("paper-table", "paper-new"):
            raise ValueError(f"{path}:{lineno}: unknown source {source!r}")
        if (kind in ("exact", "range", "lo")) != (row.lo is not None) or (
            kind in ("exact", "range", "hi")
        ) != (row.hi is not None):
            raise ValueError(f"{path}:{lineno}: kind {kind} does not match the given endpoints")
        rows.append(row)
    return rows


def seed_table(n_max: int, mode: str = "full", path=None) -> BoundTable:
    """Load the known-values file; ``holdout`` drops every ``paper-new`` row."""
    table = BoundTable(n_max, mode)
    for row in read_seed_file(path):
        if row.n > n_max:
            continue
        if mode == "holdout" and row.source == "paper-new":
            continue
        table.seed_span = max(table.seed_span, row.n)
        base = (("source", row.source), ("citation", row.citation))
        if row.lo is not None:
            table.tighten(DerivationRecord("seed", row.n, "lo", row.lo, base + (("value", row.lo),)))
        if row.hi is not None:
            table.tighten(DerivationRecord("seed", row.n, "hi", row.hi, base + (("value", row.hi),)))
    return table
