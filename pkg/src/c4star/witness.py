"""Lower-bound certificates: a C4-free graph G on N vertices with Δ(Ḡ) <= n-1 proves f(n) >= N+1."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .graph_core import Graph, GraphFormatError, contains_c4, graph_stats, parse_graph

# name -> (order, complement max degree) for the shipped appendix graphs
EXPECTED = {
    "H34": (34, 27),
    "H35": (35, 28),
    "H36": (36, 29),
    "H37": (37, 30),
    "H38": (38, 31),
    "H39": (39, 32),
    "H43": (43, 36),
}


class WitnessError(Exception):
    pass


class MissingFile(WitnessError):
    def __init__(self, name: str, path=None):
        self.name = name
        self.path = path
        super().__init__(name)


class ExpectationMismatch(WitnessError):
    def __init__(self, name: str, statistic: str, expected, actual):
        self.name = name
        self.statistic = statistic
        self.expected = expected
        self.actual = actual
        super().__init__(f"{name}: {statistic} is {actual}, expected {expected}")


class ChecksumMismatch(WitnessError):
    pass


@dataclass(frozen=True)
class WitnessCertificate:
    name: str
    order: int
    star_index: int
    c4_free: bool
    complement_max_degree: int
    min_degree: int
    edge_count: int
    regular: bool

    @property
    def valid(self) -> bool:
        return self.c4_free and self.complement_max_degree <= self.star_index - 1

    @property
    def implied_lower_bound(self) -> int | None:
        return self.order + 1 if self.valid else None

    @property
    def reason(self) -> str | None:
        if not self.c4_free:
            return "contains-C4"
        if self.complement_max_degree > self.star_index - 1:
            return (
                f"complement max degree {self.complement_max_degree} "
                f"exceeds star index minus one ({self.star_index - 1})"
            )
        return None

    def describe(self) -> str:
        if self.valid:
            return (
                f"{self.name}: C4-free, Δ(complement)={self.complement_max_degree}, "
                f"implies f({self.star_index})>={self.implied_lower_bound}"
            )
        return f"{self.name}: INVALID for n={self.star_index} ({self.reason})"


def verify_witness(g: Graph, n: int, name: str = "G") -> WitnessCertificate:
    if n < 1:
        raise ValueError(f"star index must be >= 1, got {n}")
    st = graph_stats(g)
    return WitnessCertificate(
        name=name,
        order=g.order,
        star_index=n,
        c4_free=not contains_c4(g),
        complement_max_degree=st.complement_max_degree,
        min_degree=st.min_degree,
        edge_count=st.edge_count,
        regular=st.min_degree == st.max_degree,
    )


@dataclass
class WitnessSetReport:
    certificates: list[WitnessCertificate] = field(default_factory=list)
    expected: dict[str, tuple[int, int]] = field(default_factory=dict)
    mismatches: list[ExpectationMismatch] = field(default_factory=list)
    checksums_ok: bool | None = None

    def matches(self, name: str) -> bool:
        return not any(m.name == name for m in self.mismatches)

    @property
    def ok(self) -> bool:
        return not self.mismatches and all(c.valid for c in self.certificates) and self.checksums_ok is not False

    def lower_bounds(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for c in self.certificates:
            if c.valid:
                out[c.star_index] = max(out.get(c.star_index, 0), c.order + 1)
        return out


def default_witness_dir() -> Path:
    return Path(str(resources.files("c4star") / "data" / "witness"))


def read_graph_file(path) -> Graph:
    path = Path(path)
    try:
        return parse_graph(path.read_text(encoding="utf-8"))
    except GraphFormatError as exc:
        raise exc.in_file(path) from None


def _check_sums(directory: Path) -> bool | None:
    sums = directory / "SHA256SUMS"
    if not sums.exists():
        return None
    for line in sums.read_text().splitlines():
        if not line.strip():
            continue
        digest, fname = line.split(maxsplit=1)
        fname = fname.lstrip("*")
        target = directory / fname
        if not target.exists():
            continue
        if hashlib.sha256(target.read_bytes()).hexdigest() != digest:
            return False
    return True


def load_witness_set(path=None, strict: bool = True) -> WitnessSetReport:
    """Parse and certify every expected witness under ``path``.

    With ``strict`` the first disagreement with the expected statistics raises
    :class:`ExpectationMismatch`; otherwise it is only recorded in the report.
    """
    directory = Path(path) if path is not None else default_witness_dir()
    report = WitnessSetReport(expected=dict(EXPECTED))
    for name, (order, cmax) in EXPECTED.items():
        f = directory / f"{name}.mat"
        if not f.exists():
            raise MissingFile(name, f)
        g = read_graph_file(f)
        cert = verify_witness(g, graph_stats(g).complement_max_degree + 1, name=name)
        problems = []
        if g.order != order:
            problems.append(ExpectationMismatch(name, "order", order, g.order))
        if cert.complement_max_degree != cmax:
            problems.append(
                ExpectationMismatch(name, "complement_max_degree", cmax, cert.complement_max_degree)
            )
        if not cert.c4_free:
            problems.append(ExpectationMismatch(name, "c4_free", True, False))
        if problems and strict:
            raise problems[0]
        report.mismatches.extend(problems)
        report.certificates.append(cert)
    report.checksums_ok = _check_sums(directory)
    if report.checksums_ok is False and strict:
        raise ChecksumMismatch(f"{directory}: witness files do not match SHA256SUMS")
    return report


def default_extra_dir() -> Path:
    return Path(str(resources.files("c4star") / "data" / "extra_witness"))


def load_extra_witnesses(path=None) -> list[WitnessCertificate]:
    """Certify every ``*.mat`` under ``path`` at the strongest star index it supports."""
    directory = Path(path) if path is not None else default_extra_dir()
    certs = []
    for f in sorted(directory.glob("*.mat")):
        g = read_graph_file(f)
        cert = verify_witness(g, graph_stats(g).complement_max_degree + 1, name=f.stem)
        if not cert.valid:
            raise ExpectationMismatch(f.stem, "c4_free", True, False)
        certs.append(cert)
    return certs
