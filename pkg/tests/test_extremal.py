import math
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from c4star.extremal import ExEntry, ExTable, default_table, ex_exact, ex_known, reiman_upper
from c4star.graph_core import Graph, OrderOutOfRange, contains_c4


def unpruned_ex(q: int) -> int:
    """Try every labeled graph on q vertices (q <= 6: at most 2^15 graphs)."""
    pairs = list(combinations(range(q), 2))
    best = 0
    for mask in range(1 << len(pairs)):
        e = mask.bit_count()
        if e <= best:
            continue
        rows = [0] * q
        for i, (u, v) in enumerate(pairs):
            if mask >> i & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        if not contains_c4(Graph(q, tuple(rows))):
            best = e
    return best


def _conflicts(rows):
    # a new vertex may not see both ends of a pair that already has a common neighbour
    m = len(rows)
    cf = [0] * m
    for a, b in combinations(range(m), 2):
        if rows[a] & rows[b]:
            cf[a] |= 1 << b
            cf[b] |= 1 << a
    return cf


def extend_all(layer):
    """All C4-free labeled graphs on one more vertex, given all of them on m vertices."""
    out = []
    for rows in layer:
        m = len(rows)
        cf = _conflicts(rows)
        for nb in range(1 << m):
            if any(nb >> a & 1 and cf[a] & nb for a in range(m)):
                continue
            out.append(tuple(r | ((nb >> i & 1) << m) for i, r in enumerate(rows)) + (nb,))
    return out


def max_independent(cf, cand):
    if not cand:
        return 0
    low = cand & -cand
    v = low.bit_length() - 1
    rest = cand ^ low
    return max(max_independent(cf, rest), 1 + max_independent(cf, rest & ~cf[v]))


def test_small_values():
    table = ExTable()
    assert [ex_exact(q, table=table).value for q in range(1, 11)] == [0, 1, 3, 4, 6, 7, 9, 11, 13, 16]


@pytest.mark.parametrize("q", range(1, 7))
def test_matches_unpruned_enumeration(q):
    assert ex_exact(q, table=ExTable()).value == unpruned_ex(q)


def test_q7_q8_against_vertex_extension():
    # every C4-free graph on q vertices is a C4-free graph on q-1 plus one vertex
    layer = [(0,)]
    for _ in range(6):
        layer = extend_all(layer)
    assert len(layer) == 163440
    best7 = max(sum(r.bit_count() for r in g) // 2 for g in layer)
    best8 = max(sum(r.bit_count() for r in g) // 2 + max_independent(_conflicts(g), (1 << 7) - 1) for g in layer)
    table = ExTable()
    assert ex_exact(7, table=table).value == best7
    assert ex_exact(8, table=table).value == best8


def test_attaining_graph_is_c4_free():
    e = ex_exact(9, table=ExTable())
    assert e.kind == "exact" and e.provenance == "computed"
    assert not contains_c4(e.graph) and e.graph.edge_count() == 13


def test_reiman_dominates():
    table = ExTable()
    for q in range(1, 11):
        assert ex_exact(q, table=table).value <= reiman_upper(q)
    assert reiman_upper(33) >= 96


@given(st.integers(1, 10**6))
def test_reiman_integer_formula(q):
    approx = math.floor(q * (1 + math.sqrt(4 * q - 3)) / 4)
    assert abs(reiman_upper(q) - approx) <= 1
    assert reiman_upper(q) <= q * (1 + math.sqrt(4 * q - 3)) / 4 + 1e-9


def test_growth_properties():
    table = ExTable()
    vals = [ex_exact(q, table=table).value for q in range(1, 11)]
    for q in range(1, 10):
        assert vals[q - 1] <= vals[q] <= vals[q - 1] + q


def test_budget_exhaustion_gives_lower():
    table = ExTable()
    e = ex_exact(12, budget=0.05, table=table)
    assert e.kind == "lower" and not e.confirmed
    assert not contains_c4(e.graph)
    assert all(x.kind == "exact" for x in table)


def test_bundled_table():
    e = ex_known(33)
    assert (e.value, e.kind, e.provenance) == (96, "exact", "paper-cited")
    assert ex_known(34) is None
    with pytest.raises(OrderOutOfRange):
        default_table().get(0)


def test_entry_validation():
    with pytest.raises(ValueError):
        ExEntry(4, 4, "exact", "computed")
    with pytest.raises(ValueError):
        ExEntry(4, 5, "exact", "computed", Graph.cycle(4))
    with pytest.raises(ValueError):
        ExEntry(4, 4, "guess", "analytic")


def test_table_dominance():
    t = ExTable([ExEntry(10, 16, "exact", "paper-cited")])
    t.add(ExEntry(10, 16, "upper", "analytic"))
    t.add(ExEntry(10, 15, "lower", "computed", Graph.empty(10)))
    assert t.get(10).kind == "exact"
    with pytest.raises(ValueError):
        t.add(ExEntry(10, 15, "upper", "analytic"))
    with pytest.raises(ValueError):
        t.add(ExEntry(10, 17, "exact", "paper-cited"))


def test_tsv_round_trip(tmp_path):
    t = ExTable([ExEntry(5, 6, "exact", "paper-cited"), ExEntry(40, 200, "upper", "analytic")])
    p = tmp_path / "ex.tsv"
    p.write_text(t.to_tsv())
    assert ExTable.load(p).to_tsv() == t.to_tsv()
