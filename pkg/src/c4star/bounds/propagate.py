"""Fixpoint propagation of interval bounds on f, with a replayable record per tightening."""

from __future__ import annotations

import logging

from . import formulas as fm
from .table import BoundTable, DerivationRecord

log = logging.getLogger(__name__)


class ReplayError(ValueError):
    pass


class OutOfRange(ValueError):
    pass


def _rec(rule, target, side, value, **inputs) -> DerivationRecord:
    return DerivationRecord(rule, target, side, value, tuple(inputs.items()))


def _formula_rules(t: BoundTable) -> bool:
    changed = False
    for n in range(2, t.n_max + 1):
        changed |= t.tighten(_rec("par3", n, "hi", fm.ub_par3(n), n=n))
        m = fm.square_root_of(n, 1)
        if m is not None and m >= 2:
            changed |= t.tighten(_rec("square", n, "hi", fm.ub_square(m)[1], m=m))
        changed |= t.tighten(_rec("cop3", n, "hi", fm.ub_cop3(n), n=n))
        b = fm.ub_thm5(n)
        if b is not None:
            changed |= t.tighten(_rec("thm5", n, "hi", b, n=n))
        m = fm.square_root_of(n, 3)
        if m is not None and m >= 8 and m % 6 == 2:
            changed |= t.tighten(_rec("pro2", n, "hi", fm.ub_pro2(m)[1], m=m))
    return changed


def _witness_rules(t: BoundTable, witnesses) -> bool:
    changed = False
    for c in witnesses:
        if not c.valid or c.star_index not in t:
            continue
        changed |= t.tighten(
            _rec(
                "witness", c.star_index, "lo", c.order + 1,
                witness=c.name, order=c.order, complement_max_degree=c.complement_max_degree,
                c4_free=c.c4_free,
            )
        )
    return changed


def _counting_rules(t: BoundTable, ex_entries) -> bool:
    changed = False
    for e in ex_entries:
        if not e.confirmed:
            continue
        for n in range(1, min(e.q - 1, t.n_max) + 1):
            if fm.counting_applies(n, e.q, e.value):
                changed |= t.tighten(
                    _rec("counting", n, "hi", e.q, order=e.q, n=n, ex=e.value, ex_kind=e.kind,
                         ex_provenance=e.provenance)
                )
    return changed


def _chen_rules(t: BoundTable) -> bool:
    changed = False
    for n in range(2, t.n_max + 1):
        lo = t.lo(n)
        if lo is not None:
            changed |= t.tighten(_rec("chen", n - 1, "lo", lo - 2, **{"from": n, "lo": lo}))
        hi = t.hi(n - 1)
        if hi is not None:
            changed |= t.tighten(_rec("chen", n, "hi", hi + 2, **{"from": n - 1, "hi": hi}))
    return changed


def _monotone_rules(t: BoundTable) -> bool:
    changed = False
    for n in range(1, t.n_max):
        lo = t.lo(n)
        if lo is not None:
            changed |= t.tighten(_rec("monotone", n + 1, "lo", lo, **{"from": n, "lo": lo}))
    for n in range(t.n_max - 1, 0, -1):
        hi = t.hi(n + 1)
        if hi is not None:
            changed |= t.tighten(_rec("monotone", n, "hi", hi, **{"from": n + 1, "hi": hi}))
    return changed


def _pro_rules(t: BoundTable) -> bool:
    # only from certified exact f(n) with certified strict increase over f(n-1)
    changed = False
    for n in range(2, t.n_max + 1):
        iv = t[n]
        prev = t.hi(n - 1)
        if not iv.exact or prev is None or iv.lo <= prev:
            continue
        target = fm.thm8_target(n, iv.lo)
        if target >= 1 and target in t:
            changed |= t.tighten(_rec("pro", target, "lo", n, **{"from": n, "f": iv.lo, "hi_prev": prev}))
    return changed


def propagate(table: BoundTable, witnesses=(), ex_table=None, max_sweeps: int = 10_000) -> BoundTable:
    """Close ``table`` under all rules; returns a new table.

    One sweep applies, in order and by ascending n: the closed-form upper
    bounds, witness lower bounds, the edge-counting rule, the f(n-1) >= f(n)-2
    rule in both directions, monotonicity in n, and the f(2n+1-f(n)) >= n
    recursion. Sweeps repeat until nothing tightens. Raises
    :class:`~c4star.bounds.table.Inconsistent` if an interval empties.
    """
    t = table.copy()
    if hasattr(witnesses, "certificates"):
        witnesses = witnesses.certificates
    witnesses = list(witnesses)
    ex_entries = list(ex_table) if ex_table is not None else []
    for sweep in range(1, max_sweeps + 1):
        changed = _formula_rules(t)
        changed |= _witness_rules(t, witnesses)
        changed |= _counting_rules(t, ex_entries)
        changed |= _chen_rules(t)
        changed |= _monotone_rules(t)
        changed |= _pro_rules(t)
        if not changed:
            log.debug("propagation closed after %d sweeps", sweep)
            return t
    raise RuntimeError(f"no fixpoint after {max_sweeps} sweeps")


def replay(rec: DerivationRecord) -> int:
    """Recompute the bound a record claims, from its recorded inputs alone."""
    g = rec.get
    r = rec.rule
    if r == "seed":
        return g("value")
    if r == "par3":
        _expect(rec, g("n") == rec.n and rec.side == "hi")
        return fm.ub_par3(g("n"))
    if r == "cop3":
        _expect(rec, g("n") == rec.n and rec.side == "hi")
        return fm.ub_cop3(g("n"))
    if r == "thm5":
        _expect(rec, g("n") == rec.n and rec.side == "hi")
        v = fm.ub_thm5(g("n"))
        _expect(rec, v is not None)
        return v
    if r == "unified":
        _expect(rec, g("n") == rec.n and rec.side == "hi")
        return fm.ub_unified(g("n"))
    if r == "square":
        n, v = fm.ub_square(g("m"))
        _expect(rec, n == rec.n and rec.side == "hi")
        return v
    if r == "pro2":
        n, v = fm.ub_pro2(g("m"))
        _expect(rec, n == rec.n and rec.side == "hi")
        return v
    if r == "witness":
        _expect(rec, rec.side == "lo" and g("c4_free") and g("complement_max_degree") <= rec.n - 1)
        return g("order") + 1
    if r == "counting":
        _expect(rec, rec.side == "hi" and g("n") == rec.n and g("ex_kind") in ("exact", "upper"))
        _expect(rec, fm.counting_applies(rec.n, g("order"), g("ex")))
        return g("order")
    if r == "chen":
        if rec.side == "lo":
            _expect(rec, g("from") == rec.n + 1)
            return g("lo") - 2
        _expect(rec, g("from") == rec.n - 1)
        return g("hi") + 2
    if r == "monotone":
        if rec.side == "lo":
            _expect(rec, g("from") == rec.n - 1)
            return g("lo")
        _expect(rec, g("from") == rec.n + 1)
        return g("hi")
    if r == "pro":
        m, f = g("from"), g("f")
        _expect(rec, rec.side == "lo" and f > g("hi_prev") and fm.thm8_target(m, f) == rec.n)
        return m
    if r == "lemma1":
        return g("hi")
    raise ReplayError(f"no replay for rule {r!r}")


def _expect(rec: DerivationRecord, ok) -> None:
    if not ok:
        raise ReplayError(f"record does not follow from its inputs: {rec.format()}")


def dependencies(rec: DerivationRecord) -> list[tuple[int, str, int]]:
    """Endpoints (n, side, value) that ``rec`` relied on."""
    g = rec.get
    if rec.rule in ("chen", "monotone"):
        side = rec.side
        return [(g("from"), side, g(side))]
    if rec.rule == "pro":
        m = g("from")
        return [(m, "lo", g("f")), (m, "hi", g("f")), (m - 1, "hi", g("hi_prev"))]
    return []


def explain(table: BoundTable, n: int, side: str) -> list[DerivationRecord]:
    """The records that together prove the current ``side`` bound of f(n), oldest first."""
    iv = table[n]
    chain = iv.lo_chain if side == "lo" else iv.hi_chain
    if not chain:
        return []
    seen: dict[int, DerivationRecord] = {}
    todo = [chain[-1]]
    while todo:
        rec = todo.pop()
        if rec.step in seen:
            continue
        seen[rec.step] = rec
        for k, s, v in dependencies(rec):
            src = table[k].lo_chain if s == "lo" else table[k].hi_chain
            for cand in src:
                good = cand.value >= v if s == "lo" else cand.value <= v
                if good and cand.step < rec.step:
                    todo.append(cand)
                    break
            else:
                raise ReplayError(f"no record establishes f({k}) {s} {v}, needed by {rec.format()}")
    return [seen[k] for k in sorted(seen)]


def lemma1_upper(r: int, table: BoundTable | None = None) -> int:
    """Upper bound on R(C4, K1 + H) for any H with R(C4, H) <= r, namely an upper bound on f(r)."""
    if r < 1:
        raise OutOfRange(f"r must be >= 1, got {r}")
    if table is not None and r in table and table.hi(r) is not None:
        return table.hi(r)
    if r < 2:
        raise OutOfRange(f"no bound on f({r}) available")
    return fm.ub_unified(r)


def lower_bound_gaps(table: BoundTable, upto: int = 82) -> list[int]:
    """n in 2..upto where the table's lower bound falls short of n + ceil(sqrt n)."""
    out = []
    for n in range(2, min(upto, table.n_max) + 1):
        lo = table.lo(n)
        if lo is None or lo < n + fm.ceil_sqrt(n):
            out.append(n)
    return out
