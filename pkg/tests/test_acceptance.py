"""End-to-end acceptance checks, one per criterion.

Run under pytest (a PASS/FAIL line per criterion is printed in the terminal
summary) or directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from c4star.bounds import (  # noqa: E402
    propagate,
    read_seed_file,
    lower_bound_gaps,
    seed_table,
    ub_cop3,
    ub_counting,
    ub_par3,
    ub_thm5,
    ub_unified,
)
from c4star.bounds.formulas import min_edges  # noqa: E402
from c4star.extremal import ExTable, ex_exact, reiman_upper  # noqa: E402
from c4star.graph_core import count_c4, min_degree  # noqa: E402
from c4star.search import SearchParams, exact_f_bruteforce, local_search_witness  # noqa: E402
from c4star.witness import load_extra_witnesses, load_witness_set, verify_witness  # noqa: E402

from conftest import brute_count_c4, random_graph  # noqa: E402
from test_extremal import unpruned_ex, extend_all, max_independent, _conflicts  # noqa: E402

RESULTS: dict[int, tuple[bool, str]] = {}


def _holdout_table(n_max=110):
    witnesses = list(load_witness_set().certificates) + load_extra_witnesses()
    return propagate(seed_table(n_max, "holdout"), witnesses, ExTable.load_default())


def check_1():
    t0 = time.perf_counter()
    report = load_witness_set()
    cmax = [c.complement_max_degree for c in report.certificates]
    lbs = report.lower_bounds()
    elapsed = time.perf_counter() - t0
    ok = (
        report.ok
        and all(c.c4_free for c in report.certificates)
        and cmax == [27, 28, 29, 30, 31, 32, 36]
        and lbs == {28: 35, 29: 36, 30: 37, 31: 38, 32: 39, 33: 40, 37: 44}
        and elapsed < 1.0
    )
    return ok, f"complement max degrees {cmax}, {elapsed:.3f}s"


def check_2():
    t0 = time.perf_counter()
    t = _holdout_table(82)
    elapsed = time.perf_counter() - t0
    want = {27: 33, 28: 35, 29: 36, 30: 37, 31: 38, 32: 39, 33: 40, 37: 44, 67: 76}
    got = {n: (t.lo(n), t.hi(n)) for n in want}
    ok = all(got[n] == (v, v) for n, v in want.items()) and elapsed < 1.0
    bad = {n: got[n] for n, v in want.items() if got[n] != (v, v)}
    return ok, f"{len(want) - len(bad)}/{len(want)} exact values re-derived, {elapsed:.3f}s" + (f", off: {bad}" if bad else "")


def check_3():
    t = _holdout_table(110)
    lo = {n: t.lo(n) for n in (51, 52, 53, 69, 71)}
    hi = {n: t.hi(n) for n in (102, 104, 106, 108)}
    iv = {n: (t.lo(n), t.hi(n)) for n in (51, 52, 53, 71)}
    ok = (
        lo == {51: 59, 52: 60, 53: 61, 69: 78, 71: 80}
        and hi == {102: 113, 104: 115, 106: 117, 108: 119}
        and iv == {51: (59, 60), 52: (60, 61), 53: (61, 62), 71: (80, 81)}
    )
    return ok, f"lo {lo}, hi {hi}"


def check_4():
    witnesses = list(load_witness_set().certificates) + load_extra_witnesses()
    try:
        t = propagate(seed_table(82, "full"), witnesses, ExTable.load_default())
    except Exception as exc:  # any inconsistency is a failure of the criterion
        return False, f"propagation raised {exc}"
    exact_rows = [r for r in read_seed_file() if r.kind == "exact" and r.n <= 82]
    kept = all((t.lo(r.n), t.hi(r.n)) == (r.lo, r.hi) for r in exact_rows)
    short = lower_bound_gaps(t, 82)
    return kept and not short, f"{len(exact_rows)} exact rows kept={kept}, n with lo < n+ceil(sqrt n): {short}"


def check_5():
    t0 = time.perf_counter()
    vals = [exact_f_bruteforce(n, 8) for n in range(1, 5)]
    elapsed = time.perf_counter() - t0
    return vals == [4, 4, 6, 7] and elapsed < 300, f"f(1..4) = {vals}, {elapsed:.2f}s"


def check_6():
    table = ExTable()
    computed = {q: ex_exact(q, table=table).value for q in range(1, 9)}
    oracle = {q: unpruned_ex(q) for q in range(1, 7)}
    layer = [(0,)]
    for _ in range(6):
        layer = extend_all(layer)
    oracle[7] = max(sum(r.bit_count() for r in g) // 2 for g in layer)
    oracle[8] = max(sum(r.bit_count() for r in g) // 2 + max_independent(_conflicts(g), 127) for g in layer)
    rec = ub_counting(27, 33, ExTable.load_default())
    ok = (
        computed == oracle
        and computed[4] == 4
        and computed[5] == 6
        and all(v <= reiman_upper(q) for q, v in computed.items())
        and rec is not None
        and min_edges(33, 27) == 99 > 96
    )
    return ok, f"ex(1..8) = {list(computed.values())}, counting margin {min_edges(33, 27)} > 96"


def check_7():
    unified_ok = all(
        ub_unified(n) == (ub_thm5(n) if ub_thm5(n) is not None else ub_cop3(n)) for n in range(2, 10001)
    )
    order_ok = all(
        (ub_thm5(n) is None or ub_thm5(n) <= ub_cop3(n)) and ub_cop3(n) <= ub_par3(n) for n in range(2, 10001)
    )
    a = _holdout_table().to_tsv(chains=True)
    b = _holdout_table().to_tsv(chains=True)
    witnesses = list(load_witness_set().certificates) + load_extra_witnesses()
    again = propagate(_holdout_table(), witnesses, ExTable.load_default()).to_tsv(chains=True)
    idem = a == b == again
    return unified_ok and order_ok and idem, f"unified={unified_ok} dominance={order_ok} idempotent={idem}"


def check_8():
    wins = 0
    slow = []
    for seed in range(10):
        p = SearchParams(seed=seed)
        t0 = time.perf_counter()
        out = local_search_witness(10, 7, p)
        dt = time.perf_counter() - t0
        if out.found is None or dt >= 10:
            slow.append(seed)
            continue
        if not verify_witness(out.found, 7).valid or min_degree(out.found) < 3:
            return False, f"seed {seed} returned an invalid graph"
        again = local_search_witness(10, 7, p)
        if again.found != out.found or again.steps_used != out.steps_used:
            return False, f"seed {seed} is not reproducible"
        wins += 1
    return wins >= 9, f"{wins}/10 seeds found a verified witness within 10 s"


def check_9():
    rng = random.Random(9)
    mismatches = 0
    for _ in range(1000):
        g = random_graph(rng, rng.randint(1, 12), rng.random())
        mismatches += count_c4(g) != brute_count_c4(g)
    return mismatches == 0, f"{mismatches} mismatches on 1000 random graphs"


CHECKS = {i: globals()[f"check_{i}"] for i in range(1, 10)}
TITLES = {
    1: "witness suite",
    2: "holdout derivation",
    3: "interval bounds",
    4: "full-seed consistency",
    5: "brute-force f(1..4)",
    6: "extremal oracle",
    7: "formula identities",
    8: "local search",
    9: "C4 kernel",
}


def _run(i):
    t0 = time.perf_counter()
    ok, detail = CHECKS[i]()
    RESULTS[i] = (ok, f"{detail} [{time.perf_counter() - t0:.2f}s total]")
    return ok, detail


@pytest.mark.parametrize("criterion", sorted(CHECKS))
def test_criterion(criterion):
    ok, detail = _run(criterion)
    assert ok, detail


def format_line(i: int) -> str:
    ok, detail = RESULTS[i]
    return f"ACCEPTANCE {i} {TITLES[i]}: {'PASS' if ok else 'FAIL'} - {detail}"


if __name__ == "__main__":
    failed = 0
    for i in sorted(CHECKS):
        _run(i)
        print(format_line(i), flush=True)
        failed += not RESULTS[i][0]
    sys.exit(1 if failed else 0)
