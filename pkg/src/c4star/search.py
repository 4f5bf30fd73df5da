"""Evidence generators: exhaustive existence of good graphs, brute-force f(n), tabu search for witnesses.

A graph on N vertices is *good* for star index n when it is C4-free and has
minimum degree at least N - n; one exists exactly when f(n) > N.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
import random

from .graph_core import Graph, count_c4, min_degree
from .witness import verify_witness

log = logging.getLogger(__name__)

EXHAUSTIVE_MAX_ORDER = 10


class CapExceeded(RuntimeError):
    """The node cap ran out before the search could decide."""


class Infeasible(RuntimeError):
    pass


class _Hit(Exception):
    pass


def exhaustive_find(N: int, n: int, node_cap: int = 10_000_000) -> Graph | None:
    """Some good graph for (N, n), or None when none exists.

    Pairs are decided in lexicographic order, edge first. A branch dies when an
    edge would give two vertices a second common neighbour, or when a vertex
    can no longer reach degree N - n with its undecided pairs.
    """
    if not 1 <= N <= EXHAUSTIVE_MAX_ORDER:
        raise ValueError(f"exhaustive search supports 1 <= N <= {EXHAUSTIVE_MAX_ORDER}, got {N}")
    if n < 1:
        raise ValueError(f"star index must be >= 1, got {n}")
    need = N - n
    if need <= 0:
        return Graph.empty(N)
    if need > N - 1:
        return None

    pairs = [(u, v) for u in range(N) for v in range(u + 1, N)]
    rows = [0] * N
    deg = [0] * N
    rem = [N - 1] * N
    nodes = 0
    found: list[int] = []

    def addable(u, v):
        ru = rows[u]
        x = rows[v]
        while x:
            low = x & -x
            if ru & rows[low.bit_length() - 1]:
                return False
            x ^= low
        return True

    def dfs(i):
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise CapExceeded(f"node cap {node_cap} reached for N={N}, n={n}")
        if i == len(pairs):
            found.extend(rows)
            raise _Hit
        u, v = pairs[i]
        rem[u] -= 1
        rem[v] -= 1
        if addable(u, v):
            rows[u] |= 1 << v
            rows[v] |= 1 << u
            deg[u] += 1
            deg[v] += 1
            dfs(i + 1)
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
            deg[u] -= 1
            deg[v] -= 1
        if deg[u] + rem[u] >= need and deg[v] + rem[v] >= need:
            dfs(i + 1)
        rem[u] += 1
        rem[v] += 1

    try:
        dfs(0)
    except _Hit:
        return Graph(N, tuple(found))
    return None


def exhaustive_exists(N: int, n: int, node_cap: int = 10_000_000) -> bool:
    return exhaustive_find(N, n, node_cap) is not None


def exact_f_bruteforce(n: int, hi_cap: int, node_cap: int = 10_000_000) -> int:
    """Least N <= hi_cap admitting no good graph, which is f(n) by definition."""
    for N in range(1, hi_cap + 1):
        if not exhaustive_exists(N, n, node_cap):
            return N
    raise Infeasible(f"good graphs exist for every N <= {hi_cap} at n={n}; the cap is wrong")


@dataclass(frozen=True)
class SearchParams:
    seed: int = 0
    max_steps: int = 2000
    restarts: int = 20
    tabu_tenure: int = 7
    penalty_weight: float = 1.0

    def __post_init__(self):
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.penalty_weight <= 0:
            raise ValueError("penalty_weight must be positive")
        if self.tabu_tenure < 0:
            raise ValueError("tabu_tenure must be >= 0")


@dataclass
class SearchOutcome:
    found: Graph | None
    steps_used: int
    restarts_used: int
    best_objective: float
    winning_restart: int | None = None
    trace: list = field(default_factory=list, repr=False)


def objective(g: Graph, n: int, penalty_weight: float = 1.0) -> float:
    """count_c4 plus the weighted total shortfall of degrees below N - n."""
    need = g.order - n
    deficit = sum(max(0, need - r.bit_count()) for r in g.rows)
    return count_c4(g) + penalty_weight * deficit


def _paths3(rows, u, v):
    # 3-edge paths u-w-x-v with w, x outside {u, v}; toggling uv changes count_c4 by this much
    total = 0
    rv = rows[v] & ~(1 << u)
    x = rows[u] & ~(1 << v)
    while x:
        low = x & -x
        w = low.bit_length() - 1
        total += (rows[w] & rv).bit_count()
        x ^= low
    return total


def _run_restart(N: int, n: int, params: SearchParams, r: int):
    rng = random.Random(f"{params.seed}:{r}")
    need = N - n
    p = min(1.0, max(0.0, need / (N - 1))) if N > 1 else 0.0
    rows = [0] * N
    for u in range(N):
        for v in range(u + 1, N):
            if rng.random() < p:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
    w = params.penalty_weight
    pairs = [(u, v) for u in range(N) for v in range(u + 1, N)]
    deg = [x.bit_count() for x in rows]
    c4 = count_c4(Graph(N, tuple(rows)))
    deficit = sum(max(0, need - d) for d in deg)
    cur = c4 + w * deficit
    best = cur
    tabu_until = [0] * len(pairs)

    steps = 0
    while cur > 0 and steps < params.max_steps:
        steps += 1
        best_idx = -1
        best_delta = None
        for idx, (u, v) in enumerate(pairs):
            on = rows[u] >> v & 1
            dc = _paths3(rows, u, v)
            if on:
                dc = -dc
                dd = (deg[u] <= need) + (deg[v] <= need)
            else:
                dd = -((deg[u] < need) + (deg[v] < need))
            delta = dc + w * dd
            if tabu_until[idx] > steps and cur + delta >= best:
                continue
            if best_delta is None or delta < best_delta:
                best_delta, best_idx = delta, idx
        if best_idx < 0:
            continue
        u, v = pairs[best_idx]
        if rows[u] >> v & 1:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
            deg[u] -= 1
            deg[v] -= 1
        else:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
            deg[u] += 1
            deg[v] += 1
        cur += best_delta
        tabu_until[best_idx] = steps + params.tabu_tenure + 1
        if cur < best:
            best = cur
    return (tuple(rows) if cur == 0 else None), steps, best


def _restart_job(args):
    return _run_restart(*args)


def local_search_witness(N: int, n: int, params: SearchParams | None = None, workers: int = 1) -> SearchOutcome:
    """Tabu search over single edge toggles for a good graph on N vertices.

    Restart ``r`` draws its own random start from the seed string
    ``f"{seed}:{r}"``; the lowest-numbered successful restart wins, so the
    outcome does not depend on ``workers``.
    """
    if not 1 <= N <= 64:
        raise ValueError(f"N must be in 1..64, got {N}")
    if n < 1:
        raise ValueError(f"star index must be >= 1, got {n}")
    params = params or SearchParams()
    total = 0
    best = float("inf")
    results = []
    if workers <= 1:
        for r in range(params.restarts):
            res = _run_restart(N, n, params, r)
            results.append(res)
            if res[0] is not None:
                break
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for start in range(0, params.restarts, workers):
                batch = range(start, min(start + workers, params.restarts))
                batch_res = list(pool.map(_restart_job, [(N, n, params, r) for r in batch]))
                hit = next((i for i, res in enumerate(batch_res) if res[0] is not None), None)
                if hit is not None:
                    results.extend(batch_res[: hit + 1])
                    break
                results.extend(batch_res)

    found = None
    winner = None
    for r, (rows, steps, b) in enumerate(results):
        total += steps
        best = min(best, b)
        if rows is not None:
            found = Graph(N, rows)
            winner = r
    if found is not None:
        cert = verify_witness(found, n)
        if not cert.valid:
            raise AssertionError(f"search returned a graph that is not good: {cert.reason}")
        assert min_degree(found) >= N - n
    return SearchOutcome(found, total, len(results), best, winner)


def sidecar_line(outcome: SearchOutcome, N: int, n: int, params: SearchParams) -> str:
    return (
        f"seed={params.seed} restart={outcome.winning_restart} steps={outcome.steps_used} "
        f"certifies f({n})>={N + 1}"
    )
