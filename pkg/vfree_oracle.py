#!/usr/bin/env python3
"""
Exact exponential-time oracles.

Ground truth for the polynomial algorithms: V-free 2-matching covering,
matching number, the Gallai-Edmonds D-set, extended matchings covering a node
set, and perfect matchings of 3DM instances. Every search is capped by an
OracleBudget and breaks ties by lowest id, so answers are reproducible.
"""

from __future__ import annotations

import logging
import time
from typing import Iterable, Optional

from config import OracleBudget
from errors import BudgetExceeded
from extended_matching import ExtendedMatching
from graph_core import BipartiteGraph, Hypergraph, Multigraph, TwoMatching

logger = logging.getLogger("vfree_oracle")


class _Deadline:
    def __init__(self, budget: OracleBudget):
        self.limit = budget.time_limit
        self.start = time.monotonic()
        self.steps = 0

    def check(self):
        self.steps += 1
        if self.steps % 256:
            return
        elapsed = time.monotonic() - self.start
        if elapsed > self.limit:
            logger.warning("oracle stopped after %.1fs and %d steps", elapsed, self.steps)
            raise BudgetExceeded("time_limit", round(elapsed, 3), self.limit)


def _budget(budget):
    return budget if budget is not None else OracleBudget()


def _require_nodes(n, budget):
    if n > budget.max_nodes:
        raise BudgetExceeded("max_nodes", n, budget.max_nodes)


# ---------------------------------------------------------------------------
# V-free 2-matchings
# ---------------------------------------------------------------------------


def oracle_vfree_cover(
    g: BipartiteGraph, required: Iterable[int], budget: Optional[OracleBudget] = None
) -> Optional[TwoMatching]:
    """
    V-free 2-matching covering `required`, or None if none exists.

    Only edges at required T-nodes are ever needed: dropping the others from
    a V-free cover cannot create a V-path. Each required node therefore picks
    one or two of its edges; a V-path appears exactly when an S-node receives
    two single-edge picks.
    """
    budget = _budget(budget)
    required = sorted(set(required))
    size = sum(g.t_degree(t) for t in required)
    if size > budget.max_edges:
        raise BudgetExceeded("max_edges", size, budget.max_edges)
    if any(g.t_degree(t) == 0 for t in required):
        return None

    order = sorted(required, key=lambda t: (g.t_degree(t), t))
    patterns = {}
    for t in order:
        nbrs = g.t_neighbors(t)
        patterns[t] = [(s,) for s in nbrs] + [(a, b) for i, a in enumerate(nbrs) for b in nbrs[i + 1:]]

    load = [0] * g.s_count
    # per S-node, how many of its edges come from a single-edge pick
    single = [0] * g.s_count
    chosen: dict[int, tuple[int, ...]] = {}
    deadline = _Deadline(budget)

    def fits(pick):
        if any(load[s] >= 2 for s in pick):
            return False
        return not (len(pick) == 1 and single[pick[0]] == 1)

    def place(t, pick, sign):
        for s in pick:
            load[s] += sign
        if len(pick) == 1:
            single[pick[0]] += sign
        if sign > 0:
            chosen[t] = pick
        else:
            del chosen[t]

    def alive(i):
        return all(any(load[s] < 2 for s in g.t_neighbors(t)) for t in order[i:])

    def search(i):
        deadline.check()
        if i == len(order):
            return True
        t = order[i]
        for pick in patterns[t]:
            if not fits(pick):
                continue
            place(t, pick, 1)
            if alive(i + 1) and search(i + 1):
                return True
            place(t, pick, -1)
        return False

    found = search(0)
    logger.debug("V-free cover search on %d required nodes: %s after %d steps", len(order), found, deadline.steps)
    if not found:
        return None
    return TwoMatching(frozenset((s, t) for t, pick in chosen.items() for s in pick))


# ---------------------------------------------------------------------------
# Matching number and the Gallai-Edmonds D-set
# ---------------------------------------------------------------------------


def oracle_nu(g: Multigraph, budget: Optional[OracleBudget] = None) -> int:
    """Maximum matching size by memoized search over node subsets."""
    budget = _budget(budget)
    _require_nodes(g.n, budget)
    adjacency = g.adjacency
    deadline = _Deadline(budget)
    memo: dict[int, int] = {}

    def best(mask):
        if mask == 0:
            return 0
        if mask in memo:
            return memo[mask]
        deadline.check()
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        value = best(rest)
        for u in adjacency[v]:
            if rest >> u & 1:
                value = max(value, 1 + best(rest & ~(1 << u)))
        memo[mask] = value
        return value

    return best((1 << g.n) - 1)


def oracle_ge_d_set(g: Multigraph, budget: Optional[OracleBudget] = None) -> frozenset[int]:
    """Nodes missed by some maximum matching: {v : nu(G - v) = nu(G)}."""
    nu = oracle_nu(g, budget)
    return frozenset(v for v in range(g.n) if oracle_nu(g.without_node(v), budget) == nu)


# ---------------------------------------------------------------------------
# Extended matchings and 3DM
# ---------------------------------------------------------------------------


def oracle_extended_matching(
    h: Hypergraph, required: Iterable[int], budget: Optional[OracleBudget] = None
) -> Optional[ExtendedMatching]:
    """Exhaustive search for an extended matching covering `required`."""
    budget = _budget(budget)
    _require_nodes(h.n, budget)
    required = sorted(set(required))
    deadline = _Deadline(budget)
    failed: set[int] = set()
    hyperedges: list[int] = []
    pairs: list[tuple[int, int, int]] = []

    def options(v, used):
        for e in h.incidence[v]:
            if not any(used >> u & 1 for u in h.hyperedges[e]):
                yield "hyperedge", e, 0
        witness = {}
        for e in h.incidence[v]:
            for u in h.hyperedges[e]:
                if u != v and not used >> u & 1:
                    witness.setdefault(u, e)
        for u in sorted(witness):
            yield "pair", witness[u], u

    def search(used):
        deadline.check()
        v = next((v for v in required if not used >> v & 1), None)
        if v is None:
            return True
        if used in failed:
            return False
        for kind, e, u in options(v, used):
            if kind == "hyperedge":
                hyperedges.append(e)
                nxt = used
                for w in h.hyperedges[e]:
                    nxt |= 1 << w
                if search(nxt):
                    return True
                hyperedges.pop()
            else:
                pairs.append((v, u, e))
                if search(used | 1 << v | 1 << u):
                    return True
                pairs.pop()
        failed.add(used)
        return False

    if not search(0):
        return None
    return ExtendedMatching(frozenset(hyperedges), frozenset(pairs))


def oracle_3dm_matching(instance, budget: Optional[OracleBudget] = None) -> Optional[frozenset[int]]:
    """Triple ids of a perfect matching of a 3DM instance, or None."""
    budget = _budget(budget)
    if len(instance.triples) > budget.max_edges:
        raise BudgetExceeded("max_edges", len(instance.triples), budget.max_edges)
    n = instance.n
    at_x = [[] for _ in range(n)]
    for i, (x, _, _) in enumerate(instance.triples):
        at_x[x].append(i)
    used_y, used_z = [False] * n, [False] * n
    chosen: list[int] = []
    deadline = _Deadline(budget)

    def search(x):
        deadline.check()
        if x == n:
            return True
        for i in at_x[x]:
            _, y, z = instance.triples[i]
            if used_y[y] or used_z[z]:
                continue
            used_y[y] = used_z[z] = True
            chosen.append(i)
            if search(x + 1):
                return True
            chosen.pop()
            used_y[y] = used_z[z] = False
        return False

    return frozenset(chosen) if search(0) else None
