#!/usr/bin/env python3
"""
Classical matching subroutines.

- maximum matching in bipartite graphs (Hopcroft-Karp, via networkx)
- maximum matching in general multigraphs (Edmonds' blossom shrinking)
- matchings saturating a prescribed node set, with a Hall violator on failure
- Dulmage-Mendelsohn merging of two matchings
- a matching covering every node of maximum degree
- the Gallai-Edmonds decomposition, read off the final blossom search
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

import networkx as nx

from config import GeVerifyLevel, ge_verify_level
from errors import InternalTheoremViolation, NoSaturation, PreconditionViolated
from graph_core import (
    BipartiteGraph,
    Matching,
    Multigraph,
    NodeId,
    Side,
    components,
    s_node,
    t_node,
)

logger = logging.getLogger("matching_engine")


# ---------------------------------------------------------------------------
# Bipartite matchings
# ---------------------------------------------------------------------------


def max_matching_bipartite(g: BipartiteGraph) -> Matching:
    """Maximum-cardinality matching of a bipartite graph."""
    graph = g.to_networkx()
    top = [s_node(s) for s in range(g.s_count)]
    mate = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=top)
    edges = frozenset((u.index, v.index) for u, v in mate.items() if u.side is Side.S)
    return Matching(edges)


def saturating_matching(g: BipartiteGraph, x: Iterable[NodeId]) -> Matching:
    """
    Matching covering every node of x (all on one side).

    Raises:
        NoSaturation: with a subset W of x such that |N(W)| < |W|.
    """
    x = set(x)
    if not x:
        return Matching()
    sides = {v.side for v in x}
    if len(sides) > 1:
        raise PreconditionViolated("saturating set must lie on one side")
    side = sides.pop()
    indices = {v.index for v in x}
    if side is Side.S:
        edges = [(s, t) for s, t in g.edges if s in indices]
    else:
        edges = [(s, t) for s, t in g.edges if t in indices]
    restricted = g.with_edges(edges)
    matching = max_matching_bipartite(restricted)
    covered = matching.covered_s if side is Side.S else matching.covered_t
    unsaturated = sorted(indices - covered)
    if not unsaturated:
        return matching

    # Alternating search from one unsaturated node; every reached neighbor is
    # matched, otherwise the matching would not be maximum.
    mate = matching.mate()
    root = NodeId(side, unsaturated[0])
    witness, neighbors = {root}, set()
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for u in restricted.neighbors(v):
            if u in neighbors:
                continue
            neighbors.add(u)
            w = mate.get(u)
            if w is None:
                raise InternalTheoremViolation(f"augmenting path to {u} left in a maximum matching")
            if w not in witness:
                witness.add(w)
                queue.append(w)
    logger.debug("Hall violator of size %d with %d neighbors", len(witness), len(neighbors))
    raise NoSaturation(witness, neighbors)


def dm_merge(g: BipartiteGraph, m_x: Matching, x: Iterable[int], m_y: Matching, y: Iterable[int]) -> Matching:
    """
    Merge a matching covering x (S-side) and one covering y (T-side) into a
    matching covering both.

    Common edges are kept; every alternating component of the symmetric
    difference contributes its m_x-edges if it holds a node of x missed by
    m_y, and its m_y-edges otherwise.
    """
    x, y = set(x), set(y)
    if not x <= m_x.covered_s:
        raise PreconditionViolated(f"m_x misses S-nodes {sorted(x - m_x.covered_s)}")
    if not y <= m_y.covered_t:
        raise PreconditionViolated(f"m_y misses T-nodes {sorted(y - m_y.covered_t)}")

    result = set(m_x.edges & m_y.edges)
    y_covered_s = m_y.covered_s
    for component in components(m_x.edges ^ m_y.edges, g):
        take_x = any(
            v.side is Side.S and v.index in x and v.index not in y_covered_s for v in component.nodes
        )
        source = m_x.edges if take_x else m_y.edges
        for a, b in component.edges:
            edge = (a.index, b.index) if a.side is Side.S else (b.index, a.index)
            if edge in source:
                result.add(edge)
    return Matching(frozenset(result))


def matching_covering_max_degree(g: BipartiteGraph) -> Matching:
    """Matching covering every node of maximum degree (always exists in bipartite graphs)."""
    if not g.edges:
        raise PreconditionViolated("graph has no edges")
    delta = g.max_degree
    x = [s for s in range(g.s_count) if g.s_degree(s) == delta]
    y = [t for t in range(g.t_count) if g.t_degree(t) == delta]
    try:
        m_x = saturating_matching(g, [s_node(s) for s in x])
        m_y = saturating_matching(g, [t_node(t) for t in y])
    except NoSaturation as exc:
        raise InternalTheoremViolation(f"max-degree nodes not saturable: {exc}") from exc
    return dm_merge(g, m_x, x, m_y, y)


# ---------------------------------------------------------------------------
# General matchings (blossom shrinking)
# ---------------------------------------------------------------------------


class _AlternatingForest:
    """
    One Edmonds search over a shared mate array (-1 = exposed).

    `even` marks outer nodes, including every node absorbed into a blossom;
    `base` maps a node to the base of its outermost blossom.
    """

    def __init__(self, adjacency, mate, allowed):
        n = len(adjacency)
        self.adjacency = adjacency
        self.mate = mate
        self.allowed = allowed
        self.parent = [-1] * n
        self.base = list(range(n))
        self.even = [False] * n
        self.queue = deque()

    def grow(self, roots: Iterable[int]) -> int:
        """Search from the roots; return an exposed odd endpoint or -1."""
        for r in roots:
            self.even[r] = True
            self.queue.append(r)
        while self.queue:
            v = self.queue.popleft()
            for u in self.adjacency[v]:
                if not self.allowed[u] or self.base[v] == self.base[u] or self.mate[v] == u:
                    continue
                if self.even[u]:
                    self._shrink(v, u)
                elif self.parent[u] == -1:
                    self.parent[u] = v
                    if self.mate[u] == -1:
                        return u
                    w = self.mate[u]
                    self.even[w] = True
                    self.queue.append(w)
        return -1

    def augment(self, u: int):
        v = u
        while v != -1:
            pv = self.parent[v]
            ppv = self.mate[pv]
            self.mate[v] = pv
            self.mate[pv] = v
            v = ppv

    def _common_base(self, a, b):
        seen = set()
        while True:
            a = self.base[a]
            seen.add(a)
            if self.mate[a] == -1:
                break
            a = self.parent[self.mate[a]]
        while True:
            b = self.base[b]
            if b in seen:
                return b
            if self.mate[b] == -1:
                return None
            b = self.parent[self.mate[b]]

    def _mark_path(self, v, b, child, in_blossom):
        while self.base[v] != b:
            in_blossom.add(self.base[v])
            in_blossom.add(self.base[self.mate[v]])
            self.parent[v] = child
            child = self.mate[v]
            v = self.parent[self.mate[v]]

    def _shrink(self, v, u):
        b = self._common_base(v, u)
        if b is None:
            # Two outer nodes of different trees: an augmenting path the
            # caller declared impossible.
            raise InternalTheoremViolation(f"outer-outer edge {v}-{u} across trees; matching not maximum")
        in_blossom = set()
        self._mark_path(v, b, u, in_blossom)
        self._mark_path(u, b, v, in_blossom)
        for i in range(len(self.base)):
            if self.base[i] in in_blossom:
                self.base[i] = b
                if not self.even[i]:
                    self.even[i] = True
                    self.queue.append(i)


def _maximum_mate(g, allowed):
    adjacency = g.adjacency
    mate = [-1] * g.n
    # greedy start, lowest ids first
    for v in range(g.n):
        if not allowed[v] or mate[v] != -1:
            continue
        for u in adjacency[v]:
            if allowed[u] and mate[u] == -1:
                mate[v], mate[u] = u, v
                break
    for root in range(g.n):
        if allowed[root] and mate[root] == -1:
            forest = _AlternatingForest(adjacency, mate, allowed)
            end = forest.grow([root])
            if end != -1:
                forest.augment(end)
    return mate


def _mate_to_matching(mate):
    return Matching(frozenset((v, u) for v, u in enumerate(mate) if u > v), bipartite=False)


def max_matching_general(g: Multigraph, within: Optional[Iterable[int]] = None) -> Matching:
    """
    Maximum matching of the support of g, or of its induced subgraph on `within`.
    Parallel edges never change the result.
    """
    if within is None:
        allowed = [True] * g.n
    else:
        allowed = [False] * g.n
        for v in within:
            allowed[v] = True
    return _mate_to_matching(_maximum_mate(g, allowed))


@dataclass(frozen=True)
class GallaiEdmonds:
    d: frozenset[int]
    a: frozenset[int]
    c: frozenset[int]
    d_components: tuple[frozenset[int], ...]
    matching: Matching

    def component_of(self) -> dict[int, int]:
        return {v: i for i, comp in enumerate(self.d_components) for v in comp}


def gallai_edmonds(g: Multigraph, verify: Optional[GeVerifyLevel] = None) -> GallaiEdmonds:
    """
    Gallai-Edmonds decomposition (D, A, C) of g.

    D is the set of outer nodes of a complete blossom search started from all
    nodes left exposed by a maximum matching; that matching is exposed as
    `matching` and is consistent with the decomposition.
    """
    allowed = [True] * g.n
    mate = _maximum_mate(g, allowed)
    exposed = [v for v in range(g.n) if mate[v] == -1]
    forest = _AlternatingForest(g.adjacency, mate, allowed)
    if forest.grow(exposed) != -1:
        raise InternalTheoremViolation("augmenting path found after maximum matching")

    d = frozenset(v for v in range(g.n) if forest.even[v])
    a = frozenset(u for v in d for u in g.adjacency[v] if u not in d)
    c = frozenset(range(g.n)) - d - a
    d_components = tuple(
        frozenset(comp) for comp in sorted(nx.connected_components(g.to_networkx(d)), key=min)
    )
    result = GallaiEdmonds(d, a, c, d_components, _mate_to_matching(mate))
    logger.debug(
        "Gallai-Edmonds on %d nodes: |D|=%d (%d components) |A|=%d |C|=%d",
        g.n, len(d), len(d_components), len(a), len(c),
    )

    level = verify or ge_verify_level()
    if level != "off":
        _check_decomposition(g, result, level)
    return result


def _check_decomposition(g, ge, level):
    def nu(nodes):
        return len(max_matching_general(g, nodes))

    for comp in ge.d_components:
        k = len(comp)
        if k % 2 == 0:
            raise InternalTheoremViolation(f"D-component {sorted(comp)} has even size")
        if nu(comp) != (k - 1) // 2:
            raise InternalTheoremViolation(f"D-component {sorted(comp)} is not near-perfectly matchable")
        probes = sorted(comp) if level == "always" else [min(comp)]
        for v in probes:
            if nu(comp - {v}) != (k - 1) // 2:
                raise InternalTheoremViolation(f"D-component {sorted(comp)} is not factor-critical at {v}")
    if nu(ge.c) * 2 != len(ge.c):
        raise InternalTheoremViolation("G[C] has no perfect matching")
    missing = (ge.a | ge.c) - ge.matching.covered
    if missing:
        raise InternalTheoremViolation(f"maximum matching misses A or C nodes {sorted(missing)}")
