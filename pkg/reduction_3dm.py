#!/usr/bin/env python3
"""
Gadget reduction from 3-dimensional matching to V-free 2-matchings.

Each triple e = (x, y, z) of a tripartite 3-regular 3-uniform hypergraph gets
a path t1-s1-t2-s2-t3; t1 is joined to s_x and s_y, s1 is joined to t_z, and
every x and y carries a pendant anchor edge s-t. The graph has a V-free
2-matching covering T iff the hypergraph has a perfect matching.

Layout (n nodes per part, m = 3n triples):
    S: s_x = x, s_y = n + y, s1 = 2n + 2e, s2 = 2n + 2e + 1
    T: t_x = x, t_y = n + y, t_z = 2n + z, t1 = 3n + 3e, t2 = t1 + 1, t3 = t1 + 2
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from errors import CoverageGap, InvalidInstance, NotPerfectMatching, NotVFree, TheoremViolation
from graph_core import BipartiteGraph, NodeId, TwoMatching, VerificationReport, s_node, t_node

logger = logging.getLogger("reduction_3dm")


@dataclass(frozen=True)
class ThreeDMInstance:
    """Triples (x, y, z), 0-based within each part; triple i has id i."""

    x_count: int
    y_count: int
    z_count: int
    triples: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        triples = tuple(tuple(int(c) for c in triple) for triple in self.triples)
        object.__setattr__(self, "triples", triples)
        if not self.x_count == self.y_count == self.z_count:
            raise InvalidInstance(f"part sizes differ: {self.x_count}, {self.y_count}, {self.z_count}")
        sizes = (self.x_count, self.y_count, self.z_count)
        for i, triple in enumerate(triples):
            if len(triple) != 3:
                raise InvalidInstance(f"triple {i} does not have one node per part")
            for part, (c, size) in enumerate(zip(triple, sizes)):
                if not 0 <= c < size:
                    raise InvalidInstance(f"triple {i} has {'xyz'[part]}={c} out of range")
        for part in range(3):
            counts = Counter(triple[part] for triple in triples)
            for v in range(sizes[part]):
                if counts[v] != 3:
                    raise InvalidInstance(f"node {'xyz'[part]}{v} lies in {counts[v]} triples, expected 3")

    @property
    def n(self) -> int:
        return self.x_count

    @property
    def m(self) -> int:
        return len(self.triples)

    def is_perfect_matching(self, chosen: Iterable[int]) -> bool:
        return not _matching_defects(self, set(chosen))


def _matching_defects(h, chosen):
    defects = [f"triple {e}" for e in sorted(chosen) if not 0 <= e < h.m]
    if defects:
        return defects
    for part in range(3):
        counts = Counter(h.triples[e][part] for e in chosen)
        defects += [f"{'xyz'[part]}{v}" for v in range(h.n) if counts[v] != 1]
    return defects


def verify_3dm(h: ThreeDMInstance, chosen: Iterable[int]) -> VerificationReport:
    """Check that the chosen triple ids cover every node of every part exactly once."""
    chosen = list(chosen)
    report = VerificationReport()
    for e, c in Counter(chosen).items():
        if c > 1:
            report.add("triple repeated", f"triple {e}")
    for defect in _matching_defects(h, set(chosen)):
        if defect.startswith("triple"):
            report.add("unknown triple", defect)
        else:
            report.add("not covered exactly once", defect)
    return report


@dataclass(frozen=True)
class GadgetMap:
    """Role of every node and edge of a reduction output."""

    n: int
    m: int
    node_roles: dict[NodeId, tuple[str, int]] = field(default_factory=dict)
    edge_roles: dict[tuple[int, int], tuple[str, int]] = field(default_factory=dict)

    @property
    def s_count(self) -> int:
        return 2 * self.n + 2 * self.m

    @property
    def t_count(self) -> int:
        return 3 * self.n + 3 * self.m

    def s_x(self, x: int) -> int:
        return x

    def s_y(self, y: int) -> int:
        return self.n + y

    def s1(self, e: int) -> int:
        return 2 * self.n + 2 * e

    def s2(self, e: int) -> int:
        return 2 * self.n + 2 * e + 1

    def t_x(self, x: int) -> int:
        return x

    def t_y(self, y: int) -> int:
        return self.n + y

    def t_z(self, z: int) -> int:
        return 2 * self.n + z

    def t1(self, e: int) -> int:
        return 3 * self.n + 3 * e

    def t2(self, e: int) -> int:
        return 3 * self.n + 3 * e + 1

    def t3(self, e: int) -> int:
        return 3 * self.n + 3 * e + 2

    def path_edges(self, e: int) -> list[tuple[int, int]]:
        """E(P_e) as (s, t) pairs: t1s1, s1t2, t2s2, s2t3."""
        return [
            (self.s1(e), self.t1(e)),
            (self.s1(e), self.t2(e)),
            (self.s2(e), self.t2(e)),
            (self.s2(e), self.t3(e)),
        ]

    def connector_edges(self, h: ThreeDMInstance, e: int) -> list[tuple[int, int]]:
        x, y, z = h.triples[e]
        return [(self.s_x(x), self.t1(e)), (self.s_y(y), self.t1(e)), (self.s1(e), self.t_z(z))]


def reduce_3dm(h: ThreeDMInstance) -> tuple[BipartiteGraph, GadgetMap]:
    """Gadget graph with 20n nodes, 23n edges and maximum degree 4."""
    gm = GadgetMap(h.n, h.m)
    nodes, edges = gm.node_roles, gm.edge_roles
    for x in range(h.n):
        nodes[s_node(gm.s_x(x))] = ("s_x", x)
        nodes[t_node(gm.t_x(x))] = ("t_x", x)
        edges[(gm.s_x(x), gm.t_x(x))] = ("anchor_x", x)
    for y in range(h.n):
        nodes[s_node(gm.s_y(y))] = ("s_y", y)
        nodes[t_node(gm.t_y(y))] = ("t_y", y)
        edges[(gm.s_y(y), gm.t_y(y))] = ("anchor_y", y)
    for z in range(h.n):
        nodes[t_node(gm.t_z(z))] = ("t_z", z)
    for e in range(h.m):
        nodes[s_node(gm.s1(e))] = ("s1", e)
        nodes[s_node(gm.s2(e))] = ("s2", e)
        nodes[t_node(gm.t1(e))] = ("t1", e)
        nodes[t_node(gm.t2(e))] = ("t2", e)
        nodes[t_node(gm.t3(e))] = ("t3", e)
        for edge in gm.path_edges(e):
            edges[edge] = ("path", e)
        for role, edge in zip(("connector_x", "connector_y", "connector_z"), gm.connector_edges(h, e)):
            edges[edge] = (role, e)

    g = BipartiteGraph(gm.s_count, gm.t_count, tuple(edges))
    assert g.s_count + g.t_count == 20 * h.n and len(g.edges) == 23 * h.n
    assert len(nodes) == 20 * h.n
    assert g.max_degree <= 4
    logger.debug("reduced 3DM instance n=%d to %d+%d nodes, %d edges", h.n, g.s_count, g.t_count, len(g.edges))
    return g, gm


def forward_map(h: ThreeDMInstance, gm: GadgetMap, matching: Iterable[int]) -> TwoMatching:
    """
    V-free 2-matching covering T built from a perfect matching of h.

    Raises:
        NotPerfectMatching: with the first node not covered exactly once.
    """
    chosen = set(matching)
    defects = _matching_defects(h, chosen)
    if defects:
        raise NotPerfectMatching(defects[0])
    edges = set()
    for e in range(h.m):
        path = gm.path_edges(e)
        if e in chosen:
            x, y, _ = h.triples[e]
            edges |= {(gm.s_x(x), gm.t_x(x)), (gm.s_y(y), gm.t_y(y))}
            edges |= set(gm.connector_edges(h, e))
            edges |= set(path[1:])
        else:
            edges |= set(path)
    return TwoMatching(frozenset(edges))


def lift_solution(h: ThreeDMInstance, gm: GadgetMap, n: TwoMatching) -> frozenset[int]:
    """
    Perfect matching of h read off a V-free 2-matching covering T: the triples
    whose connector t_z-s1 is used.

    Raises:
        NotVFree, CoverageGap: n is not a V-free cover of T.
        TheoremViolation: the lifted set is not a perfect matching.
    """
    stray = sorted(n.edges - set(gm.edge_roles))
    if stray:
        raise TheoremViolation(f"edge {stray[0]} is not part of the gadget graph")
    v_paths = n.v_paths()
    if v_paths:
        raise NotVFree(v_paths[0])
    gaps = sorted(set(range(gm.t_count)) - n.covered_t)
    if gaps:
        raise CoverageGap(t_node(gaps[0]))

    edges = set(n.edges)
    for e in range(h.m):
        if (gm.s1(e), gm.t2(e)) not in edges or (gm.s2(e), gm.t3(e)) not in edges:
            raise TheoremViolation(f"cover does not contain the tail of path {e}")
        edges.add((gm.s2(e), gm.t2(e)))

    lifted = frozenset(e for e in range(h.m) if (gm.s1(e), gm.t_z(h.triples[e][2])) in edges)
    defects = _matching_defects(h, set(lifted))
    if defects:
        raise TheoremViolation(f"lifted triples {sorted(lifted)} miss or repeat {defects[0]}")
    return lifted
