#!/usr/bin/env python3
"""
Matching + S-link covers of bipartite graphs.

Given G=(S,T;E) with S-degrees at most 4 and T-degrees at most 3, find a
matching M and node-disjoint S-links F whose union covers every T-node of
degree 3. The T-nodes of degree 3 are read as the hyperedges of a 3-uniform
hypergraph on S; an extended matching covering its degree-4 nodes supplies
S-links and S-claws, and a saturating matching covers what remains.

Such a pair (M, F) is equivalent to a V-free 2-matching covering the same
T-nodes; both directions of that translation live here.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from errors import (
    CoverageGap,
    DegreeBoundViolated,
    GraphError,
    InternalTheoremViolation,
    InvalidSolution,
    NoSaturation,
    NotVFree,
)
from extended_matching import ExtendedMatching, extended_matching_covering_max_quasidegree
from graph_core import (
    BipartiteGraph,
    ComponentKind,
    Matching,
    Side,
    SLink,
    SLinkFamily,
    TwoMatching,
    VerificationReport,
    Violation,
    hypergraph_from_bipartite,
    s_node,
    t_node,
)
from matching_engine import saturating_matching

logger = logging.getLogger("liang_solver")

S_DEGREE_BOUND = 4
T_DEGREE_BOUND = 3


@dataclass(frozen=True)
class LiangSolution:
    m: Matching
    f: SLinkFamily
    covered: frozenset[int]

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return self.m.edges | self.f.edges


def _check_degree_bounds(g):
    for s in range(g.s_count):
        if g.s_degree(s) > S_DEGREE_BOUND:
            raise DegreeBoundViolated(s_node(s), g.s_degree(s), S_DEGREE_BOUND)
    for t in range(g.t_count):
        if g.t_degree(t) > T_DEGREE_BOUND:
            raise DegreeBoundViolated(t_node(t), g.t_degree(t), T_DEGREE_BOUND)


def solve_liang(g: BipartiteGraph) -> LiangSolution:
    """
    Matching and node-disjoint S-links covering every degree-3 T-node.

    Raises:
        DegreeBoundViolated: an S-node of degree > 4 or a T-node of degree > 3.
    """
    _check_degree_bounds(g)
    required = [t for t in range(g.t_count) if g.t_degree(t) == T_DEGREE_BOUND]
    if not required:
        return LiangSolution(Matching(), SLinkFamily(), frozenset())

    reduced, t_map = g.restrict_t(required)
    h = hypergraph_from_bipartite(reduced, Side.S)
    s_prime = {v for v in range(h.n) if h.degree(v) == S_DEGREE_BOUND}
    if s_prime:
        full = extended_matching_covering_max_quasidegree(h)
        em = ExtendedMatching(
            frozenset(e for e in full.hyperedges if h.hyperedges[e] & s_prime),
            frozenset(p for p in full.pairs if p[0] in s_prime or p[1] in s_prime),
        )
    else:
        em = ExtendedMatching()
    logger.debug(
        "%d required T-nodes, %d degree-4 S-nodes, %d claws, %d links from the extended matching",
        len(required), len(s_prime), len(em.hyperedges), len(em.pairs),
    )

    links = [SLink(u, t_map[e], v) for u, v, e in sorted(em.pairs)]
    claws = [(t_map[e], sorted(h.hyperedges[e])) for e in sorted(em.hyperedges)]
    claimed = {e for link in links for e in link.edges}
    claimed |= {(s, center) for center, members in claws for s in members}
    claimed_t = {t for _, t in claimed}

    t_prime = [t for t in required if t not in claimed_t]
    keep = set(t_prime)
    rest = g.with_edges((s, t) for s, t in g.edges if t in keep and (s, t) not in claimed)
    for t in t_prime:
        if rest.t_degree(t) != T_DEGREE_BOUND:
            raise InternalTheoremViolation(f"uncovered T-node {t} lost an edge")
    for s in range(rest.s_count):
        if rest.s_degree(s) > T_DEGREE_BOUND:
            raise InternalTheoremViolation(f"S-node {s} keeps degree {rest.s_degree(s)} after the claws")
    try:
        m = saturating_matching(rest, [t_node(t) for t in t_prime])
    except NoSaturation as exc:
        raise InternalTheoremViolation(f"remaining T-nodes not saturable: {exc}") from exc

    # each claw sheds the edge at its lowest S-node
    links += [SLink(members[1], center, members[2]) for center, members in claws]
    link_centers = {link.center for link in links}
    m_edges = frozenset(e for e in m.edges if e[1] not in link_centers)

    solution = LiangSolution(Matching(m_edges), SLinkFamily(tuple(links)), frozenset(required))
    report = verify_liang(g, solution, required)
    if not report.ok:
        raise InternalTheoremViolation(f"solver produced an invalid cover: {report.lines()[0]}")
    return solution


def verify_liang(g: BipartiteGraph, sol: LiangSolution, required: Iterable[int]) -> VerificationReport:
    """Matching property, S-link shape and disjointness, edge-disjointness and coverage."""
    report = VerificationReport()
    for s, t in sorted(sol.m.edges):
        if not g.has_edge(s, t):
            report.add("edge not in graph", f"edge {s} {t}")
    for v in sol.m.conflicts():
        report.add("not a matching", v, "degree > 1 in M")
    for link in sol.f:
        element = f"link {link.u} {link.center} {link.w}"
        if link.u == link.w:
            report.add("degenerate link", element)
        for s, t in link.edges:
            if not g.has_edge(s, t):
                report.add("link edge not in graph", element, f"edge {s} {t}")
    for v in sol.f.shared_nodes():
        report.add("links share node", v)
    for s, t in sorted(sol.m.edges & sol.f.edges):
        report.add("matching edge inside a link", f"edge {s} {t}")

    required = set(required)
    union_t = {t for _, t in sol.m.edges} | {link.center for link in sol.f}
    for t in sorted(required - union_t):
        report.add("uncovered", t_node(t))
    report.notes["required_covered"] = len(required & union_t)
    report.notes["incidental_covered"] = sorted(union_t - required)
    return report


def verify_vfree(g: BipartiteGraph, n: TwoMatching, required: Iterable[int]) -> VerificationReport:
    report = VerificationReport()
    for s, t in sorted(n.edges):
        if not g.has_edge(s, t):
            report.add("edge not in graph", f"edge {s} {t}")
    overloaded = n.overloaded()
    for v in overloaded:
        report.add("not a 2-matching", v, "degree > 2")
    if not overloaded:
        for comp in n.v_paths():
            report.add("V-path", comp)
    required = set(required)
    for t in sorted(required - n.covered_t):
        report.add("uncovered", t_node(t))
    report.notes["required_covered"] = len(required & n.covered_t)
    return report


def links_to_vfree(g: BipartiteGraph, sol: LiangSolution) -> TwoMatching:
    """M plus the links, minus M-edges at T-nodes already served by a link."""
    report = verify_liang(g, sol, sol.covered)
    if not report.ok:
        raise InvalidSolution(report.violations)
    union = sol.m.edges | sol.f.edges
    t_degree = Counter(t for _, t in union)
    edges = {e for e in sol.m.edges if t_degree[e[1]] < 3} | sol.f.edges
    try:
        n = TwoMatching(frozenset(edges))
    except GraphError as exc:
        raise InvalidSolution([Violation("not a 2-matching", "union", str(exc))]) from exc
    v_paths = n.v_paths()
    if v_paths:
        raise InvalidSolution([Violation("V-path", v_paths[0])])
    return n


UNUSED, MATCHING, LINK = "unused", "matching", "link"
ROLES = (UNUSED, MATCHING, LINK)


def _end_ok(node, role, required):
    if node.side is Side.T:
        if role == LINK:
            return False
        if node.index in required and role == UNUSED:
            return False
    return True


def _joint_ok(node, before, after, required):
    """Roles of the two component edges meeting at `node`."""
    if node.side is Side.T:
        if before == LINK or after == LINK:
            return before == LINK and after == LINK
        if before == MATCHING and after == MATCHING:
            return False
        return not (node.index in required and before == UNUSED and after == UNUSED)
    return not (before == after and before != UNUSED)


def _scan(nodes, k, first_roles, last_ok, required):
    """
    Linear DP along edges 0..k-1; the joint between edge i-1 and edge i is
    nodes[i]. Returns the role sequence that is lexicographically first in
    (unused, matching, link) order, or None.
    """
    feasible = [set() for _ in range(k)]
    feasible[k - 1] = {r for r in ROLES if last_ok(r)}
    for i in range(k - 2, -1, -1):
        feasible[i] = {
            r for r in ROLES if any(_joint_ok(nodes[i + 1], r, r2, required) for r2 in feasible[i + 1])
        }
    for first in first_roles:
        if first not in feasible[0]:
            continue
        roles = [first]
        for i in range(1, k):
            roles.append(
                next(r for r in ROLES if r in feasible[i] and _joint_ok(nodes[i], roles[-1], r, required))
            )
        return roles
    return None


def _component_roles(comp, required):
    nodes, k = comp.nodes, len(comp.edges)
    if comp.kind is ComponentKind.PATH:
        first = [r for r in ROLES if _end_ok(nodes[0], r, required)]
        return _scan(nodes, k, first, lambda r: _end_ok(nodes[k], r, required), required)
    for first in ROLES:
        roles = _scan(nodes, k, [first], lambda r, first=first: _joint_ok(nodes[0], r, first, required), required)
        if roles is not None:
            return roles
    return None


def _as_st(a, b):
    return (a.index, b.index) if a.side is Side.S else (b.index, a.index)


def vfree_to_links(g: BipartiteGraph, n: TwoMatching, required: Iterable[int]) -> LiangSolution:
    """
    Split a V-free 2-matching covering `required` into a matching and S-links
    whose union is a subset of n and still covers `required`.

    Raises:
        NotVFree: a component of n is a V-path.
        CoverageGap: a required T-node is not covered by n.
    """
    required = frozenset(required)
    stray = sorted(n.edges - g.edge_set)
    if stray:
        raise GraphError(f"edge {stray[0]} is not in the graph")
    comps = n.components()
    for comp in comps:
        if comp.kind is ComponentKind.OTHER:
            raise GraphError(f"component {comp} is not a path or cycle")
        if comp.is_v_path:
            raise NotVFree(comp)
    gaps = sorted(required - n.covered_t)
    if gaps:
        raise CoverageGap(t_node(gaps[0]))

    m_edges, links = set(), []
    for comp in comps:
        roles = _component_roles(comp, required)
        if roles is None:
            raise InternalTheoremViolation(f"no matching/link split for component {comp}")
        k = len(comp.edges)
        for i, (edge, role) in enumerate(zip(comp.edges, roles)):
            if role == MATCHING:
                m_edges.add(_as_st(*edge))
            elif role == LINK and i + 1 < k and roles[i + 1] == LINK and comp.nodes[i + 1].side is Side.T:
                links.append(SLink(edge[0].index, comp.nodes[i + 1].index, comp.edges[i + 1][1].index))
        if comp.kind is ComponentKind.CYCLE and roles[-1] == LINK and roles[0] == LINK and comp.nodes[0].side is Side.T:
            links.append(SLink(comp.nodes[-1].index, comp.nodes[0].index, comp.nodes[1].index))

    solution = LiangSolution(Matching(frozenset(m_edges)), SLinkFamily(tuple(links)), required)
    report = verify_liang(g, solution, required)
    if not report.ok:
        raise InternalTheoremViolation(f"split of a V-free 2-matching failed: {report.lines()[0]}")
    return solution
