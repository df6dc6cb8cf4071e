#!/usr/bin/env python3
"""
Extended matchings in oddly uniform hypergraphs.

An extended matching is a node-disjoint collection of whole hyperedges and
node pairs, where a pair may be used only if some hyperedge contains both
nodes. Every oddly uniform quasi-regular hypergraph has a perfect one; it is
built here from a maximum matching of the clique expansion and, when that is
not perfect, from the Gallai-Edmonds decomposition. Padding three copies of
any oddly uniform hypergraph up to quasi-regularity yields an extended
matching covering all nodes of maximum quasi-degree.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional

from errors import (
    InternalTheoremViolation,
    NoSaturation,
    NotOddlyUniform,
    NotQuasiRegular,
    ZeroQuasiDegree,
)
from graph_core import BipartiteGraph, Hypergraph, Matching, Multigraph, VerificationReport, clique_pairs, s_node
from matching_engine import dm_merge, gallai_edmonds, max_matching_general, saturating_matching

logger = logging.getLogger("extended_matching")


@dataclass(frozen=True)
class ExtendedMatching:
    """Chosen hyperedge ids plus witnessed pairs (u, v, hyperedge id) with u < v.

    Construction does not enforce disjointness; `verify_extended_matching`
    reports violations.
    """

    hyperedges: frozenset[int] = frozenset()
    pairs: frozenset[tuple[int, int, int]] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "hyperedges", frozenset(int(e) for e in self.hyperedges))
        object.__setattr__(
            self, "pairs", frozenset((min(u, v), max(u, v), int(w)) for u, v, w in self.pairs)
        )

    def covered(self, h: Hypergraph) -> set[int]:
        nodes = {v for e in self.hyperedges for v in h.hyperedges[e]}
        nodes.update(v for u, w, _ in self.pairs for v in (u, w))
        return nodes

    def __len__(self):
        return len(self.hyperedges) + len(self.pairs)


@dataclass(frozen=True)
class QuasiDegreeProfile:
    degrees: tuple[int, ...]
    delta: int
    deficiency: tuple[int, ...]
    oddly_uniform: bool

    @property
    def is_quasi_regular(self) -> bool:
        return all(d == self.delta for d in self.degrees)

    @property
    def maximal_nodes(self) -> frozenset[int]:
        """Nodes of maximum quasi-degree; empty when that maximum is 0."""
        if self.delta == 0:
            return frozenset()
        return frozenset(v for v, d in enumerate(self.degrees) if d == self.delta)


def quasi_degrees(h: Hypergraph) -> QuasiDegreeProfile:
    """Quasi-degree d(v) = sum of |e|-1 over hyperedges e containing v."""
    degrees = [0] * h.n
    for e in h.hyperedges:
        for v in e:
            degrees[v] += len(e) - 1
    delta = max(degrees, default=0)
    deficiency = tuple(delta - d for d in degrees)
    profile = QuasiDegreeProfile(tuple(degrees), delta, deficiency, h.is_oddly_uniform)
    if profile.oddly_uniform:
        assert all(g % 2 == 0 for g in deficiency), "odd deficiency in an oddly uniform hypergraph"
    return profile


def clique_expansion(h: Hypergraph) -> Multigraph:
    """Replace each hyperedge by a complete graph, each edge labeled with its hyperedge."""
    edges, witnesses = [], []
    for i, e in enumerate(h.hyperedges):
        for u, v in clique_pairs(e):
            edges.append((u, v))
            witnesses.append(i)
    return Multigraph(h.n, tuple(edges), tuple(witnesses))


def _require_oddly_uniform(h):
    for i, e in enumerate(h.hyperedges):
        if len(e) % 2 == 0:
            raise NotOddlyUniform(i, len(e))


def _pairs_from(matching, g):
    return {(u, v, g.witness(u, v)) for u, v in matching.edges}


def _perfect_pairs(g, nodes, what):
    nodes = set(nodes)
    matching = max_matching_general(g, nodes)
    if 2 * len(matching) != len(nodes):
        raise InternalTheoremViolation(f"{what}: no perfect matching on {sorted(nodes)}")
    return _pairs_from(matching, g)


def _spanned_remainder(g, comp, h, candidates):
    # Not every spanned hyperedge leaves a perfectly matchable remainder.
    for e in sorted(candidates):
        try:
            return e, _perfect_pairs(g, comp - h.hyperedges[e], "component minus spanned hyperedge")
        except InternalTheoremViolation:
            logger.debug("spanned hyperedge %d leaves no perfect matching, trying the next", e)
    raise InternalTheoremViolation(
        f"component {sorted(comp)}: no spanned hyperedge among {sorted(candidates)} leaves a perfect matching"
    )


def _singleton_cover(h):
    chosen = {}
    for i, e in enumerate(h.hyperedges):
        if len(e) == 1:
            chosen.setdefault(next(iter(e)), i)
    for v in range(h.n):
        if v not in chosen:
            raise ZeroQuasiDegree(v)
    return ExtendedMatching(frozenset(chosen.values()))


def perfect_extended_matching(h: Hypergraph) -> ExtendedMatching:
    """
    Perfect extended matching of an oddly uniform quasi-regular hypergraph.

    Raises:
        NotOddlyUniform, NotQuasiRegular: on input outside the theorem.
        ZeroQuasiDegree: quasi-degree 0 and some node has no singleton hyperedge.
        InternalTheoremViolation: a guaranteed subroutine failed (a bug).
    """
    _require_oddly_uniform(h)
    profile = quasi_degrees(h)
    for v, d in enumerate(profile.degrees):
        if d != profile.delta:
            raise NotQuasiRegular(v, d, profile.delta)
    if h.n == 0:
        return ExtendedMatching()
    if profile.delta == 0:
        return _singleton_cover(h)

    g = clique_expansion(h)
    matching = max_matching_general(g)
    if 2 * len(matching) == h.n:
        logger.debug("clique expansion has a perfect matching (%d pairs)", len(matching))
        return ExtendedMatching(pairs=frozenset(_pairs_from(matching, g)))

    ge = gallai_edmonds(g)
    comp_of = ge.component_of()

    # A hyperedge is spanned by a D-component iff all its nodes lie in it.
    spanned: dict[int, list[int]] = {}
    for i, e in enumerate(h.hyperedges):
        owners = {comp_of.get(v) for v in e}
        if len(owners) == 1 and None not in owners:
            spanned.setdefault(owners.pop(), []).append(i)
    d1 = set(spanned)
    d2 = [k for k in range(len(ge.d_components)) if k not in d1]
    a_nodes = sorted(ge.a)
    a_index = {v: j for j, v in enumerate(a_nodes)}
    logger.debug(
        "no perfect matching: %d D-components (%d spanning a hyperedge), |A|=%d, |C|=%d",
        len(ge.d_components), len(d1), len(a_nodes), len(ge.c),
    )

    # Contract D-components, drop C and edges inside A: bipartite (D', A).
    representative: dict[tuple[int, int], tuple[int, int]] = {}
    multi_degree = [0] * len(ge.d_components)
    for u, v in g.edges:
        for inner, outer in ((u, v), (v, u)):
            if inner in comp_of and outer in a_index:
                k = comp_of[inner]
                multi_degree[k] += 1
                key = (k, a_index[outer])
                if key not in representative or (inner, outer) < representative[key]:
                    representative[key] = (inner, outer)
    contracted = BipartiteGraph(len(ge.d_components), len(a_nodes), tuple(sorted(representative)))
    for k in d2:
        if multi_degree[k] < profile.delta:
            raise InternalTheoremViolation(
                f"D2-component {sorted(ge.d_components[k])} has degree {multi_degree[k]} < {profile.delta}"
            )

    try:
        m_d2 = saturating_matching(contracted, [s_node(k) for k in d2])
    except NoSaturation as exc:
        raise InternalTheoremViolation(f"D2 not saturable in the contracted graph: {exc}") from exc
    m_a_edges = set()
    mate = ge.matching.mate()
    for v in a_nodes:
        u = mate.get(v)
        if u is None or u not in comp_of:
            raise InternalTheoremViolation(f"A-node {v} not matched into D")
        m_a_edges.add((comp_of[u], a_index[v]))
    m_a = Matching(frozenset(m_a_edges))
    merged = dm_merge(contracted, m_d2, d2, m_a, range(len(a_nodes)))

    pairs: set[tuple[int, int, int]] = set()
    chosen: set[int] = set()
    touched = set()
    for k, j in merged.edges:
        inner, outer = representative[(k, j)]
        pairs.add((min(inner, outer), max(inner, outer), g.witness(inner, outer)))
        touched.add(k)
        pairs |= _perfect_pairs(g, ge.d_components[k] - {inner}, "factor-critical component")
    uncovered_a = set(range(len(a_nodes))) - merged.covered_t
    if uncovered_a:
        raise InternalTheoremViolation(f"A-nodes {[a_nodes[j] for j in sorted(uncovered_a)]} left uncovered")

    c_pairs = {(u, v) for u, v in ge.matching.edges if u in ge.c and v in ge.c}
    if 2 * len(c_pairs) != len(ge.c):
        raise InternalTheoremViolation("maximum matching is not perfect on C")
    pairs |= {(u, v, g.witness(u, v)) for u, v in c_pairs}

    for k, comp in enumerate(ge.d_components):
        if k in touched:
            continue
        if k not in d1:
            raise InternalTheoremViolation(f"D2-component {sorted(comp)} left untouched")
        e, rest = _spanned_remainder(g, comp, h, spanned[k])
        chosen.add(e)
        pairs |= rest

    return ExtendedMatching(frozenset(chosen), frozenset(pairs))


@dataclass(frozen=True)
class PaddingEmbedding:
    """Id bookkeeping for three disjoint copies plus padding triples."""

    n: int
    m: int
    triples: tuple[int, ...] = field(default=())

    def node(self, copy: int, v: int) -> int:
        return copy * self.n + v

    def node_origin(self, node: int) -> tuple[int, int]:
        return divmod(node, self.n)

    def hyperedge_origin(self, hyperedge: int) -> Optional[tuple[int, int]]:
        """(copy, original id) of a copied hyperedge; None for a padding triple."""
        if hyperedge >= 3 * self.m:
            return None
        return divmod(hyperedge, self.m)


def pad_to_quasi_regular(h: Hypergraph) -> tuple[Hypergraph, PaddingEmbedding]:
    """
    Three disjoint copies of h plus, for every deficient node v, deficiency/2
    copies of the triple {v1, v2, v3}. The result is Delta-quasi-regular for
    the maximum quasi-degree Delta of h.
    """
    _require_oddly_uniform(h)
    profile = quasi_degrees(h)
    hyperedges = [frozenset(c * h.n + v for v in e) for c in range(3) for e in h.hyperedges]
    triple_owners = []
    for v, gamma in enumerate(profile.deficiency):
        for _ in range(gamma // 2):
            hyperedges.append(frozenset((v, h.n + v, 2 * h.n + v)))
            triple_owners.append(v)
    padded = Hypergraph(3 * h.n, tuple(hyperedges))
    embedding = PaddingEmbedding(h.n, h.m, tuple(triple_owners))

    padded_profile = quasi_degrees(padded)
    if not (padded_profile.is_quasi_regular and padded_profile.delta == profile.delta):
        raise InternalTheoremViolation("padding did not reach quasi-regularity")
    logger.debug("padded %d nodes with %d triples to %d-quasi-regular", h.n, len(triple_owners), profile.delta)
    return padded, embedding


def extended_matching_covering_max_quasidegree(h: Hypergraph) -> ExtendedMatching:
    """Extended matching of an oddly uniform hypergraph covering every node of maximum quasi-degree."""
    _require_oddly_uniform(h)
    profile = quasi_degrees(h)
    target = profile.maximal_nodes
    if not target:
        return ExtendedMatching()

    padded, embedding = pad_to_quasi_regular(h)
    full = perfect_extended_matching(padded)

    hyperedges = set()
    for e in full.hyperedges:
        origin = embedding.hyperedge_origin(e)
        if origin is not None and origin[0] == 0:
            hyperedges.add(origin[1])
    pairs = set()
    for u, v, w in full.pairs:
        origin = embedding.hyperedge_origin(w)
        if origin is not None and origin[0] == 0:
            pairs.add((u, v, origin[1]))
    result = ExtendedMatching(frozenset(hyperedges), frozenset(pairs))

    missed = target - result.covered(h)
    if missed:
        raise InternalTheoremViolation(f"restriction misses maximum quasi-degree nodes {sorted(missed)}")
    return result


def verify_extended_matching(h: Hypergraph, em: ExtendedMatching, required: Iterable[int]) -> VerificationReport:
    """Check disjointness, witness validity and coverage of `required`."""
    report = VerificationReport()
    owner: dict[int, str] = {}

    def claim(v, element):
        if v in owner:
            report.add("node reused", v, f"{owner[v]} and {element}")
        else:
            owner[v] = element

    for e in sorted(em.hyperedges):
        if not 0 <= e < h.m:
            report.add("unknown hyperedge", f"hyperedge {e}")
            continue
        for v in sorted(h.hyperedges[e]):
            claim(v, f"hyperedge {e}")
    for u, v, w in sorted(em.pairs):
        element = f"pair {u} {v} via {w}"
        if u == v:
            report.add("degenerate pair", element)
        if not (0 <= u < h.n and 0 <= v < h.n):
            report.add("node out of range", element)
            continue
        if not 0 <= w < h.m:
            report.add("unknown witness", element)
        elif u not in h.hyperedges[w] or v not in h.hyperedges[w]:
            report.add("witness does not contain pair", element)
        claim(u, element)
        if v != u:
            claim(v, element)

    for v in sorted(set(required)):
        if v not in owner:
            report.add("uncovered", v)
    report.notes["covered"] = len(owner)
    return report
