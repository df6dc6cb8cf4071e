#!/usr/bin/env python3
"""
Core graph and hypergraph data model.

Bipartite graphs G=(S,T;E), multigraphs (clique expansions), hypergraphs,
matchings and 2-matchings, plus the Levi-graph conversions between a
bipartite graph and a hypergraph. Node ids are dense 0-based integers; in
bipartite contexts a node is identified by its side and index.

All types are immutable after construction.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import InitVar, dataclass, field
from enum import Enum
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple, Optional

import networkx as nx

from errors import GraphError


class Side(str, Enum):
    S = "S"
    T = "T"

    @property
    def other(self) -> "Side":
        return Side.T if self is Side.S else Side.S


class NodeId(NamedTuple):
    side: Side
    index: int

    def __str__(self):
        return f"{self.side.value.lower()}{self.index}"


def s_node(index: int) -> NodeId:
    return NodeId(Side.S, index)


def t_node(index: int) -> NodeId:
    return NodeId(Side.T, index)


# ---------------------------------------------------------------------------
# Graph types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BipartiteGraph:
    """Simple bipartite graph; an edge is an (s, t) index pair."""

    s_count: int
    t_count: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.s_count < 0 or self.t_count < 0:
            raise GraphError("side sizes must be non-negative")
        normalized = tuple(sorted((int(s), int(t)) for s, t in self.edges))
        for s, t in normalized:
            if not (0 <= s < self.s_count and 0 <= t < self.t_count):
                raise GraphError(f"edge ({s}, {t}) out of range")
        duplicates = [e for e, c in Counter(normalized).items() if c > 1]
        if duplicates:
            raise GraphError(f"duplicate edge {duplicates[0]}")
        object.__setattr__(self, "edges", normalized)

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    @cached_property
    def _adjacency(self):
        s_adj = [[] for _ in range(self.s_count)]
        t_adj = [[] for _ in range(self.t_count)]
        for s, t in self.edges:
            s_adj[s].append(t)
            t_adj[t].append(s)
        return tuple(tuple(a) for a in s_adj), tuple(tuple(sorted(a)) for a in t_adj)

    def s_neighbors(self, s: int) -> tuple[int, ...]:
        return self._adjacency[0][s]

    def t_neighbors(self, t: int) -> tuple[int, ...]:
        return self._adjacency[1][t]

    def neighbors(self, node: NodeId) -> tuple[NodeId, ...]:
        if node.side is Side.S:
            return tuple(t_node(t) for t in self.s_neighbors(node.index))
        return tuple(s_node(s) for s in self.t_neighbors(node.index))

    def s_degree(self, s: int) -> int:
        return len(self.s_neighbors(s))

    def t_degree(self, t: int) -> int:
        return len(self.t_neighbors(t))

    def degree(self, node: NodeId) -> int:
        return self.s_degree(node.index) if node.side is Side.S else self.t_degree(node.index)

    @property
    def max_degree(self) -> int:
        degrees = [self.s_degree(s) for s in range(self.s_count)]
        degrees += [self.t_degree(t) for t in range(self.t_count)]
        return max(degrees, default=0)

    def nodes(self) -> list[NodeId]:
        return [s_node(s) for s in range(self.s_count)] + [t_node(t) for t in range(self.t_count)]

    def has_edge(self, s: int, t: int) -> bool:
        return (s, t) in self.edge_set

    def with_edges(self, edges: Iterable[tuple[int, int]]) -> "BipartiteGraph":
        """Same node sets, different edge set."""
        return BipartiteGraph(self.s_count, self.t_count, tuple(edges))

    def restrict_t(self, keep: Iterable[int]) -> tuple["BipartiteGraph", list[int]]:
        """Subgraph on all of S and the listed T-nodes, re-indexed in order.

        Returns the subgraph and the map from new T index to old T index.
        """
        t_map = sorted(set(keep))
        new_index = {t: i for i, t in enumerate(t_map)}
        edges = [(s, new_index[t]) for s, t in self.edges if t in new_index]
        return BipartiteGraph(self.s_count, len(t_map), tuple(edges)), t_map

    def to_multigraph(self) -> "Multigraph":
        """Plain graph view: S node s keeps id s, T node t becomes s_count + t."""
        return Multigraph(self.s_count + self.t_count, tuple((s, self.s_count + t) for s, t in self.edges))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.nodes())
        g.add_edges_from((s_node(s), t_node(t)) for s, t in self.edges)
        return g


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph on nodes 0..n-1; each entry of `edges` is one edge.

    `witnesses[i]`, when not None, names a hyperedge containing both
    endpoints of edge i.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()
    witnesses: Optional[tuple[Optional[int], ...]] = None

    def __post_init__(self):
        normalized = []
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"self-loop at node {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) out of range")
            normalized.append((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(normalized))
        witnesses = self.witnesses if self.witnesses is not None else (None,) * len(normalized)
        if len(witnesses) != len(normalized):
            raise GraphError("one witness label per edge required")
        object.__setattr__(self, "witnesses", tuple(witnesses))

    @cached_property
    def support(self) -> dict[tuple[int, int], Optional[int]]:
        """Deduplicated edge set; each pair keeps its lowest witness label."""
        result: dict[tuple[int, int], Optional[int]] = {}
        for pair, witness in zip(self.edges, self.witnesses):
            if pair not in result:
                result[pair] = witness
            elif witness is not None and (result[pair] is None or witness < result[pair]):
                result[pair] = witness
        return dict(sorted(result.items()))

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj = [[] for _ in range(self.n)]
        for u, v in self.support:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def _multiplicity(self):
        return Counter(self.edges)

    def multiplicity(self, u: int, v: int) -> int:
        return self._multiplicity[(min(u, v), max(u, v))]

    def degree(self, v: int) -> int:
        """Degree counting parallel edges."""
        return sum(self.multiplicity(v, u) for u in self.adjacency[v])

    def witness(self, u: int, v: int) -> Optional[int]:
        return self.support.get((min(u, v), max(u, v)))

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.support

    def without_node(self, v: int) -> "Multigraph":
        """Same node ids, all edges at v removed."""
        kept = [(e, w) for e, w in zip(self.edges, self.witnesses) if v not in e]
        return Multigraph(self.n, tuple(e for e, _ in kept), tuple(w for _, w in kept))

    def to_networkx(self, nodes: Optional[Iterable[int]] = None) -> nx.Graph:
        g = nx.Graph()
        keep = set(range(self.n)) if nodes is None else set(nodes)
        g.add_nodes_from(sorted(keep))
        g.add_edges_from((u, v) for u, v in self.support if u in keep and v in keep)
        return g


@dataclass(frozen=True)
class Hypergraph:
    """Hypergraph on nodes 0..n-1; hyperedge i has stable id i. Duplicates allowed."""

    n: int
    hyperedges: tuple[frozenset[int], ...] = ()

    def __post_init__(self):
        converted = []
        for i, members in enumerate(self.hyperedges):
            members = [int(v) for v in members]
            if len(set(members)) != len(members):
                raise GraphError(f"hyperedge {i} repeats a node")
            for v in members:
                if not 0 <= v < self.n:
                    raise GraphError(f"hyperedge {i} has node {v} out of range")
            converted.append(frozenset(members))
        object.__setattr__(self, "hyperedges", tuple(converted))

    @property
    def m(self) -> int:
        return len(self.hyperedges)

    @property
    def is_oddly_uniform(self) -> bool:
        return all(len(e) % 2 == 1 for e in self.hyperedges)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        inc = [[] for _ in range(self.n)]
        for i, e in enumerate(self.hyperedges):
            for v in e:
                inc[v].append(i)
        return tuple(tuple(a) for a in inc)

    def degree(self, v: int) -> int:
        return len(self.incidence[v])


# ---------------------------------------------------------------------------
# Edge subsets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Matching:
    """Edge subset with every degree at most 1.

    Bipartite matchings hold (s, t) pairs; general ones hold (u, v) with u < v.
    Pass validate=False to hold an unchecked certificate for verification.
    """

    edges: frozenset[tuple[int, int]] = frozenset()
    bipartite: bool = True
    validate: InitVar[bool] = True

    def __post_init__(self, validate):
        if self.bipartite:
            edges = frozenset((int(s), int(t)) for s, t in self.edges)
        else:
            edges = frozenset((min(u, v), max(u, v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        if validate and self.conflicts():
            raise GraphError(f"not a matching: node {self.conflicts()[0]} has degree > 1")

    def conflicts(self) -> list:
        """Nodes of degree > 1, sorted."""
        if self.bipartite:
            counts = Counter(s_node(s) for s, _ in self.edges) + Counter(t_node(t) for _, t in self.edges)
        else:
            counts = Counter(v for e in self.edges for v in e)
        return sorted(v for v, c in counts.items() if c > 1)

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(sorted(self.edges))

    @property
    def covered_s(self) -> frozenset[int]:
        return frozenset(s for s, _ in self.edges)

    @property
    def covered_t(self) -> frozenset[int]:
        return frozenset(t for _, t in self.edges)

    @property
    def covered(self) -> frozenset[int]:
        """Covered nodes of a general matching."""
        return frozenset(v for e in self.edges for v in e)

    def mate(self) -> dict:
        result = {}
        for u, v in self.edges:
            if self.bipartite:
                result[s_node(u)] = t_node(v)
                result[t_node(v)] = s_node(u)
            else:
                result[u] = v
                result[v] = u
        return result


class ComponentKind(str, Enum):
    PATH = "path"
    CYCLE = "cycle"
    OTHER = "other"


@dataclass(frozen=True)
class Component:
    kind: ComponentKind
    nodes: tuple
    edges: tuple

    @property
    def is_v_path(self) -> bool:
        """A 2-edge path t-s-t with both ends in T."""
        return (
            self.kind is ComponentKind.PATH
            and len(self.edges) == 2
            and isinstance(self.nodes[0], NodeId)
            and self.nodes[0].side is Side.T
            and self.nodes[-1].side is Side.T
        )

    def __str__(self):
        return "-".join(str(v) for v in self.nodes)


def _walk(graph, start):
    order = [start]
    seen = {start}
    current = start
    while True:
        nxt = sorted(u for u in graph.neighbors(current) if u not in seen)
        if not nxt:
            return order
        current = nxt[0]
        order.append(current)
        seen.add(current)


def _decompose(pairs):
    graph = nx.Graph()
    graph.add_edges_from(pairs)
    result = []
    for nodes in sorted(nx.connected_components(graph), key=min):
        sub = graph.subgraph(nodes)
        degrees = dict(sub.degree())
        edges = sub.number_of_edges()
        if max(degrees.values()) <= 2 and edges == len(nodes) - 1:
            start = min(v for v, d in degrees.items() if d <= 1)
            order = _walk(sub, start)
            kind = ComponentKind.PATH
            walk_edges = tuple(zip(order, order[1:]))
        elif max(degrees.values()) <= 2 and edges == len(nodes):
            order = _walk(sub, min(nodes))
            kind = ComponentKind.CYCLE
            walk_edges = tuple(zip(order, order[1:] + order[:1]))
        else:
            order = sorted(nodes)
            kind = ComponentKind.OTHER
            walk_edges = tuple(sorted(tuple(sorted(e)) for e in sub.edges()))
        result.append(Component(kind, tuple(order), walk_edges))
    return result


def components(edges: Iterable[tuple[int, int]], host: "BipartiteGraph | Multigraph") -> list[Component]:
    """Connected components of an edge subset, each labeled path, cycle or other.

    Paths are listed from their lower endpoint, cycles from their lowest node.
    For a bipartite host the nodes are NodeIds; otherwise plain ints.
    """
    edges = list(edges)
    missing = [e for e in edges if not host.has_edge(*e)]
    if missing:
        raise GraphError(f"edge {missing[0]} is not in the host graph")
    if isinstance(host, BipartiteGraph):
        return _decompose([(s_node(s), t_node(t)) for s, t in edges])
    return _decompose([(min(u, v), max(u, v)) for u, v in edges])


@dataclass(frozen=True)
class TwoMatching:
    """Bipartite edge subset with every degree at most 2 (paths and cycles)."""

    edges: frozenset[tuple[int, int]] = frozenset()
    validate: InitVar[bool] = True

    def __post_init__(self, validate):
        edges = frozenset((int(s), int(t)) for s, t in self.edges)
        object.__setattr__(self, "edges", edges)
        if validate:
            over = self.overloaded()
            if over:
                raise GraphError(f"not a 2-matching: node {over[0]} has degree > 2")

    def overloaded(self) -> list[NodeId]:
        counts = Counter(s_node(s) for s, _ in self.edges) + Counter(t_node(t) for _, t in self.edges)
        return sorted(v for v, c in counts.items() if c > 2)

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(sorted(self.edges))

    def components(self) -> list[Component]:
        return _decompose([(s_node(s), t_node(t)) for s, t in sorted(self.edges)])

    def v_paths(self) -> list[Component]:
        return [c for c in self.components() if c.is_v_path]

    @property
    def is_v_free(self) -> bool:
        return not self.v_paths()

    @property
    def covered_t(self) -> frozenset[int]:
        return frozenset(t for _, t in self.edges)

    @property
    def covered_s(self) -> frozenset[int]:
        return frozenset(s for s, _ in self.edges)


class SLink(NamedTuple):
    """Path u - center - w with u, w in S and center in T."""

    u: int
    center: int
    w: int

    @property
    def edges(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.u, self.center), (self.w, self.center)

    def normalized(self) -> "SLink":
        return SLink(min(self.u, self.w), self.center, max(self.u, self.w))


@dataclass(frozen=True)
class SLinkFamily:
    links: tuple[SLink, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "links", tuple(sorted(SLink(*link).normalized() for link in self.links)))

    def __len__(self):
        return len(self.links)

    def __iter__(self):
        return iter(self.links)

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(e for link in self.links for e in link.edges)

    def shared_nodes(self) -> list[NodeId]:
        """Nodes used by more than one link."""
        counts = Counter()
        for link in self.links:
            counts.update({s_node(link.u), s_node(link.w), t_node(link.center)})
        return sorted(v for v, c in counts.items() if c > 1)


# ---------------------------------------------------------------------------
# Verification reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str
    element: str
    detail: str = ""

    def __str__(self):
        return f"{self.kind}: {self.element}" + (f" ({self.detail})" if self.detail else "")


@dataclass
class VerificationReport:
    violations: list[Violation] = field(default_factory=list)
    notes: dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind: str, element, detail: str = ""):
        self.violations.append(Violation(kind, str(element), detail))

    def lines(self) -> list[str]:
        if self.ok:
            return ["OK"]
        return [str(v) for v in self.violations]


# ---------------------------------------------------------------------------
# Levi-graph conversions
# ---------------------------------------------------------------------------


def hypergraph_from_bipartite(g: BipartiteGraph, anchor_side: Side = Side.S) -> Hypergraph:
    """Anchor-side nodes become hypergraph nodes; the other side becomes hyperedges.

    Ids are kept: anchor node i is hypergraph node i, and the j-th node of the
    other side is hyperedge j.
    """
    if anchor_side is Side.S:
        return Hypergraph(g.s_count, tuple(frozenset(g.t_neighbors(t)) for t in range(g.t_count)))
    return Hypergraph(g.t_count, tuple(frozenset(g.s_neighbors(s)) for s in range(g.s_count)))


def bipartite_from_hypergraph(h: Hypergraph) -> BipartiteGraph:
    """Levi graph: S = nodes of h, T = hyperedges, s ~ t iff s is in hyperedge t."""
    return BipartiteGraph(h.n, h.m, tuple((v, i) for i, e in enumerate(h.hyperedges) for v in e))


def clique_pairs(members: Iterable[int]) -> list[tuple[int, int]]:
    return list(combinations(sorted(members), 2))
