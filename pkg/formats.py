#!/usr/bin/env python3
"""
Line-based text formats (UTF-8, 0-based ids, `#` starts a comment).

    bipartite     b <|S|> <|T|> <|E|>      then |E| lines `s t`
    hypergraph    h <n> <m>                then m lines `k v1 ... vk`
    3dm           3dm <n> <m>              then m lines `x y z`
    certificate   edge s t | hyperedge <id> | pair u v via <id> | link u c w
    required set  whitespace-separated node ids
    gadget map    <token> <role> [<owner>], token s<i>, t<j> or e<k>

Writers emit sorted, deterministic text so equal inputs give equal bytes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from errors import GraphError, ParseError
from extended_matching import ExtendedMatching
from graph_core import BipartiteGraph, Hypergraph, Matching, SLink, SLinkFamily, Side, TwoMatching
from reduction_3dm import GadgetMap, ThreeDMInstance

logger = logging.getLogger("formats")


def read_text(path: Path) -> str:
    return Path(path).read_text(encoding="utf-8")


def write_text(path: Path, text: str):
    Path(path).write_text(text, encoding="utf-8")
    logger.debug("wrote %s (%d bytes)", path, len(text.encode("utf-8")))


def _records(text):
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            yield number, tokens


def _ints(number, tokens):
    try:
        values = [int(tok) for tok in tokens]
    except ValueError as exc:
        raise ParseError(number, f"expected integers, got {' '.join(tokens)!r}") from exc
    if any(v < 0 for v in values):
        raise ParseError(number, "ids must be non-negative")
    return values


def _header(records, keyword, arity):
    if not records:
        raise ParseError(1, f"missing '{keyword}' header")
    number, tokens = records[0]
    if tokens[0] != keyword or len(tokens) != arity + 1:
        raise ParseError(number, f"expected header '{keyword}' with {arity} counts")
    return number, _ints(number, tokens[1:])


def _body(records, expected, what, last_line):
    body = records[1:]
    if len(body) != expected:
        where = body[expected][0] if len(body) > expected else last_line
        raise ParseError(where, f"expected {expected} {what} lines, found {len(body)}")
    return body


# ---------------------------------------------------------------------------
# Instances
# ---------------------------------------------------------------------------


def parse_bipartite(text: str) -> BipartiteGraph:
    records = list(_records(text))
    number, (s_count, t_count, e_count) = _header(records, "b", 3)
    edges, seen = [], set()
    last = records[-1][0]
    for number, tokens in _body(records, e_count, "edge", last):
        if len(tokens) != 2:
            raise ParseError(number, "edge line needs 's t'")
        s, t = _ints(number, tokens)
        if s >= s_count or t >= t_count:
            raise ParseError(number, f"edge ({s}, {t}) out of range")
        if (s, t) in seen:
            raise ParseError(number, f"duplicate edge ({s}, {t})")
        seen.add((s, t))
        edges.append((s, t))
    return BipartiteGraph(s_count, t_count, tuple(edges))


def format_bipartite(g: BipartiteGraph) -> str:
    lines = [f"b {g.s_count} {g.t_count} {len(g.edges)}"]
    lines += [f"{s} {t}" for s, t in g.edges]
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str) -> Hypergraph:
    records = list(_records(text))
    number, (n, m) = _header(records, "h", 2)
    hyperedges = []
    last = records[-1][0]
    for number, tokens in _body(records, m, "hyperedge", last):
        values = _ints(number, tokens)
        k, members = values[0], values[1:]
        if k != len(members):
            raise ParseError(number, f"hyperedge announces {k} nodes, lists {len(members)}")
        if any(v >= n for v in members):
            raise ParseError(number, "node id out of range")
        if len(set(members)) != len(members):
            raise ParseError(number, "hyperedge repeats a node")
        hyperedges.append(frozenset(members))
    return Hypergraph(n, tuple(hyperedges))


def format_hypergraph(h: Hypergraph) -> str:
    lines = [f"h {h.n} {h.m}"]
    for e in h.hyperedges:
        members = sorted(e)
        lines.append(" ".join(str(v) for v in [len(members), *members]))
    return "\n".join(lines) + "\n"


def parse_3dm(text: str) -> ThreeDMInstance:
    records = list(_records(text))
    number, (n, m) = _header(records, "3dm", 2)
    triples = []
    last = records[-1][0]
    for number, tokens in _body(records, m, "triple", last):
        if len(tokens) != 3:
            raise ParseError(number, "triple line needs 'x y z'")
        triples.append(tuple(_ints(number, tokens)))
    return ThreeDMInstance(n, n, n, tuple(triples))


def format_3dm(h: ThreeDMInstance) -> str:
    lines = [f"3dm {h.n} {h.m}"]
    lines += [f"{x} {y} {z}" for x, y, z in h.triples]
    return "\n".join(lines) + "\n"


def parse_required(text: str) -> frozenset[int]:
    values = set()
    for number, tokens in _records(text):
        values.update(_ints(number, tokens))
    return frozenset(values)


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


@dataclass
class Certificate:
    """Raw certificate content; nothing is validated beyond syntax."""

    edges: list[tuple[int, int]] = field(default_factory=list)
    hyperedges: list[int] = field(default_factory=list)
    pairs: list[tuple[int, int, int]] = field(default_factory=list)
    links: list[SLink] = field(default_factory=list)

    @property
    def kind(self) -> Optional[str]:
        """Best guess of what was certified: liang, vfree or extmatch.

        Bare edges read as a 2-matching once some node has two of them,
        otherwise as the matching half of a link cover.
        """
        if self.hyperedges or self.pairs:
            return "extmatch"
        if self.links or not self.edges:
            return "liang"
        if self.matching().conflicts():
            return "vfree"
        return "liang"

    def matching(self) -> Matching:
        return Matching(frozenset(self.edges), validate=False)

    def links_family(self) -> SLinkFamily:
        return SLinkFamily(tuple(self.links))

    def two_matching(self) -> TwoMatching:
        return TwoMatching(frozenset(self.edges), validate=False)

    def extended_matching(self) -> ExtendedMatching:
        return ExtendedMatching(frozenset(self.hyperedges), frozenset(self.pairs))


def parse_certificate(text: str) -> Certificate:
    cert = Certificate()
    for number, tokens in _records(text):
        keyword, args = tokens[0], tokens[1:]
        if keyword == "edge" and len(args) == 2:
            cert.edges.append(tuple(_ints(number, args)))
        elif keyword == "hyperedge" and len(args) == 1:
            cert.hyperedges.append(_ints(number, args)[0])
        elif keyword == "pair" and len(args) == 4 and args[2] == "via":
            u, v, w = _ints(number, [args[0], args[1], args[3]])
            cert.pairs.append((u, v, w))
        elif keyword == "link" and len(args) == 3:
            cert.links.append(SLink(*_ints(number, args)))
        else:
            raise ParseError(number, f"unrecognized certificate line {' '.join(tokens)!r}")
    return cert


def format_certificate(
    edges: Iterable[tuple[int, int]] = (),
    em: Optional[ExtendedMatching] = None,
    links: Iterable[SLink] = (),
    comments: Iterable[str] = (),
) -> str:
    lines = [f"# {c}" for c in comments]
    lines += [f"edge {s} {t}" for s, t in sorted(set(edges))]
    if em is not None:
        lines += [f"hyperedge {e}" for e in sorted(em.hyperedges)]
        lines += [f"pair {u} {v} via {w}" for u, v, w in sorted(em.pairs)]
    lines += [f"link {link.u} {link.center} {link.w}" for link in sorted(SLink(*x).normalized() for x in links)]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Gadget sidecar
# ---------------------------------------------------------------------------


def format_gadget_map(g: BipartiteGraph, gm: GadgetMap) -> str:
    """One line per node, then one per edge in the order of the bipartite file."""
    if len(gm.edge_roles) != len(g.edges):
        raise GraphError("gadget map does not describe this graph")
    lines = []
    for node in sorted(gm.node_roles, key=lambda v: (v.side is Side.T, v.index)):
        role, owner = gm.node_roles[node]
        lines.append(f"{node} {role} {owner}")
    for k, edge in enumerate(g.edges):
        role, owner = gm.edge_roles[edge]
        lines.append(f"e{k} {role} {owner}")
    return "\n".join(lines) + "\n"


def parse_gadget_roles(text: str) -> dict[str, tuple[str, Optional[int]]]:
    """Token -> (role, owner) from a sidecar file."""
    roles = {}
    for number, tokens in _records(text):
        if len(tokens) not in (2, 3):
            raise ParseError(number, "sidecar line needs '<token> <role> [<owner>]'")
        owner = _ints(number, tokens[2:])[0] if len(tokens) == 3 else None
        roles[tokens[0]] = (tokens[1], owner)
    return roles
