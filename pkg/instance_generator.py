#!/usr/bin/env python3
"""
Seeded random instance families.

Every generator draws from numpy's PCG64 bit generator, so a seed and a set
of parameters fix the instance on any platform.

- liang: bipartite graphs with S-degrees <= 4 and T-degrees <= 3
- hypergraph: unions of k-uniform r-regular layers with k odd
  (oddly uniform, quasi-regular with Delta = sum of (k-1)*r), or bounded-degree
  k-uniform hypergraphs
- 3dm: tripartite 3-regular 3-uniform instances with a planted perfect matching,
  optionally perturbed by z-swaps
"""

from __future__ import annotations

import logging
from typing import Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, Field, ValidationError, model_validator

from errors import InfeasibleParams
from formats import format_3dm, format_bipartite, format_hypergraph
from graph_core import BipartiteGraph, Hypergraph
from reduction_3dm import ThreeDMInstance

logger = logging.getLogger("instance_generator")

Kind = Literal["liang", "hypergraph", "3dm"]


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


class LiangParams(BaseModel):
    s_count: int = Field(default=10, ge=1)
    t_count: int = Field(default=10, ge=0)
    p3: float = Field(default=0.7, ge=0.0, le=1.0)  # share of T-nodes drawn with degree 3
    s_cap: int = Field(default=4, ge=1, le=4)


class HypergraphParams(BaseModel):
    n: int = Field(default=12, ge=1)
    mode: Literal["regular", "bounded"] = "regular"
    # regular mode: (k, r) layers
    layers: list[tuple[int, int]] = Field(default_factory=lambda: [(3, 4)])
    # bounded mode
    m: int = Field(default=8, ge=0)
    k: int = Field(default=3, ge=1)
    max_degree: int = Field(default=4, ge=1)

    @model_validator(mode="after")
    def _check_layers(self):
        if self.mode == "regular":
            for k, r in self.layers:
                if k < 1 or k % 2 == 0:
                    raise ValueError(f"layer size {k} is not odd")
                if r < 1:
                    raise ValueError(f"layer degree {r} is not positive")
                if k > self.n:
                    raise ValueError(f"layer size {k} exceeds n={self.n}")
                if (self.n * r) % k:
                    raise ValueError(f"{k}-uniform {r}-regular layer needs k | n*r (n={self.n})")
        elif self.k > self.n:
            raise ValueError(f"hyperedge size {self.k} exceeds n={self.n}")
        return self

    @property
    def delta(self) -> int:
        return sum((k - 1) * r for k, r in self.layers)


class ThreeDMParams(BaseModel):
    n: int = Field(default=2, ge=1)
    swaps: int = Field(default=0, ge=0)


Params = Union[LiangParams, HypergraphParams, ThreeDMParams]
_MODELS = {"liang": LiangParams, "hypergraph": HypergraphParams, "3dm": ThreeDMParams}


def parse_params(kind: Kind, values: Optional[dict] = None) -> Params:
    """Validated parameter model for a family; bad values raise InfeasibleParams."""
    if kind not in _MODELS:
        raise InfeasibleParams(f"unknown instance kind {kind!r}")
    try:
        return _MODELS[kind](**(values or {}))
    except ValidationError as exc:
        first = exc.errors()[0]
        raise InfeasibleParams(f"{kind}: {first['msg']}") from exc


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------


def random_liang_graph(params: LiangParams, rng: np.random.Generator) -> BipartiteGraph:
    load = np.zeros(params.s_count, dtype=int)
    edges = []
    for t in range(params.t_count):
        degree = 3 if rng.random() < params.p3 else int(rng.integers(0, 3))
        open_s = np.flatnonzero(load < params.s_cap)
        k = min(degree, len(open_s))
        if k == 0:
            continue
        for s in sorted(int(s) for s in rng.choice(open_s, size=k, replace=False)):
            edges.append((s, t))
            load[s] += 1
    return BipartiteGraph(params.s_count, params.t_count, tuple(edges))


def _repair(groups, rng, rounds):
    """Swap stubs until no group repeats a node."""
    k = groups.shape[1]
    for _ in range(rounds):
        bad = [i for i, row in enumerate(groups) if len(set(row.tolist())) < k]
        if not bad:
            return True
        i = bad[0]
        row = groups[i]
        values, counts = np.unique(row, return_counts=True)
        dup = values[counts > 1][0]
        a = int(np.flatnonzero(row == dup)[0])
        j = int(rng.integers(len(groups)))
        b = int(rng.integers(k))
        incoming = groups[j, b]
        if j == i or incoming in row or dup in groups[j]:
            continue
        groups[i, a], groups[j, b] = incoming, dup
    return False


def regular_layer(n: int, k: int, r: int, rng: np.random.Generator, attempts: int = 50) -> list[frozenset[int]]:
    """k-uniform r-regular hyperedges on 0..n-1 by the configuration model."""
    if k > n or (n * r) % k:
        raise InfeasibleParams(f"no {k}-uniform {r}-regular hypergraph on {n} nodes")
    if k == 1:
        return [frozenset((v,)) for _ in range(r) for v in range(n)]
    for attempt in range(attempts):
        stubs = rng.permutation(np.repeat(np.arange(n), r))
        groups = stubs.reshape(-1, k)
        if _repair(groups, rng, rounds=100 * len(groups)):
            if attempt:
                logger.debug("configuration model needed %d reshuffles", attempt)
            return [frozenset(int(v) for v in row) for row in groups]
    raise InfeasibleParams(f"could not draw a simple {k}-uniform {r}-regular layer on {n} nodes")


def random_quasi_regular_hypergraph(params: HypergraphParams, rng: np.random.Generator) -> Hypergraph:
    hyperedges = []
    for k, r in params.layers:
        hyperedges += regular_layer(params.n, k, r, rng)
    return Hypergraph(params.n, tuple(hyperedges))


def random_bounded_hypergraph(params: HypergraphParams, rng: np.random.Generator) -> Hypergraph:
    """Up to m k-uniform hyperedges with every degree at most max_degree."""
    degree = np.zeros(params.n, dtype=int)
    hyperedges = []
    for _ in range(params.m):
        open_nodes = np.flatnonzero(degree < params.max_degree)
        if len(open_nodes) < params.k:
            break
        members = rng.choice(open_nodes, size=params.k, replace=False)
        degree[members] += 1
        hyperedges.append(frozenset(int(v) for v in members))
    return Hypergraph(params.n, tuple(hyperedges))


def random_hypergraph(params: HypergraphParams, rng: np.random.Generator) -> Hypergraph:
    if params.mode == "regular":
        return random_quasi_regular_hypergraph(params, rng)
    return random_bounded_hypergraph(params, rng)


def random_3dm(params: ThreeDMParams, rng: np.random.Generator) -> ThreeDMInstance:
    """Union of three random perfect matchings, so a perfect matching always exists."""
    n = params.n
    triples = []
    for _ in range(3):
        ys, zs = rng.permutation(n), rng.permutation(n)
        triples += [(x, int(ys[x]), int(zs[x])) for x in range(n)]
    h = ThreeDMInstance(n, n, n, tuple(triples))
    return perturb_3dm(h, params.swaps, rng) if params.swaps else h


def perturb_3dm(h: ThreeDMInstance, swaps: int, rng: Union[np.random.Generator, int]) -> ThreeDMInstance:
    """Exchange the z-coordinates of random triple pairs; 3-regularity is kept."""
    if not isinstance(rng, np.random.Generator):
        rng = make_rng(rng)
    triples = [list(triple) for triple in h.triples]
    for _ in range(swaps):
        i, j = (int(v) for v in rng.choice(len(triples), size=2, replace=False))
        triples[i][2], triples[j][2] = triples[j][2], triples[i][2]
    return ThreeDMInstance(h.n, h.n, h.n, tuple(tuple(triple) for triple in triples))


def generate(kind: Kind, params: Params, seed: int):
    rng = make_rng(seed)
    if kind == "liang":
        return random_liang_graph(params, rng)
    if kind == "hypergraph":
        return random_hypergraph(params, rng)
    return random_3dm(params, rng)


def gen_random(kind: Kind, params: Union[Params, dict, None], seed: int) -> str:
    """Instance text for a family, fully determined by (kind, params, seed)."""
    if not isinstance(params, BaseModel):
        params = parse_params(kind, params)
    instance = generate(kind, params, seed)
    logger.debug("generated %s instance with seed %d", kind, seed)
    if kind == "liang":
        return format_bipartite(instance)
    if kind == "hypergraph":
        return format_hypergraph(instance)
    return format_3dm(instance)
