import pytest

from errors import InfeasibleParams
from extended_matching import quasi_degrees
from formats import parse_3dm, parse_bipartite, parse_hypergraph
from instance_generator import (
    HypergraphParams,
    ThreeDMParams,
    gen_random,
    make_rng,
    parse_params,
    perturb_3dm,
    random_3dm,
    regular_layer,
)


class TestFamilies:
    def test_liang_degree_bounds(self):
        g = parse_bipartite(gen_random("liang", {"s_count": 10, "t_count": 10}, seed=7))
        assert (g.s_count, g.t_count) == (10, 10)
        assert all(g.s_degree(s) <= 4 for s in range(10))
        assert all(g.t_degree(t) <= 3 for t in range(10))

    def test_s_cap(self):
        g = parse_bipartite(gen_random("liang", {"s_count": 5, "t_count": 20, "s_cap": 2, "p3": 1.0}, seed=3))
        assert max(g.s_degree(s) for s in range(5)) <= 2

    def test_three_uniform_four_regular(self):
        h = parse_hypergraph(gen_random("hypergraph", {"n": 12, "layers": [(3, 4)]}, seed=1))
        assert h.m == 16
        assert all(len(e) == 3 for e in h.hyperedges)
        assert all(h.degree(v) == 4 for v in range(12))
        profile = quasi_degrees(h)
        assert profile.is_quasi_regular and profile.delta == 8

    def test_mixed_layers(self):
        params = HypergraphParams(n=15, layers=[(3, 2), (5, 1), (1, 1)])
        assert params.delta == 8
        h = parse_hypergraph(gen_random("hypergraph", params, seed=4))
        assert quasi_degrees(h).delta == 8

    def test_bounded(self):
        params = HypergraphParams(n=9, mode="bounded", m=20, k=3, max_degree=2)
        h = parse_hypergraph(gen_random("hypergraph", params, seed=0))
        assert all(h.degree(v) <= 2 for v in range(9))
        assert all(len(e) == 3 for e in h.hyperedges)

    def test_3dm(self):
        h = parse_3dm(gen_random("3dm", {"n": 3}, seed=2))
        assert (h.n, h.m) == (3, 9)

    def test_perturbation_keeps_regularity(self):
        h = random_3dm(ThreeDMParams(n=4), make_rng(0))
        swapped = perturb_3dm(h, 5, 11)
        assert swapped.m == h.m
        assert [t[:2] for t in swapped.triples] == [t[:2] for t in h.triples]

    def test_singleton_layer(self):
        assert regular_layer(3, 1, 2, make_rng(0)) == [frozenset({v}) for v in (0, 1, 2)] * 2


class TestDeterminism:
    @pytest.mark.parametrize("kind", ["liang", "hypergraph", "3dm"])
    def test_same_seed_same_bytes(self, kind):
        assert gen_random(kind, None, 42) == gen_random(kind, None, 42)

    def test_seeds_differ(self):
        assert gen_random("liang", None, 1) != gen_random("liang", None, 2)


class TestParams:
    @pytest.mark.parametrize(
        "kind, values",
        [
            ("hypergraph", {"layers": [(2, 1)]}),
            ("hypergraph", {"n": 10, "layers": [(3, 1)]}),
            ("hypergraph", {"n": 2, "layers": [(3, 3)]}),
            ("liang", {"s_cap": 5}),
            ("liang", {"p3": 1.5}),
            ("3dm", {"n": 0}),
        ],
    )
    def test_rejected(self, kind, values):
        with pytest.raises(InfeasibleParams):
            parse_params(kind, values)

    def test_unknown_kind(self):
        with pytest.raises(InfeasibleParams):
            parse_params("tree", {})

    def test_defaults(self):
        assert parse_params("3dm") == ThreeDMParams(n=2, swaps=0)

    def test_impossible_layer(self):
        with pytest.raises(InfeasibleParams):
            regular_layer(4, 3, 1, make_rng(0))
