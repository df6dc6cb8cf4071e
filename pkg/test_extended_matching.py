import pytest

from config import OracleBudget
from conftest import hypergraph
from errors import NotOddlyUniform, NotQuasiRegular, ZeroQuasiDegree
from extended_matching import (
    ExtendedMatching,
    clique_expansion,
    extended_matching_covering_max_quasidegree,
    pad_to_quasi_regular,
    perfect_extended_matching,
    quasi_degrees,
    verify_extended_matching,
)
from instance_generator import HypergraphParams, make_rng, random_hypergraph
from vfree_oracle import oracle_extended_matching

WHEEL = hypergraph(4, {0, 1, 2}, {1, 2, 3}, {2, 3, 0}, {3, 0, 1})
TWO = hypergraph(4, {0, 1, 2}, {1, 2, 3})
DENSE = hypergraph(
    11,
    {4, 8, 10}, {0, 8, 10}, {1, 5, 7}, {4, 6, 7}, {5, 9, 10}, {3, 4, 5}, {1, 2, 5},
    {2, 3, 9}, {3, 7, 9}, {6, 7, 8}, {1, 2, 9}, {1, 6, 10}, {2, 3, 6}, {0, 4, 8},
)


class TestQuasiDegrees:
    def test_single_hyperedge(self):
        profile = quasi_degrees(hypergraph(3, {0, 1, 2}))
        assert profile.degrees == (2, 2, 2)
        assert profile.is_quasi_regular

    def test_two_overlapping(self):
        profile = quasi_degrees(TWO)
        assert profile.degrees == (2, 4, 4, 2)
        assert profile.delta == 4
        assert profile.deficiency == (2, 0, 0, 2)
        assert profile.maximal_nodes == {1, 2}

    def test_empty(self):
        profile = quasi_degrees(hypergraph(3))
        assert profile.degrees == (0, 0, 0)
        assert profile.maximal_nodes == frozenset()


class TestCliqueExpansion:
    def test_triangle_with_witness(self):
        g = clique_expansion(hypergraph(3, {0, 1, 2}))
        assert set(g.support) == {(0, 1), (0, 2), (1, 2)}
        assert set(g.witnesses) == {0}

    def test_parallel_hyperedges_double_pairs(self):
        g = clique_expansion(hypergraph(3, {0, 1, 2}, {0, 1, 2}))
        assert all(g.multiplicity(u, v) == 2 for u, v in g.support)

    def test_overlapping_pairs(self):
        g = clique_expansion(TWO)
        assert len(g.support) == 5
        assert g.multiplicity(1, 2) == 2
        assert g.witness(1, 2) == 0


class TestPerfectExtendedMatching:
    def test_single_hyperedge(self):
        em = perfect_extended_matching(hypergraph(3, {0, 1, 2}))
        assert em == ExtendedMatching(frozenset({0}))

    def test_wheel_uses_two_pairs(self):
        em = perfect_extended_matching(WHEEL)
        assert not em.hyperedges and len(em.pairs) == 2
        assert verify_extended_matching(WHEEL, em, range(4)).ok

    def test_disjoint_hyperedges(self):
        h = hypergraph(6, {0, 1, 2}, {3, 4, 5})
        em = perfect_extended_matching(h)
        assert em.hyperedges == {0, 1} and not em.pairs

    def test_odd_clique_takes_whole_hyperedge(self):
        h = hypergraph(5, {0, 1, 2, 3, 4})
        assert perfect_extended_matching(h) == ExtendedMatching(frozenset({0}))

    def test_padded_mixed_sizes(self):
        h = hypergraph(7, {0, 1, 2, 3, 4}, {4, 5, 6}, {4, 5, 6}, {5, 6, 0}, {5, 6, 1})
        assert quasi_degrees(h).degrees == (6, 6, 4, 4, 8, 8, 8)
        padded, _ = pad_to_quasi_regular(h)
        em = perfect_extended_matching(padded)
        assert verify_extended_matching(padded, em, range(padded.n)).ok

    def test_preconditions(self):
        with pytest.raises(NotOddlyUniform):
            perfect_extended_matching(hypergraph(2, {0, 1}))
        with pytest.raises(NotQuasiRegular):
            perfect_extended_matching(TWO)

    def test_zero_quasi_degree(self):
        em = perfect_extended_matching(hypergraph(2, {0}, {1}, {1}))
        assert em.hyperedges == {0, 1}
        with pytest.raises(ZeroQuasiDegree):
            perfect_extended_matching(hypergraph(2, {0}))

    def test_first_spanned_hyperedge_can_be_unusable(self):
        padded, _ = pad_to_quasi_regular(DENSE)
        em = perfect_extended_matching(padded)
        assert verify_extended_matching(padded, em, range(padded.n)).ok

    def test_generated_quasi_regular(self):
        for seed in range(20):
            params = HypergraphParams(n=15, layers=[(3, 2), (5, 1), (1, 1)])
            h = random_hypergraph(params, make_rng(seed))
            assert quasi_degrees(h).delta == params.delta
            em = perfect_extended_matching(h)
            assert verify_extended_matching(h, em, range(h.n)).ok


class TestPadding:
    def test_quasi_regular_input_gets_no_triples(self):
        padded, embedding = pad_to_quasi_regular(WHEEL)
        assert padded.n == 12 and padded.m == 12
        assert embedding.triples == ()

    def test_two_overlapping(self):
        padded, embedding = pad_to_quasi_regular(TWO)
        assert padded.n == 12
        assert padded.m == 8
        assert set(padded.hyperedges[6:]) == {frozenset({0, 4, 8}), frozenset({3, 7, 11})}
        assert embedding.triples == (0, 3)
        assert quasi_degrees(padded).is_quasi_regular
        assert quasi_degrees(padded).delta == 4
        assert embedding.hyperedge_origin(3) == (1, 1)
        assert embedding.hyperedge_origin(6) is None
        assert embedding.node_origin(9) == (2, 1)

    def test_isolated_node(self):
        padded, embedding = pad_to_quasi_regular(hypergraph(1))
        assert padded.n == 3 and padded.m == 0


class TestCoveringMaxQuasiDegree:
    def test_two_overlapping(self):
        em = extended_matching_covering_max_quasidegree(TWO)
        report = verify_extended_matching(TWO, em, {1, 2})
        assert report.ok

    def test_k34_hypergraph(self):
        h = hypergraph(3, *([{0, 1, 2}] * 4))
        em = extended_matching_covering_max_quasidegree(h)
        assert len(em.hyperedges) == 1 and not em.pairs

    def test_dense_three_uniform(self):
        target = quasi_degrees(DENSE).maximal_nodes
        em = extended_matching_covering_max_quasidegree(DENSE)
        assert verify_extended_matching(DENSE, em, target).ok

    def test_zero_delta_is_empty(self):
        assert extended_matching_covering_max_quasidegree(hypergraph(3, {1})) == ExtendedMatching()

    def test_agrees_with_oracle_on_small_instances(self):
        budget = OracleBudget(max_nodes=12)
        for seed in range(40):
            params = HypergraphParams(n=9, mode="bounded", m=7, k=3, max_degree=4)
            h = random_hypergraph(params, make_rng(seed))
            target = quasi_degrees(h).maximal_nodes
            em = extended_matching_covering_max_quasidegree(h)
            assert verify_extended_matching(h, em, target).ok
            witness = oracle_extended_matching(h, target, budget)
            assert witness is not None
            assert verify_extended_matching(h, witness, target).ok


class TestVerify:
    def test_valid(self):
        h = hypergraph(3, {0, 1, 2})
        assert verify_extended_matching(h, ExtendedMatching(frozenset({0})), {0, 1, 2}).lines() == ["OK"]

    def test_node_reused(self):
        h = hypergraph(3, {0, 1, 2})
        em = ExtendedMatching(pairs=frozenset({(0, 1, 0), (1, 2, 0)}))
        report = verify_extended_matching(h, em, ())
        assert [v.kind for v in report.violations] == ["node reused"]
        assert report.violations[0].element == "1"

    def test_witness_must_contain_pair(self):
        h = hypergraph(4, {0, 1, 2}, {3})
        em = ExtendedMatching(pairs=frozenset({(0, 3, 0)}))
        report = verify_extended_matching(h, em, ())
        assert [v.kind for v in report.violations] == ["witness does not contain pair"]

    def test_uncovered_required(self):
        report = verify_extended_matching(hypergraph(2), ExtendedMatching(), {0})
        assert not report.ok
        assert report.violations[0].kind == "uncovered"


@pytest.mark.slow
def test_perfect_extended_matching_at_scale():
    rng = make_rng(3)
    done = 0
    while done < 200:
        n = int(rng.choice([15, 30, 45, 60]))
        layers = []
        for k, cap in ((3, 5), (5, 2), (1, 2)):
            r = int(rng.integers(0, cap + 1))
            if r:
                layers.append((k, r))
        if not layers or sum((k - 1) * r for k, r in layers) > 10:
            continue
        params = HypergraphParams(n=n, layers=layers)
        h = random_hypergraph(params, rng)
        em = perfect_extended_matching(h)
        assert verify_extended_matching(h, em, range(h.n)).ok
        done += 1


@pytest.mark.slow
def test_covering_max_quasidegree_at_scale():
    rng = make_rng(4)
    budget = OracleBudget(max_nodes=12)
    for _ in range(200):
        n = int(rng.integers(3, 16))
        params = HypergraphParams(n=n, mode="bounded", m=int(rng.integers(1, 2 * n)), k=3, max_degree=4)
        h = random_hypergraph(params, rng)
        target = quasi_degrees(h).maximal_nodes
        em = extended_matching_covering_max_quasidegree(h)
        assert verify_extended_matching(h, em, target).ok
        if h.n <= 9:
            assert oracle_extended_matching(h, target, budget) is not None
