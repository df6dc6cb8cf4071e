import pytest

from config import OracleBudget
from errors import CoverageGap, InvalidInstance, NotPerfectMatching, NotVFree, TheoremViolation
from graph_core import TwoMatching, s_node, t_node
from instance_generator import ThreeDMParams, make_rng, perturb_3dm, random_3dm
from liang_solver import verify_vfree
from reduction_3dm import ThreeDMInstance, forward_map, lift_solution, reduce_3dm, verify_3dm
from vfree_oracle import oracle_3dm_matching, oracle_vfree_cover

TRIPLE = ThreeDMInstance(1, 1, 1, ((0, 0, 0),) * 3)
CYCLIC = ThreeDMInstance(
    2, 2, 2,
    ((0, 0, 0), (1, 1, 1), (0, 1, 0), (1, 0, 1), (0, 0, 1), (1, 1, 0)),
)


class TestInstance:
    def test_counts(self):
        assert (TRIPLE.n, TRIPLE.m) == (1, 3)

    def test_rejects_irregular_or_unbalanced(self):
        with pytest.raises(InvalidInstance):
            ThreeDMInstance(1, 1, 1, ((0, 0, 0),) * 2)
        with pytest.raises(InvalidInstance):
            ThreeDMInstance(1, 2, 1, ())
        with pytest.raises(InvalidInstance):
            ThreeDMInstance(1, 1, 1, ((0, 0, 1),) * 3)

    def test_perfect_matching_check(self):
        assert CYCLIC.is_perfect_matching({0, 1})
        assert not CYCLIC.is_perfect_matching({0, 2})
        assert not CYCLIC.is_perfect_matching({0, 1, 2})

    def test_verify_report(self):
        assert verify_3dm(CYCLIC, [0, 1]).ok
        report = verify_3dm(CYCLIC, [0, 2, 7])
        assert report.lines() == ["unknown triple: triple 7"]
        lines = verify_3dm(CYCLIC, [0, 0, 2]).lines()
        assert lines[0] == "triple repeated: triple 0"
        assert "not covered exactly once: x0" in lines


class TestReduction:
    def test_single_node_parts(self):
        g, gm = reduce_3dm(TRIPLE)
        assert (g.s_count, g.t_count, len(g.edges)) == (8, 12, 23)
        assert g.s_degree(gm.s_x(0)) == 4
        assert g.s_degree(gm.s1(0)) == 3
        assert g.s_degree(gm.s2(0)) == 2
        assert g.t_degree(gm.t1(0)) == 3
        assert g.t_degree(gm.t_z(0)) == 3
        assert g.t_degree(gm.t3(0)) == 1
        assert g.t_degree(gm.t_x(0)) == 1

    def test_roles(self):
        _, gm = reduce_3dm(TRIPLE)
        assert gm.node_roles[s_node(2)] == ("s1", 0)
        assert gm.node_roles[t_node(2)] == ("t_z", 0)
        assert gm.edge_roles[(gm.s1(1), gm.t_z(0))] == ("connector_z", 1)
        assert sum(role == "path" for role, _ in gm.edge_roles.values()) == 12

    def test_two_node_parts(self):
        g, _ = reduce_3dm(CYCLIC)
        assert g.s_count + g.t_count == 40
        assert len(g.edges) == 46
        assert g.max_degree == 4

    def test_generated_sizes(self):
        for n in (3, 5):
            h = random_3dm(ThreeDMParams(n=n), make_rng(n))
            g, _ = reduce_3dm(h)
            assert (g.s_count + g.t_count, len(g.edges)) == (20 * n, 23 * n)


class TestForwardAndLift:
    def test_forward_covers_t(self):
        g, gm = reduce_3dm(TRIPLE)
        n = forward_map(TRIPLE, gm, {1})
        assert len(n) == 16
        assert verify_vfree(g, n, range(g.t_count)).ok

    def test_lift_round_trip(self):
        for h in (TRIPLE, CYCLIC, random_3dm(ThreeDMParams(n=3), make_rng(2))):
            _, gm = reduce_3dm(h)
            matching = oracle_3dm_matching(h)
            n = forward_map(h, gm, matching)
            assert len(n) == 16 * h.n
            assert lift_solution(h, gm, n) == matching

    def test_not_a_perfect_matching(self):
        _, gm = reduce_3dm(CYCLIC)
        with pytest.raises(NotPerfectMatching) as info:
            forward_map(CYCLIC, gm, {0, 2})
        assert info.value.witness == "x0"

    def test_lift_rejects_missing_t_z(self):
        _, gm = reduce_3dm(TRIPLE)
        n = forward_map(TRIPLE, gm, {0})
        broken = TwoMatching(n.edges - {(gm.s1(0), gm.t_z(0))})
        with pytest.raises(CoverageGap) as info:
            lift_solution(TRIPLE, gm, broken)
        assert info.value.node == t_node(gm.t_z(0))

    def test_lift_rejects_v_path(self):
        _, gm = reduce_3dm(TRIPLE)
        v_path = TwoMatching(frozenset({(gm.s2(0), gm.t2(0)), (gm.s2(0), gm.t3(0))}))
        with pytest.raises(NotVFree):
            lift_solution(TRIPLE, gm, v_path)

    def test_lift_rejects_foreign_edge(self):
        _, gm = reduce_3dm(TRIPLE)
        with pytest.raises(TheoremViolation):
            lift_solution(TRIPLE, gm, TwoMatching(frozenset({(gm.s2(0), gm.t1(0))})))

    def test_oracle_cover_lifts(self):
        g, gm = reduce_3dm(TRIPLE)
        n = oracle_vfree_cover(g, range(g.t_count))
        assert n is not None
        lifted = lift_solution(TRIPLE, gm, n)
        assert len(lifted) == 1

    def test_every_cover_keeps_path_tails(self):
        g, gm = reduce_3dm(TRIPLE)
        n = oracle_vfree_cover(g, range(g.t_count))
        for e in range(TRIPLE.m):
            assert (gm.s1(e), gm.t2(e)) in n.edges
            assert (gm.s2(e), gm.t3(e)) in n.edges


@pytest.mark.slow
def test_reduction_agrees_with_oracles(roomy_budget):
    rng = make_rng(6)
    for trial in range(40):
        h = random_3dm(ThreeDMParams(n=int(rng.integers(1, 3))), rng)
        if trial % 2:
            h = perturb_3dm(h, int(rng.integers(1, 4)), rng)
        g, gm = reduce_3dm(h)
        matching = oracle_3dm_matching(h, roomy_budget)
        cover = oracle_vfree_cover(g, range(g.t_count), roomy_budget)
        assert (matching is None) == (cover is None)
        if cover is not None:
            assert h.is_perfect_matching(lift_solution(h, gm, cover))


def connectors_replace_missing_head(h, gm, n):
    for e in range(h.m):
        if (gm.s1(e), gm.t1(e)) not in n.edges:
            x_edge, y_edge, _ = gm.connector_edges(h, e)
            assert x_edge in n.edges and y_edge in n.edges, f"triple {e}"


def test_oracle_cover_uses_both_connectors_of_open_paths(roomy_budget):
    for h in (TRIPLE, CYCLIC):
        g, gm = reduce_3dm(h)
        n = oracle_vfree_cover(g, range(g.t_count), roomy_budget)
        assert n is not None
        connectors_replace_missing_head(h, gm, n)


@pytest.mark.slow
def test_connector_invariant_on_generated_gadgets(roomy_budget):
    rng = make_rng(8)
    for _ in range(10):
        h = random_3dm(ThreeDMParams(n=2), rng)
        g, gm = reduce_3dm(h)
        n = oracle_vfree_cover(g, range(g.t_count), roomy_budget)
        if n is not None:
            connectors_replace_missing_head(h, gm, n)


@pytest.mark.slow
def test_no_instance_has_no_gadget_cover():
    h = ThreeDMInstance(
        3, 3, 3,
        ((0, 2, 0), (1, 0, 1), (2, 1, 0), (0, 1, 2), (1, 2, 2), (2, 0, 2), (0, 2, 1), (1, 0, 1), (2, 1, 0)),
    )
    assert oracle_3dm_matching(h) is None
    g, _ = reduce_3dm(h)
    assert len(g.edges) == 69
    assert oracle_vfree_cover(g, range(g.t_count), OracleBudget(max_edges=200, time_limit=600)) is None
