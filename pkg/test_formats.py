import pytest

from errors import GraphError, InvalidInstance, ParseError
from extended_matching import ExtendedMatching
from formats import (
    format_bipartite,
    format_certificate,
    format_gadget_map,
    format_hypergraph,
    parse_3dm,
    parse_bipartite,
    parse_certificate,
    parse_gadget_roles,
    parse_hypergraph,
    parse_required,
)
from graph_core import SLink
from reduction_3dm import ThreeDMInstance, reduce_3dm


class TestInstances:
    def test_bipartite_with_comments(self):
        text = "# K_{1,2}\nb 1 2 2\n0 1   # second\n0 0\n"
        g = parse_bipartite(text)
        assert (g.s_count, g.t_count) == (1, 2)
        assert g.edges == ((0, 0), (0, 1))
        assert format_bipartite(g) == "b 1 2 2\n0 0\n0 1\n"

    @pytest.mark.parametrize(
        "text, line",
        [
            ("", 1),
            ("x 1 1 0\n", 1),
            ("b 2 2 1\n0 5\n", 2),
            ("b 2 2 2\n0 0\n\n0 0\n", 4),
            ("b 2 2 1\n0 -1\n", 2),
            ("b 2 2 1\n0 zero\n", 2),
            ("b 2 2 1\n0 0\n1 1\n", 3),
            ("b 2 2 2\n0 0\n", 2),
        ],
    )
    def test_bipartite_errors_carry_line_numbers(self, text, line):
        with pytest.raises(ParseError) as info:
            parse_bipartite(text)
        assert info.value.line == line
        assert str(info.value).startswith(f"line {line}:")

    def test_hypergraph(self):
        h = parse_hypergraph("h 4 2\n3 2 1 0\n1 3\n")
        assert h.hyperedges == (frozenset({0, 1, 2}), frozenset({3}))
        assert format_hypergraph(h) == "h 4 2\n3 0 1 2\n1 3\n"

    def test_hypergraph_size_mismatch(self):
        with pytest.raises(ParseError) as info:
            parse_hypergraph("h 4 1\n3 0 1\n")
        assert info.value.line == 2

    def test_3dm(self):
        h = parse_3dm("3dm 1 3\n0 0 0\n0 0 0\n0 0 0\n")
        assert h == ThreeDMInstance(1, 1, 1, ((0, 0, 0),) * 3)
        with pytest.raises(InvalidInstance):
            parse_3dm("3dm 1 1\n0 0 0\n")

    def test_required(self):
        assert parse_required("3 1\n# note\n1 0\n") == {0, 1, 3}


class TestCertificates:
    def test_liang_certificate(self):
        cert = parse_certificate("edge 0 1\nedge 1 2\nlink 2 0 1\n")
        assert cert.kind == "liang"
        assert cert.matching().edges == {(0, 1), (1, 2)}
        assert cert.links_family().links == (SLink(1, 0, 2),)

    def test_bare_edges_sharing_a_node_read_as_vfree(self):
        cert = parse_certificate("edge 0 0\nedge 0 1\n")
        assert cert.kind == "vfree"
        assert len(cert.two_matching()) == 2

    def test_extended_matching_certificate(self):
        cert = parse_certificate("hyperedge 2\npair 3 1 via 0\n")
        assert cert.kind == "extmatch"
        assert cert.extended_matching() == ExtendedMatching(frozenset({2}), frozenset({(1, 3, 0)}))

    def test_empty_certificate(self):
        assert parse_certificate("# nothing\n").kind == "liang"

    def test_unknown_line(self):
        with pytest.raises(ParseError) as info:
            parse_certificate("edge 0 0\npair 1 2 0\n")
        assert info.value.line == 2

    def test_writer_is_sorted(self):
        text = format_certificate(
            edges=[(2, 0), (0, 1)],
            em=ExtendedMatching(frozenset({4}), frozenset({(3, 1, 0)})),
            links=[SLink(5, 2, 4)],
            comments=["demo"],
        )
        assert text == "# demo\nedge 0 1\nedge 2 0\nhyperedge 4\npair 1 3 via 0\nlink 4 2 5\n"
        assert parse_certificate(text).links == [SLink(4, 2, 5)]


class TestGadgetSidecar:
    def test_tokens(self):
        g, gm = reduce_3dm(ThreeDMInstance(1, 1, 1, ((0, 0, 0),) * 3))
        roles = parse_gadget_roles(format_gadget_map(g, gm))
        assert len(roles) == 20 + 23
        assert roles["s0"] == ("s_x", 0)
        assert roles["s1"] == ("s_y", 0)
        assert roles["t2"] == ("t_z", 0)
        assert roles["t11"] == ("t3", 2)
        first_edge = g.edges[0]
        assert roles["e0"] == gm.edge_roles[first_edge]

    def test_mismatched_graph(self):
        g, gm = reduce_3dm(ThreeDMInstance(1, 1, 1, ((0, 0, 0),) * 3))
        with pytest.raises(GraphError):
            format_gadget_map(g.with_edges(g.edges[1:]), gm)

    def test_bad_sidecar_line(self):
        with pytest.raises(ParseError):
            parse_gadget_roles("s0\n")
