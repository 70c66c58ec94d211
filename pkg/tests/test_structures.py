import pytest
from hypothesis import given, settings

from fvs_antlers.errors import RefusalError
from fvs_antlers.exact import fvs_bruteforce
from fvs_antlers.multigraph import MultiGraph
from fvs_antlers.structures import (Certificate, Fvc, certificate_tree_bound, enumerate_antlers,
                                    enumerate_fvcs, find_certificate, is_z_antler,
                                    prune_certificate, verify_antler, verify_certificate,
                                    verify_fvc)

from conftest import multigraphs


def test_verify_fvc_examples(triangle):
    path = MultiGraph.from_edges([(1, 2), (2, 3)])
    assert verify_fvc(path, Fvc((), {1, 2, 3}))
    assert not verify_fvc(triangle, Fvc((), {1, 2, 3}))
    assert verify_fvc(triangle, Fvc({1}, {2, 3}))
    assert not verify_fvc(triangle, Fvc({1}, {1, 2}))


def test_verify_fvc_counts_edges_leaving_each_tree():
    # star centre 1 with leaves 2,3 outside: the tree {1} sends two edges out
    star = MultiGraph.from_edges([(1, 2), (1, 3)])
    assert not verify_fvc(star, Fvc((), {1}))
    assert verify_fvc(star, Fvc({2}, {1}))


def test_verify_antler_examples(triangle):
    assert verify_antler(triangle, Fvc({1}, {2, 3}))
    path = MultiGraph.from_edges([(1, 2), (2, 3)])
    assert not verify_antler(path, Fvc({2}, {1, 3}))
    assert verify_antler(MultiGraph(vertices=[5]), Fvc((), {5}))


def test_verify_certificate_examples(triangle):
    H = Certificate({1, 2, 3}, {1, 2, 3}, 1)
    assert verify_certificate(triangle, {1}, H, 1)
    K4 = MultiGraph.from_edges([(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
    whole = Certificate(K4.vertices, K4.edges, 1)
    assert not verify_certificate(K4, {1, 2}, whole, 1)
    assert verify_certificate(K4, {1, 2}, whole, 2)
    assert verify_certificate(triangle, (), Certificate((), (), 0), 0)


def test_certificate_must_use_host_edges(triangle):
    assert not verify_certificate(triangle, {1}, Certificate({1, 2, 3}, {1, 2, 9}, 1), 1)
    assert not verify_certificate(triangle, {1}, Certificate({1, 2}, {1, 2}, 1), 1)


def test_tree_bound_arithmetic():
    assert certificate_tree_bound(2, 1) == 2
    assert certificate_tree_bound(1, 1) == 1
    assert certificate_tree_bound(3, 2) == 10


def test_prune_three_petal_flower():
    # centre 0, three triangles: one tree suffices for order 1
    G = MultiGraph.from_edges([(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0),
                               (0, 5), (5, 6), (6, 0)])
    H = Certificate(G.vertices, G.edges, 1)
    P = prune_certificate(G, {0}, H, 1)
    sub = P.graph(G)
    trees = sub.components(sub.vertices - {0})
    assert len(trees) <= 1
    assert fvs_bruteforce(sub)[0] == 1
    assert verify_certificate(G, {0}, P, 1)


def test_prune_is_a_fixed_point_at_the_bound(triangle):
    H = Certificate({1, 2, 3}, {1, 2, 3}, 1)
    assert prune_certificate(triangle, {1}, H, 1) == H


def test_enumeration_on_a_forest_is_width_zero():
    path = MultiGraph.from_edges([(1, 2), (2, 3)])
    assert all(a.base.width == 0 for a in enumerate_antlers(path, 2, 1))


def test_enumeration_on_triangle_has_each_vertex_as_head(triangle):
    found = {(a.cut, a.forest) for a in enumerate_antlers(triangle, 1, 1)}
    for v in (1, 2, 3):
        assert (frozenset({v}), frozenset({1, 2, 3} - {v})) in found


def test_enumeration_matches_hand_list_on_triangle_plus_pendant():
    # frozen from an independent labelling checker written against the definitions
    G = MultiGraph.from_edges([(1, 2), (2, 3), (1, 3), (3, 4)])
    expected = [([], []), ([], [4]), ([1], [2, 3]), ([1], [2, 3, 4]), ([2], [1, 3]),
                ([2], [1, 3, 4]), ([3], [1, 2]), ([3], [1, 2, 4])]
    got = sorted((sorted(a.cut), sorted(a.forest)) for a in enumerate_antlers(G, 1, 1))
    assert got == expected


def test_enumeration_refuses_large_graphs():
    G = MultiGraph.from_edges([(i, i + 1) for i in range(1, 12)])
    with pytest.raises(RefusalError):
        enumerate_fvcs(G, 1)


def test_z_antler_needs_certificate_of_that_order():
    K4 = MultiGraph.from_edges([(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
    f = Fvc({1, 2}, {3, 4})
    assert verify_antler(K4, f)
    assert not is_z_antler(K4, f, 1)
    assert is_z_antler(K4, f, 2)
    assert find_certificate(K4, f, 2) is not None


@settings(max_examples=25, deadline=None)
@given(multigraphs(max_n=6, max_m=10))
def test_removing_an_antler_drops_fvs_by_its_width(G):
    for a in enumerate_antlers(G, 2, 2):
        rest = G.remove(a.base.vertices)
        assert fvs_bruteforce(G)[0] == a.base.width + fvs_bruteforce(rest)[0]


@settings(max_examples=25, deadline=None)
@given(multigraphs(max_n=6, max_m=10))
def test_antler_cross_intersections_balance(G):
    ants = [a.base for a in enumerate_antlers(G, 2, 2)]
    for a in ants:
        for b in ants:
            assert len(a.cut & b.forest) == len(b.cut & a.forest)
