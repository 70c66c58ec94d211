import json

import pytest
from hypothesis import given, settings

from fvs_antlers.errors import GraphDomainError
from fvs_antlers.exact import fvs_bruteforce, fvs_exact
from fvs_antlers.fvc_finder import find_reducible_fvc
from fvs_antlers.generators import random_multigraph
from fvs_antlers.multigraph import MultiGraph
from fvs_antlers.reducer import (OperationNotFound, ReductionStep, ReductionTrace,
                                 apply_operation, double_edge_count, op1_trim_multiplicity,
                                 op2_contract_degree2, op3_remove_antler,
                                 op4_remove_flower_center, op5_rewire_tree)
from fvs_antlers.structures import Fvc

from conftest import multigraphs


def fvs(G):
    return fvs_exact(G)[0]


def flower_instance(petals=2, host=True):
    """Centre 1 with ``petals`` triangles 1-a-b; a square 1-h1-h2-h3 outside."""
    edges, forest, nxt = [], set(), 10
    for _ in range(petals):
        a, b = nxt, nxt + 1
        nxt += 2
        edges += [(1, a), (a, b), (b, 1)]
        forest |= {a, b}
    if host:
        edges += [(1, 2), (2, 3), (3, 4), (4, 1), (2, 4)]
    return MultiGraph.from_edges(edges), Fvc({1}, forest)


def rewire_instance(trees=4):
    """v=1, u=2; each tree is a path a-b with a-1 and b-2 single edges."""
    edges, forest, paths, nxt = [], set(), [], 10
    for _ in range(trees):
        a, b = nxt, nxt + 1
        nxt += 2
        edges += [(a, b), (1, a), (2, b)]
        forest |= {a, b}
        paths.append((a, b))
    edges += [(1, 3), (3, 4), (4, 2), (2, 1)]
    return MultiGraph.from_edges(edges), Fvc({1, 2}, forest), paths


# -- operation 1 --------------------------------------------------------------

def test_op1_trims_to_two():
    for mult in (3, 4):
        G = MultiGraph.from_edges([(1, 2)] * mult + [(2, 3)])
        G2, step = op1_trim_multiplicity(G, 1, 2)
        assert G2.multiplicity(1, 2) == 2 and G2.multiplicity(2, 3) == 1
        assert step.removed == frozenset() and step.kind == "op1"
        assert step.details["removed_edges"] == list(range(3, mult + 1))


def test_op1_preconditions():
    G = MultiGraph.from_edges([(1, 2), (1, 2), (1, 1), (1, 1), (1, 1)])
    with pytest.raises(GraphDomainError):
        op1_trim_multiplicity(G, 1, 2)
    with pytest.raises(GraphDomainError):
        op1_trim_multiplicity(G, 1, 1)


@pytest.mark.parametrize("seed", range(15))
def test_op1_preserves_fvs(seed):
    G = random_multigraph(7, 10, seed)
    G, _ = G.add_edges([(1, 2)] * 3)
    G2, _ = op1_trim_multiplicity(G, 1, 2)
    assert fvs_bruteforce(G)[0] == fvs_bruteforce(G2)[0]


# -- operation 2 --------------------------------------------------------------

def test_op2_bypasses_a_path_vertex():
    G = MultiGraph.from_edges([(1, 2), (2, 3)])
    G2, step = op2_contract_degree2(G, 2)
    assert G2.vertices == {1, 3} and G2.multiplicity(1, 3) == 1
    assert step.details["endpoints"] == [1, 3]


def test_op2_on_a_double_edge_makes_a_loop():
    G = MultiGraph.from_edges([(1, 2), (1, 2), (2, 3)])
    G2, _ = op2_contract_degree2(G, 1)
    assert G2.has_self_loop(2) and G2.n == 2


def test_op2_preconditions():
    with pytest.raises(GraphDomainError):
        op2_contract_degree2(MultiGraph.from_edges([(1, 1)]), 1)
    with pytest.raises(GraphDomainError):
        op2_contract_degree2(MultiGraph.from_edges([(1, 2), (1, 3), (1, 4)]), 1)


@pytest.mark.parametrize("seed", range(15))
def test_op2_preserves_fvs(seed):
    G = random_multigraph(8, 12, seed)
    pairs = [G.endpoints(e) for e in sorted(G.edges)] + [(99, 1), (99, 2)]
    G = MultiGraph.from_edges(pairs, vertices=G.vertices | {99})
    G2, _ = op2_contract_degree2(G, 99)
    assert fvs_bruteforce(G)[0] == fvs_bruteforce(G2)[0]


# -- operation 3 --------------------------------------------------------------

def test_op3_self_loop_vertex():
    G = MultiGraph.from_edges([(1, 1), (1, 2), (2, 3)])
    G2, step = op3_remove_antler(G, Fvc({1}, ()))
    assert step.removed == {1} and 1 not in G2.vertices


def test_op3_isolated_tree():
    G = MultiGraph.from_edges([(1, 2), (3, 4), (4, 5), (5, 3)])
    G2, step = op3_remove_antler(G, Fvc((), {1, 2}))
    assert step.removed == frozenset() and G2.vertices == {3, 4, 5}


def test_op3_triangle_antler_in_host():
    G = MultiGraph.from_edges([(1, 2), (2, 3), (3, 1), (1, 4), (4, 5), (5, 6), (6, 4)])
    G2, step = op3_remove_antler(G, Fvc({1}, {2, 3}))
    assert step.removed == {1}
    assert fvs_bruteforce(G)[0] == 1 + fvs_bruteforce(G2)[0]


def test_op3_rejects_non_antler():
    G = MultiGraph.from_edges([(1, 2), (2, 3)])
    with pytest.raises(GraphDomainError):
        op3_remove_antler(G, Fvc({2}, {1, 3}))


# -- operation 4 --------------------------------------------------------------

def test_op4_removes_centre_of_two_petal_flower():
    G, f = flower_instance(2)
    G2, step = op4_remove_flower_center(G, f, 1)
    assert step.removed == {1} and 1 not in G2.vertices
    assert fvs_bruteforce(G)[0] == 1 + fvs_bruteforce(G2)[0]
    assert len(step.details["petals"]) == 2


def test_op4_refuses_flower_of_order_width():
    G, f = flower_instance(1)
    with pytest.raises(GraphDomainError):
        op4_remove_flower_center(G, f, 1)


def test_op4_rejects_forged_witness():
    G, f = flower_instance(2)
    with pytest.raises(GraphDomainError):
        op4_remove_flower_center(G, f, 1, [(1, 10, 11), (1, 10, 11)])


# -- operation 5 --------------------------------------------------------------

def test_op5_rewires_a_tree_into_double_edges():
    G, f, paths = rewire_instance(4)
    a, b = paths[0]
    G2, step = op5_rewire_tree(G, f, 1, (), {a, b}, a)
    assert not G2.multiplicity(1, a)
    assert G2.multiplicity(1, 2) == 2
    assert fvs_bruteforce(G)[0] == fvs_bruteforce(G2)[0]
    assert step.removed == frozenset()


def test_op5_tree_seen_only_by_v_just_loses_its_edge():
    G, f, _ = rewire_instance(3)
    pairs = [G.endpoints(e) for e in sorted(G.edges)] + [(1, 50)]
    G = MultiGraph.from_edges(pairs)
    f = Fvc(f.cut, f.forest | {50})
    G2, step = op5_rewire_tree(G, f, 1, (), {50}, 50)
    assert step.details["added_edges"] == []
    assert G2.m == G.m - 1


def test_op5_preconditions():
    G, f, paths = rewire_instance(2)
    a, b = paths[0]
    # only one other tree shares {1, 2}: not more than |C| = 2
    with pytest.raises(GraphDomainError):
        op5_rewire_tree(G, f, 1, (), {a, b}, a)
    G, f, paths = rewire_instance(4)
    with pytest.raises(GraphDomainError):
        op5_rewire_tree(G, f, 3, (), set(paths[0]), paths[0][0])


# -- driver -------------------------------------------------------------------

def op4_host():
    # C = {0, 1}; 14 trees a-b with a-0, b-0, a-1, b-1: min degree 3, flower at 0
    edges, forest, nxt = [], set(), 10
    for _ in range(14):
        a, b = nxt, nxt + 1
        nxt += 2
        edges += [(a, b), (a, 0), (b, 0), (a, 1), (b, 1)]
        forest |= {a, b}
    return MultiGraph.from_edges(edges), Fvc({0, 1}, forest)


def op5_host():
    # C = {0, 1}; 14 trees a-b with a single edge a-0 and edges a-1, b=1 double
    edges, forest, nxt = [], set(), 10
    for _ in range(14):
        a, b = nxt, nxt + 1
        nxt += 2
        edges += [(a, b), (a, 0), (a, 1), (b, 1), (b, 1)]
        forest |= {a, b}
    return MultiGraph.from_edges(edges), Fvc({0, 1}, forest)


def test_driver_prefers_loops_then_low_degree():
    G = MultiGraph.from_edges([(1, 1), (1, 2), (2, 3), (3, 1)] + [(4, 5)])
    f = find_reducible_fvc(G, 1)
    _, step = apply_operation(G, f)
    assert step.kind == "op3" and step.removed == {1}
    H = MultiGraph.from_edges([(1, 2), (2, 3), (3, 4), (4, 2), (2, 5)])
    f = find_reducible_fvc(H, 1)
    _, step = apply_operation(H, f)
    assert step.kind == "op3" and step.details["cut"] == [] and step.details["forest"] == [1]


def test_driver_fires_flower_removal():
    G, f = op4_host()
    assert min(G.degree(v) for v in G.vertices) >= 3
    G2, step = apply_operation(G, f)
    assert step.kind == "op4" and step.removed == {0}
    assert fvs(G) == 1 + fvs(G2)


def test_driver_fires_rewiring():
    G, f = op5_host()
    assert min(G.degree(v) for v in G.vertices) >= 3
    G2, step = apply_operation(G, f)
    assert step.kind == "op5"
    assert G2.multiplicity(0, 1) == 2
    assert fvs(G) == fvs(G2)


def test_driver_rejects_non_reducible_cut(triangle):
    with pytest.raises(GraphDomainError):
        apply_operation(triangle, Fvc({1}, {2, 3}))


def test_rewiring_lowers_edges_into_forest_after_cleanup():
    G, f = op5_host()
    before = G.edges_between({0}, f.forest)
    G2, step = apply_operation(G, f)
    assert step.kind == "op5"
    # the orphaned vertex now has degree 2 and gets contracted
    f2 = find_reducible_fvc(G2, 2)
    G3, step2 = apply_operation(G2, f2)
    assert step2.kind in ("op2", "op3")
    assert G3.edges_between({0}, f.forest & G3.vertices) <= before - 1


def _potential(G):
    return (-G.n, double_edge_count(G), -G.m)


@pytest.mark.parametrize("seed", range(25))
def test_every_driver_step_makes_progress(seed):
    G = random_multigraph(9, 20, seed)
    for _ in range(60):
        f = find_reducible_fvc(G, 2)
        if f.is_empty:
            break
        try:
            G2, _ = apply_operation(G, f)
        except OperationNotFound:
            break
        assert _potential(G2) > _potential(G)
        G = G2


# -- traces -------------------------------------------------------------------

def test_trace_round_trip_and_replay():
    G, f = flower_instance(3)
    trace = ReductionTrace()
    H = G
    H, s1 = op4_remove_flower_center(H, f, 1)
    trace.append(s1)
    H, s2 = op3_remove_antler(H, Fvc((), {10, 11}))
    trace.append(s2)
    text = trace.to_json()
    assert isinstance(json.loads(text), list)
    back = ReductionTrace.from_json(text)
    assert back.accumulated_S == {1}
    assert back.replay(G) == H


def test_step_kind_is_validated():
    with pytest.raises(GraphDomainError):
        ReductionStep("op9")


@settings(max_examples=40, deadline=None)
@given(multigraphs(max_n=8, max_m=16))
def test_driver_steps_are_fvs_safe(G):
    f = find_reducible_fvc(G, 2)
    if f.is_empty:
        return
    try:
        G2, step = apply_operation(G, f)
    except OperationNotFound:
        return
    assert step.removed <= G.vertices - G2.vertices
    assert fvs_bruteforce(G)[0] == len(step.removed) + fvs_bruteforce(G2)[0]
