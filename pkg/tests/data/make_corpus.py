"""Regenerate the instance corpus: ``python3 tests/data/make_corpus.py``."""

from pathlib import Path

from fvs_antlers.generators import gen_chain, gen_planted, gen_union, random_multigraph
from fvs_antlers.io import serialize_graph
from fvs_antlers.multigraph import MultiGraph

OUT = Path(__file__).parent / "corpus"


def graphs():
    yield "empty", MultiGraph(), "no vertices"
    yield "isolated", MultiGraph(range(1, 5)), "four isolated vertices"
    yield "single_loop", MultiGraph.from_edges([(1, 1)]), "one vertex with a loop"
    yield "double_edge", MultiGraph.from_edges([(1, 2), (1, 2)]), "a 2-cycle"
    yield "triple_edge", MultiGraph.from_edges([(1, 2)] * 3 + [(2, 3)]), "trimmable pair"
    yield "sparse_ids", MultiGraph.from_edges([(10, 20), (20, 30), (30, 10), (30, 40)]), \
        "vertex ids not 1..n"
    yield "two_triangles", MultiGraph.from_edges(
        [(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4), (3, 4)]), "bridge between cycles"
    yield "k4_loops", MultiGraph.from_edges(
        [(a, b) for a in range(1, 5) for b in range(a + 1, 5)] + [(1, 1), (3, 3)]), \
        "K4 with two loops"
    for seed in range(6):
        yield f"random_{seed}", random_multigraph(6 + seed, 8 + 2 * seed, seed), \
            f"random multigraph, seed {seed}"
    for seed in range(2):
        yield f"planted_{seed}", gen_planted(1 + seed, 1, 1, 3, seed).graph, \
            f"planted antler, seed {seed}"
    yield "chain", gen_chain([1, 1], 1, 2).graph, "chain of two planted antlers"
    yield "union", gen_union([1, 2], 0, 4).graph, "union of planted antlers"
    yield "long_cycle", MultiGraph.from_edges([(i, i % 9 + 1) for i in range(1, 10)]), \
        "a 9-cycle"
    yield "fat_star", MultiGraph.from_edges([(1, v) for v in range(2, 6)] * 2 + [(2, 3)]), \
        "star with doubled spokes"


def main():
    OUT.mkdir(exist_ok=True)
    for name, G, note in graphs():
        (OUT / f"{name}.fvs").write_text(serialize_graph(G, comments=[note]))


if __name__ == "__main__":
    main()
