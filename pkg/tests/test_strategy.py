import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pebbling.errors import BadInput, NotATree, NotSubgraph
from pebbling.graph import complete_graph, cube_graph, cycle_graph, from_edge_list, path_graph
from pebbling.strategy import (
    Strategy,
    StrategyCorpus,
    build_corpus,
    canonical_weights,
    enumerate_subtrees,
    shortest_path_strategies,
    validate_strategy,
)

from test_graph import to_nx


def brute_force_signatures(g, r, max_size):
    """Weight vectors of every tree subgraph containing r, by trying edge subsets."""
    sigs = set()
    for k in range(1, max_size):
        for edges in itertools.combinations(g.edges, k):
            t = nx.Graph(edges)
            if r in t and nx.is_tree(t):
                sigs.add(canonical_weights(g, r, edges).weights)
    return sigs


def test_canonical_weights_on_path():
    s = canonical_weights(path_graph(4), 0, [(1, 0), (1, 2), (2, 3)])
    assert s.weights == (0, 4, 2, 1)
    assert s.depth == 3 and s.weight_total == 7
    assert s.tree_edges == ((0, 1), (1, 2), (2, 3))
    assert validate_strategy(s, path_graph(4))


def test_canonical_weights_branching(b1):
    # root 4 with neighbours 3, 5, 17 and grandchild 2 below 3
    s = canonical_weights(b1, 4, [(4, 3), (4, 5), (4, 17), (3, 2)])
    assert s.weights[2] == 1 and s.weights[3] == s.weights[5] == s.weights[17] == 2
    assert s.weight_total == 7


@pytest.mark.parametrize("edges,exc", [([], NotATree), ([(0, 2)], NotSubgraph), ([(1, 2)], NotATree)])
def test_canonical_weights_rejects(edges, exc):
    with pytest.raises(exc):
        canonical_weights(path_graph(4), 0, edges)


def test_validate_reports_mutations():
    g = path_graph(4)
    s = canonical_weights(g, 0, [(0, 1), (1, 2), (2, 3)])
    bad = Strategy(s.root, s.tree_edges, s.depth, (1, 4, 2, 1), s.weight_total)
    assert "root-weight" in validate_strategy(bad, g).kinds()
    bad = Strategy(s.root, s.tree_edges, s.depth, (0, 4, 3, 1), 8)
    assert {"parent-child", "non-canonical"} <= validate_strategy(bad, g).kinds()
    bad = Strategy(s.root, s.tree_edges, s.depth, s.weights, 99)
    assert validate_strategy(bad, g).kinds() == {"total"}
    bad = Strategy(s.root, ((0, 1), (1, 2)), 2, s.weights, s.weight_total)
    assert "off-tree" in validate_strategy(bad, g).kinds()
    bad = Strategy(s.root, ((0, 2),), 1, s.weights, s.weight_total)
    assert "tree" in validate_strategy(bad, g).kinds()


@pytest.mark.parametrize(
    "g",
    [path_graph(6), cycle_graph(6), complete_graph(5), cube_graph(3),
     from_edge_list(5, [(0, 1), (1, 2), (2, 0), (1, 3), (2, 4)])],
    ids=["P6", "C6", "K5", "Q3", "bull"],
)
def test_enumeration_matches_brute_force(g):
    for r in range(g.n):
        corpus = enumerate_subtrees(g, r, g.n)
        assert corpus.signatures() == brute_force_signatures(g, r, g.n)
        assert len(corpus) == len(corpus.signatures())


def test_size_cap_is_a_filter():
    g = cube_graph(3)
    full = enumerate_subtrees(g, 0, 8)
    capped = enumerate_subtrees(g, 0, 4)
    expect = {w for w in full.signatures() if sum(1 for x in w if x) + 1 <= 4}
    assert capped.signatures() == expect


@settings(max_examples=25, deadline=None)
@given(st.integers(3, 7).flatmap(lambda n: st.tuples(
    st.just(n), st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), min_size=2, max_size=10))))
def test_enumeration_random_graphs(data):
    n, pairs = data
    edges = sorted({(min(u, v), max(u, v)) for u, v in pairs if u != v})
    if not edges:
        return
    g = from_edge_list(n, edges)
    r = edges[0][0]
    corpus = enumerate_subtrees(g, r, n)
    assert corpus.signatures() == brute_force_signatures(g, r, n)


def test_corpus_rows_rebuild_to_valid_strategies(petersen):
    corpus = enumerate_subtrees(petersen, 0, 6)
    for i in range(0, len(corpus), max(1, len(corpus) // 200)):
        s = corpus[i]
        assert validate_strategy(s, petersen)
        assert canonical_weights(petersen, 0, s.tree_edges).weights == s.weights
        assert corpus.index_of(s.weights) == i


def test_shortest_paths(b1):
    paths = shortest_path_strategies(b1, 4)
    tips = {s.weights.index(1) for s in paths}
    assert tips == set(range(18)) - {4}
    for s in paths:
        assert len(s.tree_edges) == s.depth
        assert s.weight_total == (1 << s.depth) - 1
    corpus = build_corpus(b1, 4, 4)
    for s in paths:
        assert corpus.index_of(s.weights) >= 0


def test_corpus_merge_dedups(petersen):
    base = enumerate_subtrees(petersen, 0, 3)
    merged = base.merged(list(base)[:5])
    assert len(merged) == len(base)
    assert isinstance(StrategyCorpus.from_strategies(petersen, 0, list(base)), StrategyCorpus)


def test_bad_arguments(petersen):
    with pytest.raises(BadInput):
        enumerate_subtrees(petersen, 10, 4)
    with pytest.raises(BadInput):
        enumerate_subtrees(petersen, 0, 11)


def test_small_corpus_examples(b1):
    p3 = path_graph(3)
    assert enumerate_subtrees(p3, 0, 3).signatures() == {(0, 1, 0), (0, 2, 1)}
    assert {s.weights for s in shortest_path_strategies(p3, 0)} == enumerate_subtrees(p3, 0, 3).signatures()
    assert len(enumerate_subtrees(b1, 4, 2)) == 3
    c4 = cycle_graph(4)
    assert sum(1 for s in shortest_path_strategies(c4, 0) if s.weights[2] == 1) == 2
