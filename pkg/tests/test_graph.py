import networkx as nx
import pytest

from pebbling.errors import Acyclic, BadInput, Disconnected, MalformedEdge
from pebbling.graph import (
    build_blanusa,
    complete_graph,
    cube_graph,
    cycle_graph,
    diameter,
    distances,
    from_edge_list,
    girth,
    load_graph,
    path_graph,
    read_graph_file,
    star_graph,
)


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


@pytest.mark.parametrize("which", [1, 2])
def test_blanusa_is_a_snark_skeleton(which):
    g = build_blanusa(which)
    assert (g.n, g.m) == (18, 27)
    assert all(g.degree(v) == 3 for v in g.vertices)
    assert diameter(g) == 4
    assert girth(g) == 5
    h = to_nx(g)
    assert nx.diameter(h) == 4
    assert nx.girth(h) == 5


def test_blanusa_pair_not_isomorphic(b1, b2):
    assert not nx.is_isomorphic(to_nx(b1), to_nx(b2))


def test_petersen_matches_networkx(petersen):
    assert nx.is_isomorphic(to_nx(petersen), nx.petersen_graph())
    assert diameter(petersen) == 2 and girth(petersen) == 5


def test_b1_distances_from_4(b1):
    table = distances(b1, 4)
    assert table.eccentricity == 4
    assert table.at_distance(4) == [10, 12, 13, 15]


@pytest.mark.parametrize(
    "edges",
    [[(0, 0)], [(0, 1), (1, 0)], [(0, 5)], [(0, 1, 2)]],
)
def test_malformed_edges(edges):
    with pytest.raises(MalformedEdge):
        from_edge_list(3, edges)


def test_disconnected_and_acyclic():
    g = from_edge_list(4, [(0, 1), (2, 3)])
    with pytest.raises(Disconnected):
        distances(g, 0)
    with pytest.raises(Acyclic):
        girth(star_graph(3))


def test_generators_against_networkx():
    for g, h in [
        (path_graph(5), nx.path_graph(5)),
        (cycle_graph(6), nx.cycle_graph(6)),
        (complete_graph(5), nx.complete_graph(5)),
        (cube_graph(3), nx.hypercube_graph(3)),
    ]:
        assert nx.is_isomorphic(to_nx(g), h)


def test_file_round_trip(tmp_path, b2):
    path = tmp_path / "b2.txt"
    path.write_text(b2.to_text())
    assert read_graph_file(path) == b2
    gid, g = load_graph(str(path))
    assert gid == "b2" and g == b2


def test_file_errors(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 2\n0 1\n")
    with pytest.raises(BadInput):
        read_graph_file(bad)
    with pytest.raises(BadInput):
        load_graph("no-such-graph")
