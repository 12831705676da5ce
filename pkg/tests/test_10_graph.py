import networkx as nx
import pytest

from star_kernel import generators, graph
from star_kernel.graph import Graph, GraphFormatError


def test_components() -> None:
    assert graph.components(Graph(0)) == []
    assert graph.components(Graph(3)) == [{0}, {1}, {2}]
    path_plus_isolated = Graph.from_edges(4, [(0, 1), (1, 2)])
    assert graph.components(path_plus_isolated) == [{0, 1, 2}, {3}]


def test_complement() -> None:
    assert graph.complement(graph.complete_graph(3)) == Graph(3)
    assert graph.complement(Graph(4)) == graph.complete_graph(4)
    p3 = Graph.from_edges(3, [(0, 1), (1, 2)])
    assert graph.complement(p3).edges == {(0, 2)}


def test_complement_is_involution() -> None:
    g = Graph.from_networkx(nx.gnp_random_graph(9, 0.4, seed=3))
    assert graph.complement(graph.complement(g)) == g
    assert g.m + graph.complement(g).m == 9 * 8 // 2


def test_induced_subgraph() -> None:
    sub, index = graph.induced_subgraph(graph.complete_graph(4), {0, 1})
    assert sub == graph.complete_graph(2)
    assert index == {0: 0, 1: 1}

    c5 = Graph.from_networkx(nx.cycle_graph(5))
    sub, _ = graph.induced_subgraph(c5, {1, 2, 3})
    assert sub == Graph.from_edges(3, [(0, 1), (1, 2)])

    sub, index = graph.induced_subgraph(c5, c5.vertices)
    assert sub == c5
    assert all(old == new for old, new in index.items())

    with pytest.raises(ValueError):
        graph.induced_subgraph(c5, {7})


def test_delete_vertices_relabels() -> None:
    p4 = Graph.from_networkx(nx.path_graph(4))
    rest, index = graph.delete_vertices(p4, {1})
    assert index == {0: 0, 2: 1, 3: 2}
    assert rest.edges == {(1, 2)}


def test_degrees_and_neighborhoods() -> None:
    star = Graph.from_networkx(nx.star_graph(3))
    assert star.max_degree == 3
    assert star.degree(0) == 3
    assert star.degree(0, within={1, 2}) == 2
    assert star.open_neighborhood([1]) == {0}
    assert star.closed_neighborhood([1, 2]) == {0, 1, 2}
    assert Graph(0).max_degree == 0


@pytest.mark.parametrize(
    "g,d,expected",
    [
        (Graph.from_networkx(nx.path_graph(5)), 5, True),
        (Graph.from_networkx(nx.cycle_graph(5)), 5, False),
        (Graph.from_networkx(nx.cycle_graph(5)), 4, True),
        (graph.complete_graph(6), 3, False),
        (Graph.from_networkx(nx.complete_bipartite_graph(3, 3)), 4, False),
    ],
)
def test_has_induced_path(g: Graph, d: int, expected: bool) -> None:
    assert graph.has_induced_path(g, d) is expected


def test_induced_path_witness() -> None:
    g = Graph.from_networkx(nx.cycle_graph(6))
    path = graph.find_induced_path(g, 5)
    assert path is not None
    sub, _ = graph.induced_subgraph(g, path)
    assert sub.m == 4
    assert all(g.has_edge(u, v) for u, v in zip(path, path[1:]))


@pytest.mark.parametrize("seed", range(10))
def test_split_graphs_have_no_induced_p5(seed: int) -> None:
    g = generators.random_split(14, seed)
    assert graph.is_split_graph(g)
    assert not graph.has_induced_path(g, 5)


def test_split_recognition() -> None:
    assert graph.is_split_graph(Graph.from_networkx(nx.star_graph(4)))
    assert not graph.is_split_graph(Graph.from_networkx(nx.cycle_graph(4)))
    assert not graph.is_split_graph(Graph.from_networkx(nx.cycle_graph(5)))
    star = Graph.from_networkx(nx.star_graph(3))
    assert graph.is_split_partition(star, {0}, {1, 2, 3})
    assert not graph.is_split_partition(star, {0, 1, 2}, {3})


def test_disjoint_union() -> None:
    g = graph.disjoint_union([graph.complete_graph(3), graph.complete_graph(2)])
    assert g.n == 5
    assert graph.components(g) == [{0, 1, 2}, {3, 4}]


def test_graph_rejects_bad_edges() -> None:
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph(3, frozenset({(2, 1)}))
    with pytest.raises(ValueError):
        Graph(3, frozenset({(1, 3)}))


def test_graph_format_round_trip() -> None:
    g = generators.random_cograph(30, seed=1)
    text = list(graph.write_graph(g))
    assert text[0] == f"p star 30 {g.m}\n"
    assert graph.read_graph(text) == g
    assert list(graph.write_graph(graph.read_graph(text))) == text


def test_read_graph_skips_comments() -> None:
    lines = ["c a comment\n", "\n", "p star 3 2\n", "e 1 2\n", "c inline\n", "e 3 2\n"]
    assert graph.read_graph(lines) == Graph.from_edges(3, [(0, 1), (1, 2)])


@pytest.mark.parametrize(
    "lines,lineno",
    [
        (["p star 3 1", "e 1 x"], 2),
        (["p star 3 1", "e 1 4"], 2),
        (["p star 3 1", "e 2 2"], 2),
        (["p star 3 2", "e 1 2", "e 2 1"], 3),
        (["e 1 2"], 1),
        (["p star 3 1", "p star 3 1"], 2),
        (["p star 3 1", "q 1 2"], 2),
        (["p star 3 2", "e 1 2"], 0),
        ([], 0),
    ],
)
def test_read_graph_errors(lines: list[str], lineno: int) -> None:
    with pytest.raises(GraphFormatError) as excinfo:
        graph.read_graph(lines)
    assert excinfo.value.lineno == lineno
