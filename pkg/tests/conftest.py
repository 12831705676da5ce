import pathlib
from collections.abc import Callable

import networkx as nx
import pytest

from star_kernel import graph
from star_kernel.graph import Graph

GraphFileFactory = Callable[[str, Graph], pathlib.Path]


@pytest.fixture
def graph_file(tmp_path: pathlib.Path) -> GraphFileFactory:
    def write(name: str, g: Graph) -> pathlib.Path:
        path = tmp_path / name
        with path.open("w") as f:
            f.writelines(graph.write_graph(g))
        return path

    return write


@pytest.fixture
def k44_path(graph_file: GraphFileFactory) -> pathlib.Path:
    return graph_file("k44.graph", Graph.from_networkx(nx.complete_bipartite_graph(4, 4)))


@pytest.fixture
def edgeless_path(graph_file: GraphFileFactory) -> pathlib.Path:
    return graph_file("edgeless.graph", Graph(5))
