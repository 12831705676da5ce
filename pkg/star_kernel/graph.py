# Copyright 2024, star-kernel developers.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Simple undirected graphs over ``0..n-1`` and their structural queries."""

import dataclasses
import functools
from collections.abc import Collection, Iterable, Iterator

import networkx as nx

Edge = tuple[int, int]


class ContractError(RuntimeError):
    """A caller contract or an internal invariant does not hold."""


class GraphFormatError(ValueError):
    def __init__(self, lineno: int, message: str) -> None:
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclasses.dataclass(frozen=True)
class Graph:
    """
    Immutable simple graph.

    Parameters
    ----------
    n: number of vertices, labelled ``0..n-1``
    edges: unordered pairs stored as ``(u, v)`` with ``u < v``
    """

    n: int
    edges: frozenset[Edge] = frozenset()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"{self.n=} must be non-negative")
        for u, v in self.edges:
            if not u < v:
                raise ValueError(f"edge {(u, v)} is not normalised (u < v)")
            if u < 0 or v >= self.n:
                raise ValueError(f"edge {(u, v)} out of range for {self.n=}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        normalized = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            normalized.add(normalize_edge(u, v))
        return cls(n, frozenset(normalized))

    @classmethod
    def from_networkx(cls, nx_graph: nx.Graph) -> "Graph":
        """Relabel the nodes of ``nx_graph`` to ``0..n-1`` in sorted order."""
        index = {node: i for i, node in enumerate(sorted(nx_graph.nodes))}
        return cls.from_edges(len(index), ((index[u], index[v]) for u, v in nx_graph.edges))

    @functools.cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        neighbors: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            neighbors[u].add(v)
            neighbors[v].add(u)
        return tuple(frozenset(nbrs) for nbrs in neighbors)

    @functools.cached_property
    def nx_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        return graph

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, u: int) -> frozenset[int]:
        return self.adjacency[u]

    def degree(self, u: int, within: Collection[int] | None = None) -> int:
        if within is None:
            return len(self.adjacency[u])
        return sum(1 for v in self.adjacency[u] if v in within)

    @functools.cached_property
    def max_degree(self) -> int:
        return max((len(nbrs) for nbrs in self.adjacency), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def open_neighborhood(self, vertices: Iterable[int]) -> set[int]:
        result: set[int] = set()
        for u in vertices:
            result |= self.adjacency[u]
        return result

    def closed_neighborhood(self, vertices: Iterable[int]) -> set[int]:
        vertices = set(vertices)
        return self.open_neighborhood(vertices) | vertices


def check_vertices(g: Graph, vertices: Iterable[int]) -> frozenset[int]:
    vertices = frozenset(vertices)
    if outside := sorted(v for v in vertices if not 0 <= v < g.n):
        raise ValueError(f"vertices {outside} out of range for {g.n=}")
    return vertices


def components(g: Graph) -> list[frozenset[int]]:
    return sorted(
        (frozenset(component) for component in nx.connected_components(g.nx_graph)),
        key=min,
    )


def complement(g: Graph) -> Graph:
    return Graph.from_edges(g.n, nx.complement(g.nx_graph).edges)


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Return ``G[s]`` relabelled to ``0..|s|-1`` in increasing order of old label."""
    kept = sorted(check_vertices(g, s))
    index = {old: new for new, old in enumerate(kept)}
    edges = frozenset(
        (index[u], index[v]) for u, v in g.edges if u in index and v in index
    )
    return Graph(len(kept), edges), index


def delete_vertices(g: Graph, removed: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    removed = check_vertices(g, removed)
    return induced_subgraph(g, (v for v in g.vertices if v not in removed))


def connected_parts(
    adjacency: tuple[frozenset[int], ...],
    vertices: Collection[int],
    co: bool = False,
) -> list[frozenset[int]]:
    """
    Components of ``G[vertices]`` (or of its complement when ``co`` is set).

    Works on a vertex subset of a host graph without building the subgraph;
    the complement is never materialised, every unvisited vertex is either
    reached or charged to an edge.
    """
    unvisited = set(vertices)
    parts = []
    for start in sorted(vertices):
        if start not in unvisited:
            continue
        unvisited.discard(start)
        part = {start}
        frontier = [start]
        while frontier:
            u = frontier.pop()
            if co:
                reached = unvisited - adjacency[u]
            else:
                reached = unvisited & adjacency[u]
            unvisited -= reached
            part |= reached
            frontier.extend(reached)
        parts.append(frozenset(part))
    return parts


def _extend_induced_path(
    g: Graph, path: list[int], blocked: set[int], d: int
) -> list[int] | None:
    if len(path) == d:
        return path
    last = path[-1]
    # Candidates must not touch any path vertex but the last one.
    for w in sorted(g.adjacency[last] - blocked):
        found = _extend_induced_path(
            g, path + [w], blocked | g.adjacency[last] | {last}, d
        )
        if found is not None:
            return found
    return None


def find_induced_path(g: Graph, d: int) -> tuple[int, ...] | None:
    """Return ``d`` vertices forming an induced path, or ``None`` if ``g`` is P_d-free."""
    if d < 1:
        raise ValueError(f"{d=} must be at least 1")
    for start in g.vertices:
        found = _extend_induced_path(g, [start], {start}, d)
        if found is not None:
            return tuple(found)
    return None


def has_induced_path(g: Graph, d: int) -> bool:
    return find_induced_path(g, d) is not None


def is_split_partition(
    g: Graph, clique: Iterable[int], independent: Iterable[int]
) -> bool:
    clique, independent = set(clique), set(independent)
    if clique & independent or clique | independent != set(g.vertices):
        return False
    if any(u in independent and v in independent for u, v in g.edges):
        return False
    return all(len(g.adjacency[u] & clique) == len(clique) - 1 for u in clique)


def is_split_graph(g: Graph) -> bool:
    """Degree-sequence recognition of split graphs."""
    degrees = sorted((len(nbrs) for nbrs in g.adjacency), reverse=True)
    if not degrees:
        return True
    split = max(i for i, degree in enumerate(degrees, start=1) if degree >= i - 1)
    return sum(degrees[:split]) == split * (split - 1) + sum(degrees[split:])


def disjoint_union(graphs: Iterable[Graph]) -> Graph:
    offset = 0
    edges: set[Edge] = set()
    for g in graphs:
        edges.update((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph(offset, frozenset(edges))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n)))


def read_graph(lines: Iterable[str]) -> Graph:
    """
    Parse the ``p star <n> <m>`` / ``e <u> <v>`` format (1-based, ``c`` comments).
    """
    header: tuple[int, int] | None = None
    edges: set[Edge] = set()
    for lineno, line in enumerate(lines, start=1):
        fields = line.split()
        if not fields or fields[0] == "c":
            continue
        match fields:
            case ["p", "star", n, m]:
                if header is not None:
                    raise GraphFormatError(lineno, "duplicate problem line")
                header = (_parse_int(lineno, n), _parse_int(lineno, m))
            case ["e", u, v]:
                if header is None:
                    raise GraphFormatError(lineno, "edge before problem line")
                u_, v_ = _parse_int(lineno, u) - 1, _parse_int(lineno, v) - 1
                if not (0 <= u_ < header[0] and 0 <= v_ < header[0]):
                    raise GraphFormatError(lineno, f"edge {u} {v} out of range")
                if u_ == v_:
                    raise GraphFormatError(lineno, f"self-loop on {u}")
                edge = normalize_edge(u_, v_)
                if edge in edges:
                    raise GraphFormatError(lineno, f"duplicate edge {u} {v}")
                edges.add(edge)
            case _:
                raise GraphFormatError(lineno, f"unexpected line {line.strip()!r}")
    if header is None:
        raise GraphFormatError(0, "missing problem line")
    if len(edges) != header[1]:
        raise GraphFormatError(0, f"expected {header[1]} edges, found {len(edges)}")
    return Graph(header[0], frozenset(edges))


def write_graph(g: Graph) -> Iterator[str]:
    yield f"p star {g.n} {g.m}\n"
    for u, v in sorted(g.edges):
        yield f"e {u + 1} {v + 1}\n"


def _parse_int(lineno: int, token: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise GraphFormatError(lineno, f"{token!r} is not an integer") from None
    if value < 0:
        raise GraphFormatError(lineno, f"{token!r} is negative")
    return value
