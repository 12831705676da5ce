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
"""Bipartite matchings and r-expansions between two disjoint vertex sets."""

import collections
import dataclasses
import functools
from collections.abc import Iterable
from typing import Any

import networkx as nx

from . import graph
from .graph import ContractError, Graph
from .packing import Star, StarPacking


@dataclasses.dataclass(frozen=True)
class BipartiteView:
    """Edges of ``host`` between ``x_side`` and ``y_side``; edges inside a side are ignored."""

    host: Graph
    x_side: frozenset[int]
    y_side: frozenset[int]

    def __post_init__(self) -> None:
        graph.check_vertices(self.host, self.x_side | self.y_side)
        if common := self.x_side & self.y_side:
            raise ValueError(f"sides share vertices {sorted(common)}")

    @classmethod
    def of(cls, host: Graph, x_side: Iterable[int], y_side: Iterable[int]) -> "BipartiteView":
        return cls(host, frozenset(x_side), frozenset(y_side))

    def x_neighbors(self, x: int) -> frozenset[int]:
        return self.host.adjacency[x] & self.y_side

    def y_neighbors(self, y: int) -> frozenset[int]:
        return self.host.adjacency[y] & self.x_side

    @functools.cached_property
    def isolated_y(self) -> frozenset[int]:
        return frozenset(y for y in self.y_side if not self.y_neighbors(y))

    def replicated(self, r: int) -> nx.Graph:
        """Bipartite graph with every X vertex cloned r times as ``(x, i)``."""
        cloned = nx.Graph()
        cloned.add_nodes_from((x, i) for x in self.x_side for i in range(r))
        cloned.add_nodes_from(self.y_side)
        cloned.add_edges_from(
            ((x, i), y)
            for x in self.x_side
            for y in self.x_neighbors(x)
            for i in range(r)
        )
        return cloned


@dataclasses.dataclass(frozen=True)
class Expansion:
    s: frozenset[int]
    t: frozenset[int]
    stars: StarPacking


@dataclasses.dataclass(frozen=True)
class ExpansionPartition:
    a1: frozenset[int]
    b1: frozenset[int]
    a2: frozenset[int]
    b2: frozenset[int]
    witness_stars: StarPacking
    iterations: int = 0


def _replicated_matching(bv: BipartiteView, r: int) -> dict[Any, Any]:
    cloned = bv.replicated(r)
    top = [(x, i) for x in sorted(bv.x_side) for i in range(r)]
    matching: dict[Any, Any] = nx.bipartite.hopcroft_karp_matching(
        cloned, top_nodes=top
    )
    return matching


def max_matching(bv: BipartiteView) -> frozenset[tuple[int, int]]:
    """Maximum matching as ``(x, y)`` pairs."""
    matching = _replicated_matching(bv, 1)
    return frozenset(
        (clone[0], y) for clone, y in matching.items() if isinstance(clone, tuple)
    )


def star_assignment(bv: BipartiteView, r: int) -> StarPacking | None:
    """Give every X vertex r private leaves in Y, if possible."""
    matching = _replicated_matching(bv, r)
    stars = []
    for x in sorted(bv.x_side):
        leaves = [matching.get((x, i)) for i in range(r)]
        if None in leaves:
            return None
        stars.append(Star.of(x, leaves))
    return StarPacking(tuple(stars))


def _check_expansion(bv: BipartiteView, r: int, found: Expansion) -> None:
    if not found.s or not found.t:
        raise ContractError(f"empty expansion {found}")
    if outside := set().union(*(bv.y_neighbors(y) for y in found.t)) - found.s:
        raise ContractError(f"T has neighbors {sorted(outside)} outside S")
    if {star.center for star in found.stars} != found.s:
        raise ContractError("star centers differ from S")
    if not all(star.leaves <= found.t for star in found.stars):
        raise ContractError("star leaves outside T")
    if not packing_is_disjoint(found.stars, r):
        raise ContractError("expansion stars overlap")


def packing_is_disjoint(stars: StarPacking, r: int) -> bool:
    return len(stars.vertices) == (r + 1) * len(stars)


def expansion(bv: BipartiteView, r: int) -> Expansion:
    """
    Nonempty ``S`` in X and ``T`` in Y with ``|S|`` r-stars from S into T and
    ``N(T)`` inside S.

    Requires ``|Y| > r m`` (m the maximum matching size) and no isolated Y
    vertex. After an r-fold replication of X, T is the set of Y vertices
    reachable from unmatched Y vertices by alternating paths and S the X
    vertices whose clones are reached.
    """
    if r < 1:
        raise ValueError(f"{r=} must be at least 1")
    if bv.isolated_y:
        raise ValueError(f"isolated Y vertices {sorted(bv.isolated_y)}")
    m = len(max_matching(bv))
    if len(bv.y_side) <= r * m:
        raise ValueError(f"|Y|={len(bv.y_side)} is not larger than r*m={r * m}")

    mate = _replicated_matching(bv, r)
    reached_y = {y for y in bv.y_side if y not in mate}
    reached_clones: set[tuple[int, int]] = set()
    queue = collections.deque(sorted(reached_y))
    while queue:
        y = queue.popleft()
        for x in sorted(bv.y_neighbors(y)):
            for i in range(r):
                clone = (x, i)
                if clone in reached_clones or mate.get(y) == clone:
                    continue
                reached_clones.add(clone)
                if (partner := mate.get(clone)) is None:
                    raise ContractError(f"augmenting path ends at {clone}")
                if partner not in reached_y:
                    reached_y.add(partner)
                    queue.append(partner)

    s = frozenset(x for x, _ in reached_clones)
    if len(reached_clones) != r * len(s):
        raise ContractError("clones of an X vertex were reached only partially")
    stars = StarPacking(
        tuple(Star.of(x, (mate[(x, i)] for i in range(r))) for x in sorted(s))
    )
    found = Expansion(s, frozenset(reached_y), stars)
    _check_expansion(bv, r, found)
    return found


def modified_expansion(bv: BipartiteView, r: int) -> ExpansionPartition:
    """
    Partition X into ``A1 | B1`` and Y into ``A2 | B2`` such that B1 has
    ``|B1|`` r-stars in B2, there is no edge between A1 and B2, and
    ``|A2| <= r |A1|``.
    """
    if r < 1:
        raise ValueError(f"{r=} must be at least 1")
    if bv.isolated_y:
        raise ValueError(f"isolated Y vertices {sorted(bv.isolated_y)}")

    x_side, y_side = set(bv.x_side), set(bv.y_side)
    b1: set[int] = set()
    b2: set[int] = set()
    stars: list[Star] = []
    iterations = 0
    while True:
        view = BipartiteView.of(bv.host, x_side, y_side)
        if len(y_side) <= r * len(max_matching(view)):
            break
        found = expansion(view, r)
        iterations += 1
        x_side -= found.s
        y_side -= found.t
        b1 |= found.s
        b2 |= found.t
        stars.extend(found.stars)
        isolated = {y for y in y_side if not bv.host.adjacency[y] & x_side}
        y_side -= isolated
        b2 |= isolated
        if len(y_side) <= r * len(x_side):
            break

    partition = ExpansionPartition(
        a1=frozenset(x_side),
        b1=frozenset(b1),
        a2=frozenset(y_side),
        b2=frozenset(b2),
        witness_stars=StarPacking(tuple(stars)),
        iterations=iterations,
    )
    _check_partition(bv, r, partition)
    return partition


def _check_partition(bv: BipartiteView, r: int, p: ExpansionPartition) -> None:
    if p.a1 | p.b1 != bv.x_side or p.a1 & p.b1:
        raise ContractError("A1, B1 do not partition X")
    if p.a2 | p.b2 != bv.y_side or p.a2 & p.b2:
        raise ContractError("A2, B2 do not partition Y")
    if any(bv.x_neighbors(x) & p.b2 for x in p.a1):
        raise ContractError("edge between A1 and B2")
    if len(p.a2) > r * len(p.a1):
        raise ContractError(f"|A2|={len(p.a2)} exceeds r|A1|={r * len(p.a1)}")
    if {star.center for star in p.witness_stars} != p.b1:
        raise ContractError("witness centers differ from B1")
    if not all(star.leaves <= p.b2 for star in p.witness_stars):
        raise ContractError("witness leaves outside B2")
    if not packing_is_disjoint(p.witness_stars, r):
        raise ContractError("witness stars overlap")
