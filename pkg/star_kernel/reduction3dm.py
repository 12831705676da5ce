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
"""
Split-graph gadgets for 3-dimensional matching.

The vertex set of the gadget partitions into r-stars exactly when the 3DM
instance has a perfect matching. Vertices are laid out in contiguous blocks
``V1, V2, V3, X1, X2, Y, W``.
"""

import dataclasses
import functools
from collections.abc import Iterable, Iterator
from typing import Literal

from . import graph, packing
from .graph import ContractError, Graph

Role = Literal["V1", "V2", "V3", "X1", "X2", "Y", "W"]
Triple = tuple[int, int, int]


@dataclasses.dataclass(frozen=True)
class ThreeDMInstance:
    """
    Parameters
    ----------
    k: size of each partite set
    triples: ``(i, j, l)`` with every coordinate in ``1..k``
    """

    k: int
    triples: tuple[Triple, ...]

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"{self.k=} must be at least 1")
        for triple in self.triples:
            if len(triple) != 3 or not all(1 <= c <= self.k for c in triple):
                raise ValueError(f"triple {triple} out of range for {self.k=}")
        if len(set(self.triples)) != len(self.triples):
            raise ValueError("duplicate triples")

    @classmethod
    def of(cls, k: int, triples: Iterable[Triple]) -> "ThreeDMInstance":
        return cls(k, tuple(triples))

    @property
    def m(self) -> int:
        return len(self.triples)


@dataclasses.dataclass(frozen=True)
class GadgetGraph:
    graph: Graph
    labels: tuple[Role, ...]
    triple_of: dict[int, Triple]

    def role(self, role: Role) -> frozenset[int]:
        return frozenset(v for v, label in enumerate(self.labels) if label == role)

    @functools.cached_property
    def clique(self) -> frozenset[int]:
        return self.role("X1") | self.role("X2")

    @functools.cached_property
    def independent(self) -> frozenset[int]:
        return frozenset(self.graph.vertices) - self.clique


def reduce_3dm(inst: ThreeDMInstance, r: int) -> GadgetGraph:
    if r < 3:
        raise ValueError(f"{r=} must be at least 3")
    k, m = inst.k, inst.m
    if m < k:
        raise ValueError(f"{m=} triples cannot cover partite sets of size {k=}")

    sizes: list[tuple[Role, int]] = [
        ("V1", k),
        ("V2", k),
        ("V3", k),
        ("X1", m),
        ("X2", m - k),
        ("Y", (m - k) * (r - 1)),
        ("W", k * (r - 3)),
    ]
    labels: list[Role] = []
    start: dict[Role, int] = {}
    for role, size in sizes:
        start[role] = len(labels)
        labels.extend([role] * size)
    n = len(labels)

    x_side = range(start["X1"], start["Y"])
    w_side = range(start["W"], n)
    edges: list[tuple[int, int]] = [(u, v) for u in x_side for v in x_side if u < v]
    triple_of = {}
    for index, (i, j, l) in enumerate(inst.triples):  # noqa: E741
        x = start["X1"] + index
        triple_of[x] = (i, j, l)
        edges += [
            (x, start["V1"] + i - 1),
            (x, start["V2"] + j - 1),
            (x, start["V3"] + l - 1),
        ]
        edges += [(x, w) for w in w_side]
    for index in range(m - k):
        first = start["Y"] + index * (r - 1)
        edges += [(start["X2"] + index, y) for y in range(first, first + r - 1)]

    return GadgetGraph(Graph.from_edges(n, edges), tuple(labels), triple_of)


def verify_gadget(gadget: GadgetGraph, inst: ThreeDMInstance, r: int) -> None:
    """Raise ``ContractError`` unless every structural property of the gadget holds."""
    g = gadget.graph
    if g.n != inst.m * (r + 1):
        raise ContractError(f"gadget has {g.n} vertices, expected m(r+1)={inst.m * (r + 1)}")
    if not graph.is_split_partition(g, gadget.clique, gadget.independent):
        raise ContractError("X is not a clique or V | Y | W is not independent")
    if not graph.is_split_graph(g):
        raise ContractError("gadget is not recognised as a split graph")
    if bad := sorted(y for y in gadget.role("Y") if g.degree(y) != 1):
        raise ContractError(f"Y vertices {bad} do not have degree one")
    if (path := graph.find_induced_path(g, 5)) is not None:
        raise ContractError(f"gadget has an induced P_5: {path}")


def has_perfect_matching_3dm(inst: ThreeDMInstance) -> bool:
    """Backtrack over the smallest uncovered element of V1."""
    by_first: dict[int, list[Triple]] = {}
    for triple in inst.triples:
        by_first.setdefault(triple[0], []).append(triple)

    def search(i: int, used_j: frozenset[int], used_l: frozenset[int]) -> bool:
        if i > inst.k:
            return True
        return any(
            search(i + 1, used_j | {j}, used_l | {l})
            for _, j, l in by_first.get(i, [])  # noqa: E741
            if j not in used_j and l not in used_l
        )

    return search(1, frozenset(), frozenset())


def has_perfect_star_partition(g: Graph, r: int) -> bool:
    return packing.perfect_star_partition(g, r) is not None


def read_3dm(lines: Iterable[str]) -> ThreeDMInstance:
    """Parse ``p 3dm <k> <m>`` followed by ``t <i> <j> <l>`` lines."""
    header: tuple[int, int] | None = None
    triples: list[Triple] = []
    for lineno, line in enumerate(lines, start=1):
        fields = line.split()
        if not fields or fields[0] == "c":
            continue
        match fields:
            case ["p", "3dm", k, m]:
                if header is not None:
                    raise graph.GraphFormatError(lineno, "duplicate problem line")
                header = (_parse_int(lineno, k), _parse_int(lineno, m))
            case ["t", i, j, l]:
                if header is None:
                    raise graph.GraphFormatError(lineno, "triple before problem line")
                triple = (_parse_int(lineno, i), _parse_int(lineno, j), _parse_int(lineno, l))
                if not all(1 <= c <= header[0] for c in triple):
                    raise graph.GraphFormatError(lineno, f"triple {i} {j} {l} out of range")
                if triple in triples:
                    raise graph.GraphFormatError(lineno, f"duplicate triple {i} {j} {l}")
                triples.append(triple)
            case _:
                raise graph.GraphFormatError(lineno, f"unexpected line {line.strip()!r}")
    if header is None:
        raise graph.GraphFormatError(0, "missing problem line")
    if len(triples) != header[1]:
        raise graph.GraphFormatError(0, f"expected {header[1]} triples, found {len(triples)}")
    return ThreeDMInstance(header[0], tuple(triples))


def write_3dm(inst: ThreeDMInstance) -> Iterator[str]:
    yield f"p 3dm {inst.k} {inst.m}\n"
    for i, j, l in inst.triples:  # noqa: E741
        yield f"t {i} {j} {l}\n"


def _parse_int(lineno: int, token: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise graph.GraphFormatError(lineno, f"{token!r} is not an integer") from None
