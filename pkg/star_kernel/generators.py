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
"""Seeded generators for the instance families used by ``gen`` and ``bench``."""

import itertools
import random

from .graph import Edge, Graph
from .reduction3dm import ThreeDMInstance, Triple

JOIN_PROBABILITY = 0.5
EDGE_PROBABILITY = 0.3


def _shuffled(n: int, edges: list[Edge], rng: random.Random) -> Graph:
    labels = list(range(n))
    rng.shuffle(labels)
    return Graph.from_edges(n, ((labels[u], labels[v]) for u, v in edges))


def random_cograph(n: int, seed: int, join_probability: float = JOIN_PROBABILITY) -> Graph:
    """
    Split the vertex budget recursively, joining the two halves with
    probability ``join_probability`` and taking their disjoint union otherwise.
    """
    if n < 0:
        raise ValueError(f"{n=} must be non-negative")
    if not 0 <= join_probability <= 1:
        raise ValueError(f"{join_probability=} must be in [0, 1]")
    rng = random.Random(seed)
    edges: list[Edge] = []

    def build(first: int, size: int) -> None:
        if size <= 1:
            return
        left = rng.randint(1, size - 1)
        build(first, left)
        build(first + left, size - left)
        if rng.random() < join_probability:
            middle, last = first + left, first + size
            edges.extend(itertools.product(range(first, middle), range(middle, last)))

    build(0, n)
    return _shuffled(n, edges, rng)


def random_split(
    n: int, seed: int, clique_size: int | None = None, edge_probability: float = EDGE_PROBABILITY
) -> Graph:
    """Clique plus independent set with random edges between them."""
    if n < 0:
        raise ValueError(f"{n=} must be non-negative")
    if clique_size is None:
        clique_size = n // 3
    if not 0 <= clique_size <= n:
        raise ValueError(f"{clique_size=} must be in [0, {n}]")
    rng = random.Random(seed)
    clique = range(clique_size)
    edges: list[Edge] = list(itertools.combinations(clique, 2))
    edges.extend(
        (u, v)
        for u, v in itertools.product(clique, range(clique_size, n))
        if rng.random() < edge_probability
    )
    return _shuffled(n, edges, rng)


def random_stars(count: int, r: int, seed: int, noise: int = 0, d: int = 5) -> Graph:
    """
    ``count`` disjoint copies of ``K_{1,r}``; ``noise`` matching edges are
    added among the leaves of the first star unless ``d == 4``.
    """
    if count < 0:
        raise ValueError(f"{count=} must be non-negative")
    if r < 1:
        raise ValueError(f"{r=} must be at least 1")
    rng = random.Random(seed)
    edges: list[Edge] = []
    for index in range(count):
        center = index * (r + 1)
        edges.extend((center, center + leaf) for leaf in range(1, r + 1))
    if count and noise and d != 4:
        leaves = list(range(1, r + 1))
        rng.shuffle(leaves)
        pairs = list(zip(leaves[::2], leaves[1::2]))
        edges.extend(pairs[:noise])
    return _shuffled(count * (r + 1), edges, rng)


def random_3dm(k: int, m: int, seed: int, planted: bool = False) -> ThreeDMInstance:
    """``m`` distinct random triples; ``planted`` includes a perfect matching first."""
    if k < 1:
        raise ValueError(f"{k=} must be at least 1")
    if not k <= m <= k**3:
        raise ValueError(f"{m=} must be in [{k}, {k**3}]")
    rng = random.Random(seed)
    triples: list[Triple] = []
    if planted:
        second, third = list(range(1, k + 1)), list(range(1, k + 1))
        rng.shuffle(second)
        rng.shuffle(third)
        triples.extend(zip(range(1, k + 1), second, third))
    planted_set = set(triples)
    universe = [
        (i, j, l)
        for i, j, l in itertools.product(range(1, k + 1), repeat=3)  # noqa: E741
        if (i, j, l) not in planted_set
    ]
    triples.extend(rng.sample(universe, m - len(triples)))
    rng.shuffle(triples)
    return ThreeDMInstance.of(k, triples)
