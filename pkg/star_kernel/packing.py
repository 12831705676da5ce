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
"""Vertex-disjoint r-star packings: validation, greedy, and exact search."""

import dataclasses
import itertools
from collections.abc import Iterable, Iterator

from . import graph
from .graph import Graph


@dataclasses.dataclass(frozen=True)
class Star:
    center: int
    leaves: frozenset[int]

    @property
    def vertices(self) -> frozenset[int]:
        return self.leaves | {self.center}

    @classmethod
    def of(cls, center: int, leaves: Iterable[int]) -> "Star":
        return cls(center, frozenset(leaves))


@dataclasses.dataclass(frozen=True)
class StarPacking:
    stars: tuple[Star, ...] = ()

    def __len__(self) -> int:
        return len(self.stars)

    def __iter__(self) -> Iterator[Star]:
        return iter(self.stars)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset().union(*(star.vertices for star in self.stars))

    def relabel(self, mapping: dict[int, int]) -> "StarPacking":
        return StarPacking(
            tuple(
                Star.of(mapping[star.center], (mapping[v] for v in star.leaves))
                for star in self.stars
            )
        )


def validate_packing(g: Graph, p: StarPacking, r: int) -> bool:
    used: set[int] = set()
    for star in p:
        if len(star.leaves) != r or star.center in star.leaves:
            return False
        if not all(0 <= v < g.n for v in star.vertices):
            return False
        if not star.leaves <= g.adjacency[star.center]:
            return False
        if used & star.vertices:
            return False
        used |= star.vertices
    return True


def greedy_maximal_packing(g: Graph, r: int) -> StarPacking:
    """
    Maximal packing: scan vertices in increasing order, make a vertex with at
    least r unused neighbors a center and give it its r smallest ones.

    Unused-neighbor counts only decrease, so a single pass is maximal.
    """
    if r < 1:
        raise ValueError(f"{r=} must be at least 1")
    used: set[int] = set()
    stars = []
    for v in g.vertices:
        if v in used:
            continue
        free = sorted(g.adjacency[v] - used)
        if len(free) >= r:
            star = Star.of(v, free[:r])
            stars.append(star)
            used |= star.vertices
    return StarPacking(tuple(stars))


def star_through(g: Graph, l: Iterable[int], r: int) -> Star | None:
    """
    Return an r-star of ``g`` using a vertex of ``l``, or ``None``.

    Such a star exists iff some vertex of ``l`` or of ``N(l)`` has degree at least r.
    """
    l = graph.check_vertices(g, l)
    for v in sorted(l):
        if g.degree(v) >= r:
            return Star.of(v, sorted(g.adjacency[v])[:r])
    for v in sorted(g.open_neighborhood(l) - l):
        if g.degree(v) >= r:
            leaf = min(g.adjacency[v] & l)
            others = sorted(g.adjacency[v] - {leaf})[: r - 1]
            return Star.of(v, [leaf, *others])
    return None


def star_exists_intersecting(g: Graph, l: Iterable[int], r: int) -> bool:
    return star_through(g, l, r) is not None


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _StarSearch:
    """Memoised exhaustive search over sets of still-free vertices (bitmasks)."""

    def __init__(self, g: Graph, r: int) -> None:
        self.r = r
        self.masks = [sum(1 << w for w in nbrs) for nbrs in g.adjacency]
        # Per-search memo tables, keyed by the bitmask of free vertices.
        self.best_memo: dict[int, tuple[int, tuple[int, ...]]] = {}
        self.cover_memo: dict[int, tuple[int, ...] | None] = {}

    def stars_containing(self, v: int, free: int) -> Iterator[int]:
        """Bitmasks of r-stars inside ``free`` that use ``v``, v as center first."""
        r = self.r
        v_bit = 1 << v
        candidates = list(_bits(self.masks[v] & free))
        for leaves in itertools.combinations(candidates, r):
            yield v_bit | sum(1 << w for w in leaves)
        for center in candidates:
            others = list(_bits(self.masks[center] & free & ~v_bit))
            for leaves in itertools.combinations(others, r - 1):
                yield v_bit | (1 << center) | sum(1 << w for w in leaves)

    def eligible(self, free: int) -> int:
        """Drop free vertices that cannot belong to any star inside ``free``."""
        r = self.r
        heavy = 0
        for v in _bits(free):
            if (self.masks[v] & free).bit_count() >= r:
                heavy |= 1 << v
        keep = heavy
        for v in _bits(heavy):
            keep |= self.masks[v] & free
        return keep

    def best(self, free: int) -> tuple[int, tuple[int, ...]]:
        free = self.eligible(free)
        if (known := self.best_memo.get(free)) is not None:
            return known
        result = self._best(free)
        self.best_memo[free] = result
        return result

    def _best(self, free: int) -> tuple[int, tuple[int, ...]]:
        if not free:
            return 0, ()
        bound = free.bit_count() // (self.r + 1)
        v = (free & -free).bit_length() - 1
        best_count = 0
        best_stars: tuple[int, ...] = ()
        for star in self.stars_containing(v, free):
            count, stars = self.best(free & ~star)
            if count + 1 > best_count:
                best_count, best_stars = count + 1, (star, *stars)
                if best_count == bound:
                    return best_count, best_stars
        count, stars = self.best(free & ~(1 << v))
        if count > best_count:
            best_count, best_stars = count, stars
        return best_count, best_stars

    def cover(self, free: int) -> tuple[int, ...] | None:
        """Partition ``free`` into r-stars, branching on its most constrained vertex."""
        if free not in self.cover_memo:
            self.cover_memo[free] = self._cover(free)
        return self.cover_memo[free]

    def _cover(self, free: int) -> tuple[int, ...] | None:
        if not free:
            return ()
        degrees = {v: (self.masks[v] & free).bit_count() for v in _bits(free)}
        for v, degree in degrees.items():
            if degree < self.r and not any(
                degrees[w] >= self.r for w in _bits(self.masks[v] & free)
            ):
                return None
        v = min(degrees, key=lambda u: (degrees[u], u))
        for star in self.stars_containing(v, free):
            rest = self.cover(free & ~star)
            if rest is not None:
                return (star, *rest)
        return None

    def to_star(self, star: int) -> Star:
        vertices = list(_bits(star))
        for center in vertices:
            leaves = star & ~(1 << center)
            if leaves & self.masks[center] == leaves:
                return Star.of(center, _bits(leaves))
        raise graph.ContractError(f"{vertices} do not form a star")


def optimal_packing(g: Graph, r: int) -> tuple[int, StarPacking]:
    """
    Maximum number of vertex-disjoint r-stars by exhaustive search.

    Exponential: meant for graphs with at most about 20 vertices.
    """
    if r < 1:
        raise ValueError(f"{r=} must be at least 1")
    search = _StarSearch(g, r)
    count, stars = search.best((1 << g.n) - 1)
    witness = StarPacking(tuple(search.to_star(star) for star in stars))
    return count, witness


def perfect_star_partition(g: Graph, r: int) -> StarPacking | None:
    if r < 1:
        raise ValueError(f"{r=} must be at least 1")
    if g.n % (r + 1):
        return None
    search = _StarSearch(g, r)
    stars = search.cover((1 << g.n) - 1)
    if stars is None:
        return None
    return StarPacking(tuple(search.to_star(star) for star in stars))


def read_packing(lines: Iterable[str]) -> StarPacking:
    stars = []
    for lineno, line in enumerate(lines, start=1):
        fields = line.split()
        if not fields or fields[0] == "c":
            continue
        if fields[0] != "s" or len(fields) < 3:
            raise graph.GraphFormatError(lineno, f"unexpected line {line.strip()!r}")
        try:
            center, *leaves = (int(token) - 1 for token in fields[1:])
        except ValueError:
            raise graph.GraphFormatError(lineno, "star vertices must be integers") from None
        stars.append(Star.of(center, leaves))
    return StarPacking(tuple(stars))


def write_packing(p: StarPacking) -> Iterator[str]:
    for star in p:
        leaves = " ".join(str(v + 1) for v in sorted(star.leaves))
        yield f"s {star.center + 1} {leaves}\n"
