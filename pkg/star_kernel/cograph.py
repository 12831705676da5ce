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
Exact maximum r-star packing in cographs (P_4-free graphs), r >= 3.

The solver recurses on the component / co-component structure: a connected
cograph with at least two vertices splits into two sides X, Y with every
X-Y edge present, and the answer follows from the side sizes plus a few
local queries on G[X] and G[Y].
"""

import dataclasses
import functools
import logging
import math
from collections.abc import Collection, Sequence
from fractions import Fraction

from . import graph, packing
from .graph import ContractError, Graph
from .packing import Star, StarPacking

Adjacency = tuple[frozenset[int], ...]


@dataclasses.dataclass(frozen=True)
class CoComponentSplit:
    """Nontrivial partition of a connected cograph with all cross edges present."""

    x_side: frozenset[int]
    y_side: frozenset[int]

    def check(self, adjacency: Adjacency) -> None:
        if not self.x_side or not self.y_side:
            raise ContractError("co-component split has an empty side")
        for x in self.x_side:
            if not self.y_side <= adjacency[x]:
                raise ContractError(f"vertex {x} misses cross edges of the split")


@dataclasses.dataclass(frozen=True)
class Case2Arithmetic:
    """Star counts for balanced sides: ``x <= r y`` and ``y <= r x``."""

    x: int
    y: int
    r: int

    def __post_init__(self) -> None:
        if self.x > self.r * self.y or self.y > self.r * self.x:
            raise ValueError(f"unbalanced sides {self.x=}, {self.y=} for {self.r=}")
        if self.a_floor < 0 or self.b_floor < 0:
            raise ContractError(f"negative star counts {self.a_floor=}, {self.b_floor=}")
        for name, slack, expected in (
            ("slack_y", self.slack_y, self.r * self.eps_a + self.eps_b),
            ("slack_x", self.slack_x, self.r * self.eps_b + self.eps_a),
        ):
            if slack < 0 or slack != expected:
                raise ContractError(f"{name}={slack} differs from {expected}")

    @functools.cached_property
    def a(self) -> Fraction:
        return Fraction(self.r * self.y - self.x, self.r**2 - 1)

    @functools.cached_property
    def b(self) -> Fraction:
        return Fraction(self.r * self.x - self.y, self.r**2 - 1)

    @property
    def a_floor(self) -> int:
        return math.floor(self.a)

    @property
    def b_floor(self) -> int:
        return math.floor(self.b)

    @property
    def eps_a(self) -> Fraction:
        return self.a - self.a_floor

    @property
    def eps_b(self) -> Fraction:
        return self.b - self.b_floor

    @property
    def slack_y(self) -> int:
        """Y vertices left over by the base cross stars."""
        return self.y - (self.r * self.a_floor + self.b_floor)

    @property
    def slack_x(self) -> int:
        return self.x - (self.r * self.b_floor + self.a_floor)

    @property
    def base(self) -> int:
        return self.a_floor + self.b_floor


def _check_cograph_parts(vertices: Collection[int], parts: Sequence[frozenset[int]]) -> None:
    if len(vertices) > 1 and len(parts) == 1:
        raise ContractError(
            f"G[{sorted(vertices)[:8]}...] is connected with a connected complement: "
            "not a cograph"
        )


def _is_cograph(adjacency: Adjacency, vertices: frozenset[int]) -> bool:
    pending = [vertices]
    while pending:
        current = pending.pop()
        if len(current) < 4:
            continue
        parts = graph.connected_parts(adjacency, current)
        if len(parts) == 1:
            parts = graph.connected_parts(adjacency, current, co=True)
            if len(parts) == 1:
                return False
        pending.extend(parts)
    return True


def is_cograph(g: Graph) -> bool:
    """
    True iff ``g`` has no induced P_4.

    Every induced subgraph of a cograph is disconnected or has a disconnected
    complement, and graphs on fewer than four vertices are cographs.
    """
    return _is_cograph(g.adjacency, frozenset(g.vertices))


def co_components(g: Graph) -> list[frozenset[int]]:
    """Components of the complement of ``g``, ordered by smallest vertex."""
    return graph.connected_parts(g.adjacency, g.vertices, co=True)


def _split(adjacency: Adjacency, vertices: frozenset[int]) -> CoComponentSplit:
    """Largest co-component against the union of the others."""
    parts = graph.connected_parts(adjacency, vertices, co=True)
    _check_cograph_parts(vertices, parts)
    largest = min(parts, key=lambda part: (-len(part), min(part)))
    split = CoComponentSplit(largest, vertices - largest)
    split.check(adjacency)
    return split


def _degree(adjacency: Adjacency, v: int, vertices: frozenset[int]) -> int:
    return len(adjacency[v] & vertices)


def _max_closed_neighborhood(
    adjacency: Adjacency, vertices: frozenset[int], s: int
) -> tuple[frozenset[int], int]:
    # Per component: a best first vertex adds m_i + 1 and a vertex on the
    # other side of its co-component split adds the remaining |C_i| - m_i - 1.
    gains: list[tuple[int, int, int, int | None]] = []
    for order, part in enumerate(graph.connected_parts(adjacency, vertices)):
        first = min(part, key=lambda v: (-_degree(adjacency, v, part), v))
        top = _degree(adjacency, first, part)
        second = None
        if len(part) > 1:
            co_parts = graph.connected_parts(adjacency, part, co=True)
            _check_cograph_parts(part, co_parts)
            own = next(p for p in co_parts if first in p)
            second = min(part - own)
        gains.append((top + 1, order, 0, first))
        gains.append((len(part) - top - 1, order, 1, second))

    size = min(s, len(vertices))
    chosen = sorted(gains, key=lambda gain: (-gain[0], gain[1], gain[2]))[:size]
    picked = {(order, rank) for _, order, rank, _ in chosen}
    if any(rank == 1 and (order, 0) not in picked for order, rank in picked):
        raise ContractError("second vertex of a component chosen before its first")
    selection = {vertex for *_, vertex in chosen if vertex is not None}
    for v in sorted(vertices - selection):
        if len(selection) == size:
            break
        selection.add(v)

    value = sum(gain for gain, *_ in chosen)
    covered = set(selection)
    for v in selection:
        covered |= adjacency[v] & vertices
    if len(covered) != value:
        raise ContractError(f"|N[S]|={len(covered)} differs from the computed {value}")
    return frozenset(selection), value


def max_closed_neighborhood(
    g: Graph, s: int, validate: bool = False
) -> tuple[frozenset[int], int]:
    """
    Choose ``min(s, n)`` vertices of the cograph ``g`` maximising ``|N[S]|``.

    Returns the set and the value.
    """
    if s < 0:
        raise ValueError(f"{s=} must be non-negative")
    if validate and not is_cograph(g):
        raise ContractError("max_closed_neighborhood requires a cograph")
    return _max_closed_neighborhood(g.adjacency, frozenset(g.vertices), s)


class _Builder:
    """Assemble stars from sorted pools of free X and Y vertices."""

    def __init__(self, x_free: Collection[int], y_free: Collection[int]) -> None:
        self.x_free = sorted(x_free)
        self.y_free = sorted(y_free)
        self.stars: list[Star] = []

    def take(self, pool: list[int], count: int) -> list[int]:
        if count > len(pool):
            raise ContractError(f"need {count} vertices, only {len(pool)} free")
        taken = pool[:count]
        del pool[:count]
        return taken

    def claim(self, vertices: Collection[int]) -> None:
        self.x_free = [v for v in self.x_free if v not in vertices]
        self.y_free = [v for v in self.y_free if v not in vertices]

    def cross(self, a: int, b: int, r: int) -> None:
        """a stars centered in X with leaves in Y, b centered in Y with leaves in X."""
        x_centers = self.take(self.x_free, a)
        y_centers = self.take(self.y_free, b)
        for center in x_centers:
            self.stars.append(Star.of(center, self.take(self.y_free, r)))
        for center in y_centers:
            self.stars.append(Star.of(center, self.take(self.x_free, r)))


def _solve_unbalanced(
    adjacency: Adjacency, big: frozenset[int], small: frozenset[int], r: int
) -> list[Star]:
    """``|big| > r |small|``: stars inside G[big] plus one star per small vertex."""
    inner = _solve(adjacency, big, r)
    used = frozenset().union(*(star.vertices for star in inner))
    free = sorted(big - used)
    shortfall = r * len(small) - len(free)
    broken = max(0, -(-shortfall // (r + 1)))
    kept = inner[: len(inner) - broken]
    pool = free + sorted(v for star in inner[len(inner) - broken :] for v in star.vertices)

    builder = _Builder(pool, small)
    for center in sorted(small):
        builder.stars.append(Star.of(center, builder.take(builder.x_free, r)))
    stars = kept + builder.stars

    n = len(big) + len(small)
    expected = min(len(inner) + len(small), n // (r + 1))
    if len(stars) != expected:
        raise ContractError(f"unbalanced case built {len(stars)} stars, expected {expected}")
    return stars


def _plus_one_via_center(
    adjacency: Adjacency,
    split: CoComponentSplit,
    arithmetic: Case2Arithmetic,
    r: int,
) -> list[Star] | None:
    """A side vertex with r neighbors on its own side carries the extra star."""
    for own, other, own_slack, other_slack in (
        (split.x_side, split.y_side, arithmetic.slack_x, arithmetic.slack_y),
        (split.y_side, split.x_side, arithmetic.slack_y, arithmetic.slack_x),
    ):
        for center in sorted(own):
            inside = sorted(adjacency[center] & own)
            if len(inside) < r:
                continue
            same_side = max(0, r - other_slack)
            if same_side > own_slack - 1:
                raise ContractError("extra star does not fit the slack")
            star = Star.of(center, inside[:same_side] + sorted(other)[: r - same_side])
            builder = _Builder(split.x_side, split.y_side)
            builder.claim(star.vertices)
            builder.cross(arithmetic.a_floor, arithmetic.b_floor, r)
            return [star, *builder.stars]
    return None


def _plus_one_via_neighborhood(
    adjacency: Adjacency,
    split: CoComponentSplit,
    arithmetic: Case2Arithmetic,
    r: int,
) -> list[Star] | None:
    """
    ``a'+1`` (or ``b'+1``) centers on one side whose closed neighborhood there
    leaves exactly enough room for one extra star.
    """
    a, b = arithmetic.a_floor, arithmetic.b_floor
    for own, centers_count, own_leaves in (
        (split.x_side, a + 1, r - arithmetic.slack_y),
        (split.y_side, b + 1, r - arithmetic.slack_x),
    ):
        if centers_count > len(own):
            continue
        centers, value = _max_closed_neighborhood(adjacency, own, centers_count)
        if value < centers_count + own_leaves:
            continue

        other = split.y_side if own is split.x_side else split.x_side
        leaves: dict[int, list[int]] = {center: [] for center in centers}
        for v in sorted(set().union(*(adjacency[c] & own for c in centers)) - centers):
            if own_leaves == 0:
                break
            owner = min(c for c in centers if v in adjacency[c])
            leaves[owner].append(v)
            own_leaves -= 1
        if own_leaves:
            raise ContractError("closed neighborhood too small for the extra star")

        other_free = sorted(other)
        stars = []
        for center in sorted(centers):
            if len(leaves[center]) >= r:
                raise ContractError(f"vertex {center} has r neighbors on its own side")
            padding = r - len(leaves[center])
            stars.append(Star.of(center, leaves[center] + other_free[:padding]))
            del other_free[:padding]

        own_used = set(centers).union(*leaves.values())
        own_free = sorted(own - own_used)
        for center in other_free:
            if len(own_free) < r:
                break
            stars.append(Star.of(center, own_free[:r]))
            del own_free[:r]
        return stars
    return None


def _solve_balanced(
    adjacency: Adjacency, split: CoComponentSplit, r: int
) -> list[Star]:
    x_side, y_side = split.x_side, split.y_side
    arithmetic = Case2Arithmetic(len(x_side), len(y_side), r)
    logging.debug(
        f"balanced split x={arithmetic.x} y={arithmetic.y}: a'={arithmetic.a_floor}"
        f" b'={arithmetic.b_floor} slack_x={arithmetic.slack_x} slack_y={arithmetic.slack_y}"
    )

    if arithmetic.slack_x + arithmetic.slack_y >= r + 1:
        stars = _plus_one_via_center(adjacency, split, arithmetic, r)
        if stars is None:
            stars = _plus_one_via_neighborhood(adjacency, split, arithmetic, r)
        if stars is not None:
            if len(stars) != arithmetic.base + 1:
                raise ContractError(
                    f"extra-star construction built {len(stars)} stars,"
                    f" expected {arithmetic.base + 1}"
                )
            return stars

    builder = _Builder(x_side, y_side)
    builder.cross(arithmetic.a_floor, arithmetic.b_floor, r)
    if len(builder.x_free) != arithmetic.slack_x or len(builder.y_free) != arithmetic.slack_y:
        raise ContractError("cross stars do not leave the expected slack")
    return builder.stars


def _solve(adjacency: Adjacency, vertices: frozenset[int], r: int) -> list[Star]:
    if len(vertices) < r + 1:
        return []
    parts = graph.connected_parts(adjacency, vertices)
    if len(parts) > 1:
        return [star for part in parts for star in _solve(adjacency, part, r)]

    split = _split(adjacency, vertices)
    x, y = len(split.x_side), len(split.y_side)
    if x > r * y:
        return _solve_unbalanced(adjacency, split.x_side, split.y_side, r)
    if y > r * x:
        return _solve_unbalanced(adjacency, split.y_side, split.x_side, r)
    return _solve_balanced(adjacency, split, r)


def solve_cograph(g: Graph, r: int, validate: bool = False) -> tuple[int, StarPacking]:
    """
    Maximum number of vertex-disjoint r-stars of the cograph ``g`` with a witness.

    With ``validate`` the input is checked to be a cograph first; otherwise a
    non-cograph is only detected where the recursion meets it.
    """
    if r < 3:
        raise ValueError(f"{r=} must be at least 3")
    if validate and not is_cograph(g):
        raise ContractError("solve_cograph requires a cograph")
    witness = StarPacking(tuple(_solve(g.adjacency, frozenset(g.vertices), r)))
    if not packing.validate_packing(g, witness, r):
        raise ContractError("cograph solver built an invalid packing")
    return len(witness), witness
