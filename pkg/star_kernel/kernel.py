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
"""Reduction rules and the linear-vertex kernel for r-star packing in P_d-free graphs."""

import dataclasses
import logging
from collections.abc import Iterable, Iterator
from typing import Literal

from . import expansion, graph, packing
from .graph import ContractError, Graph
from .packing import StarPacking

StepType = Literal[
    "simplify", "move-small-degree", "move-expansion", "constellation", "terminate"
]
Outcome = Literal["kernel", "yes", "no"]

ORACLE_LIMIT = 24


@dataclasses.dataclass(frozen=True)
class PackingInstance:
    g: Graph
    k: int
    r: int
    d: int

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValueError(f"{self.k=} must be non-negative")
        if self.r < 2:
            raise ValueError(f"{self.r=} must be at least 2")
        if self.d < 3:
            raise ValueError(f"{self.d=} must be at least 3")

    @property
    def bound(self) -> int:
        """Vertex bound ``(k-1)(r+1)(r^(d+1)+1)`` of the kernel."""
        return max(self.k - 1, 0) * (self.r + 1) * (self.r ** (self.d + 1) + 1)


@dataclasses.dataclass(frozen=True)
class Constellation:
    c: frozenset[int]
    l: frozenset[int]  # noqa: E741
    witness: StarPacking | None = None

    @classmethod
    def of(
        cls, c: Iterable[int], l: Iterable[int], witness: StarPacking | None = None  # noqa: E741
    ) -> "Constellation":
        return cls(frozenset(c), frozenset(l), witness)


@dataclasses.dataclass(frozen=True)
class TraceRecord:
    step: StepType
    removed: int = 0
    k_delta: int = 0
    big: int = 0
    small: int = 0
    b_d: int = 0
    u_d: int = 0
    n: int = 0
    k: int = 0
    outcome: Outcome | None = None

    def to_line(self) -> str:
        fields = dataclasses.asdict(self)
        return " ".join(f"{key}={value}" for key, value in fields.items() if value is not None)


@dataclasses.dataclass
class KernelState:
    """Partition of the packed vertices S into Big/Small and of D into B/U."""

    big_s: set[int]
    small_s: set[int]
    b_d: set[int]
    u_d: set[int]
    k_current: int
    trace: list[TraceRecord] = dataclasses.field(default_factory=list)

    def record(
        self,
        step: StepType,
        n: int,
        removed: int = 0,
        k_delta: int = 0,
        outcome: Outcome | None = None,
    ) -> None:
        record = TraceRecord(
            step=step,
            removed=removed,
            k_delta=k_delta,
            big=len(self.big_s),
            small=len(self.small_s),
            b_d=len(self.b_d),
            u_d=len(self.u_d),
            n=n,
            k=self.k_current,
            outcome=outcome,
        )
        logging.debug(record.to_line())
        self.trace.append(record)

    def check(self, g: Graph, r: int, d: int) -> None:
        if len(self.b_d) > r ** (d + 1) * len(self.small_s):
            raise ContractError(
                f"|B(D)|={len(self.b_d)} exceeds r^(d+1)|Small(S)|"
                f"={r ** (d + 1) * len(self.small_s)}"
            )
        if touching := g.open_neighborhood(self.u_d) & (self.small_s | self.b_d):
            raise ContractError(f"U(D) is adjacent to {sorted(touching)}")


def is_small(g: Graph, u: int, r: int) -> bool:
    return all(g.degree(v) < r for v in g.adjacency[u] | {u})


def simplify(inst: PackingInstance) -> PackingInstance:
    """Delete small vertices until none is left."""
    g = inst.g
    while small := [u for u in g.vertices if is_small(g, u, inst.r)]:
        g, _ = graph.delete_vertices(g, small)
    return dataclasses.replace(inst, g=g)


@dataclasses.dataclass(frozen=True)
class Refutation:
    """Why a candidate failed; ``decided`` is false when the search was cut off."""

    reason: str
    decided: bool = True

    def __str__(self) -> str:
        return self.reason if self.decided else f"undecided: {self.reason}"


def _search_witness(
    g: Graph, c: frozenset[int], union: frozenset[int], r: int
) -> StarPacking | Refutation:
    # Once no r-star of G - C meets L, every star of G[C | L] holds a C vertex,
    # so only vertices within distance two of C can take part.
    first = g.open_neighborhood(c) & union
    near = c | first | (g.open_neighborhood(first) & union)
    sub, index = graph.induced_subgraph(g, near)
    if sub.n > ORACLE_LIMIT:
        return Refutation(
            f"no {len(c)} stars of C into L and {sub.n} candidate vertices are too many to search",
            decided=False,
        )
    count, found = packing.optimal_packing(sub, r)
    if count < len(c):
        return Refutation(f"G[C | L] packs only {count} of {len(c)} stars")
    inverse = {new: old for old, new in index.items()}
    return found.relabel(inverse)


def is_constellation(
    g: Graph,
    c: Iterable[int],
    l: Iterable[int],  # noqa: E741
    r: int,
    witness: StarPacking | None = None,
) -> tuple[bool, StarPacking | Refutation]:
    """
    Check that ``G[C | L]`` packs ``|C|`` r-stars and no r-star of ``G - C`` meets L.

    Return the star witness, or a ``Refutation``. Without a witness, stars of C
    into L are tried first and an exhaustive search second; when that search
    would exceed ``ORACLE_LIMIT`` vertices the refutation is not ``decided``.
    """
    c, l = graph.check_vertices(g, c), graph.check_vertices(g, l)  # noqa: E741
    if common := c & l:
        raise ValueError(f"C and L share vertices {sorted(common)}")

    union = c | l
    if witness is not None:
        if len(witness) < len(c):
            return False, Refutation(f"witness has {len(witness)} stars, {len(c)} required")
        if not witness.vertices <= union or not packing.validate_packing(g, witness, r):
            return False, Refutation("witness is not a packing inside C | L")

    rest, index = graph.delete_vertices(g, c)
    star = packing.star_through(rest, (index[v] for v in l), r)
    if star is not None:
        inverse = {new: old for old, new in index.items()}
        center = inverse[star.center]
        return False, Refutation(f"G - C has an r-star centered at {center} meeting L")

    if witness is None:
        witness = expansion.star_assignment(expansion.BipartiteView(g, c, l), r)
    if witness is None:
        found = _search_witness(g, c, union, r)
        if isinstance(found, Refutation):
            return False, found
        witness = found
    return True, witness


def apply_constellation(inst: PackingInstance, con: Constellation) -> PackingInstance:
    ok, evidence = is_constellation(inst.g, con.c, con.l, inst.r, con.witness)
    if not ok:
        raise ContractError(f"not a constellation: {evidence}")
    g, _ = graph.delete_vertices(inst.g, con.c | con.l)
    # A negative parameter asks for no star at all.
    return dataclasses.replace(inst, g=g, k=max(inst.k - len(con.c), 0))


def canonical_yes(inst: PackingInstance) -> PackingInstance:
    """k disjoint copies of K_{r+1}: a yes-instance without induced P_3."""
    g = graph.disjoint_union(graph.complete_graph(inst.r + 1) for _ in range(inst.k))
    return dataclasses.replace(inst, g=g)


def canonical_no(inst: PackingInstance) -> PackingInstance:
    return dataclasses.replace(inst, g=Graph(0))


def d_components(g: Graph, d_vertices: set[int], r: int, d: int) -> dict[int, frozenset[int]]:
    """Map every vertex of D to its component in ``G[D]``."""
    component_of = {}
    for part in graph.connected_parts(g.adjacency, d_vertices):
        if len(part) > r**d:
            raise ContractError(
                f"component of G[D] containing {min(part)} has {len(part)} > r^d"
                f"={r**d} vertices: the input has an induced P_{d}"
            )
        for v in part:
            component_of[v] = part
    return component_of


def _closure(
    g: Graph, sources: Iterable[int], state: KernelState, component_of: dict[int, frozenset[int]]
) -> set[int]:
    closure: set[int] = set()
    for v in g.open_neighborhood(sources) & state.u_d:
        closure |= component_of[v]
    return closure


def _partition_loop(inst: PackingInstance, state: KernelState) -> PackingInstance | None:
    """
    Run the Big/Small/B/U refinement on a simplified instance.

    Return the reduced instance if a constellation was found, ``None`` if the
    loop guard failed first.
    """
    g, r, d = inst.g, inst.r, inst.d
    component_of = d_components(g, state.u_d, r, d)
    while True:
        frontier = g.open_neighborhood(state.big_s) & state.u_d
        if len(frontier) <= r * len(state.big_s):
            return None

        weak = [u for u in sorted(state.big_s) if len(g.adjacency[u] & state.u_d) < r]
        if weak:
            u = weak[0]
            moved = _closure(g, [u], state, component_of)
            state.big_s.discard(u)
            state.small_s.add(u)
            state.b_d |= moved
            state.u_d -= moved
            state.record("move-small-degree", g.n)
        else:
            view = expansion.BipartiteView.of(g, state.big_s, frontier)
            partition = expansion.modified_expansion(view, r)
            if partition.b1 == state.big_s:
                con = Constellation.of(state.big_s, state.u_d, partition.witness_stars)
                reduced = apply_constellation(inst, con)
                state.record(
                    "constellation",
                    g.n,
                    removed=g.n - reduced.g.n,
                    k_delta=reduced.k - inst.k,
                )
                return reduced
            moved = _closure(g, partition.a1, state, component_of)
            state.big_s -= partition.a1
            state.small_s |= partition.a1
            state.b_d |= moved
            state.u_d -= moved
            state.record("move-expansion", g.n)
        state.check(g, r, d)


def kernelize(
    inst: PackingInstance, check_membership: bool = False
) -> tuple[PackingInstance, list[TraceRecord]]:
    """
    Reduce ``inst`` to an equivalent instance with at most
    ``(k-1)(r+1)(r^(d+1)+1)`` vertices.

    The input graph must have no induced path on d vertices; with
    ``check_membership`` this is verified up front, otherwise a violation may
    surface as a ``ContractError`` from the component bound.
    """
    if check_membership and (path := graph.find_induced_path(inst.g, inst.d)):
        raise ContractError(f"induced path on {inst.d} vertices: {[v + 1 for v in path]}")

    trace: list[TraceRecord] = []
    while True:
        state = KernelState(set(), set(), set(), set(), inst.k, trace)
        if inst.k == 0:
            state.record("terminate", inst.g.n, outcome="yes")
            return canonical_yes(inst), trace
        if inst.k == 1:
            found = inst.g.max_degree >= inst.r
            state.record("terminate", inst.g.n, outcome="yes" if found else "no")
            return (canonical_yes(inst) if found else canonical_no(inst)), trace

        simplified = simplify(inst)
        state.record("simplify", simplified.g.n, removed=inst.g.n - simplified.g.n)
        inst = simplified

        greedy = packing.greedy_maximal_packing(inst.g, inst.r)
        if len(greedy) >= inst.k:
            state.record("terminate", inst.g.n, outcome="yes")
            return canonical_yes(inst), trace

        state.big_s = set(greedy.vertices)
        state.u_d = set(inst.g.vertices) - state.big_s
        reduced = _partition_loop(inst, state)
        if reduced is not None:
            inst = reduced
            continue

        _check_final_accounting(inst, state)
        state.record("terminate", inst.g.n, outcome="kernel")
        return inst, trace


def _check_final_accounting(inst: PackingInstance, state: KernelState) -> None:
    r, d = inst.r, inst.d
    packed = len(state.big_s) + len(state.small_s)
    if inst.g.n != packed + len(state.u_d) + len(state.b_d):
        raise ContractError("S, B(D) and U(D) do not cover the graph")
    if len(state.u_d) > r ** (d + 1) * len(state.big_s):
        raise ContractError(
            f"|U(D)|={len(state.u_d)} exceeds r^(d+1)|Big(S)|={r ** (d + 1) * len(state.big_s)}"
        )
    if inst.g.n > inst.bound:
        raise ContractError(f"kernel has {inst.g.n} vertices, bound is {inst.bound}")


def trace_to_lines(trace: Iterable[TraceRecord]) -> Iterator[str]:
    for record in trace:
        yield record.to_line() + "\n"
