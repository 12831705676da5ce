import collections
import random

import networkx as nx
import pytest

from star_kernel import cograph, generators, graph, kernel, packing
from star_kernel.graph import ContractError, Graph
from star_kernel.kernel import Constellation, PackingInstance, Refutation

K13 = Graph.from_networkx(nx.star_graph(3))
TWO_K13 = graph.disjoint_union([K13, K13])


def oracle_answer(g: Graph, k: int, r: int) -> bool:
    count, _ = packing.optimal_packing(g, r)
    return count >= k


def test_instance_validation() -> None:
    with pytest.raises(ValueError):
        PackingInstance(K13, -1, 3, 4)
    with pytest.raises(ValueError):
        PackingInstance(K13, 1, 1, 4)
    with pytest.raises(ValueError):
        PackingInstance(K13, 1, 3, 2)
    assert PackingInstance(K13, 3, 3, 4).bound == 2 * 4 * (3**5 + 1)
    assert PackingInstance(K13, 5, 3, 4).bound == 3904


@pytest.mark.parametrize(
    "g,expected_n",
    [
        (Graph.from_edges(2, [(0, 1)]), 0),
        (K13, 4),
        (graph.disjoint_union([K13, Graph(1)]), 4),
    ],
)
def test_simplify(g: Graph, expected_n: int) -> None:
    simplified = kernel.simplify(PackingInstance(g, 2, 3, 4))
    assert simplified.g.n == expected_n
    assert not any(kernel.is_small(simplified.g, u, 3) for u in simplified.g.vertices)


@pytest.mark.parametrize("seed", range(40))
def test_simplify_preserves_optimum(seed: int) -> None:
    g = Graph.from_networkx(nx.gnp_random_graph(12, 0.2, seed=seed))
    for r in (2, 3):
        simplified = kernel.simplify(PackingInstance(g, 2, r, 4))
        assert packing.optimal_packing(simplified.g, r)[0] == packing.optimal_packing(g, r)[0]


def test_is_constellation() -> None:
    ok, witness = kernel.is_constellation(K13, {0}, {1, 2, 3}, 3)
    assert ok
    assert isinstance(witness, packing.StarPacking) and len(witness) == 1

    ok, _ = kernel.is_constellation(K13, set(), set(), 3)
    assert ok

    # Centers of two K_{1,3} joined by an edge: the second center keeps degree 3.
    joined = Graph.from_edges(8, [*TWO_K13.edges, (0, 4)])
    ok, evidence = kernel.is_constellation(joined, {0}, {1, 2, 3}, 3)
    assert ok
    ok, evidence = kernel.is_constellation(joined, {0}, {1, 2, 3, 4}, 3)
    assert not ok
    assert isinstance(evidence, Refutation) and evidence.decided

    with pytest.raises(ValueError):
        kernel.is_constellation(K13, {0}, {0, 1}, 3)


def test_is_constellation_rejects_bad_witness() -> None:
    wrong = packing.StarPacking((packing.Star.of(4, {5, 6, 7}),))
    ok, evidence = kernel.is_constellation(TWO_K13, {0}, {1, 2, 3}, 3, wrong)
    assert not ok
    assert "witness" in str(evidence)


def test_apply_constellation() -> None:
    inst = PackingInstance(TWO_K13, 2, 3, 4)
    reduced = kernel.apply_constellation(inst, Constellation.of({0}, {1, 2, 3}))
    assert reduced.g == K13
    assert reduced.k == 1

    assert kernel.apply_constellation(inst, Constellation.of((), ())) == inst

    with pytest.raises(ContractError):
        kernel.apply_constellation(inst, Constellation.of({1}, {0}))


def test_apply_constellation_clamps_k() -> None:
    inst = PackingInstance(TWO_K13, 1, 3, 4)
    reduced = kernel.apply_constellation(inst, Constellation.of({0, 4}, {1, 2, 3, 5, 6, 7}))
    assert reduced.k == 0
    assert reduced.g.n == 0


@pytest.mark.parametrize("k", [2, 3, 5])
def test_kernelize_disjoint_stars(k: int) -> None:
    g = generators.random_stars(k, 3, seed=k)
    out, trace = kernel.kernelize(PackingInstance(g, k, 3, 4))
    assert trace[-1].outcome == "yes"
    assert out.g.n == k * 4
    assert out.k == k


def test_kernelize_trivial_parameters() -> None:
    out, trace = kernel.kernelize(PackingInstance(Graph(3), 0, 3, 4))
    assert trace[-1].outcome == "yes" and out.g.n == 0
    out, trace = kernel.kernelize(PackingInstance(Graph(3), 1, 3, 4))
    assert trace[-1].outcome == "no"
    out, trace = kernel.kernelize(PackingInstance(K13, 1, 3, 4))
    assert trace[-1].outcome == "yes"


def test_kernelize_no_instance_by_simplification() -> None:
    p6 = Graph.from_networkx(nx.path_graph(6))
    out, trace = kernel.kernelize(PackingInstance(p6, 2, 3, 7))
    assert out.g.n == 0
    assert trace[0].step == "simplify" and trace[0].removed == 6


def test_kernelize_detects_induced_path() -> None:
    p5 = Graph.from_networkx(nx.path_graph(5))
    with pytest.raises(ContractError, match="induced path"):
        kernel.kernelize(PackingInstance(p5, 2, 2, 4), check_membership=True)


@pytest.mark.parametrize("seed", range(30))
@pytest.mark.parametrize("family,d", [("cograph", 4), ("split", 5)])
def test_kernel_equivalence_small(seed: int, family: str, d: int) -> None:
    if family == "cograph":
        g = generators.random_cograph(14, seed, join_probability=0.3)
    else:
        g = generators.random_split(14, seed, edge_probability=0.2)
    for r in (2, 3):
        for k in (2, 3, 4):
            inst = PackingInstance(g, k, r, d)
            out, trace = kernel.kernelize(inst)
            assert out.g.n <= max(inst.bound, g.n)
            expected = oracle_answer(g, k, r)
            if trace[-1].outcome == "kernel":
                assert oracle_answer(out.g, out.k, r) is expected
            else:
                assert trace[-1].outcome == ("yes" if expected else "no")


@pytest.mark.parametrize("seed", range(10))
def test_kernel_bound_on_cographs(seed: int) -> None:
    g = generators.random_cograph(200, seed, join_probability=0.2)
    count, _ = cograph.solve_cograph(g, 3)
    for k in (2, 5, 8):
        inst = PackingInstance(g, k, 3, 4)
        out, trace = kernel.kernelize(inst)
        assert out.g.n <= inst.bound
        assert cograph.is_cograph(out.g)
        out_count, _ = cograph.solve_cograph(out.g, 3)
        assert (out_count >= out.k) is (count >= k)


@pytest.mark.parametrize("seed", range(5))
def test_kernel_bound_on_split_graphs(seed: int) -> None:
    g = generators.random_split(150, seed, clique_size=6, edge_probability=0.05)
    for k in (2, 4, 8):
        inst = PackingInstance(g, k, 3, 5)
        out, trace = kernel.kernelize(inst)
        assert out.g.n <= inst.bound
        if trace[-1].outcome == "kernel":
            assert graph.is_split_graph(out.g)


def test_trace_lines() -> None:
    _, trace = kernel.kernelize(PackingInstance(TWO_K13, 2, 3, 4))
    lines = list(kernel.trace_to_lines(trace))
    assert lines[-1].startswith("step=terminate ")
    assert "outcome=yes" in lines[-1]
    assert all(line.endswith("\n") for line in lines)


def pendant_hubs(m: int) -> tuple[Graph, set[int]]:
    """``m`` copies of a vertex c hanging off the center of a K_{1,2}; returns the graph and the c's."""
    edges = []
    for i in range(m):
        c, a = 4 * i, 4 * i + 1
        edges += [(c, a), (a, a + 1), (a, a + 2)]
    return Graph.from_edges(4 * m, edges), {4 * i for i in range(m)}


def test_is_constellation_searches_near_c_only() -> None:
    # The witness star is centered in L; isolated vertices of L play no part.
    for n in (10, 30):
        g = Graph.from_edges(n, [(0, 1), (1, 2), (1, 3)])
        ok, witness = kernel.is_constellation(g, {0}, range(1, n), 3)
        assert ok
        assert witness == packing.StarPacking((packing.Star.of(1, {0, 2, 3}),))


def test_is_constellation_undecided() -> None:
    g, c = pendant_hubs(1)
    assert kernel.is_constellation(g, c, set(g.vertices) - c, 3)[0]

    g, c = pendant_hubs(9)
    ok, evidence = kernel.is_constellation(g, c, set(g.vertices) - c, 3)
    assert not ok
    assert isinstance(evidence, Refutation) and not evidence.decided
    assert str(evidence).startswith("undecided:")


@pytest.mark.parametrize("seed", range(8))
def test_apply_constellation_preserves_cograph_answers(seed: int) -> None:
    pendant = Graph.from_networkx(nx.star_graph(5))
    g = graph.disjoint_union([generators.random_cograph(30, seed, join_probability=0.3), pendant])
    before, _ = cograph.solve_cograph(g, 3)
    applied = 0
    for v in g.vertices:
        for l in (g.adjacency[v], {u for u in g.adjacency[v] if g.adjacency[u] == {v}}):  # noqa: E741
            ok, _ = kernel.is_constellation(g, {v}, l, 3)
            if not ok:
                continue
            applied += 1
            for k in range(1, 6):
                reduced = kernel.apply_constellation(PackingInstance(g, k, 3, 4), Constellation.of({v}, l))
                after, _ = cograph.solve_cograph(reduced.g, 3)
                assert (after >= reduced.k) is (before >= k)
    assert applied >= 1


def hub_split(n: int, hubs: int, seed: int) -> Graph:
    """A clique of hubs, each independent vertex pendant to one hub, skewed towards hub 0."""
    rng = random.Random(seed)
    edges = [(u, v) for u in range(hubs) for v in range(u + 1, hubs)]
    for i, leaf in enumerate(range(hubs, n)):
        hub = i if i < hubs else min(rng.randrange(hubs), rng.randrange(hubs))
        edges.append((hub, leaf))
    return Graph.from_edges(n, edges)


def test_kernelize_runs_every_loop_step() -> None:
    # Hub 0 has 20 pendant vertices, hub 3 only two besides its greedy leaves.
    edges = [(0, 1), (0, 2), *((0, p) for p in range(6, 26)), (3, 4), (3, 5), (3, 26), (3, 27)]
    g = Graph.from_edges(28, edges)
    inst = PackingInstance(g, 3, 2, 4)
    out, trace = kernel.kernelize(inst)
    steps = collections.Counter(record.step for record in trace)
    assert steps["move-small-degree"] == 4
    assert steps["move-expansion"] == 1
    assert steps["constellation"] == 1
    assert trace[-1].outcome == "kernel"
    assert out.k == 2 and out.g.n == 5
    # Only the two hubs can be centers, so neither instance packs k stars.
    assert sum(g.degree(v) >= 2 for v in g.vertices) == 2
    assert packing.optimal_packing(out.g, 2)[0] < out.k


def test_kernel_equivalence_on_hub_split_graphs() -> None:
    steps: collections.Counter[str] = collections.Counter()
    for seed in range(40):
        g = hub_split(12 + seed % 6, 2 + seed % 2, seed)
        for r in (2, 3):
            count, _ = packing.optimal_packing(g, r)
            for k in (2, 3, 4):
                inst = PackingInstance(g, k, r, 5)
                out, trace = kernel.kernelize(inst)
                steps.update(record.step for record in trace)
                assert out.g.n <= max(inst.bound, g.n)
                if trace[-1].outcome == "kernel":
                    assert oracle_answer(out.g, out.k, r) is (count >= k)
                    assert graph.is_split_graph(out.g)
                else:
                    assert trace[-1].outcome == ("yes" if count >= k else "no")
    assert steps["move-small-degree"] and steps["move-expansion"] and steps["constellation"]


@pytest.mark.parametrize("seed", range(5))
def test_kernel_bound_on_hub_split_graphs(seed: int) -> None:
    g = hub_split(150, 6, seed)
    steps: collections.Counter[str] = collections.Counter()
    for k in range(2, 9):
        inst = PackingInstance(g, k, 3, 5)
        out, trace = kernel.kernelize(inst)
        steps.update(record.step for record in trace)
        assert out.g.n <= inst.bound
    assert steps["constellation"]
