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

import contextlib
import logging
import pathlib
import sys
import textwrap
from collections.abc import Iterable, Iterator

import rich.console
import rich.logging
import rich.markup
import typer

import star_kernel

from . import bench, cograph, generators, graph, kernel, packing, reduction3dm
from .graph import ContractError

# Results go to stdout, diagnostics to stderr.
console = rich.console.Console(stderr=True)

logging.basicConfig(
    level="INFO",
    format="%(message)s",
    handlers=[
        rich.logging.RichHandler(
            console=console,
            show_time=False,
            show_path=False,
            rich_tracebacks=True,
            markup=True,
        )
    ],
)

ORACLE_LIMIT = kernel.ORACLE_LIMIT

app = typer.Typer(add_completion=False, no_args_is_help=True)


def version_callback(value: bool) -> None:
    if value:
        print(star_kernel.__version__)
        raise typer.Exit()


def template_callback(value: bool) -> None:
    if value:
        toml_string = f"# Template configuration file for star-kernel bench v{star_kernel.__version__}\n"
        toml_string += textwrap.dedent(bench.BenchConfig.__doc__ or "")
        print(toml_string)
        raise typer.Exit()


INPUT = typer.Option(..., "--input", help="Path to the input file.")
OUTPUT = typer.Option(None, "--output", help="Output path (default: standard output).")
REPORT = typer.Option(None, "--report", help="Path of the key=value report.")
K = typer.Option(..., "--k", help="Number of disjoint stars requested.")
R = typer.Option(3, "--r", help="Number of leaves per star.")
D = typer.Option(4, "--d", help="Length of the forbidden induced path.")
SEED = typer.Option(0, "--seed", help="Random seed.")
MODE = typer.Option("cograph", "--mode", help="Solver: cograph, oracle or greedy.")
ALLOW_LARGE_ORACLE = typer.Option(
    False, "--allow-large-oracle", help=f"Run the oracle on more than {ORACLE_LIMIT} vertices."
)
CHECK_MEMBERSHIP = typer.Option(
    False, "--check-membership", help="Search for an induced P_d before kernelizing."
)
VERSION = typer.Option(
    False, "--version", help="Show version and exit.", callback=version_callback, is_eager=True
)
TEMPLATE = typer.Option(
    False,
    "--template-configfile",
    help="Show configuration file template and exit.",
    callback=template_callback,
    is_eager=True,
)


@contextlib.contextmanager
def reported_errors(command: str) -> Iterator[None]:
    try:
        yield
    except (ValueError, ContractError, OSError) as exc:
        logging.error(f"[bold]{command}[/]: {rich.markup.escape(str(exc))}")
        raise typer.Exit(code=1)


def read_lines(path: pathlib.Path) -> list[str]:
    with path.open() as f:
        return f.readlines()


def write_lines(path: pathlib.Path | None, lines: Iterable[str]) -> None:
    if path is None:
        sys.stdout.writelines(lines)
        return
    with path.open("w") as f:
        f.writelines(lines)


@app.callback()
def main(version: bool = VERSION) -> None:
    """Kernelization and exact solvers for packing vertex-disjoint r-stars."""


@app.command("kernelize")
def cmd_kernelize(
    input: pathlib.Path = INPUT,
    k: int = K,
    r: int = R,
    d: int = D,
    output: pathlib.Path | None = OUTPUT,
    report: pathlib.Path | None = REPORT,
    check_membership: bool = CHECK_MEMBERSHIP,
) -> None:
    """Reduce a graph to at most (k-1)(r+1)(r^(d+1)+1) vertices."""
    logging.info(f"VERSION: {star_kernel.__version__}")
    logging.info(f"INPUT: {input.resolve()}")
    with reported_errors("kernelize"):
        lines = read_lines(input)
        g = graph.read_graph(lines)
        reduced, trace, record = bench.measure(
            input.name,
            g,
            k,
            r,
            d,
            oracle_limit=-1,
            seed=bench.read_seed(lines),
            check_membership=check_membership,
        )
        write_lines(output, graph.write_graph(reduced.g))
        if report is not None:
            write_lines(report, [*kernel.trace_to_lines(trace), record.to_line() + "\n"])

    summary = [
        "[bold]SUMMARY:[/]",
        f"outcome: {record.outcome}{' (trivial)' if record.trivial else ''}",
        f"vertices: {record.n_in} -> {record.n_out} (bound {record.bound})",
        f"k: {record.k_in} -> {record.k_out}",
        f"constellations: {record.constellations}",
    ]
    for line in summary:
        logging.info(line)


@app.command("solve")
def cmd_solve(
    input: pathlib.Path = INPUT,
    r: int = R,
    mode: str = MODE,
    allow_large_oracle: bool = ALLOW_LARGE_ORACLE,
) -> None:
    """Print the number of disjoint r-stars found and the stars themselves."""
    with reported_errors("solve"):
        g = graph.read_graph(read_lines(input))
        match mode:
            case "cograph":
                count, stars = cograph.solve_cograph(g, r, validate=True)
            case "oracle":
                if g.n > ORACLE_LIMIT and not allow_large_oracle:
                    raise ValueError(
                        f"oracle refuses {g.n} > {ORACLE_LIMIT} vertices without --allow-large-oracle"
                    )
                count, stars = packing.optimal_packing(g, r)
            case "greedy":
                stars = packing.greedy_maximal_packing(g, r)
                count = len(stars)
            case _:
                raise ValueError(f"unknown {mode=}")
        if not packing.validate_packing(g, stars, r):
            raise ContractError("witness does not validate")

    logging.info(f"{mode}: {count} stars on {g.n} vertices")
    write_lines(None, [f"c count {count}\n", *packing.write_packing(stars)])


@app.command("gen")
def cmd_gen(
    family: str = typer.Argument(..., help="cograph, split, stars or threedm."),
    n: int = typer.Option(50, "--n", help="Number of vertices (cograph, split)."),
    seed: int = SEED,
    r: int = R,
    d: int = D,
    count: int = typer.Option(5, "--count", help="Number of stars (stars)."),
    noise: int = typer.Option(0, "--noise", help="Noise edges among leaves (stars)."),
    clique_size: int | None = typer.Option(None, "--clique-size", help="Clique size (split)."),
    probability: float | None = typer.Option(
        None, "--probability", help="Join probability (cograph) or edge probability (split)."
    ),
    k: int = typer.Option(2, "--k", help="Partite set size (threedm)."),
    m: int = typer.Option(4, "--m", help="Number of triples (threedm)."),
    planted: bool = typer.Option(False, "--planted", help="Plant a perfect matching (threedm)."),
    output: pathlib.Path | None = OUTPUT,
) -> None:
    """Write a random instance of the requested family."""
    with reported_errors("gen"):
        lines: list[str]
        match family:
            case "cograph":
                join = generators.JOIN_PROBABILITY if probability is None else probability
                g = generators.random_cograph(n, seed, join)
                lines = [f"c family=cograph n={n} seed={seed}\n", *graph.write_graph(g)]
            case "split":
                edge = generators.EDGE_PROBABILITY if probability is None else probability
                g = generators.random_split(n, seed, clique_size, edge)
                lines = [f"c family=split n={n} seed={seed}\n", *graph.write_graph(g)]
            case "stars":
                g = generators.random_stars(count, r, seed, noise, d)
                lines = [f"c family=stars count={count} r={r} seed={seed}\n", *graph.write_graph(g)]
            case "threedm":
                inst = generators.random_3dm(k, m, seed, planted)
                lines = [f"c family=threedm k={k} m={m} seed={seed}\n", *reduction3dm.write_3dm(inst)]
            case _:
                raise ValueError(f"unknown {family=}")
        write_lines(output, lines)


@app.command("reduce3dm")
def cmd_reduce3dm(
    input: pathlib.Path = INPUT,
    r: int = R,
    output: pathlib.Path | None = OUTPUT,
    verify: bool = typer.Option(False, "--verify", help="Check split structure and P_5-freeness."),
) -> None:
    """Build the split graph whose r-star partitions encode 3D matchings."""
    with reported_errors("reduce3dm"):
        inst = reduction3dm.read_3dm(read_lines(input))
        gadget = reduction3dm.reduce_3dm(inst, r)
        if verify:
            reduction3dm.verify_gadget(gadget, inst, r)
        write_lines(output, graph.write_graph(gadget.graph))
    logging.info(f"gadget: {gadget.graph.n} vertices, {gadget.graph.m} edges")


@app.command("check")
def cmd_check(
    input: pathlib.Path = INPUT,
    d: int | None = typer.Option(None, "--d", help="Fail if an induced P_d exists."),
) -> None:
    """Report P_d-freeness, cograph and split membership."""
    with reported_errors("check"):
        g = graph.read_graph(read_lines(input))
        path = graph.find_induced_path(g, d) if d is not None else None
        results: dict[str, object] = {
            "vertices": g.n,
            "edges": g.m,
            "cograph": cograph.is_cograph(g),
            "split": graph.is_split_graph(g),
        }
        if d is not None:
            results[f"p{d}_free"] = path is None

    write_lines(None, [f"{key}={value}\n" for key, value in results.items()])
    if path is not None:
        logging.error(f"induced P_{d}: {' '.join(str(v + 1) for v in path)}")
        raise typer.Exit(code=1)


@app.command("bench")
def cmd_bench(
    input: pathlib.Path | None = typer.Option(None, "--input", help="Corpus directory."),
    config: pathlib.Path | None = typer.Option(None, "--config", help="TOML configuration file."),
    k_min: int | None = typer.Option(None, "--k-min", help="Smallest k."),
    k_max: int | None = typer.Option(None, "--k-max", help="Largest k."),
    r: int | None = typer.Option(None, "--r", help="Number of leaves per star."),
    d: int | None = typer.Option(None, "--d", help="Length of the forbidden induced path."),
    jobs: int | None = typer.Option(None, "--jobs", help="Number of worker processes."),
    report: pathlib.Path | None = REPORT,
    template: bool = TEMPLATE,
) -> None:
    """Kernelize every corpus graph for a range of k and write one record per run."""
    overrides = {
        "corpus": None if input is None else str(input),
        "k_min": k_min,
        "k_max": k_max,
        "r": r,
        "d": d,
        "jobs": jobs,
    }
    with reported_errors("bench"):
        if config is not None:
            logging.info(f"CONFIGFILE: {config.resolve()}")
        bench_config = bench.BenchConfig.from_toml(config, **overrides)
        records = bench.run_bench(bench_config, console=console)
        write_lines(report, bench.write_report(records))

    summary = bench.summarize(records)
    logging.info("[bold]SUMMARY:[/]")
    for key, value in summary.items():
        logging.info(f"{key}: {value}")
    if summary.get("over_bound") or summary.get("disagreements"):
        raise typer.Exit(code=1)

