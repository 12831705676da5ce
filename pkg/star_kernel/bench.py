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

import concurrent.futures
import dataclasses
import functools
import inspect
import logging
import pathlib
import re
import sys
import time
from collections.abc import Iterable, Iterator
from typing import Any

import pandas as pd
import rich.console
import rich.progress

from . import cograph, graph, kernel, packing
from .graph import Graph

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

SEED_PATTERN = re.compile(r"^c\b.*\bseed=(-?\d+)")
TIMING_FIELDS = frozenset({"elapsed_ms"})


@dataclasses.dataclass
class BenchConfig:  # noqa: D205, D400
    """
    # Arguments:
    #   * corpus: directory holding the graph files
    #   * pattern: glob pattern of graph files inside the corpus
    #   * k_min, k_max: range of requested star counts (inclusive)
    #   * r: number of leaves per star
    #   * d: forbidden induced path length of the corpus
    #   * jobs: number of worker processes
    #   * oracle_limit: largest graph decided by exhaustive search
    #
    # Example:
    corpus = "corpus"
    pattern = "*.graph"
    k_min = 2
    k_max = 6
    r = 3
    d = 4
    jobs = 1
    oracle_limit = 18
    """

    corpus: str
    pattern: str = "*.graph"
    k_min: int = 2
    k_max: int = 6
    r: int = 3
    d: int = 4
    jobs: int = 1
    oracle_limit: int = 18

    def __post_init__(self) -> None:
        if not 0 <= self.k_min <= self.k_max:
            raise ValueError(f"invalid k range {self.k_min=} {self.k_max=}")
        if self.jobs < 1:
            raise ValueError(f"{self.jobs=} must be at least 1")

    @classmethod
    def from_toml(
        cls, configfile: str | pathlib.Path | None, **overrides: Any
    ) -> "BenchConfig":
        """Load ``configfile`` (if any); overrides that are not ``None`` win."""
        config: dict[str, Any] = {}
        if configfile is not None:
            with open(configfile, "rb") as f:
                config = tomllib.load(f)
        args = set(inspect.getfullargspec(cls).args) - {"self"}
        if extra_args := set(config) - args:
            logging.warning(f"Unused arguments: {', '.join(sorted(extra_args))}")
        kwargs = {key: value for key, value in config.items() if key in args}
        kwargs.update({key: value for key, value in overrides.items() if value is not None})
        if "corpus" not in kwargs:
            raise ValueError("no corpus given")
        return cls(**kwargs)

    @functools.cached_property
    def paths(self) -> list[pathlib.Path]:
        return sorted(pathlib.Path(self.corpus).glob(self.pattern))


@dataclasses.dataclass(frozen=True)
class BenchRecord:
    instance: str
    n_in: int
    m_in: int
    k_in: int
    n_out: int
    k_out: int
    outcome: str
    trivial: bool
    simplify_removed: int
    constellations: int
    expansion_moves: int
    small_degree_moves: int
    bound: int
    answer: bool | None
    kernel_answer: bool | None
    seed: int | None
    elapsed_ms: float

    def to_line(self) -> str:
        fields = []
        for key, value in dataclasses.asdict(self).items():
            if key == "elapsed_ms":
                value = f"{value:.3f}"
            elif value is None:
                value = "-"
            fields.append(f"{key}={value}")
        return " ".join(fields)


@dataclasses.dataclass(frozen=True)
class BenchTask:
    path: str
    k: int
    r: int
    d: int
    oracle_limit: int


def decide(g: Graph, k: int, r: int, oracle_limit: int) -> bool | None:
    """Answer "k disjoint r-stars?" when an exact method applies, else ``None``."""
    if k == 0:
        return True
    if g.n <= oracle_limit:
        count, _ = packing.optimal_packing(g, r)
        return count >= k
    if r >= 3 and cograph.is_cograph(g):
        count, _ = cograph.solve_cograph(g, r)
        return count >= k
    return None


def read_seed(lines: Iterable[str]) -> int | None:
    for line in lines:
        if match := SEED_PATTERN.match(line):
            return int(match.group(1))
    return None


def measure(
    name: str,
    g: Graph,
    k: int,
    r: int,
    d: int,
    oracle_limit: int,
    seed: int | None = None,
    check_membership: bool = False,
) -> tuple[kernel.PackingInstance, list[kernel.TraceRecord], BenchRecord]:
    """Kernelize one instance and collect its benchmark record."""
    inst = kernel.PackingInstance(g, k, r, d)
    started = time.perf_counter()
    reduced, trace = kernel.kernelize(inst, check_membership=check_membership)
    elapsed_ms = (time.perf_counter() - started) * 1000

    def count(step: kernel.StepType) -> int:
        return sum(1 for record in trace if record.step == step)

    record = BenchRecord(
        instance=name,
        n_in=g.n,
        m_in=g.m,
        k_in=k,
        n_out=reduced.g.n,
        k_out=reduced.k,
        outcome=str(trace[-1].outcome),
        trivial=k <= 1,
        simplify_removed=sum(rec.removed for rec in trace if rec.step == "simplify"),
        constellations=count("constellation"),
        expansion_moves=count("move-expansion"),
        small_degree_moves=count("move-small-degree"),
        bound=inst.bound,
        answer=decide(g, k, r, oracle_limit),
        kernel_answer=decide(reduced.g, reduced.k, r, oracle_limit),
        seed=seed,
        elapsed_ms=elapsed_ms,
    )
    return reduced, trace, record


def run_task(task: BenchTask) -> BenchRecord:
    with open(task.path) as f:
        lines = f.readlines()
    g = graph.read_graph(lines)
    name = pathlib.Path(task.path).name
    _, _, record = measure(name, g, task.k, task.r, task.d, task.oracle_limit, read_seed(lines))
    return record


def run_bench(
    config: BenchConfig, console: rich.console.Console | None = None
) -> list[BenchRecord]:
    tasks = [
        BenchTask(str(path), k, config.r, config.d, config.oracle_limit)
        for path in config.paths
        for k in range(config.k_min, config.k_max + 1)
    ]
    if not tasks:
        logging.warning(f"No graph matches {config.pattern!r} in {config.corpus!r}")
        return []

    records: list[BenchRecord] = []
    if config.jobs == 1:
        records.extend(
            rich.progress.track(
                map(run_task, tasks), total=len(tasks), description="", console=console
            )
        )
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=config.jobs) as executor:
            futures = [executor.submit(run_task, task) for task in tasks]
            done = concurrent.futures.as_completed(futures)
            records.extend(
                future.result()
                for future in rich.progress.track(
                    done, total=len(futures), description="", console=console
                )
            )
    return sorted(records, key=lambda record: (record.instance, record.k_in))


def summarize(records: list[BenchRecord]) -> dict[str, Any]:
    if not records:
        return {"records": 0}
    df = pd.DataFrame([dataclasses.asdict(record) for record in records])
    decided = df.dropna(subset=["answer", "kernel_answer"])
    return {
        "records": len(df),
        "max_ratio": round(float((df["n_out"] / df["bound"].clip(lower=1)).max()), 6),
        "over_bound": int(((df["n_out"] > df["bound"]) & (df["k_in"] >= 2)).sum()),
        "simplify_removed": int(df["simplify_removed"].sum()),
        "constellations": int(df["constellations"].sum()),
        "expansion_moves": int(df["expansion_moves"].sum()),
        "small_degree_moves": int(df["small_degree_moves"].sum()),
        "disagreements": int((decided["answer"] != decided["kernel_answer"]).sum()),
    }


def write_report(records: list[BenchRecord]) -> Iterator[str]:
    for record in records:
        yield record.to_line() + "\n"
    summary = summarize(records)
    yield "summary " + " ".join(f"{key}={value}" for key, value in summary.items()) + "\n"


def strip_timing(line: str) -> str:
    return " ".join(
        field for field in line.split() if field.split("=", 1)[0] not in TIMING_FIELDS
    )
