"""Per-instance check of the cycle-rank characterisations.

For one digraph this computes cr, the nine search numbers, both obstruction
certificates and the constructive searcher script, and cross-checks them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

from .certificates import (build_shelter, haven_to_fugitive_strategy,
                           shelter_to_haven, synthesize_search_script,
                           verify_haven, verify_shelter)
from .cyclerank import cycle_rank
from .digraph import Digraph
from .formats import GeneratorConfig, generate_random
from .game import (SearchNumbers, Variant, all_search_numbers, play,
                   searcher_strategy, verify_trace)


@dataclass
class InstanceReport:
    graph: Digraph
    rank: int
    numbers: SearchNumbers | None = None
    shelter_thickness: int | None = None
    haven_order: int | None = None
    fugitive_result: str | None = None
    script_depth: int | None = None
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_numbers(g: Digraph, rank: int, report: InstanceReport):
    nums = all_search_numbers(g)
    report.numbers = nums
    for name, value in nums.as_dict().items():
        if value != rank + 1:
            report.failures.append(f"{name}={value} but 1+cr={rank + 1}")


def check_obstructions(g: Digraph, rank: int, report: InstanceReport):
    """Shelter and haven of order cr+1, and the haven fugitive beating cr searchers."""
    shelter = build_shelter(g)
    report.shelter_thickness = thickness = verify_shelter(g, shelter)
    if thickness != rank + 1:
        report.failures.append(f"shelter thickness {thickness} != 1+cr={rank + 1}")
        return
    haven = shelter_to_haven(g, shelter)
    verify_haven(g, haven)
    report.haven_order = haven.order
    if haven.order != rank + 1:
        report.failures.append(f"haven order {haven.order} != 1+cr={rank + 1}")
        return
    rho = haven_to_fugitive_strategy(g, haven)
    sigma = searcher_strategy(g, Variant.VSC, rank)
    trace = play(g, Variant.VSC, rank, sigma, rho)
    verify_trace(g, trace)
    report.fugitive_result = f"{trace.winner}:{trace.reason}"
    if trace.winner != "fugitive":
        report.failures.append(f"haven fugitive lost to {rank} searchers")
    elif trace.reason != "repetition" and not (rank == 0 and trace.reason == "no-legal-move"):
        report.failures.append(f"fugitive won by {trace.reason}, not repetition")


def check_script(g: Digraph, rank: int, forest, report: InstanceReport):
    script = synthesize_search_script(g, forest)
    report.script_depth = script.max_depth
    if script.max_depth != rank + 1:
        report.failures.append(f"script depth {script.max_depth} != 1+cr={rank + 1}")
    for variant in (Variant.I, Variant.ISC):
        trace = play(g, variant, rank + 1, script)
        verify_trace(g, trace)
        if trace.winner != "searcher":
            report.failures.append(f"script does not win the {variant.value} game")
        if not trace.monotone:
            report.failures.append(f"script play in {variant.value} is not monotone")


def check_instance(g: Digraph, numbers: bool = True) -> InstanceReport:
    """Run every check; a verifier that raises is recorded as a failure."""
    result = cycle_rank(g)
    report = InstanceReport(g, result.rank)
    checks = [(check_obstructions, ()), (check_script, (result.witness,))]
    if numbers:
        checks.insert(0, (check_numbers, ()))
    for check, extra in checks:
        try:
            check(g, result.rank, *extra, report)
        except (ValueError, LookupError, RuntimeError) as exc:
            report.failures.append(f"{check.__name__}: {type(exc).__name__}: {exc}")
    return report


def all_digraphs(n: int) -> Iterator[Digraph]:
    """Every labelled simple digraph on ``n`` vertices."""
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    for bits in range(1 << len(pairs)):
        yield Digraph(n, [p for i, p in enumerate(pairs) if bits >> i & 1])


def exhaustive_graphs(max_n: int) -> Iterator[Digraph]:
    for n in range(1, max_n + 1):
        yield from all_digraphs(n)


def random_graphs(n: int, p: float, count: int, seed: int = 0) -> Iterator[Digraph]:
    for i in range(count):
        yield generate_random(GeneratorConfig(n, p, seed + i))


def sampled_configs(count: int = 200, seed: int = 0,
                    sizes=(5, 6), densities=(0.2, 0.5, 0.8)) -> list[GeneratorConfig]:
    """Seeded configs cycling through every (size, density) pair."""
    grid = list(itertools.product(sizes, densities))
    return [GeneratorConfig(grid[i % len(grid)][0], grid[i % len(grid)][1], seed + i)
            for i in range(count)]
