"""The seven acceptance criteria, one test each.

Instances for criteria 1 to 4 are shared: every digraph on at most four
vertices plus a seeded sample of 200 digraphs on five or six vertices.
"""

import random

import pytest

from lifosearch.cyclerank import cycle_rank
from lifosearch.digraph import Digraph
from lifosearch.equivalence import (InstanceReport, check_numbers, check_obstructions,
                                    check_script, exhaustive_graphs, sampled_configs)
from lifosearch.formats import GeneratorConfig, generate_random
from lifosearch.game import Variant, all_search_numbers, solve

from oracles import NaiveGame, naive_cycle_rank, small_graphs
from strategies import drop_vertex

SAMPLE_SEED = 2026


def _verdict(number, failures, total):
    status = "PASS" if not failures else "FAIL"
    print(f"criterion {number}: {status} ({total - len(failures)}/{total} instances)")
    for line in failures[:10]:
        print(f"  {line}")


def _run(graphs):
    out = []
    for g in graphs:
        result = cycle_rank(g)
        parts = {}
        for name, check in (("numbers", check_numbers), ("lower", check_obstructions),
                            ("upper", lambda g, r, rep: check_script(g, r, result.witness, rep))):
            rep = InstanceReport(g, result.rank)
            check(g, result.rank, rep)
            parts[name] = rep.failures
        out.append((g, parts))
    return out


@pytest.fixture(scope="module")
def exhaustive():
    return _run(exhaustive_graphs(4))


@pytest.fixture(scope="module")
def sampled():
    return _run(generate_random(c) for c in sampled_configs(200, SAMPLE_SEED))


def _failures(runs, part):
    return [f"{sorted(g.edges)} on n={g.n}: {'; '.join(parts[part])}"
            for g, parts in runs if parts[part]]


@pytest.mark.criterion(1, "nine search numbers equal 1+cr on every digraph with n <= 4")
def test_criterion_1_exhaustive_equivalence(exhaustive):
    assert len(exhaustive) == 1 + 4 + 64 + 4096
    failures = _failures(exhaustive, "numbers")
    _verdict(1, failures, len(exhaustive))
    assert not failures


@pytest.mark.criterion(2, "nine search numbers equal 1+cr on 200 seeded digraphs, n in {5,6}")
def test_criterion_2_sampled_equivalence(sampled):
    configs = sampled_configs(200, SAMPLE_SEED)
    assert {(c.n, c.p) for c in configs} == {(n, p) for n in (5, 6) for p in (0.2, 0.5, 0.8)}
    failures = _failures(sampled, "numbers")
    _verdict(2, failures, len(sampled))
    assert not failures


@pytest.mark.criterion(3, "shelter and haven of order cr+1; haven fugitive beats cr searchers")
def test_criterion_3_lower_bound(exhaustive, sampled):
    runs = exhaustive + sampled
    failures = _failures(runs, "lower")
    _verdict(3, failures, len(runs))
    assert not failures


@pytest.mark.criterion(4, "synthesized script wins i and isc monotonically at depth cr+1")
def test_criterion_4_upper_bound(exhaustive, sampled):
    runs = exhaustive + sampled
    failures = _failures(runs, "upper")
    _verdict(4, failures, len(runs))
    assert not failures


@pytest.mark.criterion(5, "numbers and cr never grow under vertex deletion (100 pairs, n <= 5)")
def test_criterion_5_subgraph_monotonicity():
    rng = random.Random(SAMPLE_SEED)
    failures = []
    for i in range(100):
        n = rng.randint(2, 5)
        g = generate_random(GeneratorConfig(n, rng.choice((0.2, 0.5, 0.8)), SAMPLE_SEED + i))
        sub = drop_vertex(g, rng.randrange(n))
        big = all_search_numbers(g).as_dict() | {"cr": cycle_rank(g).rank}
        small = all_search_numbers(sub).as_dict() | {"cr": cycle_rank(sub).rank}
        for key in big:
            if small[key] > big[key]:
                failures.append(f"{sorted(g.edges)} on n={n}: {key} grows "
                                f"{big[key]} -> {small[key]}")
    _verdict(5, failures, 100)
    assert not failures


@pytest.mark.criterion(6, "solver and cycle-rank agree with naive oracles for n <= 3")
def test_criterion_6_oracle_agreement():
    failures = []
    total = 0
    for n, edges in small_graphs(3):
        total += 1
        g = Digraph(n, edges)
        if cycle_rank(g).rank != naive_cycle_rank(n, edges):
            failures.append(f"{edges} on n={n}: cycle-rank differs")
        runs = [(v, {"monotone": m}) for v in Variant for m in (False, True)]
        runs.append((Variant.VSC, {"stationary": True}))
        for variant, flags in runs:
            ours = solve(g, variant, **flags).search_number
            theirs = NaiveGame(n, edges, variant.value).search_number(**flags)
            if ours != theirs:
                failures.append(f"{edges} on n={n}: {variant.value} {flags} "
                                f"solver {ours} vs naive {theirs}")
    _verdict(6, failures, total)
    assert not failures


def _path(n):
    return Digraph(n, [(i, i + 1) for i in range(n - 1)])


def _cycle(n):
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)])


def _clique(n):
    return Digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v])


@pytest.mark.criterion(7, "paths 1/0, directed cycles 2/1, bidirected K_n n/n-1")
def test_criterion_7_spot_values():
    cases = ([(f"path {n}", _path(n), 1, 0) for n in range(1, 6)]
             + [(f"cycle {n}", _cycle(n), 2, 1) for n in range(2, 6)]
             + [(f"K_{n}", _clique(n), n, n - 1) for n in range(1, 6)])
    failures = []
    for name, g, number, rank in cases:
        nums = all_search_numbers(g).values()
        if nums != [number] * 9 or cycle_rank(g).rank != rank:
            failures.append(f"{name}: numbers {nums}, cr {cycle_rank(g).rank}")
    _verdict(7, failures, len(cases))
    assert not failures
