"""Obstructions to low cycle-rank and the constructive searcher strategy.

Strong shelters and LIFO-havens witness lower bounds on cycle-rank; the
searcher script built from an elimination forest witnesses the upper bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .cyclerank import (CertificateError, CycleRankSolver, EliminationForest,
                        verify_elimination_forest)
from .digraph import Digraph, iter_bits, lex_key, members, vset
from .game import REMOVE, Place, SearcherScript, StrategyIncomplete, Position


class ShelterError(CertificateError):
    pass


class HavenError(CertificateError):
    pass


@dataclass(frozen=True)
class StrongShelter:
    sets: tuple[int, ...]

    @classmethod
    def of(cls, sets) -> StrongShelter:
        return cls(tuple(sorted(set(sets), key=lambda s: (-bin(s).count("1"), lex_key(s)))))


def _maximal_below(sets, s: int) -> list[int]:
    below = [t for t in sets if t != s and t & ~s == 0]
    return [t for t in below if not any(t != u and t & ~u == 0 for u in below)]


def verify_shelter(g: Digraph, shelter: StrongShelter) -> int:
    """Validate ``shelter`` and return its thickness.

    Thickness is the fewest sets on a maximal containment chain.  A set with
    no proper subset in the collection passes the intersection condition
    vacuously.
    """
    sets = list(shelter.sets)
    if not sets:
        raise ShelterError("a shelter needs at least one set")
    if len(set(sets)) != len(sets):
        raise ShelterError("duplicate sets in shelter")
    below: dict[int, list[int]] = {}
    for s in sets:
        if s == 0:
            raise ShelterError("empty set in shelter")
        if s & ~g.full:
            raise ShelterError(f"set {members(s)} leaves the graph")
        if not g.is_strongly_connected_set(s):
            raise ShelterError(f"set {members(s)} is not strongly connected")
        covers = _maximal_below(sets, s)
        if covers:
            common = g.full
            for t in covers:
                common &= t
            if common:
                raise ShelterError(
                    f"maximal proper subsets {[members(t) for t in covers]} of "
                    f"{members(s)} share {members(common)}")
        below[s] = covers

    @lru_cache(maxsize=None)
    def shortest(s):
        return 1 + min((shortest(t) for t in below[s]), default=0)

    tops = [s for s in sets if not any(s != u and s & ~u == 0 for u in sets)]
    return min(shortest(s) for s in tops)


def _proper(a: int, b: int) -> bool:
    return a != b and a & ~b == 0


class _Criticals:
    """Enumerates rank-critical sets: minimal strongly connected sets with cr >= j.

    Such a set has cr exactly j, so no critical set of level j can sit strictly
    inside another set of level <= j.
    """

    def __init__(self, g: Digraph, solver: CycleRankSolver):
        self.g = g
        self.solver = solver
        self.memo: dict[tuple[int, int], frozenset[int]] = {}

    def __call__(self, mask: int, level: int) -> frozenset[int]:
        key = (mask, level)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        g, rank = self.g, self.solver.rank_of
        out: set[int] = set()
        for c in g.sccs(mask):
            if rank(c) < level:
                continue
            if level == 0:
                out.update(1 << v for v in iter_bits(c))
                continue
            shrink = [v for v in iter_bits(c) if rank(c & ~(1 << v)) >= level]
            if not shrink:
                out.add(c)
            for v in shrink:
                out |= self(c & ~(1 << v), level)
        self.memo[key] = found = frozenset(out)
        return found


def _prune_graded(levels: list[set[int]]) -> None:
    """Shrink a graded family in place until it is a shelter of thickness len(levels).

    ``levels[j]`` holds j-critical sets.  Kept invariants:
    every member of level j >= 1 has, for each of its vertices, a level j-1
    member inside it avoiding that vertex; every member below the top has a
    parent one level up; and a member two or more levels below a set it lies
    in must be covered by a level in between.  Together these make every
    maximal containment chain pass through every level exactly once.
    """
    top = len(levels) - 1
    changed = True
    while changed:
        changed = False
        for j in range(1, top + 1):
            for s in list(levels[j]):
                if any(not any(t & ~(s & ~(1 << u)) == 0 for t in levels[j - 1])
                       for u in iter_bits(s)):
                    levels[j].discard(s)
                    changed = True
        for j in range(top):
            for s in list(levels[j]):
                if not any(_proper(s, p) for p in levels[j + 1]):
                    levels[j].discard(s)
                    changed = True
        for j in range(2, top + 1):
            for s in levels[j]:
                for i in range(j - 1):
                    for y in list(levels[i]):
                        if _proper(y, s) and not any(
                                _proper(y, t) and _proper(t, s) for t in levels[j - 1]):
                            levels[i].discard(y)
                            changed = True


def _graded_shelter(g: Digraph, solver: CycleRankSolver, rank: int) -> set[int] | None:
    crit = _Criticals(g, solver)
    for top in sorted(crit(g.full, rank), key=lex_key):
        levels = [set(crit(top, j)) for j in range(rank)] + [{top}]
        _prune_graded(levels)
        if levels[rank]:
            return set().union(*levels)
    return None


def _searched_shelter(g: Digraph, solver: CycleRankSolver, rank: int) -> set[int] | None:
    """Exact search over all families of strongly connected sets via SAT."""
    from pysat.formula import IDPool
    from pysat.solvers import Cadical153

    want = rank + 1
    for comp in g.sccs(g.full):
        if solver.rank_of(comp) < rank:
            continue
        universe = []
        sub = comp
        while sub:
            if g.is_strongly_connected_set(sub):
                universe.append(sub)
            sub = (sub - 1) & comp
        pool = IDPool()

        def x(s):
            return pool.id(("x", s))

        def deep(s, d):
            # s is in the family and every maximal chain below it has >= d sets
            return x(s) if d == 1 else pool.id(("d", s, d))

        def cover(t, s):
            return pool.id(("m", t, s))

        def inner(s):
            return pool.id(("nm", s))

        clauses = [[x(s) for s in universe]]
        for s in universe:
            below = [t for t in universe if _proper(t, s)]
            above = [p for p in universe if _proper(s, p)]
            clauses.append([-inner(s)] + [x(t) for t in below])
            clauses.extend([-x(t), inner(s)] for t in below)
            for t in below:
                between = [u for u in below if _proper(t, u)]
                clauses.append([-cover(t, s), x(t)])
                clauses.extend([-cover(t, s), -x(u)] for u in between)
                clauses.append([cover(t, s), -x(t)] + [x(u) for u in between])
            for v in iter_bits(s):
                clauses.append([-x(s), -inner(s)]
                               + [cover(t, s) for t in below if not t >> v & 1])
            clauses.append([-x(s)] + [x(p) for p in above] + [deep(s, want)])
            for d in range(2, want + 1):
                clauses.append([-deep(s, d), x(s)])
                clauses.append([-deep(s, d), inner(s)])
                clauses.extend([-deep(s, d), -cover(t, s), deep(t, d - 1)] for t in below)
        with Cadical153(bootstrap_with=clauses) as sat:
            if sat.solve():
                model = {v for v in sat.get_model() if v > 0}
                return {s for s in universe if x(s) in model}
    return None


def build_shelter(g: Digraph) -> StrongShelter:
    """A strong shelter of thickness exactly cr(g) + 1.

    The fast path builds a graded family of rank-critical sets.  When the
    pruning leaves nothing, an exact SAT search over families of strongly
    connected sets takes over.
    """
    solver = CycleRankSolver(g)
    rank = solver.rank_of(g.full)
    family = _graded_shelter(g, solver, rank)
    if family is None:
        family = _searched_shelter(g, solver, rank)
    if family is None:
        raise RuntimeError(f"no strong shelter of thickness {rank + 1} found")
    return StrongShelter.of(family)


@dataclass(frozen=True)
class LifoHaven:
    order: int
    table: dict[tuple[int, ...], int]

    def __call__(self, word) -> int:
        return self.table[canon(word)]


def canon(word) -> tuple[int, ...]:
    """Drop repeated letters, keeping first occurrences."""
    seen = set()
    out = []
    for v in word:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return tuple(out)


def haven_words(n: int, order: int):
    for length in range(order):
        yield from permutations(range(n), length)


def shelter_to_haven(g: Digraph, shelter: StrongShelter) -> LifoHaven:
    """Turn a shelter of thickness t into a haven of order t.

    Each word X picks a shelter set S_X disjoint from its letters, walking
    down one containment level per letter; ties go to the lexicographically
    smallest set.  The haven maps X to the SCC of g - X containing S_X.
    """
    order = verify_shelter(g, shelter)
    sets = list(shelter.sets)
    tops = [s for s in sets if not any(s != u and s & ~u == 0 for u in sets)]
    chosen: dict[tuple[int, ...], int] = {(): min(tops, key=lex_key)}
    table: dict[tuple[int, ...], int] = {}
    for word in haven_words(g.n, order):
        if word:
            parent = chosen[word[:-1]]
            v = word[-1]
            options = [t for t in _maximal_below(sets, parent) if not t >> v & 1]
            if not options:
                raise ShelterError(f"no maximal subset of {members(parent)} avoids {v}")
            chosen[word] = min(options, key=lex_key)
        s = chosen[word]
        rest = g.full & ~vset(*word)
        table[word] = next(c for c in g.sccs(rest) if c & s)
    return LifoHaven(order, table)


def verify_haven(g: Digraph, haven: LifoHaven) -> None:
    """Raise HavenError unless ``haven`` is a LIFO-haven of its order on ``g``."""
    if haven.order < 1:
        raise HavenError("order must be positive")
    words = set(haven_words(g.n, haven.order))
    for word in haven.table:
        if word not in words:
            raise HavenError(f"unexpected word {list(word)}")
    for word in sorted(words, key=lambda w: (len(w), w)):
        if word not in haven.table:
            raise HavenError(f"missing word {list(word)}")
        value = haven.table[word]
        rest = g.full & ~vset(*word)
        if value == 0 or value not in g.sccs(rest):
            raise HavenError(f"value {members(value)} at word {list(word)} is not a "
                             f"nonempty SCC of the graph minus {list(word)}")
        for cut in range(len(word)):
            prefix = word[:cut]
            if value & ~haven.table[prefix]:
                raise HavenError(f"value at {list(word)} is not inside the value at "
                                 f"prefix {list(prefix)}")


class FugitiveStrategy:
    """Fugitive that always runs to the haven's component for the new stack."""

    def __init__(self, haven: LifoHaven):
        self.haven = haven

    def __call__(self, stack, space, next_stack) -> int:
        word = canon(next_stack)
        if len(word) >= self.haven.order:
            raise StrategyIncomplete(Position(tuple(next_stack), space))
        return self.haven.table[word]


def haven_to_fugitive_strategy(g: Digraph, haven: LifoHaven) -> FugitiveStrategy:
    verify_haven(g, haven)
    return FugitiveStrategy(haven)


def synthesize_search_script(g: Digraph, forest: EliminationForest) -> SearcherScript:
    """Monotone invisible-fugitive search from an elimination forest.

    SCCs of the current scope are cleared in topological order; an acyclic
    one by a single place/remove, a cyclic one by parking a searcher on its
    forest vertex and clearing the rest underneath it.
    """
    verify_elimination_forest(g, forest)
    by_scope = {node.scope: node for node in forest.nodes()}
    moves = []

    def clear(mask):
        for comp in g.sccs(mask):
            if comp & (comp - 1) == 0:
                moves.append(Place(comp.bit_length() - 1))
                moves.append(REMOVE)
                continue
            node = by_scope[comp]
            moves.append(Place(node.vertex))
            clear(comp & ~(1 << node.vertex))
            moves.append(REMOVE)

    clear(g.full)
    return SearcherScript(tuple(moves))
