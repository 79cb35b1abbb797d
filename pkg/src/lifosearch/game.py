"""LIFO-search game on digraphs: positions, moves, solver and play.

A position is ``(stack, space)``: the searchers' placement word (a tuple of
distinct vertex ids, last placed at the end) and the fugitive space as a
bitmask.  Four variants are supported, crossing an invisible/visible
fugitive with path/strongly-connected movement.

Searcher wins are computed as the attractor of the captured positions in
the explicit finite game graph; every position outside the attractor lets
the fugitive play forever.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Mapping, NamedTuple, Union

from .digraph import Digraph, iter_bits, members, vset


class Variant(enum.Enum):
    I = "i"
    ISC = "isc"
    V = "v"
    VSC = "vsc"

    @property
    def visible(self) -> bool:
        return self in (Variant.V, Variant.VSC)

    @property
    def strong(self) -> bool:
        return self in (Variant.ISC, Variant.VSC)

    @classmethod
    def parse(cls, text: str | Variant) -> Variant:
        return text if isinstance(text, Variant) else cls(text)


class Position(NamedTuple):
    stack: tuple[int, ...]
    space: int

    def describe(self, g: Digraph | None = None) -> str:
        name = g.label if g is not None else str
        word = "".join(f"<{name(v)}>" for v in self.stack) or "e"
        return f"({word}, {{{','.join(name(v) for v in members(self.space))}}})"


@dataclass(frozen=True)
class Place:
    vertex: int


@dataclass(frozen=True)
class Remove:
    pass


REMOVE = Remove()
Move = Union[Place, Remove]


@dataclass(frozen=True)
class SearcherScript:
    """A fixed move sequence; enough for the invisible variants."""

    moves: tuple[Move, ...]

    def stacks(self) -> list[tuple[int, ...]]:
        """The stack after each move, raising on an illegal replay."""
        stack: tuple[int, ...] = ()
        out = []
        for i, m in enumerate(self.moves):
            if isinstance(m, Place):
                if m.vertex in stack:
                    raise IllegalMove(f"move {i} places on occupied vertex {m.vertex}")
                stack = stack + (m.vertex,)
            else:
                if not stack:
                    raise IllegalMove(f"move {i} removes from an empty stack")
                stack = stack[:-1]
            out.append(stack)
        return out

    @property
    def max_depth(self) -> int:
        return max((len(s) for s in self.stacks()), default=0)


class IllegalMove(ValueError):
    pass


class StrategyIncomplete(LookupError):
    def __init__(self, position: Position, g: Digraph | None = None):
        self.position = position
        super().__init__(f"strategy undefined at {position.describe(g)}")


SearcherStrategy = Union[Mapping[Position, tuple], SearcherScript]
FugitiveRule = Callable[[tuple, int, tuple], int]


# -- positions and successors --------------------------------------------

def start_position(g: Digraph) -> Position:
    return Position((), g.full)


def is_position(g: Digraph, variant: Variant, pos: Position) -> bool:
    """Whether ``pos`` is a legal position of ``variant`` (the special start aside)."""
    stack, space = pos
    taken = vset(*stack)
    if len(set(stack)) != len(stack) or taken & ~g.full or space & taken or space & ~g.full:
        return False
    rest = g.full & ~taken
    if space == 0:
        return True
    comps = g.sccs(rest)
    if variant is Variant.VSC:
        return space in comps
    if variant is Variant.ISC:
        return all(not c & space or c & space == c for c in comps)
    if g.reach(space, rest) != space:
        return False
    if variant is Variant.V:
        return any(g.reach(c, rest) == space for c in comps if c & space)
    return True


def is_special_start(g: Digraph, variant: Variant, pos: Position) -> bool:
    """``(e, V)`` in a visible variant where it is not itself a legal position."""
    return (variant.visible and pos.stack == () and pos.space == g.full
            and not is_position(g, variant, pos))


def searcher_moves(g: Digraph, pos: Position, k: int) -> list[tuple[int, ...]]:
    """Stacks one placement or one removal away, with at most ``k`` letters.

    Placements come first in vertex order, the removal last.  Occupied
    vertices are never placed on again.
    """
    stack = pos.stack
    out = []
    if len(stack) < k:
        taken = vset(*stack)
        out.extend(stack + (v,) for v in range(g.n) if not taken >> v & 1)
    if stack:
        out.append(stack[:-1])
    return out


def _visible_start_spaces(g: Digraph, variant: Variant) -> list[int]:
    comps = g.sccs(g.full)
    if variant is Variant.VSC:
        return sorted(comps)
    return sorted({g.reach(c, g.full) for c in comps})


def fugitive_responses(g: Digraph, variant: Variant, pos: Position,
                       next_stack: tuple[int, ...]) -> list[int]:
    """Maximal fugitive spaces after the searchers move to ``next_stack``.

    Invisible variants have exactly one answer.  ``[0]`` means capture.
    """
    stack, space = pos
    if space == 0:
        return [0]
    if is_special_start(g, variant, pos):
        return _visible_start_spaces(g, variant)
    before = vset(*stack)
    after = vset(*next_stack)
    free = g.full & ~(before & after)
    keep = g.full & ~after
    if variant is Variant.I:
        return [g.reach(space, free) & keep]
    touched = 0
    for c in g.sccs(free):
        if c & space:
            touched |= c
    if variant is Variant.ISC:
        return [touched & keep]
    if variant is Variant.VSC:
        out = [c for c in g.sccs(keep) if c & touched]
    else:
        reached = g.reach(space, free)
        out = sorted({g.reach(c, keep) for c in g.sccs(keep) if c & reached})
    return sorted(out) or [0]


def allowed_moves(g: Digraph, variant: Variant, pos: Position, k: int,
                  monotone: bool = False, stationary: bool = False):
    """Searcher moves with their fugitive responses, after restrictions.

    Returns ``[(next_stack, [response positions])]``.  A move is dropped
    under ``monotone`` when any response leaves the current space, and
    removals are dropped under ``stationary``.
    """
    if pos.space == 0:
        return []
    if is_special_start(g, variant, pos):
        candidates = [()]
    else:
        candidates = searcher_moves(g, pos, k)
        if stationary:
            candidates = [s for s in candidates if len(s) > len(pos.stack)]
    out = []
    for nxt in candidates:
        spaces = fugitive_responses(g, variant, pos, nxt)
        if monotone and any(r & ~pos.space for r in spaces):
            continue
        out.append((nxt, [Position(nxt, r) for r in spaces]))
    return out


# -- solving ---------------------------------------------------------------

class GameGraph:
    """Reachable game graph for fixed variant, restrictions and ``k``."""

    def __init__(self, g: Digraph, variant: Variant, k: int,
                 monotone: bool = False, stationary: bool = False):
        self.g = g
        self.variant = variant
        self.k = k
        self.monotone = monotone
        self.stationary = stationary
        self.start = start_position(g)
        self.moves: dict[Position, list] = {}
        todo = [self.start]
        self.moves[self.start] = None
        while todo:
            pos = todo.pop()
            opts = allowed_moves(g, variant, pos, k, monotone, stationary)
            self.moves[pos] = opts
            for _, resp in opts:
                for r in resp:
                    if r not in self.moves:
                        self.moves[r] = None
                        todo.append(r)
        self.rank = self._attractor()

    def _attractor(self) -> dict[Position, int]:
        """Attractor rank of every searcher-winning position."""
        preds: dict[Position, list[tuple[Position, int]]] = {}
        pending: dict[tuple[Position, int], int] = {}
        rank: dict[Position, int] = {}
        queue = deque()
        for pos, opts in self.moves.items():
            if pos.space == 0:
                rank[pos] = 0
                queue.append(pos)
            for i, (_, resp) in enumerate(opts):
                distinct = set(resp)
                pending[pos, i] = len(distinct)
                for r in distinct:
                    preds.setdefault(r, []).append((pos, i))
        while queue:
            p = queue.popleft()
            for q, i in preds.get(p, ()):
                if q in rank:
                    continue
                pending[q, i] -= 1
                if pending[q, i] == 0:
                    rank[q] = rank[p] + 1
                    queue.append(q)
        return rank

    @property
    def searcher_wins(self) -> bool:
        return self.start in self.rank

    def choice(self, pos: Position) -> tuple[int, ...] | None:
        """Lowest move keeping the play inside the attractor.

        Outside the attractor, the first legal move (or None if there is none).
        """
        opts = self.moves[pos]
        r = self.rank.get(pos)
        if r is not None:
            for nxt, resp in opts:
                if all(self.rank.get(x, r) < r for x in resp):
                    return nxt
        return opts[0][0] if opts else None

    def table(self, reachable_only: bool = True) -> dict[Position, tuple]:
        """Positional strategy; by default only on positions it can reach."""
        if not reachable_only:
            return {p: c for p in self.moves if (c := self.choice(p)) is not None}
        out = {}
        todo = [self.start]
        seen = {self.start}
        while todo:
            pos = todo.pop()
            nxt = self.choice(pos)
            if nxt is None:
                continue
            out[pos] = nxt
            for stack, resp in self.moves[pos]:
                if stack == nxt:
                    for r in resp:
                        if r not in seen:
                            seen.add(r)
                            todo.append(r)
                    break
        return out


@dataclass(frozen=True)
class SolveReport:
    variant: Variant
    monotone: bool
    stationary: bool
    search_number: int
    strategy: dict[Position, tuple] = field(repr=False, compare=False)


def _check_flags(variant: Variant, stationary: bool, experimental: bool):
    if stationary and variant is not Variant.VSC and not experimental:
        raise ValueError("searcher-stationary search is only defined for vsc; "
                         "pass experimental=True to solve it anyway")


def solve(g: Digraph, variant: Variant | str, monotone: bool = False,
          stationary: bool = False, experimental: bool = False) -> SolveReport:
    """Least number of searchers that wins, with a winning strategy table."""
    variant = Variant.parse(variant)
    _check_flags(variant, stationary, experimental)
    for k in range(1, g.n + 1):
        game = GameGraph(g, variant, k, monotone, stationary)
        if game.searcher_wins:
            return SolveReport(variant, monotone, stationary, k, game.table())
    raise AssertionError("n searchers always win")  # unreachable


def searcher_strategy(g: Digraph, variant: Variant | str, k: int,
                      monotone: bool = False, stationary: bool = False) -> dict:
    """The solver's positional strategy with ``k`` searchers.

    Total on every position of the ``k``-game that has a legal move, winning
    or not; losing positions get the lowest legal move.
    """
    variant = Variant.parse(variant)
    return GameGraph(g, variant, k, monotone, stationary).table(reachable_only=False)


def verify_strategy(g: Digraph, variant: Variant | str, k: int,
                    table: Mapping[Position, tuple], monotone: bool = False,
                    stationary: bool = False) -> int:
    """Check that ``table`` wins against every fugitive; return max stack size.

    Raises StrategyIncomplete for a missing entry and IllegalMove for a move
    that is illegal, exceeds ``k`` or breaks a requested restriction.  An
    infinite consistent play (a cycle) raises IllegalMove too.
    """
    variant = Variant.parse(variant)
    start = start_position(g)
    state: dict[Position, int] = {}  # 1 = on the DFS path, 2 = done
    used = 0

    def children(pos):
        if pos.space == 0:
            return []
        nxt = table.get(pos)
        if nxt is None:
            raise StrategyIncomplete(pos, g)
        nxt = tuple(nxt)
        for stack, resp in allowed_moves(g, variant, pos, k, monotone, stationary):
            if stack == nxt:
                return resp
        raise IllegalMove(f"move to {list(nxt)} not allowed at {pos.describe(g)}")

    state[start] = 1
    work = [(start, iter(children(start)))]
    while work:
        pos, it = work[-1]
        used = max(used, len(pos.stack))
        for child in it:
            s = state.get(child)
            if s == 1:
                raise IllegalMove(f"fugitive can loop through {child.describe(g)}")
            if s is None:
                state[child] = 1
                work.append((child, iter(children(child))))
                break
        else:
            state[pos] = 2
            work.pop()
    return used


@dataclass(frozen=True)
class SearchNumbers:
    i: int
    isc: int
    v: int
    vsc: int
    mi: int
    misc: int
    mv: int
    mvsc: int
    sstat_vsc: int

    def as_dict(self) -> dict[str, int]:
        return dict(self.__dict__)

    def values(self) -> list[int]:
        return list(self.__dict__.values())


def all_search_numbers(g: Digraph) -> SearchNumbers:
    nums = {}
    for monotone in (False, True):
        for variant in Variant:
            key = ("m" if monotone else "") + variant.value
            nums[key] = solve(g, variant, monotone=monotone).search_number
    nums["sstat_vsc"] = solve(g, Variant.VSC, stationary=True).search_number
    return SearchNumbers(**nums)


# -- play --------------------------------------------------------------------

@dataclass
class PlayTrace:
    variant: Variant
    k: int
    positions: list[Position]
    winner: str
    reason: str

    @property
    def max_stack(self) -> int:
        return max(len(p.stack) for p in self.positions)

    @property
    def monotone(self) -> bool:
        return all(b.space & ~a.space == 0 for a, b in zip(self.positions, self.positions[1:]))


def play(g: Digraph, variant: Variant | str, k: int, searcher: SearcherStrategy,
         fugitive: FugitiveRule | None = None) -> PlayTrace:
    """Run one play between the two strategies.

    Ends with a searcher win once the space is empty, or a fugitive win when
    a position repeats or the searchers have no legal move at all.
    Invisible variants ignore ``fugitive``: their fugitive space is forced.
    """
    variant = Variant.parse(variant)
    if variant.visible and fugitive is None:
        raise ValueError("visible variants need a fugitive strategy")
    pos = start_position(g)
    trace = [pos]
    seen = {pos}
    script = list(searcher.moves) if isinstance(searcher, SearcherScript) else None
    step = 0
    while True:
        if pos.space == 0:
            return PlayTrace(variant, k, trace, "searcher", "captured")
        legal = ([()] if is_special_start(g, variant, pos)
                 else searcher_moves(g, pos, k))
        if not legal:
            return PlayTrace(variant, k, trace, "fugitive", "no-legal-move")
        if script is not None:
            if is_special_start(g, variant, pos):
                nxt = ()
            elif step >= len(script):
                raise StrategyIncomplete(pos, g)
            else:
                move = script[step]
                step += 1
                if isinstance(move, Place):
                    nxt = pos.stack + (move.vertex,)
                else:
                    nxt = pos.stack[:-1]
        else:
            nxt = searcher.get(pos)
            if nxt is None:
                raise StrategyIncomplete(pos, g)
            nxt = tuple(nxt)
        if nxt not in legal:
            raise IllegalMove(f"searcher move to {list(nxt)} is illegal at "
                              f"{pos.describe(g)} with k={k}")
        spaces = fugitive_responses(g, variant, pos, nxt)
        if variant.visible:
            space = fugitive(pos.stack, pos.space, nxt)
            if space not in spaces:
                raise IllegalMove(f"fugitive answer {members(space)} is not a legal "
                                  f"response at {pos.describe(g)}")
        else:
            space = spaces[0]
        pos = Position(nxt, space)
        trace.append(pos)
        if script is None:
            if pos in seen:
                return PlayTrace(variant, k, trace, "fugitive", "repetition")
            seen.add(pos)


def verify_trace(g: Digraph, trace: PlayTrace) -> None:
    """Re-check every transition of a recorded play and its verdict."""
    variant, k = trace.variant, trace.k
    positions = trace.positions
    if not positions or positions[0] != start_position(g):
        raise IllegalMove("a play must start from (e, V)")
    for i, (a, b) in enumerate(zip(positions, positions[1:]), 1):
        if a.space == 0:
            raise IllegalMove(f"play continues after capture at step {i}")
        legal = [()] if is_special_start(g, variant, a) else searcher_moves(g, a, k)
        if b.stack not in legal:
            raise IllegalMove(f"step {i}: searcher move to {list(b.stack)} is illegal")
        if b.space not in fugitive_responses(g, variant, a, b.stack):
            raise IllegalMove(f"step {i}: fugitive space {members(b.space)} is illegal")
    last = positions[-1]
    if trace.winner == "searcher":
        ok = last.space == 0
    elif trace.reason == "repetition":
        ok = last in positions[:-1]
    elif trace.reason == "no-legal-move":
        ok = last.space != 0 and not (
            [()] if is_special_start(g, variant, last) else searcher_moves(g, last, k))
    else:
        ok = False
    if not ok:
        raise IllegalMove(f"verdict {trace.winner} ({trace.reason}) does not match the play")
