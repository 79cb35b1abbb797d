"""Exact cycle-rank with an elimination-forest witness.

Subproblems are strongly connected vertex subsets of one host graph, so the
memo table is keyed by bitmask.  For a strongly connected scope the solver
tries every deletion vertex in increasing id order and keeps the first
minimiser, which makes witnesses deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .digraph import Digraph, iter_bits, members, popcount


class CertificateError(ValueError):
    """A certificate failed a structural check.

    ``path`` locates the offending piece, e.g. ``roots[0].children[1]``.
    """

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


@dataclass(frozen=True)
class EliminationNode:
    vertex: int
    scope: int
    children: tuple[EliminationNode, ...] = ()

    @property
    def depth(self) -> int:
        return 1 + max((c.depth for c in self.children), default=0)


@dataclass(frozen=True)
class EliminationForest:
    roots: tuple[EliminationNode, ...] = ()

    @property
    def depth(self) -> int:
        return max((r.depth for r in self.roots), default=0)

    def nodes(self):
        todo = list(self.roots)
        while todo:
            node = todo.pop()
            yield node
            todo.extend(node.children)

    def pretty(self, g: Digraph | None = None) -> str:
        name = g.label if g is not None else str
        lines = []

        def walk(node, indent):
            scope = ",".join(name(v) for v in members(node.scope))
            lines.append(f"{'  ' * indent}{name(node.vertex)} in {{{scope}}}")
            for c in node.children:
                walk(c, indent + 1)

        for r in self.roots:
            walk(r, 0)
        return "\n".join(lines)


@dataclass(frozen=True)
class RankResult:
    rank: int
    witness: EliminationForest = field(default_factory=EliminationForest)


def _nontrivial(g: Digraph, mask: int) -> list[int]:
    return [c for c in g.sccs(mask) if c & (c - 1)]


class CycleRankSolver:
    """Memoised cycle-rank evaluation over subsets of one digraph."""

    def __init__(self, g: Digraph):
        self.g = g
        # strongly connected scope -> (rank, lowest minimising vertex)
        self.memo: dict[int, tuple[int, int]] = {}

    def rank_of(self, mask: int) -> int:
        return max((self._scc_rank(c) for c in _nontrivial(self.g, mask)), default=0)

    def _scc_rank(self, comp: int) -> int:
        hit = self.memo.get(comp)
        if hit is not None:
            return hit[0]
        g = self.g
        best = popcount(comp) + 1
        best_v = -1
        for v in iter_bits(comp):
            rest = comp & ~(1 << v)
            lower = 1 + (1 if g.has_cycle(rest) else 0)
            if lower >= best:
                continue
            r = 1 + self.rank_of(rest)
            if r < best:
                best, best_v = r, v
                if best == 1:
                    break
        self.memo[comp] = (best, best_v)
        return best

    def forest(self, mask: int) -> EliminationForest:
        self.rank_of(mask)
        return EliminationForest(tuple(self._node(c) for c in _nontrivial(self.g, mask)))

    def _node(self, comp: int) -> EliminationNode:
        self._scc_rank(comp)
        _, v = self.memo[comp]
        rest = comp & ~(1 << v)
        kids = tuple(self._node(c) for c in _nontrivial(self.g, rest))
        return EliminationNode(v, comp, kids)


def cycle_rank(g: Digraph) -> RankResult:
    solver = CycleRankSolver(g)
    rank = solver.rank_of(g.full)
    return RankResult(rank, solver.forest(g.full))


def cycle_rank_decision(g: Digraph, k: int) -> bool:
    """True iff cr(g) <= k, stopping as soon as the answer is known."""
    if k < 0:
        raise ValueError("k must be non-negative")
    memo: dict[tuple[int, int], bool] = {}

    def at_most(mask: int, budget: int) -> bool:
        for comp in _nontrivial(g, mask):
            key = (comp, budget)
            ok = memo.get(key)
            if ok is None:
                ok = budget > 0 and any(
                    at_most(comp & ~(1 << v), budget - 1) for v in iter_bits(comp))
                memo[key] = ok
            if not ok:
                return False
        return True

    return at_most(g.full, k)


def verify_elimination_forest(g: Digraph, forest: EliminationForest) -> int:
    """Check ``forest`` against ``g`` and return its depth.

    The depth bounds cr(g) from above.  Roots must be exactly the
    non-acyclic SCCs of ``g``; below a node, children must be exactly the
    non-acyclic SCCs of its scope minus its vertex.
    """

    def check_level(nodes, mask, path):
        want = set(_nontrivial(g, mask))
        have = [n.scope for n in nodes]
        if len(set(have)) != len(have) or set(have) != want:
            raise CertificateError(
                f"scopes {[members(s) for s in have]} do not match the cyclic SCCs "
                f"{[members(c) for c in sorted(want, key=members)]}",
                path or "roots")
        depth = 0
        for i, node in enumerate(nodes):
            here = f"{path}[{i}]" if path else f"roots[{i}]"
            if node.scope & ~g.full or not node.scope:
                raise CertificateError("scope is empty or leaves the graph", here)
            if not g.is_strongly_connected_set(node.scope):
                raise CertificateError(
                    f"scope {members(node.scope)} is not strongly connected", here)
            if not node.scope >> node.vertex & 1:
                raise CertificateError(
                    f"vertex {node.vertex} is not in scope {members(node.scope)}", here)
            d = 1 + check_level(node.children, node.scope & ~(1 << node.vertex),
                                f"{here}.children")
            depth = max(depth, d)
        return depth

    return check_level(forest.roots, g.full, "")
