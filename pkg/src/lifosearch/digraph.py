"""Immutable simple digraphs over dense integer ids.

Vertex sets are plain ``int`` bitmasks: bit ``v`` is set iff vertex ``v`` is a
member.  Every structural query takes the host graph plus a mask of the
vertices still present, so subgraphs are never copied.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


def bit(v: int) -> int:
    return 1 << v


def vset(*vertices: int) -> int:
    """Bitmask holding the given vertices."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def mask_of(vertices: Iterable[int]) -> int:
    return vset(*vertices)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the members of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def members(mask: int) -> list[int]:
    return list(iter_bits(mask))


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def lex_key(mask: int) -> tuple[int, ...]:
    """Sort key comparing vertex sets as sorted id tuples."""
    return tuple(iter_bits(mask))


class Digraph:
    """A finite simple digraph on vertices ``0..n-1``.

    Self-loops and parallel edges are rejected.  Optional ``labels`` keep the
    external vertex names around for output.
    """

    __slots__ = ("n", "edges", "labels", "succ", "pred", "full", "_sccs", "_reach")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (),
                 labels: Sequence[str] | None = None):
        if n < 1:
            raise ValueError("a digraph needs at least one vertex")
        edge_list = list(edges)
        edge_set = frozenset(edge_list)
        if len(edge_set) != len(edge_list):
            raise ValueError("duplicate edge")
        succ = [0] * n
        pred = [0] * n
        for u, v in edge_set:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            succ[u] |= 1 << v
            pred[v] |= 1 << u
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise ValueError("need exactly one label per vertex")
            if len(set(labels)) != n:
                raise ValueError("vertex labels must be distinct")
        self.n = n
        self.edges = edge_set
        self.labels = labels
        self.succ = tuple(succ)
        self.pred = tuple(pred)
        self.full = (1 << n) - 1
        self._sccs: dict[int, tuple[int, ...]] = {}
        self._reach: dict[tuple[int, int], int] = {}

    def __repr__(self):
        return f"Digraph(n={self.n}, edges={sorted(self.edges)})"

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def view(self, drop: int = 0) -> "View":
        return induced_subgraph(self, drop)

    # -- mask level queries (cached; the game solvers hammer these) --------

    def sccs(self, mask: int) -> tuple[int, ...]:
        """SCCs of the subgraph induced by ``mask``, in topological order.

        Every edge between two distinct components runs from an earlier
        component to a later one.
        """
        mask &= self.full
        found = self._sccs.get(mask)
        if found is None:
            found = self._sccs[mask] = self._tarjan(mask)
        return found

    def reach(self, seeds: int, mask: int) -> int:
        """Vertices of ``mask`` reachable from ``seeds & mask``."""
        mask &= self.full
        key = (seeds & mask, mask)
        found = self._reach.get(key)
        if found is not None:
            return found
        seen = frontier = key[0]
        succ = self.succ
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= succ[v]
            frontier = nxt & mask & ~seen
            seen |= frontier
        self._reach[key] = seen
        return seen

    def has_cycle(self, mask: int) -> bool:
        return any(c & (c - 1) for c in self.sccs(mask))

    def is_strongly_connected_set(self, mask: int) -> bool:
        comps = self.sccs(mask)
        return len(comps) == 1

    def _tarjan(self, mask: int) -> tuple[int, ...]:
        succ = self.succ
        index: dict[int, int] = {}
        low: dict[int, int] = {}
        stack: list[int] = []
        on_stack = 0
        comps: list[int] = []
        counter = 0
        for root in iter_bits(mask):
            if root in index:
                continue
            index[root] = low[root] = counter
            counter += 1
            stack.append(root)
            on_stack |= 1 << root
            work = [(root, iter_bits(succ[root] & mask))]
            while work:
                v, it = work[-1]
                descended = False
                for w in it:
                    if w not in index:
                        index[w] = low[w] = counter
                        counter += 1
                        stack.append(w)
                        on_stack |= 1 << w
                        work.append((w, iter_bits(succ[w] & mask)))
                        descended = True
                        break
                    if on_stack >> w & 1 and index[w] < low[v]:
                        low[v] = index[w]
                if descended:
                    continue
                work.pop()
                if work:
                    u = work[-1][0]
                    if low[v] < low[u]:
                        low[u] = low[v]
                if low[v] == index[v]:
                    comp = 0
                    while True:
                        w = stack.pop()
                        on_stack &= ~(1 << w)
                        comp |= 1 << w
                        if w == v:
                            break
                    comps.append(comp)
        # Tarjan emits sinks first.
        comps.reverse()
        return tuple(comps)


@dataclass(frozen=True)
class View:
    """The subgraph of ``host`` induced by the vertex mask ``vertices``."""

    host: Digraph
    vertices: int

    @property
    def dropped(self) -> int:
        return self.host.full & ~self.vertices

    def edges(self) -> list[tuple[int, int]]:
        m = self.vertices
        return [(u, v) for u, v in self.host.sorted_edges() if m >> u & 1 and m >> v & 1]

    def __len__(self):
        return popcount(self.vertices)


@dataclass(frozen=True)
class SccDecomposition:
    components: tuple[int, ...]
    comp_of: dict[int, int]
    topo_order: tuple[int, ...]


def _as_view(g: Digraph | View) -> View:
    return g if isinstance(g, View) else View(g, g.full)


def induced_subgraph(g: Digraph, drop: int) -> View:
    """View of ``g`` without the vertices in ``drop``."""
    if drop < 0 or drop >> g.n:
        raise ValueError("drop set names a vertex outside the graph")
    return View(g, g.full & ~drop)


def scc_decompose(g: Digraph | View) -> SccDecomposition:
    view = _as_view(g)
    comps = view.host.sccs(view.vertices)
    comp_of = {v: i for i, c in enumerate(comps) for v in iter_bits(c)}
    return SccDecomposition(comps, comp_of, tuple(range(len(comps))))


def is_strongly_connected(g: Digraph | View) -> bool:
    view = _as_view(g)
    return view.vertices != 0 and view.host.is_strongly_connected_set(view.vertices)


def reach_from(g: Digraph | View, seeds: int) -> int:
    view = _as_view(g)
    if seeds & ~view.vertices:
        raise ValueError("seeds must lie inside the view")
    return view.host.reach(seeds, view.vertices)


def is_successor_closed(g: Digraph | View, h: int) -> bool:
    """True iff no edge of ``g`` leaves ``h``."""
    view = _as_view(g)
    succ = view.host.succ
    outside = view.vertices & ~h
    return all(not succ[v] & outside for v in iter_bits(h))


def initial_components(g: Digraph | View) -> list[int]:
    """SCCs with no incoming edge from elsewhere in the view."""
    view = _as_view(g)
    pred = view.host.pred
    out = []
    for c in view.host.sccs(view.vertices):
        outside = view.vertices & ~c
        if all(not pred[v] & outside for v in iter_bits(c)):
            out.append(c)
    return out
