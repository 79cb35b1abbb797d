"""Slow reference implementations written straight from the definitions.

Nothing here imports the solver, the game engine or the cycle-rank code;
graphs are plain (n, edge list) pairs and SCCs come from networkx.
"""

from itertools import combinations

import networkx as nx


def nx_graph(n, edges, keep=None):
    h = nx.DiGraph()
    h.add_nodes_from(range(n) if keep is None else keep)
    h.add_edges_from((u, v) for u, v in edges
                     if keep is None or (u in keep and v in keep))
    return h


def naive_cycle_rank(n, edges, keep=None):
    """Memo-free recursion on the definition of cycle-rank."""
    keep = frozenset(range(n)) if keep is None else keep
    h = nx_graph(n, edges, keep)
    if nx.is_directed_acyclic_graph(h):
        return 0
    comps = [frozenset(c) for c in nx.strongly_connected_components(h)]
    if len(comps) > 1:
        return max(naive_cycle_rank(n, edges, c) for c in comps)
    return 1 + min(naive_cycle_rank(n, edges, keep - {v}) for v in keep)


def subsets(items):
    items = sorted(items)
    for r in range(len(items) + 1):
        for c in combinations(items, r):
            yield frozenset(c)


class NaiveGame:
    """The game exactly as defined on words and vertex sets.

    Searcher words are arbitrary (repeats allowed) subject to the prefix rule
    and a letter difference of exactly one.  The fugitive may answer with any
    vertex set forming a valid position that satisfies the successor
    condition, not only maximal ones.
    """

    def __init__(self, n, edges, variant):
        self.n, self.edges, self.variant = n, list(edges), variant
        self.all = frozenset(range(n))

    def sccs(self, keep):
        return [frozenset(c) for c in
                nx.strongly_connected_components(nx_graph(self.n, self.edges, keep))]

    def valid(self, word, r):
        rest = self.all - set(word)
        if not r <= rest:
            return False
        if not r:
            return True
        comps = self.sccs(rest)
        closed = all(v in r for u, v in self.edges if u in r and v in rest)
        if self.variant == "i":
            return closed
        if self.variant == "isc":
            return all(c <= r or not c & r for c in comps)
        if self.variant == "v":
            inner = [c for c in self.sccs(r)
                     if not any(v in c and u in r - c for u, v in self.edges)]
            return closed and len(inner) == 1
        return r in comps

    def special(self, word, r):
        return (self.variant in ("v", "vsc") and word == () and r == self.all
                and not self.valid(word, r))

    def words_after(self, word, k):
        out = []
        if word:
            out.append(word[:-1])
        if len(word) < k:
            out += [word + (v,) for v in range(self.n)]
        return [w for w in out if len(set(word) ^ set(w)) == 1]

    def linked(self, word, nxt, r):
        """Vertices the fugitive may move to from ``r`` during the move."""
        keep = self.all - (set(word) & set(nxt))
        if self.variant in ("i", "v"):
            h = nx_graph(self.n, self.edges, keep)
            out = set()
            for v in r & keep:
                out |= nx.descendants(h, v) | {v}
            return frozenset(out)
        return frozenset().union(*(c for c in self.sccs(keep) if c & r))

    def successors(self, pos, k):
        """{next word: [fugitive answers]}."""
        word, r = pos
        if self.special(word, r):
            return {(): [s for s in subsets(self.all) if s and self.valid((), s)]}
        out = {}
        for nxt in self.words_after(word, k):
            room = self.linked(word, nxt, r) - set(nxt)
            out[nxt] = [s for s in subsets(room) if self.valid(nxt, s)]
        return out

    def searcher_wins(self, k, monotone=False, stationary=False):
        start = ((), self.all)
        graph, todo = {}, [start]
        while todo:
            pos = todo.pop()
            if pos in graph:
                continue
            moves = {} if not pos[1] else self.successors(pos, k)
            if stationary:
                moves = {w: a for w, a in moves.items() if w[:len(pos[0])] == pos[0]}
            if monotone:
                moves = {w: a for w, a in moves.items() if all(s <= pos[1] for s in a)}
            graph[pos] = moves
            for w, answers in moves.items():
                todo.extend((w, s) for s in answers)
        # win[d]: positions from which the searchers force capture within d rounds
        win = {p for p in graph if not p[1]}
        while True:
            grown = win | {p for p, moves in graph.items()
                           if any(all((w, s) in win for s in answers)
                                  for w, answers in moves.items())}
            if grown == win:
                return start in win
            win = grown

    def search_number(self, **flags):
        return next(k for k in range(1, self.n + 1) if self.searcher_wins(k, **flags))


def small_graphs(max_n):
    for n in range(1, max_n + 1):
        pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
        for bits in range(1 << len(pairs)):
            yield n, [p for i, p in enumerate(pairs) if bits >> i & 1]
