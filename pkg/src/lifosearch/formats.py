"""Graph input formats, random instances and certificate JSON.

Certificates are JSON objects::

    {"spec_version": "1.0", "kind": <kind>, "graph_hash": <hex>, "payload": {...}}

``graph_hash`` is the SHA-256 hex digest of the canonical edge list: the line
``n <n>`` followed by one ``u v`` line per edge over dense ids, edges sorted
numerically, every line terminated by ``\\n``.

Random graphs come from ``random.Random(seed)`` (Mersenne Twister): ordered
pairs ``(u, v)``, ``u != v``, are visited in row-major order and each is kept
when ``rng.random() < p``.
"""

from __future__ import annotations

import hashlib
import json
import random
import re
from dataclasses import dataclass

from .certificates import LifoHaven, StrongShelter
from .cyclerank import EliminationForest, EliminationNode
from .digraph import Digraph, mask_of, members
from .game import (REMOVE, Place, PlayTrace, Position, SearcherScript, SolveReport,
                   Variant)

FORMAT_VERSION = "1.0"
KINDS = ("elimination_forest", "shelter", "haven", "script", "solve_report", "play_trace")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class _Builder:
    """Dense ids in order of first appearance, rejecting loops and repeats."""

    def __init__(self):
        self.ids: dict[str, int] = {}
        self.edges: dict[tuple[int, int], int] = {}

    def vertex(self, name: str) -> int:
        if name not in self.ids:
            self.ids[name] = len(self.ids)
        return self.ids[name]

    def edge(self, a: str, b: str, line: int):
        if a == b:
            raise ParseError(f"self-loop at {a!r}", line)
        key = (self.vertex(a), self.vertex(b))
        if key in self.edges:
            raise ParseError(f"duplicate edge {a} -> {b} (first on line {self.edges[key]})", line)
        self.edges[key] = line

    def build(self) -> Digraph:
        if not self.ids:
            raise ParseError("no vertices in input")
        return Digraph(len(self.ids), self.edges, labels=list(self.ids))


def parse_edge_list(text: str) -> Digraph:
    """Parse ``u v`` lines; ``#`` starts a comment, a lone name declares a vertex."""
    b = _Builder()
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) == 1:
            b.vertex(tokens[0])
        elif len(tokens) == 2:
            b.edge(tokens[0], tokens[1], no)
        else:
            raise ParseError(f"expected 'u v', got {line!r}", no)
    return b.build()


_DOT_TOKEN = re.compile(r'''
    (?P<ws>\s+|//[^\n]*|/\*.*?\*/|\#[^\n]*)
  | (?P<str>"(?:[^"\\]|\\.)*")
  | (?P<id>[A-Za-z_\x80-￿][\w\x80-￿]*|-?(?:\.\d+|\d+(?:\.\d*)?))
  | (?P<op>->|--|[{}\[\];,=:])
''', re.VERBOSE | re.DOTALL)


def _dot_tokens(text: str):
    pos, line = 0, 1
    while pos < len(text):
        m = _DOT_TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line)
        kind = m.lastgroup
        value = m.group()
        if kind != "ws":
            if kind == "str":
                value = re.sub(r'\\(.)', r'\1', value[1:-1])
                kind = "id"
            yield kind, value, line
        line += m.group().count("\n")
        pos = m.end()


def parse_dot_subset(text: str) -> Digraph:
    """Parse a ``digraph { ... }`` block of node and ``a -> b`` statements.

    Attribute lists and ``key=value`` statements are dropped.  Undirected
    edges, subgraphs and ports are rejected.
    """
    toks = list(_dot_tokens(text))
    i = 0

    def peek(k=0):
        return toks[i + k] if i + k < len(toks) else (None, None, toks[-1][2] if toks else 1)

    def unsupported(what, line):
        raise ParseError(f"unsupported construct: {what}", line)

    kind, value, line = peek()
    if kind == "id" and value.lower() == "strict":
        i += 1
        kind, value, line = peek()
    if kind != "id" or value.lower() != "digraph":
        if kind == "id" and value.lower() == "graph":
            unsupported("undirected graph", line)
        raise ParseError("expected 'digraph'", line)
    i += 1
    if peek()[0] == "id":
        i += 1
    if peek()[1] != "{":
        raise ParseError("expected '{'", peek()[2])
    i += 1
    b = _Builder()

    def skip_attrs():
        nonlocal i
        while peek()[1] == "[":
            start = peek()[2]
            while peek()[1] != "]":
                if peek()[0] is None:
                    raise ParseError("unterminated attribute list", start)
                i += 1
            i += 1

    while True:
        kind, value, line = peek()
        if kind is None:
            raise ParseError("missing closing '}'", line)
        if value == "}":
            i += 1
            break
        if value in (";", ","):
            i += 1
            continue
        if value == "{" or (kind == "id" and value.lower() == "subgraph"):
            unsupported("subgraph", line)
        if kind != "id":
            raise ParseError(f"unexpected {value!r}", line)
        if value.lower() in ("node", "edge", "graph") and peek(1)[1] == "[":
            i += 1
            skip_attrs()
            continue
        if peek(1)[1] == "=":
            i += 3
            continue
        chain = [value]
        i += 1
        while True:
            nxt = peek()
            if nxt[1] == ":":
                unsupported("port", nxt[2])
            if nxt[1] == "--":
                unsupported("undirected edge", nxt[2])
            if nxt[1] != "->":
                break
            i += 1
            kind, value, line2 = peek()
            if value == "{" or (kind == "id" and value.lower() == "subgraph"):
                unsupported("subgraph", line2)
            if kind != "id":
                raise ParseError("expected a node after '->'", line2)
            chain.append(value)
            i += 1
        skip_attrs()
        if len(chain) == 1:
            b.vertex(chain[0])
        for a, c in zip(chain, chain[1:]):
            b.edge(a, c, line)
    if i != len(toks):
        raise ParseError("trailing input after graph", peek()[2])
    return b.build()


def parse_graph(text: str) -> Digraph:
    """Edge list or DOT, sniffed from the first keyword."""
    head = re.sub(r"(?m)^\s*(#|//).*$", "", text).lstrip().lower()
    if re.match(r"(strict\s+)?(di)?graph\b", head):
        return parse_dot_subset(text)
    return parse_edge_list(text)


def to_edge_list(g: Digraph) -> str:
    lines = [g.label(v) for v in range(g.n) if not g.succ[v] and not g.pred[v]]
    lines += [f"{g.label(u)} {g.label(v)}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class GeneratorConfig:
    n: int
    p: float
    seed: int


def generate_random(cfg: GeneratorConfig) -> Digraph:
    if cfg.n < 1:
        raise ValueError("n must be positive")
    if not 0.0 <= cfg.p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = random.Random(cfg.seed)
    edges = [(u, v) for u in range(cfg.n) for v in range(cfg.n)
             if u != v and rng.random() < cfg.p]
    return Digraph(cfg.n, edges)


def graph_hash(g: Digraph) -> str:
    text = f"n {g.n}\n" + "".join(f"{u} {v}\n" for u, v in g.sorted_edges())
    return hashlib.sha256(text.encode()).hexdigest()


# -- certificates --------------------------------------------------------------

class CertificateFormatError(ValueError):
    pass


def _node_json(node: EliminationNode) -> dict:
    return {"vertex": node.vertex, "scope": members(node.scope),
            "children": [_node_json(c) for c in node.children]}


def _node_from(d: dict) -> EliminationNode:
    return EliminationNode(int(d["vertex"]), mask_of(d["scope"]),
                           tuple(_node_from(c) for c in d.get("children", ())))


def _pos_json(p: Position) -> dict:
    return {"stack": list(p.stack), "space": members(p.space)}


def _pos_from(d: dict) -> Position:
    return Position(tuple(d["stack"]), mask_of(d["space"]))


def _move_json(m) -> dict:
    return {"op": "place", "vertex": m.vertex} if isinstance(m, Place) else {"op": "remove"}


def _move_from(d: dict):
    if d["op"] == "place":
        return Place(int(d["vertex"]))
    if d["op"] == "remove":
        return REMOVE
    raise CertificateFormatError(f"unknown move {d['op']!r}")


def payload_of(obj) -> tuple[str, dict]:
    """Kind and JSON payload for a certificate object."""
    if isinstance(obj, EliminationForest):
        return "elimination_forest", {"depth": obj.depth,
                                      "roots": [_node_json(r) for r in obj.roots]}
    if isinstance(obj, StrongShelter):
        return "shelter", {"sets": [members(s) for s in obj.sets]}
    if isinstance(obj, LifoHaven):
        rows = sorted(obj.table.items(), key=lambda kv: (len(kv[0]), kv[0]))
        return "haven", {"order": obj.order,
                         "table": [{"word": list(w), "component": members(c)} for w, c in rows]}
    if isinstance(obj, SearcherScript):
        return "script", {"moves": [_move_json(m) for m in obj.moves]}
    if isinstance(obj, SolveReport):
        rows = sorted(obj.strategy.items(), key=lambda kv: (len(kv[0].stack), kv[0]))
        return "solve_report", {
            "variant": obj.variant.value, "monotone": obj.monotone,
            "stationary": obj.stationary, "search_number": obj.search_number,
            "strategy": [dict(_pos_json(p), next=list(nxt)) for p, nxt in rows]}
    if isinstance(obj, PlayTrace):
        return "play_trace", {"variant": obj.variant.value, "k": obj.k,
                              "winner": obj.winner, "reason": obj.reason,
                              "positions": [_pos_json(p) for p in obj.positions]}
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def certificate_document(g: Digraph, obj) -> dict:
    kind, payload = payload_of(obj)
    return {"spec_version": FORMAT_VERSION, "kind": kind,
            "graph_hash": graph_hash(g), "payload": payload}


def dump_certificate(g: Digraph, obj) -> str:
    return json.dumps(certificate_document(g, obj), indent=1)


def load_certificate(doc: dict | str, g: Digraph | None = None):
    """Rebuild the object in a certificate document.

    With ``g`` given, a graph_hash mismatch raises before anything is parsed.
    """
    if isinstance(doc, str):
        doc = json.loads(doc)
    kind = doc.get("kind")
    if kind not in KINDS:
        raise CertificateFormatError(f"unknown certificate kind {kind!r}")
    if g is not None and doc.get("graph_hash") != graph_hash(g):
        raise CertificateFormatError("certificate was issued for a different graph")
    p = doc["payload"]
    try:
        if kind == "elimination_forest":
            return EliminationForest(tuple(_node_from(r) for r in p["roots"]))
        if kind == "shelter":
            return StrongShelter(tuple(mask_of(s) for s in p["sets"]))
        if kind == "haven":
            return LifoHaven(int(p["order"]),
                             {tuple(r["word"]): mask_of(r["component"]) for r in p["table"]})
        if kind == "script":
            return SearcherScript(tuple(_move_from(m) for m in p["moves"]))
        if kind == "solve_report":
            table = {_pos_from(r): tuple(r["next"]) for r in p["strategy"]}
            return SolveReport(Variant(p["variant"]), bool(p["monotone"]),
                               bool(p["stationary"]), int(p["search_number"]), table)
        return PlayTrace(Variant(p["variant"]), int(p["k"]),
                         [_pos_from(x) for x in p["positions"]], p["winner"], p["reason"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CertificateFormatError(f"malformed {kind} payload: {exc}") from exc
