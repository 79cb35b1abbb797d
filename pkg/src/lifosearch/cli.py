"""Command-line entry point: ``lifosearch <command> FILE ...``.

Exit codes: 0 success, 1 verification or equivalence failure, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .certificates import (LifoHaven, StrongShelter, build_shelter,
                           haven_to_fugitive_strategy, shelter_to_haven,
                           synthesize_search_script, verify_haven, verify_shelter)
from .cyclerank import (CertificateError, EliminationForest, cycle_rank,
                        verify_elimination_forest)
from .digraph import Digraph, members
from .equivalence import check_instance, exhaustive_graphs, random_graphs
from .formats import (CertificateFormatError, dump_certificate,
                      load_certificate, parse_graph, to_edge_list)
from .game import (IllegalMove, SearcherScript, SolveReport,
                   StrategyIncomplete, Variant, all_search_numbers, play, solve,
                   verify_strategy, verify_trace)


class UsageError(Exception):
    pass


def read_graph(path: str) -> Digraph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return parse_graph(text)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def read_certificate(path: str, g: Digraph):
    """Load a certificate; a graph_hash mismatch surfaces as CertificateFormatError."""
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise UsageError(f"{path}: expected a JSON object")
    return load_certificate(doc, g)


def write_certificate(path: str | None, g: Digraph, obj):
    if path:
        Path(path).write_text(dump_certificate(g, obj) + "\n")


def fmt_set(g: Digraph, mask: int) -> str:
    return "{" + ",".join(g.label(v) for v in members(mask)) + "}"


# -- commands ------------------------------------------------------------------

def cmd_rank(args) -> int:
    g = read_graph(args.file)
    result = cycle_rank(g)
    print(result.rank)
    write_certificate(args.witness, g, result.witness)
    return 0


def cmd_solve(args) -> int:
    g = read_graph(args.file)
    try:
        report = solve(g, args.variant, monotone=args.monotone,
                       stationary=args.stationary, experimental=args.experimental)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    print(report.search_number)
    write_certificate(args.strategy, g, report)
    return 0


def cmd_numbers(args) -> int:
    g = read_graph(args.file)
    for name, value in all_search_numbers(g).as_dict().items():
        print(f"{name}={value}")
    print(f"1+cr={cycle_rank(g).rank + 1}")
    return 0


def cmd_shelter(args) -> int:
    g = read_graph(args.file)
    shelter = build_shelter(g)
    print(f"thickness {verify_shelter(g, shelter)}")
    for s in shelter.sets:
        print(fmt_set(g, s))
    write_certificate(args.output, g, shelter)
    return 0


def cmd_haven(args) -> int:
    g = read_graph(args.file)
    haven = shelter_to_haven(g, build_shelter(g))
    print(f"order {haven.order}")
    for word, comp in sorted(haven.table.items(), key=lambda kv: (len(kv[0]), kv[0])):
        label = "".join(f"<{g.label(v)}>" for v in word) or "e"
        print(f"{label} -> {fmt_set(g, comp)}")
    write_certificate(args.output, g, haven)
    return 0


def cmd_script(args) -> int:
    g = read_graph(args.file)
    script = synthesize_search_script(g, cycle_rank(g).witness)
    print(" ".join(f"P({g.label(m.vertex)})" if hasattr(m, "vertex") else "R"
                   for m in script.moves))
    print(f"max depth {script.max_depth}")
    write_certificate(args.output, g, script)
    return 0


def _check(g: Digraph, cert) -> str:
    if isinstance(cert, EliminationForest):
        return f"elimination forest ok, depth {verify_elimination_forest(g, cert)}"
    if isinstance(cert, StrongShelter):
        return f"shelter ok, thickness {verify_shelter(g, cert)}"
    if isinstance(cert, LifoHaven):
        verify_haven(g, cert)
        return f"haven ok, order {cert.order}"
    if isinstance(cert, SearcherScript):
        used = cert.max_depth
        for variant in (Variant.I, Variant.ISC):
            trace = play(g, variant, used, cert)
            if trace.winner != "searcher":
                raise IllegalMove(f"script does not capture in the {variant.value} game")
        return f"script ok, wins i and isc with {used} searchers"
    if isinstance(cert, SolveReport):
        k = cert.search_number
        used = verify_strategy(g, cert.variant, k, cert.strategy,
                               cert.monotone, cert.stationary)
        return f"strategy ok, wins {cert.variant.value} with {used} <= {k} searchers"
    verify_trace(g, cert)
    return f"play trace ok, {cert.winner} wins by {cert.reason}"


def cmd_verify(args) -> int:
    g = read_graph(args.file)
    try:
        cert = read_certificate(args.cert, g)
        print(_check(g, cert))
    except (CertificateError, CertificateFormatError, IllegalMove, StrategyIncomplete) as exc:
        print(f"invalid: {exc}")
        return 1
    return 0


def cmd_play(args) -> int:
    g = read_graph(args.file)
    try:
        searcher = read_certificate(args.searcher, g)
        haven = read_certificate(args.fugitive, g)
    except CertificateFormatError as exc:
        raise UsageError(str(exc)) from exc
    if isinstance(searcher, SolveReport):
        searcher = searcher.strategy
    elif not isinstance(searcher, SearcherScript):
        raise UsageError("--searcher must be a solve_report or script certificate")
    if not isinstance(haven, LifoHaven):
        raise UsageError("--fugitive must be a haven certificate")
    try:
        rho = haven_to_fugitive_strategy(g, haven)
        trace = play(g, Variant.VSC, args.k, searcher, rho)
    except (CertificateError, IllegalMove, StrategyIncomplete) as exc:
        print(f"play aborted: {exc}")
        return 1
    for pos in trace.positions:
        print(pos.describe(g))
    print(f"winner: {trace.winner} ({trace.reason})")
    return 0


def _random_spec(text: str) -> tuple[int, float, int]:
    try:
        n, p, count = text.split(",")
        return int(n), float(p), int(count)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected n,p,count, got {text!r}") from None


def cmd_equiv_check(args) -> int:
    if args.exhaustive_n is not None:
        graphs = exhaustive_graphs(args.exhaustive_n)
    else:
        n, p, count = args.random
        graphs = random_graphs(n, p, count, args.seed)
    total = failed = 0
    for idx, g in enumerate(graphs):
        total += 1
        report = check_instance(g)
        if not report.ok:
            failed += 1
            print(f"counterexample #{idx} (n={g.n}, cr={report.rank}):")
            for line in report.failures:
                print(f"  {line}")
            print(to_edge_list(g), end="")
    print(f"{total - failed}/{total} instances passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lifosearch",
                                 description="Cycle-rank and LIFO-search tools.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank", help="print the cycle-rank")
    p.add_argument("file")
    p.add_argument("--witness", metavar="OUT.json")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("solve", help="print a search number")
    p.add_argument("file")
    p.add_argument("--variant", required=True, choices=[v.value for v in Variant])
    p.add_argument("--monotone", action="store_true")
    p.add_argument("--stationary", action="store_true")
    p.add_argument("--experimental", action="store_true",
                   help="allow --stationary outside vsc")
    p.add_argument("--strategy", metavar="OUT.json")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("numbers", help="print all nine search numbers and 1+cr")
    p.add_argument("file")
    p.set_defaults(func=cmd_numbers)

    for name, func, what in (("shelter", cmd_shelter, "a strong shelter"),
                             ("haven", cmd_haven, "a LIFO-haven"),
                             ("script", cmd_script, "a monotone searcher script")):
        p = sub.add_parser(name, help=f"emit {what}")
        p.add_argument("file")
        p.add_argument("-o", "--output", metavar="OUT.json")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="re-check a certificate")
    p.add_argument("file")
    p.add_argument("cert")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("play", help="play a searcher against a haven fugitive (vsc)")
    p.add_argument("file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--searcher", required=True, metavar="S.json")
    p.add_argument("--fugitive", required=True, metavar="H.json")
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("equiv-check", help="run the equivalence harness")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive-n", type=int, metavar="N")
    mode.add_argument("--random", type=_random_spec, metavar="n,p,count")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_equiv_check)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
