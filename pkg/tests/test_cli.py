import json

import pytest

from lifosearch.cli import main
from lifosearch.formats import dump_certificate, parse_edge_list
from lifosearch.game import SolveReport, Variant, searcher_strategy


@pytest.fixture
def cycle(tmp_path):
    path = tmp_path / "c3.txt"
    path.write_text("1 2\n2 3\n3 1\n")
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


def test_rank(capsys, cycle, tmp_path):
    code, out = run(capsys, "rank", cycle, "--witness", tmp_path / "w.json")
    assert code == 0 and out.strip() == "1"
    assert json.loads((tmp_path / "w.json").read_text())["kind"] == "elimination_forest"


def test_numbers(capsys, cycle):
    code, out = run(capsys, "numbers", cycle)
    lines = out.split()
    assert code == 0 and len(lines) == 10
    assert all(line.endswith("=2") for line in lines)
    assert lines[-1] == "1+cr=2"


def test_solve_flags(capsys, cycle, tmp_path):
    assert run(capsys, "solve", cycle, "--variant", "vsc", "--stationary") == (0, "2\n")
    assert run(capsys, "solve", cycle, "--variant", "i", "--stationary")[0] == 2
    code, out = run(capsys, "solve", cycle, "--variant", "i", "--stationary", "--experimental")
    assert (code, out) == (0, "3\n")


def test_emitted_certificates_verify(capsys, cycle, tmp_path):
    for cmd, flag in (("shelter", "-o"), ("haven", "-o"), ("script", "-o")):
        out = tmp_path / f"{cmd}.json"
        assert run(capsys, cmd, cycle, flag, out)[0] == 0
        code, text = run(capsys, "verify", cycle, out)
        assert code == 0, text
    strat = tmp_path / "st.json"
    run(capsys, "solve", cycle, "--variant", "v", "--monotone", "--strategy", strat)
    assert run(capsys, "verify", cycle, strat)[0] == 0


def test_verify_tampered_shelter(capsys, cycle, tmp_path):
    cert = tmp_path / "s.json"
    run(capsys, "shelter", cycle, "-o", cert)
    doc = json.loads(cert.read_text())
    doc["payload"]["sets"] = [s for s in doc["payload"]["sets"] if len(s) != 1][:1] + [[0]]
    cert.write_text(json.dumps(doc))
    code, out = run(capsys, "verify", cycle, cert)
    assert code == 1 and "[0]" in out


def test_verify_hash_mismatch(capsys, cycle, tmp_path):
    cert = tmp_path / "s.json"
    run(capsys, "shelter", cycle, "-o", cert)
    other = tmp_path / "p.txt"
    other.write_text("a b\n")
    code, out = run(capsys, "verify", other, cert)
    assert code == 1 and "different graph" in out


def test_play_haven_beats_one_searcher(capsys, cycle, tmp_path):
    run(capsys, "haven", cycle, "-o", tmp_path / "h.json")
    doc = {"spec_version": "1.0", "kind": "script",
           "graph_hash": json.loads((tmp_path / "h.json").read_text())["graph_hash"],
           "payload": {"moves": [{"op": "place", "vertex": 0}, {"op": "remove"}]}}
    (tmp_path / "s.json").write_text(json.dumps(doc))
    code, out = run(capsys, "play", cycle, "--k", 1, "--searcher", tmp_path / "s.json",
                    "--fugitive", tmp_path / "h.json")
    assert code == 1 and "strategy undefined" in out
    # a strategy table for one searcher loops forever against the haven
    g = parse_edge_list(cycle.read_text())
    table = searcher_strategy(g, Variant.VSC, 1)
    (tmp_path / "t.json").write_text(dump_certificate(g, SolveReport(
        Variant.VSC, False, False, 1, table)))
    code, out = run(capsys, "play", cycle, "--k", 1, "--searcher", tmp_path / "t.json",
                    "--fugitive", tmp_path / "h.json")
    assert code == 0 and out.strip().endswith("winner: fugitive (repetition)")


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "rank", tmp_path / "missing.txt")[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("a a\n")
    assert run(capsys, "rank", bad)[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "equiv-check", "--random", "5,x")[0] == 2


def test_equiv_check(capsys):
    code, out = run(capsys, "equiv-check", "--exhaustive-n", 2)
    assert code == 0 and out.strip() == "5/5 instances passed"
    code, out = run(capsys, "equiv-check", "--random", "4,0.5,3", "--seed", 7)
    assert code == 0 and out.strip() == "3/3 instances passed"
