import json

import pytest

from partition_schemes.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count(capsys):
    assert run(capsys, "count", "--base", "primes", "--n", "10") == (0, "5\n", "")
    assert run(capsys, "count", "--base", "odds", "--n", "8", "--alpha", "1")[1] == "2\n"


def test_identity_verify(capsys):
    code, out, _ = run(capsys, "identity", "verify", "--n", "10", "--alpha", "1", "--base", "odds")
    assert code == 0 and out.strip() == "OK lhs=rhs=10"


def test_identity_show_and_solutions(capsys):
    code, out, _ = run(capsys, "identity", "show", "--n", "3", "--alpha", "2")
    assert code == 0 and out.strip() == "p(1) + p(3)"
    code, out, _ = run(capsys, "solutions", "--n", "10", "--alpha", "1")
    assert code == 0 and len(out.strip().splitlines()) == 15


def test_expand(capsys):
    code, out, _ = run(capsys, "expand", "--n1", "10", "--n2", "10", "--alpha", "1", "--base", "primes")
    assert code == 0 and out.splitlines() == ["terms=169", "OK value=9 product=9"]


def test_golden(capsys):
    code, out, _ = run(capsys, "golden")
    assert code == 0 and out.count("OK") == 4


def test_simulate_ballot(tmp_path, capsys):
    code, out, _ = run(capsys, "simulate", "ballot", "--r", "3", "--votes", "1,0,1", "--seed", "9", "--out", str(tmp_path))
    assert code == 0 and "y=2 nays=1" in out
    tally = [json.loads(l) for l in (tmp_path / "transcript.jsonl").read_text().splitlines()][-1]
    assert tally["kind"] == "tally" and tally["payload"]["y"] == 2


def test_simulate_ballot_fraud_and_votes_file(tmp_path, capsys):
    votes = tmp_path / "votes.txt"
    votes.write_text("1\n0\n2\n")
    code, out, _ = run(capsys, "simulate", "ballot", "--votes-file", str(votes))
    assert code == 1 and "inspection=fraudulent" in out


def test_simulate_membership(capsys):
    assert run(capsys, "simulate", "membership", "--seed", "3")[0] == 0
    code, out, _ = run(capsys, "simulate", "membership", "--behaviors", "honest,replay,honest")
    assert code == 1 and "cheaters=1" in out


def test_simulate_unanimity(capsys):
    assert run(capsys, "simulate", "unanimity", "--r", "4")[0] == 0
    assert run(capsys, "simulate", "unanimity", "--r", "4", "--objectors", "2")[0] == 1


def test_transcripts_byte_identical(tmp_path, capsys):
    for name in ("a", "b"):
        run(capsys, "simulate", "membership", "--behaviors", "random", "--seed", "5", "--out", str(tmp_path / name))
    a = (tmp_path / "a" / "transcript.jsonl").read_bytes()
    assert a == (tmp_path / "b" / "transcript.jsonl").read_bytes()


def test_domain_and_usage_errors(capsys):
    code, _, err = run(capsys, "simulate", "membership", "--n1", "20", "--n2", "21")
    assert code == 2 and "gcd" in err
    assert run(capsys, "count", "--n", "3")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# ballot settings\nr = 3\nvotes = 1,1,1\nseed = 4\nno_inspect = true\n")
    code, out, _ = run(capsys, "simulate", "ballot", "--config", str(cfg))
    assert code == 0 and out.strip() == "y=3 nays=0"
    code, out, _ = run(capsys, "--config", str(cfg), "simulate", "ballot", "--votes", "0,0,1")
    assert code == 0 and out.strip() == "y=1 nays=2"
    assert run(capsys, "count", "--config", str(tmp_path / "missing.cfg"))[0] == 2


def test_attack(tmp_path, capsys):
    code, out, _ = run(capsys, "attack", "--bound", "12", "--k", "2", "--out", str(tmp_path))
    assert code == 0 and out.startswith("k=1")
    report = json.loads((tmp_path / "attack_report.json").read_text())
    assert len(report["pairs"]) == 78
