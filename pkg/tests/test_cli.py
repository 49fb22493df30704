import json

import pytest
from click.testing import CliRunner

from posdfa.automata import count_accepted_up_to
from posdfa.cli import main
from posdfa.fileio import read_dfa, read_sample
from posdfa.ilp import highs_command
from posdfa.oracle import enumerate_min_count

SAMPLE = "2 2\n2 0 1\n1 1\n"


@pytest.fixture
def files(tmp_path):
    sample = tmp_path / "p.txt"
    sample.write_text(SAMPLE)
    return tmp_path, str(sample)


def invoke(*args):
    return CliRunner().invoke(main, [str(a) for a in args])


def test_learn_writes_canonical_dfa(files):
    tmp, sample = files
    out = tmp / "a.dfa.json"
    res = invoke("--seed", 3, "learn", "--sample", sample, "--states", 2, "--init-rand", 5, "--nb-run", 3, "--out", out)
    assert res.exit_code == 0, res.output
    score, start = res.output.split()
    dfa = read_dfa(out)
    assert dfa.init == 0 and json.loads(out.read_text())["init"] == 0
    assert score == f"score={count_accepted_up_to(dfa, 2)}"
    assert start.startswith("start=")


def test_oracle_min_and_decision(files):
    _, sample = files
    best = enumerate_min_count(read_sample(sample), 2).min_count
    assert invoke("oracle", "--sample", sample, "--states", 2).output.strip() == f"min_count={best}"
    assert invoke("oracle", "--sample", sample, "--states", 2, "--k", best).output.strip() == "decision=true"
    assert invoke("oracle", "--sample", sample, "--states", 2, "--k", best - 1).output.strip() == "decision=false"


def test_oracle_guard_exit_code(files):
    _, sample = files
    assert invoke("oracle", "--sample", sample, "--states", 6).exit_code == 3


def test_malformed_sample_exit_code(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("2 2\n2 0 1\n")
    res = invoke("oracle", "--sample", bad, "--states", 2)
    assert res.exit_code == 2


def test_missing_solver_exit_code(files):
    tmp, sample = files
    res = invoke("solve", "--sample", sample, "--states", 2,
                 "--solver-cmd", "no-such-solver {lp} {sol}", "--out", tmp / "x.json")
    assert res.exit_code == 4


@pytest.mark.skipif(highs_command() is None, reason="highspy not installed")
def test_solve_with_bundled_adapter(files):
    tmp, sample = files
    res = invoke("solve", "--sample", sample, "--states", 2, "--solver-cmd", "highs",
                 "--binary-search", "--out", tmp / "x.json")
    assert res.exit_code == 0, res.output
    best = enumerate_min_count(read_sample(sample), 2).min_count
    assert res.stdout.strip() == f"count={best}"


def test_encode_reports_census(files):
    tmp, sample = files
    out = tmp / "m.lp"
    res = invoke("encode", "--sample", sample, "--states", 2, "--out", out)
    assert res.exit_code == 0
    assert res.output.startswith("variables=")
    assert out.read_text().rstrip().endswith("End")


def test_count_and_witness(tmp_path):
    a = {"alphabet": ["a"], "states": 2, "init": 0, "delta": [[1], [1]], "final": [0]}
    b = {"alphabet": ["a"], "states": 2, "init": 0, "delta": [[1], [0]], "final": [0]}
    pa, pb = tmp_path / "a.json", tmp_path / "b.json"
    pa.write_text(json.dumps(a))
    pb.write_text(json.dumps(b))
    assert invoke("count", pa, 5).output.strip() == "1"
    assert invoke("count", pb, 5).output.strip() == "3"
    assert invoke("witness", pa, pb).output.strip() == "length=2 word=aa"
    assert invoke("witness", pa, pa).output.strip() == "equal"


def test_bad_dfa_file_exit_code(tmp_path):
    p = tmp_path / "a.json"
    p.write_text('{"alphabet": ["a"], "states": 2, "init": 0, "delta": [[1]], "final": []}')
    assert invoke("count", p, 2).exit_code == 2


def test_gen_sample_and_bench(tmp_path):
    out = tmp_path / "s.txt"
    res = invoke("--seed", 4, "gen-sample", "--words", 50, "--out", out)
    assert res.exit_code == 0 and res.output.startswith("hidden_states=")
    again = tmp_path / "s2.txt"
    invoke("--seed", 4, "gen-sample", "--words", 50, "--out", again)
    assert out.read_text() == again.read_text()
    csv_path = tmp_path / "b.csv"
    res = invoke("--quiet", "--timeout-ms", 20000, "bench", "--sample", out, "--states", 2,
                 "--algo", "heuristic", "--algo", "ilp", "--init-rand", 2, "--nb-run", 2, "--csv", csv_path)
    assert res.exit_code == 0
    rows = csv_path.read_text().splitlines()
    assert rows[0] == "instance,algo,n,seed,start_score,final_score,ms,status"
    assert rows[1].endswith(",ok") and rows[2].endswith(",unavailable")


def test_reduce_tiny_audit(tmp_path):
    apn = tmp_path / "x.apn"
    apn.write_text("p apn 2 2\n+ 1 2\n- 2\n")
    sample = tmp_path / "p.txt"
    res = invoke("reduce", "--apn", apn, "--scale", "tiny", "--k", 10, "--d", 6, "--T", 2, "--M", 2,
                 "--audit", "--out-sample", sample)
    assert res.exit_code == 0, res.output
    assert "k=10" in res.output
    assert len(read_sample(sample)) > 0
    bad = invoke("reduce", "--apn", apn, "--valuation", "1=X 2=F", "--audit")
    assert bad.exit_code == 2


def test_reduce_tiny_needs_all_parameters(tmp_path):
    apn = tmp_path / "x.apn"
    apn.write_text("p apn 2 1\n+ 1 2\n")
    assert invoke("reduce", "--apn", apn, "--scale", "tiny", "--k", 3).exit_code == 2
