import json

import pytest

from pikdom.cli import main
from pikdom.model import parse_model, serialize_model
from pikdom.reduction import build_digraph, dump_digraph

P6_TEXT = "6\n1 2.2\n2 3.2\n3 4.2\n4 5.2\n5 6.2\n6 7.2\n"
TWO_OVERLAP = "2\n0 2\n1 3\n"


@pytest.fixture
def p6_file(tmp_path):
    p = tmp_path / "p6.txt"
    p.write_text(P6_TEXT)
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ------------------------------------------------------------------ solve

def test_solve_text_report(capsys, p6_file):
    code, out, err = run(capsys, "solve", p6_file, "--variant", "total", "--k", "1")
    assert code == 0
    assert "feasible: yes" in out
    assert "cost: 4" in out
    assert "engine: fast" in out
    assert "time:" in err and "time:" not in out


def test_solve_json_round_trip(capsys, p6_file):
    code, out, _ = run(
        capsys, "solve", p6_file, "--variant", "total", "--k", "1", "--format", "json"
    )
    assert code == 0
    report = json.loads(out)
    assert report == {
        "feasible": True,
        "cost": 4,
        "set": report["set"],
        "engine": "fast",
        "k": 1,
        "variant": "total",
        "n": 6,
    }
    assert json.dumps(report, sort_keys=True, separators=(",", ":")) == out.strip()


def test_solve_byte_identical_reports(capsys, p6_file):
    _, out1, _ = run(capsys, "solve", p6_file, "--variant", "total", "--k", "1",
                     "--format", "json", "--stats")
    _, out2, _ = run(capsys, "solve", p6_file, "--variant", "total", "--k", "1",
                     "--format", "json", "--stats")
    assert out1 == out2


def test_solve_engines_agree_via_cli(capsys, p6_file):
    costs = {}
    for algo in ("fast", "naive", "brute"):
        code, out, _ = run(capsys, "solve", p6_file, "--variant", "kdom", "--k", "2",
                           "--algo", algo, "--format", "json")
        assert code == 0
        costs[algo] = json.loads(out)["cost"]
    assert len(set(costs.values())) == 1


def test_solve_infeasible_exit_2(capsys, tmp_path):
    inst = tmp_path / "iso.txt"
    inst.write_text("3\n0 1\n5 6\n10 11\n")  # isolated vertices
    code, out, _ = run(capsys, "solve", str(inst), "--variant", "total", "--k", "1",
                       "--format", "json")
    assert code == 2
    report = json.loads(out)
    assert report["feasible"] is False
    assert report["cost"] is None and report["set"] == []


def test_solve_parse_error_exit_1(capsys, tmp_path):
    inst = tmp_path / "bad.txt"
    inst.write_text("2\n0 5\n1 2\n")  # containment
    code, _, err = run(capsys, "solve", str(inst), "--variant", "total", "--k", "1")
    assert code == 1
    assert "E_NOT_PROPER" in err


def test_solve_budget_exit_1(capsys, tmp_path):
    inst = tmp_path / "dense.txt"
    inst.write_text("6\n1 7\n2 8\n3 9\n4 10\n5 11\n6 12\n")
    code, _, err = run(capsys, "solve", str(inst), "--variant", "total", "--k", "2",
                       "--cap-nodes", "3")
    assert code == 1
    assert "E_BUDGET" in err


def test_solve_missing_file(capsys):
    code, _, err = run(capsys, "solve", "/nonexistent/x.txt", "--variant", "total", "--k", "1")
    assert code == 1
    assert "E_IO" in err


def test_solve_dump_dag(capsys, tmp_path):
    inst = tmp_path / "two.txt"
    inst.write_text(TWO_OVERLAP)
    dump = tmp_path / "dag.txt"
    code, _, _ = run(capsys, "solve", str(inst), "--variant", "total", "--k", "1",
                     "--dump-dag", str(dump))
    assert code == 0
    model = parse_model(TWO_OVERLAP)
    assert dump.read_text() == dump_digraph(build_digraph(model, 1, "total"))


def test_solve_stats_text(capsys, p6_file):
    code, out, _ = run(capsys, "solve", p6_file, "--variant", "total", "--k", "1", "--stats")
    assert code == 0
    assert "stats.suffix_classes:" in out


def test_solve_k4_kdom(capsys, tmp_path):
    inst = tmp_path / "k4.txt"
    inst.write_text("4\n1 5\n2 6\n3 7\n4 8\n")
    code, out, _ = run(capsys, "solve", str(inst), "--variant", "kdom", "--k", "2",
                       "--format", "json")
    assert code == 0
    assert json.loads(out)["cost"] == 2


def test_solve_weighted_instance(capsys, tmp_path):
    inst = tmp_path / "w.txt"
    inst.write_text("5 weighted\n1 2.2 9\n2 3.2 1\n3 4.2 1\n4 5.2 5\n5 6.2 9\n")
    for algo in ("fast", "naive", "brute"):
        code, out, _ = run(capsys, "solve", str(inst), "--variant", "total", "--k", "1",
                           "--algo", algo, "--format", "json")
        assert code == 0
        report = json.loads(out)
        assert report["cost"] == 7
        assert report["set"] == [2, 3, 4]


# ----------------------------------------------------------------- verify

def test_verify_valid(capsys, p6_file, tmp_path):
    setfile = tmp_path / "set.txt"
    setfile.write_text("2\n3\n5\n6\n")
    code, out, _ = run(capsys, "verify", p6_file, str(setfile),
                       "--variant", "total", "--k", "1")
    assert code == 0 and out.strip() == "valid"


def test_verify_invalid_witness(capsys, p6_file, tmp_path):
    setfile = tmp_path / "set.txt"
    setfile.write_text("2\n5\n")
    code, out, _ = run(capsys, "verify", p6_file, str(setfile),
                       "--variant", "total", "--k", "1")
    assert code == 2
    assert "vertex 2" in out  # first violated vertex


def test_verify_empty_set_invalid(capsys, p6_file, tmp_path):
    setfile = tmp_path / "empty.txt"
    setfile.write_text("# nothing\n")
    code, out, _ = run(capsys, "verify", p6_file, str(setfile),
                       "--variant", "kdom", "--k", "1")
    assert code == 2
    assert "vertex 1" in out


def test_verify_json(capsys, p6_file, tmp_path):
    setfile = tmp_path / "set.txt"
    setfile.write_text("2\n5\n")
    code, out, _ = run(capsys, "verify", p6_file, str(setfile),
                       "--variant", "kdom", "--k", "1", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"valid": True}


def test_verify_bad_index(capsys, p6_file, tmp_path):
    setfile = tmp_path / "set.txt"
    setfile.write_text("99\n")
    code, _, err = run(capsys, "verify", p6_file, str(setfile),
                       "--variant", "kdom", "--k", "1")
    assert code == 1 and "E_INDEX" in err


# -------------------------------------------------------------------- gen

def test_gen_deterministic_and_valid(capsys):
    code, out1, _ = run(capsys, "gen", "--n", "7", "--seed", "5", "--stretch", "2.5")
    code2, out2, _ = run(capsys, "gen", "--n", "7", "--seed", "5", "--stretch", "2.5")
    assert code == code2 == 0
    assert out1 == out2
    m = parse_model(out1)
    assert m.n == 7
    assert serialize_model(m) == out1


def test_gen_env_seed_override(capsys, monkeypatch):
    _, base, _ = run(capsys, "gen", "--n", "5", "--seed", "1")
    monkeypatch.setenv("PIKDOM_SEED", "99")
    _, forced, _ = run(capsys, "gen", "--n", "5", "--seed", "1")
    monkeypatch.delenv("PIKDOM_SEED")
    _, alt, _ = run(capsys, "gen", "--n", "5", "--seed", "99")
    assert forced == alt and forced != base


def test_gen_to_file(capsys, tmp_path):
    out = tmp_path / "inst.txt"
    code, stdout, _ = run(capsys, "gen", "--n", "4", "--seed", "2", "--out", str(out))
    assert code == 0 and stdout == ""
    assert parse_model(out.read_text()).n == 4


# ------------------------------------------------------------------ bench

def test_bench_generated_sweep(capsys):
    code, out, _ = run(capsys, "bench", "--n-min", "8", "--n-max", "10",
                       "--k", "1", "--variant", "kdom",
                       "--engines", "fast,naive,brute", "--stretch", "4")
    assert code == 0
    rows = out.strip().splitlines()
    assert rows[0] == "n,k,variant,engine,nodes,arcs_or_tests,wall_ms,cost"
    assert len(rows) == 1 + 3 * 3
    by_n = {}
    for row in rows[1:]:
        fields = row.split(",")
        by_n.setdefault(fields[0], set()).add(fields[-1])
    assert all(len(costs) == 1 for costs in by_n.values())  # engines agree


def test_bench_instance_dir(capsys, tmp_path):
    (tmp_path / "a.txt").write_text(P6_TEXT)
    (tmp_path / "b.txt").write_text(TWO_OVERLAP)
    code, out, _ = run(capsys, "bench", "--dir", str(tmp_path), "--k", "1",
                       "--variant", "total", "--engines", "fast,naive")
    assert code == 0
    assert len(out.strip().splitlines()) == 1 + 2 * 2


def test_bench_empty_dir_exit_1(capsys, tmp_path):
    code, _, err = run(capsys, "bench", "--dir", str(tmp_path))
    assert code == 1
    assert "E_PARSE" in err


# --------------------------------------------------------------- selftest

def test_selftest_quick_pass(capsys):
    code, out, _ = run(capsys, "selftest", "--quick")
    assert code == 0
    assert "selftest: PASS" in out


def test_selftest_injected_fault_fails(capsys):
    code, out, _ = run(capsys, "selftest", "--quick", "--inject-fault")
    assert code == 1
    assert "FAIL" in out
    assert "instance:" in out  # counterexample echoed
    import pikdom.reduction as reduction

    assert not reduction._FAULTS  # hook cleaned up
