import json
import subprocess
import sys

from gwh.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_gw_klk(capsys):
    code, out, _ = run(capsys, "gw", "--target-genus", "0", "--degree", "2", "--k", "[1,1]")
    assert code == 0
    assert out["value"] == "1/2"
    assert out["domain_genus"] == 0
    assert "elapsed_ms" not in out


def test_completed_cycle_three(capsys):
    code, out, _ = run(capsys, "completed-cycle", "--k", "3")
    assert code == 0
    assert out["values"] == [
        {"class": [3], "coefficient": "1"},
        {"class": [1, 1], "coefficient": "1"},
        {"class": [1], "coefficient": "1/12"},
        {"class": [], "coefficient": "7/2880"},
    ]
    code, inv, _ = run(capsys, "completed-cycle", "--k", "3", "--method", "inversion")
    assert inv["values"] == out["values"]


def test_relative_pipelines_agree(capsys):
    values = set()
    for pipeline in ("character", "operator", "closed"):
        code, out, _ = run(capsys, "gw", "--degree", "2", "--k", "[3]", "--mu", "[2]",
                           "--nu", "[1,1]", "--connected", "--pipeline", pipeline)
        assert code == 0
        values.add(out["value"])
    assert len(values) == 1


def test_hurwitz_and_oracle(capsys):
    args = ["hurwitz", "--degree", "3", "--profiles", "[[3],[3]]"]
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args, "--oracle")
    assert a["value"] == b["value"] == "1/3"
    assert b["pipeline"] == "oracle"


def test_elliptic_fit(capsys):
    code, out, _ = run(capsys, "elliptic", "--k", "[0]", "--fit-weight", "2")
    assert code == 0
    assert out["values"] == [{"E2": 1, "E4": 0, "E6": 0, "coefficient": "1"}]


def test_elliptic_fit_failure_exit_one(capsys):
    code, out, _ = run(capsys, "elliptic", "--k", "[0]", "--fit-weight", "4")
    assert code == 1
    assert "not quasimodular" in out["error"]


def test_elliptic_pipelines_agree(capsys):
    outs = [run(capsys, "elliptic", "--k", "[1]", "--q-order", "4", "--pipeline", p)[1]["values"]
            for p in ("character", "trace", "theta")]
    assert outs[0] == outs[1] == outs[2]


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all", "--max-degree", "2")
    assert code == 0
    assert out["failed"] == 0
    assert {r["suite"] for r in out["values"]} >= {"hurwitz", "gwh", "toda"}


def test_usage_errors(capsys):
    code, _, err = run(capsys, "gw", "--bogus")
    assert code == 2
    assert "usage" in err
    code, _, err = run(capsys, "gw", "--degree", "2", "--pipeline", "operator")
    assert code == 2
    code, _, _ = run(capsys, "hurwitz", "--degree", "9", "--oracle")
    assert code == 2


def test_deterministic_output(capsys):
    args = ["characters", "--degree", "4"]
    main(args)
    first = capsys.readouterr().out
    main(args)
    assert capsys.readouterr().out == first


def test_cache_round_trip(tmp_path, capsys):
    cache = tmp_path / "cache.jsonl"
    args = ["--cache", str(cache), "pk", "--k", "3", "--lam", "[]"]
    _, first, _ = run(capsys, *args)
    assert first["value"] == "7/960"
    assert len(cache.read_text().splitlines()) == 1
    _, second, _ = run(capsys, *args)
    assert second == first
    assert len(cache.read_text().splitlines()) == 1


def test_config_and_timing(tmp_path, capsys):
    cfg = tmp_path / "gwh.json"
    cfg.write_text(json.dumps({"ceilings": {"oracle_g0_degree": 2, "oracle_g1_degree": 1}}))
    code, out, _ = run(capsys, "--config", str(cfg), "--timing", "verify", "--suite", "hurwitz")
    assert code == 0
    assert "elapsed_ms" in out
    cfg.write_text(json.dumps({"ceilings": {"nonsense": 1}}))
    code, _, _ = run(capsys, "--config", str(cfg), "verify", "--suite", "hurwitz")
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gwh", "pk", "--k", "1", "--lam", "[1]"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["value"] == "23/24"
