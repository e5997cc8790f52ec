import io
import json
import subprocess
import sys

import pytest

from basopt.cli import main
from basopt.constrained import ENGINEERING_IDS
from basopt.objectives import BENCHMARK_IDS


def invoke(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_list_covers_every_problem():
    code, text = invoke("list")
    assert code == 0
    names = [line.split()[0] for line in text.splitlines()]
    assert names == list(BENCHMARK_IDS + ENGINEERING_IDS)
    assert "alpha=0.94 c=0.94 d0=0.001" in text.splitlines()[0]
    assert "n=30" in text.splitlines()[0]


def test_solve_is_reproducible():
    a = invoke("solve", "--problem", "f1", "--seed", "42", "--kmax", "2000")
    b = invoke("solve", "--problem", "f1", "--seed", "42", "--kmax", "2000")
    assert a == b
    assert a[0] == 0
    assert "f_best:" in a[1] and "evaluations: 6001" in a[1]


def test_solve_engineering_prints_feasibility():
    code, text = invoke("solve", "--problem", "three_bar_truss", "--kmax", "500")
    assert code == 0
    for key in ("g1:", "g2:", "g3:", "max_violation:", "in_bounds:", "f_raw:"):
        assert key in text


def test_solve_writes_same_values(tmp_path):
    path = tmp_path / "solve.json"
    code, text = invoke("solve", "--problem", "f6", "--kmax", "500", "--out", str(path))
    assert code == 0
    run = json.loads(path.read_text())["runs"][0]
    printed = dict(line.split(": ", 1) for line in text.splitlines())
    assert repr(run["f_best"]) == printed["f_best"]
    assert str(run["evaluations"]) == printed["evaluations"]
    assert str(run["seed"]) == printed["seed"]


def test_bench_row_and_file_agree(tmp_path):
    path = tmp_path / "bench.json"
    code, text = invoke("bench", "--problem", "f5", "--runs", "3", "--seed", "1",
                        "--kmax", "400", "--threads", "1", "--out", str(path))
    assert code == 0
    header, row = text.splitlines()[:2]
    assert header.split() == ["problem", "runs", "success_rate", "best_f", "mean_f", "std_f"]
    fields = row.split()
    stats = json.loads(path.read_text())["stats"]
    assert fields[0] == "f5" and int(fields[1]) == stats["n_runs"] == 3
    assert [float(v) for v in fields[2:]] == [stats["success_rate"], stats["best_f"], stats["mean_f"], stats["std_f"]]


def test_bench_csv_output(tmp_path):
    path = tmp_path / "bench.csv"
    code, _ = invoke("bench", "--problem", "f6", "--runs", "2", "--kmax", "200",
                     "--threads", "1", "--format", "csv", "--out", str(path))
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "run,seed,f_best,evaluations,success" and len(lines) == 3


def test_bench_thread_count_does_not_change_output():
    args = ("bench", "--problem", "f7", "--runs", "3", "--seed", "9", "--kmax", "300")
    assert invoke(*args, "--threads", "1") == invoke(*args, "--threads", "2")


def test_bench_engineering_reports_feasible_runs():
    code, text = invoke("bench", "--problem", "spring", "--runs", "2", "--threads", "1", "--kmax", "100")
    assert code == 0
    assert text.splitlines()[1].split()[2] == "-"
    assert "feasible_runs:" in text


@pytest.mark.parametrize(
    "argv, flag",
    [
        (["solve", "--problem", "f9"], "--problem"),
        (["solve"], "--problem"),
        (["solve", "--problem", "f1", "--alpha", "1.5"], "--alpha"),
        (["solve", "--problem", "f1", "--d-init", "-1"], "--d-init"),
        (["solve", "--problem", "f1", "--step-floor", "-0.1"], "--step-floor"),
        (["solve", "--problem", "f1", "--kmax", "-5"], "--kmax"),
        (["solve", "--problem", "f1", "--seed", "-1"], "--seed"),
        (["solve", "--problem", "f1", "--rho", "10"], "--rho"),
        (["solve", "--problem", "spring", "--rho", "0"], "--rho"),
        (["bench", "--problem", "f1", "--runs", "0"], "--runs"),
        (["bench", "--problem", "f1", "--threads", "0"], "--threads"),
        (["solve", "--problem", "spring", "--early-stop"], "--early-stop"),
    ],
)
def test_invalid_flags(argv, flag, capsys):
    code, _ = invoke(*argv)
    err = capsys.readouterr().err.strip()
    assert code != 0
    assert len(err.splitlines()) == 1 and flag in err


def test_unwritable_output(tmp_path, capsys):
    code, _ = invoke("solve", "--problem", "f6", "--kmax", "10", "--out", str(tmp_path / "no" / "x.json"))
    assert code != 0
    assert "--out" in capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "basopt", "list"], capture_output=True, text=True, check=True)
    assert "speed_reducer" in proc.stdout
