import os
import subprocess
import sys

import pytest

from treeaug import cli, sim


def run_cli(args):
    return cli.main(list(args))


@pytest.fixture(autouse=True)
def _restore_sim_globals():
    mr = sim.DEFAULT_MAX_ROUNDS
    yield
    sim.DEFAULT_MAX_ROUNDS = mr
    sim.TRANSCRIPT_SINK = None


def test_gen_and_run_all_algorithms(tmp_path):
    inst = str(tmp_path / "r.txt")
    assert run_cli(["gen", "random", "--n", "14", "--extra", "8",
                    "--seed", "3", "--wmin", "1", "--wmax", "9",
                    "-o", inst]) == 0
    for algo in cli.ALGOS:
        assert run_cli(["run", inst, "--algo", algo]) == 0, algo


def test_run_with_oracle_and_csv(tmp_path):
    inst = str(tmp_path / "small.txt")
    csv = str(tmp_path / "out.csv")
    run_cli(["gen", "random", "--n", "8", "--extra", "4", "--seed", "1",
             "--wmin", "1", "--wmax", "9", "-o", inst])
    assert run_cli(["run", inst, "--algo", "wtap", "--oracle",
                    "--csv", csv]) == 0
    assert run_cli(["run", inst, "--algo", "tap", "--oracle",
                    "--csv", csv]) == 0
    lines = open(csv).read().strip().split("\n")
    assert lines[0] == cli.CSV_HEADER
    assert len(lines) == 3
    row = dict(zip(lines[0].split(","), lines[1].split(",")))
    assert row["algorithm"] == "wtap" and row["valid"] == "1"
    assert float(row["ratio"]) <= 2.0
    assert int(row["n"]) == 8 and int(row["m"]) == 12


def test_metrics_and_transcript_outputs(tmp_path):
    inst = str(tmp_path / "c.txt")
    met = str(tmp_path / "m.csv")
    tr = str(tmp_path / "t.log")
    run_cli(["gen", "cycle", "--n", "12", "-o", inst])
    assert run_cli(["run", inst, "--algo", "tap", "--metrics", met,
                    "--transcript", tr]) == 0
    mlines = open(met).read().strip().split("\n")
    assert mlines[0] == "phase,rounds,messages,tokens,max_tokens_edge_round"
    assert mlines[-1].startswith("total,")
    tlines = open(tr).read().strip().split("\n")
    assert any(l.startswith("# phase") for l in tlines)
    data = [l for l in tlines if not l.startswith("#")]
    assert data and all(len(l.split(",")) >= 6 for l in data)


def test_repeat_runs_byte_identical(tmp_path):
    inst = str(tmp_path / "g.txt")
    run_cli(["gen", "random", "--n", "20", "--extra", "10", "--seed", "7",
             "--wmin", "1", "--wmax", "20", "-o", inst])
    outs = []
    for i in range(2):
        tr = str(tmp_path / ("t%d.log" % i))
        csv = str(tmp_path / ("c%d.csv" % i))
        assert run_cli(["run", inst, "--algo", "wtap", "--csv", csv,
                        "--transcript", tr]) == 0
        outs.append((open(tr, "rb").read(), open(csv, "rb").read()))
    assert outs[0] == outs[1]


def test_bridged_input_exits_2(tmp_path):
    inst = tmp_path / "b.txt"
    inst.write_text("4 4\n0 1 1 t\n1 2 1 t\n2 3 1 t\n1 3 1\n")
    assert run_cli(["run", str(inst), "--algo", "tap"]) == 2


def test_round_limit_exits_3(tmp_path):
    inst = str(tmp_path / "c.txt")
    run_cli(["gen", "cycle", "--n", "64", "-o", inst])
    assert run_cli(["run", inst, "--algo", "tap", "--max-rounds", "3"]) == 3


def test_oracle_subcommand(tmp_path, capsys):
    inst = str(tmp_path / "p.txt")
    run_cli(["gen", "lb-path", "--k", "3", "-o", inst])
    capsys.readouterr()
    assert run_cli(["oracle", inst, "--problem", "tap"]) == 0
    out = capsys.readouterr().out
    assert "optimum=3" in out
    # the guard path reports and exits 1
    big = str(tmp_path / "big.txt")
    run_cli(["gen", "cycle", "--n", "50", "-o", big])
    assert run_cli(["oracle", big, "--problem", "ecss"]) == 1


def test_missing_tree_is_an_error(tmp_path):
    inst = tmp_path / "nt.txt"
    inst.write_text("3 3\n0 1 1\n1 2 1\n0 2 1\n")
    assert run_cli(["run", str(inst), "--algo", "tap"]) == 1
    # verify has no tree requirement
    assert run_cli(["run", str(inst), "--algo", "verify"]) == 0


def test_console_script_entry_point(tmp_path):
    inst = str(tmp_path / "e.txt")
    r = subprocess.run([sys.executable, "-m", "treeaug.cli", "gen", "cycle",
                        "--n", "6", "-o", inst], capture_output=True, text=True)
    assert r.returncode == 0 and "wrote" in r.stdout
    r = subprocess.run([sys.executable, "-m", "treeaug.cli", "run", inst,
                        "--algo", "tap", "--oracle"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert "valid=True" in r.stdout and "optimum=" in r.stdout
