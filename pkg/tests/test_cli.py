import io
import subprocess
import sys

import pytest

from mrlc import __version__, fileformat
from mrlc.cli import run
from mrlc.gf2 import table_digest
from mrlc.topology import CodeInstance


@pytest.fixture
def stdin(monkeypatch):
    def feed(text):
        monkeypatch.setattr(sys, "stdin", io.StringIO(text))
    return feed


def construct_file(tmp_path, *extra, k=6, r=2, h=2, kind="optimized"):
    path = tmp_path / "code.mrlc"
    assert run(["construct", "--kind", kind, "--k", str(k), "--r", str(r), "--h", str(h),
                "--out", str(path), *extra]) == 0
    return path


def test_version(capsys):
    assert run(["--version"]) == 0
    out = capsys.readouterr().out.strip()
    assert out == f"mrlc {__version__} irreducible-table sha256:{table_digest()}"


def test_usage_errors_exit_2(capsys):
    assert run([]) == 2
    assert run(["construct", "--kind", "optimized", "--k", "6"]) == 2
    assert run(["construct", "--kind", "weird", "--k", "6", "--r", "2", "--h", "2"]) == 2
    assert run(["construct", "--kind", "basic", "--k", "0", "--r", "2", "--h", "2"]) == 2
    assert run(["construct", "--kind", "basic", "--k", "5", "--r", "2", "--h", "2"]) == 2
    assert run(["construct", "--kind", "basic", "--k", "6", "--r", "2", "--h", "2", "--k-target", "4"]) == 2


def test_construct_to_stdout(capsys):
    assert run(["construct", "--kind", "basic", "--k", "4", "--r", "2", "--h", "2"]) == 0
    captured = capsys.readouterr()
    code = fileformat.loads(captured.out)
    assert code.field.degree == 8 and code.topology.n == 9
    assert "n=9" in captured.err


def test_construct_verify_pipeline(tmp_path, capsys):
    path = construct_file(tmp_path)
    assert run(["verify", str(path)]) == 0
    assert capsys.readouterr().out.startswith("MR method=difference-set checked=81 exhaustive")
    assert run(["verify", str(path), "--oracle", "--jobs", "2"]) == 0
    assert "method=rank" in capsys.readouterr().out


def test_large_code_needs_sampling(tmp_path, capsys):
    path = construct_file(tmp_path, k=60, r=4, h=4)
    assert run(["verify", str(path), "--sample", "1000", "--seed", "3"]) == 0
    assert "sampled seed=3" in capsys.readouterr().out
    assert run(["verify", str(path)]) == 2
    assert "budget" in capsys.readouterr().err


def test_corrupted_code_file_exits_1(tmp_path, capsys):
    path = construct_file(tmp_path)
    code = fileformat.load(path)
    a = list(code.alphas)
    a[1] = a[0]
    fileformat.dump(CodeInstance(code.topology, code.field, a), path)
    assert run(["verify", str(path)]) == 1
    out = capsys.readouterr().out
    assert out.startswith("NotMR") and "erasures=" in out and "subset=" in out
    assert run(["verify", str(path), "--oracle"]) == 1


def test_bad_files_exit_2(tmp_path, capsys):
    assert run(["verify", str(tmp_path / "missing.mrlc")]) == 2
    bad = tmp_path / "bad.mrlc"
    bad.write_text("mrlc v1\nkind local\n")
    assert run(["verify", str(bad)]) == 2
    assert "bad code file" in capsys.readouterr().err


def test_encode_decode_round_trip(tmp_path, capsys, stdin):
    path = construct_file(tmp_path)
    stdin("0x1 0x2 0x3 0x4 0x5 0x6\n")
    assert run(["encode", str(path)]) == 0
    word = capsys.readouterr().out.split()
    assert len(word) == 12
    garbled = list(word)
    for i in (0, 3, 7, 9):
        garbled[i] = "?"
    stdin(" ".join(garbled))
    assert run(["decode", str(path), "--erase", "0,3,7,9"]) == 0
    assert capsys.readouterr().out.split() == word
    stdin(" ".join(garbled))
    assert run(["decode", str(path), "--erase", "0,3,7,9", "--data-only"]) == 0
    assert capsys.readouterr().out.split() == ["0x1", "0x2", "0x3", "0x4", "0x5", "0x6"]


def test_decode_uncorrectable_and_corrupt(tmp_path, capsys, stdin):
    path = construct_file(tmp_path)
    stdin("0x1 0x2 0x3 0x4 0x5 0x6\n")
    run(["encode", str(path)])
    word = capsys.readouterr().out.split()
    stdin(" ".join(word))
    assert run(["decode", str(path), "--erase", "0,1,2,3,4,5"]) == 1
    assert "not correctable" in capsys.readouterr().err
    bad = list(word)
    bad[0] = "0x0" if bad[0] != "0x0" else "0x1"
    stdin(" ".join(bad))
    assert run(["decode", str(path)]) == 2
    stdin(" ".join(word))
    assert run(["decode", str(path), "--erase", "99"]) == 2
    stdin("0x1 0x2\n")
    assert run(["encode", str(path)]) == 2
    stdin("0x1 0x2 0x3 0x4 0x5 0x10\n")
    assert run(["encode", str(path)]) == 2


def test_data_local_construct_and_verify(tmp_path, capsys):
    path = construct_file(tmp_path, "--data-local", k=5, r=2, h=3)
    code = fileformat.load(path)
    assert code.topology.kind.value == "datalocal" and code.topology.k == 4
    assert run(["verify", str(path)]) == 0
    assert "method=difference-set" in capsys.readouterr().out
    assert run(["verify", str(path), "--oracle"]) == 0
    assert "method=rank" in capsys.readouterr().out


def test_experiment_table(capsys):
    assert run(["experiment", "table", "--grid", "4,2,2;60,4,4"]) == 0
    assert capsys.readouterr().out == "k,r,h,t_basic,t_optimized\n4,2,2,8,4\n60,4,4,28,16\n"
    assert run(["experiment", "table", "--k", "4"]) == 2
    assert run(["experiment", "table", "--grid", "4,2"]) == 2


def test_experiment_search(capsys):
    assert run(["experiment", "search", "--k", "4", "--r", "2", "--h", "2", "--q-degree", "2"]) == 1
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "k,r,h,q_degree,status,searched,total,witness"
    assert lines[1] == "4,2,2,2,NoneExists,65536,65536,"
    assert run(["experiment", "search", "--k", "3", "--r", "2", "--h", "1", "--q-degree", "2"]) == 0
    assert ",ExistsMR," in capsys.readouterr().out
    assert run(["experiment", "search", "--k", "6", "--r", "2", "--h", "2", "--q-degree", "4"]) == 2


def test_experiment_random(capsys):
    argv = ["experiment", "random", "--k", "6", "--r", "2", "--h", "2", "--trials", "50",
            "--q-degree", "2", "--q-degree", "12", "--seed", "4"]
    assert run(argv) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "k,r,h,q_degree,trials,successes,fraction,ci_low,ci_high,bound,seed"
    assert len(lines) == 3
    assert lines[2].split(",")[9] == ""
    assert run(["experiment", "random", "--k", "6", "--r", "2", "--h", "2", "--q-degree", "2"]) == 2


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "mrlc.cli", "experiment", "table", "--grid", "6,2,2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1] == "6,2,2,8,4"
