import subprocess
import sys

import pytest

from regatta.bench.families import gen_param
from regatta.bench.formats import write_afa_text, write_master
from regatta.bench.randgen import letter_table
from regatta.cli import main
from regatta.core import Afa, CharClass, neg, pred, var


def master(tmp_path, body, name="p"):
    path = tmp_path / f"{name}.master"
    path.write_text(body, encoding="utf-8")
    return str(path)


def test_solve_empty(tmp_path, capsys):
    path = write_master(gen_param(8, 2), tmp_path)
    assert main(["solve", str(path)]) == 0
    assert capsys.readouterr().out.strip() == "empty"


def test_solve_nonempty_prints_code_points(tmp_path, capsys):
    path = master(tmp_path, 'atom x regex "b"\nquery empty x\n')
    assert main(["solve", path]) == 1
    assert capsys.readouterr().out.splitlines() == ["nonempty", "witness: U+0062"]


@pytest.mark.parametrize("engine", ["enfa", "dfa", "antichain-fw", "antisat", "dealt-fw", "dealt-bw", "hkc", "bts-bmc"])
def test_solve_with_each_engine(tmp_path, capsys, engine):
    path = master(tmp_path, 'atom x regex "b"\nquery empty x\n')
    assert main(["solve", path, "--engine", engine]) == 1
    assert "U+0062" in capsys.readouterr().out


def test_solve_afa_file(tmp_path, capsys):
    ab = letter_table("ab")
    a = Afa(1, [pred(CharClass.of("b"))], var(0), neg(var(0)), ab)
    path = tmp_path / "one.afa"
    path.write_text(write_afa_text(a))
    assert main(["solve", str(path)]) == 1
    assert "witness: U+0062" in capsys.readouterr().out


def test_solve_malformed_file(tmp_path, capsys):
    path = master(tmp_path, 'atom x regex "b"\nquery empty x &\n')
    assert main(["solve", path]) == 2
    assert "p.master:2" in capsys.readouterr().err


def test_solve_missing_file(tmp_path, capsys):
    assert main(["solve", str(tmp_path / "none.master")]) == 2
    assert "no such file" in capsys.readouterr().err


def test_solve_timeout_exit_code(tmp_path, capsys):
    path = write_master(gen_param(2, 14), tmp_path)
    assert main(["solve", str(path), "--engine", "antichain-fw", "--timeout", "0.2"]) == 2
    assert "timeout" in capsys.readouterr().err


def test_unknown_engine_is_usage_error(tmp_path):
    path = master(tmp_path, 'atom x regex "b"\nquery empty x\n')
    with pytest.raises(SystemExit) as info:
        main(["solve", path, "--engine", "magic"])
    assert info.value.code == 2


def test_nonpositive_timeout_rejected(tmp_path):
    with pytest.raises(SystemExit) as info:
        main(["solve", "x.master", "--timeout", "0"])
    assert info.value.code == 2


def test_gen_family_range(tmp_path, capsys):
    assert main(["gen", "--family", "5", "--n", "1-3", "--out", str(tmp_path)]) == 0
    dirs = sorted(p.name for p in tmp_path.iterdir())
    assert dirs == ["param5-n1", "param5-n2", "param5-n3"]
    assert (tmp_path / "param5-n2" / "param5-n2.master").is_file()


def test_gen_invalid_family(tmp_path):
    with pytest.raises(SystemExit) as info:
        main(["gen", "--family", "9", "--n", "1", "--out", str(tmp_path)])
    assert info.value.code == 2


def test_gen_then_solve(tmp_path, capsys):
    main(["gen", "--family", "7", "--n", "2", "--out", str(tmp_path)])
    assert main(["solve", str(tmp_path / "param7-n2" / "param7-n2.master")]) == 1


def test_bench_writes_outputs(tmp_path, capsys):
    out = tmp_path / "out"
    code = main(["bench", "param:5:1-2", "random-afa:3", "--engine", "enfa,antisat", "--timeout", "5", "--out", str(out)])
    assert code == 0
    stats = (out / "stats.tsv").read_text()
    assert stats.splitlines()[0] == "engine\tsolved\tmean\tmedian\ttimeouts\terrors"
    assert (out / "cactus.csv").read_text().startswith("engine,rank,cumulative_seconds\n")
    assert (out / "records.tsv").read_text().startswith("# seed: 0\n")
    assert capsys.readouterr().out == stats


def test_bench_reads_generated_directory(tmp_path, capsys):
    main(["gen", "--family", "8", "--n", "1-2", "--out", str(tmp_path / "suite")])
    capsys.readouterr()
    assert main(["bench", str(tmp_path / "suite"), "--engine", "enfa", "--timeout", "5"]) == 0
    assert capsys.readouterr().out.splitlines()[1].startswith("enfa\t2\t")


def test_bench_cross_check_failure_exit(tmp_path, capsys):
    # family 6 carries an "empty" label that its expression contradicts
    assert main(["bench", "param:6:1", "--engine", "enfa", "--timeout", "5"]) == 1
    assert "expected empty" in capsys.readouterr().err


def test_bench_seed_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("REGATTA_SEED", "11")
    out = tmp_path / "o"
    main(["bench", "random-afa:2", "--engine", "antisat", "--timeout", "5", "--out", str(out)])
    text = (out / "records.tsv").read_text()
    assert text.startswith("# seed: 11\n")
    assert "rand-afa-11-0000" in text


def test_export_aiger(tmp_path):
    path = master(tmp_path, 'atom x regex "b"\nquery empty x\n')
    out = tmp_path / "x.aag"
    assert main(["export-aiger", path, "--out", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("aag ")
    assert main(["export-aiger", path, "--out", str(out)]) == 0
    assert out.read_text() == text


def test_module_entry_point(tmp_path):
    path = master(tmp_path, 'atom x regex "b"\nquery empty x\n')
    r = subprocess.run([sys.executable, "-m", "regatta.cli", "solve", path], capture_output=True, text=True)
    assert r.returncode == 1
    assert "U+0062" in r.stdout
