import subprocess
import sys

import pytest

from nodeshift.cli import main


def test_decode_trace(capsys):
    assert main(["decode", "--reference", "1,4,3,5,2", "--chromosome", "2,1,2,1"]) == 0
    out = capsys.readouterr().out
    for state in ("(1,3,5,4,2)", "(1,5,3,4,2)", "(1,3,4,5,2)", "(1,2,3,4,5)"):
        assert state in out


def test_decode_dc(capsys):
    main(["decode", "--encoding", "dc", "--reference", "1,4,3,5,2", "--chromosome", "2,3,1,4"])
    assert "(5,3,4,1,2)" in capsys.readouterr().out


def test_nn(capsys):
    assert main(["nn", "berlin52"]) == 0
    assert "8181" in capsys.readouterr().out


def test_solve(capsys):
    assert main(["solve", "eil51", "--encoding", "pr", "--seeding", "nn",
                 "--population", "20", "--iterations", "5", "--history"]) == 0
    out = capsys.readouterr().out
    assert "PR-NN" in out and "best cost" in out and "history" in out


def test_export_lp(tmp_path, capsys):
    out = tmp_path / "m.lp"
    assert main(["export-lp", "berlin52", str(out)]) == 0
    assert out.read_text().startswith("\\ MTZ model for berlin52")


def test_tune(capsys):
    assert main(["tune", "eil51", "--variant", "dc-rand", "--populations", "6",
                 "--iteration-counts", "2", "--mutations", "0.1", "0.2"]) == 0
    assert "best: --population 6" in capsys.readouterr().out


def test_bench(tmp_path, capsys):
    cfg = tmp_path / "c.toml"
    cfg.write_text('instances = ["eil51"]\nvariants = ["NSE-RAND"]\nrepetitions = 2\n'
                   'tuning = "none"\n[ga]\npopulation_size = 10\niterations = 2\n')
    assert main(["bench", str(cfg), "--output-dir", str(tmp_path / "o")]) == 0
    assert (tmp_path / "o" / "summary.csv").exists()


def test_bad_input_exits_nonzero(tmp_path, capsys):
    bad = tmp_path / "bad.tsp"
    bad.write_text("NAME: b\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: GEO\n")
    assert main(["nn", str(bad)]) == 1
    assert "error: line 3" in capsys.readouterr().err


def test_missing_file(capsys):
    assert main(["nn", "no/such/file.tsp"]) == 1


def test_usage_error():
    with pytest.raises(SystemExit):
        main(["solve"])


def test_module_entry_point():
    done = subprocess.run([sys.executable, "-m", "nodeshift", "--version"],
                          capture_output=True, text=True)
    assert done.returncode == 0 and done.stdout.strip()
