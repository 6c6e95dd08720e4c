"""Command-line behavior: exit codes, flag plumbing, output files."""

import pytest

from popsizing import cli

ONEMAX_FLAGS = [
    "--algorithm", "tga", "--family", "onemax", "--length", "8",
    "--runs", "3", "--max-evals", "4000", "--seed", "11", "--n", "20",
]


def test_bad_config_exits_2(capsys):
    assert cli.main(["run", "--algorithm", "annealing"]) == 2
    err = capsys.readouterr().err
    assert "configuration error" in err and "annealing" in err


def test_unknown_flag_is_usage_error():
    with pytest.raises(SystemExit) as e:
        cli.main(["run", "--population", "5"])
    assert e.value.code == 2


def test_subcommand_required():
    with pytest.raises(SystemExit) as e:
        cli.main([])
    assert e.value.code == 2


def test_verify_exit_codes(monkeypatch):
    monkeypatch.setattr(cli, "run_verify", lambda: True)
    assert cli.main(["verify"]) == 0
    monkeypatch.setattr(cli, "run_verify", lambda: False)
    assert cli.main(["verify"]) == 1


def test_run_writes_csv_and_summary(tmp_path, capsys):
    out = tmp_path / "results.csv"
    assert cli.main(["run", *ONEMAX_FLAGS, "--out", str(out)]) == 0
    printed = capsys.readouterr().out
    assert f"wrote {out}" in printed
    assert "tga on " in printed and "sr=" in printed
    lines = out.read_text().splitlines()
    assert len(lines) == 2 and lines[1].startswith("tga,")


def test_flags_override_config_file(tmp_path, capsys):
    ini = tmp_path / "exp.ini"
    ini.write_text(
        "[experiment]\nalgorithm = tga\nruns = 2\nmax_evals = 4000\nseed = 3\n"
        "[problem]\nfamily = onemax\nlength = 8\n[tga]\nn = 20\n"
    )
    out = tmp_path / "r.csv"
    assert cli.main([
        "run", "--config", str(ini), "--runs", "4", "--out", str(out),
    ]) == 0
    row = out.read_text().splitlines()[1].split(",")
    assert row[2] == "4"


def test_sweep_expands_algorithm_list(tmp_path):
    out = tmp_path / "grid.csv"
    assert cli.main([
        "sweep", "--algorithm", "tga,parameterless", "--family", "onemax",
        "--length", "8", "--runs", "2", "--max-evals", "4000",
        "--seed", "5", "--n", "20", "--out", str(out),
    ]) == 0
    rows = [line.split(",")[0] for line in out.read_text().splitlines()[1:]]
    assert rows == ["tga", "parameterless"]


def test_run_expands_peak_list(tmp_path):
    out = tmp_path / "peaks.csv"
    assert cli.main([
        "run", "--algorithm", "tga", "--family", "multimodal",
        "--length", "16", "--peaks", "2,4", "--runs", "2",
        "--max-evals", "500", "--seed", "9", "--n", "10",
        "--target", "none", "--out", str(out),
    ]) == 0
    problems = [line.split(",")[1] for line in out.read_text().splitlines()[1:]]
    assert len(problems) == 2 and problems[0] != problems[1]


def test_trace_forces_single_traced_run(tmp_path, capsys):
    trace_out = tmp_path / "t.csv"
    assert cli.main([
        "trace", *ONEMAX_FLAGS, "--trace-out", str(trace_out),
    ]) == 0
    assert f"wrote {trace_out}" in capsys.readouterr().out
    lines = trace_out.read_text().splitlines()
    assert "runs=1" in lines[0]
    assert lines[1] == "evaluations,generation,population_size"
    assert len(lines) > 2


def test_run_can_emit_trace_too(tmp_path):
    out = tmp_path / "r.csv"
    trace_out = tmp_path / "t.csv"
    assert cli.main([
        "run", *ONEMAX_FLAGS, "--trace",
        "--out", str(out), "--trace-out", str(trace_out),
    ]) == 0
    assert out.exists() and trace_out.exists()


def test_out_dir_env_sets_default_paths(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("POPSIZING_OUT_DIR", str(tmp_path))
    assert cli.main(["run", *ONEMAX_FLAGS]) == 0
    assert (tmp_path / "results.csv").exists()
    capsys.readouterr()
