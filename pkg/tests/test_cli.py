import shutil
from pathlib import Path

import pytest

from waringlab.cli import main

FIXTURES = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_generate_summary(tmp_path, capsys):
    out = tmp_path / "a.txt"
    code, stdout, _ = run(capsys, "generate", "-m", 2, "-d", 5, "-t", 1, "--profile", 2, "--seed", 7, "-o", out)
    assert code == 0 and stdout.strip() == "2 5 1 3 3 6"
    assert out.read_text() == (FIXTURES / "w_m2_d5_seed7.txt").read_text()


def test_generate_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    run(capsys, "generate", "-m", 3, "-d", 7, "-t", 2, "--profile", "2,1", "--seed", 11, "-o", a)
    run(capsys, "generate", "-m", 3, "-d", 7, "-t", 2, "--profile", 2, 1, "--seed", 11, "-o", b)
    assert a.read_bytes() == b.read_bytes()


def test_generate_seed_from_environment(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("WARINGLAB_SEED", "7")
    out = tmp_path / "a.txt"
    code, _, _ = run(capsys, "generate", "-m", 2, "-d", 5, "-t", 1, "--profile", 2, "-o", out)
    assert code == 0
    assert out.read_text() == (FIXTURES / "w_m2_d5_seed7.txt").read_text()


def test_generate_regime_violation(tmp_path, capsys):
    code, _, err = run(capsys, "generate", "-m", 2, "-d", 4, "-t", 2, "--profile", 2, "-o", tmp_path / "x")
    assert code == 3 and "t <= (d-1)/2" in err


def test_generate_flag_errors(tmp_path, capsys):
    assert run(capsys, "generate", "-m", 1, "-d", 5, "-t", 1, "--profile", 2)[0] == 4
    assert run(capsys, "generate", "-m", "two", "-d", 5)[0] == 4
    assert run(capsys, "generate", "-m", 2, "-d", 5, "-o", tmp_path / "x")[0] == 4


def test_decompose_generated(tmp_path, capsys):
    out = tmp_path / "with_report.txt"
    code, stdout, _ = run(capsys, "decompose", FIXTURES / "w_m2_d5_seed7.txt", "-o", out)
    assert code == 0
    for key in "abcdefgh":
        assert f"({key})" in stdout
    assert "verdict PASS" in stdout and "FAIL" not in stdout
    assert "[report]" in out.read_text()


def test_decompose_generic(capsys):
    code, stdout, _ = run(capsys, "decompose", FIXTURES / "fifth_powers.txt")
    assert code == 2
    assert "GenericCase, Z reduced LGP, unique by LGP criterion" in stdout


def test_decompose_worked_example(capsys):
    code, stdout, _ = run(capsys, "decompose", FIXTURES / "worked_example.txt")
    assert code == 0
    assert "Z {(1:0:0)^2 along (0:1:0), (0:0:1)}" in stdout


def test_decompose_errors(tmp_path, capsys):
    assert run(capsys, "decompose", FIXTURES / "truncated.txt")[0] == 4
    assert run(capsys, "decompose", tmp_path / "missing.txt")[0] == 4
    low = tmp_path / "cubic.txt"
    low.write_text("format_version 1\nm 2\nd 3\nseed 0\n[form]\nterm 3 0 0 1/1\nterm 0 3 0 1/1\n[end]\n")
    assert run(capsys, "decompose", low)[0] == 3


def test_decompose_routes_binary(capsys):
    code, stdout, _ = run(capsys, "decompose", FIXTURES / "binary_x0_4_x1.txt")
    assert code == 0 and "sbr=2 sr=5" in stdout


def test_verify_ground_truth(capsys):
    code, stdout, _ = run(capsys, "verify", FIXTURES / "w_m3_d7_seed1.txt")
    assert code == 0 and "verdict PASS" in stdout
    assert run(capsys, "verify", FIXTURES / "worked_example.txt")[0] == 4


def test_sylvester(capsys):
    code, stdout, _ = run(capsys, "sylvester", 0, 1, 0, 0, 0, 0)
    assert code == 0 and stdout.splitlines()[0] == "sbr=2 sr=5"
    code, stdout, _ = run(capsys, "sylvester", 1, 0, 0, 1)
    assert code == 0 and stdout.splitlines()[0] == "sbr=2 sr=2"
    assert run(capsys, "sylvester", 1)[0] == 4
    assert run(capsys, "sylvester", 0, 0, 0)[0] == 4
    assert run(capsys, "sylvester", "abc")[0] == 4


def test_brute_rank(capsys):
    code, stdout, _ = run(capsys, "brute-rank", 0, 1, 0, 0, 0, 0)
    assert code == 0 and stdout.strip() == "sr=5"


def test_rank(capsys):
    code, stdout, _ = run(capsys, "rank", FIXTURES / "worked_example.txt")
    assert code == 0
    assert stdout.splitlines()[-1] == "border_rank_estimate\t3"


def test_probe(capsys):
    code, stdout, _ = run(capsys, "probe", FIXTURES / "worked_example.txt", "--trials", 50)
    assert code == 0 and "alternatives 0" in stdout


def test_report(tmp_path, capsys):
    files = [FIXTURES / n for n in ("w_m2_d5_seed7.txt", "fifth_powers.txt", "w_m3_d7_seed1.txt")]
    code, _, _ = run(capsys, "report", *files, "--out-dir", tmp_path / "rep")
    assert code == 0
    rows = (tmp_path / "rep" / "summary.tsv").read_text().splitlines()
    assert rows[0].split("\t") == ["file", "m", "d", "t", "sbr", "sr", "kind", "verdict"]
    assert len(rows) == 4
    assert all(r.split("\t")[-1] == "PASS" for r in rows[1:])
    for name in ("rank_profile.png", "regime.png", "binary_roots_w_m2_d5_seed7.png"):
        assert (tmp_path / "rep" / name).stat().st_size > 1000


def test_tolerance_flags(capsys):
    code, _, _ = run(capsys, "--cluster-tol", "1e-6", "--residual-tol", "1e-7", "sylvester", 0, 1, 0, 0, 0, 0)
    assert code == 0
    import waringlab.exactlin as ex

    ex.CLUSTER_TOL = 1e-7
