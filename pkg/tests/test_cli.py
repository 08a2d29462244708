import pytest

from trirep.cli import main
from trirep.formats import parse_rep_file

LAW = "dim 3\nbracket 1 3 -> 2: 1\n"
REP = "size 3\ne 1 = -X 2 3\ne 2 = X 1 3\ne 3 = X 1 2\n"


@pytest.fixture
def files(tmp_path):
    (tmp_path / "a.alg").write_text(LAW)
    (tmp_path / "a.rep").write_text(REP)
    return tmp_path


def test_hn(capsys):
    assert main(["hn", "4", "--series"]) == 0
    assert capsys.readouterr().out.split() == ["10", "6", "3", "0"]
    assert main(["hn", "2", "--law"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "[x1,x2]=x2" in out and "[x2,x3]=x2" in out


def test_usage_errors():
    with pytest.raises(SystemExit) as info:
        main(["hn", "0", "--law"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["nonsense"])
    assert info.value.code == 2


def test_verify(files, capsys):
    assert main(["verify", str(files / "a.alg"), str(files / "a.rep")]) == 0
    assert "Valid" in capsys.readouterr().out
    (files / "b.rep").write_text(REP.replace("-X 2 3", "X 2 3"))
    assert main(["verify", str(files / "a.alg"), str(files / "b.rep")]) == 1
    assert "[e1,e3]" in capsys.readouterr().out
    (files / "c.rep").write_text("size 3\ne 1 = X 1 2\n")
    assert main(["verify", str(files / "a.alg"), str(files / "c.rep")]) == 6


def test_parse_error_exit(files, capsys):
    (files / "bad.alg").write_text("dim 3\nbracket 2 1 -> 3: 1\n")
    assert main(["verify", str(files / "bad.alg"), str(files / "a.rep")]) == 2
    err = capsys.readouterr().err
    assert "line 2" in err
    assert main(["verify", str(files / "missing.alg"), str(files / "a.rep")]) == 2


def test_solve(files, capsys):
    out = files / "sol.rep"
    assert main(["solve", str(files / "a.alg"), "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "lower bound: 2" in text
    assert "k=2: infeasible" in text
    assert "mu: 3 (minimal-certified)" in text
    assert parse_rep_file(out.read_text()).k == 3


def test_solve_exit_codes(files, capsys):
    (files / "sl2.alg").write_text(
        "dim 3\nbracket 1 2 -> 3: 2\nbracket 1 3 -> 1: -2\nbracket 2 3 -> 2: 2\n")
    assert main(["solve", str(files / "sl2.alg")]) == 4
    (files / "p.alg").write_text("dim 2\nparam a\nbracket 1 2 -> 2: a\n")
    assert main(["solve", str(files / "p.alg")]) == 5
    assert main(["solve", str(files / "p.alg"), "--set", "a=2"]) == 0
    assert main(["solve", str(files / "p.alg"), "--set", "a2"]) == 2
    # budgets too small to finish give inconclusive
    assert main(["solve", str(files / "a.alg"), "--budget", "1", "--gb-pairs", "1"]) == 3


def test_catalog_commands(tmp_path, capsys):
    assert main(["catalog", "list"]) == 0
    assert "g_5_18" in capsys.readouterr().out
    assert main(["catalog", "show", "s_3^6"]) == 0
    assert "mu=2" in capsys.readouterr().out
    assert main(["catalog", "show", "unknown"]) == 2
    assert main(["catalog", "show"]) == 2
    report = tmp_path / "report.txt"
    assert main(["catalog", "verify-all", "--seed", "0", "--out", str(report)]) == 0
    assert "g_5_18" in report.read_text()


def test_family(tmp_path, capsys):
    assert main(["family", "heisenberg", "2", "--out", str(tmp_path)]) == 0
    assert "Valid" in capsys.readouterr().out
    assert parse_rep_file((tmp_path / "heisenberg_2.rep").read_text()).k == 4
    assert main(["family", "filiform", "2", "--out", str(tmp_path)]) == 2
