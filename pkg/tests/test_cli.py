import json

import pytest

from dlab.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, EXIT_UNKNOWN, main
from dlab.constructions import read_pointset


def test_gen_and_chi(tmp_path, capsys):
    pts = tmp_path / "c33.pts"
    assert main(["gen", "dchain", "--k", "3", "--l", "3", "-o", str(pts)]) == EXIT_OK
    assert len(read_pointset(pts)) == 6
    cnf = tmp_path / "c33.cnf"
    assert main(["chi", str(pts), "--cnf-out", str(cnf)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "chi = 4" in out
    assert cnf.read_text().startswith("p cnf 45 ")


def test_chi_budget_unknown(tmp_path, capsys):
    pts = tmp_path / "c10.pts"
    main(["gen", "convex", "--n", "10", "-o", str(pts)])
    assert main(["chi", str(pts), "--budget", "1"]) == EXIT_UNKNOWN
    assert "budget exhausted" in capsys.readouterr().out


def test_bad_input():
    assert main(["chi", "/nonexistent/file.pts"]) == EXIT_INPUT


def test_bounds(capsys):
    assert main(["bounds", "--n", "16", "--json"]) == EXIT_OK
    row = json.loads(capsys.readouterr().out)
    assert row["double_chain_lower"] == 13 and row["lower"] == 10


def test_verify_prop_json(capsys):
    assert main(["verify", "prop", "--id", "10", "--json"]) == EXIT_OK
    row = json.loads(capsys.readouterr().out)
    assert row["computed"] == [6, 6]


def test_verify_lemma_verbose(capsys):
    assert main(["verify", "lemma", "--id", "14", "-v"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 26


def test_failing_check_exit_code(monkeypatch, capsys):
    from dlab import checks

    monkeypatch.setattr(checks, "convex_chi", lambda n: n)
    assert main(["verify", "convex", "--max-n", "5"]) == EXIT_FAIL
    assert capsys.readouterr().out.count("FAIL") == 3


def test_theorem2_full_writes_cnf(tmp_path, capsys):
    code = main(["verify", "theorem2", "--mode", "full", "--budget", "2000",
                 "--cert-dir", str(tmp_path), "--json"])
    row = json.loads(capsys.readouterr().out)
    assert row["stretch"] and row["verdict"] == "unknown"
    assert code == EXIT_OK
    assert (tmp_path / "dx-13.cnf").read_text().startswith("p cnf 1560 ")


@pytest.mark.parametrize("argv", [["verify", "lemma", "--id", "12"], ["gen", "convex"]])
def test_usage_errors(argv):
    with pytest.raises(SystemExit):
        main(argv)
