import csv
import io
import json

import pytest

from graphpir.cli import main, parse_theta
from graphpir.core import FileId


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_theta():
    assert parse_theta("3") == FileId(3, 1)
    assert parse_theta("2.3") == FileId(2, 3)
    with pytest.raises(Exception):
        parse_theta("x.y")


def test_run_dumps_transcript(capsys):
    code, out, _ = run_cli(capsys, "run", "--graph", "path:3", "--theta", "1",
                           "--seed", "7")
    assert code == 0
    assert out.startswith("theta 1.1")
    assert "rate 2/3" in out
    assert "plan:" in out


def test_run_is_deterministic_for_fixed_seed(capsys):
    a = run_cli(capsys, "run", "--graph", "complete:4", "--seed", "3")
    b = run_cli(capsys, "run", "--graph", "complete:4", "--seed", "3")
    c = run_cli(capsys, "run", "--graph", "complete:4", "--seed", "4")
    assert a == b
    assert a != c


def test_run_multigraph_theta_copy(capsys):
    code, out, _ = run_cli(capsys, "run", "--graph", "path:3^2",
                           "--theta", "2.2")
    assert code == 0
    assert out.startswith("theta 2.2")
    assert "rate 4/9" in out


def test_verify_md_pass(capsys):
    code, out, _ = run_cli(capsys, "verify", "--graph", "path:4",
                           "--privacy", "exact")
    assert code == 0
    assert "| reliability | pass |" in out


def test_verify_json(capsys):
    code, out, _ = run_cli(capsys, "verify", "--graph", "star:4",
                           "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["scheme"] == "star"
    assert d["passed"] is True
    assert {c["check"] for c in d["checks"]} == {
        "reliability", "privacy-exact", "srp", "rate"
    }


def test_verify_statistical_mode(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--graph", "path:3^2",
        "--privacy", "statistical", "--samples", "10000", "--tol", "0.02",
    )
    assert code == 0
    assert "privacy-statistical" in out


def test_verify_auto_scheme_selection(capsys):
    code, out, _ = run_cli(capsys, "verify", "--graph", "star:5^2",
                           "--format", "json")
    assert code == 0
    assert json.loads(out)["scheme"] == "lift:star"


def test_bounds_md_and_csv(capsys):
    code, out, _ = run_cli(capsys, "bounds", "--graph", "path:6")
    assert code == 0
    assert "tightness: tight (lower 1/3, upper 1/3)" in out
    code, out, _ = run_cli(capsys, "bounds", "--graph", "path:6",
                           "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["kind", "value", "precision", "source", "applicable"]
    assert ["lower", "1/3", "exact", "path scheme", "yes"] in rows


def test_bounds_json(capsys):
    code, out, _ = run_cli(capsys, "bounds", "--graph", "complete:3",
                           "--format", "json")
    d = json.loads(out)
    assert d["tightness"]["status"] == "tight"
    assert any(e["source"] == "complete-graph scheme" for e in d["entries"])


def test_table_command(capsys):
    code, out, _ = run_cli(capsys, "table", "--name", "tableIII")
    assert code == 0
    assert "theta=(2,3)" in out


def test_sweep_csv(capsys):
    code, out, _ = run_cli(capsys, "sweep", "--family", "path",
                           "--n-max", "4", "--r-max", "2")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["graph", "scheme", "rate", "best_lower", "best_upper", "tight"]
    assert len(rows) == 1 + 3 * 2
    by_graph = {r[0]: r for r in rows[1:]}
    assert by_graph["path:4"][1:3] == ["path", "1/2"]
    assert by_graph["path:4^2"][1:] == ["lift:path", "1/3", "1/3", "1/3", "yes"]


def test_sweep_caps(capsys):
    code, _, err = run_cli(capsys, "sweep", "--family", "path", "--n-max", "9")
    assert code == 2
    assert "capped" in err
    code, _, err = run_cli(capsys, "sweep", "--family", "path", "--r-max", "5")
    assert code == 2


def test_usage_errors_exit_2(capsys):
    code, _, err = run_cli(capsys, "verify", "--graph", "nonsense")
    assert code == 2 and "error:" in err
    code, _, err = run_cli(capsys, "run", "--graph", "path:4", "--theta", "bad")
    assert code == 2
    code, _, err = run_cli(capsys, "run", "--graph", "path:4", "--theta", "9")
    assert code == 2


def test_verification_failure_exits_1(capsys, monkeypatch):
    import graphpir.cli as cli
    from graphpir.mutants import compose_stars_theta_ordered
    import graphpir.verify as ver

    real = ver.verify_scheme

    def patched(scheme, g, **kw):
        return real(compose_stars_theta_ordered, g, **kw)

    monkeypatch.setattr(cli, "verify_scheme", patched)
    code, out, _ = run_cli(
        capsys, "verify", "--graph", "complete_bipartite:2,2",
        "--privacy", "exact",
    )
    assert code == 1
    assert "FAIL" in out


def test_seed_env_default(capsys, monkeypatch):
    monkeypatch.setenv("GRAPHPIR_SEED", "123")
    a = run_cli(capsys, "run", "--graph", "path:4")
    b = run_cli(capsys, "run", "--graph", "path:4", "--seed", "123")
    assert a == b
