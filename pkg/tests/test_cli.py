"""CLI surface: dispatch, JSON determinism, exit codes, config files."""

from __future__ import annotations

import json

import pytest

from cubicbrauer.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_lines_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "lines")
    assert code == 0
    payload = json.loads(out)
    assert payload["command"] == "lines"
    assert payload["result"]["count"] == 27
    assert [0, 1, 0, 0, 0, 0, 0] in payload["result"]["classes"]


def test_json_output_is_deterministic(capsys):
    _, first, _ = run(capsys, "--format", "json", "trios")
    _, second, _ = run(capsys, "--format", "json", "trios")
    assert first == second
    payload = json.loads(first)
    assert payload["result"]["count"] == 45


def test_weyl_checks(capsys):
    code, out, _ = run(capsys, "--format", "json", "weyl")
    assert code == 0
    result = json.loads(out)["result"]
    assert result["order"] == 51840
    assert result["checks"]["transitive_on_trios"] is True
    assert result["checks"]["trio_stabilizer_order"] == 1152


def test_invariants_command(capsys):
    code, out, _ = run(capsys, "--format", "json", "invariants", "--d", "-1", "--n", "4")
    assert code == 0
    assert json.loads(out)["result"]["invariants"] == {"free_rank": 0, "factors": [4]}


def test_invariants_error_exit(capsys):
    code, _, err = run(capsys, "invariants", "--d", "5", "--n", "6")
    assert code == 1
    assert "prime power" in err


def test_classify_command(capsys):
    boundary = '{"type":"line_conic","intersection":"tangent"}'
    code, out, _ = run(capsys, "--format", "json", "classify", "--boundary", boundary)
    assert code == 0
    result = json.loads(out)["result"]
    assert result["geometric_brauer"] == "zero"
    assert result["invariants_over_Q"] == {"free_rank": 0, "factors": []}


def test_classify_bad_json_exit(capsys):
    code, _, err = run(capsys, "classify", "--boundary", '{"type":"nonsense"}')
    assert code == 1
    assert "unknown boundary" in err


def test_tables_case3(capsys):
    code, out, _ = run(capsys, "--format", "json", "tables", "--case", "3")
    assert code == 0
    result = json.loads(out)["result"]
    assert len(result["pairs"]) == 10
    assert {"br1": {"free_rank": 0, "factors": []}, "brx": {"free_rank": 0, "factors": []}} in result["pairs"]


def test_example_auto_a(capsys):
    code, out, _ = run(
        capsys, "--format", "json", "example", "--poly=-2,-2,1,1", "--auto-a", "20"
    )
    assert code == 0
    result = json.loads(out)["result"]
    assert result["a"] == "3"
    assert result["brauer_quotient"] == {"free_rank": 0, "factors": [2]}
    assert result["galois_type"] == {"type": "c2", "d": 2}


def test_example_requires_inputs(capsys):
    code, _, err = run(capsys, "example", "--poly=-2,-2,1,1")
    assert code == 1
    assert "--a or --auto-a" in err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["tables", "--case", "7"])
    assert exc.value.code == 2


def test_no_command_is_usage_error(capsys):
    code, _, _ = run(capsys)
    assert code == 2


def test_config_file(tmp_path, capsys):
    config = tmp_path / "settings.conf"
    config.write_text("format=json\nd=-1\nn=4\n", encoding="utf-8")
    code, out, _ = run(capsys, "--config", str(config), "invariants")
    assert code == 0
    assert json.loads(out)["result"]["invariants"]["factors"] == [4]


def test_config_flag_override(tmp_path, capsys):
    config = tmp_path / "settings.conf"
    config.write_text("format=json\nn=4\n", encoding="utf-8")
    # command line --n wins over the config value
    code, out, _ = run(capsys, "--config", str(config), "invariants", "--d", "-3", "--n", "3")
    assert code == 0
    assert json.loads(out)["result"]["invariants"]["factors"] == [3]


def test_config_rejects_unknown_keys(tmp_path, capsys):
    config = tmp_path / "settings.conf"
    config.write_text("volume=11\n", encoding="utf-8")
    code, _, err = run(capsys, "--config", str(config), "lines")
    assert code == 1
    assert "unknown config key" in err


def test_text_output_default(capsys):
    code, out, _ = run(capsys, "invariants", "--d", "-3", "--n", "3")
    assert code == 0
    assert "Z/3" in out


def test_seed_check_runs_matrix(capsys):
    # the acceptance matrix includes the documented expected-fail on the
    # published case-2 table, so the exit code is 1
    code, out, _ = run(capsys, "--seed-check")
    assert code == 1
    assert out.count("[PASS]") == 8
    assert out.count("[FAIL]") == 1
    assert "algebraic tables" in out


def test_eckardt_precision_env_var(monkeypatch, capsys):
    monkeypatch.setenv("CUBICBRAUER_ECKARDT_MAX_BITS", "256")
    code, out, _ = run(
        capsys, "--format", "json", "example", "--poly=1,1,1,1", "--a", "2"
    )
    assert code == 0
    assert json.loads(out)["result"]["brauer_quotient"]["factors"] == [4]
