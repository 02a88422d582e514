import json

import pytest

from hodgeforge import cli, verify
from hodgeforge.verify import CheckReport


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- verify ----------------------------------------------------------------

def test_verify_single_n_text(capsys):
    code, out, err = run(capsys, "verify", "--n", "2")
    assert code == 0
    assert "pstar_table" in out and "pass" in out
    assert err == ""


def test_verify_json_schema(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data) == len(verify.REGISTRY)
    for entry in data:
        assert set(entry) == {"check", "params", "status", "lhs", "rhs",
                              "elapsed_ms"}
        assert entry["status"] == "pass"


def test_verify_single_check_with_params(capsys):
    code, out, _ = run(capsys, "verify", "--check", "pstar_table",
                       "--params", "n=2,i_max=8")
    assert code == 0
    assert "pstar_table" in out


def test_verify_unknown_check_exits_2(capsys):
    code, _, err = run(capsys, "verify", "--check", "bogus")
    assert code == 2
    assert "bogus" in err


def test_verify_bad_params_exit_2(capsys):
    code, _, err = run(capsys, "verify", "--check", "pstar_table",
                       "--params", "n=1")
    assert code == 2
    assert "n=1" in err


def test_verify_needs_n_or_check(capsys):
    code, _, err = run(capsys, "verify")
    assert code == 2


def test_verify_multiple_n(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2,3", "--format", "json")
    assert code == 0
    assert len(json.loads(out)) == 2 * len(verify.REGISTRY)


def test_injected_failing_check_exits_1(capsys, monkeypatch):
    def broken(n):
        return CheckReport("q_relation", {"n": n}, "fail", "1", "0", 0)
    monkeypatch.setitem(verify.REGISTRY, "q_relation", broken)
    code, out, _ = run(capsys, "verify", "--n", "2")
    assert code == 1
    assert "FAIL q_relation" in out


def test_verify_respects_jobs_env(capsys, monkeypatch):
    monkeypatch.setenv("HODGE_FORGE_JOBS", "2")
    code, out, _ = run(capsys, "verify", "--n", "2")
    assert code == 0


# -- eval ------------------------------------------------------------------

def test_eval_command(capsys):
    code, out, _ = run(capsys, "eval", "--space", "D", "--n", "2",
                       "push_p(h^5)")
    assert code == 0
    assert out.strip() == "-c2"


def test_eval_formal_scalar_output(capsys):
    code, out, _ = run(capsys, "eval", "--space", "D", "--n", "2",
                       "integrate(p_w^3*h^3*(a*h+lam))")
    assert code == 0
    assert out.strip() == "<w^3*lam>"


def test_eval_parse_error_exits_2(capsys):
    code, _, err = run(capsys, "eval", "--space", "X", "--n", "2", "w +")
    assert code == 2
    assert "parse error" in err


def test_eval_engine_error_exits_2(capsys):
    code, _, err = run(capsys, "eval", "--space", "Y", "--n", "2",
                       "push_beta(push_iota(h^3))")
    assert code == 2
    assert "delta_*" in err


# -- decompose ----------------------------------------------------------------

def test_decompose_ext(capsys):
    code, out, _ = run(capsys, "decompose", "--n", "2", "--ext", "2")
    assert code == 0
    assert json.loads(out) == {"[1,1]": 1, "[0,0]": 1}


def test_decompose_sym(capsys):
    code, out, _ = run(capsys, "decompose", "--n", "3", "--sym", "4")
    assert code == 0
    assert json.loads(out) == {"[4,0,0]": 1}


def test_decompose_needs_exactly_one_mode(capsys):
    code, _, err = run(capsys, "decompose", "--n", "2")
    assert code == 2
    code, _, err = run(capsys, "decompose", "--n", "2", "--ext", "1",
                       "--sym", "1")
    assert code == 2


def test_decompose_guard(capsys):
    code, _, err = run(capsys, "decompose", "--n", "2", "--ext", "9")
    assert code == 2


# -- report ---------------------------------------------------------------------

def test_report_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--n", "2", "--format", "json")
    path = tmp_path / "report.json"
    path.write_text(out)
    code, text, _ = run(capsys, "report", "--format", "text", "--input",
                        str(path))
    assert code == 0
    assert "pstar_table" in text
    code, again, _ = run(capsys, "report", "--format", "json", "--input",
                         str(path))
    assert code == 0
    assert json.loads(again) == json.loads(out)


def test_report_exit_code_tracks_failures(capsys, tmp_path):
    data = [{"check": "x", "params": {}, "status": "fail",
             "lhs": "1", "rhs": "0", "elapsed_ms": 0}]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "report", "--input", str(path))
    assert code == 1


def test_report_missing_file_exits_2(capsys):
    code, _, err = run(capsys, "report", "--input", "/nonexistent.json")
    assert code == 2


def test_empty_report_list_is_exit_0(capsys, tmp_path):
    path = tmp_path / "empty.json"
    path.write_text("[]")
    code, out, _ = run(capsys, "report", "--format", "json", "--input",
                       str(path))
    assert code == 0
    assert json.loads(out) == []


def test_verify_empty_n_list(capsys):
    code, out, _ = run(capsys, "verify", "--n", "", "--format", "json")
    assert code == 0
    assert json.loads(out) == []
