import json

import pytest

from qdouble import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_shor_run_csv_contract(capsys):
    code, out, err = run_cli(capsys, "shor", "run", "--nu", "0",
                             "--realizations", "1000", "--seed", "7")
    assert code == 0 and err == ""
    lines = out.strip().split("\n")
    assert lines[0] == "nu,y,mean_prob,stderr,discarded"
    rows = [line.split(",") for line in lines[1:]]
    assert [r[1] for r in rows] == ["0", "1", "2", "3"]
    probs = [float(r[2]) for r in rows]
    assert probs[0] == pytest.approx(0.5, abs=1e-9)
    assert probs[2] == pytest.approx(0.5, abs=1e-9)
    assert probs[1] == pytest.approx(0.0, abs=1e-9)


def test_sweep_output_is_byte_identical_across_runs(capsys):
    args = ("shor", "sweep", "--nu", "0,0.1,0.5,1", "--realizations", "50",
            "--seed", "31")
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    assert out1.encode() == out2.encode()


def test_shor_json_echoes_config_and_version(capsys):
    code, out, _ = run_cli(capsys, "shor", "run", "--nu", "0.2",
                           "--realizations", "10", "--seed", "5",
                           "--out", "json")
    assert code == 0
    data = json.loads(out)
    assert data["config"]["seed"] == 5
    assert data["config"]["backend"] == "ideal"
    assert len(data["rows"]) == 4
    assert data["version"]


def test_braided_backend_flag(capsys):
    code, out, _ = run_cli(capsys, "shor", "run", "--nu", "0",
                           "--realizations", "20", "--seed", "2",
                           "--backend", "braided")
    assert code == 0
    rows = [line.split(",") for line in out.strip().split("\n")[1:]]
    assert float(rows[0][2]) == pytest.approx(0.5, abs=1e-9)


def test_fusion_table_contains_expected_row(capsys):
    code, out, _ = run_cli(capsys, "tables", "fusion")
    assert code == 0
    assert out.splitlines()[0] == "a,b,c,N"
    assert "Phi_x,Sigma_x,Delta,1" in out
    assert "Phi_x,Sigma_x,Deltabar,1" in out


def test_smatrix_csv_has_exact_entries(capsys):
    code, out, _ = run_cli(capsys, "tables", "smatrix")
    assert code == 0
    assert "1,1,1/8,0.125" in out
    assert "Delta,Deltabar,-1/2,-0.5" in out


def test_tables_group_json_round_trips(capsys):
    code, out, _ = run_cli(capsys, "tables", "group", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["cayley"][2][4] == "k"  # i * j
    assert data["centralizers"]["C_i"] == ["e", "eb", "i", "ib"]


def test_tables_braids_reports_corrections(capsys):
    code, out, _ = run_cli(capsys, "tables", "braids", "--pairing", "SigmaSigma",
                           "--arity", "2")
    assert code == 0
    data = json.loads(out)
    assert len(data["matrices"]) == 5
    params = {c["parameter"] for c in data["corrections"]
              if c["pairing"] == "SigmaSigma"}
    assert params == {"c", "e"}


def test_verify_braids_and_gates_pass(capsys):
    code, out, _ = run_cli(capsys, "verify", "braids", "--json")
    assert code == 0
    assert json.loads(out)["ok"]
    code, out, _ = run_cli(capsys, "verify", "gates", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["ok"]
    emb = data["suites"]["gates"]["embeddings"]["SigmaPhi"]["found"]
    assert [0, 1, 2, 3] in emb


def test_verify_all_passes_with_full_report(capsys):
    code, out, _ = run_cli(capsys, "verify", "all", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["ok"]
    assert set(data["suites"]) == {"recoupling", "braids", "gates", "tables"}
    assert all(s["ok"] for s in data["suites"].values())
    code, out, _ = run_cli(capsys, "verify", "all")
    assert code == 0
    assert out.strip().endswith("overall: pass")
    assert "pentagon" in out and "sigma match" in out


def test_invalid_flags_yield_json_error_and_exit_2(capsys):
    code, out, err = run_cli(capsys, "shor", "run", "--nu", "0", "--bogus", "1")
    assert code == 2 and out == ""
    assert json.loads(err)["error"]["type"] == "usage"
    code, _, err = run_cli(capsys, "shor", "run", "--nu", "-0.5")
    assert code == 2
    assert "non-negative" in json.loads(err)["error"]["message"]
    # single-qubit matrices exist only for the three published pairings
    code, _, err = run_cli(capsys, "tables", "braids", "--pairing", "PhiSigma",
                           "--arity", "1")
    assert code == 2
    assert "pairing" in json.loads(err)["error"]["message"]


def test_unwritable_output_path(capsys, tmp_path):
    target = tmp_path / "no_such_dir" / "out.csv"
    code, _, err = run_cli(capsys, "shor", "run", "--nu", "0",
                           "--realizations", "5", "--seed", "1",
                           "--out-path", str(target))
    assert code == 1
    assert json.loads(err)["error"]["type"] == "io"


def test_output_dir_env_var(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(cli.ENV_OUTPUT_DIR, str(tmp_path))
    code, out, _ = run_cli(capsys, "shor", "run", "--nu", "0",
                           "--realizations", "5", "--seed", "1",
                           "--out-path", "res.csv")
    assert code == 0 and out == ""
    assert (tmp_path / "res.csv").read_text().startswith("nu,y,")


def test_help_round_trips_accepted_flags(capsys):
    parser = cli.build_parser()
    help_text = parser.format_help()
    assert "tables" in help_text and "verify" in help_text and "shor" in help_text
    with pytest.raises(SystemExit):
        parser.parse_args(["shor", "run", "--help"])
    sub_help = capsys.readouterr().out
    for flag in ("--nu", "--realizations", "--seed", "--backend", "--out",
                 "--out-path", "--threads"):
        assert flag in sub_help
