import json

import pytest

from momzeta.cli import fmt_number, json_dumps, main

RIEMANN_RES_100 = -0.000833325000397  # mpmath oracle residual at n = 100


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# serialization helpers
# ---------------------------------------------------------------------------

def test_fmt_number_seventeen_digits_roundtrip():
    for x in (1.0 / 3.0, 2.6666666666666665, 1e-300, 475.96015157911575):
        assert float(fmt_number(x)) == x


def test_json_dumps_parses_back():
    obj = {"a": [1, 2.5, None, True], "b": {"c": "text"}}
    assert json.loads(json_dumps(obj)) == obj


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def test_game_exact_report(capsys):
    code, out, _ = run_cli(capsys, "game", "exact", "--p", "0.5,0.5")
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == 1
    assert report["results"]["paper_T"] == pytest.approx(5.0 / 3.0, abs=1e-9)
    assert report["results"]["expected_rounds"] == pytest.approx(8.0 / 3.0, abs=1e-9)
    assert report["results"]["inclusion_exclusion"] == pytest.approx(5.0 / 3.0, abs=1e-12)


def test_zeta_divergent_exit_code(capsys):
    code, _, err = run_cli(capsys, "zeta", "--riemann", "--k", "1")
    assert code == 1
    assert "divergent" in err


def test_zeta_value(capsys):
    code, out, _ = run_cli(capsys, "zeta", "--riemann", "--k", "2")
    assert code == 0
    assert json.loads(out)["results"]["value"] == pytest.approx(1.6449340668482264, abs=1e-13)


def test_sum_csv_columns_and_residual(capsys):
    code, out, _ = run_cli(
        capsys, "sum", "--dist", "riemann", "--n", "100", "--kmin", "2",
        "--predict", "riemann",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,value,prediction,residual,tail_bound,terms_used"
    fields = lines[1].split(",")
    assert int(fields[0]) == 100
    assert float(fields[3]) == pytest.approx(RIEMANN_RES_100, abs=1e-9)


def test_sum_naive_matches_stable(capsys):
    _, stable_out, _ = run_cli(capsys, "sum", "--dist", "riemann", "--n", "12", "--kmin", "2")
    _, naive_out, _ = run_cli(
        capsys, "sum", "--dist", "riemann", "--n", "12", "--kmin", "2", "--method", "naive"
    )
    stable = float(stable_out.strip().splitlines()[1].split(",")[1])
    naive = float(naive_out.strip().splitlines()[1].split(",")[1])
    assert abs(stable - naive) <= 1e-8


def test_sum_worker_invariance(capsys):
    args = ("sum", "--dist", "riemann", "--n", "10,20,30", "--kmin", "2")
    _, serial, _ = run_cli(capsys, *args)
    _, parallel, _ = run_cli(capsys, *args, "--workers", "3")
    assert serial == parallel


def test_dn_csv_headers(capsys):
    code, out, _ = run_cli(capsys, "dn", "--n", "1,10")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,d_n,abs_dev,scaled_dev"
    assert float(lines[1].split(",")[1]) == pytest.approx(0.42278433509846714, abs=1e-10)


def test_identity_grid(capsys):
    code, out, _ = run_cli(capsys, "identity")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "variant,L,alpha,quadrature,closed_form,abs_diff"
    assert len(lines) == 1 + 3 * 4  # three L values, three power alphas plus the log variant
    for line in lines[1:]:
        assert float(line.split(",")[-1]) <= 1e-6


def test_moments_missing_edge_data_is_numeric_failure(tmp_path, capsys):
    table = tmp_path / "d.csv"
    table.write_text("x,f\n0.0,1.0\n1.0,1.0\n")
    code, _, err = run_cli(
        capsys, "moments", "--dist", "tabulated", "--table", str(table)
    )
    assert code == 1
    assert "edge" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["sum", "--dist", "riemann"])  # missing --n
    assert exc.value.code == 2
    capsys.readouterr()


def test_verify_single_criterion_deterministic(capsys):
    code_a, out_a, _ = run_cli(capsys, "verify", "--criteria", "7", "--seed", "42")
    code_b, out_b, _ = run_cli(capsys, "verify", "--criteria", "7", "--seed", "42")
    assert code_a == 0 and code_b == 0
    assert out_a == out_b
    report = json.loads(out_a)
    assert report["results"]["all_passed"] is True
    assert report["results"]["criteria"][0]["id"] == "7"
    assert report["config"]["seed"] == 42


def test_verify_roundtrip_schema(capsys):
    _, out, _ = run_cli(capsys, "verify", "--criteria", "5,10", "--seed", "42")
    report = json.loads(out)
    assert report["schema"] == 1
    assert set(report["config"]) == {"command", "criteria", "seed"}
    for entry in report["results"]["criteria"]:
        assert set(entry) == {"id", "description", "passed", "details"}


def test_seed_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv("MOMZETA_SEED", "7")
    _, out_env, _ = run_cli(capsys, "game", "simulate", "--p", "0.5", "--trials", "4096")
    monkeypatch.delenv("MOMZETA_SEED")
    _, out_flag, _ = run_cli(
        capsys, "game", "simulate", "--p", "0.5", "--trials", "4096", "--seed", "7"
    )
    assert out_env == out_flag


def test_game_simulate_output_file(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, out, _ = run_cli(
        capsys, "game", "simulate", "--p", "0.5,0.5", "--trials", "8192",
        "--seed", "42", "-o", str(out_path),
    )
    assert code == 0 and out == ""
    report = json.loads(out_path.read_text())
    assert report["results"]["mode"] == "fixed-p"
    assert report["results"]["trials"] == 8192
    assert report["results"]["target"] == pytest.approx(8.0 / 3.0, abs=1e-9)


def test_game_simulate_random_p(capsys):
    code, out, _ = run_cli(
        capsys, "game", "simulate", "--dist", "beta", "--beta", "1",
        "--n-sets", "20", "--trials", "4096", "--seed", "3",
    )
    assert code == 0
    results = json.loads(out)["results"]
    assert results["mode"] == "random-p"
    assert results["target_kind"] == "one-minus-alt-sum"
    assert abs(results["mean"] - results["target"]) <= 6.0 * results["stderr"]
