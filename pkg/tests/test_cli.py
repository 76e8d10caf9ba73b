import json

import numpy as np
import pytest
from click.testing import CliRunner

from povmforge.cli import main
from povmforge.povm import observable_from_unitary
from povmforge.serialize import povm_to_json, save_json

HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2)


@pytest.fixture
def runner():
    return CliRunner()


def test_fiurasek_scan_passes(runner):
    result = runner.invoke(main, ["fiurasek-scan", "--n-max", "3"])
    assert result.exit_code == 0, result.output
    lines = result.output.strip().splitlines()
    assert lines[0].startswith("# povmforge")
    assert "seed=" in lines[1]
    assert lines[2] == "N,d,epsilon_measured,epsilon_theory,max_abs_err"
    assert len(lines) == 6
    first = lines[3].split(",")
    assert first[0] == "1" and first[1] == "2" and float(first[2]) == 1.0


def test_fiurasek_scan_deterministic(runner):
    a = runner.invoke(main, ["fiurasek-scan", "--n-max", "2", "--seed", "9"])
    b = runner.invoke(main, ["fiurasek-scan", "--n-max", "2", "--seed", "9"])
    assert a.output == b.output


def test_fiurasek_scan_tolerance_breach_fails(runner):
    result = runner.invoke(main, ["fiurasek-scan", "--n-max", "2", "--tol", "1e-20"])
    assert result.exit_code == 1


def test_seed_env_var(runner):
    viaflag = runner.invoke(main, ["fiurasek-scan", "--n-max", "1", "--seed", "77"])
    viaenv = runner.invoke(
        main, ["fiurasek-scan", "--n-max", "1"], env={"POVMFORGE_SEED": "77"}
    )
    assert viaflag.output == viaenv.output
    assert "seed=77" in viaenv.output


def test_covariant_scan_passes(runner):
    result = runner.invoke(main, ["covariant-scan", "--j-max", "5"])
    assert result.exit_code == 0, result.output
    rows = [l for l in result.output.splitlines() if not l.startswith("#")][1:]
    assert len(rows) == 5
    last = rows[-1].split(",")
    assert last[0] == "5" and last[1] == "6"
    assert float(last[3]) == pytest.approx(2.0 / 6.0)


def test_net_scan_writes_csv_and_json(runner, tmp_path):
    out = tmp_path / "scan.csv"
    result = runner.invoke(
        main,
        [
            "net-scan", "--eps", "1.2", "--eps", "0.8", "--eps", "0.6",
            "--budget", "400", "--samples", "300", "--out", str(out),
        ],
    )
    assert result.exit_code == 0, result.output
    text = out.read_text()
    assert text.startswith("# povmforge")
    assert "epsilon,radius,net_size,coverage_rate,seed" in text
    summary = json.loads((tmp_path / "scan.json").read_text())
    assert 1.3 <= summary["exponent"] <= 2.7
    assert summary["pass"] is True


def test_net_scan_band_failure(runner):
    result = runner.invoke(
        main,
        ["net-scan", "--eps", "1.2", "--eps", "0.8", "--budget", "200",
         "--samples", "100", "--exp-min", "2.69", "--exp-max", "2.7"],
    )
    assert result.exit_code == 1


def test_exact_check_passes(runner):
    result = runner.invoke(main, ["exact-check", "--pairs", "10"])
    assert result.exit_code == 0, result.output
    rows = [l for l in result.output.splitlines() if not l.startswith("#")][1:]
    assert len(rows) == 11  # mixed-seed row plus the sampled pairs
    assert all(row.endswith(",0") for row in rows)


def test_exact_check_negative_control_rows(runner):
    result = runner.invoke(
        main, ["exact-check", "--pairs", "5", "--negative-control"]
    )
    assert result.exit_code == 0, result.output
    rows = [l for l in result.output.splitlines() if not l.startswith("#")][1:]
    controls = [row for row in rows if row.endswith(",1")]
    assert len(controls) == 5
    # Control rows report the convention mismatch, typically order 0.1.
    for row in controls:
        assert float(row.split(",")[4]) > 1e-6


def test_distance_command(runner, tmp_path):
    pa = tmp_path / "a.json"
    pb = tmp_path / "b.json"
    save_json(povm_to_json(observable_from_unitary(np.eye(2))), pa)
    save_json(povm_to_json(observable_from_unitary(HADAMARD)), pb)
    result = runner.invoke(main, ["distance", str(pa), str(pb)])
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    assert payload["delta"] == pytest.approx(np.sqrt(2), abs=1e-12)
    assert payload["delta"] <= payload["sum_op_bound"] <= payload["sum_fro_bound"]
    assert payload["witness_state"]["rows"] == 2


def test_distance_identical_files(runner, tmp_path):
    pa = tmp_path / "a.json"
    save_json(povm_to_json(observable_from_unitary(HADAMARD)), pa)
    result = runner.invoke(main, ["distance", str(pa), str(pa)])
    payload = json.loads(result.output)
    assert payload["delta"] <= 1e-12


def test_out_file_written(runner, tmp_path):
    out = tmp_path / "fiu.csv"
    result = runner.invoke(
        main, ["fiurasek-scan", "--n-max", "2", "--out", str(out)]
    )
    assert result.exit_code == 0
    assert out.read_text().startswith("# povmforge")
    assert "wrote" in result.output
