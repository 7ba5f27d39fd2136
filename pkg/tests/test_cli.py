import csv
import io

import numpy as np
import pytest

from suspended_pfl.cli import main, read_csv, write_csv
from suspended_pfl.errors import ConfigValidationError, ParseError
from suspended_pfl.model import default_params
from suspended_pfl.scenario import FIXTURES, fixture_path, load_text, parse_scenario
from suspended_pfl.sim import DisturbanceProfile, NoiseConfig, ScenarioConfig, SimLog, run


def kpi_table(capsys, log_path, *extra):
    assert main(["kpi", "--log", str(log_path), "--format", "csv", *extra]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == ["item", "kpi", "value"]
    return {(a, b): v for a, b, v in rows[1:]}


@pytest.fixture(scope="module")
def case_a_log(tmp_path_factory):
    path = tmp_path_factory.mktemp("logs") / "case_a.csv"
    assert main(["simulate", "--config", "case_a", "--out", str(path)]) == 0
    return path


def test_empty_file_is_nominal_case_a():
    cfg = load_text("")
    ref = ScenarioConfig()
    assert cfg.model == "full" and cfg.controller.mode.value == "coupled"
    np.testing.assert_array_equal(cfg.q0, [0.1, 0.2, 0.4, -0.1, -0.2])
    np.testing.assert_array_equal(cfg.q0, ref.q0)
    assert (cfg.duration, cfg.dt, cfg.wind, cfg.noise) == (30.0, 0.001, None, None)
    assert cfg.plant_params == default_params() == cfg.controller.model.params


def test_unknown_key_reports_its_line():
    with pytest.raises(ParseError) as exc:
        load_text("duration: 5\ncontroller:\n  mode: coupled\n  K_pz: [1, 2]\n")
    assert exc.value.line == 4
    assert "K_pz" in exc.value.reason


def test_malformed_yaml_is_a_parse_error():
    with pytest.raises(ParseError) as exc:
        load_text("plant: {m_l: [1, 2\n")
    assert exc.value.line is not None


@pytest.mark.parametrize("text", ["dt: 0", "plant: {m_l: -1}", "controller: {mode: fancy}",
                                  "model: spherical", "plant: {preset: heavy}"])
def test_invalid_values_are_validation_errors(text):
    with pytest.raises(ConfigValidationError):
        load_text(text)


def test_mass_override_with_noise_is_the_mismatch_scenario():
    cfg = load_text("plant: {m_l: 20.4}\nnoise: {accel_std: 1.0}\n")
    assert cfg.plant_params.m_l == 20.4
    assert cfg.controller.model.params.m_l == default_params().m_l
    assert cfg.noise == NoiseConfig()


def test_every_fixture_parses():
    for name in FIXTURES:
        cfg = parse_scenario(name)
        assert cfg.name == name
        assert parse_scenario(fixture_path(name)).name == name
    assert parse_scenario("planar_standard").controller.mode.value == "standard"
    assert parse_scenario("wind_heavy_load").plant_params.m_l == 28.0


def test_missing_file_exits_with_config_error(tmp_path, capsys):
    code = main(["simulate", "--config", str(tmp_path / "nope.yaml"), "--out", str(tmp_path / "x.csv")])
    assert code == 2
    assert "no such scenario" in capsys.readouterr().err


def test_divergent_run_exits_with_run_aborted(tmp_path, capsys):
    cfg = tmp_path / "coarse.yaml"
    cfg.write_text("dt: 0.05\nduration: 5\n")
    assert main(["simulate", "--config", str(cfg), "--out", str(tmp_path / "x.csv")]) == 3
    assert "run aborted" in capsys.readouterr().err


def test_simulate_case_a(case_a_log, capsys):
    log = read_csv(case_a_log)
    assert np.max(np.abs(log.q[-1])) < 0.01
    assert log.q.shape == (30001, 5)
    header = case_a_log.read_text().split("\n", 1)[0]
    assert header == "t,q1,q2,q3,q4,q5,dq1,dq2,dq3,dq4,dq5,Fx,Fy,tau_z"
    assert b"\r" not in case_a_log.read_bytes()


def test_simulate_prints_summary(tmp_path, capsys):
    cfg = tmp_path / "short.yaml"
    cfg.write_text("duration: 1.0\n")
    assert main(["simulate", "--config", str(cfg), "--out", str(tmp_path / "s.csv")]) == 0
    out = capsys.readouterr().out
    assert "final |q|_inf" in out and "Fx=" in out and "tau_z=" in out


def test_csv_round_trip_is_exact(tmp_path):
    cfg = ScenarioConfig(duration=0.5, noise=NoiseConfig(), seed=7, wind=DisturbanceProfile(0.1, 0.2))
    log = run(cfg)
    path = tmp_path / "rt.csv"
    write_csv(log, path)
    back = read_csv(path)
    for name in ("t", "q", "dq", "u", "q_meas", "dq_meas", "wind"):
        np.testing.assert_array_equal(getattr(back, name), getattr(log, name))


def test_kpi_on_constant_zero_log(tmp_path, capsys):
    t = np.arange(2001) * 0.001
    z = np.zeros((t.size, 5))
    path = tmp_path / "zero.csv"
    write_csv(SimLog(t=t, q=z, dq=z, u=np.zeros((t.size, 3))), path)
    kpi = kpi_table(capsys, path)
    assert kpi[("q4", "response_time")] == "0.0"
    assert kpi[("q5", "peak_response")] == "0.0"
    assert {kpi[(c, "snr_db")] for c in ("Fx", "Fy", "tau_z")} == {"NoiseFree"}


def test_kpi_of_case_a(case_a_log, capsys):
    kpi = kpi_table(capsys, case_a_log, "--joints", "q1,q4", "--channels", "Fx")
    assert float(kpi[("q4", "response_time")]) == pytest.approx(8.33, rel=0.3)
    assert ("q1", "peak_response") in kpi
    assert ("Fy", "snr_db") not in kpi


def test_kpi_table_format(case_a_log, capsys):
    assert main(["kpi", "--log", str(case_a_log)]) == 0
    out = capsys.readouterr().out
    assert "response_time" in out and "snr_db" in out


def test_kpi_rejects_unknown_joint(case_a_log, capsys):
    assert main(["kpi", "--log", str(case_a_log), "--joints", "q9"]) == 4


def test_kpi_rejects_unreadable_log(tmp_path, capsys):
    path = tmp_path / "junk.csv"
    path.write_text("a,b\n1,2\n")
    assert main(["kpi", "--log", str(path)]) == 2


def test_simulate_then_kpi_is_deterministic(tmp_path, capsys):
    cfg = tmp_path / "noisy.yaml"
    cfg.write_text("duration: 3.0\nseed: 11\nplant: {preset: uncertain}\nnoise: {}\n")
    tables = []
    for i in range(2):
        out = tmp_path / f"run{i}.csv"
        assert main(["simulate", "--config", str(cfg), "--out", str(out)]) == 0
        capsys.readouterr()
        tables.append(kpi_table(capsys, out))
    assert (tmp_path / "run0.csv").read_bytes() == (tmp_path / "run1.csv").read_bytes()
    assert tables[0] == tables[1]


def _eigen_rows(capsys, config):
    assert main(["eigen", "--config", config, "--format", "csv"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    return [(complex(float(r["re"]), float(r["im"])), r["classification"]) for r in rows]


def test_eigen_planar_standard_has_one_marginal_pair(capsys):
    rows = _eigen_rows(capsys, "planar_standard")
    assert len(rows) == 4
    assert sum(c == "MarginalImaginary" for _, c in rows) == 2


def test_eigen_planar_and_full_coupled_are_strictly_stable(capsys):
    for name, n in (("planar_coupled", 4), ("case_a", 10)):
        rows = _eigen_rows(capsys, name)
        assert len(rows) == n
        assert all(c == "StrictlyStable" for _, c in rows)


def test_eigen_table_format(capsys):
    assert main(["eigen", "--config", "planar_coupled"]) == 0
    out = capsys.readouterr().out
    assert "planar model, coupled mode" in out and "StrictlyStable" in out


def test_eigen_off_equilibrium_reference_is_an_analysis_error(tmp_path, capsys):
    cfg = tmp_path / "offset.yaml"
    cfg.write_text("model: planar\ncontroller: {mode: standard, qc_ref: [0.3]}\n")
    assert main(["eigen", "--config", str(cfg)]) == 4


def test_planar_standard_simulation_warns_of_limit_cycle(tmp_path, capsys):
    out = tmp_path / "ps.csv"
    assert main(["simulate", "--config", "planar_standard", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "limit cycle detected in q1" in text
    assert read_csv(out).u.shape[1] == 1


def test_batch_runs_jobs_concurrently(tmp_path, capsys):
    cfgs = []
    for i, mode in enumerate(("coupled", "standard")):
        p = tmp_path / f"b{i}.yaml"
        p.write_text(f"duration: 1.0\ncontroller: {{mode: {mode}}}\n")
        cfgs.append(str(p))
    bad = tmp_path / "bad.yaml"
    bad.write_text("dt: -1\n")
    code = main(["batch", "--config", *cfgs, str(bad), "--out-dir", str(tmp_path / "out"),
                 "--jobs", "2"])
    assert code == 2
    assert (tmp_path / "out" / "b0.csv").exists() and (tmp_path / "out" / "b1.csv").exists()
    solo = tmp_path / "solo.csv"
    assert main(["simulate", "--config", cfgs[0], "--out", str(solo)]) == 0
    assert solo.read_bytes() == (tmp_path / "out" / "b0.csv").read_bytes()
