"""Baselines, parameter application, sweeps, config files, CSV output."""

import numpy as np
import pytest

from cascadesim import experiments as ex
from cascadesim.cascade import ConvergenceError


def test_bell_model_structure():
    m = ex.bell_model()
    assert m.n_emitters == 2
    assert m.emitters[0].dipole == (6.0, 0.0, 0.0)
    assert m.emitters[1].position == (40.0, 0.0, 0.0)
    assert m.coupling.hybridization[0, 1] == 0.08
    assert m.dephasing == 0.0


def test_ghz_model_structure():
    m = ex.ghz_model(theta=np.pi / 3)
    assert m.n_emitters == 3
    assert [e.position[0] for e in m.emitters] == [-20.0, 0.0, 20.0]
    g = m.coupling.hybridization
    assert g[0, 1] == g[1, 2] == 0.08
    assert g[0, 2] == 0.0
    assert m.emitters[1].dipole_magnitude == pytest.approx(6.0)
    assert m.emitters[1].dipole[1] == pytest.approx(6.0 * np.sin(np.pi / 3))


def test_apply_parameter_dipole_magnitude():
    m = ex.apply_parameter(ex.bell_model(theta=0.3), "d_x", 2.0)
    for e in m.emitters:
        assert e.dipole_magnitude == pytest.approx(2.0)
    # direction preserved
    assert m.emitters[1].dipole[1] == pytest.approx(2.0 * np.sin(0.3))


def test_apply_parameter_hybridization():
    m = ex.apply_parameter(ex.bell_model(), "G_hyb", 0.05)
    assert m.coupling.hybridization[0, 1] == 0.05
    assert m.coupling.hybridization[0, 0] == 0.0


def test_apply_parameter_theta_and_dephasing():
    m = ex.apply_parameter(ex.bell_model(), "theta", np.pi / 2)
    assert m.emitters[1].dipole[0] == pytest.approx(0.0, abs=1e-12)
    assert m.emitters[1].dipole[1] == pytest.approx(6.0)
    m = ex.apply_parameter(ex.bell_model(), "gamma_d", 0.7)
    assert m.dephasing == 0.7


def test_apply_parameter_position_scale():
    m = ex.apply_parameter(ex.bell_model(), "position_scale", 2.0)
    assert m.emitters[1].position == (80.0, 0.0, 0.0)


def test_apply_parameter_validation():
    with pytest.raises(ex.UsageError):
        ex.apply_parameter(ex.bell_model(), "nope", 1.0)
    with pytest.raises(ex.UsageError):
        ex.apply_parameter(ex.bell_model(), "d_x", -1.0)
    with pytest.raises(ex.UsageError):
        ex.apply_parameter(ex.bell_model(), "gamma_d", -0.1)


def test_sweep_config_validation():
    with pytest.raises(ex.UsageError):
        ex.SweepConfig(base=ex.bell_model(), parameter="theta", values=())
    with pytest.raises(ex.UsageError):
        ex.SweepConfig(base=ex.bell_model(), parameter="theta",
                       values=(0.0, 1.0, 0.5))
    with pytest.raises(ex.UsageError):
        ex.SweepConfig(base=ex.bell_model(), parameter="bogus", values=(1.0,))


def test_evaluate_model_bell_baseline():
    result = ex.evaluate_model(ex.bell_model(), n_photons=2)
    assert result.report.eta == pytest.approx(1.0, abs=5e-3)
    assert result.report.fidelity_phase_opt == pytest.approx(0.982, abs=2e-3)
    assert result.path_count == 2
    assert result.merged_path_count == 2


def _tiny_config(**overrides):
    kwargs = dict(base=ex.bell_model(), parameter="d_x", values=(4.0, 6.0),
                  n_photons=2)
    kwargs.update(overrides)
    return ex.SweepConfig(**kwargs)


def test_run_sweep_writes_csv_incrementally(tmp_path):
    out = tmp_path / "sweep.csv"
    rows = ex.run_sweep(_tiny_config(), out)
    text = out.read_text().splitlines()
    assert text[0] == ex.SWEEP_HEADER
    assert len(text) == 3
    assert len(rows) == 2
    assert all(not r.error for r in rows)
    # 17-significant-digit round trip
    for line, row in zip(text[1:], rows):
        fields = line.split(",")
        assert float(fields[0]) == row.value
        assert float(fields[1]) == row.eta
        assert float(fields[2]) == row.fidelity


def test_run_sweep_byte_identical_across_runs_and_threads(tmp_path):
    outs = []
    for name, threads in (("a.csv", 1), ("b.csv", 1), ("c.csv", 2)):
        path = tmp_path / name
        ex.run_sweep(_tiny_config(), path, threads=threads)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] == outs[2]


def test_run_sweep_marks_failed_rows(tmp_path):
    out = tmp_path / "sweep.csv"
    rows = ex.run_sweep(_tiny_config(values=(-1.0, 6.0)), out)
    assert rows[0].error == "UsageError"
    assert np.isnan(rows[0].eta)
    assert not rows[1].error
    line = out.read_text().splitlines()[1]
    assert line.endswith("UsageError")
    assert "nan" in line


def test_named_experiment_validation():
    with pytest.raises(ex.UsageError):
        ex.run_named_experiment("nope")


def test_named_sweep_grids():
    cfg = ex._named_sweep_config("ghz_theta", 1e-4)
    assert len(cfg.values) == 41
    assert cfg.values[0] == pytest.approx(np.pi / 4)
    assert cfg.values[-1] == pytest.approx(np.pi / 2)
    assert cfg.n_photons == 3
    cfg = ex._named_sweep_config("bell_gd", 1e-4)
    assert cfg.parameter == "gamma_d"
    assert cfg.values[0] == 0.0
    assert cfg.values[-1] == 2.0


def test_population_comparison(tmp_path):
    out = tmp_path / "pops.csv"
    rows = ex.population_comparison(ex.bell_model(), out)
    header = out.read_text().splitlines()[0].split(",")
    assert header[0] == "t_per_gamma0"
    assert len(header) == 13
    data = np.array(rows)
    classical, quantum = data[:, 1:7], data[:, 7:13]
    assert np.max(np.abs(classical - quantum)) < 1e-3
    assert data[0, -1] == 1.0  # starts fully in the top state


def test_path_table_csv(tmp_path):
    out = tmp_path / "paths.csv"
    merged = ex.path_table_csv(ex.bell_model(), out)
    lines = out.read_text().splitlines()
    assert lines[0] == "path_id,states,frequencies_eV,weight"
    assert len(lines) == 1 + len(merged) == 3
    assert sum(p.weight for p in merged) == pytest.approx(1.0, abs=1e-6)


BELL_TOML = """
dephasing = 0.25

[[emitter]]
omega = 1.0
dipole = [6.0, 0.0, 0.0]
position = [0.0, 0.0, 0.0]

[[emitter]]
omega = 1.0
dipole = [6.0, 0.0, 0.0]
position = [40.0, 0.0, 0.0]

[coupling]
epsilon_r = 2.0
hybridization = [[0.0, 0.08], [0.08, 0.0]]

[target]
codewords = 2
photons = 2

[solver]
tol_grid = 5e-5

[sweep]
parameter = "theta"
start = 0.0
stop = 0.5
count = 5
rotated_emitter = 1
"""


def test_load_config_roundtrip(tmp_path):
    path = tmp_path / "model.toml"
    path.write_text(BELL_TOML)
    model, sweep, options = ex.load_config(path)
    assert model.n_emitters == 2
    assert model.dephasing == 0.25
    assert model.coupling.epsilon_r == 2.0
    assert model.coupling.hybridization[1, 0] == 0.08
    assert sweep.parameter == "theta"
    assert len(sweep.values) == 5
    assert sweep.n_photons == 2
    assert sweep.tol_grid == 5e-5
    assert options["n_codewords"] == 2


def test_load_config_missing_keys(tmp_path):
    path = tmp_path / "bad.toml"
    path.write_text("[coupling]\nepsilon_r = 1.0\n")
    with pytest.raises(ex.UsageError):
        ex.load_config(path)
    path.write_text("[[emitter]]\nomega = 1.0\n")
    with pytest.raises(ex.UsageError):
        ex.load_config(path)


def test_load_config_explicit_value_list(tmp_path):
    path = tmp_path / "model.toml"
    path.write_text(BELL_TOML.replace(
        'start = 0.0\nstop = 0.5\ncount = 5',
        'values = [0.1, 0.2]'))
    _, sweep, _ = ex.load_config(path)
    assert sweep.values == (0.1, 0.2)
