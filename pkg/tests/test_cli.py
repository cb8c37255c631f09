import math

import numpy as np
import pytest

from bloodfv import ConfigError, FluxKind, run
from bloodfv.cli import main
from bloodfv.config import parse_config
from bloodfv.driver import StudyResult
from bloodfv.output import (SNAPSHOT_HEADER, read_snapshot_csv, write_error_report,
                            write_snapshot_csv)
from bloodfv.presets import dead_man
from bloodfv.wellbalanced import FrictionTreatment


def test_parse_preset_tourniquet_defaults():
    sc = parse_config("[run]\npreset = tourniquet\n")
    assert sc.name == "tourniquet"
    assert sc.grid.n_cells == 100
    assert sc.cfl == 1.0
    assert sc.order.order == 1
    assert sc.flux is FluxKind.HLL
    assert sc.t_end == 0.005


def test_parse_preset_with_overrides():
    sc = parse_config("""
[run]
preset = tourniquet
cells = 400
flux = rusanov
order = 2
slope = enom
friction = none
""")
    assert sc.grid.n_cells == 400
    assert sc.flux is FluxKind.RUSANOV
    assert sc.order.order == 2
    assert sc.order.slope.kind == "enom"
    assert sc.friction is FrictionTreatment.NONE


def test_parse_inline_scenario():
    sc = parse_config("""
[run]
t_end = 0.001
flux = hll
order = 1
source = hydrostatic

[grid]
cells = 64
length = 0.08
x_left = -0.04

[model]
k = 1e7
rho = 1060
radius = 4e-3

[initial]
kind = radius-step
radius_left = 5e-3
radius_right = 4e-3
x_step = 0.0
""")
    assert sc.grid.n_cells == 64
    assert sc.t_end == 0.001
    x = sc.grid.cell_centers()
    init = sc.initial(x)
    assert init.A[0] == pytest.approx(math.pi * 25e-6, rel=1e-15)
    assert init.A[-1] == pytest.approx(math.pi * 16e-6, rel=1e-15)
    # defaults for unset knobs
    assert sc.flux is FluxKind.HLL
    assert sc.friction is FrictionTreatment.SEMI_IMPLICIT


def test_parse_missing_model_key_names_path():
    text = """
[run]
t_end = 0.001
[grid]
cells = 16
length = 0.1
[model]
rho = 1060
radius = 4e-3
[initial]
kind = rest
"""
    with pytest.raises(ConfigError, match="model.k"):
        parse_config(text)


def test_parse_unknown_key_rejected():
    with pytest.raises(ConfigError, match="run.colour"):
        parse_config("[run]\npreset = tourniquet\ncolour = red\n")
    with pytest.raises(ConfigError, match=r"\[pump\]"):
        parse_config("[pump]\nspeed = 3\n")


def test_parse_preset_conflicts_with_inline_sections():
    with pytest.raises(ConfigError, match="grid"):
        parse_config("[run]\npreset = wave\n[grid]\ncells = 10\nlength = 1\n")


def test_parse_unknown_preset():
    with pytest.raises(ConfigError, match="unknown preset"):
        parse_config("[run]\npreset = nonesuch\n")


def test_parse_boundary_timeseries_file(tmp_path):
    series = tmp_path / "inflow.txt"
    series.write_text("0.0 0.0\n1.0 1.0e-7\n")
    sc = parse_config(f"""
[run]
t_end = 0.001
[grid]
cells = 16
length = 0.1
[model]
k = 1e8
rho = 1060
radius = 4e-3
[boundary.left]
kind = given-discharge
file = {series}
""")
    assert sc.boundaries[0].q_of_t(0.5) == pytest.approx(5e-8)
    with pytest.raises(ConfigError, match="value or file"):
        parse_config(f"""
[run]
t_end = 0.001
[grid]
cells = 16
length = 0.1
[model]
k = 1e8
rho = 1060
radius = 4e-3
[boundary.left]
kind = given-discharge
value = 1e-7
file = {series}
""")


def test_parse_naive_source_second_order_rejected():
    with pytest.raises(ValueError):
        parse_config("[run]\npreset = dead-man\nsource = naive\norder = 2\n")


def test_snapshot_csv_roundtrip(tmp_path):
    sc = dead_man(t_end=0.01)
    res = run(sc)
    paths = write_snapshot_csv(res, tmp_path)
    data = read_snapshot_csv(paths[0])
    t, A, Q = res.snapshots[0]
    assert np.array_equal(data["A"], A)
    assert np.array_equal(data["Q"], Q)
    assert np.array_equal(data["x"], sc.grid.cell_centers())
    # dead-man run: velocity column identically small, pressure near p0
    assert np.max(np.abs(data["u"])) <= 1e-12
    with open(paths[0]) as fh:
        assert fh.readline().strip() == SNAPSHOT_HEADER


def test_snapshot_csv_single_cell_rest(tmp_path):
    from bloodfv import Grid, State, VesselModel
    from bloodfv.driver import Scenario
    grid = Grid(1, 0.1)
    model = VesselModel.from_rest_radius(grid, 4e-3, k=1e8, rho=1060.0, p0=666.0)
    sc = Scenario(grid=grid, model=model,
                  initial=lambda x: State(model.a0.copy(), np.zeros_like(x)),
                  t_end=0.0, name="cell")
    res = run(sc)
    (path, _) = write_snapshot_csv(res, tmp_path)
    data = read_snapshot_csv(path)
    assert data["Q"][0] == 0.0
    assert data["p"][0] == 666.0


def test_error_report(tmp_path):
    study = StudyResult(cells=(50, 100, 200), errors=(1 / 50, 1 / 100, 1 / 200),
                        slope=-1.0, intercept=0.0)
    path = tmp_path / "report.csv"
    write_error_report(study, path)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "J,L1_error"
    assert lines[1].startswith("50,")
    assert lines[-1].startswith("regression,-1")
    empty = StudyResult(cells=(), errors=(), slope=0.0, intercept=0.0)
    with pytest.raises(ValueError):
        write_error_report(empty, tmp_path / "empty.csv")


def test_cli_run_preset(tmp_path, capsys):
    out = tmp_path / "o"
    rc = main(["run", "--preset", "tourniquet", "--cells", "50",
               "--t-end", "0.002", "--out", str(out)])
    assert rc == 0
    assert (out / "snapshot_000.csv").exists()
    assert (out / "snapshots.csv").exists()
    assert "L1(R)" in capsys.readouterr().out


def test_cli_run_config(tmp_path):
    cfg = tmp_path / "case.cfg"
    cfg.write_text("[run]\npreset = dead-man\nt_end = 0.01\n"
                   f"[output]\ndirectory = {tmp_path / 'from_cfg'}\n")
    rc = main(["run", "--config", str(cfg)])
    assert rc == 0
    assert (tmp_path / "from_cfg" / "snapshot_000.csv").exists()


def test_cli_errors_exit_nonzero(tmp_path, capsys):
    rc = main(["run", "--out", str(tmp_path)])
    assert rc == 2
    assert "error:" in capsys.readouterr().err
    missing = tmp_path / "nope.cfg"
    rc = main(["run", "--config", str(missing)])
    assert rc == 3


def test_cli_study_and_oracle(tmp_path, capsys):
    rc = main(["study", "--preset", "damping-a-inf", "--cells", "8,16,32",
               "--t-end", "1.0", "--field", "Q", "--out", str(tmp_path)])
    assert rc == 0
    report = tmp_path / "study_damping-a-inf_Q.csv"
    assert report.exists()
    assert "regression" in report.read_text()
    rc = main(["oracle", "--preset", "tourniquet", "--cells", "32",
               "--times", "0.001,0.005", "--out", str(tmp_path)])
    assert rc == 0
    body = (tmp_path / "oracle_tourniquet.csv").read_text()
    assert body.splitlines()[0] == "t,x,A,Q"
    rc = main(["oracle", "--preset", "dead-man", "--out", str(tmp_path)])
    assert rc == 2  # no analytic oracle for the dead-man case
