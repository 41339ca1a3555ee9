"""Command-line surface: subcommands, formats, exit codes, determinism,
figures and delimited output."""

import json

import pytest
from click.testing import CliRunner

from nccylinder.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def test_algebra_check_passes(runner):
    res = runner.invoke(main, ["algebra-check", "--trials", "6",
                               "--format", "json"])
    assert res.exit_code == 0, res.output
    rows = json.loads(res.output)
    assert all(r["passed"] for r in rows)
    names = {r["name"] for r in rows}
    assert {"associativity", "star_anti_homomorphism", "leibniz_d1",
            "trace_cyclic", "cocycle_hochschild"} <= names


def test_algebra_check_reports_max_residual_per_identity(runner):
    res = runner.invoke(main, ["algebra-check", "--trials", "4",
                               "--format", "json"])
    rows = json.loads(res.output)
    for r in rows:
        assert "residual" in r and "tol" in r


def test_injected_star_error_fails_antihomomorphism(runner):
    res = runner.invoke(main, ["algebra-check", "--trials", "4",
                               "--inject-star-error", "--format", "json"])
    assert res.exit_code == 1
    rows = {r["name"]: r for r in json.loads(res.output)}
    assert not rows["star_anti_homomorphism"]["passed"]


def test_projection_command(runner, tmp_path):
    out = tmp_path / "proj.json"
    res = runner.invoke(main, ["projection", "--n", "2", "--hbar", "1",
                               "--out", str(out)])
    assert res.exit_code == 0, res.output
    doc = json.loads(out.read_text())
    assert doc["n"] == 2
    assert abs(doc["trace"]["re"] - 2.0) < 1e-7
    assert abs(doc["chern"]["re"] - 2.0) < 1e-4
    assert doc["idempotence_residual"] < 1e-8
    assert doc["selfadjoint_residual"] < 1e-10


def test_projection_low_hbar(runner):
    res = runner.invoke(main, ["projection", "--n", "1", "--hbar", "0.5",
                               "--format", "json"])
    doc = json.loads(res.output)
    assert abs(doc["trace"]["re"] - 0.5) < 1e-8
    assert abs(doc["chern"]["re"] - 1.0) < 1e-4


def test_projection_orthogonality_flag(runner):
    res = runner.invoke(main, ["projection", "--n", "1", "--hbar", "1",
                               "--orthogonality", "2", "--format", "json"])
    assert res.exit_code == 0, res.output
    doc = json.loads(res.output)
    assert doc["orthogonality"]["product_residual"] <= 1e-10
    assert doc["orthogonality"]["sum_residual"] <= 1e-10


def test_projection_emits_element_and_figure(runner, tmp_path):
    elem = tmp_path / "p1.json"
    plots = tmp_path / "figs"
    res = runner.invoke(main, ["projection", "--n", "1", "--hbar", "1",
                               "--emit-element", str(elem),
                               "--plot-dir", str(plots),
                               "--format", "json"])
    assert res.exit_code == 0, res.output
    doc = json.loads(elem.read_text())
    assert set(doc) == {"hbar", "modes", "decay_class"}
    assert sorted(m["n"] for m in doc["modes"]) == [-1, 0, 1]
    # the serialised element must parse back through the grammar
    from nccylinder.algebra import element_from_dict
    from nccylinder.projections import build_bump_pair, build_pn
    from nccylinder.algebra import distance
    back = element_from_dict(doc)
    ref = build_pn(build_bump_pair(1.0), 1).element
    assert distance(back, ref) <= 1e-10
    fig = plots / "projection_bumps_n1.png"
    assert fig.exists() and fig.stat().st_size > 1000


def test_projection_rejects_bad_n(runner):
    res = runner.invoke(main, ["projection", "--n", "0"])
    assert res.exit_code == 2


def test_module_check(runner):
    res = runner.invoke(main, ["module-check", "--trials", "4",
                               "--format", "text"])
    assert res.exit_code == 0, res.output
    assert "herm_compatibility" in res.output
    assert "module_iso_round_trip_r3" in res.output


def test_connection_command(runner):
    res = runner.invoke(main, ["connection", "--hbar", "1",
                               "--hbar-prime", "2", "--r", "1",
                               "--r-prime", "2", "--format", "json"])
    assert res.exit_code == 0, res.output
    doc = json.loads(res.output)
    assert doc["case"] == "rational"
    assert abs(doc["curvature"]["im"] + 3.141592653589793) < 1e-12
    assert abs(doc["curvature"]["re"]) < 1e-12
    assert doc["leibniz_residuals"]["left"] <= 1e-8
    assert doc["leibniz_residuals"]["right"] <= 1e-8


def test_connection_equal_hbar(runner):
    res = runner.invoke(main, ["connection", "--hbar", "1",
                               "--hbar-prime", "1", "--r", "1",
                               "--r-prime", "1", "--format", "json"])
    doc = json.loads(res.output)
    assert doc["case"] == "equal"
    assert abs(doc["curvature"]["im"]) <= 1e-12
    assert abs(doc["curvature"]["re"]) <= 1e-12


def test_connection_irrational_ratio_is_input_error(runner):
    res = runner.invoke(main, ["connection", "--hbar", "1",
                               "--hbar-prime", "1.41421356",
                               "--r", "1", "--r-prime", "1"])
    assert res.exit_code == 2
    assert "hbar" in res.output or "r/r'" in res.output


def test_curvature_command_catenoid(runner):
    res = runner.invoke(main, ["curvature", "ln(cosh(u))",
                               "--format", "json"])
    assert res.exit_code == 0, res.output
    doc = json.loads(res.output)
    assert abs(doc["total_curvature"]["re"] + 2.0) < 1e-6
    assert abs(doc["normalized_total"]["re"] + 4.0 * 3.141592653589793) < 1e-5
    assert doc["methods_difference"] < 1e-8
    assert doc["metric"] == "conformal"


def test_curvature_command_flat(runner):
    res = runner.invoke(main, ["curvature", "0", "--format", "json"])
    doc = json.loads(res.output)
    assert abs(doc["total_curvature"]["re"]) < 1e-10


def test_curvature_perturbed_catenoid(runner):
    res = runner.invoke(main, ["curvature", "ln(cosh(u)) + exp(-u^2)",
                               "--format", "json"])
    doc = json.loads(res.output)
    assert abs(doc["total_curvature"]["re"] + 2.0) < 1e-6


def test_curvature_parse_error_exit_code(runner):
    res = runner.invoke(main, ["curvature", "ln(cosh(u)"])
    assert res.exit_code == 2
    assert "parse error" in res.output


def test_curvature_profile_csv_and_figure(runner, tmp_path):
    csv_path = tmp_path / "profile.csv"
    plots = tmp_path / "figs"
    res = runner.invoke(main, ["curvature", "ln(cosh(u))",
                               "--profile-csv", str(csv_path),
                               "--plot-dir", str(plots),
                               "--format", "csv"])
    assert res.exit_code == 0, res.output
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0] == "u,K"
    assert len(lines) > 100
    # minimum of the profile is at the waist, K(0) = -1
    u0, k0 = min(lines[1:], key=lambda ln: float(ln.split(",")[1])).split(",")
    assert abs(float(u0)) < 0.05 and abs(float(k0) + 1.0) < 1e-3
    assert (plots / "gaussian_curvature.png").stat().st_size > 1000


def test_deterministic_json_for_fixed_seed(runner):
    args = ["algebra-check", "--trials", "3", "--seed", "7",
            "--format", "json"]
    first = runner.invoke(main, args)
    second = runner.invoke(main, args)
    assert first.output == second.output


def test_config_file_defaults(runner, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\nn = 2\nhbar = 0.5\n")
    res = runner.invoke(main, ["--config", str(cfg), "projection",
                               "--format", "json"])
    assert res.exit_code == 0, res.output
    doc = json.loads(res.output)
    assert doc["n"] == 2 and doc["hbar"] == 0.5
    # flags still override the file
    res = runner.invoke(main, ["--config", str(cfg), "projection",
                               "--n", "1", "--format", "json"])
    assert json.loads(res.output)["n"] == 1


def test_text_format_has_pass_column(runner):
    res = runner.invoke(main, ["algebra-check", "--trials", "3",
                               "--format", "text"])
    assert "PASS" in res.output


def test_csv_format(runner):
    res = runner.invoke(main, ["algebra-check", "--trials", "3",
                               "--format", "csv"])
    header = res.output.splitlines()[0]
    assert header.startswith("name,residual,tol,passed")
