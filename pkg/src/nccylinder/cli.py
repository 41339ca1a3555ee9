"""Command-line surface: one subcommand per result family plus a
reproduce-all table.

Exit codes: 0 when every asserted quantity is within tolerance, 1 on a
numerical assertion failure, 2 on input or parse errors.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from pathlib import Path

import click

from . import checks
from . import report as rpt
from .algebra import element_to_dict
from .errors import (DegenerateParamsError, ParseError,
                     RatioNotRationalError)
from .projections import build_bump_pair, build_pn
from .quadrature import QuadratureConfig

EXIT_OK = 0
EXIT_NUMERIC = 1
EXIT_INPUT = 2


@dataclass
class RunConfig:
    hbar: float = 1.0
    hbar_prime: float = 1.0
    quad: QuadratureConfig = QuadratureConfig()
    seed: int = 0
    output_format: str = "json"


def _load_config(ctx, param, path):
    """Flat key = value file; command-line flags override its entries."""
    if path is None:
        return None
    defaults = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise click.BadParameter(f"line {lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        defaults[key.replace("-", "_")] = value
    ctx.default_map = {**defaults, **(ctx.default_map or {})}
    for sub in ("algebra-check", "projection", "module-check", "connection",
                "curvature", "reproduce-all"):
        ctx.default_map.setdefault(sub, defaults)
    return path


def _common(fn):
    fn = click.option("--tol", type=float, default=1e-10, show_default=True,
                      help="quadrature tolerance (absolute and relative)")(fn)
    fn = click.option("--seed", type=int, default=0, show_default=True)(fn)
    fn = click.option("--format", "fmt",
                      type=click.Choice(["json", "csv", "text"]),
                      default="json", show_default=True)(fn)
    fn = click.option("--out", type=click.Path(dir_okay=False),
                      help="write the report here instead of stdout")(fn)
    return fn


def _emit(payload, fmt: str, out: str | None):
    text = rpt.render(payload, fmt)
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


def _quad(tol: float) -> QuadratureConfig:
    return QuadratureConfig(abs_tol=tol, rel_tol=tol)


def _finish(results) -> None:
    if any(not r.passed for r in results):
        sys.exit(EXIT_NUMERIC)


@click.group()
@click.option("--config", type=click.Path(exists=True, dir_okay=False),
              callback=_load_config, expose_value=False, is_eager=True,
              help="flat key = value defaults file; flags override it")
def main():
    """Numerical toolkit for the noncommutative cylinder."""


@main.command("algebra-check")
@_common
@click.option("--trials", type=int, default=100, show_default=True,
              help="random instances per identity")
@click.option("--hbar", type=float, default=None,
              help="restrict to one deformation parameter (default: cycle "
                   "0.5, 1, 2)")
@click.option("--inject-star-error", is_flag=True, hidden=True,
              help="flip a shift sign in the involution (mutation testing)")
def algebra_check(trials, hbar, inject_star_error, tol, seed, fmt, out):
    """Run the product/involution/derivation/trace/cocycle identity suite."""
    hbars = (hbar,) if hbar is not None else checks.HBAR_SET
    checks_list = checks.algebra_suite(
        trials, seed, _quad(tol), inject_star_sign_error=inject_star_error,
        hbars=hbars)
    _emit(checks_list, fmt, out)
    _finish(checks_list)


@main.command("projection")
@_common
@click.option("--n", "n", type=int, default=1, show_default=True)
@click.option("--hbar", type=float, default=1.0, show_default=True)
@click.option("--orthogonality", "m", type=int, default=None,
              help="also check orthogonality and direct sum against the "
                   "member M shifted past this one")
@click.option("--emit-element", type=click.Path(dir_okay=False),
              help="write the projection element as JSON (grammar strings)")
@click.option("--plot-dir", type=click.Path(file_okay=False),
              help="render the bump-family figure into this directory")
def projection(n, hbar, m, emit_element, plot_dir, tol, seed, fmt, out):
    """Build a projection family member; report trace, pairing, residuals."""
    if n < 1:
        raise click.BadParameter("--n must be >= 1")
    cfg = _quad(tol)
    rep = checks.projection_report(n, hbar, cfg)
    results = [
        checks.CheckResult(f"trace_n{n}", rep["trace_error"] / (n * hbar), 1e-8),
        checks.CheckResult(f"chern_n{n}", rep["chern_error"], 1e-4),
        checks.CheckResult("idempotence", rep["idempotence_residual"], 1e-8),
        checks.CheckResult("self_adjoint", rep["selfadjoint_residual"], 1e-10),
    ]
    if m is not None:
        orth = checks.orthogonality_report(n, m, hbar, cfg)
        rep["orthogonality"] = orth
        results.append(checks.CheckResult(
            f"orthogonality_p{n}_p{m}", orth["product_residual"], 1e-10))
        results.append(checks.CheckResult(
            f"direct_sum_p{n}_p{m}", orth["sum_residual"], 1e-10))
    if emit_element:
        pair = build_bump_pair(hbar)
        doc = element_to_dict(build_pn(pair, n).element)
        Path(emit_element).write_text(json.dumps(doc, indent=2) + "\n")
    if plot_dir:
        Path(plot_dir).mkdir(parents=True, exist_ok=True)
        pair = build_bump_pair(hbar)
        rep["figure"] = rpt.render_bump_figure(
            pair, n, str(Path(plot_dir) / f"projection_bumps_n{n}.png"))
    rep["checks"] = [r.as_dict() for r in results]
    _emit(rep, fmt, out)
    _finish(results)


@main.command("module-check")
@_common
@click.option("--trials", type=int, default=50, show_default=True)
def module_check(trials, tol, seed, fmt, out):
    """Run the bimodule action/inner-product/hermitian-structure suite."""
    checks_list = checks.bimodule_suite(trials, seed, _quad(tol))
    _emit(checks_list, fmt, out)
    _finish(checks_list)


@main.command("connection")
@_common
@click.option("--hbar", type=float, default=1.0, show_default=True)
@click.option("--hbar-prime", type=float, default=2.0, show_default=True)
@click.option("--r", "r", type=int, default=1, show_default=True)
@click.option("--r-prime", type=int, default=2, show_default=True)
@click.option("--lambda0", type=float, default=1.0, show_default=True)
@click.option("--lambda1", type=float, default=0.0, show_default=True)
def connection(hbar, hbar_prime, r, r_prime, lambda0, lambda1, tol, seed,
               fmt, out):
    """Solve for a bimodule connection and verify both Leibniz rules."""
    try:
        rep = checks.connection_report(hbar, hbar_prime, r, r_prime,
                                       seed=seed, lambda0=lambda0,
                                       lambda1=lambda1, cfg=_quad(tol))
    except (RatioNotRationalError, DegenerateParamsError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    results = [
        checks.CheckResult("leibniz_left", rep["leibniz_residuals"]["left"],
                           1e-8),
        checks.CheckResult("leibniz_right", rep["leibniz_residuals"]["right"],
                           1e-8),
        checks.CheckResult("curvature_measured",
                           rep["curvature_measured_error"], 1e-10),
    ]
    rep["checks"] = [r_.as_dict() for r_ in results]
    _emit(rep, fmt, out)
    _finish(results)


@main.command("curvature")
@_common
@click.argument("k_expr")
@click.option("--profile-csv", type=click.Path(dir_okay=False),
              help="write (u, K(u)) pairs for external plotting")
@click.option("--plot-dir", type=click.Path(file_okay=False),
              help="render the curvature profile into this directory")
def curvature(k_expr, profile_csv, plot_dir, tol, seed, fmt, out):
    """Conformal-metric curvature for a k(u) given in the expression
    grammar, e.g. 'ln(cosh(u))'."""
    try:
        rep = checks.curvature_report(k_expr, _quad(tol))
    except ParseError as exc:
        click.echo(f"parse error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    profile = rep.pop("profile")
    if profile_csv:
        Path(profile_csv).write_text(rpt.profile_csv(profile))
        rep["profile_csv"] = profile_csv
    if plot_dir:
        Path(plot_dir).mkdir(parents=True, exist_ok=True)
        rep["figure"] = rpt.render_profile_figure(
            profile, str(Path(plot_dir) / "gaussian_curvature.png"))
    results = [
        checks.CheckResult("koszul_metric_compatible",
                           rep["compliance"]["metric"], 1e-9),
        checks.CheckResult("koszul_torsion_free",
                           rep["compliance"]["torsion"], 1e-9),
        checks.CheckResult("total_curvature_methods_agree",
                           rep["methods_difference"], 1e-8),
    ]
    rep["checks"] = [r.as_dict() for r in results]
    _emit(rep, fmt, out)
    _finish(results)


@main.command("reproduce-all")
@_common
@click.option("--trials", type=int, default=100, show_default=True,
              help="instances per algebra identity (bimodule suite uses half)")
@click.option("--plot-dir", type=click.Path(file_okay=False),
              help="render the standard figures into this directory")
def reproduce_all(trials, plot_dir, tol, seed, fmt, out):
    """Recompute every quantitative claim and print a pass/fail table."""
    rows = checks.reproduce_all(seed=seed, cfg=_quad(tol),
                                algebra_trials=trials,
                                bimodule_trials=max(trials // 2, 50))
    if plot_dir:
        Path(plot_dir).mkdir(parents=True, exist_ok=True)
        pair = build_bump_pair(1.0)
        rpt.render_bump_figure(pair, 2,
                               str(Path(plot_dir) / "projection_bumps_n2.png"))
        rep = checks.curvature_report("ln(cosh(u))", _quad(tol))
        rpt.render_profile_figure(rep["profile"],
                                  str(Path(plot_dir) / "gaussian_curvature.png"),
                                  title="Gaussian curvature, catenoid metric")
    _emit(rows, fmt, out)
    _finish(rows)


if __name__ == "__main__":
    main()
