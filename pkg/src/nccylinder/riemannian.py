"""Pseudo-Riemannian calculus on the rank-2 free module over the extended
algebra: metric validation, the Koszul-formula connection coefficients,
the curvature tensor, Gaussian curvature, and total curvature with its
boundary-slope closed form.

Metric components are real functions of the continuous variable only; the
mode derivation annihilates them, but the formulas keep both derivative
terms so the code path is the general one, not a hand-simplified one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fields as F
from .errors import NonConvergentError, SingularMetricError
from .fields import FieldExpr
from .quadrature import (DEFAULT_QUADRATURE, QuadratureConfig,
                         integrate_callable)

DEFAULT_GRID = (-6.0, 6.0, 1000)


@dataclass(frozen=True)
class Metric:
    """2x2 real symmetric metric with components depending on u only.

    ``conformal_k`` records the conformal exponent when the metric was
    built as exp(2k) times the identity; total-curvature extraction needs
    it."""

    h: tuple[tuple[FieldExpr, FieldExpr], tuple[FieldExpr, FieldExpr]]
    conformal_k: FieldExpr | None = None


@dataclass(frozen=True)
class Christoffel:
    """Connection coefficients gamma[l][i][j], symmetric in (i, j)."""

    gamma: tuple[tuple[tuple[FieldExpr, FieldExpr],
                       tuple[FieldExpr, FieldExpr]],
                 tuple[tuple[FieldExpr, FieldExpr],
                       tuple[FieldExpr, FieldExpr]]]


@dataclass(frozen=True)
class CurvatureReport:
    """The single independent curvature component and the Gaussian
    curvature, as expressions in u."""

    r1212: FieldExpr
    gaussian: FieldExpr


@dataclass(frozen=True)
class TotalCurvature:
    quadrature: complex
    boundary_slope: complex
    radius: float


@dataclass(frozen=True)
class ComplianceReport:
    metric_residual: float
    torsion_residual: float

    @property
    def max_residual(self) -> float:
        return max(self.metric_residual, self.torsion_residual)


def _partial(i: int, expr: FieldExpr) -> FieldExpr:
    """The two commuting derivations restricted to u-only components: the
    mode derivation is structurally zero but kept in every formula."""
    if i == 1:
        return expr.derivative()
    if i == 2:
        return F.scale(expr, 0)
    raise ValueError("index must be 1 or 2")


def conformal_metric(k: FieldExpr) -> Metric:
    """Diagonal metric with both entries exp(2 k(u))."""
    entry = F.exp_of(F.scale(k, 2.0))
    z = F.zero()
    return Metric(((entry, z), (z, entry)), conformal_k=k)


def metric_grid(h: Metric, grid=DEFAULT_GRID) -> np.ndarray:
    lo, hi, n = grid
    return np.linspace(lo, hi, int(n))


def validate_metric(h: Metric, grid=DEFAULT_GRID,
                    det_floor: float = 1e-12) -> None:
    """Check symmetry, realness and pointwise invertibility on the grid."""
    u = metric_grid(h, grid)
    vals = [[h.h[i][j](u) for j in range(2)] for i in range(2)]
    for i in range(2):
        for j in range(2):
            if np.max(np.abs(vals[i][j].imag)) > 1e-12:
                raise ValueError("metric components must be real-valued")
    if np.max(np.abs(vals[0][1] - vals[1][0])) > 1e-12:
        raise ValueError("metric must be symmetric")
    det = vals[0][0] * vals[1][1] - vals[0][1] * vals[1][0]
    if np.min(np.abs(det)) < det_floor:
        raise SingularMetricError(
            f"|det h| falls below {det_floor} on the sampled domain")


def metric_determinant(h: Metric) -> FieldExpr:
    m = h.h
    return F.add(F.mul(m[0][0], m[1][1]),
                 F.scale(F.mul(m[0][1], m[1][0]), -1))


def inverse_metric(h: Metric, grid=DEFAULT_GRID) -> tuple:
    """Pointwise 2x2 inverse via the adjugate over the determinant."""
    validate_metric(h, grid)
    det = metric_determinant(h)
    inv_det = F.reciprocal(det)
    m = h.h
    return ((F.mul(m[1][1], inv_det), F.scale(F.mul(m[0][1], inv_det), -1)),
            (F.scale(F.mul(m[1][0], inv_det), -1), F.mul(m[0][0], inv_det)))


def christoffel(h: Metric, grid=DEFAULT_GRID) -> Christoffel:
    """Connection coefficients from the Koszul formula,
    gamma^l_ij = (1/2) h^{lk} (d_i h_jk + d_j h_ki - d_k h_ij)."""
    hinv = inverse_metric(h, grid)
    m = h.h
    gamma = [[[None, None], [None, None]] for _ in range(2)]
    for l in range(2):
        for i in range(2):
            for j in range(2):
                terms = []
                for k in range(2):
                    bracket = F.add(
                        _partial(i + 1, m[j][k]),
                        _partial(j + 1, m[k][i]),
                        F.scale(_partial(k + 1, m[i][j]), -1))
                    terms.append(F.mul(hinv[l][k], bracket))
                gamma[l][i][j] = F.scale(F.add(*terms), 0.5)
    return Christoffel(tuple(tuple(tuple(row) for row in plane)
                             for plane in gamma))


def verify_pseudo_riemannian(h: Metric, G: Christoffel,
                             grid=DEFAULT_GRID) -> ComplianceReport:
    """Pointwise residuals of metric compatibility and torsion freeness."""
    u = metric_grid(h, grid)
    m = h.h
    gam = [[[G.gamma[l][i][j](u) for j in range(2)] for i in range(2)]
           for l in range(2)]
    hv = [[m[i][j](u) for j in range(2)] for i in range(2)]
    metric_res = 0.0
    for i in range(2):
        for j in range(2):
            for k in range(2):
                lhs = _partial(i + 1, m[j][k])(u)
                rhs = sum(gam[l][i][j] * hv[l][k] + hv[j][l] * gam[l][i][k]
                          for l in range(2))
                metric_res = max(metric_res,
                                 float(np.max(np.abs(lhs - rhs))))
    torsion_res = 0.0
    for l in range(2):
        for i in range(2):
            for j in range(2):
                torsion_res = max(torsion_res, float(np.max(np.abs(
                    gam[l][i][j] - gam[l][j][i]))))
    return ComplianceReport(metric_res, torsion_res)


def curvature_tensor(h: Metric, G: Christoffel,
                     grid=DEFAULT_GRID) -> CurvatureReport:
    """Curvature of the connection and the Gaussian curvature
    K = (1/2) h^{ij} R_{ikjl} h^{kl}."""
    hinv = inverse_metric(h, grid)
    m = h.h

    def riem_vec(c: int, d: int, b: int) -> list[FieldExpr]:
        """Coefficients of R(d_c, d_d) e_b in the basis (e_1, e_2)."""
        comps = []
        for a in range(2):
            terms = [
                _partial(c + 1, G.gamma[a][d][b]),
                F.scale(_partial(d + 1, G.gamma[a][c][b]), -1),
            ]
            for l in range(2):
                terms.append(F.mul(G.gamma[a][c][l], G.gamma[l][d][b]))
                terms.append(F.scale(F.mul(G.gamma[a][d][l],
                                           G.gamma[l][c][b]), -1))
            comps.append(F.add(*terms))
        return comps

    def rm(a: int, b: int, c: int, d: int) -> FieldExpr:
        """R_{abcd} = h(e_a, R(d_c, d_d) e_b)."""
        vec = riem_vec(c, d, b)
        return F.add(*[F.mul(m[a][l], vec[l]) for l in range(2)])

    r1212 = rm(0, 1, 0, 1)
    terms = []
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    terms.append(F.mul(hinv[i][j],
                                       F.mul(rm(i, k, j, l), hinv[k][l])))
    gaussian = F.scale(F.add(*terms), 0.5)
    return CurvatureReport(r1212, gaussian)


def _stabilised_slope(kprime: FieldExpr, sign: float,
                      radii=(10.0, 20.0, 40.0, 80.0, 160.0),
                      tol: float = 1e-8) -> tuple[complex, float]:
    """Value of k' at sign*infinity via doubling radii."""
    for r0, r1 in zip(radii[:-1], radii[1:]):
        v0 = kprime(sign * r0)
        v1 = kprime(sign * r1)
        if abs(v0 - v1) < tol:
            return v0, r0
    raise NonConvergentError(
        f"slope at {'+' if sign > 0 else '-'}infinity did not stabilise "
        f"over radii {radii}")


def total_curvature(h: Metric, rep: CurvatureReport,
                    cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> TotalCurvature:
    """Trace of the Gaussian curvature against the conformal volume weight.

    The integrand collapses to minus the second derivative of the
    conformal exponent; quadrature over a stabilised window is returned
    together with the boundary-slope closed form for cross-checking.
    """
    if h.conformal_k is None:
        raise ValueError("total curvature needs a conformal metric")
    k = h.conformal_k
    kp = k.derivative()
    slope_neg, r_neg = _stabilised_slope(kp, -1.0)
    slope_pos, r_pos = _stabilised_slope(kp, +1.0)
    radius = max(r_neg, r_pos)
    integrand = F.scale(kp.derivative(), -1)
    value = integrate_callable(integrand, -radius, radius, cfg,
                               integrand.breakpoints())
    slope_form = kp(-radius) - kp(radius)
    return TotalCurvature(value, slope_form, radius)


@dataclass(frozen=True)
class PerturbationResult:
    base: complex
    perturbed: complex
    slope_limits_equal: bool

    @property
    def difference(self) -> float:
        return abs(self.base - self.perturbed)


def perturbation_invariance(k: FieldExpr, delta: FieldExpr,
                            cfg: QuadratureConfig = DEFAULT_QUADRATURE
                            ) -> PerturbationResult:
    """Total curvature before and after perturbing the conformal exponent.

    The two values agree whenever the perturbation's slope has equal
    limits at plus and minus infinity; the check is reported but the
    computation proceeds either way so violations can be inspected.
    """
    dp = delta.derivative()
    try:
        lim_neg, _ = _stabilised_slope(dp, -1.0)
        lim_pos, _ = _stabilised_slope(dp, +1.0)
        equal = abs(lim_neg - lim_pos) < 1e-8
    except NonConvergentError:
        equal = False
    base_metric = conformal_metric(k)
    pert_metric = conformal_metric(F.add(k, delta))
    base = total_curvature(base_metric,
                           curvature_tensor(base_metric, christoffel(base_metric)),
                           cfg)
    pert = total_curvature(pert_metric,
                           curvature_tensor(pert_metric, christoffel(pert_metric)),
                           cfg)
    return PerturbationResult(base.quadrature, pert.quadrature, equal)
