"""Constant-curvature connections on the section bimodules.

The two covariant derivatives are a scaled x-derivative and multiplication
by an affine function of slot and position.  Their commutator is the
scalar alpha*beta; for a bimodule connection that scalar is forced to
2*pi*i*(hbar - hbar')/(hbar*hbar') and exists only when hbar/hbar' = r/r'.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import algebra as A
from . import bimodules as B
from . import fields as F
from .algebra import CylinderElement
from .bimodule_types import (BimoduleParams, LeftParams, RightParams, Section,
                             section)
from .errors import DegenerateParamsError, RatioNotRationalError
from .quadrature import DEFAULT_QUADRATURE, QuadratureConfig
from .sampling import random_element, random_section, rng_from_seed

TWO_PI_I = 2j * math.pi


@dataclass(frozen=True)
class ConnParams:
    """Coefficients of the two covariant derivatives."""

    alpha: complex
    beta: complex
    gamma: complex


@dataclass(frozen=True)
class ConnectionSolution:
    """A bimodule connection together with the parameters it lives on."""

    params: BimoduleParams
    conn: ConnParams
    curvature: complex
    case: str  # "equal" | "rational"


@dataclass(frozen=True)
class LeibnizReport:
    residual_x: float
    residual_mode: float
    trials: int

    @property
    def max_residual(self) -> float:
        return max(self.residual_x, self.residual_mode)


def nabla1(xi: Section, c: ConnParams) -> Section:
    """alpha times the slot-wise x-derivative."""
    return section({k: F.scale(expr.derivative(), c.alpha)
                    for k, expr in xi.slots})


def nabla2(xi: Section, c: ConnParams) -> Section:
    """Multiplication by beta*x + gamma*k on slot k."""
    out = {}
    for k, expr in xi.slots:
        mult = F.add(F.scale(F.Identity(), c.beta),
                     F.constant(c.gamma * k))
        out[k] = F.mul(mult, expr)
    return section(out)


def curvature_commutator(xi: Section, c: ConnParams) -> Section:
    """(nabla1 nabla2 - nabla2 nabla1) applied to a section."""
    a = nabla1(nabla2(xi, c), c)
    b = nabla2(nabla1(xi, c), c)
    out = {}
    for k in sorted(set(a.ks) | set(b.ks)):
        out[k] = F.add(a.slot(k), F.scale(b.slot(k), -1))
    return section(out)


def check_left_leibniz(c: ConnParams, p: LeftParams, trials: int = 20,
                       seed: int = 0,
                       cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> LeibnizReport:
    """Max residual of nabla_k(f xi) - f nabla_k(xi) - (d_k f) xi over
    random elements and sections; small iff alpha = 1/lambda0 and
    beta*eps + gamma*r = 2*pi*i."""
    rng = rng_from_seed(seed)
    worst_x = 0.0
    worst_mode = 0.0
    for _ in range(trials):
        f = random_element(rng, p.hbar)
        xi = random_section(rng)
        fxi = B.left_act(f, xi, p)
        lhs1 = nabla1(fxi, c)
        rhs1 = _section_add(B.left_act(f, nabla1(xi, c), p),
                            B.left_act(A.d1(f), xi, p))
        worst_x = max(worst_x, B.section_distance(lhs1, rhs1, cfg))
        lhs2 = nabla2(fxi, c)
        rhs2 = _section_add(B.left_act(f, nabla2(xi, c), p),
                            B.left_act(A.d2(f), xi, p))
        worst_mode = max(worst_mode, B.section_distance(lhs2, rhs2, cfg))
    return LeibnizReport(worst_x, worst_mode, trials)


def check_right_leibniz(c: ConnParams, p: BimoduleParams, trials: int = 20,
                        seed: int = 0,
                        cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> LeibnizReport:
    """Right-module mirror of check_left_leibniz; small iff
    alpha = 1/mu0 and beta*eps' + gamma*r' = 2*pi*i."""
    rng = rng_from_seed(seed)
    rt = p.right
    worst_x = 0.0
    worst_mode = 0.0
    for _ in range(trials):
        f = random_element(rng, rt.hbar_p)
        xi = random_section(rng)
        xif = B.right_act(xi, f, rt)
        lhs1 = nabla1(xif, c)
        rhs1 = _section_add(B.right_act(nabla1(xi, c), f, rt),
                            B.right_act(xi, A.d1(f), rt))
        worst_x = max(worst_x, B.section_distance(lhs1, rhs1, cfg))
        lhs2 = nabla2(xif, c)
        rhs2 = _section_add(B.right_act(nabla2(xi, c), f, rt),
                            B.right_act(xi, A.d2(f), rt))
        worst_mode = max(worst_mode, B.section_distance(lhs2, rhs2, cfg))
    return LeibnizReport(worst_x, worst_mode, trials)


def _section_add(a: Section, b: Section) -> Section:
    out = {}
    for k in sorted(set(a.ks) | set(b.ks)):
        out[k] = F.add(a.slot(k), b.slot(k))
    return section(out)


def induced_derivation(f: CylinderElement, k: int, c: ConnParams,
                       p: BimoduleParams) -> CylinderElement:
    """The derivation induced on the right algebra by commuting with a
    covariant derivative: a scalar multiple of the natural derivation."""
    if k == 1:
        return A.scale(A.d1(f), c.alpha * p.right.mu0)
    if k == 2:
        factor = (c.beta * p.right.eps_p + c.gamma * p.right.r_p) / TWO_PI_I
        return A.scale(A.d2(f), factor)
    raise ValueError("k must be 1 or 2")


def solve_bimodule_connection(hbar: float, hbar_p: float,
                              lambda0: float, lambda1: float,
                              r: int, r_p: int) -> ConnectionSolution:
    """Full parameter set of a bimodule connection.

    Equal deformation parameters force beta = 0 (zero curvature) and need
    r = r' != 0; distinct ones require hbar/hbar' = r/r' exactly and give
    constant curvature 2*pi*i*(hbar - hbar')/(hbar*hbar').
    """
    if lambda0 == 0:
        raise DegenerateParamsError("lambda0 must be nonzero")
    if hbar <= 0 or hbar_p <= 0:
        raise DegenerateParamsError("deformation parameters must be positive")

    equal = hbar == hbar_p or abs(hbar - hbar_p) <= 1e-12 * max(hbar, hbar_p)
    if equal:
        if r != r_p or r == 0:
            raise DegenerateParamsError(
                "equal deformation parameters require r = r' != 0")
        eps = -(hbar + lambda1 * r) / lambda0
        eps_p = -lambda1 * r_p / lambda0
        mu1 = -lambda0 * eps / r
        left = LeftParams(lambda0, lambda1, eps, r, hbar)
        right = RightParams(lambda0, mu1, eps_p, r_p, hbar_p)
        conn = ConnParams(alpha=1.0 / lambda0, beta=0j, gamma=TWO_PI_I / r)
        return ConnectionSolution(BimoduleParams(left, right), conn, 0j,
                                  "equal")

    if abs(hbar * r_p - hbar_p * r) > 1e-10 * max(hbar, hbar_p):
        raise RatioNotRationalError(
            f"hbar/hbar' must equal r/r': {hbar}*{r_p} != {hbar_p}*{r}")
    if r == r_p or r == 0 or r_p == 0:
        raise DegenerateParamsError(
            "distinct deformation parameters require distinct nonzero r, r'")

    diff = (hbar - hbar_p) / (hbar * hbar_p)
    mu1 = (hbar_p - hbar) / (r_p - r) + lambda1
    eps = -(hbar + lambda1 * r) / lambda0
    eps_p = -lambda1 * r_p / lambda0
    beta = TWO_PI_I * lambda0 * diff
    gamma = TWO_PI_I / r_p + TWO_PI_I * lambda1 * diff
    alpha = 1.0 / lambda0
    left = LeftParams(lambda0, lambda1, eps, r, hbar)
    right = RightParams(lambda0, mu1, eps_p, r_p, hbar_p)
    conn = ConnParams(alpha, beta, gamma)
    return ConnectionSolution(BimoduleParams(left, right), conn,
                              alpha * beta, "rational")


def constant_curvature_connection(p: LeftParams, R: complex) -> ConnParams:
    """A left connection whose curvature is exactly R."""
    if p.lambda0 == 0:
        raise DegenerateParamsError("lambda0 must be nonzero")
    if p.r == 0:
        raise DegenerateParamsError("r must be nonzero to solve for gamma")
    alpha = 1.0 / p.lambda0
    beta = p.lambda0 * complex(R)
    gamma = (TWO_PI_I - p.lambda0 * p.eps * complex(R)) / p.r
    return ConnParams(alpha, beta, gamma)


def induced_algebra_connection(f: CylinderElement, c: ConnParams,
                               p: LeftParams) -> tuple[CylinderElement,
                                                       CylinderElement]:
    """Pull the connection back to the algebra through the r = 1 module
    isomorphism: the x-direction gives the plain derivative, the mode
    direction gains the curvature times multiplication by the variable."""
    if p.r != 1:
        raise ValueError("the algebra identification needs r = 1")
    if p.lambda0 == 0:
        raise ValueError("lambda0 must be nonzero")
    ab = c.alpha * c.beta
    first = A.d1(f)
    second = A.add(A.d2(f), A.scale(A.multiply_by_u(f), ab))
    return first, second


def measured_curvature(c: ConnParams, xi: Section,
                       rel_floor: float = 0.1) -> complex:
    """Ratio of the curvature commutator to the section at well-supported
    sample points; constant for these connections."""
    comm = curvature_commutator(xi, c)
    vals = []
    for k, expr in xi.slots:
        grid = np.linspace(*expr.support.bounds(), 41)
        denom = expr(grid)
        num = comm.slot(k)(grid)
        mag = np.abs(denom)
        keep = mag > rel_floor * mag.max()
        vals.extend((num[keep] / denom[keep]).tolist())
    if not vals:
        raise ValueError("section has no well-supported sample points")
    return complex(np.mean(vals))
