"""The explicit projection family in the cylinder algebra.

Each projection is built from a pair of real bumps: a plateau function
rising smoothly from 0 to 1 and back to 0 over two fundamental intervals,
and the square-root bump that makes the three-mode combination
self-adjoint and idempotent.  Traces are integer multiples of the
deformation parameter and the pairing with the cyclic two-cocycle is the
integer labelling the family member.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import algebra as A
from . import fields as F
from .algebra import CylinderElement
from .fields import FieldExpr
from .quadrature import DEFAULT_QUADRATURE, QuadratureConfig


@dataclass(frozen=True)
class BumpPair:
    """The plateau f (supported on [0, 2*hbar]) and the square-root bump g
    (supported on [hbar, 2*hbar]) that satisfy the projector conditions."""

    hbar: float
    f: FieldExpr
    g: FieldExpr


@dataclass(frozen=True)
class ProjectionFamilyElement:
    """Member n of the projection family: a three-mode element."""

    n: int
    element: CylinderElement

    @property
    def hbar(self) -> float:
        return self.element.hbar


def build_bump_pair(hbar: float,
                    transition: Callable[[FieldExpr], FieldExpr] | None = None
                    ) -> BumpPair:
    """Construct the bump pair for a given deformation parameter.

    ``transition`` maps an expression s to a smooth step in s (0 below 0,
    1 above 1); the default is the built-in C-infinity step.  Any valid
    transition yields the same trace and cocycle pairing.
    """
    if hbar <= 0:
        raise ValueError("hbar must be positive")
    step = transition if transition is not None else F.step01
    rise = step(F.linear(1.0 / hbar, 0.0))              # f0(u/hbar)
    fall = F.add(F.one(), F.scale(step(F.linear(1.0 / hbar, -1.0)), -1))
    f = F.piecewise((0.0, hbar, 2.0 * hbar),
                    (F.zero(), rise, fall, F.zero()))
    radicand = F.add(f, F.scale(F.int_power(f, 2), -1))  # f - f^2
    g = F.windowed(F.sqrt_nonneg(radicand), hbar, 2.0 * hbar)
    return BumpPair(float(hbar), f, g)


def smoothstep_reparam(s: FieldExpr) -> FieldExpr:
    """Alternate transition: the C-infinity step composed with the cubic
    reparametrisation s^2 (3 - 2 s) of the unit interval."""
    cubic = F.add(F.scale(F.int_power(s, 2), 3.0),
                  F.scale(F.int_power(s, 3), -2.0))
    return F.step01(cubic)


def build_fn_gn(pair: BumpPair, n: int) -> tuple[FieldExpr, FieldExpr]:
    """n translated copies of the bumps, supported on [0, 2*n*hbar] and
    [hbar, 2*n*hbar] and periodic with period 2*hbar there."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    step = 2.0 * pair.hbar
    fn = F.add(*[F.shift(pair.f, -k * step) for k in range(n)])
    gn = F.add(*[F.shift(pair.g, -k * step) for k in range(n)])
    return fn, gn


def build_pn(pair: BumpPair, n: int) -> ProjectionFamilyElement:
    """The family member n: modes (+1, 0, -1) carry (g_n shifted, f_n, g_n)."""
    fn, gn = build_fn_gn(pair, n)
    elem = A.element(pair.hbar, {
        1: F.shift(gn, pair.hbar),
        0: fn,
        -1: gn,
    })
    return ProjectionFamilyElement(n, elem)


def trace_pn(p: ProjectionFamilyElement,
             cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> complex:
    return A.trace(p.element, cfg)


def chern_number(p: ProjectionFamilyElement,
                 cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> complex:
    return A.cocycle_psi(p.element, p.element, p.element, cfg)


def shifted_projection(p_m: ProjectionFamilyElement, n: int) -> CylinderElement:
    """Conjugate the family member by the 2n-th power of the circle
    generator: every coefficient is translated out beyond [0, 2*n*hbar]."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    offset = -2.0 * n * p_m.hbar
    coeffs = {m: F.shift(expr, offset) for m, expr in p_m.element.coeffs}
    return A.element(p_m.hbar, coeffs)


def idempotence_residual(p: ProjectionFamilyElement,
                         cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    return A.distance(A.multiply(p.element, p.element), p.element, cfg)


def selfadjoint_residual(p: ProjectionFamilyElement,
                         cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    return A.distance(A.star(p.element), p.element, cfg)


def projector_condition_residuals(pair: BumpPair, n: int = 1,
                                  grid_points: int = 10000) -> dict[str, float]:
    """Max residuals of the three pointwise conditions equivalent to
    idempotence, sampled on a dense grid."""
    hbar = pair.hbar
    fn, gn = build_fn_gn(pair, n)
    u = np.linspace(-hbar, 2.0 * n * hbar + hbar, grid_points)
    fv = fn(u).real
    gv = gn(u).real
    g_up = gn(u + hbar).real
    f_dn = fn(u - hbar).real
    r1 = np.max(np.abs(gv * g_up))
    r2 = np.max(np.abs(gv * (1.0 - fv - f_dn)))
    r3 = np.max(np.abs(gv ** 2 + g_up ** 2 - (fv - fv ** 2)))
    return {"orthogonal_shifts": float(r1),
            "plateau_overlap": float(r2),
            "square_sum": float(r3)}
