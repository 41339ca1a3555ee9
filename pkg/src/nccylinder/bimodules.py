"""Module actions on sections, sesquilinear forms, parameter isomorphisms,
and the algebra-valued hermitian structures.

Sections live on a discrete-by-continuous space; the left action composes
the coefficients with an affine argument while translating the slots, the
right action mirrors it with its own parameter tuple and an extra
mode-dependent shift.
"""

from __future__ import annotations

import math

from . import algebra as A
from . import fields as F
from .algebra import CylinderElement
from .bimodule_types import (BimoduleParams, LeftParams, RightParams, Section,
                             section, zero_section)
from .errors import HbarMismatchError
from .fields import FieldExpr
from .quadrature import (DEFAULT_QUADRATURE, QuadratureConfig, field_distance,
                         integrate)


def left_act(f: CylinderElement, xi: Section, p: LeftParams) -> Section:
    """(f xi)(x, k) = sum_n f_n(lambda0 x + lambda1 k) xi(x - n eps, k - n r)."""
    if f.hbar != p.hbar:
        raise HbarMismatchError(
            f"element has hbar={f.hbar}, left parameters expect {p.hbar}")
    out: dict[int, list[FieldExpr]] = {}
    for n, fn in f.coeffs:
        for k_src, slot in xi.slots:
            k = k_src + n * p.r
            factor = F.precompose_affine(fn, p.lambda0, p.lambda1 * k)
            shifted = F.shift(slot, -n * p.eps)
            term = F.mul(factor, shifted)
            if term.support.is_empty:
                continue
            out.setdefault(k, []).append(term)
    return section({k: F.add(*terms) for k, terms in out.items()})


def right_act(xi: Section, f: CylinderElement, p: RightParams) -> Section:
    """(xi f)(x, k) = sum_n f_n(mu0 x + mu1 k - n hbar') xi(x - n eps', k - n r')."""
    if f.hbar != p.hbar_p:
        raise HbarMismatchError(
            f"element has hbar={f.hbar}, right parameters expect {p.hbar_p}")
    out: dict[int, list[FieldExpr]] = {}
    for n, fn in f.coeffs:
        for k_src, slot in xi.slots:
            k = k_src + n * p.r_p
            factor = F.precompose_affine(fn, p.mu0,
                                         p.mu1 * k - n * p.hbar_p)
            shifted = F.shift(slot, -n * p.eps_p)
            term = F.mul(factor, shifted)
            if term.support.is_empty:
                continue
            out.setdefault(k, []).append(term)
    return section({k: F.add(*terms) for k, terms in out.items()})


def inner_left(xi: Section, eta: Section,
               cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> complex:
    """Slot-wise integral of xi conj(eta)."""
    total = 0j
    for k in sorted(set(xi.ks) | set(eta.ks)):
        term = F.mul(xi.slot(k), F.conj(eta.slot(k)))
        if term.support.is_empty:
            continue
        total += integrate(term, cfg)
    return total


def inner_right(xi: Section, eta: Section,
                cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> complex:
    """Slot-wise integral of conj(xi) eta; the conjugate of inner_left."""
    total = 0j
    for k in sorted(set(xi.ks) | set(eta.ks)):
        term = F.mul(F.conj(xi.slot(k)), eta.slot(k))
        if term.support.is_empty:
            continue
        total += integrate(term, cfg)
    return total


def param_iso(xi: Section, tau: float) -> Section:
    """Rescale the continuous variable: the module isomorphism between
    0-compatible parameter tuples."""
    if tau == 0:
        raise ValueError("tau must be nonzero")
    return section({k: F.precompose_affine(expr, float(tau), 0.0)
                    for k, expr in xi.slots})


def section_distance(a: Section, b: Section,
                     cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    total = 0.0
    for k in sorted(set(a.ks) | set(b.ks)):
        total += field_distance(a.slot(k), b.slot(k), cfg)
    return total


# ---------------------------------------------------------------------------
# isomorphism with r copies of the algebra


def section_from_elements(elems: list[CylinderElement],
                          p: LeftParams) -> Section:
    """Map an r-tuple of algebra elements to a section: slot n*r + j reads
    component j's mode-n coefficient through the affine argument."""
    r = p.r
    if r < 1:
        raise ValueError("the isomorphism needs r >= 1")
    if len(elems) != r:
        raise ValueError(f"expected {r} components, got {len(elems)}")
    if p.lambda0 == 0:
        raise ValueError("lambda0 must be nonzero")
    out: dict[int, FieldExpr] = {}
    for j, comp in enumerate(elems):
        for n, expr in comp.coeffs:
            k = n * r + j
            out[k] = F.precompose_affine(expr, p.lambda0, p.lambda1 * k)
    return section(out)


def elements_from_section(xi: Section, p: LeftParams,
                          hbar: float) -> list[CylinderElement]:
    """Inverse of section_from_elements: component j collects the slots
    congruent to j mod r, undoing the affine argument."""
    r = p.r
    if r < 1:
        raise ValueError("the isomorphism needs r >= 1")
    if p.lambda0 == 0:
        raise ValueError("lambda0 must be nonzero")
    comps: list[dict[int, FieldExpr]] = [dict() for _ in range(r)]
    for k, expr in xi.slots:
        n, j = divmod(k, r)
        comps[j][n] = F.precompose_affine(
            expr, 1.0 / p.lambda0, -p.lambda1 * k / p.lambda0)
    return [A.element(hbar, c) for c in comps]


# ---------------------------------------------------------------------------
# algebra-valued hermitian structures


def herm_left(xi: Section, eta: Section, p: BimoduleParams) -> CylinderElement:
    """Left-algebra-valued form: the formal oscillatory integral collapses
    to a point evaluation with the 1/|lambda0| Jacobian factor."""
    lt = p.left
    if lt.lambda0 == 0:
        raise ValueError("lambda0 must be nonzero")
    jac = 1.0 / abs(lt.lambda0)
    out: dict[int, list[FieldExpr]] = {}
    n_span = _mode_span(xi, eta, lt.r)
    for n in n_span:
        terms = []
        for k, slot in xi.slots:
            other = eta.slot(k - n * lt.r)
            if isinstance(other, F.Const) and other.value == 0:
                continue
            a = F.precompose_affine(slot, 1.0 / lt.lambda0,
                                    -lt.lambda1 * k / lt.lambda0)
            b = F.precompose_affine(other, 1.0 / lt.lambda0,
                                    -lt.lambda1 * k / lt.lambda0 - n * lt.eps)
            terms.append(F.mul(a, F.conj(b)))
        if terms:
            expr = F.scale(F.add(*terms), jac)
            if not expr.support.is_empty:
                out.setdefault(n, []).append(expr)
    return A.element(lt.hbar, {n: F.add(*t) for n, t in out.items()})


def herm_right(xi: Section, eta: Section, p: BimoduleParams) -> CylinderElement:
    """Right-algebra-valued form.

    The point evaluations mirror the left form with the right parameters,
    but the scalar prefactor is the same 1/|lambda0| as on the left: the
    compatibility axiom <xi,eta>_L psi = xi <eta,psi>_R fixes the relative
    normalisation of the two forms, and matching terms pairwise leaves no
    freedom.  (The two Jacobians agree exactly when hbar'|r| = hbar|r'|.)
    """
    rt = p.right
    if rt.mu0 == 0:
        raise ValueError("mu0 must be nonzero")
    if p.left.lambda0 == 0:
        raise ValueError("lambda0 must be nonzero")
    jac = 1.0 / abs(p.left.lambda0)
    out: dict[int, list[FieldExpr]] = {}
    n_span = _mode_span(eta, xi, rt.r_p)
    for n in n_span:
        terms = []
        for k, slot in eta.slots:
            other = xi.slot(k - n * rt.r_p)
            if isinstance(other, F.Const) and other.value == 0:
                continue
            # argument (u - mu1 k + n hbar') / mu0
            a = F.precompose_affine(slot, 1.0 / rt.mu0,
                                    (-rt.mu1 * k + n * rt.hbar_p) / rt.mu0)
            b = F.precompose_affine(
                other, 1.0 / rt.mu0,
                (-rt.mu1 * k + n * rt.hbar_p) / rt.mu0 - n * rt.eps_p)
            terms.append(F.mul(F.conj(b), a))
        if terms:
            expr = F.scale(F.add(*terms), jac)
            if not expr.support.is_empty:
                out.setdefault(n, []).append(expr)
    return A.element(rt.hbar_p, {n: F.add(*t) for n, t in out.items()})


def _mode_span(xi: Section, eta: Section, r: int) -> range:
    if not xi.slots or not eta.slots or r == 0:
        return range(0)
    lo = min(xi.ks) - max(eta.ks)
    hi = max(xi.ks) - min(eta.ks)
    if r > 0:
        return range(math.floor(lo / r), math.ceil(hi / r) + 1)
    return range(math.floor(hi / r), math.ceil(lo / r) + 1)
