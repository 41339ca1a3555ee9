"""The smooth noncommutative-cylinder algebra and its extension.

Elements are finite sums of circle modes with smooth coefficient
functions of the real variable; the product twists each factor on the
right by a shift proportional to the mode of the factor on the left.
The module provides the involution, the two commuting derivations, the
trace, the cyclic two-cocycle used for integer pairings, and a semantic
distance between elements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import fields as F
from .errors import HbarMismatchError, NotIntegrableError, NotTraceClassError
from .fields import FieldExpr
from .quadrature import (DEFAULT_QUADRATURE, QuadratureConfig, field_distance,
                         integrate)

TWO_PI_I = 2j * math.pi

SCHWARTZ = "schwartz-like"
EXTENDED = "extended"


@dataclass(frozen=True)
class CylinderElement:
    """Finite sum of modes n with coefficient functions of u.

    Immutable; all operations are pure, so elements can be shared freely
    between threads.
    """

    hbar: float
    coeffs: tuple[tuple[int, FieldExpr], ...]
    decay_class: str = SCHWARTZ

    def __post_init__(self):
        if self.hbar <= 0:
            raise ValueError("deformation parameter must be positive")
        if self.decay_class not in (SCHWARTZ, EXTENDED):
            raise ValueError(f"unknown decay class {self.decay_class!r}")

    @property
    def modes(self) -> tuple[int, ...]:
        return tuple(n for n, _ in self.coeffs)

    def coeff(self, n: int) -> FieldExpr:
        for m, expr in self.coeffs:
            if m == n:
                return expr
        return F.zero()

    def is_zero_structurally(self) -> bool:
        return not self.coeffs


def element(hbar: float, coeffs: dict[int, FieldExpr],
            decay_class: str | None = None) -> CylinderElement:
    """Build an element from a mode -> coefficient mapping.

    The decay class is derived from the coefficients' declared supports
    unless given explicitly.
    """
    items = []
    for n in sorted(coeffs):
        expr = coeffs[n]
        if isinstance(expr, F.Const) and expr.value == 0:
            continue
        if expr.support.is_empty:
            continue
        items.append((int(n), expr))
    if decay_class is None:
        schwartz = all(expr.support.is_integrable for _, expr in items)
        decay_class = SCHWARTZ if schwartz else EXTENDED
    return CylinderElement(float(hbar), tuple(items), decay_class)


def zero_element(hbar: float) -> CylinderElement:
    return CylinderElement(float(hbar), ())


def from_mode(hbar: float, n: int, expr: FieldExpr) -> CylinderElement:
    return element(hbar, {n: expr})


def _join_class(f: CylinderElement, g: CylinderElement) -> str:
    return EXTENDED if EXTENDED in (f.decay_class, g.decay_class) else SCHWARTZ


def _check_hbar(f: CylinderElement, g: CylinderElement):
    if f.hbar != g.hbar:
        raise HbarMismatchError(
            f"cannot combine elements with hbar={f.hbar} and hbar={g.hbar}")


def add(f: CylinderElement, g: CylinderElement) -> CylinderElement:
    _check_hbar(f, g)
    out: dict[int, list[FieldExpr]] = {}
    for n, expr in (*f.coeffs, *g.coeffs):
        out.setdefault(n, []).append(expr)
    merged = {n: F.add(*exprs) for n, exprs in out.items()}
    return element(f.hbar, merged, _join_class(f, g))


def scale(f: CylinderElement, c: complex) -> CylinderElement:
    return element(f.hbar, {n: F.scale(expr, c) for n, expr in f.coeffs},
                   f.decay_class)


def subtract(f: CylinderElement, g: CylinderElement) -> CylinderElement:
    return add(f, scale(g, -1))


def multiply(f: CylinderElement, g: CylinderElement) -> CylinderElement:
    """Twisted product: mode-k factors shift everything to their right by
    k times the deformation parameter."""
    _check_hbar(f, g)
    hbar = f.hbar
    out: dict[int, list[FieldExpr]] = {}
    for k, fk in f.coeffs:
        for m, gm in g.coeffs:
            n = k + m
            term = F.mul(fk, F.shift(gm, k * hbar))
            if term.support.is_empty:
                continue
            out.setdefault(n, []).append(term)
    merged = {n: F.add(*terms) for n, terms in out.items()}
    return element(hbar, merged, _join_class(f, g))


def star(f: CylinderElement) -> CylinderElement:
    """Involution: mode n picks up the conjugated mode -n shifted by n*hbar."""
    out = {}
    for m, expr in f.coeffs:
        n = -m
        out[n] = F.conj(F.shift(expr, n * f.hbar))
    return element(f.hbar, out, f.decay_class)


def d1(f: CylinderElement) -> CylinderElement:
    """Derivation in the real variable (coefficient-wise derivative)."""
    return element(f.hbar, {n: expr.derivative() for n, expr in f.coeffs},
                   f.decay_class)


def d2(f: CylinderElement) -> CylinderElement:
    """Derivation in the circle direction: mode n scales by 2*pi*i*n."""
    return element(f.hbar,
                   {n: F.scale(expr, TWO_PI_I * n) for n, expr in f.coeffs},
                   f.decay_class)


def commutator_with_u(f: CylinderElement) -> CylinderElement:
    """f*u - u*f, computed mode-wise: mode n scales by n*hbar."""
    return element(f.hbar,
                   {n: F.scale(expr, n * f.hbar) for n, expr in f.coeffs},
                   f.decay_class)


def multiply_by_u(f: CylinderElement) -> CylinderElement:
    """The product f*u (u acting from the right): mode n gains (u + n*hbar)."""
    return element(f.hbar,
                   {n: F.mul(expr, F.linear(1.0, n * f.hbar))
                    for n, expr in f.coeffs},
                   f.decay_class)


def trace(f: CylinderElement,
          cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> complex:
    """Integral of the zero-mode coefficient over the real line."""
    try:
        return integrate(f.coeff(0), cfg)
    except NotIntegrableError as exc:
        raise NotTraceClassError(str(exc)) from exc


def cocycle_psi(f0: CylinderElement, f1: CylinderElement, f2: CylinderElement,
                cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> complex:
    """Cyclic two-cocycle pairing the trace with antisymmetrised derivatives."""
    _check_hbar(f0, f1)
    _check_hbar(f0, f2)
    a = multiply(f0, multiply(d1(f1), d2(f2)))
    b = multiply(f0, multiply(d2(f1), d1(f2)))
    return trace(subtract(a, b), cfg) / TWO_PI_I


def distance(f: CylinderElement, g: CylinderElement,
             cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Sum over modes of L1 plus sampled-sup coefficient distances."""
    _check_hbar(f, g)
    total = 0.0
    for n in sorted(set(f.modes) | set(g.modes)):
        total += field_distance(f.coeff(n), g.coeff(n), cfg)
    return total


# ---------------------------------------------------------------------------
# serialisation


def element_to_dict(f: CylinderElement) -> dict:
    from .grammar import to_text
    return {
        "hbar": f.hbar,
        "modes": [{"n": n, "expr": to_text(expr)} for n, expr in f.coeffs],
        "decay_class": f.decay_class,
    }


def element_from_dict(doc: dict) -> CylinderElement:
    from .grammar import parse_expr
    coeffs = {int(m["n"]): parse_expr(m["expr"]) for m in doc["modes"]}
    return element(float(doc["hbar"]), coeffs,
                   doc.get("decay_class"))
