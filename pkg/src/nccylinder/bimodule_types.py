"""Sections of the discrete-by-continuous function space and the parameter
tuples that define the module actions on them."""

from __future__ import annotations

from dataclasses import dataclass

from . import fields as F
from .errors import DegenerateParamsError
from .fields import FieldExpr

_CONSTRAINT_TOL = 1e-12


@dataclass(frozen=True)
class Section:
    """Finite association slot k -> coefficient function of x."""

    slots: tuple[tuple[int, FieldExpr], ...]

    @property
    def ks(self) -> tuple[int, ...]:
        return tuple(k for k, _ in self.slots)

    def slot(self, k: int) -> FieldExpr:
        for j, expr in self.slots:
            if j == k:
                return expr
        return F.zero()


def section(slots: dict[int, FieldExpr]) -> Section:
    items = []
    for k in sorted(slots):
        expr = slots[k]
        if isinstance(expr, F.Const) and expr.value == 0:
            continue
        if expr.support.is_empty:
            continue
        items.append((int(k), expr))
    return Section(tuple(items))


def zero_section() -> Section:
    return Section(())


def _close(value: float, target: float) -> bool:
    scale = max(1.0, abs(value), abs(target))
    return abs(value - target) <= _CONSTRAINT_TOL * scale


@dataclass(frozen=True)
class LeftParams:
    """Parameters of the left action; must satisfy
    lambda0*eps + lambda1*r = -hbar."""

    lambda0: float
    lambda1: float
    eps: float
    r: int
    hbar: float

    def __post_init__(self):
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")
        if not _close(self.lambda0 * self.eps + self.lambda1 * self.r,
                      -self.hbar):
            raise DegenerateParamsError(
                "left parameters violate lambda0*eps + lambda1*r = -hbar")

    @staticmethod
    def from_constraint(lambda0: float, lambda1: float, r: int,
                        hbar: float) -> "LeftParams":
        """Solve the constraint for eps (lambda0 must be nonzero)."""
        if lambda0 == 0:
            raise ValueError("lambda0 must be nonzero to solve for eps")
        eps = -(hbar + lambda1 * r) / lambda0
        return LeftParams(lambda0, lambda1, eps, r, hbar)


@dataclass(frozen=True)
class RightParams:
    """Parameters of the right action; must satisfy
    mu0*eps' + mu1*r' = hbar'."""

    mu0: float
    mu1: float
    eps_p: float
    r_p: int
    hbar_p: float

    def __post_init__(self):
        if self.hbar_p <= 0:
            raise ValueError("hbar' must be positive")
        if not _close(self.mu0 * self.eps_p + self.mu1 * self.r_p,
                      self.hbar_p):
            raise DegenerateParamsError(
                "right parameters violate mu0*eps' + mu1*r' = hbar'")


@dataclass(frozen=True)
class BimoduleParams:
    """Compatible left and right parameters: the cross constraints
    lambda0*eps' + lambda1*r' = 0 and mu0*eps + mu1*r = 0 must hold."""

    left: LeftParams
    right: RightParams

    def __post_init__(self):
        lt, rt = self.left, self.right
        if not _close(lt.lambda0 * rt.eps_p + lt.lambda1 * rt.r_p, 0.0):
            raise DegenerateParamsError(
                "bimodule parameters violate lambda0*eps' + lambda1*r' = 0")
        if not _close(rt.mu0 * lt.eps + rt.mu1 * lt.r, 0.0):
            raise DegenerateParamsError(
                "bimodule parameters violate mu0*eps + mu1*r = 0")

    def constraint_residuals(self) -> dict[str, float]:
        lt, rt = self.left, self.right
        return {
            "left": abs(lt.lambda0 * lt.eps + lt.lambda1 * lt.r + lt.hbar),
            "right": abs(rt.mu0 * rt.eps_p + rt.mu1 * rt.r_p - rt.hbar_p),
            "cross_left": abs(lt.lambda0 * rt.eps_p + lt.lambda1 * rt.r_p),
            "cross_right": abs(rt.mu0 * lt.eps + rt.mu1 * lt.r),
        }


def default_bimodule_params(hbar: float, hbar_p: float,
                            eps: float, eps_p: float,
                            r: int, r_p: int) -> BimoduleParams:
    """The standard solution of the four constraints for arbitrary
    deformation parameters, valid when eps*r' != eps'*r."""
    denom = eps * r_p - eps_p * r
    if denom == 0:
        raise DegenerateParamsError(
            "eps*r' = eps'*r leaves the constraint system singular")
    lambda0 = -hbar * r_p / denom
    lambda1 = hbar * eps_p / denom
    mu0 = -hbar_p * r / denom
    mu1 = hbar_p * eps / denom
    return BimoduleParams(LeftParams(lambda0, lambda1, eps, r, hbar),
                          RightParams(mu0, mu1, eps_p, r_p, hbar_p))
