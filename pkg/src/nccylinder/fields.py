"""Expression trees for smooth complex-valued functions of one real variable.

Every function is an immutable tree of nodes that knows how to

* evaluate itself (scalar or numpy-vectorised),
* differentiate itself exactly (structural recursion, no finite differences),
* report a declared support: an exact compact window, a rapid-decay radius,
  or no claim ("unbounded"),
* list the breakpoints where adaptive quadrature should split first.

Values are binary64 throughout; there is no general-purpose simplifier,
only the cheap normalisations (constant folding, flattening of sums and
products, collapsing of nested affine reparametrisations) that keep trees
small under repeated algebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import NonSmoothPointError

Number = Union[int, float, complex]

# exp(-t) underflows to exactly 0.0 for t above this; used to short-circuit
# the flat tails of the transition kernels.
_UNDERFLOW_T = 745.0

# |numerator| tolerated at a point where the radicand of a square root
# vanishes: the 0/0 -> 0 rule for infinitely flat support edges.
_SQRT_EDGE_TOL = 1e-12


# ---------------------------------------------------------------------------
# declared support


@dataclass(frozen=True)
class Support:
    """Declared support of a function.

    kind is one of:
      "empty"     -- identically zero,
      "compact"   -- exactly zero outside [lo, hi],
      "decay"     -- numerically negligible beyond |u| > radius,
      "unbounded" -- no claim.
    """

    kind: str
    lo: float = 0.0
    hi: float = 0.0
    radius: float = 0.0

    @staticmethod
    def empty() -> "Support":
        return Support("empty")

    @staticmethod
    def compact(lo: float, hi: float) -> "Support":
        if hi < lo:
            return Support.empty()
        return Support("compact", lo=float(lo), hi=float(hi))

    @staticmethod
    def decay(radius: float) -> "Support":
        return Support("decay", radius=float(max(radius, 0.0)))

    @staticmethod
    def unbounded() -> "Support":
        return Support("unbounded")

    @property
    def is_empty(self) -> bool:
        return self.kind == "empty"

    @property
    def is_integrable(self) -> bool:
        return self.kind in ("empty", "compact", "decay")

    def union(self, other: "Support") -> "Support":
        a, b = self, other
        if a.is_empty:
            return b
        if b.is_empty:
            return a
        if a.kind == "unbounded" or b.kind == "unbounded":
            return Support.unbounded()
        if a.kind == "compact" and b.kind == "compact":
            return Support.compact(min(a.lo, b.lo), max(a.hi, b.hi))
        radius = 0.0
        for s in (a, b):
            if s.kind == "compact":
                radius = max(radius, abs(s.lo), abs(s.hi))
            else:
                radius = max(radius, s.radius)
        return Support.decay(radius)

    def intersect(self, other: "Support") -> "Support":
        a, b = self, other
        if a.is_empty or b.is_empty:
            return Support.empty()
        if a.kind == "unbounded":
            return b
        if b.kind == "unbounded":
            return a
        if a.kind == "compact" and b.kind == "compact":
            return Support.compact(max(a.lo, b.lo), min(a.hi, b.hi))
        if a.kind == "compact":
            return a
        if b.kind == "compact":
            return b
        return Support.decay(min(a.radius, b.radius))

    def precompose_affine(self, slope: float, offset: float) -> "Support":
        """Support of u -> f(slope*u + offset) given the support of f."""
        if self.is_empty:
            return self
        if slope == 0.0:
            return Support.unbounded()
        if self.kind == "compact":
            x0 = (self.lo - offset) / slope
            x1 = (self.hi - offset) / slope
            return Support.compact(min(x0, x1), max(x0, x1))
        if self.kind == "decay":
            return Support.decay((self.radius + abs(offset)) / abs(slope))
        return Support.unbounded()

    def bounds(self, fallback: float = 12.0) -> tuple[float, float]:
        """A finite window covering the (declared) mass of the function."""
        if self.kind == "compact":
            return (self.lo, self.hi)
        if self.kind == "decay":
            r = max(self.radius, 1.0)
            return (-r, r)
        if self.kind == "empty":
            return (0.0, 0.0)
        return (-fallback, fallback)


# ---------------------------------------------------------------------------
# node classes


class FieldExpr:
    """Base class for expression-tree nodes.

    Instances are immutable after construction; evaluation is pure, so
    sharing between threads is safe.
    """

    __slots__ = ()

    # -- evaluation ---------------------------------------------------------

    def _ev(self, u: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, u):
        if np.isscalar(u) or isinstance(u, (int, float)):
            arr = np.asarray([float(u)], dtype=float)
            with np.errstate(over="ignore", under="ignore", invalid="ignore"):
                return complex(self._ev(arr)[0])
        arr = np.asarray(u, dtype=float)
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            return self._ev(arr.ravel()).reshape(arr.shape)

    # -- structure ----------------------------------------------------------

    def derivative(self) -> "FieldExpr":
        raise NotImplementedError

    @property
    def support(self) -> Support:
        raise NotImplementedError

    def breakpoints(self) -> tuple[float, ...]:
        """Abscissae where quadrature should split first (kinks, branch edges)."""
        return ()

    # -- operator sugar -----------------------------------------------------

    def __add__(self, other):
        return add(self, _coerce(other))

    def __radd__(self, other):
        return add(_coerce(other), self)

    def __sub__(self, other):
        return add(self, scale(_coerce(other), -1))

    def __rsub__(self, other):
        return add(_coerce(other), scale(self, -1))

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return scale(self, other)
        return mul(self, other)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __neg__(self):
        return scale(self, -1)

    def __truediv__(self, other):
        if isinstance(other, (int, float, complex)):
            return scale(self, 1.0 / other)
        return NotImplemented


def _coerce(x) -> FieldExpr:
    if isinstance(x, FieldExpr):
        return x
    return Const(complex(x))


@dataclass(frozen=True)
class Const(FieldExpr):
    value: complex

    def _ev(self, u):
        return np.full(u.shape, complex(self.value), dtype=complex)

    def derivative(self):
        return Const(0j)

    @property
    def support(self):
        return Support.empty() if self.value == 0 else Support.unbounded()


@dataclass(frozen=True)
class Identity(FieldExpr):
    """The variable itself."""

    def _ev(self, u):
        return u.astype(complex)

    def derivative(self):
        return Const(1 + 0j)

    @property
    def support(self):
        return Support.unbounded()


@dataclass(frozen=True)
class Affine(FieldExpr):
    """child evaluated at slope*u + offset."""

    child: FieldExpr
    slope: float
    offset: float

    def _ev(self, u):
        return self.child._ev(self.slope * u + self.offset)

    def derivative(self):
        return scale(Affine(self.child.derivative(), self.slope, self.offset),
                     self.slope)

    @property
    def support(self):
        return self.child.support.precompose_affine(self.slope, self.offset)

    def breakpoints(self):
        if self.slope == 0.0:
            return ()
        return tuple(sorted((b - self.offset) / self.slope
                            for b in self.child.breakpoints()))


@dataclass(frozen=True)
class Sum(FieldExpr):
    children: tuple[FieldExpr, ...]

    def _ev(self, u):
        out = np.zeros(u.shape, dtype=complex)
        for c in self.children:
            out += c._ev(u)
        return out

    def derivative(self):
        return add(*[c.derivative() for c in self.children])

    @property
    def support(self):
        s = Support.empty()
        for c in self.children:
            s = s.union(c.support)
        return s

    def breakpoints(self):
        return _merge_breakpoints(self.children)


@dataclass(frozen=True)
class Product(FieldExpr):
    children: tuple[FieldExpr, ...]

    def _ev(self, u):
        out = self.children[0]._ev(u)
        for c in self.children[1:]:
            out = out * c._ev(u)
        return out

    def derivative(self):
        terms = []
        for i, c in enumerate(self.children):
            factors = list(self.children)
            factors[i] = c.derivative()
            terms.append(mul(*factors))
        return add(*terms)

    @property
    def support(self):
        s = Support.unbounded()
        for c in self.children:
            s = s.intersect(c.support)
        return s

    def breakpoints(self):
        return _merge_breakpoints(self.children)


@dataclass(frozen=True)
class Scale(FieldExpr):
    child: FieldExpr
    factor: complex

    def _ev(self, u):
        return complex(self.factor) * self.child._ev(u)

    def derivative(self):
        return scale(self.child.derivative(), self.factor)

    @property
    def support(self):
        if self.factor == 0:
            return Support.empty()
        return self.child.support

    def breakpoints(self):
        return self.child.breakpoints()


@dataclass(frozen=True)
class Conj(FieldExpr):
    child: FieldExpr

    def _ev(self, u):
        return np.conj(self.child._ev(u))

    def derivative(self):
        return conj(self.child.derivative())

    @property
    def support(self):
        return self.child.support

    def breakpoints(self):
        return self.child.breakpoints()


@dataclass(frozen=True)
class Exp(FieldExpr):
    child: FieldExpr
    _decay_radius: float = 0.0  # 0 means no decay claim

    def _ev(self, u):
        return np.exp(self.child._ev(u))

    def derivative(self):
        return mul(self, self.child.derivative())

    @property
    def support(self):
        if self._decay_radius > 0.0:
            return Support.decay(self._decay_radius)
        return Support.unbounded()

    def breakpoints(self):
        return self.child.breakpoints()


@dataclass(frozen=True)
class Power(FieldExpr):
    """Integer power, exponent >= 1."""

    child: FieldExpr
    exponent: int

    def _ev(self, u):
        return self.child._ev(u) ** self.exponent

    def derivative(self):
        if self.exponent == 1:
            return self.child.derivative()
        return scale(mul(int_power(self.child, self.exponent - 1),
                         self.child.derivative()), self.exponent)

    @property
    def support(self):
        return self.child.support

    def breakpoints(self):
        return self.child.breakpoints()


@dataclass(frozen=True)
class SqrtNonneg(FieldExpr):
    """Square root of a real-valued, nonnegative child.

    Tiny negative round-off in the child is clamped to zero.
    """

    child: FieldExpr

    def _ev(self, u):
        vals = np.maximum(self.child._ev(u).real, 0.0)
        return np.sqrt(vals).astype(complex)

    def derivative(self):
        return SqrtRatio(self.child.derivative(), self.child)

    @property
    def support(self):
        s = self.child.support
        if s.kind == "decay":
            return Support.decay(2.0 * s.radius)
        return s

    def breakpoints(self):
        return self.child.breakpoints()


@dataclass(frozen=True)
class SqrtRatio(FieldExpr):
    """num / (2 sqrt(den)) with the 0/0 -> 0 rule at support edges.

    This is the exact derivative of sqrt(den) when num = den'; where den
    vanishes together with num (the radicand flattens out, as at the edges
    of the projection bumps) the true derivative is 0.  A vanishing den
    with |num| above a small tolerance signals a genuine kink.
    """

    num: FieldExpr
    den: FieldExpr

    def _ev(self, u):
        den = np.maximum(self.den._ev(u).real, 0.0)
        num = self.num._ev(u)
        out = np.zeros(u.shape, dtype=complex)
        pos = den > 0.0
        if np.any(pos):
            out[pos] = num[pos] / (2.0 * np.sqrt(den[pos]))
        edge = ~pos
        if np.any(np.abs(num[edge]) > _SQRT_EDGE_TOL):
            bad = np.asarray(u)[edge][np.abs(num[edge]) > _SQRT_EDGE_TOL]
            raise NonSmoothPointError(
                f"square root is not differentiable at u={bad[0]!r}: "
                "radicand vanishes to first order")
        return out

    def derivative(self):
        raise NonSmoothPointError(
            "second derivative across a square-root support edge is not "
            "representable; rebuild the expression without the outer sqrt")

    @property
    def support(self):
        return self.num.support.intersect(self.den.support)

    def breakpoints(self):
        return _merge_breakpoints((self.num, self.den))


@dataclass(frozen=True)
class Step01(FieldExpr):
    """The C-infinity step: 0 for s <= 0, 1 for s >= 1, strictly increasing
    in between, with sigma(s) + sigma(1-s) = 1.

    Built from phi(s) = exp(-1/s) (s > 0) as phi(s) / (phi(s) + phi(1-s));
    every derivative vanishes at both endpoints.
    """

    child: FieldExpr

    def _ev(self, u):
        s = self.child._ev(u).real
        out = np.zeros(u.shape, dtype=float)
        out[s >= 1.0] = 1.0
        mid = (s > 0.0) & (s < 1.0)
        if np.any(mid):
            sm = s[mid]
            a = np.exp(-1.0 / sm)
            b = np.exp(-1.0 / (1.0 - sm))
            out[mid] = a / (a + b)
        return out.astype(complex)

    def derivative(self):
        g = self.child
        one_minus = add(Const(1 + 0j), scale(g, -1))
        a_g = BumpTail(g, (1.0,))
        a_mg = BumpTail(one_minus, (1.0,))
        da_g = BumpTail(g, (0.0, 0.0, 1.0))      # t^2 e^{-t}, t = 1/s
        da_mg = BumpTail(one_minus, (0.0, 0.0, 1.0))
        numer = add(mul(da_g, a_mg), mul(a_g, da_mg))
        denom = add(a_g, a_mg)
        slope = mul(numer, int_power(reciprocal(denom), 2))
        return mul(slope, g.derivative())

    @property
    def support(self):
        return Support.unbounded()

    def breakpoints(self):
        pts = list(self.child.breakpoints())
        aff = _as_affine(self.child)
        if aff is not None and aff[0] != 0.0:
            s, c = aff
            pts.extend(((0.0 - c) / s, (1.0 - c) / s))
        return tuple(sorted(pts))


@dataclass(frozen=True)
class BumpTail(FieldExpr):
    """P(1/x) * exp(-1/x) for x > 0, identically 0 for x <= 0.

    P is the polynomial with coefficients ``coeffs`` (low order first).
    The family is closed under differentiation:
    d/dx [P(1/x) e^{-1/x}] = Q(1/x) e^{-1/x} with Q(t) = t^2 (P(t) - P'(t)).
    """

    child: FieldExpr
    coeffs: tuple[float, ...]

    def _ev(self, u):
        x = self.child._ev(u).real
        out = np.zeros(u.shape, dtype=float)
        pos = x > 0.0
        if np.any(pos):
            t = 1.0 / x[pos]
            live = t <= _UNDERFLOW_T
            if np.any(live):
                tt = t[live]
                poly = np.zeros_like(tt)
                for c in reversed(self.coeffs):
                    poly = poly * tt + c
                vals = np.zeros_like(t)
                vals[live] = poly * np.exp(-tt)
                out[pos] = vals
            # t beyond the underflow threshold: exp term is exactly 0.0
        return out.astype(complex)

    def derivative(self):
        p = self.coeffs
        dp = tuple(k * p[k] for k in range(1, len(p)))
        diff = tuple(a - b for a, b in
                     zip(p, dp + (0.0,) * (len(p) - len(dp))))
        q = (0.0, 0.0) + diff
        return mul(BumpTail(self.child, q), self.child.derivative())

    @property
    def support(self):
        return Support.unbounded()

    def breakpoints(self):
        pts = list(self.child.breakpoints())
        aff = _as_affine(self.child)
        if aff is not None and aff[0] != 0.0:
            s, c = aff
            pts.append((0.0 - c) / s)
        return tuple(sorted(pts))


@dataclass(frozen=True)
class LnCosh(FieldExpr):
    """log(cosh(child)), evaluated overflow-free."""

    child: FieldExpr

    def _ev(self, u):
        z = self.child._ev(u)
        # ln cosh z = |Re branch| + log1p(exp(-2 |..|)) - ln 2, stable for
        # large arguments where cosh itself would overflow.
        zr = np.where(z.real >= 0.0, z, -z)
        return zr + np.log1p(np.exp(-2.0 * zr)) - math.log(2.0)

    def derivative(self):
        return mul(Tanh(self.child), self.child.derivative())

    @property
    def support(self):
        return Support.unbounded()

    def breakpoints(self):
        return self.child.breakpoints()


@dataclass(frozen=True)
class Tanh(FieldExpr):
    child: FieldExpr

    def _ev(self, u):
        return np.tanh(self.child._ev(u))

    def derivative(self):
        sech2 = add(Const(1 + 0j), scale(int_power(Tanh(self.child), 2), -1))
        return mul(sech2, self.child.derivative())

    @property
    def support(self):
        return Support.unbounded()

    def breakpoints(self):
        return self.child.breakpoints()


@dataclass(frozen=True)
class Piecewise(FieldExpr):
    """Branches separated by breakpoints; boundaries belong to the branch
    that starts there (left-closed intervals).

    With breakpoints (b0, ..., bm) the branches are
    (-inf, b0), [b0, b1), ..., [bm, +inf) and pieces has m+2 entries.
    """

    points: tuple[float, ...]
    pieces: tuple[FieldExpr, ...]

    def _ev(self, u):
        idx = np.searchsorted(np.asarray(self.points), u, side="right")
        out = np.zeros(u.shape, dtype=complex)
        for j, piece in enumerate(self.pieces):
            mask = idx == j
            if np.any(mask):
                out[mask] = piece._ev(u[mask])
        return out

    def derivative(self):
        return Piecewise(self.points, tuple(p.derivative() for p in self.pieces))

    @property
    def support(self):
        lo_edge = (-math.inf,) + self.points
        hi_edge = self.points + (math.inf,)
        total = Support.empty()
        for piece, lo, hi in zip(self.pieces, lo_edge, hi_edge):
            s = piece.support
            if s.is_empty:
                continue
            if math.isinf(lo) or math.isinf(hi):
                # half-infinite branch: clip only if the piece itself is bounded
                if s.kind == "compact":
                    total = total.union(Support.compact(max(s.lo, lo), min(s.hi, hi)))
                elif s.kind == "decay":
                    total = total.union(s)
                else:
                    return Support.unbounded()
            else:
                total = total.union(Support.compact(lo, hi))
        return total

    def breakpoints(self):
        pts = list(self.points)
        for piece in self.pieces:
            pts.extend(piece.breakpoints())
        return tuple(sorted(set(pts)))


@dataclass(frozen=True)
class Reciprocal(FieldExpr):
    """1/child for a nowhere-vanishing child."""

    child: FieldExpr

    def _ev(self, u):
        vals = self.child._ev(u)
        if np.any(vals == 0):
            bad = np.asarray(u)[vals == 0]
            raise NonSmoothPointError(
                f"reciprocal of a vanishing function at u={bad[0]!r}")
        return 1.0 / vals

    def derivative(self):
        return scale(mul(self.child.derivative(),
                         int_power(Reciprocal(self.child), 2)), -1)

    @property
    def support(self):
        return Support.unbounded()

    def breakpoints(self):
        return self.child.breakpoints()


def _merge_breakpoints(children: Sequence[FieldExpr]) -> tuple[float, ...]:
    pts = set()
    for c in children:
        pts.update(c.breakpoints())
    return tuple(sorted(pts))


def _as_affine(expr: FieldExpr):
    """Return (slope, offset) if expr is structurally slope*u + offset."""
    if isinstance(expr, Identity):
        return (1.0, 0.0)
    if isinstance(expr, Const):
        if expr.value.imag == 0:
            return (0.0, expr.value.real)
        return None
    if isinstance(expr, Scale):
        inner = _as_affine(expr.child)
        if inner is None or expr.factor.imag != 0:
            return None
        f = expr.factor.real
        return (inner[0] * f, inner[1] * f)
    if isinstance(expr, Sum):
        s, c = 0.0, 0.0
        for ch in expr.children:
            inner = _as_affine(ch)
            if inner is None:
                return None
            s += inner[0]
            c += inner[1]
        return (s, c)
    if isinstance(expr, Affine):
        inner = _as_affine(expr.child)
        if inner is None:
            return None
        a, b = inner
        return (a * expr.slope, a * expr.offset + b)
    return None


# ---------------------------------------------------------------------------
# constructors (with light normalisation)

_ZERO = Const(0j)
_ONE = Const(1 + 0j)


def constant(c: Number) -> FieldExpr:
    return Const(complex(c))


def zero() -> FieldExpr:
    return _ZERO


def one() -> FieldExpr:
    return _ONE


def var() -> FieldExpr:
    """The free variable."""
    return Identity()


def add(*fs: FieldExpr) -> FieldExpr:
    flat: list[FieldExpr] = []
    const_acc = 0j
    for f in fs:
        if isinstance(f, Sum):
            flat.extend(f.children)
        elif isinstance(f, Const):
            const_acc += f.value
        else:
            flat.append(f)
    # fold constants that came out of nested sums
    rest = []
    for f in flat:
        if isinstance(f, Const):
            const_acc += f.value
        else:
            rest.append(f)
    if const_acc != 0:
        rest.append(Const(const_acc))
    if not rest:
        return _ZERO
    if len(rest) == 1:
        return rest[0]
    return Sum(tuple(rest))


def mul(*fs: FieldExpr) -> FieldExpr:
    flat: list[FieldExpr] = []
    const_acc = 1 + 0j
    for f in fs:
        if isinstance(f, Product):
            flat.extend(f.children)
        else:
            flat.append(f)
    rest = []
    for f in flat:
        if isinstance(f, Const):
            const_acc *= f.value
        else:
            rest.append(f)
    if const_acc == 0:
        return _ZERO
    if not rest:
        return Const(const_acc)
    core = rest[0] if len(rest) == 1 else Product(tuple(rest))
    if const_acc != 1:
        return scale(core, const_acc)
    return core


def scale(f: FieldExpr, c: Number) -> FieldExpr:
    c = complex(c)
    if c == 0:
        return _ZERO
    if c == 1:
        return f
    if isinstance(f, Const):
        return Const(f.value * c)
    if isinstance(f, Scale):
        return scale(f.child, f.factor * c)
    return Scale(f, c)


def conj(f: FieldExpr) -> FieldExpr:
    if isinstance(f, Const):
        return Const(f.value.conjugate())
    if isinstance(f, Conj):
        return f.child
    return Conj(f)


def precompose_affine(f: FieldExpr, slope: float, offset: float) -> FieldExpr:
    """The function u -> f(slope*u + offset)."""
    slope = float(slope)
    offset = float(offset)
    if slope == 1.0 and offset == 0.0:
        return f
    if isinstance(f, Const):
        return f
    if isinstance(f, Identity):
        return linear(slope, offset)
    if isinstance(f, Affine):
        # f.child(f.slope*(slope*u+offset) + f.offset)
        return precompose_affine(f.child, f.slope * slope,
                                 f.slope * offset + f.offset)
    return Affine(f, slope, offset)


def shift(f: FieldExpr, a: float) -> FieldExpr:
    """The translate u -> f(u + a)."""
    return precompose_affine(f, 1.0, float(a))


def linear(a: Number, b: Number = 0) -> FieldExpr:
    """The polynomial a*u + b."""
    return add(scale(Identity(), a), constant(b))


def exp_of(f: FieldExpr) -> FieldExpr:
    return Exp(f, _probe_exp_decay(f))


def _probe_exp_decay(child: FieldExpr) -> float:
    """Detect Gaussian-like decay of exp(child) by probing the exponent.

    Returns a radius beyond which |exp(child)| is far below the quadrature
    truncation threshold, or 0.0 when no decay is evident.
    """
    try:
        radius = 1.0
        while radius <= 4096.0:
            lo = complex(child(-radius)).real
            hi = complex(child(radius)).real
            if lo < -40.0 and hi < -40.0:
                lo2 = complex(child(-2 * radius)).real
                hi2 = complex(child(2 * radius)).real
                if lo2 < lo and hi2 < hi:
                    return radius
            radius *= 2.0
    except Exception:
        pass
    return 0.0


def int_power(f: FieldExpr, k: int) -> FieldExpr:
    if not isinstance(k, int) or k < 1:
        raise ValueError("integer power requires exponent >= 1")
    if k == 1:
        return f
    return Power(f, k)


def sqrt_nonneg(f: FieldExpr) -> FieldExpr:
    return SqrtNonneg(f)


def step01(f: FieldExpr | None = None) -> FieldExpr:
    """Smooth step: 0 below 0, 1 above 1 (applied to f, default the variable)."""
    return Step01(f if f is not None else Identity())


def ln_cosh(f: FieldExpr | None = None) -> FieldExpr:
    return LnCosh(f if f is not None else Identity())


def tanh_of(f: FieldExpr | None = None) -> FieldExpr:
    return Tanh(f if f is not None else Identity())


def reciprocal(f: FieldExpr) -> FieldExpr:
    if isinstance(f, Const):
        return Const(1.0 / f.value)
    if isinstance(f, Reciprocal):
        return f.child
    return Reciprocal(f)


def piecewise(points: Sequence[float], pieces: Sequence[FieldExpr]) -> FieldExpr:
    points = tuple(float(p) for p in points)
    pieces = tuple(pieces)
    if len(pieces) != len(points) + 1:
        raise ValueError("piecewise needs one more piece than breakpoints")
    if any(nxt <= prev for prev, nxt in zip(points[:-1], points[1:])):
        raise ValueError("breakpoints must be strictly increasing")
    return Piecewise(points, pieces)


def windowed(f: FieldExpr, lo: float, hi: float) -> FieldExpr:
    """f restricted to [lo, hi), exactly zero outside."""
    return piecewise((lo, hi), (_ZERO, f, _ZERO))


def gaussian(width: float = 1.0, center: float = 0.0,
             amplitude: Number = 1.0) -> FieldExpr:
    """amplitude * exp(-width * (u - center)^2), with a rapid-decay hint."""
    body = exp_of(scale(int_power(linear(1.0, -center), 2), -float(width)))
    return scale(body, amplitude)


# ---------------------------------------------------------------------------
# operation aliases


def evaluate(f: FieldExpr, u) -> complex:
    return f(u)


def derivative(f: FieldExpr) -> FieldExpr:
    return f.derivative()


def multiply(f: FieldExpr, g: FieldExpr) -> FieldExpr:
    return mul(f, g)


def conjugate(f: FieldExpr) -> FieldExpr:
    return conj(f)
