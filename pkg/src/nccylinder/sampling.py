"""Seeded random instances for the property suites.

Coefficients are complex-scaled Gaussians: they are closed under every
operation the identities need, decay rapidly, and do not commute under
the twisted product.
"""

from __future__ import annotations

import numpy as np

from . import fields as F
from .algebra import CylinderElement, element
from .bimodule_types import Section, section

MODE_RANGE = (-3, 3)
SLOT_RANGE = (-2, 2)


def rng_from_seed(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_coefficient(rng: np.random.Generator) -> F.FieldExpr:
    width = rng.uniform(0.5, 2.0)
    center = rng.uniform(-2.0, 2.0)
    modulus = rng.uniform(0.2, 1.0)
    phase = rng.uniform(0.0, 2.0 * np.pi)
    amp = modulus * np.exp(1j * phase)
    return F.gaussian(width, center, amp)


def random_element(rng: np.random.Generator, hbar: float,
                   n_modes: int = 2) -> CylinderElement:
    lo, hi = MODE_RANGE
    modes = rng.choice(np.arange(lo, hi + 1), size=n_modes, replace=False)
    return element(hbar, {int(n): random_coefficient(rng) for n in modes})


def random_section(rng: np.random.Generator, n_slots: int = 2) -> Section:
    lo, hi = SLOT_RANGE
    ks = rng.choice(np.arange(lo, hi + 1), size=n_slots, replace=False)
    return section({int(k): random_coefficient(rng) for k in ks})


# ---------------------------------------------------------------------------
# random smooth expression trees for the derivative/shift invariants


def _leaf(rng) -> F.FieldExpr:
    kind = rng.integers(0, 5)
    if kind == 0:
        return random_coefficient(rng)
    if kind == 1:
        return F.linear(rng.uniform(-2, 2), rng.uniform(-2, 2))
    if kind == 2:
        return F.constant(complex(rng.uniform(-2, 2), rng.uniform(-2, 2)))
    if kind == 3:
        return F.tanh_of(F.linear(rng.uniform(-2, 2), rng.uniform(-1, 1)))
    return F.step01(F.linear(rng.uniform(0.5, 2), rng.uniform(-1, 1)))


def random_tree(rng: np.random.Generator, depth: int = 4) -> F.FieldExpr:
    """A random smooth expression tree of bounded depth."""
    if depth <= 0 or rng.random() < 0.25:
        return _leaf(rng)
    kind = rng.integers(0, 8)
    if kind == 0:
        return F.add(random_tree(rng, depth - 1), random_tree(rng, depth - 1))
    if kind == 1:
        return F.mul(random_tree(rng, depth - 1), random_tree(rng, depth - 1))
    if kind == 2:
        return F.scale(random_tree(rng, depth - 1),
                       complex(rng.uniform(-2, 2), rng.uniform(-1, 1)))
    if kind == 3:
        return F.conj(random_tree(rng, depth - 1))
    if kind == 4:
        return F.precompose_affine(random_tree(rng, depth - 1),
                                   rng.uniform(0.3, 1.8),
                                   rng.uniform(-1.5, 1.5))
    if kind == 5:
        return F.int_power(random_tree(rng, depth - 1), int(rng.integers(2, 4)))
    if kind == 6:
        # bounded argument keeps exp well conditioned
        return F.exp_of(F.tanh_of(random_tree(rng, depth - 1)))
    return F.ln_cosh(F.tanh_of(random_tree(rng, depth - 1)))
