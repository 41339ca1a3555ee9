"""Metric calculus: Koszul coefficients, curvature, total curvature,
perturbation invariance."""

import math

import numpy as np
import pytest

from nccylinder import fields as F
from nccylinder import riemannian as R
from nccylinder.errors import NonConvergentError, SingularMetricError
from nccylinder.sampling import rng_from_seed

GRID = np.linspace(-5.0, 5.0, 1000)


def catenoid():
    return R.conformal_metric(F.ln_cosh())


def test_conformal_metric_structure():
    h = R.conformal_metric(F.zero())
    u = np.linspace(-3, 3, 31)
    assert np.max(np.abs(h.h[0][0](u) - 1.0)) == 0
    assert np.max(np.abs(h.h[0][1](u))) == 0
    h2 = catenoid()
    assert abs(h2.h[0][0](0.0) - 1.0) < 1e-15  # cosh(0) = 1
    R.validate_metric(h2)


def test_determinant_positive():
    h = catenoid()
    det = R.metric_determinant(h)
    vals = det(GRID).real
    assert np.all(vals > 0)
    # e^{4k} with k = ln cosh: det = cosh^4
    assert abs(det(1.0) - np.cosh(1.0) ** 4) < 1e-12


def test_inverse_metric_pointwise():
    h = catenoid()
    hinv = R.inverse_metric(h)
    u = np.linspace(-4, 4, 41)
    for i in range(2):
        for j in range(2):
            ident = sum(hinv[i][l](u) * h.h[l][j](u) for l in range(2))
            target = 1.0 if i == j else 0.0
            assert np.max(np.abs(ident - target)) < 1e-12


def test_singular_metric_rejected():
    # Gaussian entries collapse far out: |det| drops below the floor on
    # the sampled domain
    g = F.gaussian(1.0)
    h = R.Metric(((g, F.zero()), (F.zero(), g)))
    with pytest.raises(SingularMetricError):
        R.inverse_metric(h)


def test_christoffel_conformal_closed_forms():
    h = catenoid()
    G = R.christoffel(h)
    kp = F.ln_cosh().derivative()(GRID)
    zero = np.zeros_like(kp)
    table = {
        (0, 0, 0): kp, (1, 0, 1): kp, (1, 1, 0): kp, (0, 1, 1): -kp,
        (1, 0, 0): zero, (0, 0, 1): zero, (0, 1, 0): zero, (1, 1, 1): zero,
    }
    for (l, i, j), expected in table.items():
        got = G.gamma[l][i][j](GRID)
        assert np.max(np.abs(got - expected)) <= 1e-10


def test_christoffel_value_example():
    G = R.christoffel(catenoid())
    assert abs(G.gamma[0][0][0](1.0) - math.tanh(1.0)) < 1e-14


def test_constant_metric_flat():
    h = R.Metric(((F.constant(2.0), F.constant(0.5)),
                  (F.constant(0.5), F.constant(2.0))))
    G = R.christoffel(h)
    for l in range(2):
        for i in range(2):
            for j in range(2):
                assert np.max(np.abs(G.gamma[l][i][j](GRID))) == 0
    rep = R.verify_pseudo_riemannian(h, G)
    assert rep.max_residual == 0
    cur = R.curvature_tensor(h, G)
    assert np.max(np.abs(cur.gaussian(GRID))) == 0


def test_koszul_output_is_metric_and_torsion_free():
    h = catenoid()
    G = R.christoffel(h)
    rep = R.verify_pseudo_riemannian(h, G)
    assert rep.metric_residual <= 1e-9
    assert rep.torsion_residual <= 1e-9


def test_compatibility_detects_perturbation():
    h = catenoid()
    G = R.christoffel(h)
    gamma = [[[G.gamma[l][i][j] for j in range(2)] for i in range(2)]
             for l in range(2)]
    gamma[0][0][0] = F.add(gamma[0][0][0], F.constant(1e-3))
    bad = R.Christoffel(tuple(tuple(tuple(r) for r in pl) for pl in gamma))
    rep = R.verify_pseudo_riemannian(h, bad)
    assert rep.metric_residual > 1e-4


def test_uniqueness_constructively():
    # an independently written connection satisfying both axioms must agree
    # with the Koszul output pointwise
    k = F.ln_cosh()
    kp = k.derivative()
    z = F.zero()
    hand_built = R.Christoffel((
        ((kp, z), (z, F.scale(kp, -1))),
        ((z, kp), (kp, z)),
    ))
    h = R.conformal_metric(k)
    rep = R.verify_pseudo_riemannian(h, hand_built)
    assert rep.max_residual <= 1e-9
    G = R.christoffel(h)
    for l in range(2):
        for i in range(2):
            for j in range(2):
                diff = np.abs(hand_built.gamma[l][i][j](GRID)
                              - G.gamma[l][i][j](GRID))
                assert np.max(diff) <= 1e-8


def test_gaussian_curvature_closed_form():
    k = F.ln_cosh()
    h = R.conformal_metric(k)
    rep = R.curvature_tensor(h, R.christoffel(h))
    kpp = k.derivative().derivative()(GRID)
    e2k = np.exp(2.0 * k(GRID).real)
    assert np.max(np.abs(rep.gaussian(GRID) + kpp / e2k)) <= 1e-10
    assert abs(rep.gaussian(0.0) + 1.0) < 1e-14
    # R_1212 = -e^{2k} k''
    assert np.max(np.abs(rep.r1212(GRID) + e2k * kpp)) <= 1e-9


def test_curvature_classical_antisymmetry():
    from nccylinder.checks import _antisymmetry_partner
    h = catenoid()
    G = R.christoffel(h)
    rep = R.curvature_tensor(h, G)
    partner = _antisymmetry_partner(h, G, GRID)
    assert np.max(np.abs(rep.r1212(GRID) + partner)) <= 1e-10


def test_catenoid_total_curvature():
    h = catenoid()
    rep = R.curvature_tensor(h, R.christoffel(h))
    tot = R.total_curvature(h, rep)
    assert abs(tot.quadrature + 2.0) <= 1e-6
    assert abs(tot.boundary_slope + 2.0) <= 1e-6
    assert abs(tot.quadrature - tot.boundary_slope) <= 1e-8


def test_constant_exponent_zero_total():
    h = R.conformal_metric(F.constant(0.3))
    rep = R.curvature_tensor(h, R.christoffel(h))
    tot = R.total_curvature(h, rep)
    assert abs(tot.quadrature) <= 1e-12
    assert abs(tot.boundary_slope) <= 1e-12


def test_total_curvature_requires_conformal():
    h = R.Metric(((F.constant(1.0), F.zero()), (F.zero(), F.constant(1.0))))
    rep = R.curvature_tensor(h, R.christoffel(h))
    with pytest.raises(ValueError):
        R.total_curvature(h, rep)


def test_total_curvature_nonconvergent():
    # exponent with ever-growing slope: k = u^2 has k' = 2u, no limit
    h = R.conformal_metric(F.int_power(F.var(), 2))
    rep = R.curvature_tensor(h, R.christoffel(h))
    with pytest.raises(NonConvergentError):
        R.total_curvature(h, rep)


def test_perturbation_invariance_gaussian_bumps():
    rng = rng_from_seed(40)
    k = F.ln_cosh()
    for _ in range(10):
        delta = F.gaussian(float(rng.uniform(0.5, 2.0)),
                           float(rng.uniform(-2.0, 2.0)),
                           float(rng.uniform(-1.0, 1.0)))
        res = R.perturbation_invariance(k, delta)
        assert res.slope_limits_equal
        assert res.difference <= 1e-6
        assert abs(res.base + 2.0) <= 1e-6


def test_perturbation_zero_delta():
    res = R.perturbation_invariance(F.ln_cosh(), F.zero())
    assert res.base == res.perturbed


def test_perturbation_sharpness_unequal_slopes():
    # a slope-asymmetric perturbation shifts the total by the difference of
    # its slope limits (here -0.6), demonstrating the hypothesis is sharp
    k = F.ln_cosh()
    delta = F.scale(F.ln_cosh(), 0.3)
    res = R.perturbation_invariance(k, delta)
    assert not res.slope_limits_equal
    assert abs((res.perturbed - res.base) - (-0.6)) <= 1e-6
