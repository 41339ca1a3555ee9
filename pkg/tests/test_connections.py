"""Connections on section bimodules: Leibniz rules, curvature, the
parameter solver, induced derivations."""

import math

import numpy as np
import pytest

from nccylinder import algebra as A
from nccylinder import bimodules as B
from nccylinder import connections as C
from nccylinder import fields as F
from nccylinder.bimodule_types import LeftParams, default_bimodule_params
from nccylinder.errors import DegenerateParamsError, RatioNotRationalError
from nccylinder.sampling import random_element, random_section, rng_from_seed

TWO_PI_I = 2j * math.pi


def test_nabla2_zero_map():
    rng = rng_from_seed(0)
    xi = random_section(rng)
    out = C.nabla2(xi, C.ConnParams(1.0, 0.0, 0.0))
    assert B.section_distance(out, B.zero_section()) == 0


def test_nabla1_gaussian_slot():
    from nccylinder.bimodule_types import section
    alpha = 0.7 - 0.2j
    xi = section({0: F.gaussian(1.0)})
    out = C.nabla1(xi, C.ConnParams(alpha, 0.0, 0.0))
    xs = np.linspace(-2.5, 2.5, 31)
    expected = alpha * (-2.0 * xs) * np.exp(-xs ** 2)
    assert np.max(np.abs(out.slot(0)(xs) - expected)) < 1e-14


def test_commutator_is_alpha_beta():
    rng = rng_from_seed(1)
    c = C.ConnParams(0.8 + 0.1j, -1.2 + 0.4j, 2.3j)
    xi = random_section(rng, n_slots=3)
    comm = C.curvature_commutator(xi, c)
    target = c.alpha * c.beta
    for k, expr in xi.slots:
        xs = np.linspace(-3, 3, 61)
        assert np.max(np.abs(comm.slot(k)(xs) - target * expr(xs))) <= 1e-10
    assert abs(C.measured_curvature(c, xi) - target) <= 1e-10


def test_left_leibniz_holds_under_conditions():
    hbar = 1.0
    lt = LeftParams.from_constraint(1.4, -0.6, 2, hbar)
    # beta = 0, gamma = 2 pi i / r
    c = C.ConnParams(1.0 / lt.lambda0, 0.0, TWO_PI_I / lt.r)
    rep = C.check_left_leibniz(c, lt, trials=6, seed=2)
    assert rep.max_residual <= 1e-8
    # beta = 2 pi i / eps, gamma = 0 also satisfies the constraint
    c2 = C.ConnParams(1.0 / lt.lambda0, TWO_PI_I / lt.eps, 0.0)
    rep2 = C.check_left_leibniz(c2, lt, trials=6, seed=3)
    assert rep2.max_residual <= 1e-8


def test_left_leibniz_detects_violation():
    hbar = 1.0
    lt = LeftParams.from_constraint(1.4, -0.6, 2, hbar)
    bad = C.ConnParams(2.0 / lt.lambda0, 0.0, TWO_PI_I / lt.r)
    rep = C.check_left_leibniz(bad, lt, trials=4, seed=4)
    assert rep.max_residual > 1e-3


def test_solver_equal_hbar_is_flat():
    sol = C.solve_bimodule_connection(1.0, 1.0, 0.7, -0.3, 2, 2)
    assert sol.case == "equal"
    assert sol.conn.beta == 0
    assert abs(sol.curvature) <= 1e-12
    assert abs(sol.conn.gamma - TWO_PI_I / 2) <= 1e-14
    # derived eps never equals eps'
    assert sol.params.left.eps != sol.params.right.eps_p
    rep = C.check_left_leibniz(sol.conn, sol.params.left, trials=4, seed=5)
    assert rep.max_residual <= 1e-8
    rep2 = C.check_right_leibniz(sol.conn, sol.params, trials=4, seed=6)
    assert rep2.max_residual <= 1e-8


def test_solver_worked_example():
    sol = C.solve_bimodule_connection(1.0, 2.0, 1.0, 0.0, 1, 2)
    assert sol.case == "rational"
    assert abs(sol.conn.alpha - 1.0) == 0
    assert abs(sol.conn.beta + 1j * math.pi) <= 1e-15
    assert abs(sol.curvature + 1j * math.pi) <= 1e-15
    closed = TWO_PI_I * (1.0 - 2.0) / (1.0 * 2.0)
    assert abs(sol.curvature - closed) <= 1e-15


def test_solver_output_satisfies_both_leibniz_conditions():
    rng = rng_from_seed(7)
    for _ in range(6):
        lam0 = float(rng.uniform(0.4, 2.0)) * (1 if rng.random() < 0.5 else -1)
        lam1 = float(rng.uniform(-1.0, 1.0))
        sol = C.solve_bimodule_connection(1.0, 2.0, lam0, lam1, 1, 2)
        c, lt, rt = sol.conn, sol.params.left, sol.params.right
        assert abs(c.beta * lt.eps + c.gamma * lt.r - TWO_PI_I) <= 1e-12
        assert abs(c.beta * rt.eps_p + c.gamma * rt.r_p - TWO_PI_I) <= 1e-12
        assert abs(c.alpha * lt.lambda0 - 1.0) <= 1e-14
        assert abs(c.alpha * rt.mu0 - 1.0) <= 1e-14


def test_solver_rejects_irrational_ratio():
    with pytest.raises(RatioNotRationalError):
        C.solve_bimodule_connection(1.0, 1.41421356, 1.0, 0.0, 1, 1)


def test_solver_rejects_degenerate_cases():
    with pytest.raises(DegenerateParamsError):
        C.solve_bimodule_connection(1.0, 1.0, 1.0, 0.0, 1, 2)
    with pytest.raises(DegenerateParamsError):
        C.solve_bimodule_connection(1.0, 2.0, 0.0, 0.0, 1, 2)
    with pytest.raises(DegenerateParamsError):
        C.solve_bimodule_connection(1.0, 1.0, 1.0, 0.0, 0, 0)


def test_curvature_depends_only_on_deformation_parameters():
    rng = rng_from_seed(8)
    target = TWO_PI_I * (1.0 - 2.0) / 2.0
    for _ in range(20):
        lam0 = float(rng.uniform(0.4, 2.5)) * (1 if rng.random() < 0.5 else -1)
        lam1 = float(rng.uniform(-1.5, 1.5))
        scale = int(rng.integers(1, 4))
        sol = C.solve_bimodule_connection(1.0, 2.0, lam0, lam1,
                                          scale, 2 * scale)
        assert abs(sol.curvature - target) <= 1e-12
    # exactness of the accepted ratio
    sol = C.solve_bimodule_connection(1.0, 2.0, 1.3, 0.2, 3, 6)
    assert sol.params.left.r * 2.0 == sol.params.right.r_p * 1.0


def test_measured_curvature_on_solver_output():
    rng = rng_from_seed(9)
    sol = C.solve_bimodule_connection(1.0, 2.0, 1.0, 0.0, 1, 2)
    xi = random_section(rng)
    assert abs(C.measured_curvature(sol.conn, xi) - sol.curvature) <= 1e-10


def test_constant_curvature_connection():
    p = LeftParams.from_constraint(1.3, -0.4, 2, 1.0)
    flat = C.constant_curvature_connection(p, 0.0)
    assert flat.beta == 0
    assert abs(flat.gamma - TWO_PI_I / p.r) <= 1e-14
    R = 1 + 1j
    c = C.constant_curvature_connection(p, R)
    assert abs(c.beta * p.eps + c.gamma * p.r - TWO_PI_I) <= 1e-12
    rng = rng_from_seed(10)
    xi = random_section(rng)
    assert abs(C.measured_curvature(c, xi) - R) <= 1e-10
    rep = C.check_left_leibniz(c, p, trials=4, seed=11)
    assert rep.max_residual <= 1e-8
    with pytest.raises(DegenerateParamsError):
        C.constant_curvature_connection(
            LeftParams(1.0, 0.5, -1.0, 0, 1.0), R)


def test_curvature_is_module_endomorphism():
    rng = rng_from_seed(12)
    sol = C.solve_bimodule_connection(1.0, 2.0, 1.0, 0.0, 1, 2)
    f = random_element(rng, 1.0)
    xi = random_section(rng)
    lhs = C.curvature_commutator(B.left_act(f, xi, sol.params.left), sol.conn)
    rhs = B.left_act(f, C.curvature_commutator(xi, sol.conn), sol.params.left)
    assert B.section_distance(lhs, rhs) <= 1e-10


def test_induced_derivation_scaling():
    rng = rng_from_seed(13)
    sol = C.solve_bimodule_connection(1.0, 2.0, 1.0, 0.0, 1, 2)
    f = random_element(rng, 2.0)
    d1f = C.induced_derivation(f, 1, sol.conn, sol.params)
    expected = A.scale(A.d1(f), sol.conn.alpha * sol.params.right.mu0)
    assert A.distance(d1f, expected) == 0
    # mode-zero elements are killed in the mode direction
    f0 = A.from_mode(2.0, 0, F.gaussian(1.0))
    assert C.induced_derivation(f0, 2, sol.conn, sol.params).is_zero_structurally()


def test_induced_derivation_is_connection_commutator():
    rng = rng_from_seed(14)
    sol = C.solve_bimodule_connection(1.0, 2.0, 1.0, 0.0, 1, 2)
    rt = sol.params.right
    f = random_element(rng, 2.0)
    xi = random_section(rng)
    for k, nk in ((1, C.nabla1), (2, C.nabla2)):
        d = C.induced_derivation(f, k, sol.conn, sol.params)
        lhs = B.right_act(xi, d, rt)
        rhs = C._section_add(
            nk(B.right_act(xi, f, rt), sol.conn),
            B.right_act(nk(xi, sol.conn), A.scale(f, -1), rt))
        assert B.section_distance(lhs, rhs) <= 1e-8


def test_solver_satisfies_right_leibniz_scaling():
    # alpha mu0 = 1 and beta eps' + gamma r' = 2 pi i make the induced
    # derivations the natural ones
    sol = C.solve_bimodule_connection(1.0, 2.0, 1.0, 0.0, 1, 2)
    rng = rng_from_seed(15)
    f = random_element(rng, 2.0)
    assert A.distance(C.induced_derivation(f, 1, sol.conn, sol.params),
                      A.d1(f)) <= 1e-12
    assert A.distance(C.induced_derivation(f, 2, sol.conn, sol.params),
                      A.d2(f)) <= 1e-12


def test_induced_algebra_connection():
    bp = default_bimodule_params(1.0, 1.0, 0.0, 1.0, 1, 1)
    rng = rng_from_seed(16)
    f = random_element(rng, 1.0)
    # flat connection: the mode component reduces to the plain derivation
    flat = C.constant_curvature_connection(bp.left, 0.0)
    _, second = C.induced_algebra_connection(f, flat, bp.left)
    assert A.distance(second, A.d2(f)) <= 1e-10

    c = C.constant_curvature_connection(bp.left, 0.3 - 0.2j)
    first, second = C.induced_algebra_connection(f, c, bp.left)
    assert A.distance(first, A.d1(f)) == 0
    # cross-check through the module isomorphism
    phi_f = B.section_from_elements([f], bp.left)
    back = B.elements_from_section(C.nabla2(phi_f, c), bp.left, 1.0)[0]
    assert A.distance(second, back) <= 1e-8
    # mode-zero element: the extra term is curvature times u times the slice
    f0 = A.from_mode(1.0, 0, F.gaussian(1.0, 0.4))
    _, second0 = C.induced_algebra_connection(f0, c, bp.left)
    ab = c.alpha * c.beta
    expected = A.from_mode(1.0, 0, F.mul(F.linear(1.0, 0.0),
                                         F.scale(F.gaussian(1.0, 0.4), ab)))
    assert A.distance(second0, expected) <= 1e-12
