import math
import warnings

import numpy as np
import pytest

from splitoct import kinematics as kin
from splitoct.errors import NotNullTrajectory, SingularFrame, VirtualRegime, ZeroMomentum


def test_constants_validation():
    with pytest.raises(ValueError):
        kin.PhysicalConstants(c=0)
    with pytest.raises(ValueError):
        kin.PhysicalConstants(hbar=math.inf)


@pytest.mark.parametrize("p,lam", [((1, 0, 0), (1, 0, 0)), ((2, 0, 0), (0.5, 0, 0)),
                                   ((3, 4, 0), (0.12, 0.16, 0))])
def test_wavelengths(p, lam):
    assert kin.wavelengths(p) == pytest.approx(lam)


def test_wavelengths_zero():
    with pytest.raises(ZeroMomentum):
        kin.wavelengths((0, 0, 0))


def test_wavelength_homogeneity(rng):
    p = rng.standard_normal(3)
    for a in (0.5, 2.0, 7.0):
        assert kin.wavelengths(a * p) == pytest.approx(kin.wavelengths(p) / a)


def test_state_lam():
    s = kin.KinematicState(x=(0, 0, 0), p=(0, 2, 0), consts=kin.PhysicalConstants(hbar=3))
    assert s.lam == pytest.approx((0, 1.5, 0))


def test_spin_vector(rng):
    assert kin.spin_vector((1, 0, 0), (0, 1, 0)) == pytest.approx((0, 0, 1))
    assert not kin.spin_vector((1, 2, 3), (2, 4, 6)).any()
    for _ in range(50):
        x, p = rng.standard_normal((2, 3))
        assert np.abs(kin.spin_vector(x, p) - kin.spin_vector_bruteforce(x, p)).max() < 1e-12


def test_uncertainty_ratios(rng):
    for _ in range(50):
        x, lam = rng.standard_normal((2, 3))
        r = kin.uncertainty_ratios(x, lam, 1e-4)
        assert r.ratio_2_residual <= 1e-8
        assert r.ratio_3_residual <= 1e-8
        assert r.ratio_2 == pytest.approx(-lam[2] / x[2], rel=1e-8)


def test_uncertainty_vacuous():
    r = kin.uncertainty_ratios((1, 2, 3), (0.5, 0.1, 0.2), 0.0)
    assert r.vacuous
    assert r.delta_x == (0.0, 0.0, 0.0)


def test_uncertainty_saturation():
    r = kin.uncertainty_ratios((1, -2, 3), (1, 2, -3), 1e-4, kin.PhysicalConstants(hbar=2.0))
    assert r.products == pytest.approx((2.0, 2.0, 2.0))
    assert all(r.bound_ok)


def test_velocity_light_fixed_point():
    for theta in (-2.0, 0.1, 1.7):
        assert kin.velocity_add((1, 0, 0), theta)[0] == 1.0


def test_velocity_textbook(rng):
    for _ in range(200):
        v = rng.uniform(-0.6, 0.6, 3)
        th = rng.uniform(-2, 2)
        got = kin.velocity_add(v, th)
        want = kin.velocity_add_textbook(v, math.tanh(th))
        assert np.abs(got - want).max() <= 1e-12


def test_velocity_textbook_with_units():
    c = 3.0
    consts = kin.PhysicalConstants(c=c)
    v = np.array([1.0, 0.5, -0.2])
    V = 1.2
    got = kin.velocity_add(v, math.atanh(V / c), consts=consts)
    assert np.abs(got - kin.velocity_add_textbook(v, V, consts)).max() < 1e-12


def test_velocity_printed_form():
    u, beta, d = 0.3, 0.2, 0.7
    got = kin.velocity_add((0, u, 0), math.atanh(beta), lamdot3=d, transverse_dilation=False)
    assert got[1] == pytest.approx(u - beta * d)


def test_velocity_lamdot_signs():
    out = kin.velocity_add((0, 0, 0), math.atanh(0.5), lamdot2=1.0, lamdot3=1.0)
    assert out[1] == pytest.approx(-0.5) and out[2] == pytest.approx(0.5)


def test_velocity_singular():
    with pytest.raises(SingularFrame):
        kin.velocity_add((2.0, 0, 0), math.atanh(0.5))


def test_aberration_examples():
    g, V, d = 0.7, 0.05, 2.0
    assert kin.aberration(g, V, 0.0, 12) == pytest.approx(V * math.sin(g))
    assert kin.aberration(g, V, 0.0, 13) == pytest.approx(V * math.sin(g))
    assert kin.aberration(0.0, V, d, 12) == pytest.approx(-V * d)
    assert kin.aberration(0.0, V, d, 13) == pytest.approx(V * d)
    assert kin.aberration(g, 0.0, d, 12) == 0.0
    assert kin.aberration(0, 0.01, 1, "12") == pytest.approx(-0.01)


def test_aberration_parity(rng):
    for _ in range(200):
        g, V, d = rng.uniform(-3, 3), rng.uniform(-0.09, 0.09), rng.normal()
        s = kin.aberration(g, V, d, 12) + kin.aberration(g, V, d, 13)
        assert abs(s - 2 * V * math.sin(g)) <= 1e-14


def test_aberration_regime_warning():
    with pytest.warns(kin.AberrationRegimeWarning):
        kin.aberration(0.1, 0.5, 0.0, 12)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        kin.aberration(0.1, 0.05, 0.0, 12)
    with pytest.raises(ValueError):
        kin.aberration(0.1, 0.05, 0.0, 23)


def test_lagrangian_examples():
    assert kin.lagrangian(2.0, (0, 0, 0), (1, 0, 0), (0, 0, 0)) == pytest.approx(-2.0)
    assert kin.lagrangian(1.0, (0.6, 0, 0), (1, 0, 0), (0, 0, 0)) == pytest.approx(-0.8)
    # |v| = c with pdot != 0 stays real
    L = kin.lagrangian(1.0, (1, 0, 0), (2, 0, 0), (0, 3, 0))
    assert L == pytest.approx(-3 / 4)


def test_lagrangian_virtual():
    with pytest.raises(VirtualRegime) as e:
        kin.lagrangian(1.0, (2, 0, 0), (1, 0, 0), (0, 0, 0))
    assert e.value.radicand == pytest.approx(-3.0)


def test_lagrangian_radicand_monotone():
    r = [kin.lagrangian_radicand((0.5, 0, 0), (1, 1, 0), (s, 0, 0)) for s in (0.0, 0.5, 1.0, 2.0)]
    assert all(a < b for a, b in zip(r, r[1:]))


def test_lagrangian_zero_momentum():
    with pytest.raises(ZeroMomentum):
        kin.lagrangian(1.0, (0, 0, 0), (0, 0, 0), (0, 0, 0))


def test_bounds():
    assert kin.max_force(1.0) == 1.0
    assert kin.max_force(3.0) == pytest.approx(9 * kin.max_force(1.0))
    assert kin.max_mass() == 1.0
    assert kin.max_mass(kin.SI) == pytest.approx(2.176e-8, rel=1e-3)
    with pytest.raises(ValueError):
        kin.max_force(0.0)


@pytest.mark.parametrize("g,r", [((1, 0, 0), 0.0), ((0.6, 0.8, 0), 0.0), ((1, 1, 0), 1.0)])
def test_eikonal(g, r):
    assert kin.eikonal_residual(g) == pytest.approx(r, abs=1e-15)


def _uniform_trajectory(n, v, ldot=(0, 0, 0), c=1.0):
    t = np.linspace(0, 2, n)
    v, ldot = np.asarray(v, float), np.asarray(ldot, float)
    rate = math.sqrt(c**2 - v @ v + ldot @ ldot)
    return t, rate * t, np.outer(t, v), np.outer(t, ldot)


def test_action_constant_velocity():
    rep = kin.action_conservation(*_uniform_trajectory(101, (0.3, 0.1, -0.2), (0.05, 0, 0)))
    assert rep.max_rate_drift < 1e-9
    assert rep.max_null_residual < 1e-12


def test_action_static():
    t = np.linspace(0, 1, 11)
    rep = kin.action_conservation(t, -t, np.zeros((11, 3)), np.zeros((11, 3)))
    assert np.allclose(rep.rate, -1.0)
    assert rep.max_null_residual < 1e-12


def test_action_accelerated_discretization():
    # quadrature of the null rate for a slowly accelerating particle
    for n in (201, 401):
        t = np.linspace(0, 1, n)
        v1 = 0.3 * t
        x = np.stack([0.15 * t**2, 0 * t, 0 * t], axis=1)
        rate = np.sqrt(1 - v1**2)
        w = np.concatenate([[0], np.cumsum(0.5 * (rate[1:] + rate[:-1]) * np.diff(t))])
        rep = kin.action_conservation(t, w, x, np.zeros_like(x), null_tol=1e-4)
        assert rep.max_null_residual < 1e-4


def test_action_not_null():
    t, w, x, lam = _uniform_trajectory(21, (0.3, 0, 0))
    with pytest.raises(NotNullTrajectory):
        kin.action_conservation(t, 2 * w, x, lam)


def test_action_empty():
    with pytest.raises(ValueError, match="empty"):
        kin.action_conservation([], [], [], [])
    with pytest.raises(ValueError):
        kin.action_conservation([0, 1], [0, 1], np.zeros((2, 3)), np.zeros((2, 3)))
