"""Smoke tests for the python bindings against known values."""

import math

import pytest

import sst


def test_roots_m3():
    roots = sst.psi_roots(3)
    assert roots[0] == pytest.approx(2.0)
    assert roots[1] == pytest.approx(-3.0)
    assert sst.alpha_of(4) == pytest.approx(-2.5)


def test_catalan_mean_n3():
    table = sst.catalan_moments("power:1", 2, 3)
    assert table[1][3] == pytest.approx(29 / 5)
    assert table[2][3] == pytest.approx(169 / 5)


def test_bruteforce_matches_recurrence():
    bf = sst.rpm_moments_bruteforce(2, "log", 6, 2)
    table = sst.rpm_moments(2, "log", 2, 6)
    assert bf[1] == pytest.approx(table[1][6], rel=1e-12)
    assert bf[2] == pytest.approx(table[2][6], rel=1e-12)


def test_space_requirement_mean_is_n():
    a = sst.rpm_mean(2, "constant:1", 50, initial=[0.0])
    assert a[50] == pytest.approx(50.0)


def test_ett_equals_recurrence():
    ett = sst.ett_extract(2, "log", 100)
    rec = sst.rpm_mean(2, "log", 100)
    assert max(abs(x - y) for x, y in zip(ett, rec)) < 1e-12 * 100


def test_g1_for_beta2_is_3():
    g = sst.y_beta_moments(2, 2.0, 2)
    assert g[1] == pytest.approx(3.0)


def test_sigma2_landscape_values():
    assert sst.sigma2_alpha(0.5) == pytest.approx(8 * math.log(2) / math.pi - math.pi / 2)
    argmax, maxval = sst.sigma2_max()
    assert argmax == pytest.approx(0.682607, abs=1e-3)
    assert maxval == pytest.approx(0.198946, abs=1e-3)


def test_borderline_sigma2():
    assert sst.borderline_sigma2(2) == pytest.approx(4.5 * math.pi - 14)


def test_two_route_variance():
    mk, tol = sst.mk_moments(0.75, 2)
    assert mk[2] == pytest.approx(sst.sigma2_alpha(0.75), abs=1e-8)
    assert tol < 1e-10


def test_airy_wiener():
    airy, wiener = sst.airy_wiener_residuals(8)
    assert airy < 1e-10
    assert wiener < 1e-10


def test_harmonic_square_identity():
    assert sst.harmonic_square_identity_exact(60)


def test_hadamard_symmetry():
    lam_ab, mu_ab = sst.hadamard_power_coeffs(0.4, 0.9, 4)
    lam_ba, mu_ba = sst.hadamard_power_coeffs(0.9, 0.4, 4)
    assert lam_ab == pytest.approx(lam_ba)
    assert mu_ab == pytest.approx(mu_ba)


def test_simulate_deterministic():
    a = sst.simulate("rpm", 2, "log", 100, 2000, seed=7)
    b = sst.simulate("rpm", 2, "log", 100, 2000, seed=7)
    assert a["mean"] == b["mean"]
    exact = sst.rpm_mean(2, "log", 100)[100]
    assert abs(a["mean"] - exact) < 4 * a["se_mean"] + 1e-12


def test_shape_constants():
    c = sst.catalan_shape_constants(20000)
    assert c["var_slope"] == pytest.approx(8 * (1 - math.log(2)))
    assert c["C0"] == pytest.approx(2.0254384677, abs=1e-6)
