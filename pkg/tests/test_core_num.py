"""Jets and special functions against finite differences, scipy and mpmath."""
import mpmath
import numpy as np
import pytest
import scipy.special as sp
from hypothesis import given, settings, strategies as st

from supercms import jets
from supercms.errors import AccuracyError, DomainError, UnsupportedOrderError
from supercms.special import (bessel_j, bessel_j_jet, bessel_y, chi_euler, hankel, hankel_jet,
                              spherical_chi, special_value, zpow_hankel)


# -- jets -----------------------------------------------------------------------------

def test_jet_square():
    j = jets.jet_eval(lambda x: x[0] ** 2, [3.0], [2])
    assert j.value == pytest.approx(9)
    assert j.derivative([1]) == pytest.approx(6)
    assert j.derivative([2]) == pytest.approx(2)


def test_jet_plane_wave():
    j = jets.jet_eval(lambda x: jets.exp(2j * x[0]), [0.0], [2])
    got = [j.derivative([n]) for n in range(3)]
    np.testing.assert_allclose(got, [1, 2j, -4], atol=1e-15)


def _richardson_mixed(f, x, y, h=1e-4):
    def d(h):
        return (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4 * h * h)
    return (4 * d(h / 2) - d(h)) / 3


def test_jet_mixed_partial_vs_finite_difference():
    f = lambda a, b: np.sin(a) * np.cos(b)
    j = jets.jet_eval(lambda x: jets.sin(x[0]) * jets.cos(x[1]), [0.3, 0.7], [1, 1])
    fd = _richardson_mixed(f, 0.3, 0.7)
    assert abs(j.derivative([1, 1]) - fd) / abs(fd) < 1e-8


def test_jet_order_limit():
    with pytest.raises(UnsupportedOrderError):
        jets.jet_eval(lambda x: x[0], [0.0], [jets.MAX_ORDER + 1])


@settings(max_examples=40, deadline=None)
@given(st.floats(0.2, 1.5), st.floats(-1.0, 1.0), st.floats(0.3, 2.5))
def test_jet_chain_vs_finite_difference(x0, y0, alpha):
    """exp/power/quotient propagation reproduces finite differences."""
    def g(x, y):
        return np.exp(1j * x * y) * (x + 2) ** alpha / (1 + y * y)

    j = jets.jet_eval(lambda v: jets.exp(1j * v[0] * v[1]) * jets.power(v[0] + 2, alpha) / (1 + v[1] * v[1]),
                      [x0, y0], [2, 2])
    h = 1e-4
    dx = (g(x0 + h, y0) - g(x0 - h, y0)) / (2 * h)
    dxx = (g(x0 + h, y0) - 2 * g(x0, y0) + g(x0 - h, y0)) / h**2
    assert abs(j.derivative([1, 0]) - dx) <= 1e-6 * max(1, abs(dx))
    assert abs(j.derivative([2, 0]) - dxx) <= 1e-5 * max(1, abs(dxx))


# -- Bessel / Hankel --------------------------------------------------------------------

def test_j0_at_zero():
    assert bessel_j(0, 0) == pytest.approx(1)


def test_j_half_closed_form():
    z = 1.3 + 0.2j
    ref = np.sqrt(2 / (np.pi * z)) * np.sin(z)
    assert abs(bessel_j(0.5, z) - ref) / abs(ref) < 1e-12


def test_j1_integral_representation():
    th = np.linspace(0, np.pi, 1_000_001)
    vals = np.cos(th - 2.0 * np.sin(th))
    ref = np.trapezoid(vals, th) / np.pi if hasattr(np, "trapezoid") else np.trapz(vals, th) / np.pi
    assert abs(bessel_j(1, 2.0) - ref) < 1e-8


def test_hankel_half_integer_closed_forms():
    z = 2.0
    ref = -1j * np.sqrt(2 / (np.pi * z)) * np.exp(1j * z)
    assert abs(hankel(1, 0.5, z) - ref) / abs(ref) < 1e-12
    z = 1 + 1j
    ref = np.sqrt(2 / (np.pi * z)) * np.exp(1j * z) * (-1 - 1j / z)
    assert abs(hankel(1, 1.5, z) - ref) / abs(ref) < 1e-10


@pytest.mark.parametrize("nu", [0.0, 0.3, 1.0, 1.5, 2.7])
def test_hankel_average_is_j(nu):
    z = 0.8 + 0.4j
    assert abs((hankel(1, nu, z) + hankel(2, nu, z)) / 2 - bessel_j(nu, z)) < 1e-13


@pytest.mark.parametrize("nu,z", [(0.0, 1.7), (0.5, 2 + 1j), (1.0, 0.4 - 0.9j), (2.3, 3.1), (-0.7, 1.2 + 0.5j),
                                  (4.0, 6.5), (1.5, 10.0)])
def test_against_scipy(nu, z):
    assert abs(bessel_j(nu, z) - sp.jv(nu, z)) <= 1e-12 * max(1, abs(sp.jv(nu, z)))
    assert abs(hankel(1, nu, z) - sp.hankel1(nu, z)) <= 1e-10 * max(1, abs(sp.hankel1(nu, z)))
    assert abs(hankel(2, nu, z) - sp.hankel2(nu, z)) <= 1e-10 * max(1, abs(sp.hankel2(nu, z)))


@pytest.mark.parametrize("n", [0, 1, 2])
def test_integer_y_against_mpmath(n):
    z = 1.9 + 0.3j
    ref = complex(mpmath.bessely(n, z))
    assert abs(bessel_y(n, z) - ref) / abs(ref) < 1e-12


@settings(max_examples=50, deadline=None)
@given(st.floats(0.6, 6.0), st.floats(0.2, 8.0), st.floats(-np.pi, np.pi))
def test_j_recurrence(nu, r, phi):
    z = r * np.exp(1j * phi)
    lhs = bessel_j(nu - 1, z) + bessel_j(nu + 1, z)
    rhs = 2 * nu / z * bessel_j(nu, z)
    assert abs(lhs - rhs) <= 1e-10 * max(1e-3, abs(rhs))


@settings(max_examples=30, deadline=None)
@given(st.floats(0.0, 4.0), st.floats(0.3, 6.0), st.floats(0.05, np.pi - 0.05))
def test_hankel_conjugation(nu, r, phi):
    z = r * np.exp(1j * phi)
    assert abs(np.conj(hankel(1, nu, np.conj(z))) - hankel(2, nu, z)) <= 1e-10 * max(1, abs(hankel(2, nu, z)))


def test_bessel_range_and_domain_errors():
    with pytest.raises(AccuracyError):
        bessel_j(1.0, 25.0)
    with pytest.raises(DomainError):
        hankel(1, 0.5, 0.0)


@pytest.mark.parametrize("kind", [1, 2])
def test_hankel_jet_derivative(kind):
    nu, z0 = 1.5, 0.9 + 0.3j
    j = jets.jet_eval(lambda x: hankel_jet(kind, nu, x[0]), [z0], [2])
    ref = sp.h1vp(nu, z0) if kind == 1 else sp.h2vp(nu, z0)
    ref2 = sp.h1vp(nu, z0, 2) if kind == 1 else sp.h2vp(nu, z0, 2)
    assert abs(j.derivative([1]) - ref) < 1e-11
    assert abs(j.derivative([2]) - ref2) < 1e-10


def test_bessel_jet_derivative():
    j = jets.jet_eval(lambda x: bessel_j_jet(0.7, x[0]), [1.4], [2])
    assert abs(j.derivative([1]) - sp.jvp(0.7, 1.4)) < 1e-12


def test_special_value_record():
    v = special_value("hankel-1", 1.5, 1.0)
    assert v.kind == "hankel-1" and v.value == pytest.approx(complex(sp.hankel1(1.5, 1.0)))


# -- spherical chi ----------------------------------------------------------------------

@pytest.mark.parametrize("beta", [0.5, 1.0, 2.0, 3.7])
def test_chi_at_zero(beta):
    assert spherical_chi(beta, 0.0) == pytest.approx(1)


def test_chi_beta2_is_sinc():
    assert spherical_chi(2.0, 1.0) == pytest.approx(np.sin(1.0), abs=1e-15)


def test_chi_beta1_is_j0():
    assert spherical_chi(1.0, 2.0) == pytest.approx(bessel_j(0, 2.0), abs=1e-15)


@pytest.mark.parametrize("beta", [1.0, 2.5, 4.0])
def test_chi_euler_vs_jet(beta):
    w = 0.8 - 0.3j
    j = jets.jet_eval(lambda x: spherical_chi(beta, x[0]), [w], [2])
    assert abs(chi_euler(beta, w, 1) - w * j.derivative([1])) < 1e-13
    assert abs(chi_euler(beta, w, 2) - (w * j.derivative([1]) + w * w * j.derivative([2]))) < 1e-12


def test_zpow_hankel_matches_scipy():
    z = 1.2 + 0.7j
    assert abs(zpow_hankel(1, 1.5, z) - z**1.5 * sp.hankel1(1.5, z)) < 1e-12
