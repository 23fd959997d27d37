"""Exterior algebra, Berezin integration and nilpotent substitution."""
import itertools

import numpy as np
import pytest

from supercms import jets
from supercms.errors import DimensionError
from supercms.grassmann import (GrassmannElement, NilpotentShift, abs2, berezin_integrate, from_eta_jet,
                                g_exp, g_mul, nilpotent_substitute, scalar, xi, xi_star)


def test_nilpotency():
    assert g_mul(xi(1, 2), xi(1, 2)) == GrassmannElement(4)


def test_anticommutation():
    assert g_mul(xi(1, 2), xi(2, 2)) == -g_mul(xi(2, 2), xi(1, 2))
    assert g_mul(xi(1, 1), xi_star(1, 1)) == -g_mul(xi_star(1, 1), xi(1, 1))


def test_abs2_square_vanishes():
    one = scalar(1.0, 2)
    a = one + abs2(1, 1)
    assert g_mul(a, a) == one + 2 * abs2(1, 1)


def test_berezin_normalization():
    assert berezin_integrate(scalar(1.0, 2)) == 0
    assert berezin_integrate(abs2(1, 1)) == pytest.approx(1)
    assert berezin_integrate(g_mul(abs2(1, 2), abs2(2, 2))) == pytest.approx(1)
    assert berezin_integrate(g_mul(abs2(2, 3), g_mul(abs2(3, 3), abs2(1, 3)))) == pytest.approx(1)


def test_mismatched_generators():
    with pytest.raises(DimensionError):
        g_mul(xi(1, 1), xi(1, 2))


def _random_homogeneous(rng, n, d):
    e = GrassmannElement(n)
    for mask in range(1 << n):
        if bin(mask).count("1") == d:
            e.coeffs[mask] = rng.normal() + 1j * rng.normal()
    return e


@pytest.mark.parametrize("p,q", [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3)])
def test_graded_commutativity(rng, p, q):
    a, b = _random_homogeneous(rng, 6, p), _random_homogeneous(rng, 6, q)
    assert g_mul(a, b).allclose((-1) ** (p * q) * g_mul(b, a))


def test_associativity(rng):
    a, b, c = (GrassmannElement(4, rng.normal(size=16) + 1j * rng.normal(size=16)) for _ in range(3))
    assert g_mul(g_mul(a, b), c).allclose(g_mul(a, g_mul(b, c)))


def test_berezin_linear_and_only_top(rng):
    n = 4
    for mask in range((1 << n) - 1):
        assert berezin_integrate(GrassmannElement(n, {mask: 1.0})) == 0
    a, b = (GrassmannElement(n, rng.normal(size=16)) for _ in range(2))
    assert berezin_integrate(2 * a - 3j * b) == pytest.approx(2 * berezin_integrate(a) - 3j * berezin_integrate(b))


def test_exp_of_abs2():
    # exp(a |xi|^2) = 1 + a |xi|^2
    e = g_exp(2.5 * abs2(1, 1))
    assert e.allclose(scalar(1.0, 2) + 2.5 * abs2(1, 1))


def test_substitute_linear():
    got = nilpotent_substitute(lambda x: x[0], [0.7], [NilpotentShift(1, 0.3)])
    assert got.allclose(scalar(0.7, 2) + 0.3 * abs2(1, 1))


def test_substitute_square():
    s, a = 0.7, -0.4j
    got = nilpotent_substitute(lambda x: x[0] ** 2, [s], [NilpotentShift(1, a)])
    assert got.allclose(scalar(s * s, 2) + 2 * a * s * abs2(1, 1))


def test_substitute_product():
    s1, s2, a, b = 0.3, -1.1, 0.5, 2j
    got = nilpotent_substitute(lambda x: x[0] * x[1], [s1, s2], [NilpotentShift(1, a), NilpotentShift(2, b)])
    want = (scalar(s1 * s2, 4) + a * s2 * abs2(1, 2) + b * s1 * abs2(2, 2)
            + a * b * g_mul(abs2(1, 2), abs2(2, 2)))
    assert got.allclose(want)


def test_substitute_against_symbolic_polynomial(rng):
    """Berezin integral of a substituted polynomial vs explicit expansion."""
    coef = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    f = lambda x: sum(coef[i, j] * x[0] ** i * x[1] ** j for i in range(3) for j in range(3))
    s, d = [0.4, -0.9], [0.7, -1.3j]
    got = berezin_integrate(nilpotent_substitute(f, s, [NilpotentShift(1, d[0]), NilpotentShift(2, d[1])]))
    # coefficient of eta1 eta2 in f(s1 + d1 eta1, s2 + d2 eta2) = d1 d2 d^2 f / ds1 ds2
    mixed = sum(coef[i, j] * i * j * s[0] ** (i - 1) * s[1] ** (j - 1) for i in range(1, 3) for j in range(1, 3))
    assert got == pytest.approx(d[0] * d[1] * mixed)


def test_eta_jet_round_trip():
    e1 = jets.Jet.variable(0.0, 0, (1, 1))
    e2 = jets.Jet.variable(0.0, 1, (1, 1))
    jet = 2.0 + 3 * e1 - e2 + 5 * e1 * e2
    g = from_eta_jet(jet, [0, 1])
    want = scalar(2.0, 4) + 3 * abs2(1, 2) - abs2(2, 2) + 5 * g_mul(abs2(1, 2), abs2(2, 2))
    assert g.allclose(want)
    assert berezin_integrate(g) == pytest.approx(5)
