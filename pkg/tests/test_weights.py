"""Weight functions and analytic log-derivatives."""
import numpy as np
import pytest

from supercms import jets
from supercms.errors import DomainError, SingularConfigurationError
from supercms.weights import WeightSpec, vandermonde, weight_eval, weight_log_gradient, weight_logderiv


def test_vandermonde_values():
    assert vandermonde([2, 1]) == 1
    assert vandermonde([0.4]) == 1
    assert vandermonde([3, 2, 1]) == 2


def test_vandermonde_antisymmetry(rng):
    x = list(rng.normal(size=4))
    for a in range(3):
        y = x.copy()
        y[a], y[a + 1] = y[a + 1], y[a]
        assert vandermonde(y) == pytest.approx(-vandermonde(x))


def test_two_param_equals_super_gl_at_unit():
    s1, s2 = [1.0, 0.3], [0.7]
    a = weight_eval(WeightSpec("two-param", 1.0, 1.0, 1j), s1, s2)
    b = weight_eval(WeightSpec("super-gl", 1.0), s1, s2)
    assert a == pytest.approx(b, rel=1e-14)


@pytest.mark.parametrize("beta", [1.0, 2.0, 3.0])
def test_two_param_diagonal_is_super_gl(rng, beta):
    s1, s2 = sorted(rng.normal(size=2), reverse=True), list(rng.normal(size=2))
    a = weight_eval(WeightSpec("two-param", beta, beta, 1j), s1, s2)
    b = weight_eval(WeightSpec("super-gl", beta), s1, s2)
    assert a == pytest.approx(b, rel=1e-12)


def test_two_param_1_4_is_gl_osp_plus(rng):
    for _ in range(5):
        s1, s2 = sorted(rng.normal(size=2), reverse=True), list(rng.normal(size=3))
        a = weight_eval(WeightSpec("two-param", 1.0, 4.0, 1j), s1, s2)
        b = weight_eval(WeightSpec("gl-osp-plus"), s1, s2)
        assert a == pytest.approx(b, rel=1e-12)


def test_two_param_without_second_set():
    s1 = [1.5, 0.2, -0.4]
    a = weight_eval(WeightSpec("two-param", 2.5, 0.7), s1, [])
    assert a == pytest.approx(vandermonde(s1) ** 2.5, rel=1e-13)


def test_conjugation_in_c(rng):
    s1, s2 = sorted(rng.normal(size=2), reverse=True), list(rng.normal(size=2))
    a = weight_eval(WeightSpec("two-param", 1.3, 2.2, 1j), s1, s2)
    b = weight_eval(WeightSpec("two-param", 1.3, 2.2, -1j), s1, s2)
    assert np.conj(a) == pytest.approx(b, rel=1e-12)


def test_vandermonde_logderiv():
    assert weight_logderiv(WeightSpec("vandermonde", 1.0), [2.0, 1.0], [], ("s1", 0)) == pytest.approx(1)


def test_osp_even_has_monomial_term():
    spec = WeightSpec("osp-even", 1.5)
    s1, s2 = [0.5], [0.8]
    g = weight_logderiv(spec, s1, s2, ("s2", 0))
    # cross: -b * 2 t / (s^2 + t^2); monomial: b / t
    want = 1.5 / 0.8 - 1.5 * 2 * 0.8 / (0.25 + 0.64)
    assert g == pytest.approx(want)


FAMILY_CASES = [
    WeightSpec("vandermonde", 1.7),
    WeightSpec("super-gl", 2.3),
    WeightSpec("gl-osp-plus"),
    WeightSpec("gl-osp-minus"),
    WeightSpec("two-param", 0.8, 3.1, 1j),
    WeightSpec("two-param", 0.8, 3.1, -1j),
    WeightSpec("osp-even", 1.4),
    WeightSpec("osp-odd", 2.6),
    WeightSpec("orthosymplectic", 1.2, 2.9, l=0),
    WeightSpec("orthosymplectic", 1.2, 2.9, l=1),
]


@pytest.mark.parametrize("spec", FAMILY_CASES, ids=lambda s: f"{s.family}-{s.l}")
def test_logderiv_matches_jet_of_log(rng, spec):
    s1 = sorted(rng.uniform(0.3, 2.0, size=2), reverse=True)
    s2 = list(rng.uniform(0.3, 2.0, size=2))
    pt = s1 + s2
    j = jets.jet_eval(lambda x: jets.log(weight_eval(spec, x[:2], x[2:])), pt, [1, 1, 1, 1])
    g = weight_log_gradient(spec, s1, s2)
    for a in range(4):
        idx = [0] * 4
        idx[a] = 1
        assert abs(g[a] - j.derivative(idx)) < 1e-10 * max(1, abs(g[a]))


def test_singular_configuration_reports_pair():
    with pytest.raises(SingularConfigurationError):
        weight_eval(WeightSpec("vandermonde", 2.0), [0.5, 0.5])


def test_bad_spec():
    with pytest.raises(DomainError):
        WeightSpec("two-param", c=1.0)
    with pytest.raises(DomainError):
        WeightSpec("nope")
