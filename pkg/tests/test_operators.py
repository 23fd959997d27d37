"""Operator families, their Schroedinger forms and exchange phases."""
import numpy as np
import pytest

from supercms import jets
from supercms.errors import DomainError, SingularConfigurationError
from supercms.operators import (ModelSpec, apply_operator, apply_transposition, com_momentum,
                                conjugated_laplacean, eigen_residual, eigenvalue, exchange_phase,
                                potential)
from supercms.solutions import phi2, plane_wave


def test_plane_wave_n1():
    m = ModelSpec("ordinary", beta=1.7)
    f = lambda s1, s2: jets.exp(2.0j * s1[0])
    x = 0.37
    got = apply_operator(m, f, ([x], []))
    assert got == pytest.approx(-4 * np.exp(2.0j * x))


def test_beta2_interaction_free():
    m = ModelSpec("ordinary", form="schroedinger", beta=2.0)
    assert potential(m, [0.3, -0.4, 1.2]) == 0
    k = [1.3, -0.6, 0.2]
    rep = eigen_residual(m, lambda s1, s2: plane_wave(s1, k), ([0.3, -0.4, 1.2], []), (k, []), tol=1e-12)
    assert rep.passed


def test_superunitary_equal_betas_cross_vanishes():
    s, t = [0.4, -0.2], [0.9]
    for b in (0.5, 1.0, 3.0):
        full = potential(ModelSpec("superunitary", "schroedinger", beta1=b, beta2=b), s, t)
        split = potential(ModelSpec("superunitary", "schroedinger", beta1=b, beta2=b), s, []) + \
            potential(ModelSpec("superunitary", "schroedinger", beta1=b, beta2=b), [], t)
        assert full == pytest.approx(split, abs=1e-13)


@pytest.mark.parametrize("beta", [1.0, 2.0, 4.0])
def test_phi2_eigenfunction(rng, beta):
    m = ModelSpec("ordinary", beta=beta)
    for _ in range(3):
        x = sorted(rng.uniform(-1, 1, 2), reverse=True)
        r = list(rng.uniform(-1.5, 1.5, 2))
        spec = [beta * v / 2 for v in r]
        rep = eigen_residual(m, lambda s1, s2: phi2(beta, s1, r), (x, []), (spec, []), tol=1e-8)
        assert rep.passed, rep.residual


def test_product_solution_decouples(rng):
    # unitary family splits into two independent ordinary problems
    b = 2.0
    m = ModelSpec("unitary", "schroedinger", beta=b)
    k1, k2 = [0.8, -1.1], [0.4]
    f = lambda s1, s2: plane_wave(s1, k1) * plane_wave(s2, k2)
    rep = eigen_residual(m, f, ([0.2, -0.7], [0.5]), (k1, k2), tol=1e-12)
    assert rep.passed


def test_com_momentum_examples():
    pt = ([0.3, -0.5], [0.8, 0.1, 1.4])
    assert com_momentum(1j, lambda s1, s2: s1[0] + s1[1], pt) == pytest.approx(2)
    assert com_momentum(1j, lambda s1, s2: s2[0] + s2[1] + s2[2], pt) == pytest.approx(-3j)
    a = 0.7
    f = lambda s1, s2: jets.exp(1j * a * (s1[0] + s1[1]))
    val = np.exp(1j * a * (0.3 - 0.5))
    assert com_momentum(-1j, f, (pt[0], [])) == pytest.approx(2j * a * val)


@pytest.mark.parametrize("beta,phase", [(2.0, -1), (4.0, 1), (1.0, -1j)])
def test_exchange_phase_values(beta, phase):
    assert exchange_phase(beta) == pytest.approx(phase, abs=1e-15)


@pytest.mark.parametrize("beta", [1.0, 2.0, 3.0])
def test_transposition_on_phi2(beta):
    phi = lambda x, k: complex(phi2(beta, list(x), list(2 * np.asarray(k) / beta)))
    out = apply_transposition(beta, phi, [0.9, -0.3], [1.2, 0.4], 0, 1)
    assert out["pass"] and out["symmetric_phi"]


FAMILY_POINTS = [
    (ModelSpec("ordinary", beta=1.3), ([0.9, 0.2, -0.6], [])),
    (ModelSpec("unitary", beta=2.7), ([0.9, -0.3], [0.5, -0.8])),
    (ModelSpec("superunitary", beta1=0.7, beta2=2.4, c=1j), ([0.9, -0.3], [0.5, 0.8])),
    (ModelSpec("superunitary", beta1=3.1, beta2=1.6, c=-1j), ([0.6], [0.5, -0.8])),
    (ModelSpec("gl-osp", c=1j), ([0.9, -0.3], [0.5])),
    (ModelSpec("gl-osp", c=-1j), ([0.9], [0.5, -0.4])),
    (ModelSpec("osp", beta=1.8, l=0), ([1.1, 0.4], [0.7])),
    (ModelSpec("osp", beta=2.6, l=1), ([1.1], [0.7, 0.3])),
    (ModelSpec("orthosymplectic", beta1=0.9, beta2=2.2, l=0), ([1.1, 0.4], [0.7])),
    (ModelSpec("orthosymplectic", beta1=3.4, beta2=1.5, l=1), ([1.1], [0.7, 0.3])),
]


def _probe(s1, s2):
    # generic non-symmetric test function
    u = sum((0.3 + 0.2 * i) * v for i, v in enumerate(list(s1) + list(s2)))
    return jets.exp(0.5j * u) * (1 + 0.1 * u * u)


@pytest.mark.parametrize("model,pt", FAMILY_POINTS, ids=lambda v: getattr(v, "family", ""))
def test_laplacean_schroedinger_consistency(model, pt):
    lhs = conjugated_laplacean(model, _probe, pt)
    rhs = apply_operator(model.with_form("schroedinger"), _probe, pt)
    assert abs(lhs - rhs) <= 1e-8 * max(1, abs(rhs))


@pytest.mark.parametrize("model,pt", FAMILY_POINTS, ids=lambda v: getattr(v, "family", ""))
def test_linearity(model, pt):
    g = lambda s1, s2: jets.cos(s1[0] - 0.4 * sum(s2)) if s2 else jets.cos(s1[0])
    a, b = 1.5 - 0.5j, -0.7
    lhs = apply_operator(model, lambda s1, s2: a * _probe(s1, s2) + b * g(s1, s2), pt)
    rhs = a * apply_operator(model, _probe, pt) + b * apply_operator(model, g, pt)
    assert lhs == pytest.approx(rhs, rel=1e-12)


def test_orthosymplectic_reduces_to_osp():
    pt = ([1.1, 0.4], [0.7])
    for b, l in [(1.5, 0), (2.5, 1)]:
        big = apply_operator(ModelSpec("orthosymplectic", "schroedinger", beta1=b, beta2=b, l=l), _probe, pt)
        small = apply_operator(ModelSpec("osp", "schroedinger", beta=b, l=l), _probe, pt)
        assert np.sqrt(b) * big == pytest.approx(2 * small, rel=1e-12)


def test_superunitary_without_second_set_is_ordinary():
    pt = ([0.9, 0.2, -0.6], [])
    b = 1.7
    su = apply_operator(ModelSpec("superunitary", "schroedinger", beta1=b, beta2=0.6), _probe, pt)
    ordn = apply_operator(ModelSpec("ordinary", "schroedinger", beta=b), _probe, pt)
    assert np.sqrt(b) * su == pytest.approx(ordn, rel=1e-12)


def test_superunitary_1_4_is_gl_osp():
    pt = ([0.9, -0.3], [0.5, 0.2])
    su = apply_operator(ModelSpec("superunitary", "schroedinger", beta1=1.0, beta2=4.0, c=1j), _probe, pt)
    go = apply_operator(ModelSpec("gl-osp", "schroedinger", c=1j), _probe, pt)
    assert su == pytest.approx(go, rel=1e-12)
    assert eigenvalue(ModelSpec("superunitary", beta1=1.0, beta2=4.0), ([1.0], [2.0])) == \
        eigenvalue(ModelSpec("gl-osp"), ([1.0], [2.0]))


def test_singular_point():
    with pytest.raises(SingularConfigurationError):
        potential(ModelSpec("ordinary", "schroedinger", beta=1.0), [0.5, 0.5])


def test_spec_validation():
    with pytest.raises(DomainError):
        ModelSpec("ordinary")
    with pytest.raises(DomainError):
        ModelSpec("superunitary", beta1=1.0)
    with pytest.raises(DomainError):
        ModelSpec("gl-osp", c=1)
    with pytest.raises(DomainError):
        ModelSpec("osp", beta=1.0, l=2)
