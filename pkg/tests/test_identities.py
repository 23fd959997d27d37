"""Commutation, invariance and the M_B + M_F balance."""
import numpy as np
import pytest

from supercms.errors import DomainError, SingularConfigurationError
from supercms.identities import (Polynomial, check_B9, check_commut, check_invariance, elementary,
                                 linear, power_sum, random_symmetric, sum_squared)
from supercms.recursion import QuadratureConfig

Q = QuadratureConfig(24)


def test_polynomial_basics():
    p = sum_squared(2)
    assert p([1.0, 2.0]) == 9
    assert p.diff(0)([1.0, 2.0]) == 6
    assert p.is_symmetric([[0, 1]])
    assert not linear([1, 2]).is_symmetric([[0, 1]])
    assert elementary(3, 2)([1, 2, 3]) == 11
    assert power_sum(2, 3)([1, 2]) == 9


def test_random_symmetric_is_symmetric(rng):
    for sizes in ([2], [1, 2], [2, 2]):
        p = random_symmetric(sizes, 3, rng)
        groups, start = [], 0
        for k in sizes:
            groups.append(list(range(start, start + k)))
            start += k
        assert p.is_symmetric(groups)


def test_commut_k1():
    assert check_commut(2.3, 1, power_sum(1, 3), [0.4]).passed


def test_commut_k2_square():
    rep = check_commut(3.0, 2, sum_squared(2), [0.4, -0.9])
    assert rep.residual <= 1e-8


def test_commut_k3_elementary():
    rep = check_commut(1.5, 3, elementary(3, 2), [0.4, -0.9, 1.3])
    assert rep.residual <= 1e-7


@pytest.mark.parametrize("beta", [0.5, 1.0, 2.0, 3.0, 4.0])
@pytest.mark.parametrize("k2", [2, 3])
def test_commut_random(rng, beta, k2):
    f = random_symmetric([k2], 3, rng)
    s2 = list(np.linspace(-1, 1, k2) + rng.uniform(-0.1, 0.1, k2))
    assert check_commut(beta, k2, f, s2, c=complex(rng.choice([1j, -1j])), tol=1e-10).passed


def test_commut_errors():
    with pytest.raises(SingularConfigurationError):
        check_commut(1.0, 2, sum_squared(2), [0.3, 0.3])
    with pytest.raises(DomainError):
        check_commut(1.0, 4, power_sum(4, 2), [0, 1, 2, 3])


def test_invariance_momentum_11():
    # k1 = 1, k2 = 1: f depends on s2' only
    f = Polynomial(1, {(1,): 1j, (0,): 0.5})
    p, l = check_invariance(2.5, ([0.3], [0.8]), f, Q)
    assert p.residual <= 1e-8
    assert l.residual <= 1e-5


def test_invariance_constant():
    p, l = check_invariance(3.0, ([0.3], [0.8]), Polynomial(1, {(0,): 1.0}), Q)
    assert p.passed and l.passed


def test_invariance_tedious_case(rng):
    f = random_symmetric([1, 1], 3, rng)
    p, l = check_invariance(4.0, ([-0.6, 0.5], [0.9]), f, Q)
    assert p.passed and l.passed, (p.residual, l.residual)


@pytest.mark.parametrize("k1,k2", [(1, 2), (2, 2)])
def test_invariance_two_fermions(rng, k1, k2):
    f = random_symmetric([k1 - 1, k2] if k1 > 1 else [k2], 2, rng)
    p, l = check_invariance(1.5, (sorted([-0.6, 0.5][:k1]), [0.9, -0.7]), f, Q)
    assert p.passed and l.passed, (p.residual, l.residual)


def test_invariance_bad_arity():
    with pytest.raises(DomainError):
        check_invariance(1.0, ([0.1], [0.5]), power_sum(2, 1), Q)


@pytest.mark.parametrize("beta", [0.5, 2.0, 3.0, 4.0])
@pytest.mark.parametrize("k2", [1, 2])
def test_B9_corrected_holds(beta, k2):
    rep = check_B9(beta, ([-0.5, 0.7], [0.4, -0.9][:k2]), [0.1])
    assert rep.passed, rep.residual


def test_B9_k1_1_degenerates():
    assert check_B9(3.0, ([0.2], [0.6]), []).passed


def test_B9_printed_fails():
    rep = check_B9(3.0, ([-0.5, 0.7], [0.4]), [0.1], reading="printed")
    assert not rep.passed


def test_B9_independent_values_fail():
    rep = check_B9(3.0, ([-0.5, 0.7], [0.4]), [0.1], evaluation="independent", s2p=[1.3])
    assert not rep.passed


def test_B9_interlacing_required():
    with pytest.raises(DomainError):
        check_B9(3.0, ([-0.5, 0.7], [0.4]), [0.9])
