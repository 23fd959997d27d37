"""Bessel, Hankel and the spherical function chi, jet-aware.

J_nu is summed from its power series for every order (``scipy.special.rgamma``
makes negative non-integer orders work).  Hankel functions use the spherical
closed form at half-integer order, the J-combination for Y_nu at other
non-integer orders, and the logarithmic limit series at integer order.
There is no asymptotic branch, so arguments are limited to ``|z| <= Z_MAX``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

import numpy as np
from scipy.special import gamma, psi, rgamma

from . import jets
from .errors import AccuracyError, DomainError

Z_MAX = 20.0
MAX_TERMS = 400
REL_TOL = 1e-16


@dataclass(frozen=True)
class SpecialValue:
    kind: str  # "bessel-J", "hankel-1" or "hankel-2"
    order: float
    argument: complex
    value: complex


def _check_range(z):
    if np.any(np.abs(z) > Z_MAX):
        raise AccuracyError(f"|z| exceeds the series range {Z_MAX}")


def _series(term0, ratio, z):
    """Sum a hypergeometric-type series term-by-term.

    ``ratio(m)`` maps term m to term m+1 (array valued).  Stops when every
    entry of the term falls below REL_TOL relative to its partial sum.
    """
    term = np.asarray(term0, dtype=complex)
    total = term.copy()
    for m in range(MAX_TERMS):
        term = term * ratio(m)
        total = total + term
        if m > 2 and np.all(np.abs(term) <= REL_TOL * np.maximum(np.abs(total), 1e-300)):
            return total
    raise AccuracyError("power series did not converge")


def _j_scaled(nu, z):
    """J_nu(z) / (z/2)^nu as an entire series in z."""
    q = -(np.asarray(z, dtype=complex) / 2) ** 2
    if float(nu + 1).is_integer() and nu + 1 <= 0:
        # 1/Gamma(nu+1) vanishes; start the sum where it stops vanishing
        m0 = int(-nu)
        t0 = q**m0 / factorial(m0) * rgamma(m0 + nu + 1)
        return _series(t0, lambda m: q / ((m + m0 + 1) * (m + m0 + 1 + nu)), z)
    return _series(np.full(np.shape(q), rgamma(nu + 1), dtype=complex) + 0 * q,
                   lambda m: q / ((m + 1) * (m + 1 + nu)), z)


def bessel_j(nu: float, z):
    """J_nu(z) from the power series, principal branch for (z/2)^nu."""
    z = np.asarray(z, dtype=complex)
    _check_range(z)
    nu = float(nu)
    if nu.is_integer():
        n = int(nu)
        out = _j_scaled(abs(n), z) * (z / 2) ** abs(n)
        return out * (-1) ** n if n < 0 else out
    return _j_scaled(nu, z) * jets.power(z / 2, nu)


def _half_integer(nu) -> bool:
    return float(2 * nu).is_integer() and not float(nu).is_integer()


def _hankel_half(kind, n, z):
    """H_{n+1/2}(z) for integer n >= 0 from the spherical Hankel sum."""
    s = 1j if kind == 1 else -1j
    acc = np.zeros_like(z)
    for k in range(n + 1):
        acc = acc + s**k * factorial(n + k) / (factorial(k) * factorial(n - k)) / (2 * z) ** k
    h = (-s) ** (n + 1) * np.exp(s * z) / z * acc
    return jets.power(2 * z / np.pi, 0.5) * h


def _bessel_y_integer(n, z):
    """Y_n(z), n >= 0, from the logarithmic limit series."""
    half = z / 2
    out = 2 / np.pi * bessel_j(n, z) * np.log(half)
    if n > 0:
        fin = np.zeros_like(z)
        for k in range(n):
            fin = fin + factorial(n - k - 1) / factorial(k) * half ** (2 * k - n)
        out = out - fin / np.pi
    q = -half**2
    term = half**n / factorial(n) + 0 * z
    total = (psi(1) + psi(n + 1)) * term
    for k in range(1, MAX_TERMS):
        term = term * q / (k * (n + k))
        inc = (psi(k + 1) + psi(n + k + 1)) * term
        total = total + inc
        if k > 2 and np.all(np.abs(inc) <= REL_TOL * np.maximum(np.abs(total), 1e-300)):
            break
    else:
        raise AccuracyError("Y_n series did not converge")
    return out - total / np.pi


def bessel_y(nu: float, z):
    z = np.asarray(z, dtype=complex)
    nu = float(nu)
    if nu.is_integer():
        n = int(nu)
        y = _bessel_y_integer(abs(n), z)
        return y * (-1) ** n if n < 0 else y
    return (bessel_j(nu, z) * np.cos(nu * np.pi) - bessel_j(-nu, z)) / np.sin(nu * np.pi)


def hankel(kind: int, nu: float, z):
    """Hankel function H^(kind)_nu(z), kind 1 or 2."""
    if kind not in (1, 2):
        raise DomainError("kind must be 1 or 2")
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise DomainError("Hankel functions are singular at z = 0")
    _check_range(z)
    nu = float(nu)
    if _half_integer(nu):
        if nu > 0:
            return _hankel_half(kind, int(nu - 0.5), z)
        # H1_{-mu} = exp(i mu pi) H1_mu, H2_{-mu} = exp(-i mu pi) H2_mu
        mu = -nu
        ph = np.exp((1j if kind == 1 else -1j) * mu * np.pi)
        return ph * _hankel_half(kind, int(mu - 0.5), z)
    sgn = 1j if kind == 1 else -1j
    return bessel_j(nu, z) + sgn * bessel_y(nu, z)


def special_value(kind: str, nu: float, z) -> SpecialValue:
    if kind == "bessel-J":
        v = bessel_j(nu, z)
    elif kind in ("hankel-1", "hankel-2"):
        v = hankel(int(kind[-1]), nu, z)
    else:
        raise DomainError(f"unknown kind {kind!r}")
    return SpecialValue(kind, float(nu), complex(z), complex(v))


# -- derivatives and jet support ----------------------------------------------

def _derivative_stack(f, nu, a, K):
    """[f_nu(a), f_nu'(a), ...] using f^(j) = 2^-j sum_k (-1)^k C(j,k) f_{nu-j+2k}."""
    out = []
    for j in range(K + 1):
        acc = 0
        for k in range(j + 1):
            acc = acc + (-1) ** k * comb(j, k) * f(nu - j + 2 * k, a)
        out.append(acc / 2**j)
    return out


def bessel_j_jet(nu, z):
    """J_nu applied to a jet (or number)."""
    return jets.apply_series(z, lambda a, K: _derivative_stack(bessel_j, nu, a, K))


def hankel_jet(kind, nu, z):
    """H^(kind)_nu applied to a jet (or number)."""
    f = lambda n, a: hankel(kind, n, a)
    return jets.apply_series(z, lambda a, K: _derivative_stack(f, nu, a, K))


def _g_series(nu, y):
    """G_nu(y) = Gamma(nu+1) sum_m (-y/4)^m / (m! Gamma(m+nu+1)); entire, G_nu(0) = 1."""
    y = np.asarray(y, dtype=complex)
    _check_range(np.sqrt(np.abs(y)))
    q = -y / 4
    return _series(np.ones(np.shape(y), dtype=complex), lambda m: q / ((m + 1) * (m + 1 + nu)), y)


def _g_derivs(nu, y, K):
    # G_nu' = -G_{nu+1} / (4 (nu+1)), iterated
    out, scale = [], 1.0
    for j in range(K + 1):
        out.append(scale * _g_series(nu + j, y))
        scale = scale * (-1.0 / (4 * (nu + j + 1)))
    return out


def chi_of_square(beta: float, y):
    """chi^(beta+1)(sqrt(y)) as an entire function of y = w^2 (jet-aware)."""
    nu = (beta - 1) / 2
    return jets.apply_series(y, lambda a, K: _g_derivs(nu, a, K))


def spherical_chi(beta: float, w):
    """chi^(beta+1)(w) = 2^nu Gamma(nu+1) J_nu(w) / w^nu with nu = (beta-1)/2.

    Evaluated through the even series in w, so w = 0 gives the limit 1.
    Accepts jets.
    """
    if beta <= 0:
        raise DomainError("beta must be positive")
    return chi_of_square(beta, w * w)


def chi_log_derivative(beta: float, w):
    """w d/dw log chi(w) = -w^2 G_{nu+1}(w^2) / (2 (nu+1) G_nu(w^2))."""
    nu = (beta - 1) / 2
    y = np.asarray(w, dtype=complex) ** 2
    return -y * _g_series(nu + 1, y) / (2 * (nu + 1) * _g_series(nu, y))


def chi_euler(beta: float, w, power: int = 1):
    """(w d/dw)^power chi(w), analytic (no jets).  power in {0, 1, 2}."""
    nu = (beta - 1) / 2
    y = np.asarray(w, dtype=complex) ** 2
    g0, g1, g2 = _g_derivs(nu, y, 2)
    # w d/dw = 2 y d/dy
    if power == 0:
        return g0
    if power == 1:
        return 2 * y * g1
    if power == 2:
        return 4 * y * g1 + 4 * y * y * g2
    raise ValueError("power must be 0, 1 or 2")


def zpow_hankel(kind: int, nu: float, z):
    """z^nu H^(kind)_nu(z) (principal branch), jet-aware."""
    return jets.power(z, nu) * hankel_jet(kind, nu, z)


__all__ = [
    "SpecialValue", "special_value", "bessel_j", "bessel_y", "hankel",
    "bessel_j_jet", "hankel_jet", "spherical_chi", "chi_of_square",
    "chi_log_derivative", "chi_euler", "zpow_hankel", "gamma", "Z_MAX",
]
