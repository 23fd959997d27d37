"""Closed-form eigenfunctions.

Spectral conventions: the hyperbola forms ``rho11_hyperbola``,
``rho12_hyperbola`` and ``phi2`` take r as written in their formulas and
represent the eigenfunction at spectral parameters (r1, beta r2 / 2);
``rho11_general`` and ``plane_wave`` take the spectral parameters directly.
All functions accept jets in the coordinates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import jets
from .errors import DegenerateParametersError, DomainError
from .recursion import phi2_spectral
from .special import chi_euler, zpow_hankel
from .weights import vandermonde


def plane_wave(x, k):
    """exp(i sum_n x_n k_n)."""
    return jets.exp(1j * sum(xn * kn for xn, kn in zip(x, k)))


def phi2(beta: float, s, r):
    """Phi_2(s, beta r / 2) = exp(i beta (s1+s2)(r1+r2)/4) chi^{(beta+1)}(beta z / 4)."""
    return phi2_spectral(beta, s, [beta * r[0] / 2, beta * r[1] / 2])


def hciz_phi(x, k):
    """Phi_N at beta = 2: prod_{n<N} n! det[exp(i x_n k_m)] / (i^{N(N-1)/2} Delta(x) Delta(k))."""
    x, k = np.asarray(x, float), np.asarray(k, float)
    N = len(x)
    if len(k) != N:
        raise DomainError("x and k must have equal length")
    dx, dk = vandermonde(x), vandermonde(k)
    if dx == 0 or dk == 0:
        raise DegenerateParametersError("hciz_phi needs distinct x and distinct k")
    const = math.prod(math.factorial(n) for n in range(1, N))
    det = np.linalg.det(np.exp(1j * np.outer(x, k)))
    return complex(const * det / ((1j) ** (N * (N - 1) // 2) * dx * dk))


def nu_order(beta1: float, beta2: float) -> float:
    """Hankel order sqrt(beta1 beta2 / 4) + 1/2."""
    return float(np.sqrt(beta1 * beta2 / 4) + 0.5)


def z_argument(beta1, beta2, s, r):
    """z = (sqrt(b2) r11 - i sqrt(b1) r12)/(sqrt(b2) - sqrt(b1)) * (s11 - i s12)."""
    a1, a2 = np.sqrt(beta1), np.sqrt(beta2)
    return (a2 * r[0] - 1j * a1 * r[1]) / (a2 - a1) * (s[0] - 1j * s[1])


def rho11_general(beta1: float, beta2: float, branch: str, s, r):
    """(1,1) solution for arbitrary (beta1, beta2), c = +i.

    ``s = (s11, s12)``, ``r = (r11, r12)`` (spectral).  Branch '+' pairs
    exp(+...) with H^(1), branch '-' pairs exp(-...) with H^(2).
    """
    if branch not in ("+", "-"):
        raise DomainError("branch must be '+' or '-'")
    a1, a2 = np.sqrt(beta1), np.sqrt(beta2)
    if abs(a1 - a2) < 1e-12:
        raise DegenerateParametersError("rho11_general is singular at beta1 = beta2")
    sign = 1 if branch == "+" else -1
    kind = 1 if branch == "+" else 2
    nu = nu_order(beta1, beta2)
    z = z_argument(beta1, beta2, s, r)
    expo = sign * 1j / (a1 - a2) * (a1 * s[0] - 1j * a2 * s[1]) * (r[0] - 1j * r[1])
    pref = abs(a1 - a2) ** (np.sqrt(beta1 * beta2) / 2)
    return pref * jets.exp(expo) * zpow_hankel(kind, nu, z)


def rho11_hyperbola(beta: float, s, r, c: complex = 1j):
    """rho_11 at spectral (r11, beta r12 / 2) from the recursion on the hyperbola.

    exp(i r11 s11 + i beta r12 s12 / 2) [(beta/2 - 1) + (i beta/2)(c s12 - s11)(r11 - c r12)]
    """
    expo = jets.exp(1j * r[0] * s[0] + 1j * beta * r[1] * s[1] / 2)
    return expo * ((beta / 2 - 1) + (1j * beta / 2) * (c * s[1] - s[0]) * (r[0] - c * r[1]))


def rho12_hyperbola(beta: float, s, r):
    """rho_12 at spectral (r11, beta r2 / 2), c = +i, closed form.

    ``s = (s11, s12, s22)``, ``r = (r11, r12, r22)``.  z d/dz on chi is
    evaluated analytically.  Not jet-aware in z d/dz; use rho12_via_L for jets.
    """
    s1, s12, s22 = s
    r1, r12, r22 = r
    z = (s12 - s22) * (r12 - r22)
    w = beta * z / 4
    chi = chi_euler(beta, w, 0)
    theta = chi_euler(beta, w, 1)
    S, P = s12 + s22, r12 + r22
    expo = np.exp(1j * r1 * s1 + 1j * beta / 4 * P * S)
    k = beta / 2 - 1
    first = k * ((beta - 1) * chi + theta - 1j * beta * (r1 - 1j * P / 2) * (s1 - 1j * S / 2) * chi)
    second = -(beta**2) / 4 * (r1 - 1j * r12) * (s1 - 1j * s12) * (r1 - 1j * r22) * (s1 - 1j * s22) * chi
    return complex(expo * (first + second))


def rho12_from_phi(beta: float, s1, s2, r1, phi_jet_fn: Callable, c: complex = 1j):
    """Apply the Grassmann-integrated operator L to a jet-aware function of s2.

    ``phi_jet_fn(x)`` returns Phi_2 on a list of two coordinate jets.
    L Phi = exp(i r11 s11) [D_1 D_2 Phi + (beta/2)/(c d) (R_2 - R_1)], with
    D_l = k + A_l (i beta r1/2 - c d_l), A_l = c s_l2 - s11, k = beta/2 - 1.
    """
    (a0, a1, s1l), nb = jets.lift_common([s2[0], s2[1], s1], [1, 1])
    orders = a0.orders
    batch = a0.batch_shape
    d0 = jets.Jet.variable(np.zeros(batch), nb, orders)
    d1 = jets.Jet.variable(np.zeros(batch), nb + 1, orders)
    J = phi_jet_fn([a0 + d0, a1 + d1])
    ax = [nb, nb + 1]
    P = J.take(ax, [0, 0])
    P1 = J.take(ax, [1, 0])
    P2 = J.take(ax, [0, 1])
    P12 = J.take(ax, [1, 1])
    x1, x2, y = a0.take(ax, [0, 0]), a1.take(ax, [0, 0]), s1l.take(ax, [0, 0])
    k = beta / 2 - 1
    b = 1j * beta * r1 / 2
    A1 = c * x1 - y
    A2 = c * x2 - y
    dd = (k + A1 * b) * (k + A2 * b) * P - c * (k + A1 * b) * A2 * P2 \
        - c * (k + A2 * b) * A1 * P1 + c * c * A1 * A2 * P12
    R2 = A1 * (k * P + A2 * (b * P - c * P2))
    R1 = A2 * (k * P + A1 * (b * P - c * P1))
    return jets.exp(1j * r1 * y) * (dd + (beta / 2) / (c * (x1 - x2)) * (R2 - R1))


def rho12_via_L(beta: float, s, r, c: complex = 1j):
    """rho_12 at spectral (r11, beta r2/2) as L^{(beta)} applied to Phi_2(s2, beta r2/2)."""
    s1, s12, s22 = s
    r1, r12, r22 = r
    out = rho12_from_phi(beta, s1, [s12, s22], r1, lambda x: phi2(beta, x, [r12, r22]), c)
    if isinstance(out, jets.Jet) and out.nvar == 0:
        out = out.coeffs
    if isinstance(out, np.ndarray) and out.ndim == 0:
        return complex(out)
    return out


@dataclass(frozen=True)
class ClosedSolution:
    """A closed-form eigenfunction with its parameters, callable as f(s, r)."""

    kind: str
    params: tuple
    branch: str = "+"

    def __call__(self, s, r):
        if self.kind == "plane-wave":
            return plane_wave(s, r)
        if self.kind == "phi2":
            return phi2(self.params[0], s, r)
        if self.kind == "rho11-general":
            return rho11_general(self.params[0], self.params[1], self.branch, s, r)
        if self.kind == "rho11-hyperbola":
            return rho11_hyperbola(self.params[0], s, r)
        if self.kind == "rho12-hyperbola":
            return rho12_hyperbola(self.params[0], s, r)
        if self.kind == "rho12-via-L":
            return rho12_via_L(self.params[0], s, r)
        raise DomainError(f"unknown closed solution {self.kind!r}")


def conjugation_partner(sol: ClosedSolution, s, r):
    """Arguments (solution, s, r) whose value equals conj(sol(s, r)).

    Complex conjugation reverses s2 and one spectral component; for the
    general rho11 it also exchanges the Hankel branch.
    """
    s, r = list(s), list(r)
    s_new = [s[0]] + [-v for v in s[1:]]
    if sol.kind == "rho11-general":
        other = "-" if sol.branch == "+" else "+"
        return ClosedSolution(sol.kind, sol.params, other), s_new, [r[0]] + [-v for v in r[1:]]
    if sol.kind in ("rho11-hyperbola", "rho12-hyperbola", "rho12-via-L"):
        return sol, s_new, [-r[0]] + r[1:]
    raise DomainError(f"no conjugation rule for {sol.kind!r}")


def conjugation_residuals(sol: ClosedSolution, s, r) -> dict:
    """|conj f(s1, s2, r) - f(s1, -s2, r)| (literal) and against the conjugation partner."""
    v = complex(sol(s, r))
    s = list(s)
    lit = complex(sol([s[0]] + [-x for x in s[1:]], r))
    p, s2, r2 = conjugation_partner(sol, s, r)
    cor = complex(p(s2, r2))
    scale = max(1.0, abs(v))
    return {"literal": abs(np.conj(v) - lit) / scale, "corrected": abs(np.conj(v) - cor) / scale}
