"""Recursion formulas for Phi_N (ordinary space) and rho_{k1 k2} (hyperbola).

Quadrature over the interlacing domain uses moving limits: on
[x_q, x_{q+1}] the node is x'_q = x_q + t L_q with L_q = x_{q+1} - x_q and
t carrying a Gauss-Jacobi rule for t^a (1-t)^a.  The nodes then depend
smoothly on x, so jets in the outer coordinates differentiate straight
through the integral.

Grassmann integration over xi_p, xi_p* is carried by commuting nilpotents
eta_p = |xi_p|^2 held as order-1 jet axes; the Berezin integral is the
coefficient of prod_p eta_p.  The shifted second-set coordinates are
s'_p2 = s_p2 - c eta_p.

The fermionic and mixed measure factors are written as products of
(1 + nilpotent)^e with unit body; their bodies combine to a constant
phase (mu_F) or to integer powers (mu_BF), which are kept exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.special import roots_jacobi

from . import jets
from .errors import AccuracyError, DomainError
from .jets import Jet
from .special import spherical_chi
from .weights import vandermonde

MAX_ORDINARY_N = 4
MAX_K2 = 4


@dataclass(frozen=True)
class QuadratureConfig:
    """Gauss-Jacobi rule per interlacing interval.

    ``refinement_levels`` extra evaluations at doubled node counts are
    compared against ``target_tolerance`` at the top level only.
    """

    nodes: int = 24
    refinement_levels: int = 0
    target_tolerance: float = 1e-8

    def __post_init__(self):
        if self.nodes < 4:
            raise DomainError("at least 4 nodes per interval are required")
        if self.refinement_levels < 0:
            raise DomainError("refinement_levels must be non-negative")

    @staticmethod
    def jacobi_alpha(beta: float) -> float:
        return beta / 2 - 1

    def refined(self, level: int) -> "QuadratureConfig":
        return QuadratureConfig(self.nodes * 2**level, 0, self.target_tolerance)


@dataclass(frozen=True)
class MeasureSpec:
    """Exponents of the superspace recursion measure on the hyperbola."""

    beta: float

    @property
    def mu_B(self) -> dict:
        b = self.beta
        return {"delta_primed": 1.0, "delta": 1 - 4 / b, "cross": 2 / b - 1}

    @property
    def mu_F(self) -> dict:
        b = self.beta
        return {"delta_primed": b**2 / 4, "delta": b**2 / 4 - b, "cross": b / 2 - b**2 / 4}

    @property
    def mu_BF(self) -> dict:
        b = self.beta
        return {"s_s2": 2 - b / 2, "sp_s2": b / 2 - 1, "s_s2p": b / 2 - 1, "sp_s2p": -b / 2}

    @property
    def bosonic_beta(self) -> float:
        return 4 / self.beta


@lru_cache(maxsize=64)
def _gauss_jacobi_unit(n: int, a: float):
    """Nodes and weights on [0, 1] for the weight t^a (1-t)^a."""
    x, w = roots_jacobi(n, a, a)
    return (x + 1) / 2, w / 2 ** (2 * a + 1)


def _expand(v, n):
    if isinstance(v, Jet):
        return v.expand_batch(n) if n else v
    return v


def _reduce(jet, W):
    """Weighted sum over the trailing grid axes (shape of W)."""
    if not isinstance(jet, Jet):
        jet = Jet.constant(jet, ())
    g = W.ndim
    c = jet.coeffs
    nb = c.ndim - jet.nvar
    shape = (1,) * (nb - g) + W.shape + (1,) * jet.nvar
    c = np.broadcast_to(c, np.broadcast_shapes(c.shape, shape))
    axes = tuple(range(nb - g, nb))
    return Jet((c * W.reshape(shape)).sum(axis=axes), jet.orders)


def _to_output(v):
    if isinstance(v, Jet) and v.nvar == 0:
        v = v.coeffs
    if isinstance(v, np.ndarray) and v.ndim == 0:
        return complex(v)
    return v


def _interlacing(x: Sequence, beta_eff: float, n: int, G: float):
    """Nodes, smooth measure factor and grid weights for one recursion level.

    The measure is G |Delta_{N-1}(x')| |Delta_N(x)|^{1-beta}
    prod |x_p - x'_q|^{beta/2-1}; the two singular endpoint factors of
    interval q are absorbed in the Jacobi weight.
    """
    N = len(x)
    g = N - 1
    a = beta_eff / 2 - 1
    t, w = _gauss_jacobi_unit(n, a)
    xe = [_expand(v, g) for v in x]
    nodes, L = [], []
    for qi in range(g):
        shape = [1] * g
        shape[qi] = n
        tq = t.reshape(shape)
        Lq = xe[qi + 1] - xe[qi]
        L.append(Lq)
        nodes.append(xe[qi] + Lq * tq)
    fac = G * jets.power(jets.abs_analytic(vandermonde(xe)), 1 - beta_eff)
    fac = fac * jets.abs_analytic(vandermonde(nodes))
    for qi in range(g):
        fac = fac * jets.power(jets.abs_analytic(L[qi]), 2 * a + 1)
        for p in range(N):
            if p in (qi, qi + 1):
                continue
            fac = fac * jets.power(jets.abs_analytic(xe[p] - nodes[qi]), a)
    W = np.ones((n,) * g)
    for qi in range(g):
        shape = [1] * g
        shape[qi] = n
        W = W * w.reshape(shape)
    return xe, nodes, fac, W


def _check_chamber(x, name="x"):
    v = np.real(np.array([complex(np.ravel(jets.value(e))[0]) for e in x]))
    if np.any(np.diff(v) <= 0):
        raise DomainError(f"{name} must be strictly increasing (fundamental chamber)")


# -- ordinary space -------------------------------------------------------------

@lru_cache(maxsize=128)
def _normalization(beta: float, N: int, nodes: int) -> float:
    if N == 1:
        return 1.0
    x_ref = [float(n) for n in range(N)]
    _, _, fac, W = _interlacing(x_ref, beta, nodes, 1.0)
    integral = complex(_reduce(fac, W).coeffs)
    return 1.0 / integral.real


def normalization_G(beta: float, N: int, q: QuadratureConfig | None = None) -> float:
    """Constant that makes Phi_N(x, 0) = 1, from the measure integral at x = (0, 1, ..., N-1)."""
    if beta <= 0:
        raise DomainError("beta must be positive")
    q = q or QuadratureConfig()
    return _normalization(float(beta), int(N), q.nodes)


def measure_integral(beta: float, x: Sequence[float], q: QuadratureConfig | None = None) -> float:
    """Integral of the unnormalized measure at a chamber point x."""
    q = q or QuadratureConfig()
    _, _, fac, W = _interlacing([float(v) for v in x], beta, q.nodes, 1.0)
    return complex(_reduce(fac, W).coeffs).real


def _phi_ordinary(beta, x, k, nodes):
    N = len(x)
    if N == 1:
        return jets.exp(1j * k[0] * x[0])
    G = _normalization(float(beta), N, nodes)
    xe, xp, fac, W = _interlacing(x, beta, nodes, G)
    inner = _phi_ordinary(beta, xp, k[:-1], nodes)
    phase = jets.exp(1j * k[-1] * (sum(xe) - sum(xp)))
    return _reduce(fac * phase * inner, W)


def _with_refinement(evaluate, q: QuadratureConfig):
    val = evaluate(q.nodes)
    prev = val
    for level in range(1, q.refinement_levels + 1):
        nxt = evaluate(q.nodes * 2**level)
        a, b = np.asarray(jets.value(prev)), np.asarray(jets.value(nxt))
        if np.any(np.abs(a - b) > q.target_tolerance * np.maximum(1.0, np.abs(b))):
            raise AccuracyError(
                f"quadrature not converged: refinement changed the value by {np.max(np.abs(a - b)):.3e}"
            )
        prev = nxt
    return prev


def recurse_ordinary(beta: float, N: int, x, k, q: QuadratureConfig | None = None):
    """Phi_N^{(beta)}(x, k) from the ordinary recursion, normalized to Phi_N(x, 0) = 1.

    ``x`` may contain jets; the result is then a jet in the same variables.
    """
    if beta <= 0:
        raise DomainError("beta must be positive")
    if N < 1 or N > MAX_ORDINARY_N:
        raise DomainError(f"N must lie in [1, {MAX_ORDINARY_N}]")
    x, k = list(x), [float(v) for v in k]
    if len(x) != N or len(k) != N:
        raise DomainError("x and k must have length N")
    _check_chamber(x)
    x, _ = jets.lift_common(x)
    q = q or QuadratureConfig()
    return _to_output(_with_refinement(lambda n: _phi_ordinary(beta, x, k, n), q))


# -- closed forms used as base cases ----------------------------------------------

def phi2_spectral(beta: float, x, k):
    """Phi_2(x, k) = exp(i (x1+x2)(k1+k2)/2) chi^{(beta+1)}((x1-x2)(k1-k2)/2); jet-aware."""
    w = (x[0] - x[1]) * ((k[0] - k[1]) / 2)
    return jets.exp(1j * (x[0] + x[1]) * ((k[0] + k[1]) / 2)) * spherical_chi(beta, w)


def phi_base(beta, x, k, nodes, base="closed"):
    """Phi_{k2}(x, k) for the bottom of the superspace recursion."""
    n = len(x)
    if n == 0:
        return 1.0
    if n == 1:
        return jets.exp(1j * k[0] * x[0])
    if n == 2 and base == "closed":
        return phi2_spectral(beta, x, k)
    # Phi is symmetric in x; the recursion wants chamber order
    bodies = [np.real(np.ravel(jets.value(v))) for v in x]
    order = np.argsort([b[0] for b in bodies])
    for a, b in zip(order[:-1], order[1:]):
        if np.any(bodies[a] >= bodies[b]):
            raise DomainError("base-case coordinates are not consistently ordered")
    return _phi_ordinary(beta, [x[i] for i in order], list(k), nodes)


# -- superspace ---------------------------------------------------------------------

def _one_plus_pow(delta, e):
    return jets.power(1 + delta, e)


def mu_F_factor(beta, s2, eta, c):
    """mu_F with unit body: prod_{p<q}(1+(eta_p-eta_q)/(c d_pq))^{b^2/4}
    prod_{p!=q}(1 - eta_q/(c d_pq))^{b/2-b^2/4}, with d_pq = s_p2 - s_q2."""
    k2 = len(s2)
    out = 1.0
    for p in range(k2):
        for q in range(k2):
            if p == q:
                continue
            d = c * (s2[p] - s2[q])
            if p < q:
                out = out * _one_plus_pow((eta[p] - eta[q]) / d, beta**2 / 4)
            out = out * _one_plus_pow(-eta[q] / d, beta / 2 - beta**2 / 4)
    return out


def mu_BF_factor(beta, s1, s1p, s2, eta, c):
    """mu_BF with the bodies of paired factors combined into integer powers."""
    out = 1.0
    for l in range(len(s2)):
        for p in range(len(s1)):
            b = c * s2[l] - s1[p]
            out = out * b * _one_plus_pow(eta[l] / b, beta / 2 - 1)
        for q in range(len(s1p)):
            b = c * s2[l] - s1p[q]
            out = out * _one_plus_pow(eta[l] / b, -beta / 2) / b
    return out


def _berezin(jet, axes):
    if not axes:
        return jet
    return jet.take(list(axes), [1] * len(axes))


def _super_integral(beta, s1, s2, c, nodes, body):
    """Quadrature + Berezin integral of d mu(s', s) times body(s1e, s1p, s2p, eta)."""
    k1, k2 = len(s1), len(s2)
    vals, nb = jets.lift_common(list(s1) + list(s2), [1] * k2)
    orders = vals[0].orders
    eta = [Jet.variable(0.0, nb + p, orders) for p in range(k2)]
    s1j, s2j = vals[:k1], vals[k1:]
    g = k1 - 1
    if g:
        G = _normalization(float(4 / beta), k1, nodes)
        s1e, s1p, facB, W = _interlacing(s1j, 4 / beta, nodes, G)
        s2e = [_expand(v, g) for v in s2j]
    else:
        s1e, s1p, facB, W = s1j, [], 1.0, None
        s2e = s2j
    s2p = [s2e[p] - c * eta[p] for p in range(k2)]
    integrand = facB * mu_F_factor(beta, s2e, eta, c) * mu_BF_factor(beta, s1e, s1p, s2e, eta, c)
    integrand = integrand * body(s1e, s1p, s2p, eta)
    if W is not None:
        integrand = _reduce(integrand, W)
    if not isinstance(integrand, Jet):
        integrand = Jet.constant(integrand, orders)
    return _berezin(integrand, range(nb, nb + k2))


def _rho_super(beta, s1, s2, r1, r2, c, nodes, base):
    if not len(s1):
        return phi_base(beta, s2, r2, nodes, base)

    def body(s1e, s1p, s2p, eta):
        phase_arg = sum(s1e) - sum(s1p)
        if eta:
            phase_arg = phase_arg + (beta / 2) * sum(eta)
        inner = _rho_super(beta, s1p, s2p, r1[:-1], r2, c, nodes, base)
        return jets.exp(1j * r1[-1] * phase_arg) * inner

    return _super_integral(beta, s1, s2, c, nodes, body)


def super_measure_integral(beta: float, s, f, q: QuadratureConfig | None = None, c: complex = 1j):
    """Integral of d mu(s', s) f(s1', s2') on the hyperbola; s may hold jets.

    ``f(s1p, s2p)`` receives lists of jets (k1-1 and k2 entries).
    """
    s1, s2 = list(s[0]), list(s[1])
    if not s1:
        raise DomainError("the superspace measure needs k1 >= 1")
    q = q or QuadratureConfig()
    out = _with_refinement(
        lambda n: _super_integral(beta, s1, s2, c, n, lambda a, s1p, s2p, e: f(s1p, s2p)), q)
    return _to_output(out)


def recurse_super(beta: float, k1: int, k2: int, s, r, q: QuadratureConfig | None = None,
                  c: complex = 1j, base: str = "closed"):
    """rho_{k1 k2}^{(c, beta)}(s, r) on the hyperbola (beta1, beta2) = (4/beta, beta).

    ``s = (s1, s2)`` and ``r = (r1, r2)`` are the coordinates and the
    spectral parameters in the convention of the superunitary eigenvalue
    -(sum sqrt(beta)/2 r1^2 + sum r2^2/sqrt(beta)).  Coordinates may be jets.
    The recursion bottoms out at Phi_{k2}(s2, r2); ``base="closed"`` uses the
    Bessel closed form for k2 = 2, ``base="recursion"`` the ordinary recursion.
    """
    if beta <= 0:
        raise DomainError("beta must be positive")
    if complex(c) not in (1j, -1j):
        raise DomainError("c must be +i or -i")
    if k2 > MAX_K2:
        raise DomainError(f"k2 <= {MAX_K2} supported")
    s1, s2 = list(s[0]), list(s[1])
    r1, r2 = [float(v) for v in r[0]], [float(v) for v in r[1]]
    if (len(s1), len(s2), len(r1), len(r2)) != (k1, k2, k1, k2):
        raise DomainError("coordinate lengths do not match (k1, k2)")
    if k1:
        _check_chamber(s1, "s1")
    q = q or QuadratureConfig()
    c = complex(c)
    ev = lambda n: _rho_super(beta, s1, s2, r1, r2, c, n, base)
    if k1 <= 1:
        return _to_output(ev(q.nodes))
    return _to_output(_with_refinement(ev, q))


def alt_solution(beta: float, k2: int, s2, r2, q: QuadratureConfig | None = None,
                 c: complex = 1j, phi=None):
    """Berezin integral of mu_F(s2', s2) Phi_{k2}(s2', r2) over the shifts s2' = s2 - c eta.

    ``phi(x, k)`` overrides Phi_{k2} (any jet-aware function), which makes
    linearity checks possible.
    """
    if k2 > MAX_K2:
        raise DomainError(f"k2 <= {MAX_K2} supported")
    q = q or QuadratureConfig()
    s2 = list(s2)
    r2 = [float(v) for v in r2]
    vals, nb = jets.lift_common(s2, [1] * k2)
    orders = vals[0].orders if vals else ()
    eta = [Jet.variable(0.0, nb + p, orders) for p in range(k2)]
    s2p = [vals[p] - c * eta[p] for p in range(k2)]
    f = phi(s2p, r2) if phi is not None else phi_base(beta, s2p, r2, q.nodes)
    integrand = mu_F_factor(beta, vals, eta, c) * f
    return _to_output(_berezin(integrand, range(nb, nb + k2)))
