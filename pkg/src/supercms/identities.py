"""Numerical checks of the Grassmann commutation relation, the measure
invariance identities and the M_B + M_F balance.

Test functions are polynomials with exact derivatives, so both sides of
each identity are evaluated without finite differences: outer derivatives
go through jets, inner operators act on the polynomial symbolically and the
result is evaluated at (jet-valued) shifted coordinates.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import jets
from .errors import DomainError, SingularConfigurationError
from .operators import ModelSpec, apply_operator, com_momentum, make_report, prefactors
from .recursion import QuadratureConfig, mu_F_factor, super_measure_integral
from .weights import WeightSpec, weight_log_gradient

MAX_K2_COMMUT = 3
MAX_K_INVARIANCE = 2


# -- polynomials ---------------------------------------------------------------

@dataclass(frozen=True)
class Polynomial:
    """Polynomial in ``nvars`` variables: {exponent tuple: coefficient}."""

    nvars: int
    terms: dict = field(default_factory=dict)

    def __call__(self, x: Sequence):
        x = list(x)
        if len(x) != self.nvars:
            raise DomainError(f"polynomial expects {self.nvars} variables, got {len(x)}")
        out = 0j
        for exps, coef in self.terms.items():
            term = coef
            for v, e in zip(x, exps):
                for _ in range(e):
                    term = v * term
            out = term + out
        return out

    def diff(self, i: int) -> "Polynomial":
        new = {}
        for exps, coef in self.terms.items():
            if exps[i] == 0:
                continue
            e = list(exps)
            e[i] -= 1
            key = tuple(e)
            new[key] = new.get(key, 0) + coef * exps[i]
        return Polynomial(self.nvars, new)

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_symmetric(self, groups: Sequence[Sequence[int]]) -> bool:
        for g in groups:
            for a, b in itertools.combinations(g, 2):
                perm = list(range(self.nvars))
                perm[a], perm[b] = b, a
                swapped = {tuple(e[perm[k]] for k in range(self.nvars)): c for e, c in self.terms.items()}
                keys = set(swapped) | set(self.terms)
                if any(abs(swapped.get(k, 0) - self.terms.get(k, 0)) > 1e-14 for k in keys):
                    return False
        return True


def _symmetrize(nvars, groups, monomials):
    """Sum of each monomial over all permutations within every group."""
    terms = {}
    perms = [list(itertools.permutations(g)) for g in groups]
    count = int(np.prod([len(p) for p in perms])) if perms else 1
    for exps, coef in monomials:
        for choice in itertools.product(*perms):
            idx = list(range(nvars))
            for g, p in zip(groups, choice):
                for a, b in zip(g, p):
                    idx[a] = b
            key = [0] * nvars
            for a in range(nvars):
                key[idx[a]] = exps[a]
            key = tuple(key)
            terms[key] = terms.get(key, 0) + coef / count
    return Polynomial(nvars, terms)


def power_sum(nvars: int, k: int, scale: complex = 1.0) -> Polynomial:
    """scale * sum_n x_n^k."""
    terms = {}
    for n in range(nvars):
        e = [0] * nvars
        e[n] = k
        terms[tuple(e)] = scale
    return Polynomial(nvars, terms)


def elementary(nvars: int, k: int) -> Polynomial:
    terms = {}
    for sub in itertools.combinations(range(nvars), k):
        e = [0] * nvars
        for n in sub:
            e[n] = 1
        terms[tuple(e)] = 1.0
    return Polynomial(nvars, terms)


def sum_squared(nvars: int) -> Polynomial:
    """(x_1 + ... + x_n)^2."""
    terms = {}
    for a in range(nvars):
        for b in range(nvars):
            e = [0] * nvars
            e[a] += 1
            e[b] += 1
            terms[tuple(e)] = terms.get(tuple(e), 0) + 1.0
    return Polynomial(nvars, terms)


def linear(coefs: Sequence[complex]) -> Polynomial:
    n = len(coefs)
    return Polynomial(n, {tuple(int(a == b) for a in range(n)): complex(c) for b, c in enumerate(coefs)})


def random_symmetric(sizes: Sequence[int], degree: int, rng: np.random.Generator,
                     nterms: int = 4) -> Polynomial:
    """Random polynomial of total degree <= ``degree``, symmetric within each set."""
    nvars = int(sum(sizes))
    groups, start = [], 0
    for k in sizes:
        groups.append(list(range(start, start + k)))
        start += k
    monos = [(tuple([0] * nvars), complex(rng.normal()))]
    for _ in range(nterms):
        e = [0] * nvars
        budget = int(rng.integers(1, degree + 1))
        for _ in range(budget):
            e[int(rng.integers(nvars))] += 1
        monos.append((tuple(e), complex(rng.normal(), rng.normal())))
    return _symmetrize(nvars, groups, monos)


# -- operators on polynomials ---------------------------------------------------------

def laplacean_of(model: ModelSpec, poly: Polynomial, k1: int) -> Callable:
    """x -> (Delta poly)(x) for the Laplacean form of ``model``; jet-aware.

    The first ``k1`` variables are first-set coordinates.
    """
    n = poly.nvars
    d1 = [poly.diff(a) for a in range(n)]
    d2 = [d1[a].diff(a) for a in range(n)]
    P1, P2 = prefactors(model)
    from .operators import weight_spec
    spec = weight_spec(model)

    def apply(x):
        x = list(x)
        g = weight_log_gradient(spec, x[:k1], x[k1:])
        out = 0j
        for a in range(n):
            pa = P1 if a < k1 else P2
            out = pa * (d2[a](x) + g[a] * d1[a](x)) + out
        return out

    return apply


def momentum_of(poly: Polynomial, k1: int, c: complex) -> Callable:
    """x -> (P^{(c)} poly)(x) = sum d/ds_p1 - c sum d/ds_p2."""
    d1 = [poly.diff(a) for a in range(poly.nvars)]

    def apply(x):
        out = 0j
        for a in range(poly.nvars):
            out = (1.0 if a < k1 else -c) * d1[a](x) + out
        return out

    return apply


# -- Grassmann commutation --------------------------------------------------------

def _fermionic_integral(beta, s2, g, c):
    """int d[xi] mu_F(s2, s2') g(s2') with s2' = s2 - c eta; s2 may hold jets."""
    k2 = len(s2)
    vals, nb = jets.lift_common(list(s2), [1] * k2)
    orders = vals[0].orders
    eta = [jets.Jet.variable(0.0, nb + p, orders) for p in range(k2)]
    sp = [vals[p] - c * eta[p] for p in range(k2)]
    integrand = mu_F_factor(beta, vals, eta, c) * g(sp)
    if not isinstance(integrand, jets.Jet):
        integrand = jets.Jet.constant(integrand, orders)
    return integrand.take(list(range(nb, nb + k2)), [1] * k2)


def _check_distinct(values, name):
    v = [complex(x) for x in values]
    for a, b in itertools.combinations(range(len(v)), 2):
        if v[a] == v[b]:
            raise SingularConfigurationError(f"coincident {name} coordinates", ((name, a), (name, b)))


def check_commut(beta: float, k2: int, f: Polynomial, s2, c: complex = 1j, tol: float = 1e-8):
    """Delta_{s2} int d[xi] mu_F f(s2') against int d[xi] mu_F Delta_{s2'} f(s2')."""
    if not 1 <= k2 <= MAX_K2_COMMUT:
        raise DomainError(f"k2 must lie in [1, {MAX_K2_COMMUT}]")
    s2 = [float(v) for v in s2]
    if len(s2) != k2 or f.nvars != k2:
        raise DomainError("s2 and f must have k2 variables")
    _check_distinct(s2, "s2")
    model = ModelSpec("ordinary", beta=beta)
    lhs = apply_operator(model, lambda x, _: _fermionic_integral(beta, x, f, c), s2)
    lap = laplacean_of(model, f, k2)
    rhs = complex(np.asarray(jets.value(_fermionic_integral(beta, s2, lap, c))))
    return make_report("commut", {"beta": float(beta), "k2": k2, "c": _cstr(c)}, s2, 1.0, lhs, rhs, tol)


def _cstr(c):
    return "+i" if complex(c) == 1j else "-i"


# -- invariance identities --------------------------------------------------------

def check_invariance(beta: float, s, f: Polynomial, q: QuadratureConfig | None = None,
                     c: complex = 1j, tol: float = 1e-5):
    """Momentum and Laplacean intertwining identities of the hyperbola measure.

    ``s = (s1, s2)`` with k1 <= 2, k2 <= 2; ``f`` has (k1 - 1) + k2 variables,
    the first k1 - 1 being the primed first-set coordinates.
    Returns (momentum report, laplacean report).
    """
    s1, s2 = [float(v) for v in s[0]], [float(v) for v in s[1]]
    k1, k2 = len(s1), len(s2)
    if not 1 <= k1 <= MAX_K_INVARIANCE or k2 > MAX_K_INVARIANCE:
        raise DomainError(f"need 1 <= k1 <= {MAX_K_INVARIANCE}, k2 <= {MAX_K_INVARIANCE}")
    if f.nvars != k1 - 1 + k2:
        raise DomainError("f must have k1 - 1 + k2 variables")
    if np.any(np.diff(s1) <= 0):
        raise DomainError("s1 must be strictly increasing")
    _check_distinct(s2, "s2")
    q = q or QuadratureConfig()
    kp = k1 - 1
    model = ModelSpec("superunitary", beta1=4 / beta, beta2=beta, c=c)
    meta = {"beta": float(beta), "k1": k1, "k2": k2, "c": _cstr(c), "nodes": q.nodes}

    def integral(g):
        return lambda a, b: super_measure_integral(beta, (a, b), lambda x, y: g(list(x) + list(y)), q, c)

    point = (s1, s2)
    lhs_p = com_momentum(c, integral(f), point)
    rhs_p = complex(np.asarray(jets.value(
        super_measure_integral(beta, point, lambda x, y: momentum_of(f, kp, c)(list(x) + list(y)), q, c))))
    lhs_l = apply_operator(model, integral(f), point)
    lap = laplacean_of(model, f, kp)
    rhs_l = complex(np.asarray(jets.value(
        super_measure_integral(beta, point, lambda x, y: lap(list(x) + list(y)), q, c))))
    rep_p = make_report("invariance-momentum", meta, point, 1.0, lhs_p, rhs_p, tol)
    rep_l = make_report("invariance-laplacean", meta, point, 1.0, lhs_l, rhs_l, tol)
    return rep_p, rep_l


# -- M_B + M_F balance ------------------------------------------------------------

B9_READINGS = ("corrected", "printed")
B9_EVALUATIONS = ("nilpotent", "independent")


def _log_mu_bf(beta, s1, s1p, s2, s2p, c=1j):
    """First and pure second derivatives of log mu_BF in (s1, s1p, s2, s2p) order."""
    k1, kp, k2 = len(s1), len(s1p), len(s2)
    n = k1 + kp + 2 * k2
    g = [0j] * n
    h = [0j] * n

    def add(iy, y, ix, x, e):
        u = c * y - x
        g[iy] = g[iy] + e * c / u
        h[iy] = h[iy] - e * c * c / (u * u)
        g[ix] = g[ix] - e / u
        h[ix] = h[ix] - e / (u * u)

    for l in range(k2):
        iy, iyp = k1 + kp + l, k1 + kp + k2 + l
        for p in range(k1):
            add(iy, s2[l], p, s1[p], 2 - beta / 2)
            add(iyp, s2p[l], p, s1[p], beta / 2 - 1)
        for q in range(kp):
            add(iy, s2[l], k1 + q, s1p[q], beta / 2 - 1)
            add(iyp, s2p[l], k1 + q, s1p[q], -beta / 2)
    return g, h


def _b9_rhs(beta, s1, s1p, s2, s2p):
    k1, kp, k2 = len(s1), len(s1p), len(s2)
    g, h = _log_mu_bf(beta, s1, s1p, s2, s2p)
    P1, P2 = np.sqrt(beta) / 2, 1 / np.sqrt(beta)
    spec = WeightSpec("two-param", 4 / beta, beta, 1j)
    w = weight_log_gradient(spec, s1, s2)
    wp = weight_log_gradient(spec, s1p, s2p)
    # variable index -> (prefactor, weight log-gradient)
    slots = [(a, P1, w[a]) for a in range(k1)]
    slots += [(k1 + kp + a, P2, w[k1 + a]) for a in range(k2)]
    slots += [(k1 + a, P1, wp[a]) for a in range(kp)]
    slots += [(k1 + kp + k2 + a, P2, wp[kp + a]) for a in range(k2)]
    lap = 0j
    for idx, pref, wa in slots:
        lap = pref * (h[idx] + g[idx] * g[idx] + wa * g[idx]) + lap
    out = -lap
    for a in range(kp):
        out = np.sqrt(beta) * g[k1 + a] * g[k1 + a] + out
    for a in range(k2):
        out = (2 / np.sqrt(beta)) * g[k1 + kp + k2 + a] * g[k1 + kp + k2 + a] + out
    return out


def _b9_mf(beta, s1, s1p, s2, s2p):
    b, hb = np.sqrt(beta), beta / 2 - 1
    I = 1j

    def mix(x):
        return sum(1 / (I * x - v) for v in s1) - sum(1 / (I * x - v) for v in s1p)

    def mix2(x):
        return sum(1 / (I * x - v) ** 2 for v in s1) - sum(1 / (I * x - v) ** 2 for v in s1p)

    out = 0j
    k2 = len(s2)
    for i in range(k2):
        Ap, A = mix(s2p[i]), mix(s2[i])
        for j in range(k2):
            if i == j:
                continue
            out = b * hb / (I * s2p[i] - I * s2p[j]) * Ap + out
            out = b * hb**2 * Ap * (1 / (I * s2p[i] - I * s2p[j]) - 1 / (I * s2p[i] - I * s2[j])) + out
            out = b * hb**2 * A * (1 / (I * s2[i] - I * s2[j]) - 1 / (I * s2[i] - I * s2p[j])) + out
            out = -b * hb / (I * s2[i] - I * s2[j]) * A + out
        out = 2 / b * hb * mix2(s2[i]) + out
    return out


def _b9_mb(beta, s1, s1p, s2, s2p, reading):
    b, hb = np.sqrt(beta), beta / 2 - 1
    I = 1j
    k1, kp, k2 = len(s1), len(s1p), len(s2)
    out = 0j
    for i in range(k2):
        for k in range(kp):
            for l in range(kp):
                if k != l:
                    out = b * hb / (s1p[l] - s1p[k]) * (1 / (I * s2[i] - s1p[l]) - 1 / (I * s2p[i] - s1p[l])) + out
        for k in range(k1):
            for l in range(k1):
                if k == l:
                    continue
                if reading == "corrected":
                    br = 1 / (I * s2[i] - s1[l]) - 1 / (I * s2p[i] - s1[l])
                elif l < kp:
                    br = 1 / (I * s2[i] - s1p[l]) - 1 / (I * s2p[i] - s1[l])
                else:
                    continue
                out = 2 / b * hb * (beta / 2 - 2) / (s1[l] - s1[k]) * br + out
        for k in range(k1):
            for l in range(kp):
                out = -2 / b * hb**2 * (1 / ((I * s2[i] - s1p[l]) * (I * s2[i] - s1[k]))
                                        - 1 / ((I * s2p[i] - s1p[l]) * (I * s2p[i] - s1[k]))) + out
        for k in range(kp):
            out = b * hb * (1 / (I * s2[i] - s1p[k]) ** 2 - 1 / (I * s2p[i] - s1p[k]) ** 2) + out
    return out


def b9_sides(beta: float, s1, s1p, s2, s2p, reading: str = "corrected"):
    """(M_B + M_F, right-hand side) at the given coordinates; c = +i. Jet-aware."""
    if reading not in B9_READINGS:
        raise DomainError(f"reading must be one of {B9_READINGS}")
    lhs = _b9_mb(beta, s1, s1p, s2, s2p, reading) + _b9_mf(beta, s1, s1p, s2, s2p)
    return lhs, _b9_rhs(beta, s1, s1p, s2, s2p)


def check_B9(beta: float, s, s1p, reading: str = "corrected", evaluation: str = "nilpotent",
             s2p=None, tol: float = 1e-9):
    """M_B + M_F against the mu_BF expression, on the hyperbola with c = +i.

    ``s = (s1, s2)``; ``s1p`` interlaces s1 (k1 - 1 entries).  With
    ``evaluation="nilpotent"`` the primed second set is s2 - i eta and every
    coefficient of the eta expansion is compared; ``"independent"`` uses the
    real values ``s2p`` instead.  The residual is the largest coefficient
    difference over 1 + |rhs body|.
    """
    if evaluation not in B9_EVALUATIONS:
        raise DomainError(f"evaluation must be one of {B9_EVALUATIONS}")
    s1, s2 = [float(v) for v in s[0]], [float(v) for v in s[1]]
    s1p = [float(v) for v in s1p]
    k1, k2 = len(s1), len(s2)
    if not 1 <= k1 <= MAX_K_INVARIANCE or not 1 <= k2 <= MAX_K_INVARIANCE:
        raise DomainError(f"need 1 <= k1, k2 <= {MAX_K_INVARIANCE}")
    if len(s1p) != k1 - 1:
        raise DomainError("s1p must have k1 - 1 entries")
    if np.any(np.diff(s1) <= 0) or any(not s1[q] < s1p[q] < s1[q + 1] for q in range(k1 - 1)):
        raise DomainError("s1p must interlace the increasing s1")
    _check_distinct(s1 + s1p, "s1")
    _check_distinct(s2, "s2")
    if evaluation == "nilpotent":
        o = (1,) * k2
        eta = [jets.Jet.variable(0.0, p, o) for p in range(k2)]
        primed = [s2[p] - 1j * eta[p] for p in range(k2)]
    else:
        if s2p is None or len(s2p) != k2:
            raise DomainError("independent evaluation needs s2p with k2 entries")
        primed = [float(v) for v in s2p]
        _check_distinct(s2 + primed, "s2")
    lhs, rhs = b9_sides(beta, s1, s1p, s2, primed, reading)
    if evaluation == "nilpotent":
        (lhs, rhs), _ = jets.lift_common([lhs, rhs])
    L = np.atleast_1d(np.asarray(lhs.coeffs if isinstance(lhs, jets.Jet) else lhs)).ravel()
    R = np.atleast_1d(np.asarray(rhs.coeffs if isinstance(rhs, jets.Jet) else rhs)).ravel()
    scale = 1.0 + abs(R[0])
    res = float(np.max(np.abs(L - R)) / scale)
    meta = {"beta": float(beta), "k1": k1, "k2": k2, "reading": reading, "evaluation": evaluation}
    rep = make_report("B9", meta, (s1, s2), 1.0, complex(L[0]), complex(R[0]), tol, scale=1.0)
    rep.residual = res
    rep.passed = bool(res <= tol)
    rep.extra = {"s1p": s1p, "coefficients": int(L.size)}
    return rep
