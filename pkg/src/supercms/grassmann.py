"""Finite Grassmann algebra on xi_1, xi_1*, ..., xi_k, xi_k* and Berezin integration.

Generators are numbered in the canonical order xi_1, xi_1*, xi_2, xi_2*, ...
so generator ``2(p-1)`` is xi_p and ``2(p-1)+1`` is xi_p*.  An element is a
dense vector of 2**n coefficients indexed by bitmask; a monomial is the
ascending product of its generators.

The nilpotent bilinears |xi_p|^2 = xi_p* xi_p are even and commute, so
inside the recursion they are carried as order-1 jet variables; this module
is the explicit algebra used to define and cross-check that shortcut.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Callable, Sequence

import numpy as np

from . import jets
from .errors import DimensionError

MAX_GENERATORS = 8


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _reorder_sign(a: int, b: int) -> int:
    """Sign of moving the generators of b left past those of a (both ascending)."""
    swaps = 0
    while b:
        low = b & -b
        swaps += _popcount(a & ~((low << 1) - 1))
        b ^= low
    return -1 if swaps & 1 else 1


_SIGN_CACHE: dict = {}


def _table(n: int):
    """Product table: (target index, sign) for every monomial pair, or -1 when it vanishes."""
    if n not in _SIGN_CACHE:
        size = 1 << n
        tgt = np.full((size, size), -1, dtype=np.int64)
        sgn = np.zeros((size, size), dtype=np.int8)
        for a in range(size):
            for b in range(size):
                if a & b == 0:
                    tgt[a, b] = a | b
                    sgn[a, b] = _reorder_sign(a, b)
        _SIGN_CACHE[n] = (tgt, sgn)
    return _SIGN_CACHE[n]


class GrassmannElement:
    """Element of the exterior algebra on ``n_generators`` generators."""

    def __init__(self, n_generators: int, coeffs=None):
        if n_generators < 0 or n_generators > MAX_GENERATORS:
            raise DimensionError(f"at most {MAX_GENERATORS} generators supported")
        self.n_generators = int(n_generators)
        size = 1 << self.n_generators
        if coeffs is None:
            self.coeffs = np.zeros(size, dtype=complex)
        elif isinstance(coeffs, dict):
            self.coeffs = np.zeros(size, dtype=complex)
            for mask, v in coeffs.items():
                self.coeffs[mask] += v
        else:
            self.coeffs = np.array(coeffs, dtype=complex)
            if self.coeffs.shape != (size,):
                raise DimensionError("coefficient vector has the wrong length")

    @property
    def body(self) -> complex:
        return complex(self.coeffs[0])

    @property
    def k2(self) -> int:
        return self.n_generators // 2

    def terms(self) -> dict:
        return {m: complex(c) for m, c in enumerate(self.coeffs) if c != 0}

    def _check(self, other):
        if other.n_generators != self.n_generators:
            raise DimensionError(
                f"generator counts differ: {self.n_generators} vs {other.n_generators}"
            )

    def _coerce(self, other):
        if isinstance(other, GrassmannElement):
            self._check(other)
            return other
        return scalar(other, self.n_generators)

    def __add__(self, other):
        o = self._coerce(other)
        return GrassmannElement(self.n_generators, self.coeffs + o.coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return GrassmannElement(self.n_generators, self.coeffs - o.coeffs)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return GrassmannElement(self.n_generators, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, GrassmannElement):
            return g_mul(self, other)
        return GrassmannElement(self.n_generators, self.coeffs * other)

    def __rmul__(self, other):
        return GrassmannElement(self.n_generators, self.coeffs * other)

    def __eq__(self, other):
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        return self.n_generators == other.n_generators and np.array_equal(self.coeffs, other.coeffs)

    def allclose(self, other, atol=1e-12) -> bool:
        return self.n_generators == other.n_generators and np.allclose(self.coeffs, other.coeffs, atol=atol)

    def degree_part(self, d: int) -> "GrassmannElement":
        keep = np.array([_popcount(m) == d for m in range(1 << self.n_generators)])
        return GrassmannElement(self.n_generators, np.where(keep, self.coeffs, 0))

    def __repr__(self):
        return f"GrassmannElement({self.n_generators}, {self.terms()})"


def g_mul(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    """Graded product with permutation signs."""
    if a.n_generators != b.n_generators:
        raise DimensionError(f"generator counts differ: {a.n_generators} vs {b.n_generators}")
    n = a.n_generators
    tgt, sgn = _table(n)
    out = np.zeros(1 << n, dtype=complex)
    ia = np.nonzero(a.coeffs)[0]
    ib = np.nonzero(b.coeffs)[0]
    for i in ia:
        t = tgt[i, ib]
        ok = t >= 0
        np.add.at(out, t[ok], a.coeffs[i] * b.coeffs[ib[ok]] * sgn[i, ib[ok]])
    return GrassmannElement(n, out)


def scalar(value, n_generators: int) -> GrassmannElement:
    e = GrassmannElement(n_generators)
    e.coeffs[0] = value
    return e


def xi(p: int, k2: int) -> GrassmannElement:
    """Generator xi_p (p counted from 1)."""
    return GrassmannElement(2 * k2, {1 << (2 * (p - 1)): 1.0})


def xi_star(p: int, k2: int) -> GrassmannElement:
    return GrassmannElement(2 * k2, {1 << (2 * (p - 1) + 1): 1.0})


def abs2(p: int, k2: int) -> GrassmannElement:
    """|xi_p|^2 = xi_p* xi_p = -(xi_p xi_p*) in canonical order."""
    return g_mul(xi_star(p, k2), xi(p, k2))


def pair_mask(subset: Sequence[int]) -> int:
    m = 0
    for p in subset:
        m |= 3 << (2 * (p - 1))
    return m


def berezin_integrate(a: GrassmannElement) -> complex:
    """Integral over prod_p d xi_p d xi_p* normalized by int |xi_p|^2 = 1.

    Only the top monomial survives; prod_p |xi_p|^2 equals (-1)^k times the
    canonical top monomial.
    """
    k = a.k2
    top = (1 << (2 * k)) - 1
    return complex((-1) ** k * a.coeffs[top])


def g_apply(a: GrassmannElement, taylor: Callable[[complex, int], list]) -> GrassmannElement:
    """Analytic function of an element: sum_j g^(j)(body)/j! * (soul)^j."""
    n = a.n_generators
    soul = GrassmannElement(n, a.coeffs.copy())
    soul.coeffs[0] = 0
    K = n
    cs = taylor(a.body, K)
    res = scalar(cs[K], n)
    for j in range(K - 1, -1, -1):
        res = g_mul(res, soul) + cs[j]
    return res


def g_exp(a: GrassmannElement) -> GrassmannElement:
    return g_apply(a, lambda x, K: [np.exp(x) / factorial(j) for j in range(K + 1)])


@dataclass(frozen=True)
class NilpotentShift:
    """The shift ``direction * |xi_p|^2`` added to coordinate p (counted from 1)."""

    p: int
    direction: complex


def nilpotent_substitute(f: Callable, s2: Sequence, shifts: Sequence[NilpotentShift]) -> GrassmannElement:
    """Expand f(s2 + shifts) exactly as a polynomial in the |xi_p|^2.

    ``f`` receives a list of coordinate jets (see :func:`jets.jet_eval`).
    The coefficient of prod_{p in S} |xi_p|^2 is prod direction_p times the
    mixed partial of f over S.
    """
    k2 = len(s2)
    seen = set()
    for sh in shifts:
        if sh.p in seen:
            raise ValueError(f"variable {sh.p} shifted twice")
        seen.add(sh.p)
    direction = {sh.p: sh.direction for sh in shifts}
    orders = [1 if (p + 1) in direction else 0 for p in range(k2)]
    jet = jets.jet_eval(f, list(s2), orders)
    out = GrassmannElement(2 * k2)
    for idx in np.ndindex(*[o + 1 for o in orders]):
        subset = [p + 1 for p, i in enumerate(idx) if i]
        coeff = complex(jet.coefficient(idx))
        for p in subset:
            coeff *= direction[p]
        # prod |xi_p|^2 = (-1)^|S| * canonical monomial
        out.coeffs[pair_mask(subset)] += (-1) ** len(subset) * coeff
    return out


def from_eta_jet(jet, eta_axes: Sequence[int]) -> GrassmannElement:
    """Read an order-1 jet in the nilpotents eta_p = |xi_p|^2 as a Grassmann element.

    ``eta_axes[p-1]`` is the jet axis carrying eta_p; the jet must have no
    other variable axes and a scalar batch.
    """
    k2 = len(eta_axes)
    out = GrassmannElement(2 * k2)
    for idx in np.ndindex(*([2] * k2)):
        full = [0] * jet.nvar
        for p, i in enumerate(idx):
            full[eta_axes[p]] = i
        subset = [p + 1 for p, i in enumerate(idx) if i]
        out.coeffs[pair_mask(subset)] = (-1) ** len(subset) * complex(jet.coefficient(full))
    return out


def eta_top(jet, eta_axes: Sequence[int]):
    """Berezin integral of an eta-jet: the coefficient of prod_p eta_p.

    Works on batched jets and drops the eta axes.
    """
    return jet.take(list(eta_axes), [1] * len(eta_axes))
