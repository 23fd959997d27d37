"""Truncated multivariate Taylor arithmetic ("jets").

A :class:`Jet` stores normalized Taylor coefficients ``c[i1, ..., in]`` of a
function at a base point, truncated per variable at ``orders``.  Leading
array axes are batch axes, so a single jet can carry a whole grid of
quadrature nodes at once; the trailing ``len(orders)`` axes index monomials.

Propagation is algebraic: products are truncated convolutions and analytic
functions are applied by composing their univariate Taylor series with the
nilpotent part.  Nothing here uses step sizes.
"""
from __future__ import annotations

from math import comb, factorial
from typing import Callable, Sequence

import numpy as np

from .errors import UnsupportedOrderError

MAX_ORDER = 2


class Jet:
    __array_priority__ = 1000

    def __init__(self, coeffs, orders: Sequence[int], point=None):
        self.coeffs = np.asarray(coeffs, dtype=complex)
        self.orders = tuple(int(o) for o in orders)
        self.point = point
        if self.coeffs.shape[self.coeffs.ndim - self.nvar:] != self.coef_shape:
            raise ValueError(
                f"coefficient shape {self.coeffs.shape} does not end in {self.coef_shape}"
            )

    # -- structure -----------------------------------------------------------
    @property
    def nvar(self) -> int:
        return len(self.orders)

    @property
    def coef_shape(self) -> tuple:
        return tuple(o + 1 for o in self.orders)

    @property
    def batch_shape(self) -> tuple:
        return self.coeffs.shape[: self.coeffs.ndim - self.nvar]

    @property
    def value(self):
        """Constant term, i.e. the function value at the base point."""
        return self.coeffs[(...,) + (0,) * self.nvar]

    def coefficient(self, index: Sequence[int]):
        return self.coeffs[(...,) + tuple(index)]

    def derivative(self, index: Sequence[int]):
        """Mixed partial derivative for a multi-index (coefficient times index factorial)."""
        scale = 1
        for i in index:
            scale *= factorial(i)
        return self.coefficient(index) * scale

    def __repr__(self):
        return f"Jet(orders={self.orders}, batch={self.batch_shape}, value={self.value!r})"

    @classmethod
    def constant(cls, value, orders: Sequence[int]) -> "Jet":
        value = np.asarray(value, dtype=complex)
        shape = tuple(o + 1 for o in orders)
        c = np.zeros(value.shape + shape, dtype=complex)
        c[(...,) + (0,) * len(shape)] = value
        return cls(c, orders)

    @classmethod
    def variable(cls, value, axis: int, orders: Sequence[int]) -> "Jet":
        """The coordinate function ``value + d_axis`` on the given axis."""
        jet = cls.constant(value, orders)
        if orders[axis] >= 1:
            idx = [0] * len(orders)
            idx[axis] = 1
            jet.coeffs[(...,) + tuple(idx)] = 1.0
        return jet

    def extend(self, extra_orders: Sequence[int]) -> "Jet":
        """Append new independent variables (the jet is constant along them)."""
        extra = tuple(int(o) for o in extra_orders)
        c = np.zeros(self.coeffs.shape + tuple(o + 1 for o in extra), dtype=complex)
        c[(...,) + (slice(None),) * self.nvar + (0,) * len(extra)] = self.coeffs
        return Jet(c, self.orders + extra)

    def expand_batch(self, n: int = 1) -> "Jet":
        """Insert ``n`` trailing batch axes of length one."""
        nb = len(self.batch_shape)
        c = self.coeffs.reshape(self.batch_shape + (1,) * n + self.coef_shape)
        assert len(c.shape) == nb + n + self.nvar
        return Jet(c, self.orders)

    def take(self, axes: Sequence[int], index: Sequence[int]):
        """Fix the monomial index along ``axes`` and drop them.

        Returns a plain array if no variable axes remain.
        """
        axes = list(axes)
        sl = [slice(None)] * self.nvar
        for a, i in zip(axes, index):
            sl[a] = i
        c = self.coeffs[(...,) + tuple(sl)]
        rest = tuple(o for k, o in enumerate(self.orders) if k not in axes)
        if not rest:
            return c
        return Jet(c, rest)

    def batch_sum(self, weights, axis: int = -1) -> "Jet":
        """Weighted sum over one batch axis (quadrature reduction)."""
        nb = len(self.batch_shape)
        ax = axis % nb
        w = np.asarray(weights)
        shape = [1] * self.coeffs.ndim
        shape[ax] = w.shape[0]
        c = (self.coeffs * w.reshape(shape)).sum(axis=ax)
        return Jet(c, self.orders)

    # -- arithmetic ----------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, Jet):
            if other.orders != self.orders:
                raise ValueError(f"jet orders differ: {self.orders} vs {other.orders}")
            return other.coeffs
        return Jet.constant(other, self.orders).coeffs

    def __add__(self, other):
        return Jet(self.coeffs + self._lift(other), self.orders)

    __radd__ = __add__

    def __sub__(self, other):
        return Jet(self.coeffs - self._lift(other), self.orders)

    def __rsub__(self, other):
        return Jet(self._lift(other) - self.coeffs, self.orders)

    def __neg__(self):
        return Jet(-self.coeffs, self.orders)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if not isinstance(other, Jet):
            o = np.asarray(other)
            return Jet(self.coeffs * o.reshape(o.shape + (1,) * self.nvar), self.orders)
        return Jet(_truncated_product(self.coeffs, self._lift(other), self.orders), self.orders)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            o = np.asarray(other)
            return Jet(self.coeffs / o.reshape(o.shape + (1,) * self.nvar), self.orders)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, exponent):
        if isinstance(exponent, Jet):
            return (self.log() * exponent).exp()
        return self.power(exponent)

    # -- analytic functions --------------------------------------------------
    @property
    def max_degree(self) -> int:
        return sum(self.orders)

    def compose(self, taylor: Callable[[np.ndarray, int], list]) -> "Jet":
        """Apply g with ``taylor(a, K) = [g(a), g'(a)/1!, ..., g^(K)(a)/K!]``."""
        a = self.value
        K = self.max_degree
        cs = taylor(a, K)
        nil = self.coeffs.copy()
        nil[(...,) + (0,) * self.nvar] = 0.0
        res = Jet.constant(cs[K], self.orders)
        d = Jet(nil, self.orders)
        for j in range(K - 1, -1, -1):
            res = res * d + cs[j]
        return res

    def reciprocal(self) -> "Jet":
        def taylor(a, K):
            inv = 1.0 / a
            return [(-1) ** j * inv ** (j + 1) for j in range(K + 1)]

        return self.compose(taylor)

    def exp(self) -> "Jet":
        def taylor(a, K):
            e = np.exp(a)
            return [e / factorial(j) for j in range(K + 1)]

        return self.compose(taylor)

    def log(self) -> "Jet":
        def taylor(a, K):
            out = [np.log(a)]
            for j in range(1, K + 1):
                out.append((-1) ** (j + 1) / (j * a**j))
            return out

        return self.compose(taylor)

    def power(self, alpha) -> "Jet":
        """Principal-branch power ``exp(alpha * Log(self))``."""
        if isinstance(alpha, (int, np.integer)) or (np.isreal(alpha) and float(np.real(alpha)).is_integer() and np.real(alpha) >= 0):
            n = int(np.real(alpha))
            if n >= 0:
                out = Jet.constant(np.ones(self.batch_shape), self.orders)
                base = self
                while n:
                    if n & 1:
                        out = out * base
                    base = base * base
                    n >>= 1
                return out

        def taylor(a, K):
            loga = np.log(a)
            return [_binom(alpha, j) * np.exp((alpha - j) * loga) for j in range(K + 1)]

        return self.compose(taylor)

    def sqrt(self) -> "Jet":
        return self.power(0.5)

    def sin(self) -> "Jet":
        def taylor(a, K):
            s, c = np.sin(a), np.cos(a)
            cyc = [s, c, -s, -c]
            return [cyc[j % 4] / factorial(j) for j in range(K + 1)]

        return self.compose(taylor)

    def cos(self) -> "Jet":
        def taylor(a, K):
            s, c = np.sin(a), np.cos(a)
            cyc = [c, -s, -c, s]
            return [cyc[j % 4] / factorial(j) for j in range(K + 1)]

        return self.compose(taylor)


def _binom(alpha, j: int):
    out = 1.0
    for k in range(j):
        out = out * (alpha - k) / (k + 1)
    return out


def _truncated_product(a: np.ndarray, b: np.ndarray, orders: tuple) -> np.ndarray:
    nv = len(orders)
    shape = np.broadcast_shapes(a.shape, b.shape)
    out = np.zeros(shape, dtype=complex)
    for idx in np.ndindex(*(o + 1 for o in orders)):
        ai = a[(...,) + idx]
        if not np.any(ai):
            continue
        dst = (...,) + tuple(slice(i, None) for i in idx)
        src = (...,) + tuple(slice(0, o + 1 - i) for i, o in zip(idx, orders))
        out[dst] += ai[(...,) + (None,) * nv] * b[src]
    return out


# -- dispatching helpers: work on jets, arrays and scalars alike ---------------

def _c(x):
    return np.asarray(x, dtype=complex)


def exp(x):
    return x.exp() if isinstance(x, Jet) else np.exp(_c(x))


def log(x):
    return x.log() if isinstance(x, Jet) else np.log(_c(x))


def power(x, alpha):
    """Principal-branch ``x**alpha`` for jets or complex arrays."""
    if isinstance(x, Jet):
        return x.power(alpha)
    x = _c(x)
    if float(np.real(alpha)).is_integer() and np.imag(alpha) == 0 and np.real(alpha) >= 0:
        return x ** int(np.real(alpha))
    return np.exp(alpha * np.log(x))


def sqrt(x):
    return power(x, 0.5)


def sin(x):
    return x.sin() if isinstance(x, Jet) else np.sin(_c(x))


def cos(x):
    return x.cos() if isinstance(x, Jet) else np.cos(_c(x))


def value(x):
    """Body (constant term) of a jet, or the number itself."""
    return x.value if isinstance(x, Jet) else _c(x)


def real_sign(x):
    """Sign of the real part of the body; used for analytic continuation of |x|."""
    return np.sign(np.real(value(x)))


def abs_analytic(x):
    """``|x|`` continued analytically off the real body (multiplies by the body sign)."""
    return x * real_sign(x)


def apply_series(x, derivs: Callable[[np.ndarray, int], list]):
    """Evaluate a univariate function on ``x`` given ``derivs(a, K)`` -> [f(a), f'(a), ..., f^(K)(a)]."""
    if isinstance(x, Jet):
        def taylor(a, K):
            ds = derivs(a, K)
            return [d / factorial(j) for j, d in enumerate(ds)]

        return x.compose(taylor)
    return derivs(_c(x), 0)[0]


def jet_eval(f: Callable, point: Sequence, orders: Sequence[int]) -> Jet:
    """Taylor coefficients of ``f`` at ``point`` up to the per-variable ``orders``.

    ``f`` is called with a list of coordinate jets and must build its result
    from jet-aware operations (the helpers in this module).
    """
    orders = tuple(int(o) for o in orders)
    if len(orders) != len(point):
        raise ValueError("one order per coordinate required")
    if any(o < 0 or o > MAX_ORDER for o in orders):
        raise UnsupportedOrderError(f"orders must lie in [0, {MAX_ORDER}], got {orders}")
    xs = [Jet.variable(p, k, orders) for k, p in enumerate(point)]
    out = f(xs)
    if not isinstance(out, Jet):
        out = Jet.constant(out, orders)
    out.point = np.asarray(point, dtype=complex)
    return out


def bump(x, axis_order: int = 2):
    """Extend ``x`` (jet or number) by one new variable and add it: ``x + d``.

    Returns the new coordinate; the new variable is the last axis.
    """
    if isinstance(x, Jet):
        base = x.extend([axis_order])
        d = Jet.variable(np.zeros(base.batch_shape), base.nvar - 1, base.orders)
        return base + d
    return Jet.variable(x, 0, [axis_order])


def lift_common(values: Sequence, extra_orders: Sequence[int] = ()):
    """Bring a mixture of jets and numbers onto one common jet structure.

    All jets in ``values`` must share their orders.  The result is a list of
    jets with ``extra_orders`` appended, plus the number of pre-existing axes.
    """
    orders = None
    for v in values:
        if isinstance(v, Jet):
            if orders is None:
                orders = v.orders
            elif v.orders != orders:
                raise ValueError("inputs carry different jet structures")
    base = orders or ()
    full = tuple(base) + tuple(extra_orders)
    out = []
    for v in values:
        if isinstance(v, Jet):
            out.append(v.extend(extra_orders) if extra_orders else v)
        else:
            out.append(Jet.constant(v, full))
    return out, len(base)
