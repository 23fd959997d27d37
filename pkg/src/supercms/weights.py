"""Weight functions (Vandermonde, Berezinian square roots) and their log-derivatives.

Every family is a finite product of factors ``(a x_i^d + b x_j^d)^e`` over
the flat coordinate vector ``(s1..., s2...)``, so evaluation and analytic
log-derivatives share one code path.  Each factor uses the principal
branch, and absolute-value signs are dropped.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import jets
from .errors import DomainError, SingularConfigurationError

FAMILIES = (
    "vandermonde",
    "super-gl",
    "gl-osp-plus",
    "gl-osp-minus",
    "two-param",
    "osp-even",
    "osp-odd",
    "orthosymplectic",
)


@dataclass(frozen=True)
class WeightSpec:
    """Which weight to build.

    ``beta1`` is the single exponent for one-parameter families
    (vandermonde, super-gl, osp-even, osp-odd); gl-osp families carry no
    parameter.  ``l`` is the parity for the orthosymplectic family.
    """

    family: str
    beta1: float = 1.0
    beta2: float = 1.0
    c: complex = 1j
    l: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown weight family {self.family!r}")
        if self.beta1 < 0 or self.beta2 < 0:
            raise DomainError("beta parameters must be non-negative")
        if complex(self.c) not in (1j, -1j):
            raise DomainError("c must be +i or -i")
        if self.l not in (0, 1):
            raise DomainError("parity l must be 0 or 1")


@dataclass(frozen=True)
class Factor:
    i: int
    j: Optional[int]
    a: complex
    b: complex
    d: int
    e: float


def _pairs(n):
    return [(p, q) for p in range(n) for q in range(p + 1, n)]


def factors(spec: WeightSpec, k1: int, k2: int) -> list:
    """Factor list of the weight for k1 first-set and k2 second-set coordinates."""
    fam = spec.family
    S = list(range(k1))
    T = [k1 + q for q in range(k2)]
    out = []

    def diffs(idx, e, d=1):
        for p, q in _pairs(len(idx)):
            out.append(Factor(idx[p], idx[q], 1, -1, d, e))

    def cross(coef, e, d=1):
        for p in S:
            for q in T:
                out.append(Factor(p, q, 1, coef, d, e))

    def monos(idx, e):
        for p in idx:
            out.append(Factor(p, None, 1, 0, 1, e))

    if fam == "vandermonde":
        diffs(S + T, spec.beta1)
    elif fam == "super-gl":
        b = spec.beta1
        diffs(S, b), diffs(T, b), cross(-1j, -b)
    elif fam in ("gl-osp-plus", "gl-osp-minus"):
        coef = -1j if fam == "gl-osp-plus" else 1j
        diffs(S, 1.0), diffs(T, 4.0), cross(coef, -2.0)
    elif fam == "two-param":
        b1, b2 = spec.beta1, spec.beta2
        diffs(S, b1), diffs(T, b2), cross(-spec.c, -np.sqrt(b1 * b2))
    elif fam in ("osp-even", "osp-odd"):
        b = spec.beta1
        diffs(S, b, 2), diffs(T, b, 2)
        monos(T if fam == "osp-even" else S, b)
        cross(1, -b, 2)
    elif fam == "orthosymplectic":
        b1, b2 = spec.beta1, spec.beta2
        diffs(S, b1, 2), diffs(T, b2, 2)
        monos(S, b1 * spec.l)
        monos(T, b2 * (1 - spec.l))
        cross(1, -np.sqrt(b1 * b2), 2)
    return [f for f in out if f.e != 0]


def _label(idx, k1):
    return ("s1", idx) if idx < k1 else ("s2", idx - k1)


def _base(f: Factor, x):
    v = f.a * x[f.i] ** f.d
    if f.j is not None:
        v = v + f.b * x[f.j] ** f.d
    return v


def _check_base(f, base, k1):
    if np.any(np.abs(jets.value(base)) == 0):
        pair = (_label(f.i, k1),) + ((_label(f.j, k1),) if f.j is not None else ())
        raise SingularConfigurationError(f"weight factor vanishes at {pair}", pair)


def _flat(s1, s2):
    s1 = list(s1) if s1 is not None else []
    s2 = list(s2) if s2 is not None else []
    return s1 + s2, len(s1), len(s2)


def vandermonde(x) -> complex:
    """prod_{n<m} (x_n - x_m); empty product 1.  Accepts jets."""
    x = list(x)
    out = 1.0
    for n, m in _pairs(len(x)):
        out = (x[n] - x[m]) * out
    return out


def weight_eval(spec: WeightSpec, s1, s2=()):
    """Product formula of the family; coordinates may be jets."""
    x, k1, k2 = _flat(s1, s2)
    out = 1.0 + 0j
    for f in factors(spec, k1, k2):
        base = _base(f, x)
        _check_base(f, base, k1)
        out = jets.power(base, f.e) * out
    return out


def weight_log_gradient(spec: WeightSpec, s1, s2=()):
    """d log w / d x for every flat coordinate (s1 then s2).

    Returns a complex array, or a list of jets when any coordinate is a jet.
    """
    x, k1, k2 = _flat(s1, s2)
    use_jets = any(isinstance(v, jets.Jet) for v in x)
    xv = x if use_jets else [np.asarray(v, dtype=complex) for v in x]
    grad = [0j] * len(xv)

    def dpow(v, d):
        return d * v ** (d - 1) if d > 1 else 1.0

    for f in factors(spec, k1, k2):
        base = _base(f, xv)
        _check_base(f, base, k1)
        grad[f.i] = grad[f.i] + f.e * f.a * dpow(xv[f.i], f.d) / base
        if f.j is not None:
            grad[f.j] = grad[f.j] + f.e * f.b * dpow(xv[f.j], f.d) / base
    if use_jets:
        return grad
    return np.array(grad, dtype=complex)


def weight_logderiv(spec: WeightSpec, s1, s2, which) -> complex:
    """d log w / d s_{p,set}; ``which = ("s1", p)`` or ``("s2", p)`` (0-based)."""
    kind, p = which
    k1 = len(list(s1))
    idx = p if kind == "s1" else k1 + p
    return weight_log_gradient(spec, s1, s2)[idx]


def two_param_cross_exponent(beta1: float, beta2: float) -> float:
    return float(np.sqrt(beta1 * beta2))
