"""Radial Laplaceans and their Schroedinger forms, applied through jets.

A test function is called as ``f(s1, s2)`` with two lists of coordinate
jets and must be built from jet-aware operations.  For the ordinary family
``s2`` is empty and ``s1`` holds the N positions.

Laplacean form:   sum_a P_a [d_a^2 f + (d_a log w) d_a f]
Schroedinger form: sum_a P_a d_a^2 f + V f
"""
from __future__ import annotations

from dataclasses import dataclass, field, asdict
from typing import Callable, Optional, Sequence

import numpy as np

from . import jets
from .errors import DomainError, SingularConfigurationError
from .weights import WeightSpec, weight_eval, weight_log_gradient

FAMILIES = ("ordinary", "unitary", "superunitary", "gl-osp", "osp", "orthosymplectic")
FORMS = ("laplacean", "schroedinger")


@dataclass(frozen=True)
class ModelSpec:
    """Operator family and its parameters.

    ``beta`` is used by the one-parameter families (ordinary, unitary, osp);
    ``beta1``/``beta2`` by superunitary and orthosymplectic; gl-osp only
    needs ``c``.  ``l`` is the parity of the osp-type families.
    """

    family: str
    form: str = "laplacean"
    beta: Optional[float] = None
    beta1: Optional[float] = None
    beta2: Optional[float] = None
    c: complex = 1j
    l: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown operator family {self.family!r}")
        if self.form not in FORMS:
            raise DomainError(f"unknown form {self.form!r}")
        if complex(self.c) not in (1j, -1j):
            raise DomainError("c must be +i or -i")
        if self.family in ("ordinary", "unitary", "osp"):
            if self.beta is None or self.beta <= 0:
                raise DomainError(f"{self.family} requires beta > 0")
        if self.family in ("superunitary", "orthosymplectic"):
            if self.beta1 is None or self.beta2 is None or self.beta1 <= 0 or self.beta2 <= 0:
                raise DomainError(f"{self.family} requires beta1, beta2 > 0")
        if self.l not in (0, 1):
            raise DomainError("parity l must be 0 or 1")

    def with_form(self, form: str) -> "ModelSpec":
        return ModelSpec(self.family, form, self.beta, self.beta1, self.beta2, self.c, self.l)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["c"] = "+i" if complex(self.c) == 1j else "-i"
        return {k: v for k, v in d.items() if v is not None}


def weight_spec(model: ModelSpec) -> WeightSpec:
    fam = model.family
    if fam == "ordinary":
        return WeightSpec("vandermonde", model.beta)
    if fam == "unitary":
        return WeightSpec("super-gl", model.beta)
    if fam == "superunitary":
        return WeightSpec("two-param", model.beta1, model.beta2, model.c)
    if fam == "gl-osp":
        return WeightSpec("gl-osp-plus" if complex(model.c) == 1j else "gl-osp-minus")
    if fam == "osp":
        return WeightSpec("osp-even" if model.l == 0 else "osp-odd", model.beta)
    return WeightSpec("orthosymplectic", model.beta1, model.beta2, l=model.l)


def prefactors(model: ModelSpec) -> tuple:
    """Kinetic prefactors (first set, second set)."""
    fam = model.family
    if fam in ("ordinary", "unitary"):
        return 1.0, 1.0
    if fam == "gl-osp":
        return 1.0, 0.5
    if fam == "osp":
        return 0.5, 0.5
    return 1 / np.sqrt(model.beta1), 1 / np.sqrt(model.beta2)


def eigenvalue(model: ModelSpec, spectral) -> complex:
    """Right-hand-side eigenvalue for spectral parameters ``(r1, r2)``."""
    r1, r2 = _split(spectral)
    a = np.sum(np.square(r1)) if len(r1) else 0.0
    b = np.sum(np.square(r2)) if len(r2) else 0.0
    fam = model.family
    if fam in ("ordinary", "unitary"):
        return -(a + b)
    if fam == "gl-osp":
        return -(a + b / 2)
    if fam == "osp":
        return -2 * (a + b)
    return -(a / np.sqrt(model.beta1) + b / np.sqrt(model.beta2))


def _split(point):
    if isinstance(point, tuple) and len(point) == 2 and all(
        np.ndim(p) == 1 or isinstance(p, (list, tuple)) for p in point
    ):
        s1, s2 = point
    else:
        s1, s2 = point, ()
    return [complex(v) for v in s1], [complex(v) for v in s2]


def _inv_sq(d, label):
    if d == 0:
        raise SingularConfigurationError(f"coincident coordinates {label}", label)
    return 1 / d**2


def potential(model: ModelSpec, s1, s2=()) -> complex:
    """The explicit potential V of the Schroedinger form."""
    s, t = list(s1), list(s2)
    fam = model.family
    pairs = lambda x: [(p, q) for p in range(len(x)) for q in range(p + 1, len(x))]
    V = 0j

    def pair_sum(x, name):
        return sum(_inv_sq(x[p] - x[q], ((name, p), (name, q))) for p, q in pairs(x))

    def cross_sum(c):
        return sum(
            _inv_sq(s[p] - c * t[q], (("s1", p), ("s2", q)))
            for p in range(len(s)) for q in range(len(t))
        )

    def sq_pair_sum(x, name):
        out = 0j
        for p, q in pairs(x):
            den = x[p] ** 2 - x[q] ** 2
            out += (2 * x[p] ** 2 + 2 * x[q] ** 2) * _inv_sq(den, ((name, p), (name, q)))
        return out

    def inv_half_sq(x, name):
        return sum(0.5 * _inv_sq(v, ((name, p),)) for p, v in enumerate(x))

    def sq_cross(kind):
        out = 0j
        for p in range(len(s)):
            for q in range(len(t)):
                den = s[p] ** 2 + t[q] ** 2
                lab = (("s1", p), ("s2", q))
                if kind == "ratio":
                    out += (s[p] ** 2 - t[q] ** 2) * _inv_sq(den, lab)
                else:
                    if den == 0:
                        raise SingularConfigurationError("pole", lab)
                    out += 1 / den
        return out

    if fam == "ordinary":
        b = model.beta
        V = -b * (b / 2 - 1) * pair_sum(s + t, "s1")
    elif fam == "unitary":
        b = model.beta
        V = -b * (b / 2 - 1) * (pair_sum(s, "s1") + pair_sum(t, "s2"))
    elif fam == "superunitary":
        b1, b2, c = model.beta1, model.beta2, complex(model.c)
        a1, a2 = np.sqrt(b1), np.sqrt(b2)
        V = (
            -a1 * (b1 / 2 - 1) * pair_sum(s, "s1")
            - a2 * (b2 / 2 - 1) * pair_sum(t, "s2")
            + 0.5 * (a1 - a2) * (0.5 * a1 * a2 + 1) * cross_sum(c)
        )
    elif fam == "gl-osp":
        c = complex(model.c)
        V = 0.5 * pair_sum(s, "s1") - 2 * pair_sum(t, "s2") - cross_sum(c)
    elif fam == "osp":
        b = model.beta
        mono = inv_half_sq(t, "s2") if model.l == 0 else inv_half_sq(s, "s1")
        V = -(b / 2) * (b / 2 - 1) * (sq_pair_sum(s, "s1") + sq_pair_sum(t, "s2") + mono)
    elif fam == "orthosymplectic":
        b1, b2, l = model.beta1, model.beta2, model.l
        a1, a2 = np.sqrt(b1), np.sqrt(b2)
        V = (
            -a1 * (b1 / 2 - 1) * (sq_pair_sum(s, "s1") + l * inv_half_sq(s, "s1"))
            - a2 * (b2 / 2 - 1) * (sq_pair_sum(t, "s2") + (1 - l) * inv_half_sq(t, "s2"))
            + (a1 - a2) * (0.5 * a1 * a2 + 1) * sq_cross("ratio")
            - (-1) ** l / 2 * a1 * a2 * (a1 - a2) * sq_cross("inv")
        )
    return complex(V)


def _unit(n, k, m=1):
    idx = [0] * n
    idx[k] = m
    return idx


def _diagonal_derivatives(f: Callable, s1, s2, order: int = 2):
    """(f, [df/dx_a], [d^2f/dx_a^2]) from one single-axis jet per coordinate."""
    k1 = len(s1)
    pt = list(s1) + list(s2)
    n = len(pt)
    g = lambda x: f(x[:k1], x[k1:])
    if n == 0:
        return complex(np.asarray(jets.value(f([], [])))), np.zeros(0, complex), np.zeros(0, complex)
    d1, d2 = np.zeros(n, complex), np.zeros(n, complex)
    val = 0j
    for a in range(n):
        orders = [0] * n
        orders[a] = order
        jet = jets.jet_eval(g, pt, orders)
        if a == 0:
            val = complex(jet.value)
        d1[a] = jet.derivative(_unit(n, a))
        if order >= 2:
            d2[a] = jet.derivative(_unit(n, a, 2))
    return val, d1, d2


def _combine(model: ModelSpec, s1, s2, val, d1, d2) -> complex:
    k1, k2 = len(s1), len(s2)
    P1, P2 = prefactors(model)
    pref = np.array([P1] * k1 + [P2] * k2)
    if model.form == "laplacean":
        g = weight_log_gradient(weight_spec(model), s1, s2)
        return complex(np.sum(pref * (d2 + np.asarray(g) * d1)))
    V = potential(model, s1, s2)
    return complex(np.sum(pref * d2) + V * val)


def apply_from_jet(model: ModelSpec, jet, s1, s2) -> complex:
    """Apply the operator given the order-2 jet of f at (s1, s2)."""
    n = len(s1) + len(s2)
    d1 = np.array([jet.derivative(_unit(n, a)) for a in range(n)])
    d2 = np.array([jet.derivative(_unit(n, a, 2)) for a in range(n)])
    return _combine(model, s1, s2, complex(jet.value), d1, d2)


def apply_operator(model: ModelSpec, f: Callable, point) -> complex:
    s1, s2 = _split(point)
    val, d1, d2 = _diagonal_derivatives(f, s1, s2)
    return _combine(model, s1, s2, val, d1, d2)


def conjugated_laplacean(model: ModelSpec, g: Callable, point) -> complex:
    """w^{1/2} L (w^{-1/2} g), which should equal the Schroedinger form on g."""
    s1, s2 = _split(point)
    ws = weight_spec(model)
    lap = model.with_form("laplacean")

    def h(a, b):
        return g(a, b) / jets.power(weight_eval(ws, a, b), 0.5)

    root = complex(jets.power(weight_eval(ws, s1, s2), 0.5))
    return apply_operator(lap, h, (s1, s2)) * root


def _jsonable(z):
    z = complex(z)
    return [z.real, z.imag]


@dataclass
class ResidualReport:
    name: str
    model: dict
    point: list
    expected_eigenvalue: complex
    applied_value: complex
    function_value: complex
    residual: float
    tolerance: float
    passed: bool
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "model": self.model,
            "point": self.point,
            "expected_eigenvalue": _jsonable(self.expected_eigenvalue),
            "applied_value": _jsonable(self.applied_value),
            "residual": float(self.residual),
            "tolerance": float(self.tolerance),
            "pass": bool(self.passed),
            **({"extra": self.extra} if self.extra else {}),
        }


def relative_residual(applied, expected_times_f) -> float:
    return float(abs(applied - expected_times_f) / max(1.0, abs(expected_times_f)))


def make_report(name, model, point, expected, applied, fval, tol, extra=None, scale=None):
    ef = expected * fval
    res = relative_residual(applied, ef) if scale is None else float(abs(applied - ef) / scale)
    s1, s2 = _split(point)
    pt = [[_jsonable(v) for v in s1], [_jsonable(v) for v in s2]]
    md = model.to_dict() if isinstance(model, ModelSpec) else dict(model or {})
    return ResidualReport(name, md, pt, complex(expected), complex(applied), complex(fval),
                          res, float(tol), bool(res <= tol), extra or {})


def eigen_residual(model: ModelSpec, f: Callable, point, spectral, tol: float = 1e-6,
                   name: str = "eigen", relative_to_f: bool = False) -> ResidualReport:
    """Compare the operator on f against eigenvalue * f.

    The default residual is |Lf - E f| / max(1, |E f|); ``relative_to_f``
    divides by |E f| instead, for functions of small magnitude.
    """
    s1, s2 = _split(point)
    fval, d1, d2 = _diagonal_derivatives(f, s1, s2)
    applied = _combine(model, s1, s2, fval, d1, d2)
    E = eigenvalue(model, spectral)
    scale = abs(E * fval) if relative_to_f else None
    return make_report(name, model, (s1, s2), E, applied, fval, tol, scale=scale)


def com_momentum(c: complex, f: Callable, point) -> complex:
    """sum_p d f/d s_p1 - c sum_p d f/d s_p2."""
    s1, s2 = _split(point)
    _, grads, _ = _diagonal_derivatives(f, s1, s2, order=1)
    return complex(sum(grads[: len(s1)]) - c * sum(grads[len(s1):]))


# -- exchange phases -------------------------------------------------------------

def exchange_phase(beta: float) -> complex:
    """Phase exp(-i pi beta / 2) picked up by Psi under a transposition."""
    return complex(np.exp(-1j * np.pi * beta / 2))


def _delta_power_branch(x, beta, reference_order):
    """Delta^{beta/2} continued from the reference ordering.

    Each pair whose order is reversed relative to ``reference_order``
    contributes exp(-i pi beta / 2) times the modulus.
    """
    x = np.asarray(x, dtype=float)
    n = len(x)
    val = 1.0 + 0j
    for a in range(n):
        for b in range(a + 1, n):
            d = x[a] - x[b]
            ref = reference_order[a] - reference_order[b]
            val *= abs(d) ** (beta / 2)
            if np.sign(d) != np.sign(ref):
                val *= np.exp(-1j * np.pi * beta / 2)
    return val


def apply_transposition(beta: float, phi: Callable, x, k, n: int, m: int, tol: float = 1e-10) -> dict:
    """Check the exchange phase of Psi = Delta^{beta/2}(x) Delta^{beta/2}(k) Phi(x, k).

    The transposition x_n <-> x_m is realised as a single crossing of that
    pair; the branch rule multiplies Delta^{beta/2} by exp(-i pi beta / 2)
    for the crossed pair and leaves the moduli of the others unchanged.
    ``phi(x, k)`` takes plain arrays.
    """
    x = np.asarray(x, dtype=float)
    k = np.asarray(k, dtype=float)
    xs = x.copy()
    xs[[n, m]] = xs[[m, n]]
    dk = _delta_power_branch(k, beta, k)
    psi = _delta_power_branch(x, beta, x) * dk * phi(x, k)
    # one crossing: modulus of Delta is transposition invariant
    psi_swapped = exchange_phase(beta) * _delta_power_branch(x, beta, x) * dk * phi(xs, k)
    ratio = complex(psi_swapped / psi)
    expected = exchange_phase(beta)
    return {
        "beta": float(beta),
        "phase": _jsonable(expected),
        "ratio": _jsonable(ratio),
        "symmetric_phi": bool(abs(phi(xs, k) - phi(x, k)) <= tol * max(1.0, abs(phi(x, k)))),
        "pass": bool(abs(ratio - expected) <= tol),
    }
