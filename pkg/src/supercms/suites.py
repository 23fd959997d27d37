"""Verification suites shared by the command line and the test-suite.

A suite is a deterministic list of named checks.  Random draws happen while
the list is built, so execution order (and thread count) cannot change the
numbers.  Each check returns a ResidualReport.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from . import physics
from .errors import SupercmsError
from .identities import Polynomial, check_B9, check_commut, check_invariance, random_symmetric
from .operators import ModelSpec, eigen_residual, exchange_phase, make_report, potential
from .recursion import QuadratureConfig, recurse_ordinary, recurse_super
from .solutions import (ClosedSolution, conjugation_residuals, nu_order, phi2, plane_wave,
                        rho11_general, rho11_hyperbola, rho12_hyperbola, rho12_via_L)

SUITES = ("eigen", "recursion", "identities", "physics")
THREADS_ENV = "CMS_SUPER_THREADS"


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    points: int = 3
    nodes: int = 24
    pairs: int = 10
    betas: tuple = (1.0, 2.0, 4.0)
    hyperbola_betas: tuple = (1.0, 3.0, 4.0)
    identity_betas: tuple = (0.5, 1.0, 2.0, 3.0, 4.0)
    grid: tuple = (0.5, 1.0, 2.0, 3.0, 4.0)
    beta1: float | None = None
    beta2: float | None = None
    k1: int | None = None
    k2: int | None = None
    tol_eigen: float = 1e-5
    tol_recursion: float = 1e-6
    tol_algebraic: float = 1e-10
    tol_quadrature: float = 1e-5
    tol_b9: float = 1e-9
    tol_physics: float = 1e-10

    def quad(self) -> QuadratureConfig:
        return QuadratureConfig(nodes=self.nodes)


@dataclass(order=True)
class Check:
    name: str
    index: int
    run: Callable = field(compare=False)


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV, "")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def _failure(name, exc):
    return make_report(name, {}, ([], []), 1.0, 0.0, 0.0, 0.0,
                       extra={"error": f"{type(exc).__name__}: {exc}"}, scale=1.0)


def _execute(check: Check):
    try:
        rep = check.run()
    except SupercmsError as exc:
        rep = _failure(check.name, exc)
        rep.passed = False
        rep.residual = float("inf")
    rep.name = check.name
    return rep


def run_checks(checks: list, threads: int | None = None) -> list:
    """Run checks (optionally in threads) and return reports in canonical order."""
    checks = sorted(checks)
    threads = worker_count() if threads is None else threads
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(_execute, checks))
    else:
        reports = [_execute(c) for c in checks]
    return [(c.index, r) for c, r in zip(checks, reports)]


# -- point generators ---------------------------------------------------------------

def chamber(rng, n, lo=-1.0, hi=1.0, gap=0.15):
    while True:
        x = np.sort(rng.uniform(lo, hi, n))
        if n < 2 or np.min(np.diff(x)) > gap:
            return [float(v) for v in x]


def spread(rng, n, lo=-1.0, hi=1.0, gap=0.15):
    x = chamber(rng, n, lo, hi, gap)
    return [float(v) for v in rng.permutation(x)]


def off_axis(rng, n, lo=0.5, hi=1.5, gap=0.15):
    """Distinct values with |v| >= lo: keeps i s2 away from the real integration range."""
    while True:
        x = rng.uniform(lo, hi, n) * rng.choice([-1.0, 1.0], n)
        if n < 2 or np.min(np.diff(np.sort(x))) > gap:
            return [float(v) for v in x]


def random_pairs(rng, n, lo=0.25, hi=6.0, sep=0.2):
    out = []
    while len(out) < n:
        b1, b2 = rng.uniform(lo, hi, 2)
        if abs(np.sqrt(b1) - np.sqrt(b2)) > sep:
            out.append((float(b1), float(b2)))
    return out


def _value_report(name, meta, point, a, b, tol):
    """|a - b| / max(1, |b|) as a report."""
    return make_report(name, meta, point, 1.0, complex(a), complex(b), tol)


# -- eigen ------------------------------------------------------------------------------

def eigen_checks(cfg: SuiteConfig) -> list:
    rng = np.random.default_rng(cfg.seed)
    checks = []
    tol = cfg.tol_eigen
    for b in cfg.betas:
        model1 = ModelSpec("ordinary", beta=b)
        model2 = ModelSpec("ordinary", beta=b)
        for i in range(cfg.points):
            x, k = [float(rng.uniform(-1, 1))], [float(rng.uniform(-2, 2))]
            checks.append(Check(f"eigen/plane-wave/beta={b:g}", i, lambda m=model1, x=x, k=k: eigen_residual(
                m, lambda s1, s2: plane_wave(s1, k), (x, []), (k, []), tol)))
            x2, r2 = chamber(rng, 2), [float(v) for v in rng.uniform(-1.5, 1.5, 2)]
            spec = [b * v / 2 for v in r2]
            checks.append(Check(f"eigen/phi2/beta={b:g}", i, lambda m=model2, x=x2, r=r2, sp=spec, b=b: eigen_residual(
                m, lambda s1, s2: phi2(b, s1, r), (x, []), (sp, []), tol)))
    pairs = random_pairs(rng, cfg.pairs)
    if cfg.beta1 is not None and cfg.beta2 is not None:
        pairs = [(float(cfg.beta1), float(cfg.beta2))] + pairs
    for j, (b1, b2) in enumerate(pairs):
        model = ModelSpec("superunitary", beta1=b1, beta2=b2, c=1j)
        for i in range(cfg.points):
            s = [float(rng.uniform(-1, 1)), float(rng.uniform(-1, 1))]
            r = [float(rng.uniform(-1.5, 1.5)), float(rng.uniform(-1.5, 1.5))]
            for br in "+-":
                checks.append(Check(f"eigen/rho11-general{br}/pair={j:02d}", i,
                                    lambda m=model, s=s, r=r, br=br, b1=b1, b2=b2: eigen_residual(
                                        m, lambda s1, s2: rho11_general(b1, b2, br, (s1[0], s2[0]), r),
                                        ([s[0]], [s[1]]), ([r[0]], [r[1]]), tol, relative_to_f=True)))
    for b in cfg.hyperbola_betas:
        model = ModelSpec("superunitary", beta1=4 / b, beta2=b, c=1j)
        for i in range(cfg.points):
            s1 = [float(rng.uniform(-1, 1))]
            s2 = spread(rng, 2)
            r = [float(v) for v in rng.uniform(-1.5, 1.5, 3)]
            spec = ([r[0]], [b * r[1] / 2, b * r[2] / 2])
            checks.append(Check(f"eigen/rho12/beta={b:g}", i, lambda m=model, s1=s1, s2=s2, r=r, sp=spec, b=b: eigen_residual(
                m, lambda a, c: rho12_via_L(b, (a[0], c[0], c[1]), r), (s1, s2), sp, tol,
                relative_to_f=True)))
    return checks


# -- recursion and symmetries -------------------------------------------------------------

def recursion_checks(cfg: SuiteConfig, points: int | None = None) -> list:
    rng = np.random.default_rng(cfg.seed + 1)
    n = cfg.points if points is None else points
    q = cfg.quad()
    checks = []
    for b in cfg.betas:
        meta = {"family": "ordinary", "beta": b, "N": 2, "nodes": q.nodes}
        for i in range(n):
            x = chamber(rng, 2)
            r = [float(v) for v in rng.uniform(-1.5, 1.5, 2)]
            k = [b * v / 2 for v in r]
            checks.append(Check(f"recursion/ordinary-vs-phi2/beta={b:g}", i,
                                lambda x=x, r=r, k=k, b=b, meta=meta: _value_report(
                                    "r", meta, (x, []), recurse_ordinary(b, 2, x, k, q), phi2(b, x, r),
                                    cfg.tol_recursion)))
            # x <-> k symmetry of Phi_2 (closed form and recursion)
            kk = chamber(rng, 2)
            checks.append(Check(f"symmetry/phi2-xk-swap/beta={b:g}", i,
                                lambda x=x, kk=kk, b=b, meta=meta: _value_report(
                                    "s", meta, (x, kk), phi2(b, x, [2 * v / b for v in kk]),
                                    phi2(b, kk, [2 * v / b for v in x]), cfg.tol_recursion)))
            checks.append(Check(f"symmetry/recursion-xk-swap/beta={b:g}", i,
                                lambda x=x, kk=kk, b=b, meta=meta: _value_report(
                                    "s", meta, (x, kk), recurse_ordinary(b, 2, x, kk, q),
                                    recurse_ordinary(b, 2, kk, x, q), cfg.tol_recursion)))
    for b in cfg.hyperbola_betas:
        meta = {"family": "superunitary", "beta1": 4 / b, "beta2": b, "c": "+i", "nodes": q.nodes}
        for i in range(n):
            s1, s2 = [float(rng.uniform(-1, 1))], [float(rng.uniform(-1, 1))]
            r = [float(v) for v in rng.uniform(-1.5, 1.5, 2)]
            checks.append(Check(f"recursion/super11-vs-closed/beta={b:g}", i,
                                lambda s1=s1, s2=s2, r=r, b=b, meta=meta: _value_report(
                                    "r", meta, (s1, s2),
                                    recurse_super(b, 1, 1, (s1, s2), ([r[0]], [b * r[1] / 2]), q),
                                    rho11_hyperbola(b, (s1[0], s2[0]), r), cfg.tol_algebraic)))
            t2 = spread(rng, 2)
            r3 = [float(v) for v in rng.uniform(-1.5, 1.5, 3)]
            checks.append(Check(f"recursion/super12-vs-closed/beta={b:g}", i,
                                lambda s1=s1, t2=t2, r=r3, b=b, meta=meta: _value_report(
                                    "r", meta, (s1, t2),
                                    recurse_super(b, 1, 2, (s1, t2), ([r[0]], [b * r[1] / 2, b * r[2] / 2]), q),
                                    rho12_hyperbola(b, (s1[0], t2[0], t2[1]), r), cfg.tol_recursion)))
            sv = [s1[0]] + t2
            checks.append(Check(f"symmetry/rho12-sr-swap/beta={b:g}", i,
                                lambda sv=sv, r=r3, b=b, meta=meta: _value_report(
                                    "s", meta, ([sv[0]], sv[1:]), rho12_via_L(b, sv, r), rho12_via_L(b, r, sv),
                                    cfg.tol_algebraic)))
            for kind, sol, ss, rr in (("rho11", ClosedSolution("rho11-hyperbola", (b,)), sv[:2], r3[:2]),
                                      ("rho12", ClosedSolution("rho12-via-L", (b,)), sv, r3)):
                checks.append(Check(f"symmetry/{kind}-conjugation-corrected/beta={b:g}", i,
                                    lambda sol=sol, ss=ss, rr=rr, meta=meta: _conj_report(sol, ss, rr, meta,
                                                                                       cfg.tol_algebraic)))
    return checks


def _conj_report(sol, s, r, meta, tol, which="corrected"):
    res = conjugation_residuals(sol, s, r)
    rep = make_report("conj", meta, ([s[0]], list(s[1:])), 1.0, 0.0, 0.0, tol, scale=1.0,
                      extra={"literal": res["literal"], "corrected": res["corrected"]})
    rep.residual = float(res[which])
    rep.passed = bool(rep.residual <= tol)
    return rep


# -- identities --------------------------------------------------------------------

def identity_checks(cfg: SuiteConfig, points: int | None = None) -> list:
    rng = np.random.default_rng(cfg.seed + 2)
    n = cfg.points if points is None else points
    q = cfg.quad()
    checks = []
    k2_commut = (cfg.k2,) if cfg.k2 in (2, 3) else (2, 3)
    k1_inv = (cfg.k1,) if cfg.k1 in (1, 2) else (1, 2)
    k2_inv = (cfg.k2,) if cfg.k2 in (0, 1, 2) else (0, 1, 2)
    k2_b9 = (cfg.k2,) if cfg.k2 in (1, 2) else (1, 2)
    for b in cfg.identity_betas:
        for i in range(n):
            for k2 in k2_commut:
                f = random_symmetric([k2], 3, rng)
                s2 = spread(rng, k2, gap=0.2)
                checks.append(Check(f"identities/commut/k2={k2}/beta={b:g}", i,
                                    lambda f=f, s2=s2, b=b, k2=k2: check_commut(b, k2, f, s2,
                                                                              tol=cfg.tol_algebraic)))
            for k1 in k1_inv:
                for k2 in k2_inv:
                    if k1 - 1 + k2:
                        f = random_symmetric([k1 - 1, k2] if k1 > 1 else [k2], 3, rng)
                    else:
                        f = Polynomial(0, {(): 1.0 + 0.5j})
                    s1 = chamber(rng, k1, gap=0.3)
                    s2 = off_axis(rng, k2)
                    both = lru_cache(maxsize=1)(
                        lambda f=f, s1=s1, s2=s2, b=b: check_invariance(b, (s1, s2), f, q, tol=cfg.tol_quadrature))
                    for part, label in ((0, "momentum"), (1, "laplacean")):
                        checks.append(Check(f"identities/invariance-{label}/k1={k1},k2={k2}/beta={b:g}", i,
                                            lambda both=both, part=part: both()[part]))
            for k2 in k2_b9:
                s1 = chamber(rng, 2, gap=0.3)
                s1p = [float(rng.uniform(s1[0] + 0.05 * (s1[1] - s1[0]), s1[1] - 0.05 * (s1[1] - s1[0])))]
                s2 = spread(rng, k2, gap=0.2)
                checks.append(Check(f"identities/B9/k1=2,k2={k2}/beta={b:g}", i,
                                    lambda s1=s1, s1p=s1p, s2=s2, b=b: check_B9(b, (s1, s2), s1p,
                                                                               tol=cfg.tol_b9)))
    return checks


# -- physics -----------------------------------------------------------------------

def physics_checks(cfg: SuiteConfig) -> list:
    checks = []
    tol = cfg.tol_physics
    grid = [(b1, b2) for b1 in cfg.grid for b2 in cfg.grid]
    fam = physics.solve_dipole_angles(("equal", "equal"))
    for j, (b1, b2) in enumerate(grid):
        th = physics.auto_angle(b1, b2)
        cfg_d = fam.config(th, th)
        for l in (0, 1):
            checks.append(Check(f"physics/hamiltonian-match/l={l}", j,
                                lambda b1=b1, b2=b2, c=cfg_d, l=l: physics.hamiltonian_match(
                                    b1, b2, c, l, points=5, seed=cfg.seed, tol=tol)))
    for i, row in enumerate(physics.table1()):
        fam_i = physics.solve_dipole_angles((row["axis1"], row["axis2"]))
        rng = np.random.default_rng(cfg.seed + 10 + i)

        def run(fam_i=fam_i, rng=rng, row=row):
            worst = max(float(np.max(np.abs(fam_i.sample(rng, o).c1_residuals())))
                        for o in range(len(fam_i.options)) for _ in range(3))
            rep = make_report("t", {"axis1": row["axis1"], "axis2": row["axis2"],
                                    "free_count": row["free_count"]}, ([], []), 1.0, 0.0, 0.0, 1e-12,
                              scale=1.0, extra={"structure": row["structure"]})
            rep.residual = worst
            rep.passed = worst <= 1e-12
            return rep
        checks.append(Check("physics/angle-conditions", i, run))
    fam = physics.solve_dipole_angles(("pi/2", "3pi/2"))
    cfg_t = fam.config(0.4, 1.1, 1.3, 0.7)
    for i, a in enumerate((0.5, 1.0, 2.0)):
        checks.append(Check("physics/tensor-45deg", i, lambda a=a: make_report(
            "t", {"sigma1": 1.3, "sigma2": 0.7}, ([a], [a]), 1.0,
            physics.cross_tensor_sum(a, a, cfg_t), 0.0, tol, scale=1.0)))
    for i, (b1, b2) in enumerate(grid[:5]):
        checks.append(Check("physics/unitary-hamiltonian", i, lambda b1=b1, b2=b2:
                            physics.unitary_hamiltonian_match(b1, b2, [0.3, 1.1], [0.7, 2.0], tol)))
    checks.extend(structural_checks(cfg))
    return checks


def structural_checks(cfg: SuiteConfig) -> list:
    """Exact zeros of the interaction coefficients, exchange phases and the Hankel order."""
    checks = []
    pts = ([0.3, 1.1], [0.7, 2.0])

    def zero(name, idx, value, meta):
        checks.append(Check(name, idx, lambda: make_report("z", meta, pts, 1.0, value(), 0.0, 0.0,
                                                           scale=1.0)))

    zero("structural/ordinary-beta2", 0,
         lambda: potential(ModelSpec("ordinary", beta=2.0), pts[0] + pts[1]), {"beta": 2.0})
    for i, b in enumerate(cfg.grid):
        zero("structural/g12-equal-betas", i, lambda b=b: physics.unitary_couplings(b, b).g12,
             {"beta1": b, "beta2": b})
    zero("structural/noninteracting-2-2", 0,
         lambda: abs(potential(ModelSpec("superunitary", beta1=2.0, beta2=2.0), *pts))
         + sum(abs(v) for v in (physics.unitary_couplings(2, 2).g11, physics.unitary_couplings(2, 2).g22,
                                physics.unitary_couplings(2, 2).g12)), {"beta1": 2.0, "beta2": 2.0})
    for i, b in enumerate((1.0, 2.0, 4.0)):
        checks.append(Check("structural/exchange-phase", i, lambda b=b: make_report(
            "p", {"beta": b}, ([], []), 1.0, exchange_phase(b), np.exp(-1j * np.pi * b / 2), 1e-14)))
    for i, b in enumerate((0.5, 1.0, 3.0, 8.0)):
        checks.append(Check("structural/hankel-order-hyperbola", i, lambda b=b: make_report(
            "n", {"beta1": 4 / b, "beta2": b}, ([], []), 1.0, nu_order(4 / b, b), 1.5, 1e-14)))
    return checks


SUITE_BUILDERS = {
    "eigen": eigen_checks,
    "recursion": recursion_checks,
    "identities": identity_checks,
    "physics": physics_checks,
}


def run_suite(name: str, cfg: SuiteConfig, threads: int | None = None) -> dict:
    names = SUITES if name == "all" else (name,)
    checks = []
    for n in names:
        checks.extend(SUITE_BUILDERS[n](cfg))
    results = run_checks(checks, threads)
    return {"suite": name, "checks": [check_record(idx, rep) for idx, rep in results]}


def check_record(index: int, rep) -> dict:
    d = rep.to_dict()
    out = {"name": d["name"], "index": int(index), "model": d["model"], "point": d["point"],
           "residual": d["residual"], "tolerance": d["tolerance"], "pass": d["pass"]}
    if "extra" in d:
        out["extra"] = d["extra"]
    return out


def all_passed(report: dict) -> bool:
    return all(c["pass"] for c in report["checks"])
