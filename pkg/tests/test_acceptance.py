"""Acceptance criteria 1-7, one test each, at the stated tolerances.

Each test prints one PASS/FAIL line; the lines are repeated in the
terminal summary.
"""
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from supercms import physics
from supercms.cli import dump_json
from supercms.solutions import ClosedSolution, conjugation_residuals
from supercms.suites import (SuiteConfig, chamber, eigen_checks, identity_checks, physics_checks,
                             recursion_checks, run_checks, run_suite, spread, structural_checks)


def _record(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)


def _summary(results):
    reps = [r for _, r in results]
    worst = max(reps, key=lambda r: r.residual / r.tolerance if r.tolerance else r.residual)
    fails = [r for r in reps if not r.passed]
    return reps, fails, f"{len(reps)} checks, {len(fails)} failed, worst {worst.name} {worst.residual:.2e}"


def test_criterion_1_eigen_residuals():
    cfg = SuiteConfig(points=5, pairs=10, tol_eigen=1e-5)
    t0 = time.perf_counter()
    results = run_checks(eigen_checks(cfg))
    dt = time.perf_counter() - t0
    reps, fails, msg = _summary(results)
    names = {r.model.get("beta") for r in reps}
    assert {1.0, 2.0, 4.0} <= names
    ok = not fails and dt < 30
    _record(1, ok, f"{msg}, {dt:.1f}s (limit 30s)")
    assert ok


def test_criterion_2_recursion_vs_closed():
    cfg = SuiteConfig(points=10, tol_recursion=1e-6, tol_algebraic=1e-10)
    t0 = time.perf_counter()
    checks = [c for c in recursion_checks(cfg) if c.name.startswith("recursion/")]
    results = run_checks(checks)
    dt = time.perf_counter() - t0
    reps, fails, msg = _summary(results)
    kinds = {c.name.split("/")[1] for c in checks}
    assert kinds == {"ordinary-vs-phi2", "super11-vs-closed", "super12-vs-closed"}
    for c, (_, r) in zip(sorted(checks), results):
        assert r.tolerance == (1e-10 if "super11" in c.name else 1e-6)
    ok = not fails and dt < 60
    _record(2, ok, f"{msg}, {dt:.1f}s (limit 60s)")
    assert ok


def test_criterion_3_identities():
    cfg = SuiteConfig(tol_algebraic=1e-9, tol_b9=1e-9, tol_quadrature=1e-5,
                      identity_betas=(0.5, 1.0, 2.0, 3.0, 4.0))
    results = run_checks(identity_checks(cfg, points=50))
    reps, fails, msg = _summary(results)
    kinds = {c.name.split("/")[1] for c in identity_checks(cfg, points=1)}
    assert kinds == {"commut", "invariance-momentum", "invariance-laplacean", "B9"}
    _record(3, not fails, msg)
    assert not fails


def test_criterion_4_structural_zeros():
    results = run_checks(structural_checks(SuiteConfig()))
    reps, fails, msg = _summary(results)
    # exact zeros, not merely small
    zeros = [r for r in reps if r.name.split("/")[1] in ("ordinary-beta2", "g12-equal-betas", "noninteracting-2-2")]
    assert len(zeros) == 7
    exact = all(r.residual == 0.0 for r in zeros)
    ok = not fails and exact
    _record(4, ok, msg + ("" if exact else ", a structural zero is inexact"))
    assert ok


def test_criterion_5_symmetries():
    cfg = SuiteConfig(points=10)
    checks = [c for c in recursion_checks(cfg) if c.name.startswith("symmetry/")
              and "conjugation" not in c.name]
    reps, fails, msg = _summary(run_checks(checks))
    # conjugation as literally stated: conj f(s1, s2, r) = f(s1, -s2, r)
    rng = np.random.default_rng(5)
    literal, corrected = [], []
    for b in (1.0, 3.0, 4.0):
        for _ in range(10):
            s1 = float(rng.uniform(-1, 1))
            s2 = spread(rng, 2)
            r = [float(v) for v in rng.uniform(-1.5, 1.5, 3)]
            for sol, s, rr in ((ClosedSolution("rho11-hyperbola", (b,)), [s1, s2[0]], r[:2]),
                               (ClosedSolution("rho12-hyperbola", (b,)), [s1] + s2, r)):
                res = conjugation_residuals(sol, s, rr)
                literal.append(res["literal"])
                corrected.append(res["corrected"])
    lit_ok = max(literal) <= 1e-10
    ok = not fails and lit_ok
    _record(5, ok, f"swap symmetries: {msg}; literal conjugation worst {max(literal):.2e} (tol 1e-10); "
                   f"corrected conjugation (r1 -> -r1) worst {max(corrected):.2e}")
    assert not fails
    assert max(corrected) <= 1e-10
    # The literal identity is false for these functions; see the decisions ledger.
    assert lit_ok, "conjugation symmetry with r held fixed does not hold"


EXPECTED_TABLE1 = {
    ("equal", "equal"): 2, ("equal", "pi/2"): 2, ("equal", "3pi/2"): 2,
    ("pi/2", "equal"): 2, ("pi/2", "pi/2"): 1, ("pi/2", "3pi/2"): 2,
    ("3pi/2", "equal"): 2, ("3pi/2", "pi/2"): 2, ("3pi/2", "3pi/2"): 1,
}


def test_criterion_6_physics():
    rows = physics.table1()
    structure = {(r["axis1"], r["axis2"]): r["free_count"] for r in rows}
    table_ok = structure == EXPECTED_TABLE1
    pins = {("pi/2", "pi/2"): (np.pi / 4, 5 * np.pi / 4), ("3pi/2", "3pi/2"): (3 * np.pi / 4, 7 * np.pi / 4)}
    for key, vals in pins.items():
        fam = physics.solve_dipole_angles(key)
        table_ok &= all(fam.admits(0.7, v) for v in vals) and not fam.admits(0.7, vals[0] + 0.2)
    results = run_checks([c for c in physics_checks(SuiteConfig()) if c.name.startswith("physics/")])
    reps, fails, msg = _summary(results)
    matched = [r for r in reps if r.name.startswith("physics/hamiltonian-match/")]
    assert len(matched) == 50
    # 45 degree geometry over every angle-condition cell
    rng = np.random.default_rng(6)
    worst45 = 0.0
    for key in EXPECTED_TABLE1:
        fam = physics.solve_dipole_angles(key)
        for o in range(len(fam.options)):
            cfg = fam.sample(rng, o).with_moduli(1.1, 0.9)
            worst45 = max(worst45, abs(physics.cross_tensor_sum(0.8, 0.8, cfg)))
    ok = table_ok and not fails and worst45 <= 1e-10
    _record(6, ok, f"table1 {'ok' if table_ok else 'mismatch'}; {msg}; 45deg worst {worst45:.2e}")
    assert ok


def test_criterion_7_determinism():
    cfg = SuiteConfig(seed=11)
    a = dump_json(run_suite("all", cfg, threads=1))
    b = dump_json(run_suite("all", cfg, threads=4))
    ok = a == b
    _record(7, ok, f"two 'verify all' reports ({len(a)} bytes) {'identical' if ok else 'differ'}")
    assert ok
