"""Command line driver: verification suites, coupling tables and comparisons.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import configparser
import json
import sys
from dataclasses import fields, replace

import numpy as np

from . import physics
from .errors import SupercmsError
from .operators import ModelSpec, eigen_residual, make_report
from .recursion import QuadratureConfig, recurse_ordinary, recurse_super
from .solutions import (hciz_phi, phi2, plane_wave, rho11_general, rho11_hyperbola,
                        rho12_hyperbola, rho12_via_L)
from .suites import (SUITES, Check, SuiteConfig, all_passed, chamber, check_record, run_checks,
                     run_suite, spread)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MAX_COMPARE_N = 3
MAX_COMPARE_K2 = 3


class UsageError(Exception):
    pass


# -- config ----------------------------------------------------------------------

def _parse_value(name, raw, kind):
    raw = raw.strip()
    try:
        if kind == "tuple":
            return tuple(float(v) for v in raw.replace(";", ",").split(",") if v.strip())
        if kind == "int":
            return int(raw)
        return float(raw)
    except ValueError as exc:
        raise UsageError(f"bad value for {name!r}: {raw!r}") from exc


def _kinds():
    out = {}
    for f in fields(SuiteConfig):
        t = str(f.type)
        out[f.name] = "tuple" if "tuple" in t else "int" if "int" in t else "float"
    return out


def read_config(path: str | None) -> dict:
    """Flat key = value file ('#' comments); keys are SuiteConfig fields."""
    if not path:
        return {}
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read config {path!r}: {exc}") from exc
    cp = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        cp.read_string("[config]\n" + text)
    except configparser.Error as exc:
        raise UsageError(f"malformed config: {exc}") from exc
    return dict(cp["config"])


def build_config(file_values: dict, overrides: dict) -> SuiteConfig:
    kinds = _kinds()
    values = {}
    for src in (file_values, overrides):
        for k, v in src.items():
            if v is None:
                continue
            key = k.replace("-", "_")
            if key not in kinds:
                raise UsageError(f"unknown config key {k!r}")
            values[key] = _parse_value(key, v, kinds[key]) if isinstance(v, str) else v
    cfg = replace(SuiteConfig(), **values)
    if cfg.points < 1 or cfg.nodes < 4 or cfg.pairs < 0:
        raise UsageError("points >= 1, nodes >= 4 and pairs >= 0 are required")
    if (cfg.beta1 is None) != (cfg.beta2 is None):
        raise UsageError("--beta1 and --beta2 go together")
    return cfg


# -- output ----------------------------------------------------------------------

def dump_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=1, allow_nan=True) + "\n"


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands --------------------------------------------------------------------

def cmd_verify(args) -> int:
    overrides = {k: getattr(args, k) for k in ("seed", "points", "nodes", "beta1", "beta2", "k1", "k2")}
    for item in args.set or []:
        if "=" not in item:
            raise UsageError(f"--set expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        overrides[k.strip()] = v
    cfg = build_config(read_config(args.config), overrides)
    report = run_suite(args.suite, cfg)
    _emit(dump_json(report), args.output)
    return EXIT_OK if all_passed(report) else EXIT_FAIL


def _grid(args):
    if args.grid:
        pts = []
        for chunk in args.grid.split(";"):
            vals = [v for v in chunk.split(",") if v.strip()]
            if len(vals) != 2:
                raise UsageError(f"grid points are 'beta1,beta2' separated by ';', got {chunk!r}")
            pts.append((float(vals[0]), float(vals[1])))
        return pts
    if args.beta1 is not None or args.beta2 is not None:
        if args.beta1 is None or args.beta2 is None:
            raise UsageError("--beta1 and --beta2 go together")
        return [(args.beta1, args.beta2)]
    g = SuiteConfig().grid
    return [(a, b) for a in g for b in g]


def cmd_table(args) -> int:
    if args.kind == "dipole-angles":
        _emit(physics.table1_csv(), args.output)
        return EXIT_OK
    grid = _grid(args)
    if any(b1 <= 0 or b2 <= 0 for b1, b2 in grid):
        raise UsageError("grid values must be positive")
    if (args.theta1 is None) != (args.theta2 is None):
        raise UsageError("--theta1 and --theta2 go together")
    angles = None if args.theta1 is None else (args.theta1, args.theta2)
    rows = physics.coupling_rows(args.kind, grid, angles, args.l, args.formula)
    _emit(physics.rows_to_csv(rows), args.output)
    return EXIT_OK


def _compare_checks(args) -> list:
    rng = np.random.default_rng(args.seed)
    q = QuadratureConfig(nodes=args.nodes)
    tol = args.tol
    checks = []

    def side_by_side(name, i, meta, point, fa, fb):
        def run():
            a, b = complex(fa()), complex(fb())
            rep = make_report(name, meta, point, 1.0, a, b, tol, scale=max(1.0, abs(b)))
            rep.extra = {"first": [a.real, a.imag], "second": [b.real, b.imag]}
            return rep
        checks.append(Check(name, i, run))

    if args.what == "recursion-vs-closed":
        if args.k2 is not None:
            if not 1 <= args.k2 <= 2:
                raise UsageError("closed superspace forms exist for k2 in {1, 2}")
            b = args.beta
            meta = {"family": "superunitary", "beta1": 4 / b, "beta2": b, "k1": 1, "k2": args.k2}
            for i in range(args.points):
                s1 = [float(rng.uniform(-1, 1))]
                s2 = spread(rng, args.k2)
                r = [float(v) for v in rng.uniform(-1.5, 1.5, 1 + args.k2)]
                spec = ([r[0]], [b * v / 2 for v in r[1:]])
                closed = (lambda s1=s1, s2=s2, r=r: rho11_hyperbola(b, (s1[0], s2[0]), r)) if args.k2 == 1 else \
                    (lambda s1=s1, s2=s2, r=r: rho12_hyperbola(b, (s1[0], *s2), r))
                side_by_side(f"compare/recursion-vs-closed/k1=1,k2={args.k2}", i, meta, (s1, s2),
                             lambda s1=s1, s2=s2, sp=spec: recurse_super(b, 1, args.k2, (s1, s2), sp, q), closed)
            return checks
        N = args.N
        if not 1 <= N <= MAX_COMPARE_N:
            raise UsageError(f"N must lie in [1, {MAX_COMPARE_N}]")
        if N == 3 and args.beta != 2:
            raise UsageError("the N = 3 closed form is available at beta = 2 only")
        b = args.beta
        meta = {"family": "ordinary", "beta": b, "N": N, "nodes": q.nodes}
        for i in range(args.points):
            x = chamber(rng, N)
            k = [float(v) for v in rng.uniform(-1.5, 1.5, N)]
            if N == 1:
                closed = lambda x=x, k=k: plane_wave(x, k)
            elif N == 2:
                closed = lambda x=x, k=k: phi2(b, x, [2 * v / b for v in k])
            else:
                closed = lambda x=x, k=k: hciz_phi(x, k)
            side_by_side(f"compare/recursion-vs-closed/N={N}", i, meta, (x, []),
                         lambda x=x, k=k: recurse_ordinary(b, N, x, k, q), closed)
    elif args.what == "rho11-branches":
        b1 = args.beta1 if args.beta1 is not None else 1.0
        b2 = args.beta2 if args.beta2 is not None else 3.0
        model = ModelSpec("superunitary", beta1=b1, beta2=b2, c=1j)
        for i in range(args.points):
            s = [float(v) for v in rng.uniform(-1, 1, 2)]
            r = [float(v) for v in rng.uniform(-1.5, 1.5, 2)]
            for br in "+-":
                checks.append(Check(f"compare/rho11-branch{br}", i, lambda s=s, r=r, br=br: eigen_residual(
                    model, lambda a, c: rho11_general(b1, b2, br, (a[0], c[0]), r), ([s[0]], [s[1]]),
                    ([r[0]], [r[1]]), tol, relative_to_f=True)))
    elif args.what == "rho12-paths":
        b = args.beta
        meta = {"family": "superunitary", "beta1": 4 / b, "beta2": b, "k1": 1, "k2": 2}
        for i in range(args.points):
            sv = [float(rng.uniform(-1, 1))] + spread(rng, 2)
            r = [float(v) for v in rng.uniform(-1.5, 1.5, 3)]
            side_by_side("compare/rho12-L-vs-closed", i, meta, ([sv[0]], sv[1:]),
                         lambda sv=sv, r=r: rho12_via_L(b, sv, r), lambda sv=sv, r=r: rho12_hyperbola(b, sv, r))
            side_by_side("compare/rho12-recursion-vs-closed", i, meta, ([sv[0]], sv[1:]),
                         lambda sv=sv, r=r: recurse_super(b, 1, 2, ([sv[0]], sv[1:]),
                                                          ([r[0]], [b * r[1] / 2, b * r[2] / 2]), q),
                         lambda sv=sv, r=r: rho12_hyperbola(b, sv, r))
    return checks


def cmd_compare(args) -> int:
    if args.k2 is not None and args.k2 > MAX_COMPARE_K2:
        raise UsageError(f"k2 <= {MAX_COMPARE_K2} at desk scale")
    if args.beta <= 0:
        raise UsageError("beta must be positive")
    results = run_checks(_compare_checks(args))
    report = {"suite": f"compare/{args.what}", "checks": [check_record(i, r) for i, r in results]}
    _emit(dump_json(report), args.output)
    return EXIT_OK if all_passed(report) else EXIT_FAIL


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="supercms", description="Superspace CMS operators: checks and tables.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite and print a JSON report")
    v.add_argument("suite", choices=SUITES + ("all",))
    v.add_argument("--config", help="flat key = value file")
    v.add_argument("--seed", type=int)
    v.add_argument("--points", type=int)
    v.add_argument("--nodes", type=int)
    v.add_argument("--beta1", type=float)
    v.add_argument("--beta2", type=float)
    v.add_argument("--k1", type=int)
    v.add_argument("--k2", type=int)
    v.add_argument("--set", action="append", metavar="KEY=VALUE", help="override any config key")
    v.add_argument("--output", "-o")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", help="coupling and dipole-angle tables as CSV")
    t.add_argument("kind", choices=("couplings-unitary", "couplings-osp", "dipole-angles"))
    t.add_argument("--grid", help="'b1,b2;b1,b2;...'")
    t.add_argument("--beta1", type=float)
    t.add_argument("--beta2", type=float)
    t.add_argument("--theta1", type=float, help="simplified-path angles (default: 0 or pi/2 as needed)")
    t.add_argument("--theta2", type=float)
    t.add_argument("--l", type=int, choices=(0, 1), default=0)
    t.add_argument("--formula", choices=physics.FORMULAS, default="derived")
    t.add_argument("--output", "-o")
    t.set_defaults(func=cmd_table)

    c = sub.add_parser("compare", help="side-by-side evaluation of two routes")
    c.add_argument("what", choices=("recursion-vs-closed", "rho11-branches", "rho12-paths"))
    c.add_argument("--N", type=int, default=2)
    c.add_argument("--k2", type=int)
    c.add_argument("--beta", type=float, default=4.0)
    c.add_argument("--beta1", type=float)
    c.add_argument("--beta2", type=float)
    c.add_argument("--points", type=int, default=5)
    c.add_argument("--nodes", type=int, default=24)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--tol", type=float, default=1e-6)
    c.add_argument("--output", "-o")
    c.set_defaults(func=cmd_compare)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except SupercmsError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
