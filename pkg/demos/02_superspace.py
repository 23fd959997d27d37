"""Superspace eigenfunctions on the hyperbola beta1 beta2 = 4.

The recursion step integrates one bosonic coordinate by quadrature and
the Grassmann variables exactly: shifting s2 by a nilpotent and reading
off the top coefficient.  The results are compared with the closed (1,1)
and (1,2) forms and with the (1,1) solution for arbitrary (beta1, beta2).
"""
import numpy as np

from supercms import (ModelSpec, berezin_integrate, eigen_residual, nilpotent_substitute, recurse_super,
                      rho11_general, rho11_hyperbola, rho12_hyperbola, rho12_via_L)
from supercms.grassmann import NilpotentShift
from supercms.solutions import ClosedSolution, conjugation_residuals

print("Grassmann substitution: f(s + a|xi|^2) = f(s) + a f'(s) |xi|^2")
f = lambda v: v[0] ** 3
g = nilpotent_substitute(f, [0.5], [NilpotentShift(1, 2.0)])
print(f"  Berezin integral {berezin_integrate(g):.6f}  expected 2 * 3 * 0.5^2 = {2 * 3 * 0.25:.6f}")

s, r = ([0.3], [0.8, -0.6]), ([0.5], [-0.9, 1.2])
print("\n(1,1) and (1,2) from the recursion against closed forms")
for beta in (1.0, 3.0, 4.0):
    r11 = ([r[0][0]], [beta * r[1][0] / 2])
    a = recurse_super(beta, 1, 1, ([0.3], [0.8]), r11)
    b = rho11_hyperbola(beta, (0.3, 0.8), (0.5, -0.9))
    r12 = (r[0], [beta * v / 2 for v in r[1]])
    c = recurse_super(beta, 1, 2, s, r12)
    d = rho12_hyperbola(beta, (0.3, 0.8, -0.6), (0.5, -0.9, 1.2))
    print(f"  beta={beta:g}: (1,1) diff {abs(a - b):.1e}   (1,2) diff {abs(c - d):.1e}")

print("\nL-operator route against the closed (1,2) form")
for beta in (1.0, 3.0):
    v1 = rho12_via_L(beta, (0.3, 0.8, -0.6), (0.5, -0.9, 1.2))
    v2 = rho12_hyperbola(beta, (0.3, 0.8, -0.6), (0.5, -0.9, 1.2))
    print(f"  beta={beta:g}: {v1:.10f} vs {v2:.10f}")

print("\neigen-residuals of the recursion output, superunitary operator")
for beta in (1.0, 3.0):
    model = ModelSpec("superunitary", beta1=4 / beta, beta2=beta)
    for k1, k2, s1, s2 in [(1, 2, [0.3], [0.8, -0.6]), (2, 1, [-0.4, 0.5], [0.9])]:
        r1, r2 = [0.7, -0.5][:k1], [0.6, -1.1][:k2]
        fn = lambda a, c: recurse_super(beta, k1, k2, (a, c), (r1, r2))
        rep = eigen_residual(model, fn, (s1, s2), (r1, r2), relative_to_f=True)
        print(f"  beta={beta:g} (k1,k2)=({k1},{k2}): {rep.residual:.1e}")

print("\nthe general (1,1) solution is proportional to the hyperbola one")
for beta in (0.6, 1.0, 3.0):
    ratios = []
    for sv, rv in [((0.2, -0.3), (0.7, 0.4)), ((-0.5, 0.6), (1.1, 0.2))]:
        gen = rho11_general(4 / beta, beta, "+", sv, (rv[0], beta * rv[1] / 2))
        ratios.append(complex(gen) / rho11_hyperbola(beta, sv, rv))
    print(f"  beta={beta:g}: ratio {ratios[0]:.6f} and {ratios[1]:.6f}")

print("\ncomplex conjugation: flipping s2 alone is not enough, flipping r1 as well is")
sol = ClosedSolution("rho12-hyperbola", (3.0,))
res = conjugation_residuals(sol, [0.3, 0.8, -0.6], [0.5, -0.9, 1.2])
print(f"  s2 -> -s2:             {res['literal']:.2e}")
print(f"  s2 -> -s2, r1 -> -r1:  {res['corrected']:.2e}")
