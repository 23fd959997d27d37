"""Matrix Bessel functions in ordinary space from the recursion integral.

Builds Phi_N(x, k) by nested Gauss-Jacobi quadrature over interlacing
domains, compares N = 2 with its Bessel closed form and N = 3 at beta = 2
with the determinant formula, and checks the eigenvalue equation with jets.
"""
import math

import numpy as np

from supercms import ModelSpec, eigen_residual, hciz_phi, normalization_G, phi2, recurse_ordinary
from supercms.recursion import QuadratureConfig

q = QuadratureConfig(nodes=24)
x, r = [-0.4, 0.7], [0.3, 1.6]

print("N = 2: recursion against the closed form")
for beta in (0.5, 1.0, 2.0, 4.0, 6.0):
    k = [beta * v / 2 for v in r]
    rec = recurse_ordinary(beta, 2, x, k, q)
    closed = phi2(beta, x, r)
    print(f"  beta={beta:<4g} recursion={rec:.12f}  |diff|={abs(rec - closed):.1e}")

print("\nnormalization constant against Gamma(N beta/2) / Gamma(beta/2)^N")
for beta in (1.0, 2.5):
    for N in (2, 3):
        G = normalization_G(beta, N, q)
        exact = math.gamma(N * beta / 2) / math.gamma(beta / 2) ** N
        print(f"  beta={beta:g} N={N}: G={G:.12f}  exact={exact:.12f}")

print("\nN = 3 at beta = 2: recursion against the determinant formula")
x3, k3 = [-0.5, 0.1, 0.9], [-1.0, 0.3, 0.8]
print(f"  recursion   {recurse_ordinary(2.0, 3, x3, k3, q):.12f}")
print(f"  determinant {hciz_phi(x3, k3):.12f}")

print("\nthe recursion output is an eigenfunction (derivatives through the quadrature)")
for beta in (1.0, 3.0):
    model = ModelSpec("ordinary", beta=beta)
    f = lambda s1, s2: recurse_ordinary(beta, 3, s1, k3, q)
    rep = eigen_residual(model, f, (x3, []), (k3, []))
    print(f"  beta={beta:g}: relative residual {rep.residual:.1e}")

print("\nsymmetry Phi(x, k) = Phi(k, x)")
a = recurse_ordinary(1.5, 2, [-0.6, 0.3], [0.2, 1.4], q)
b = recurse_ordinary(1.5, 2, [0.2, 1.4], [-0.6, 0.3], q)
print(f"  {a:.12f}\n  {b:.12f}")
