"""Planar dipole systems behind the two-parameter orthosymplectic model.

Particles sit on the two axes at (+-s, 0) and (0, +-t) and carry dipoles
whose directions must satisfy three angle conditions.  For admissible
directions the tensor force reproduces the cross terms of the operator,
and the couplings below make the two Hamiltonians agree.
"""
import numpy as np

from supercms import DipoleConfig, hamiltonian_match, osp_couplings, table1, unitary_couplings
from supercms.physics import auto_angle, cross_tensor_sum, solve_dipole_angles

print("line model couplings (superunitary)")
for b1, b2 in [(2, 2), (1, 4), (4, 1), (4, 4)]:
    cp = unitary_couplings(b1, b2)
    print(f"  ({b1},{b2}): g11={cp.g11:+.4f} g22={cp.g22:+.4f} g12={cp.g12:+.4f}")

print("\nsolution structure of the angle conditions")
for row in table1():
    print(f"  {row['axis1']:>6} x {row['axis2']:<6} free={row['free_count']}  {row['structure']}")

print("\ndipole couplings along the simplified path (all angles equal)")
for b1, b2 in [(4, 1), (1, 4), (3, 0.5)]:
    t = auto_angle(b1, b2)
    cp = osp_couplings(b1, b2, DipoleConfig(t, t, t, t))
    print(f"  ({b1},{b2}) theta={t:.4f}: sigma^2={cp.sigma_sq:.4f} h11={cp.h11:+.4f} "
          f"h22={cp.h22:+.4f} h12={cp.h12:+.4f}")

print("\nthe printed coupling list with theta = 0 at (1,4) needs sigma^2 < 0")
try:
    osp_couplings(1, 4, DipoleConfig(0, 0, 0, 0), formula="printed")
except Exception as exc:
    print(f"  {type(exc).__name__}: {exc}")

print("\nHamiltonian agreement on a grid, both parities")
worst = 0.0
for b1 in (0.5, 1, 2, 3, 4):
    for b2 in (0.5, 1, 2, 3, 4):
        t = auto_angle(b1, b2)
        for l in (0, 1):
            worst = max(worst, hamiltonian_match(b1, b2, DipoleConfig(t, t, t, t), l=l).residual)
print(f"  worst relative discrepancy {worst:.1e}")

print("\ntensor force between mirror pairs at equal distance from the origin (45 degrees)")
rng = np.random.default_rng(1)
fam = solve_dipole_angles(("pi/2", "equal"))
cfg = fam.sample(rng).with_moduli(1.0, 1.0)
for a, b in [(1.0, 1.0), (1.0, 1.5)]:
    print(f"  a={a} b={b}: {cross_tensor_sum(a, b, cfg):+.3e}")
