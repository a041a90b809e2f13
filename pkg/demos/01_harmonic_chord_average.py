"""Solving the Dirichlet problem in a disk by averaging chord interpolants.

For every direction through an interior point P, a chord of the disk is cut;
the boundary data at its two endpoints is interpolated linearly and evaluated
at P; averaging over all directions gives the harmonic extension at P.  The
script compares this against a Poisson-kernel quadrature and the exact
polynomial value.
"""

import numpy as np

import chordmean as cm

disk = cm.BallDomain(center=(0.0, 0.0), radius=1.0)
dq = cm.build_direction_quadrature(2, "uniform_angle_2d", 4096)

print("boundary data f = x^2 - y^2 on the unit circle (harmonic inside)")
data = cm.harmonic_poly(2, 2, "re").boundary_data()

print(f"{'P':>14} {'chord average':>22} {'poisson':>22} {'exact':>10}")
for p in [(0.0, 0.0), (0.3, 0.2), (-0.5, 0.1), (0.7, -0.6)]:
    chords = cm.solve_harmonic(disk, data, p, dq)
    poisson = cm.poisson_solve(disk, data, p)
    exact = float(data.exact_solution(np.asarray(p)))
    print(f"{str(p):>14} {chords.value:>22.15f} {poisson.value:>22.15f} {exact:>10.5f}")

print()
print("the average also annihilates every homogeneous harmonic polynomial")
print("when evaluated at the origin of a shifted ball:")
ball = cm.BallDomain(center=(0.3, 0.2), radius=1.0)
for m in range(2, 7):
    data = cm.harmonic_poly(2, m, "re").boundary_data()
    value = cm.solve_harmonic(ball, data, (0.0, 0.0), dq).value
    print(f"  degree {m}: |average| = {abs(value):.2e}")

print()
print("3-D works the same way, with a Gauss product rule over directions:")
ball3 = cm.BallDomain(center=(0.0, 0.0, 0.0), radius=1.0)
dq3 = cm.build_direction_quadrature(3, "gauss_product_3d", 64)
data3 = cm.harmonic_poly(3, 3, 1).boundary_data()
p3 = (0.3, 0.2, 0.1)
res = cm.solve_harmonic(ball3, data3, p3, dq3)
print(f"  value {res.value:.15f}, exact {res.oracle_value:.15f}, "
      f"residual {res.residual:.2e}")
