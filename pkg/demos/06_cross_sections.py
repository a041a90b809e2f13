"""Averaging exact 2-D solves over plane sections of a 3-ball.

Every plane through an interior point P cuts the ball in a disk; solving the
2-D Dirichlet problem in each section with the restricted boundary data and
averaging over plane normals reproduces the 3-D harmonic extension at P.
Deterministic normal sets make the average exact for polynomial data; random
rotations of an icosahedral axis set give a low-variance Monte Carlo variant.
"""

import chordmean as cm

ball = cm.BallDomain(center=(0.0, 0.0, 0.0), radius=1.0)
p = (0.3, 0.2, 0.1)
dq_ref = cm.build_direction_quadrature(3, "gauss_product_3d", 64)

print(f"P = {p}; comparing section averaging with the direct chord solver")
print(f"{'data':>12} {'sections (gauss 16x32)':>24} {'direct':>20} {'diff':>10}")
for m, k in [(1, 1), (2, 2), (3, 0), (4, -2)]:
    data = cm.harmonic_poly(3, m, k).boundary_data()
    ndq = cm.build_direction_quadrature(3, "gauss_product_3d", 16)
    cs = cm.cross_section_solve(ball, data, p, ndq, inner_resolution=512)
    direct = cm.solve_harmonic(ball, data, p, dq_ref)
    print(f"{f'({m},{k})':>12} {cs.value:>24.15f} {direct.value:>20.15f} "
          f"{abs(cs.value - direct.value):>10.1e}")

print()
print("Monte Carlo normals (333 random rotations x 6 icosahedral axes):")
data = cm.harmonic_poly(3, 2, 2).boundary_data()
ndq = cm.build_direction_quadrature(3, "monte_carlo_design", 333, seed=55)
cs = cm.cross_section_solve(ball, data, p, ndq, inner_resolution=512)
print(f"  value {cs.value:.12f}  exact {cs.oracle_value:.12f}  "
      f"residual {cs.residual:.2e}  ({cs.report.nodes_used} section nodes)")

print()
print("the inner solver can itself be the 2-D chord average (nested averaging):")
ndq = cm.build_direction_quadrature(3, "gauss_product_3d", 8)
a = cm.cross_section_solve(ball, data, p, ndq, 256, inner_solver="poisson")
b = cm.cross_section_solve(ball, data, p, ndq, 256, inner_solver="chords")
print(f"  poisson-inner {a.value:.15f}")
print(f"  chords-inner  {b.value:.15f}")
print(f"  difference    {abs(a.value - b.value):.1e}")
