"""Chord averaging is exact only on balls.

On an ellipse or a star-shaped domain the same average misses the true
harmonic value; the residual against the exact polynomial solution is the
diagnostic.  The discrete average never exceeds the maximum single-chord
interpolant computed with the same direction set.
"""

import chordmean as cm

dq = cm.build_direction_quadrature(2, "uniform_angle_2d", 4096)
data = cm.harmonic_poly(2, 2, "re").boundary_data()
p = (0.5, 0.0)

print("data f = x^2 - y^2, P = (0.5, 0); the exact solution value is 0.25")
print(f"{'domain':>22} {'average':>20} {'residual':>12}")

circle = cm.Ellipse2D(center=(0.0, 0.0), semi_axes=(1.0, 1.0))
res = cm.solve_on_domain(circle, data, p, dq)
print(f"{'circle (A=B=1)':>22} {res.value:>20.12f} {res.residual:>12.2e}")

for a_axis in (1.1, 1.25, 1.5, 2.0):
    ellipse = cm.Ellipse2D(center=(0.0, 0.0), semi_axes=(a_axis, 1.0))
    res = cm.solve_on_domain(ellipse, data, p, dq)
    print(f"{f'ellipse A={a_axis}':>22} {res.value:>20.12f} {res.residual:>12.2e}")

star = cm.StarDomain2D.conformal(0.4)
res = cm.solve_on_domain(star, data, (0.3, 0.1), dq)
print(f"{'conformal star a=0.4':>22} {res.value:>20.12f} {res.residual:>12.2e}"
      "   (at P = (0.3, 0.1))")

print()
print("on the disk the average stays below the max interpolant over directions:")
disk = cm.BallDomain(center=(0.0, 0.0), radius=1.0)
for p in [(0.0, 0.0), (0.3, 0.0), (0.6, 0.2)]:
    value = cm.solve_harmonic(disk, data, p, dq).value
    bound = cm.chord_interpolant_max(disk, data, p, dq)
    print(f"  P={str(p):>12}: average {value:>12.6f} <= max {bound:>12.6f}")
