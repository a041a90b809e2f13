"""Three random travelers leave the same interior point of the unit ball.

One follows free Brownian motion, one first picks a random plane through the
point and diffuses inside it, one first picks a random line.  All three exit
laws on the sphere coincide with harmonic measure, so an observer at the
boundary cannot tell them apart.  Exit points are sampled exactly (no path
discretization), one counter-based stream per traveler.
"""

import math

import chordmean as cm

ball = cm.BallDomain(center=(0.0, 0.0, 0.0), radius=1.0)
p = (0.0, 0.0, 0.5)

# cap covering the upper half of the sphere, seen from p through the equator
half = math.acos(-0.5 / math.sqrt(1.25))
cap = cm.CapSpec(vertex=p, axis=(0.0, 0.0, 1.0), half_angle=half, nappe="plus")

report = cm.compare_exit_distributions(ball, p, cap, N=100000, seed=42)
print(f"start point {p}, cap = upper hemisphere, oracle measure "
      f"{report.oracle_measure:.6f}")
print(f"{'traveler':>9} {'hits':>7} {'frequency':>11} {'std error':>10} {'sigma':>7}")
for t in report.travelers:
    print(f"{t.name:>9} {t.hits:>7} {t.frequency:>11.5f} {t.std_error:>10.5f} "
          f"{t.sigma_vs_oracle:>7.2f}")
print(f"max deviation over travelers and pairs: "
      f"{report.max_deviation_in_sigmas:.2f} sigma")

print()
disk = cm.BallDomain(center=(0.0, 0.0), radius=1.0)
arc = cm.arc_cap(disk, (0.5, 0.0), -math.pi / 2, math.pi / 2)
report = cm.compare_exit_distributions(disk, (0.5, 0.0), arc, N=100000, seed=42)
print(f"2-D from (0.5, 0), arc through (1, 0): oracle "
      f"{report.oracle_measure:.6f} "
      f"(closed form {cm.involution_image_measure(0.5, (-math.pi/2, math.pi/2)):.6f})")
for t in report.travelers:
    print(f"{t.name:>9} {t.hits:>7} {t.frequency:>11.5f} {t.std_error:>10.5f} "
          f"{t.sigma_vs_oracle:>7.2f}")

print()
rerun = cm.compare_exit_distributions(disk, (0.5, 0.0), arc, N=100000, seed=42)
print(f"same seed reruns are bit-identical: {rerun == report}")
