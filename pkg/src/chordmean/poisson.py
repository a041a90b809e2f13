"""Poisson-kernel reference solvers: the ground truth the chord solvers are
checked against, plus the 1-D interval solution and cap harmonic measures.

All reductions use exactly rounded fixed-order summation (math.fsum) so runs
are bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadParameter,
    BadResolution,
    DegenerateInterval,
    PointNotOnBoundary,
    XOutsideInterval,
)
from .boundary import BoundaryData, CapSpec, cap_indicator
from .geometry import BallDomain, as_point

# Default node counts: modest for smooth data, large for indicator data
# (deterministic rules see O(1/N) edge error on indicators).
SMOOTH_RES_2D = 4096
SMOOTH_RES_3D = 64
MEASURE_RES_2D = 2 ** 16
MEASURE_RES_3D = 256


def fixed_sum(values: np.ndarray) -> float:
    """Exactly rounded sum in a fixed order (compensated, reproducible)."""
    return math.fsum(np.asarray(values, dtype=float).tolist())


@dataclass(frozen=True)
class SolveReport:
    """Value of a quadrature solve with an a-posteriori error indicator.

    ``error_estimate`` is |full - half resolution|: an indicator, not a bound.
    ``clamp_applied`` records how far a measure was clamped into [0, 1].
    """

    value: float
    error_estimate: float
    nodes_used: int
    clamp_applied: float = 0.0


@dataclass(frozen=True)
class BoundaryQuadrature:
    """Boundary nodes with weights w.r.t. surface measure (sum 2*pi*R / 4*pi*R^2)."""

    ball: BallDomain
    points: np.ndarray            # (N, dim)
    weights: np.ndarray           # (N,)
    scheme: str
    resolution: int

    def __len__(self) -> int:
        return self.points.shape[0]

    def half_resolution(self) -> "BoundaryQuadrature":
        return build_boundary_quadrature(self.ball, self.scheme,
                                         max(self.resolution // 2, 2))


def _uniform_circle(ball: BallDomain, n: int) -> BoundaryQuadrature:
    thetas = 2.0 * math.pi * np.arange(n) / n
    pts = ball.center + ball.radius * np.column_stack([np.cos(thetas), np.sin(thetas)])
    w = np.full(n, 2.0 * math.pi * ball.radius / n)
    return BoundaryQuadrature(ball, pts, w, "uniform_circle", n)


def _gauss_sphere(ball: BallDomain, n_polar: int) -> BoundaryQuadrature:
    x, w = np.polynomial.legendre.leggauss(n_polar)
    m = 2 * n_polar
    phi = 2.0 * math.pi * np.arange(m) / m
    sin_t = np.sqrt(1.0 - x * x)
    dirs = np.empty((n_polar * m, 3))
    dirs[:, 0] = np.outer(sin_t, np.cos(phi)).ravel()
    dirs[:, 1] = np.outer(sin_t, np.sin(phi)).ravel()
    dirs[:, 2] = np.repeat(x, m)
    pts = ball.center + ball.radius * dirs
    weights = np.repeat(w, m) * (2.0 * math.pi / m) * ball.radius ** 2
    return BoundaryQuadrature(ball, pts, weights, "gauss_sphere", n_polar)


def build_boundary_quadrature(ball: BallDomain, scheme: str | None = None,
                              resolution: int | None = None) -> BoundaryQuadrature:
    """Surface quadrature of the ball boundary.

    uniform_circle (2-D): ``resolution`` equally spaced points.
    gauss_sphere (3-D): ``resolution`` Gauss-Legendre polar nodes times
        2*resolution uniform azimuths.
    """
    if scheme is None:
        scheme = "uniform_circle" if ball.dim == 2 else "gauss_sphere"
    if scheme == "uniform_circle":
        if ball.dim != 2:
            raise BadParameter("uniform_circle requires a 2-D ball")
        n = resolution if resolution is not None else SMOOTH_RES_2D
        if n < 2:
            raise BadResolution("need at least 2 boundary nodes")
        return _uniform_circle(ball, n)
    if scheme == "gauss_sphere":
        if ball.dim != 3:
            raise BadParameter("gauss_sphere requires a 3-D ball")
        n = resolution if resolution is not None else SMOOTH_RES_3D
        if n < 2:
            raise BadResolution("need at least 2 polar nodes")
        return _gauss_sphere(ball, n)
    raise BadParameter(f"unknown boundary scheme {scheme!r}")


def measure_quadrature(ball: BallDomain) -> BoundaryQuadrature:
    """Default high-resolution rule for indicator (harmonic measure) work."""
    res = MEASURE_RES_2D if ball.dim == 2 else MEASURE_RES_3D
    return build_boundary_quadrature(ball, resolution=res)


def kernel_values(ball: BallDomain, x: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Poisson kernel of the ball at interior x against boundary rows of pts.

    Vectorized core without precondition checks; density w.r.t. surface
    measure, normalized so the kernel integrates to 1 over the boundary.
    """
    n = ball.dim
    omega = 2.0 * math.pi if n == 2 else 4.0 * math.pi
    xs = (x - ball.center) / ball.radius
    ys = (pts - ball.center) / ball.radius
    dist2 = np.sum((ys - xs) ** 2, axis=-1)
    num = 1.0 - float(xs @ xs)
    return num / (omega * dist2 ** (n / 2.0) * ball.radius ** (n - 1))


def poisson_kernel(ball: BallDomain, x, y) -> float:
    """Poisson kernel value; for the unit ball (1/omega_n)(1-|x|^2)/|x-y|^n."""
    p = ball.require_interior(x)
    q = as_point(y, ball.dim)
    if not ball.on_boundary(q):
        raise PointNotOnBoundary(f"{q} is not on the ball boundary")
    return float(kernel_values(ball, p, q[np.newaxis, :])[0])


def poisson_solve(ball: BallDomain, data: BoundaryData, x,
                  bq: BoundaryQuadrature | None = None) -> SolveReport:
    """Poisson integral of the boundary data at interior x."""
    p = ball.require_interior(x)
    if bq is None:
        bq = build_boundary_quadrature(ball)
    if bq.ball is not ball and (bq.ball.dim != ball.dim
                                or bq.ball.radius != ball.radius
                                or not np.array_equal(bq.ball.center, ball.center)):
        raise BadParameter("boundary quadrature was built for a different ball")

    def integrate(q: BoundaryQuadrature) -> float:
        f = np.asarray(data.value(q.points), dtype=float)
        k = kernel_values(ball, p, q.points)
        return fixed_sum(q.weights * f * k)

    value = integrate(bq)
    half = integrate(bq.half_resolution())
    return SolveReport(value=value, error_estimate=abs(value - half),
                       nodes_used=len(bq))


def dirichlet_1d(a: float, b: float, fa: float, fb: float, x: float) -> float:
    """Interval Dirichlet solution: the linear interpolant of (a, fa), (b, fb)."""
    if b - a <= 1e-14 * max(abs(a), abs(b), 1.0):
        raise DegenerateInterval(f"interval [{a}, {b}] is degenerate")
    if not a < x < b:
        raise XOutsideInterval(f"{x} is not inside ({a}, {b})")
    return ((b - x) * fa + (x - a) * fb) / (b - a)


def cap_measure_poisson(ball: BallDomain, P, cap: CapSpec,
                        bq: BoundaryQuadrature | None = None) -> SolveReport:
    """Harmonic measure of the cap(s) at P via the Poisson integral.

    The result is clamped into [0, 1]; the clamp magnitude is recorded on the
    report rather than silently discarded.
    """
    p = ball.require_interior(P)
    if not np.allclose(cap.vertex, p):
        raise BadParameter("cap vertex must coincide with the evaluation point")
    if bq is None:
        bq = measure_quadrature(ball)
    data = cap_indicator(cap, ball)
    report = poisson_solve(ball, data, p, bq)
    clamped = min(max(report.value, 0.0), 1.0)
    return SolveReport(value=clamped, error_estimate=report.error_estimate,
                       nodes_used=report.nodes_used,
                       clamp_applied=abs(report.value - clamped))
