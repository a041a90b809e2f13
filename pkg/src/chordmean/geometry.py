"""Domains, chords, direction quadratures, the disk involution, and plane sections.

All points and directions are plain numpy float arrays; helpers accept any
sequence of reals. Everything here is a pure function of immutable inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadParameter,
    BadResolution,
    ConvergenceFailure,
    DegenerateDirection,
    DimMismatch,
    MissingSeed,
    NotStarShapedFromP,
    PNotInterior,
    PointNotInterior,
)

INTERIOR_MARGIN = 1e-9          # required relative distance to the boundary
UNIT_TOL = 1e-9                 # tolerance on |e| = 1 for user-supplied directions

# Philox sub-stream indices (key = [seed, stream]) so every consumer of a seed
# draws from a disjoint counter-based stream.
STREAM_DIRECTIONS = 0
STREAM_TRAVELER_FULL = 1
STREAM_TRAVELER_PLANE = 2
STREAM_TRAVELER_LINE = 3


def philox_stream(seed: int, stream: int) -> np.random.Generator:
    """Counter-based generator for (seed, stream); identical across runs."""
    key = np.array([np.uint64(seed), np.uint64(stream)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def as_point(x, dim: int | None = None) -> np.ndarray:
    """Coerce to a 1-D float array, optionally checking the dimension."""
    p = np.asarray(x, dtype=float).reshape(-1)
    if dim is not None and p.size != dim:
        raise DimMismatch(f"expected a {dim}-vector, got length {p.size}")
    if p.size not in (1, 2, 3):
        raise DimMismatch(f"only dimensions 1..3 are supported, got {p.size}")
    return p


def check_unit(e: np.ndarray, tol: float = UNIT_TOL) -> np.ndarray:
    e = np.asarray(e, dtype=float).reshape(-1)
    if abs(np.linalg.norm(e) - 1.0) > tol:
        raise DegenerateDirection(f"direction norm {np.linalg.norm(e)!r} is not 1")
    return e


def _as_complex(z) -> complex:
    if isinstance(z, (complex, float, int, np.complexfloating, np.floating, np.integer)):
        return complex(z)
    arr = np.asarray(z, dtype=float).reshape(-1)
    if arr.size != 2:
        raise DimMismatch("expected a complex number or an (x, y) pair")
    return complex(arr[0], arr[1])


# ---------------------------------------------------------------------------
# Domains
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BallDomain:
    """Open ball |x - center| < radius in dimension 2 or 3 (1 for intervals)."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        if not self.radius > 0:
            raise BadParameter("ball radius must be positive")

    @property
    def dim(self) -> int:
        return self.center.size

    def contains(self, x) -> bool:
        return np.linalg.norm(as_point(x, self.dim) - self.center) < self.radius

    def on_boundary(self, x, tol: float = 1e-9) -> bool:
        r = np.linalg.norm(as_point(x, self.dim) - self.center)
        return abs(r - self.radius) <= tol * self.radius

    def boundary_distance(self, x) -> float:
        return self.radius - float(np.linalg.norm(as_point(x, self.dim) - self.center))

    def require_interior(self, x, margin: float = INTERIOR_MARGIN) -> np.ndarray:
        p = as_point(x, self.dim)
        if self.boundary_distance(p) <= margin * self.radius:
            raise PointNotInterior(f"point {p} is not strictly inside the ball")
        return p


@dataclass(frozen=True)
class Ellipse2D:
    """Axis-aligned ellipse ((x-cx)/A)^2 + ((y-cy)/B)^2 < 1; a disk iff A == B."""

    center: np.ndarray
    semi_axes: tuple[float, float]

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center, 2))
        a, b = self.semi_axes
        if not (a > 0 and b > 0):
            raise BadParameter("ellipse semi-axes must be positive")
        object.__setattr__(self, "semi_axes", (float(a), float(b)))

    @property
    def dim(self) -> int:
        return 2

    def is_disk(self) -> bool:
        return self.semi_axes[0] == self.semi_axes[1]

    def _scaled(self, x) -> np.ndarray:
        return (as_point(x, 2) - self.center) / np.asarray(self.semi_axes)

    def contains(self, x) -> bool:
        return float(np.sum(self._scaled(x) ** 2)) < 1.0

    def require_interior(self, x, margin: float = INTERIOR_MARGIN) -> np.ndarray:
        p = as_point(x, 2)
        if np.linalg.norm(self._scaled(p)) >= 1.0 - margin:
            raise PointNotInterior(f"point {p} is not strictly inside the ellipse")
        return p

    def boundary_point(self, theta: float) -> np.ndarray:
        a, b = self.semi_axes
        return self.center + np.array([a * math.cos(theta), b * math.sin(theta)])


_STAR_GRID = 4096


class StarDomain2D:
    """Planar domain star-shaped about the origin.

    Two kinds:
      * ``radial``    -- boundary given in polar form r = rho(theta) by a
        strictly positive 2*pi-periodic callable plus a Lipschitz bound.
      * ``conformal`` -- image of the unit disk under q(z) = a z^2 + z + a
        with 0 < a < 1/2 (univalent); its boundary has the polar form
        r(theta) = 1 + 2 a cos(theta).
    """

    def __init__(self, kind: str, rho=None, lipschitz: float | None = None,
                 a: float | None = None):
        if kind == "radial":
            if rho is None or lipschitz is None:
                raise BadParameter("radial star domain needs rho and a Lipschitz bound")
            thetas = np.linspace(0.0, 2.0 * math.pi, _STAR_GRID, endpoint=False)
            vals = np.array([float(rho(t)) for t in thetas])
            if not np.all(vals > 0.0):
                raise BadParameter("rho must be strictly positive on [0, 2pi)")
            self._rho = rho
            self._rho_max = float(vals.max())
            self.lipschitz = float(lipschitz)
            self.a = None
        elif kind == "conformal":
            if a is None or not 0.0 < a < 0.5:
                raise BadParameter("conformal coefficient must satisfy 0 < a < 1/2")
            self.a = float(a)
            self._rho = lambda t: 1.0 + 2.0 * self.a * np.cos(t)
            self._rho_max = 1.0 + 2.0 * self.a
            self.lipschitz = 2.0 * self.a
        else:
            raise BadParameter(f"unknown star domain kind {kind!r}")
        self.kind = kind

    @classmethod
    def radial(cls, rho, lipschitz: float) -> "StarDomain2D":
        return cls("radial", rho=rho, lipschitz=lipschitz)

    @classmethod
    def conformal(cls, a: float) -> "StarDomain2D":
        return cls("conformal", a=a)

    @property
    def dim(self) -> int:
        return 2

    def boundary_radius(self, theta):
        return self._rho(theta)

    def boundary_point(self, theta: float) -> np.ndarray:
        r = float(self._rho(theta))
        return np.array([r * math.cos(theta), r * math.sin(theta)])

    def map_conformal(self, z: complex) -> complex:
        """q(z) = a z^2 + z + a (conformal kind only)."""
        if self.kind != "conformal":
            raise BadParameter("map_conformal is defined for the conformal kind only")
        return self.a * z * z + z + self.a

    def contains(self, x) -> bool:
        p = as_point(x, 2)
        r = float(np.linalg.norm(p))
        if r == 0.0:
            return True
        return r < float(self._rho(math.atan2(p[1], p[0])))

    def require_interior(self, x, margin: float = INTERIOR_MARGIN) -> np.ndarray:
        p = as_point(x, 2)
        r = float(np.linalg.norm(p))
        rho = float(self._rho(math.atan2(p[1], p[0]))) if r > 0 else self._rho_max
        if r >= rho * (1.0 - margin):
            raise PointNotInterior(f"point {p} is not strictly inside the star domain")
        return p


# ---------------------------------------------------------------------------
# Chords
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Chord:
    """Line through ``base`` along ``direction`` with boundary hits at t=a<0 and t=b>0."""

    base: np.ndarray
    direction: np.ndarray
    t_neg: float
    t_pos: float

    @property
    def q1(self) -> np.ndarray:
        return self.base + self.t_neg * self.direction

    @property
    def q2(self) -> np.ndarray:
        return self.base + self.t_pos * self.direction

    @property
    def r1(self) -> float:
        return -self.t_neg

    @property
    def r2(self) -> float:
        return self.t_pos


def ball_chord_roots(ball: BallDomain, p: np.ndarray, dirs: np.ndarray):
    """Roots (a, b) of |p + t e - c|^2 = R^2 for each row e of ``dirs``.

    Vectorized core; assumes p strictly interior and unit rows.
    a < 0 < b and a*b = |p - c|^2 - R^2 for every direction.
    """
    d = p - ball.center
    beta = dirs @ d
    gamma = float(d @ d) - ball.radius ** 2
    s = np.sqrt(beta * beta - gamma)
    return -beta - s, -beta + s


def ellipse_chord_roots(ellipse: Ellipse2D, p: np.ndarray, dirs: np.ndarray):
    """Roots (a, b) of the ellipse quadratic along p + t e for each row of ``dirs``."""
    ax = np.asarray(ellipse.semi_axes)
    u = (p - ellipse.center) / ax
    v = dirs / ax
    alpha = np.sum(v * v, axis=-1)
    beta = v @ u
    gamma = float(u @ u) - 1.0
    s = np.sqrt(beta * beta - alpha * gamma)
    return (-beta - s) / alpha, (-beta + s) / alpha


def chord_through(domain, P, e) -> Chord:
    """Chord of ``domain`` through interior point P along unit direction e."""
    e = check_unit(e)
    if isinstance(domain, BallDomain):
        p = domain.require_interior(P)
        a, b = ball_chord_roots(domain, p, e[np.newaxis, :])
    elif isinstance(domain, Ellipse2D):
        p = domain.require_interior(P)
        a, b = ellipse_chord_roots(domain, p, e[np.newaxis, :])
    else:
        raise BadParameter("chord_through supports BallDomain and Ellipse2D")
    a, b = float(a[0]), float(b[0])
    if not a < 0.0 < b:
        raise PointNotInterior("chord roots do not bracket the base point")
    return Chord(base=p, direction=e, t_neg=a, t_pos=b)


_RAY_SCAN = 512
_RAY_MAX_ITER = 200
_RAY_TOL = 1e-12


def ray_hit_star(domain: StarDomain2D, P, e):
    """First boundary hit of the ray {P + t e : t > 0} of a 2-D star domain.

    Scans for sign changes of |P + t e| - rho(angle) along the ray and refines
    the unique crossing by bisection with secant acceleration.  Raises
    NotStarShapedFromP when the scan sees zero or several crossings.
    """
    e = check_unit(e)
    p = domain.require_interior(P)

    def g(t):
        x = p + t * e
        r = math.hypot(x[0], x[1])
        return r - float(domain.boundary_radius(math.atan2(x[1], x[0])))

    t_upper = 1.2 * (float(np.linalg.norm(p)) + domain._rho_max)
    ts = np.linspace(0.0, t_upper, _RAY_SCAN + 1)
    gs = np.array([g(t) for t in ts])
    signs = np.sign(gs)
    signs[signs == 0.0] = 1.0
    crossings = np.nonzero(np.diff(signs))[0]
    if len(crossings) != 1:
        raise NotStarShapedFromP(
            f"ray crosses the boundary {len(crossings)} times; expected exactly 1")
    i = crossings[0]
    lo, hi = float(ts[i]), float(ts[i + 1])
    glo, ghi = float(gs[i]), float(gs[i + 1])

    for _ in range(_RAY_MAX_ITER):
        if hi - lo <= _RAY_TOL * max(hi, 1.0):
            break
        # secant candidate, clipped into the bracket; fall back to bisection
        denom = ghi - glo
        t = lo - glo * (hi - lo) / denom if denom != 0.0 else 0.5 * (lo + hi)
        if not lo < t < hi:
            t = 0.5 * (lo + hi)
        gt = g(t)
        if gt == 0.0:
            lo = hi = t
            break
        if (gt < 0.0) == (glo < 0.0):
            lo, glo = t, gt
        else:
            hi, ghi = t, gt
    else:
        raise ConvergenceFailure("ray/boundary intersection did not converge")

    t_star = 0.5 * (lo + hi)
    return p + t_star * e, t_star


# ---------------------------------------------------------------------------
# Direction quadratures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DirectionQuadrature:
    """Weighted unit directions representing the normalized sphere measure."""

    directions: np.ndarray          # (N, dim)
    weights: np.ndarray             # (N,), sums to 1
    scheme: str
    resolution: int
    seed: int | None = None
    exactness: int | None = None    # gauss_product_3d only

    @property
    def dim(self) -> int:
        return self.directions.shape[1]

    def __len__(self) -> int:
        return self.directions.shape[0]

    def half_resolution(self) -> "DirectionQuadrature":
        """Coarser companion rule used for a-posteriori error estimates."""
        if self.scheme == "monte_carlo":
            n = max(len(self) // 2, 1)
            return DirectionQuadrature(self.directions[:n],
                                       np.full(n, 1.0 / n), self.scheme,
                                       n, self.seed, None)
        if self.scheme == "monte_carlo_design":
            n = 6 * max(len(self) // 12, 1)   # keep whole rotated axis sets
            return DirectionQuadrature(self.directions[:n],
                                       np.full(n, 1.0 / n), self.scheme,
                                       n // 6, self.seed, None)
        n = max(self.resolution // 2, 2)
        return _build(self.dim, self.scheme, n, self.seed)


def _uniform_angle_2d(n: int) -> DirectionQuadrature:
    thetas = 2.0 * math.pi * np.arange(n) / n
    dirs = np.column_stack([np.cos(thetas), np.sin(thetas)])
    return DirectionQuadrature(dirs, np.full(n, 1.0 / n), "uniform_angle_2d", n)


def _gauss_product_3d(n_polar: int) -> DirectionQuadrature:
    x, w = np.polynomial.legendre.leggauss(n_polar)
    m = 2 * n_polar
    phi = 2.0 * math.pi * np.arange(m) / m
    sin_t = np.sqrt(1.0 - x * x)
    dirs = np.empty((n_polar * m, 3))
    dirs[:, 0] = np.outer(sin_t, np.cos(phi)).ravel()
    dirs[:, 1] = np.outer(sin_t, np.sin(phi)).ravel()
    dirs[:, 2] = np.repeat(x, m)
    weights = np.repeat(w / 2.0, m) / m
    return DirectionQuadrature(dirs, weights, "gauss_product_3d", n_polar,
                               exactness=2 * n_polar - 1)


def _monte_carlo(dim: int, n: int, seed: int) -> DirectionQuadrature:
    rng = philox_stream(seed, STREAM_DIRECTIONS)
    g = rng.standard_normal((n, dim))
    dirs = g / np.linalg.norm(g, axis=1, keepdims=True)
    return DirectionQuadrature(dirs, np.full(n, 1.0 / n), "monte_carlo", n, seed)


# The six icosahedral axes form a spherical 5-design: their average integrates
# every spherical harmonic of degree 1..5 to zero exactly.
_GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0
_ICOSA_AXES = np.array([
    [0.0, 1.0, _GOLDEN], [0.0, 1.0, -_GOLDEN],
    [1.0, _GOLDEN, 0.0], [1.0, -_GOLDEN, 0.0],
    [_GOLDEN, 0.0, 1.0], [-_GOLDEN, 0.0, 1.0],
]) / math.sqrt(1.0 + _GOLDEN ** 2)


def _quaternion_rotations(rng: np.random.Generator, n: int) -> np.ndarray:
    """n Haar-uniform rotation matrices from unit quaternions (no LAPACK)."""
    q = rng.standard_normal((n, 4))
    q /= np.linalg.norm(q, axis=1, keepdims=True)
    w, x, y, z = q[:, 0], q[:, 1], q[:, 2], q[:, 3]
    rot = np.empty((n, 3, 3))
    rot[:, 0, 0] = 1 - 2 * (y * y + z * z)
    rot[:, 0, 1] = 2 * (x * y - w * z)
    rot[:, 0, 2] = 2 * (x * z + w * y)
    rot[:, 1, 0] = 2 * (x * y + w * z)
    rot[:, 1, 1] = 1 - 2 * (x * x + z * z)
    rot[:, 1, 2] = 2 * (y * z - w * x)
    rot[:, 2, 0] = 2 * (x * z - w * y)
    rot[:, 2, 1] = 2 * (y * z + w * x)
    rot[:, 2, 2] = 1 - 2 * (x * x + y * y)
    return rot


def _monte_carlo_design(n_rotations: int, seed: int) -> DirectionQuadrature:
    """Randomly rotated copies of the icosahedral axis set: 6 directions per draw.

    Unbiased over the sphere, and each rotated copy integrates spherical
    harmonics of degree <= 5 exactly, which sharply cuts the variance of
    plane-averaging estimators compared with independent normals.
    """
    rng = philox_stream(seed, STREAM_DIRECTIONS)
    rot = _quaternion_rotations(rng, n_rotations)
    dirs = (rot @ _ICOSA_AXES.T).transpose(0, 2, 1).reshape(-1, 3)
    n = dirs.shape[0]
    return DirectionQuadrature(dirs, np.full(n, 1.0 / n), "monte_carlo_design",
                               n_rotations, seed)


def _build(dim, scheme, resolution, seed) -> DirectionQuadrature:
    if scheme == "uniform_angle_2d":
        if dim != 2:
            raise BadParameter("uniform_angle_2d requires dim=2")
        return _uniform_angle_2d(resolution)
    if scheme == "gauss_product_3d":
        if dim != 3:
            raise BadParameter("gauss_product_3d requires dim=3")
        return _gauss_product_3d(resolution)
    if scheme == "monte_carlo":
        return _monte_carlo(dim, resolution, seed)
    if scheme == "monte_carlo_design":
        if dim != 3:
            raise BadParameter("monte_carlo_design requires dim=3")
        return _monte_carlo_design(resolution, seed)
    raise BadParameter(f"unknown direction scheme {scheme!r}")


def build_direction_quadrature(dim: int, scheme: str, resolution: int,
                               seed: int | None = None) -> DirectionQuadrature:
    """Weighted unit-direction set for the normalized measure on S^{dim-1}.

    uniform_angle_2d: ``resolution`` equally spaced angles, weight 1/N.
    gauss_product_3d: ``resolution`` Gauss-Legendre polar nodes times
        2*resolution uniform azimuths; exact for spherical harmonics of
        degree <= 2*resolution - 1.
    monte_carlo: ``resolution`` normalized Gaussian vectors from the
        counter-based stream (seed, STREAM_DIRECTIONS); weight 1/N.
    monte_carlo_design (3-D): ``resolution`` random rotations of the
        icosahedral axis set (6 directions each); unbiased, variance-reduced
        for plane averaging.
    """
    if resolution < 4:
        raise BadResolution("direction resolution must be at least 4")
    if scheme in ("monte_carlo", "monte_carlo_design") and seed is None:
        raise MissingSeed("Monte Carlo schemes require a seed")
    return _build(dim, scheme, resolution, seed)


def default_direction_quadrature(dim: int, resolution: int | None = None
                                 ) -> DirectionQuadrature:
    """Deterministic default: uniform angles in 2-D, Gauss product in 3-D."""
    if dim == 2:
        return build_direction_quadrature(2, "uniform_angle_2d", resolution or 4096)
    return build_direction_quadrature(3, "gauss_product_3d", resolution or 64)


# ---------------------------------------------------------------------------
# Disk involution
# ---------------------------------------------------------------------------

def mobius_involution(P, z) -> complex:
    """J_P(z) = (P - z)/(1 - conj(P) z), the chord involution of the unit circle.

    Defined for |P| < 1; an involution of the circle that also swaps 0 and P
    (the off-circle evaluations used by the moment identities).
    """
    p = _as_complex(P)
    if abs(p) >= 1.0:
        raise PNotInterior("P must lie in the open unit disk")
    w = _as_complex(z)
    return (p - w) / (1.0 - p.conjugate() * w)


# ---------------------------------------------------------------------------
# Plane sections of a 3-ball
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SectionDisk:
    """Disk cut from a 3-ball by a plane, with an in-plane orthonormal frame.

    ``base2d`` holds the coordinates (in the frame, origin at ``center3d``) of
    the interior point the section was built through.
    """

    center3d: np.ndarray
    radius: float
    frame: np.ndarray               # (2, 3), rows are the in-plane axes
    base2d: np.ndarray

    def to_3d(self, xi) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        return self.center3d + xi @ self.frame

    def boundary_points(self, phis: np.ndarray) -> np.ndarray:
        """3-D points of the section's boundary circle at the given angles."""
        circ = self.radius * np.column_stack([np.cos(phis), np.sin(phis)])
        return self.center3d + circ @ self.frame

    def as_disk2d(self) -> BallDomain:
        return BallDomain(center=np.zeros(2), radius=self.radius)


def plane_section(ball: BallDomain, P, normal) -> SectionDisk:
    """Section of a 3-ball by the plane through P with the given unit normal."""
    if ball.dim != 3:
        raise DimMismatch("plane_section requires a 3-dimensional ball")
    nu = check_unit(normal)
    p = ball.require_interior(P)
    d_signed = float((ball.center - p) @ nu)
    center3d = ball.center - d_signed * nu
    radius = math.sqrt(ball.radius ** 2 - d_signed ** 2)
    # deterministic frame: Gram-Schmidt of the smallest-|component| axis
    k = int(np.argmin(np.abs(nu)))
    u = -nu[k] * nu
    u[k] += 1.0
    u /= np.linalg.norm(u)
    v = np.cross(nu, u)
    frame = np.vstack([u, v])
    base2d = frame @ (p - center3d)
    return SectionDisk(center3d=center3d, radius=radius, frame=frame, base2d=base2d)
