"""Boundary data on domain boundaries: harmonic and biharmonic polynomial
families with exact gradients, cap indicators, and wrappers for user callables.

Harmonic bases are explicit monomial tables with rational coefficients
(2-D: Re z^m / Im z^m; 3-D: solid harmonics up to degree 6), generated once
by an exact integer recurrence, so values and gradients carry no
special-function error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    BadIndex,
    BadParameter,
    DimMismatch,
    PointNotInterior,
    UnsupportedDegree,
)
from .geometry import as_point, check_unit

MAX_DEGREE = 6


# ---------------------------------------------------------------------------
# Monomial-table polynomials
# ---------------------------------------------------------------------------

class _Poly:
    """Polynomial as {exponent tuple: coefficient}; evaluates on (..., dim)."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: dict):
        self.dim = dim
        self.terms = {e: float(c) for e, c in terms.items() if c != 0}

    def __call__(self, pts):
        pts = np.asarray(pts, dtype=float)
        out = np.zeros(pts.shape[:-1])
        for exps, c in self.terms.items():
            term = np.full(pts.shape[:-1], c)
            for j, e in enumerate(exps):
                if e:
                    term = term * pts[..., j] ** e
            out += term
        return out

    def partial(self, j: int) -> "_Poly":
        terms = {}
        for exps, c in self.terms.items():
            if exps[j]:
                e = list(exps)
                e[j] -= 1
                key = tuple(e)
                terms[key] = terms.get(key, 0.0) + c * exps[j]
        return _Poly(self.dim, terms)

    def laplacian(self) -> "_Poly":
        terms = {}
        for j in range(self.dim):
            second = self.partial(j).partial(j)
            for exps, c in second.terms.items():
                terms[exps] = terms.get(exps, 0.0) + c
        return _Poly(self.dim, terms)

    def scaled(self, s: float) -> "_Poly":
        return _Poly(self.dim, {e: c * s for e, c in self.terms.items()})

    def plus(self, other: "_Poly") -> "_Poly":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0.0) + c
        return _Poly(self.dim, terms)

    def times(self, other: "_Poly") -> "_Poly":
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                terms[key] = terms.get(key, 0.0) + c1 * c2
        return _Poly(self.dim, terms)


def _circle_power(k: int):
    """Exact monomial expansions of Re((x+iy)^k) and Im((x+iy)^k)."""
    re: dict = {}
    im: dict = {}
    for j in range(k + 1):
        c = Fraction(math.comb(k, j))
        key = (k - j, j)
        if j % 4 == 0:
            re[key] = re.get(key, 0) + c
        elif j % 4 == 1:
            im[key] = im.get(key, 0) + c
        elif j % 4 == 2:
            re[key] = re.get(key, 0) - c
        else:
            im[key] = im.get(key, 0) - c
    return re, im


def _basis_2d(m: int, k: str) -> _Poly:
    re, im = _circle_power(m)
    return _Poly(2, re if k == "re" else im)


def _basis_3d(m: int, k: int) -> _Poly:
    """Solid harmonic of degree m: body(z, x^2+y^2) times Re/Im((x+iy)^|k|).

    The body coefficients follow the exact recurrence forced by harmonicity;
    a_0 = 1 so the leading term is z^(m-|k|) times the angular factor.
    """
    kk = abs(k)
    re, im = _circle_power(kk)
    angular = re if k >= 0 else im
    p = m - kk
    body: dict = {}
    a = Fraction(1)
    for j in range(p // 2 + 1):
        for i in range(j + 1):
            key = (2 * i, 2 * (j - i), p - 2 * j)
            body[key] = body.get(key, 0) + a * math.comb(j, i)
        a *= Fraction(-(p - 2 * j) * (p - 2 * j - 1), 4 * (j + 1) * (j + kk + 1))
    terms: dict = {}
    for (bx, by, bz), bc in body.items():
        for (ax, ay), ac in angular.items():
            key = (bx + ax, by + ay, bz)
            terms[key] = terms.get(key, 0) + bc * ac
    return _Poly(3, terms)


_BASIS_CACHE: dict = {}


def _basis(dim: int, m: int, k) -> _Poly:
    key = (dim, m, k)
    if key not in _BASIS_CACHE:
        _BASIS_CACHE[key] = _basis_2d(m, k) if dim == 2 else _basis_3d(m, k)
    return _BASIS_CACHE[key]


def _check_index(dim: int, m: int, k) -> None:
    if dim not in (2, 3):
        raise DimMismatch("harmonic bases exist for dim 2 and 3")
    if not 0 <= m <= MAX_DEGREE:
        raise UnsupportedDegree(f"degree {m} outside the tabulated range 0..{MAX_DEGREE}")
    if dim == 2:
        if k not in ("re", "im") or (m == 0 and k == "im"):
            raise BadIndex(f"2-D degree-{m} index must be 're' or 'im' (nonzero)")
    else:
        if not isinstance(k, (int, np.integer)) or not -m <= k <= m:
            raise BadIndex(f"3-D degree-{m} index must be an integer in [-{m}, {m}]")


def basis_indices(dim: int, m: int):
    """All valid basis indices for (dim, m)."""
    if dim == 2:
        return ("re",) if m == 0 else ("re", "im")
    return tuple(range(-m, m + 1))


# ---------------------------------------------------------------------------
# Boundary data container
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryData:
    """Boundary values f (and optionally grad f) as vectorized evaluators.

    ``value`` and ``gradient`` accept a point (dim,) or a batch (N, dim).
    ``exact_solution``, when present, evaluates the known solution of the
    associated boundary value problem at interior points (used to fill solver
    oracles and residuals).
    """

    value: object
    gradient: object = None
    smoothness: str = "c1"
    exact_solution: object = None

    def __post_init__(self):
        if self.smoothness not in ("c1", "c0", "indicator"):
            raise BadParameter(f"unknown smoothness tag {self.smoothness!r}")
        if self.smoothness == "c1" and self.gradient is None:
            raise BadParameter("c1 data requires a gradient")

    def __call__(self, x):
        return float(self.value(as_point(x)))


def from_callable(f, gradient=None, smoothness: str | None = None,
                  vectorized: bool = False) -> BoundaryData:
    """Wrap user callables; non-vectorized ones are looped over rows."""
    if smoothness is None:
        smoothness = "c1" if gradient is not None else "c0"
    if vectorized:
        return BoundaryData(f, gradient, smoothness)

    def value(pts):
        pts = np.asarray(pts, dtype=float)
        if pts.ndim == 1:
            return f(pts)
        return np.array([f(p) for p in pts])

    grad = None
    if gradient is not None:
        def grad(pts):
            pts = np.asarray(pts, dtype=float)
            if pts.ndim == 1:
                return np.asarray(gradient(pts), dtype=float)
            return np.array([gradient(p) for p in pts])

    return BoundaryData(value, grad, smoothness)


def constant_data(c: float) -> BoundaryData:
    def value(pts):
        pts = np.asarray(pts, dtype=float)
        return np.full(pts.shape[:-1], float(c))

    def gradient(pts):
        pts = np.asarray(pts, dtype=float)
        return np.zeros(pts.shape)

    return BoundaryData(value, gradient, "c1", exact_solution=value)


def linear_data(coeffs, const: float = 0.0) -> BoundaryData:
    """f(x) = coeffs . x + const with its exact gradient."""
    a = np.asarray(coeffs, dtype=float)

    def value(pts):
        return np.asarray(pts, dtype=float) @ a + const

    def gradient(pts):
        pts = np.asarray(pts, dtype=float)
        return np.broadcast_to(a, pts.shape).copy()

    return BoundaryData(value, gradient, "c1", exact_solution=value)


# ---------------------------------------------------------------------------
# Harmonic polynomials
# ---------------------------------------------------------------------------

class HarmonicPolynomial:
    """Linear combination of tabulated harmonic basis polynomials."""

    def __init__(self, dim: int, terms):
        terms = tuple((int(m), k, float(c)) for m, k, c in terms)
        for m, k, _ in terms:
            _check_index(dim, m, k)
        self.dim = dim
        self.terms = terms
        poly = _Poly(dim, {})
        for m, k, c in terms:
            poly = poly.plus(_basis(dim, m, k).scaled(c))
        self._poly = poly
        self._grads = [poly.partial(j) for j in range(dim)]

    @classmethod
    def zero(cls, dim: int) -> "HarmonicPolynomial":
        return cls(dim, [])

    @property
    def degree(self) -> int:
        return max((m for m, _, _ in self.terms), default=0)

    def value(self, pts):
        return self._poly(pts)

    def gradient(self, pts):
        pts = np.asarray(pts, dtype=float)
        return np.stack([g(pts) for g in self._grads], axis=-1)

    def __add__(self, other: "HarmonicPolynomial") -> "HarmonicPolynomial":
        if self.dim != other.dim:
            raise DimMismatch("cannot add polynomials of different dimension")
        return HarmonicPolynomial(self.dim, self.terms + other.terms)

    def __rmul__(self, s: float) -> "HarmonicPolynomial":
        return HarmonicPolynomial(self.dim, [(m, k, s * c) for m, k, c in self.terms])

    def boundary_data(self) -> BoundaryData:
        return BoundaryData(self.value, self.gradient, "c1",
                            exact_solution=self.value)


def harmonic_poly(dim: int, m: int, k) -> HarmonicPolynomial:
    """Basis harmonic polynomial: 2-D Re z^m / Im z^m, 3-D solid harmonic.

    Homogeneous of degree m with an exact analytic gradient.
    """
    _check_index(dim, m, k)
    return HarmonicPolynomial(dim, [(m, k, 1.0)])


# ---------------------------------------------------------------------------
# Biharmonic polynomials (ball-adapted two-harmonic form)
# ---------------------------------------------------------------------------

class BiharmonicPolynomial:
    """u = h1 + (|x|^2 - 1) h2 with h1, h2 harmonic; u is biharmonic.

    On the unit sphere the trace is h1 and the gradient is grad h1 + 2 x h2;
    ``value``/``gradient`` evaluate the exact polynomial anywhere, so the data
    is usable on any ball's boundary.
    """

    def __init__(self, h1: HarmonicPolynomial, h2: HarmonicPolynomial):
        if h1.dim != h2.dim:
            raise DimMismatch("h1 and h2 must share a dimension")
        self.dim = h1.dim
        self.h1 = h1
        self.h2 = h2
        r2_minus_1 = _Poly(self.dim, {
            tuple(2 if j == i else 0 for j in range(self.dim)): 1.0
            for i in range(self.dim)}).plus(
                _Poly(self.dim, {(0,) * self.dim: -1.0}))
        self._poly = h1._poly.plus(r2_minus_1.times(h2._poly))
        self._grads = [self._poly.partial(j) for j in range(self.dim)]

    def value(self, pts):
        return self._poly(pts)

    def gradient(self, pts):
        pts = np.asarray(pts, dtype=float)
        return np.stack([g(pts) for g in self._grads], axis=-1)

    def boundary_data(self) -> BoundaryData:
        return BoundaryData(self.value, self.gradient, "c1",
                            exact_solution=self.value)


def almansi_assemble(h1: HarmonicPolynomial, h2: HarmonicPolynomial
                     ) -> BiharmonicPolynomial:
    """Biharmonic polynomial h1 + (|x|^2 - 1) h2 with boundary-trace evaluators."""
    return BiharmonicPolynomial(h1, h2)


def homogeneous_biharmonic(h1: HarmonicPolynomial, h2: HarmonicPolynomial
                           ) -> BiharmonicPolynomial:
    """Homogeneous biharmonic u = h1 + |x|^2 h2 (h1 degree m, h2 degree m-2).

    Identical as a polynomial to (h1 + h2) + (|x|^2 - 1) h2, which is how it
    is represented internally.
    """
    return BiharmonicPolynomial(h1 + h2, h2)


# ---------------------------------------------------------------------------
# Spherical-cap indicators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CapSpec:
    """Double-cone nappe selector: directions from ``vertex`` within
    ``half_angle`` of +-``axis`` cut the cap(s) from the boundary."""

    vertex: np.ndarray
    axis: np.ndarray
    half_angle: float
    nappe: str = "plus"

    def __post_init__(self):
        object.__setattr__(self, "vertex", as_point(self.vertex))
        object.__setattr__(self, "axis", check_unit(self.axis))
        if not 0.0 < self.half_angle < math.pi:
            raise BadParameter("half_angle must lie in (0, pi)")
        if self.nappe not in ("plus", "minus", "both"):
            raise BadParameter("nappe must be 'plus', 'minus', or 'both'")


def arc_cap(ball, P, theta1: float, theta2: float) -> CapSpec:
    """Cap (seen from P) whose cone cuts exactly the circle arc [theta1, theta2].

    Angles are taken about the ball center; the cone edge rays pass through
    the arc endpoints, and the arc midpoint fixes which of the two candidate
    cones is meant.
    """
    p = ball.require_interior(P)
    if theta2 <= theta1:
        raise BadParameter("arc must satisfy theta1 < theta2")

    def direction_to(theta):
        q = ball.center + ball.radius * np.array([math.cos(theta), math.sin(theta)])
        v = q - p
        return v / np.linalg.norm(v)

    u1 = direction_to(theta1)
    u2 = direction_to(theta2)
    um = direction_to(0.5 * (theta1 + theta2))
    bisector = u1 + u2
    norm = np.linalg.norm(bisector)
    if norm < 1e-12:
        axis, half = um, 0.5 * math.pi
    else:
        axis = bisector / norm
        half = math.acos(min(max(float(axis @ u1), -1.0), 1.0))
        if float(axis @ um) < math.cos(half):
            axis, half = -axis, math.pi - half
    return CapSpec(vertex=p, axis=axis, half_angle=half, nappe="plus")


def cap_indicator(cap: CapSpec, domain) -> BoundaryData:
    """Indicator of the boundary cap(s) cut by the cone of ``cap``.

    Points exactly on the cone edge score 1/2 (a measure-zero tie rule).
    """
    if not domain.contains(cap.vertex):
        raise PointNotInterior("cap vertex must lie inside the domain")
    vertex = cap.vertex
    axis = cap.axis
    c = math.cos(cap.half_angle)
    if abs(c) < 1e-15:
        c = 0.0      # a half-angle of pi/2 must leave no crack at the equator
    nappe = cap.nappe

    def value(pts):
        pts = np.asarray(pts, dtype=float)
        v = pts - vertex
        d = (v @ axis) / np.linalg.norm(v, axis=-1)
        def side(s):
            return np.where(s > c, 1.0, np.where(s == c, 0.5, 0.0))
        if nappe == "plus":
            return side(d)
        if nappe == "minus":
            return side(-d)
        # union; a point on the shared edge of both nappes is covered fully
        return np.minimum(side(d) + side(-d), 1.0)

    return BoundaryData(value, None, "indicator")
