"""Exit-distribution samplers for three kinds of Brownian traveler in a ball.

All three exit laws are sampled exactly (no path discretization):
  full  -- rejection against the ball's exit density on the boundary;
  plane -- random plane through P, then the in-plane exit via the disk
           automorphism pushforward of a uniform angle;
  line  -- random chord through P, then the 1-D gambler's-ruin endpoint.

Each traveler draws from its own counter-based stream of the given seed, so
reports are bit-identical across reruns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadParameter, RejectionBudgetExceeded
from .boundary import CapSpec, cap_indicator
from .geometry import (
    STREAM_TRAVELER_FULL,
    STREAM_TRAVELER_LINE,
    STREAM_TRAVELER_PLANE,
    BallDomain,
    ball_chord_roots,
    philox_stream,
)
from .poisson import cap_measure_poisson

REJECTION_BUDGET_PER_SAMPLE = 10 ** 6
RHO_SOFT_LIMIT = 0.8


@dataclass(frozen=True)
class ExitSample:
    """One boundary exit; ``auxiliary`` holds the plane normal or line direction."""

    traveler: str
    exit_point: np.ndarray
    auxiliary: np.ndarray | None = None


@dataclass(frozen=True)
class TravelerStats:
    name: str
    hits: int
    frequency: float
    std_error: float
    sigma_vs_oracle: float


@dataclass(frozen=True)
class ExperimentReport:
    travelers: tuple[TravelerStats, ...]
    oracle_measure: float
    max_deviation_in_sigmas: float
    n_samples: int
    seed: int


def _uniform_directions(rng: np.random.Generator, n: int, dim: int) -> np.ndarray:
    g = rng.standard_normal((n, dim))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


# ---------------------------------------------------------------------------
# Batch samplers
# ---------------------------------------------------------------------------

def exits_full_batch(ball: BallDomain, p: np.ndarray, rng: np.random.Generator,
                     n: int):
    """n exact samples of the full traveler's exit law; returns (points, acceptance rate).

    Rejection sampling: uniform boundary proposals accepted in proportion to
    the exit density, whose maximum over the boundary is
    (1 + rho) / (1 - rho)^(dim-1) at rho = |p - c|/R (relative to uniform).
    """
    dim = ball.dim
    xs = (p - ball.center) / ball.radius
    rho = float(np.linalg.norm(xs))
    max_density = (1.0 + rho) / (1.0 - rho) ** (dim - 1)
    budget = REJECTION_BUDGET_PER_SAMPLE * max(n, 1)
    out = np.empty((n, dim))
    filled = 0
    proposals = 0
    accepted_total = 0
    while filled < n:
        chunk = min(int((n - filled) * max_density * 1.2) + 64, 4_000_000)
        dirs = _uniform_directions(rng, chunk, dim)
        u = rng.random(chunk)
        dist2 = np.sum((dirs - xs) ** 2, axis=1)
        density = (1.0 - rho * rho) / dist2 ** (dim / 2.0)
        accepted = dirs[u * max_density <= density]
        take = min(len(accepted), n - filled)
        out[filled:filled + take] = accepted[:take]
        filled += take
        proposals += chunk
        accepted_total += len(accepted)
        if proposals > budget:
            raise RejectionBudgetExceeded(
                f"{proposals} proposals for {n} samples: point too close to the boundary")
    rate = accepted_total / proposals
    return ball.center + ball.radius * out, rate


def exits_disk_exact_batch(ball: BallDomain, p: np.ndarray,
                           rng: np.random.Generator, n: int) -> np.ndarray:
    """Exact 2-D exit sampler: pushforward of a uniform angle under the disk
    automorphism sending 0 to the (normalized) start point."""
    if ball.dim != 2:
        raise BadParameter("the exact disk sampler is 2-D only")
    z0 = complex(*((p - ball.center) / ball.radius))
    zeta = np.exp(1j * rng.uniform(0.0, 2.0 * math.pi, n))
    t = (zeta + z0) / (1.0 + np.conj(z0) * zeta)
    return ball.center + ball.radius * np.column_stack([t.real, t.imag])


def exits_plane_batch(ball: BallDomain, p: np.ndarray,
                      rng: np.random.Generator, n: int):
    """n samples of the plane traveler: uniform normal, then the exact in-plane
    disk exit, mapped back through the section frame.  Returns (points, normals)."""
    normals = _uniform_directions(rng, n, 3)
    d_signed = (ball.center - p) @ normals.T
    center3d = ball.center - d_signed[:, np.newaxis] * normals
    radius = np.sqrt(ball.radius ** 2 - d_signed ** 2)
    # per-row deterministic frame (Gram-Schmidt of the smallest-|component| axis)
    idx = np.argmin(np.abs(normals), axis=1)
    rows = np.arange(n)
    u = -normals[rows, idx][:, np.newaxis] * normals
    u[rows, idx] += 1.0
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    v = np.cross(normals, u)
    base = p - center3d
    z0 = (np.sum(base * u, axis=1) + 1j * np.sum(base * v, axis=1)) / radius
    zeta = np.exp(1j * rng.uniform(0.0, 2.0 * math.pi, n))
    t = (zeta + z0) / (1.0 + np.conj(z0) * zeta)
    exits = center3d + radius[:, np.newaxis] * (t.real[:, np.newaxis] * u
                                                + t.imag[:, np.newaxis] * v)
    return exits, normals


def exits_line_batch(ball: BallDomain, p: np.ndarray,
                     rng: np.random.Generator, n: int):
    """n samples of the line traveler: uniform direction, then the forward
    endpoint with probability r1/(r1+r2) (the 1-D exit law).  Returns
    (points, directions)."""
    dirs = _uniform_directions(rng, n, ball.dim)
    a, b = ball_chord_roots(ball, p, dirs)
    forward = rng.random(n) < (-a) / (b - a)
    t = np.where(forward, b, a)
    return p + t[:, np.newaxis] * dirs, dirs


# ---------------------------------------------------------------------------
# Per-sample API
# ---------------------------------------------------------------------------

def sample_exit_full(ball: BallDomain, P, rng_stream: np.random.Generator
                     ) -> ExitSample:
    p = ball.require_interior(P)
    pts, _ = exits_full_batch(ball, p, rng_stream, 1)
    return ExitSample(traveler="full", exit_point=pts[0])


def sample_exit_plane(ball: BallDomain, P, rng_stream: np.random.Generator
                      ) -> ExitSample:
    if ball.dim != 3:
        raise BadParameter("the plane traveler lives in 3-D")
    p = ball.require_interior(P)
    pts, normals = exits_plane_batch(ball, p, rng_stream, 1)
    return ExitSample(traveler="plane", exit_point=pts[0], auxiliary=normals[0])


def sample_exit_line(ball: BallDomain, P, rng_stream: np.random.Generator
                     ) -> ExitSample:
    p = ball.require_interior(P)
    pts, dirs = exits_line_batch(ball, p, rng_stream, 1)
    return ExitSample(traveler="line", exit_point=pts[0], auxiliary=dirs[0])


# ---------------------------------------------------------------------------
# Comparison harness
# ---------------------------------------------------------------------------

def _sigma(freq: float, se: float, target: float) -> float:
    if se == 0.0:
        return 0.0 if freq == target else math.inf
    return abs(freq - target) / se


def compare_exit_distributions(ball: BallDomain, P, cap: CapSpec, N: int,
                               seed: int,
                               full_method: str = "rejection") -> ExperimentReport:
    """Cap-hit frequencies of all applicable travelers against the Poisson
    oracle and against each other, in binomial standard-error units.

    ``full_method='exact2d'`` swaps the full traveler's rejection sampler for
    the exact disk sampler (the 2-D fallback for start points near the rim).
    """
    p = ball.require_interior(P)
    if N < 10 ** 3:
        raise BadParameter("need at least 1000 samples per traveler")
    ind = cap_indicator(cap, ball)
    oracle = cap_measure_poisson(ball, p, cap).value

    if full_method == "rejection":
        full_draw = lambda rng: exits_full_batch(ball, p, rng, N)[0]
    elif full_method == "exact2d":
        full_draw = lambda rng: exits_disk_exact_batch(ball, p, rng, N)
    else:
        raise BadParameter(f"unknown full_method {full_method!r}")
    samplers = [("full", STREAM_TRAVELER_FULL, full_draw)]
    if ball.dim == 3:
        samplers.append(("plane", STREAM_TRAVELER_PLANE,
                         lambda rng: exits_plane_batch(ball, p, rng, N)[0]))
    samplers.append(("line", STREAM_TRAVELER_LINE,
                     lambda rng: exits_line_batch(ball, p, rng, N)[0]))

    stats = []
    for name, stream, draw in samplers:
        pts = draw(philox_stream(seed, stream))
        hits = int(np.count_nonzero(np.asarray(ind.value(pts)) == 1.0))
        freq = hits / N
        se = math.sqrt(freq * (1.0 - freq) / N)
        stats.append(TravelerStats(name=name, hits=hits, frequency=freq,
                                   std_error=se,
                                   sigma_vs_oracle=_sigma(freq, se, oracle)))

    deviations = [t.sigma_vs_oracle for t in stats]
    for i in range(len(stats)):
        for j in range(i + 1, len(stats)):
            pooled = math.hypot(stats[i].std_error, stats[j].std_error)
            deviations.append(_sigma(stats[i].frequency, pooled, stats[j].frequency))
    return ExperimentReport(travelers=tuple(stats), oracle_measure=oracle,
                            max_deviation_in_sigmas=max(deviations),
                            n_samples=N, seed=seed)
