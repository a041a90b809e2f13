import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

import chordmean as cm
from chordmean.brownian import (
    exits_disk_exact_batch,
    exits_full_batch,
    exits_line_batch,
    exits_plane_batch,
)
from chordmean.geometry import philox_stream


DISK = cm.BallDomain(center=(0.0, 0.0), radius=1.0)
BALL = cm.BallDomain(center=(0.0, 0.0, 0.0), radius=1.0)

# 0.999 quantile of the chi-square distribution with 63 degrees of freedom
CHI2_63_Q999 = 103.44237731987324


def _freq(ind, pts):
    return float(np.mean(np.asarray(ind.value(pts)) == 1.0))


def test_exit_points_lie_on_boundary():
    rng = philox_stream(1, 1)
    p = np.array([0.4, -0.2])
    for pts in (exits_full_batch(DISK, p, rng, 500)[0],
                exits_line_batch(DISK, p, rng, 500)[0],
                exits_disk_exact_batch(DISK, p, rng, 500)):
        assert np.max(np.abs(np.linalg.norm(pts, axis=1) - 1.0)) <= 1e-9
    p3 = np.array([0.1, 0.2, -0.3])
    for pts in (exits_full_batch(BALL, p3, rng, 500)[0],
                exits_plane_batch(BALL, p3, rng, 500)[0],
                exits_line_batch(BALL, p3, rng, 500)[0]):
        assert np.max(np.abs(np.linalg.norm(pts, axis=1) - 1.0)) <= 1e-9


def test_full_sampler_from_center_is_uniform():
    rng = philox_stream(2, 1)
    pts, rate = exits_full_batch(DISK, np.zeros(2), rng, 50000)
    cap = cm.arc_cap(DISK, (0.0, 0.0), 0.2, 1.7)
    ind = cm.cap_indicator(cap, DISK)
    target = 1.5 / (2.0 * math.pi)
    sigma = math.sqrt(target * (1.0 - target) / 50000)
    assert abs(_freq(ind, pts) - target) <= 3.0 * sigma
    assert rate > 0.9   # at the center every proposal is accepted


def test_full_sampler_matches_exit_density():
    rng = philox_stream(3, 1)
    p = np.array([0.5, 0.0])
    pts, rate = exits_full_batch(DISK, p, rng, 10 ** 5)
    cap = cm.arc_cap(DISK, p, -math.pi / 2, math.pi / 2)
    ind = cm.cap_indicator(cap, DISK)
    target = 0.7951672353008665
    sigma = math.sqrt(target * (1.0 - target) / 10 ** 5)
    assert abs(_freq(ind, pts) - target) <= 3.0 * sigma


def test_full_sampler_acceptance_rate():
    rng = philox_stream(4, 1)
    p = np.array([0.8, 0.0])
    _, rate = exits_full_batch(DISK, p, rng, 20000)
    # acceptance is the reciprocal of the normalized kernel maximum
    expected = (1.0 - 0.8) / (1.0 + 0.8)
    assert rate > 0.05
    assert abs(rate - expected) <= 0.02


def test_full_sampler_chi_square_against_bin_integrals():
    rng = philox_stream(5, 1)
    p = np.array([0.5, 0.0])
    n = 10 ** 5
    pts, _ = exits_full_batch(DISK, p, rng, n)
    angles = np.arctan2(pts[:, 1], pts[:, 0]) % (2.0 * math.pi)
    counts = np.histogram(angles, bins=64, range=(0.0, 2.0 * math.pi))[0]
    edges = np.linspace(0.0, 2.0 * math.pi, 65)
    probs = np.array([cm.involution_image_measure(0.5, (a, b))
                      for a, b in zip(edges[:-1], edges[1:])])
    chi2 = float(np.sum((counts - n * probs) ** 2 / (n * probs)))
    assert chi2 <= CHI2_63_Q999


def test_rejection_budget_guard():
    rng = philox_stream(6, 1)
    p = np.array([0.0, 0.0, 1.0 - 2e-5])
    with pytest.raises(cm.RejectionBudgetExceeded):
        exits_full_batch(BALL, p, rng, 1)


def test_exact_disk_sampler_matches_rejection_law():
    p = np.array([0.5, 0.0])
    pts = exits_disk_exact_batch(DISK, p, philox_stream(7, 1), 10 ** 5)
    cap = cm.arc_cap(DISK, p, -math.pi / 2, math.pi / 2)
    ind = cm.cap_indicator(cap, DISK)
    target = 0.7951672353008665
    sigma = math.sqrt(target * (1.0 - target) / 10 ** 5)
    assert abs(_freq(ind, pts) - target) <= 3.0 * sigma


def test_plane_sampler_center_symmetry():
    pts, normals = exits_plane_batch(BALL, np.zeros(3), philox_stream(8, 1), 10 ** 5)
    upper = float(np.mean(pts[:, 2] > 0.0))
    assert abs(upper - 0.5) <= 3.0 * math.sqrt(0.25 / 10 ** 5)
    # the chosen plane contains the start point: exits are orthogonal to nu
    assert np.max(np.abs(np.sum(pts * normals, axis=1))) <= 1e-9


def test_plane_sampler_matches_poisson_oracle():
    p = np.array([0.0, 0.0, 0.5])
    half = math.acos(-0.5 / math.sqrt(1.25))
    cap = cm.CapSpec(vertex=p, axis=(0.0, 0.0, 1.0), half_angle=half)
    oracle = cm.cap_measure_poisson(BALL, p, cap).value
    pts, _ = exits_plane_batch(BALL, p, philox_stream(9, 1), 10 ** 5)
    ind = cm.cap_indicator(cap, BALL)
    sigma = math.sqrt(oracle * (1.0 - oracle) / 10 ** 5)
    assert abs(_freq(ind, pts) - oracle) <= 3.0 * sigma


def test_line_sampler_center():
    pts, _ = exits_line_batch(DISK, np.zeros(2), philox_stream(10, 1), 10 ** 5)
    right = float(np.mean(pts[:, 0] > 0.0))
    assert abs(right - 0.5) <= 3.0 * math.sqrt(0.25 / 10 ** 5)


def test_line_sampler_expectation_matches_chord_average():
    # E[f(exit)] under the line law equals the chord-average solve (4 sigma)
    rng = np.random.default_rng(11)
    dq = cm.build_direction_quadrature(2, "uniform_angle_2d", 2 ** 14)
    n = 20000
    for i in range(10):
        p = rng.uniform(-0.6, 0.6, 2)
        t1 = rng.uniform(0.0, 2.0 * math.pi)
        cap = cm.arc_cap(DISK, p, t1, t1 + rng.uniform(0.4, 4.0))
        ind = cm.cap_indicator(cap, DISK)
        quad = cm.solve_harmonic(DISK, ind, p, dq).value
        pts, _ = exits_line_batch(DISK, p, philox_stream(12, i), n)
        freq = _freq(ind, pts)
        sigma = math.sqrt(max(quad * (1.0 - quad), 1e-12) / n)
        assert abs(freq - quad) <= 4.0 * sigma


def test_line_sampler_exit_probability():
    # chord a=-0.5, b=1.5: forward exit has probability r1/(r1+r2) = 0.25
    ball = cm.BallDomain(center=(0.5, 0.0), radius=1.0)
    rng = philox_stream(13, 1)
    pts, dirs = exits_line_batch(ball, np.zeros(2), rng, 10 ** 5)
    along_x = np.abs(dirs[:, 0]) > 0.999
    far = pts[along_x, 0] > 0.5   # exit near (1.5, 0) rather than (-0.5, 0)
    freq = float(np.mean(far))
    # conditioned on near-axis chords the far endpoint wins with probability
    # r1/(r1+r2) ~ 0.25
    assert abs(freq - 0.25) <= 0.05


def test_sample_exit_wrappers():
    sample = cm.sample_exit_full(DISK, (0.2, 0.1), philox_stream(14, 1))
    assert sample.traveler == "full"
    assert abs(np.linalg.norm(sample.exit_point) - 1.0) <= 1e-9
    sample = cm.sample_exit_plane(BALL, (0.1, 0.0, 0.2), philox_stream(14, 2))
    assert sample.traveler == "plane"
    assert sample.auxiliary is not None
    sample = cm.sample_exit_line(DISK, (0.2, 0.1), philox_stream(14, 3))
    assert sample.traveler == "line"
    with pytest.raises(cm.BadParameter):
        cm.sample_exit_plane(DISK, (0.0, 0.0), philox_stream(14, 4))


def test_compare_exit_distributions():
    p = (0.0, 0.0, 0.5)
    half = math.acos(-0.5 / math.sqrt(1.25))
    cap = cm.CapSpec(vertex=p, axis=(0.0, 0.0, 1.0), half_angle=half)
    report = cm.compare_exit_distributions(BALL, p, cap, 20000, seed=17)
    assert {t.name for t in report.travelers} == {"full", "plane", "line"}
    for t in report.travelers:
        assert 0.0 <= t.frequency <= 1.0
        assert_allclose(t.std_error,
                        math.sqrt(t.frequency * (1.0 - t.frequency) / 20000))
        assert t.sigma_vs_oracle <= 4.0
    rerun = cm.compare_exit_distributions(BALL, p, cap, 20000, seed=17)
    assert rerun == report

    arc = cm.arc_cap(DISK, (0.5, 0.0), -math.pi / 2, math.pi / 2)
    report2d = cm.compare_exit_distributions(DISK, (0.5, 0.0), arc, 20000, seed=17)
    assert {t.name for t in report2d.travelers} == {"full", "line"}
    assert report2d.max_deviation_in_sigmas <= 4.0


def test_compare_exit_distributions_validation():
    arc = cm.arc_cap(DISK, (0.5, 0.0), 0.0, 1.0)
    with pytest.raises(cm.BadParameter):
        cm.compare_exit_distributions(DISK, (0.5, 0.0), arc, 100, seed=1)
