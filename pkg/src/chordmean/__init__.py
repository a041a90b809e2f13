"""chordmean: chord-averaging Dirichlet solvers in disks and balls.

The value of a harmonic function at an interior point P is the average, over
all chords through P, of the linear interpolant of its boundary values at the
chord endpoints.  This package implements that averaging solver and its
biharmonic (Hermite-cubic) extension, Poisson-kernel reference solvers,
harmonic-measure geometry built on the same chords, and exact samplers for
the Brownian exit distributions the averages describe.
"""

from .errors import (
    BadBracket,
    BadDegree,
    BadIndex,
    BadParameter,
    BadResolution,
    ChordMeanError,
    ConfigError,
    ConvergenceFailure,
    DegenerateDirection,
    DegenerateInterval,
    DimMismatch,
    EmptyCap,
    GradientRequired,
    MissingSeed,
    NotStarShapedFromP,
    NumericalError,
    PNotInterior,
    PointNotInterior,
    PointNotOnBoundary,
    RejectionBudgetExceeded,
    UnsupportedDegree,
    XOutsideInterval,
)
from .geometry import (
    BallDomain,
    Chord,
    DirectionQuadrature,
    Ellipse2D,
    SectionDisk,
    StarDomain2D,
    build_direction_quadrature,
    chord_through,
    default_direction_quadrature,
    mobius_involution,
    philox_stream,
    plane_section,
    ray_hit_star,
)
from .boundary import (
    BiharmonicPolynomial,
    BoundaryData,
    CapSpec,
    HarmonicPolynomial,
    almansi_assemble,
    arc_cap,
    basis_indices,
    cap_indicator,
    constant_data,
    from_callable,
    harmonic_poly,
    homogeneous_biharmonic,
    linear_data,
)
from .poisson import (
    BoundaryQuadrature,
    SolveReport,
    build_boundary_quadrature,
    cap_measure_poisson,
    dirichlet_1d,
    measure_quadrature,
    poisson_kernel,
    poisson_solve,
)
from .averaging import (
    ChordAverageResult,
    chord_interpolant,
    cross_section_solve,
    solve_harmonic,
    solve_on_domain,
    chord_interpolant_max,
)
from .biharmonic import (
    HermiteCubic,
    hermite_cubic,
    hermite_monomial_at_zero,
    solve_biharmonic,
)
from .measure import (
    ConeCaps,
    cap_measure_ratio,
    center_of_mass_check,
    cone_identity_check,
    involution_image_measure,
    make_cone_caps,
    metric_ratio,
    nappe_fraction,
    star_angle_measure_check,
    subtended_moment,
)
from .brownian import (
    ExitSample,
    ExperimentReport,
    TravelerStats,
    compare_exit_distributions,
    sample_exit_full,
    sample_exit_line,
    sample_exit_plane,
)

__version__ = "0.1.0"
