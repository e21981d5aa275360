"""Off-lattice SIR epidemic simulator with mean-field recurrence validation.

Agents carry disk-shaped interaction neighborhoods, random-walk inside the
unit square, and pass through timed infected/recovered stages. Deterministic
recurrences approximate the expected state counts at three levels of spatial
detail (well-mixed, expanding front, geometry-driven front), and the package
ships the fixed-point/stability analysis, the normalized curve-distance
error, and an experiment harness tying them together.
"""

from .analysis import (
    FixedPointReport,
    Jacobian2,
    classify,
    eigen2,
    find_fixed_points,
    jacobian_at,
    reports_to_json,
)
from .core import (
    ConfigError,
    Counts,
    ParamError,
    SimParams,
    Trajectory,
    load_config,
    parse_config,
    params_from_config,
    replicate_seed,
    rng_stream,
    validate,
)
from .geometry import (
    lens_angle,
    sparse_mu_A,
    sparse_mu_overlap,
    sparse_union_area,
    tiling_count,
)
from .harness import (
    CompareResult,
    ErrorRow,
    SurfaceCell,
    SweepSpec,
    compare,
    error_surface,
    expected_initial_susceptibles,
    rho0_for_expected_susceptibles,
    run_variant,
)
from .metrics import Curve, curve_error, normalize_pair, point_to_polyline, trajectory_curve
from .recurrence import (
    FrontState,
    GrrState,
    front_radius_update,
    global_step,
    global_trajectory,
    initial_front,
    local_step,
    local_trajectory,
    prob_in_transition_region,
    sparse_front_update,
    sparse_local_trajectory,
)
from .simulator import (
    BatchResult,
    Population,
    init_population,
    simulate,
    simulate_batch,
    step_movement,
    step_states,
    write_snapshot,
)

__version__ = "0.1.0"
