"""Exact sequential lifting of cover inequalities for 0-1 knapsack sets."""

from .errors import InfeasibleLift, LiftkitError, ValidationError
from .gu import build_gu_task, expected_gu_coefficients, gen_f, represent_subset_sum
from .hardness import (
    RppInstance,
    build_hard_instance,
    decide_rpp_via_lifting,
    predicted_hard_coefficients,
    preprocess_rpp,
    solve_rpp,
    validate_rpp,
)
from .knapsack import (
    KnapsackSet,
    Partition,
    enumerate_feasible_points,
    is_cover,
    is_minimal_cover,
    knapsack_max,
    validate_lifting_task,
)
from .lifting import (
    LiftedCoverInequality,
    LiftingTask,
    down_lift_coefficient,
    scale_task,
    sequential_lift,
    up_lift_coefficient,
)
from .verify import (
    Inequality,
    brute_force_lift_oracle,
    check_facet,
    check_validity,
    polytope_dimension,
)

__version__ = "0.1.0"
