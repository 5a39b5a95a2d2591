"""Generalized metric spaces, rational-type contractions, coincidence
iteration and coupled functional-equation solving.

The package splits into five layers:

* :mod:`gmsfp.gms_core` — finite and sampled spaces satisfying the
  quadrilateral inequality, axiom validation, sequence predicates and
  pathology detection;
* :mod:`gmsfp.contractions` — map/control-function catalogs and the
  pairwise contraction-condition checkers;
* :mod:`gmsfp.iteration` — the Jungck coincidence engine, weak
  compatibility and brute-force verification;
* :mod:`gmsfp.dynprog` — the coupled sup-composition system on finite
  state/decision sets, solved through the same engine;
* :mod:`gmsfp.oracle` — deliberately naive reference implementations
  and seeded instance generators used for cross-validation.

The ``gmsfp`` console script (see :mod:`gmsfp.cli`) exposes the same
operations over JSON problem files.
"""

from .errors import (
    BoundednessViolation,
    CoefficientError,
    GenerationExhausted,
    GMSFPError,
    HypothesisViolated,
    MalformedTable,
    NoConvergence,
    SelectorFailure,
    StateSetMismatch,
    UnknownPoint,
)
from .gms_core import (
    CauchyCheck,
    FiniteGMS,
    PathologyReport,
    SampledIntervalSpace,
    SequenceRecord,
    ValidationReport,
    Violation,
    converges_to,
    detect_pathologies,
    four_point_space,
    is_gms_cauchy,
    reciprocal_probe,
    reciprocal_space,
    validate_gms,
)
from .contractions import (
    AffineMap,
    ConditionReport,
    ConstantMap,
    ConstWeight,
    ControlFunctions,
    HalvingMap,
    IdentityMap,
    MappingPair,
    PairViolation,
    CappedFn,
    SaturatingFn,
    ScaleFn,
    TableFn,
    TableMap,
    TableWeight,
    ThresholdWeight,
    check_admissible,
    check_coincidence_pair_weights,
    check_linear_contraction,
    check_orbit_regularity,
    check_rational_contraction,
    check_weighted_contraction,
    compute_comparison_term,
    compute_min_term,
    comparison_term_parts,
)
from .iteration import (
    CoincidenceResult,
    IterationTrace,
    bruteforce_coincidences,
    check_weak_compatibility,
    find_coincidence,
    jungck_iterate,
)
from .dynprog import (
    BoundedFunctional,
    DPProblem,
    DPSolution,
    RewardRule,
    bellman_step,
    check_lipschitz,
    check_operator_contraction,
    coupled_step,
    default_probe_pairs,
    solve_system,
    sup_gap_bound,
    sup_norm_distance,
    system_residual,
)
from .oracle import (
    RandomInstanceSpec,
    coupled_value_iteration,
    generate_space,
    random_dp_problem,
)

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "BoundedFunctional",
    "BoundednessViolation",
    "CappedFn",
    "CauchyCheck",
    "CoefficientError",
    "CoincidenceResult",
    "ConditionReport",
    "ConstWeight",
    "ConstantMap",
    "ControlFunctions",
    "DPProblem",
    "DPSolution",
    "FiniteGMS",
    "GMSFPError",
    "GenerationExhausted",
    "HalvingMap",
    "HypothesisViolated",
    "IdentityMap",
    "IterationTrace",
    "MalformedTable",
    "MappingPair",
    "NoConvergence",
    "PathologyReport",
    "PairViolation",
    "RandomInstanceSpec",
    "RewardRule",
    "SampledIntervalSpace",
    "SaturatingFn",
    "ScaleFn",
    "SelectorFailure",
    "SequenceRecord",
    "StateSetMismatch",
    "TableFn",
    "TableMap",
    "TableWeight",
    "ThresholdWeight",
    "UnknownPoint",
    "ValidationReport",
    "Violation",
    "bellman_step",
    "bruteforce_coincidences",
    "check_admissible",
    "check_coincidence_pair_weights",
    "check_lipschitz",
    "check_linear_contraction",
    "check_operator_contraction",
    "check_orbit_regularity",
    "check_rational_contraction",
    "check_weak_compatibility",
    "check_weighted_contraction",
    "comparison_term_parts",
    "compute_comparison_term",
    "compute_min_term",
    "converges_to",
    "coupled_step",
    "coupled_value_iteration",
    "default_probe_pairs",
    "detect_pathologies",
    "find_coincidence",
    "four_point_space",
    "generate_space",
    "is_gms_cauchy",
    "jungck_iterate",
    "random_dp_problem",
    "reciprocal_probe",
    "reciprocal_space",
    "solve_system",
    "sup_gap_bound",
    "sup_norm_distance",
    "system_residual",
    "validate_gms",
]
