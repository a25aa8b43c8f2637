"""Exact arithmetic and verification toolkit for Somos-style sequences."""

__version__ = "0.1.0"

from .arith import (
    ComplexDomain,
    CountingDomain,
    Domain,
    NumericOverflow,
    PolyFracDomain,
    Polynomial,
    PrimeField,
    QQ,
    QuadExt,
    RationalDomain,
    RationalFunction,
    ZeroInverse,
    is_prime,
    poly_gcd,
)
from .sequences import (
    DegenerateTriangle,
    GapAtIndex,
    NotASquare,
    SequenceView,
    SomosSpec,
    make_view,
    named_spec,
    named_view,
    registry_names,
)
from .relations import (
    CatalogEntry,
    Relation,
    RelationReport,
    TransformedView,
    catalog,
    catalog_names,
    relation_residual,
    run_catalog,
    run_entry,
    verify_relation,
)
from .detlab import (
    DetReport,
    DetSpec,
    NumericDetReport,
    d_det,
    d_matrix,
    det_suite_names,
    dodgson_check,
    fourvars_check,
    run_det_suite,
    sin_det_check,
    subscript_sum_check,
    theta_det_check,
    theta_mode_check,
)
from .fasteval import (
    DoubleCheckReport,
    LadderDegenerate,
    LadderResult,
    LadderState,
    Window,
    eds_double,
    eds_ladder,
    mixed_step,
    somos4_add,
    somos4_double,
    somos4_ladder,
    somos5_add,
    somos5_double,
    somos5_ladder,
    somos7_double_check,
    speedup_step,
    window_recurrence_ok,
)
from .edspoly import (
    BridgeReport,
    ChebyshevReport,
    DegreeReport,
    DivisibilityReport,
    NotPolynomial,
    POLY_KINDS,
    PolynomialityReport,
    ProgressionReport,
    RootProximityReport,
    ToleranceExceeded,
    bridge_check,
    chebyshev_check,
    degree_check,
    degree_formula,
    kind_view,
    poly_dump,
    poly_term,
    polynomiality_check,
    progression_check,
    progression_names,
    root_proximity_check,
    specialization_matches,
    specialize,
    strong_divisibility,
    t_gauge_check,
)
from .modtheta import (
    AmReport,
    CurveReport,
    JacobiRow,
    NotAPower,
    NotOnCircle,
    PropagationStuck,
    QuasiperiodReport,
    RecurrenceReport,
    SeedInconsistent,
    SeedReport,
    ShiftPattern,
    SingularSystem,
    ThetaTable,
    curve_check,
    curve_parameter,
    discover_recurrence,
    jacobi_from_theta,
    propagate,
    quasiperiod_scan,
    seed_table,
    seed_validate,
    unit_circle_am,
)
from .thetanum import (
    FitResult,
    NoConvergence,
    NonConvergent,
    NumericOverflow,
    PairReport,
    SingularJacobian,
    ThetaParams,
    closed_form_eval,
    fit_params,
    pair_groups,
    pair_table_check,
    paper_params,
    polished_params,
    printed_values,
    spurious_pair_check,
    theta,
    theta1_log,
    theta4_product,
)
