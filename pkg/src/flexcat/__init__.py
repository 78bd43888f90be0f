"""Majorization, thermo-majorization, and flexible-catalyst search tools."""

from .conditions import (
    adjacent_ratio_bound_ok,
    boundary_ratios_ok,
    boundary_rigidity_holds,
    d3_no_go,
    endpoint_conditions_ok,
    k2_standard_witness,
    ratio_bound_holds,
    support_size_uniform,
)
from .errors import (
    BadNormalization,
    BadRange,
    DimensionMismatch,
    EmptyCycle,
    EmptyVector,
    EmptyViolationSet,
    FlexcatError,
    IndexOutOfRange,
    NegativeEntry,
    NotFeasible,
    NotSorted,
    PreconditionUnmet,
    SamplingFailed,
    WrongDimension,
    ZeroTail,
)
from .majorize import (
    ViolationReport,
    flexible_cycle_ok,
    incomparable,
    is_majorized_by,
    standard_catalysis_ok,
    vidal_probability,
    violation_indices,
)
from .probvec import (
    Cycle,
    ProbVec,
    SchmidtVec,
    make_cycle,
    make_prob_vec,
    sort_desc,
    tail_sum,
    tensor,
    uniform,
)
from .search import (
    ConjectureCandidate,
    ConjectureReport,
    GridSpec,
    LandscapeGrid,
    OptResult,
    best_flexible,
    best_standard,
    conjecture_search,
    per_step_probability,
    sample_incomparable_pair,
    scan_pflex_landscape,
    scan_thermo_feasibility,
    scan_thermo_standard,
)
from .thermo import (
    GibbsVec,
    LorenzCurve,
    ThermoContext,
    curve_geq,
    gibbs_tensor,
    gibbs_vector,
    lorenz_curve,
    thermo_flexible_ok,
    thermo_majorizes,
)

__version__ = "0.1.0"

__all__ = [
    "BadNormalization",
    "BadRange",
    "ConjectureCandidate",
    "ConjectureReport",
    "Cycle",
    "DimensionMismatch",
    "EmptyCycle",
    "EmptyVector",
    "EmptyViolationSet",
    "FlexcatError",
    "GibbsVec",
    "GridSpec",
    "IndexOutOfRange",
    "LandscapeGrid",
    "LorenzCurve",
    "NegativeEntry",
    "NotFeasible",
    "NotSorted",
    "OptResult",
    "PreconditionUnmet",
    "ProbVec",
    "SamplingFailed",
    "SchmidtVec",
    "ThermoContext",
    "ViolationReport",
    "WrongDimension",
    "ZeroTail",
    "adjacent_ratio_bound_ok",
    "best_flexible",
    "best_standard",
    "boundary_ratios_ok",
    "boundary_rigidity_holds",
    "conjecture_search",
    "curve_geq",
    "d3_no_go",
    "endpoint_conditions_ok",
    "flexible_cycle_ok",
    "gibbs_tensor",
    "gibbs_vector",
    "incomparable",
    "is_majorized_by",
    "k2_standard_witness",
    "lorenz_curve",
    "make_cycle",
    "make_prob_vec",
    "per_step_probability",
    "ratio_bound_holds",
    "sample_incomparable_pair",
    "scan_pflex_landscape",
    "scan_thermo_feasibility",
    "scan_thermo_standard",
    "sort_desc",
    "standard_catalysis_ok",
    "support_size_uniform",
    "tail_sum",
    "tensor",
    "thermo_flexible_ok",
    "thermo_majorizes",
    "uniform",
    "vidal_probability",
    "violation_indices",
]
