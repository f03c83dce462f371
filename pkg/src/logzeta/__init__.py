"""Exact topological zeta functions, monodromy support and non-resonance
certificates from the combinatorial data of an embedded resolution."""

from .algebra import (
    KPoly,
    LinearForm,
    MultiPoly,
    RationalFunctionNF,
    divide_out,
    normalize_fraction,
    sum_of_simple_terms,
)
from .asymptotics import (
    DominanceResult,
    LeadingTerm,
    dominance_check,
    leading_chi_ambient,
    leading_chi_complement,
    leading_chi_section,
)
from .genericity import (
    AugmentedDatum,
    AvgReport,
    ConeReport,
    FrakLVector,
    OrderOneReport,
    ResonanceError,
    StrongMCCertificate,
    ThresholdReport,
    augment,
    bs_translates,
    certify_order_one,
    check_avg,
    frakl_membership,
    make_avg,
    make_hyperplane_set,
    pole_separation_threshold,
    q_point,
    residue_sum,
    sixone_example_cones,
    strong_mc_certificate,
)
from .monodromy import (
    MCReport,
    MonodromyZetaFactors,
    Subtorus,
    TorusDivisor,
    cancellation_diagnostic,
    check_monodromy_conjecture,
    exp_hyperplane,
    local_monodromy_zeta,
    monodromy_support,
    restrict_support_to_diagonal,
    torus_divisor,
)
from .resolution import (
    AmpleVector,
    ChiValue,
    Divisor,
    LocalFiberDatum,
    ResolutionDatum,
    SchemaError,
    Stratum,
    ValidationReport,
    collapse_tuple,
    derived_quantities,
    dumps_datum,
    load_datum,
    loads_datum,
)
from .topzeta import (
    CandidateHyperplane,
    PoleClass,
    PoleReport,
    build_topzeta,
    candidate_hyperplanes,
    pole_orders,
    residue_first_order,
    specialize_diagonal,
)

__version__ = "0.1.0"
