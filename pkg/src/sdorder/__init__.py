"""Deciders for stochastic dominance orders and their weighted relaxations.

The package answers, for a pair of finitely-represented distributions,
whether one dominates the other in the first- or second-order sense or
in one of the interpolating orders steered by a weight function, and it
computes the smallest weight that makes the answer yes.  Utilities with
piecewise-linear marginal value connect every order to expected-utility
comparisons, with samplers to cross-check each verdict.
"""

from .distributions import (
    DiscretePMF,
    Distribution,
    EmptyInput,
    WeightMismatch,
    convolve,
    dirac,
    from_samples,
    left_support,
    mean,
    mixture,
    shift,
)
from .dominance import (
    OrderTag,
    Verdict,
    check_easd,
    check_ffsd,
    check_fractional,
    check_fsd,
    check_mfsd,
    check_ssd,
)
from .gamma import (
    EpsilonFn,
    EpsilonOutOfRange,
    GammaFn,
    GammaOutOfRange,
    Infeasible,
    NotMonotone,
    NotSSDOrdered,
    RangeViolation,
    min_constant_epsilon,
    min_constant_gamma,
    min_gamma,
    validate_epsilon,
    validate_gamma,
)
from .generators import (
    NoValidRational,
    ParameterViolation,
    ThetaVariant,
    example_identical_means,
    example_local_interpolation,
    example_squares,
    example_strict_inclusion,
    example_theta_family,
)
from .oracle import (
    AgreementReport,
    SamplerConfig,
    agreement_easd,
    agreement_ffsd,
    agreement_mfsd,
    greediness_oracle,
    sample_ff_utilities,
    sample_mf_utilities,
)
from .piecewise import (
    DivisionByZeroGamma,
    NonIntegrableTail,
    PiecewiseFn,
    crossings,
    cum_area,
    first_negative_point,
    total_area,
    weighted_area,
)
from .utility import (
    ExclusionKind,
    ExclusionVerdict,
    GreedinessProfile,
    MembershipVerdict,
    NonPositiveSlope,
    NonStepGammaOnNegativeRegion,
    UtilityPWL,
    ara_bound_report,
    check_dpm_gamma,
    check_membership_asd,
    check_membership_fractional,
    combine,
    expected_utility_gap,
    global_greediness,
    greediness_profile,
    make_base_asd,
    make_base_ff,
    make_base_mf,
    mfsd_exclusion,
    partial_greediness,
    translate,
)

__all__ = [
    "DiscretePMF",
    "Distribution",
    "EmptyInput",
    "WeightMismatch",
    "convolve",
    "dirac",
    "from_samples",
    "left_support",
    "mean",
    "mixture",
    "shift",
    "OrderTag",
    "Verdict",
    "check_easd",
    "check_ffsd",
    "check_fractional",
    "check_fsd",
    "check_mfsd",
    "check_ssd",
    "EpsilonFn",
    "EpsilonOutOfRange",
    "GammaFn",
    "GammaOutOfRange",
    "Infeasible",
    "NotMonotone",
    "NotSSDOrdered",
    "RangeViolation",
    "min_constant_epsilon",
    "min_constant_gamma",
    "min_gamma",
    "validate_epsilon",
    "validate_gamma",
    "NoValidRational",
    "ParameterViolation",
    "ThetaVariant",
    "example_identical_means",
    "example_local_interpolation",
    "example_squares",
    "example_strict_inclusion",
    "example_theta_family",
    "AgreementReport",
    "SamplerConfig",
    "agreement_easd",
    "agreement_ffsd",
    "agreement_mfsd",
    "greediness_oracle",
    "sample_ff_utilities",
    "sample_mf_utilities",
    "DivisionByZeroGamma",
    "NonIntegrableTail",
    "PiecewiseFn",
    "crossings",
    "cum_area",
    "first_negative_point",
    "total_area",
    "weighted_area",
    "ExclusionKind",
    "ExclusionVerdict",
    "GreedinessProfile",
    "MembershipVerdict",
    "NonPositiveSlope",
    "NonStepGammaOnNegativeRegion",
    "UtilityPWL",
    "ara_bound_report",
    "check_dpm_gamma",
    "check_membership_asd",
    "check_membership_fractional",
    "combine",
    "expected_utility_gap",
    "global_greediness",
    "greediness_profile",
    "make_base_asd",
    "make_base_ff",
    "make_base_mf",
    "mfsd_exclusion",
    "partial_greediness",
    "translate",
]

__version__ = "0.1.0"
