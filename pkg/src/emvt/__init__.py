"""emvt: exact solution counting for quadratic power-sum systems over
ellipsephic (digit-restricted) integers.

Everything that claims to be a count is an exact integer; weighted variants
use double precision with a documented 1e-9 relative tolerance and a fixed
reduction order.
"""

from .analysis import (
    CauchyReport,
    ExponentFit,
    GrowthPoint,
    GrowthSeries,
    WaringProfile,
    cauchy_bound_check,
    fit_exponent,
    growth_series,
    pairwise_slope,
    read_series_csv,
    waring_counts,
    write_series_csv,
    write_waring_csv,
)
from .carry import (
    CarryVector,
    DiagonalRatioReport,
    DigitSumTupleSet,
    carry_dp_count,
    diagonal_ratio_report,
    digit_sum_counts,
    direct_congruence_count,
    max_tuple_count,
    paired_difference_counts,
    realized_carry_chain,
    string_universe,
    tuples_with_digit_sum,
)
from .counting import (
    ClassNorm,
    MomentDistribution,
    MomentVector,
    RestrictedEnergy,
    WeightAssignment,
    admissible_residues,
    base_distribution,
    brute_force_count,
    class_norm,
    class_pair_aggregate,
    convolve,
    count_result_json,
    energy,
    load_distribution,
    moment_of,
    partition_by_congruence,
    reduced_energy_mod,
    restricted_energy,
    save_distribution,
    vinogradov_count,
)
from .digitset import (
    DeltaFitReport,
    DigitSet,
    DigitSourceSet,
    RepresentationProfile,
    delta_fit,
    digit_source,
    make_digit_set,
    make_source,
    read_profile_csv,
    representation_counts,
    squares_digit_set,
    squares_source,
    write_profile_csv,
)
from .ellipsephic import (
    DigitExpansion,
    EllipsephicSet,
    class_members,
    contains,
    count_up_to,
    enumerate_up_to,
    expansion,
    iter_up_to,
)
from .errors import (
    EmptyProfile,
    EmvtError,
    InadmissibleDigits,
    InvalidRange,
    InvariantViolation,
    MemoryBudgetExceeded,
    NonPrimeBase,
    NonpositiveCount,
    OracleTooLarge,
    TooFewPoints,
)

__version__ = "0.1.0"
