"""Exact arithmetic for moment-curve exponential sums.

The package counts solutions of power-sum systems

    x_1^j + ... + x_s^j = y_1^j + ... + y_s^j   (j in some exponent set),

with integer points drawn from [-N, N] and optional complex weights, and
builds the surrounding toolkit: congruence-class conditioning diagnostics,
major/minor arc evaluations for the degree-k curve (n, n^2, ..., n^k),
and empirical growth-exponent fits against the classical predictions.

Everything that can be exact is exact: weighted counts are accumulated
over Python integers / fractions, and the fast dense engine works in
fixed-width integers with overflow audits.
"""

from .errors import (
    MomentCurveError,
    NumericError,
    ParameterError,
    ResourceError,
    WeightFormatError,
    WeightParseError,
)
from .weights import (
    Rho,
    Weights,
    format_weights,
    geometric_weights,
    make_weights,
    parse_weights,
    random_weights,
    read_weight_file,
    rho,
    spike_weights,
    unit_weights,
    weight_corpus,
    weights_from_spec,
    write_weight_file,
)
from .meanvalue import (
    MeanValueResult,
    brute_force_mean_value,
    lower_bound_witness,
    mean_value,
    newton_regime_check,
)
from .congruencing import (
    BoxAudit,
    PrimeSelection,
    TSplit,
    aggregate_mixed_moment,
    audit_T_split,
    box_cardinality_audit,
    class_profile,
    conditioned_amplitude,
    enumerate_congruence_box,
    mixed_moment_I,
    mixed_moment_K,
    select_prime,
    well_conditioned_tuples,
)
from .circle import (
    ArcDecomposition,
    arc_decomposition,
    complete_sum,
    complete_sum_table,
    crt_split_residues,
    major_arc_approximant,
    major_arc_moment,
    minor_arc_sup_sample,
    oscillatory_integral,
    singular_series,
    weyl_sum,
)
from .constants import (
    duality_chain_check,
    exponent_fit,
    extremal_search,
    restriction_constant,
    strichartz_constant,
)

__version__ = "0.1.0"

__all__ = [
    "MomentCurveError",
    "ParameterError",
    "ResourceError",
    "NumericError",
    "WeightParseError",
    "WeightFormatError",
    "Weights",
    "Rho",
    "rho",
    "make_weights",
    "weights_from_spec",
    "unit_weights",
    "spike_weights",
    "geometric_weights",
    "random_weights",
    "parse_weights",
    "format_weights",
    "read_weight_file",
    "write_weight_file",
    "weight_corpus",
    "MeanValueResult",
    "mean_value",
    "brute_force_mean_value",
    "lower_bound_witness",
    "newton_regime_check",
    "PrimeSelection",
    "select_prime",
    "class_profile",
    "well_conditioned_tuples",
    "conditioned_amplitude",
    "mixed_moment_I",
    "mixed_moment_K",
    "aggregate_mixed_moment",
    "enumerate_congruence_box",
    "box_cardinality_audit",
    "BoxAudit",
    "TSplit",
    "audit_T_split",
    "weyl_sum",
    "complete_sum",
    "complete_sum_table",
    "crt_split_residues",
    "ArcDecomposition",
    "arc_decomposition",
    "oscillatory_integral",
    "major_arc_approximant",
    "major_arc_moment",
    "minor_arc_sup_sample",
    "singular_series",
    "exponent_fit",
    "extremal_search",
    "strichartz_constant",
    "restriction_constant",
    "duality_chain_check",
    "__version__",
]
