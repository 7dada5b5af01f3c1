"""Exact decision procedures for metric independence over the Urysohn sphere.

Finite configurations with rational distances in [0, 1] support exact
answers to the model-theoretic questions that matter for the Urysohn
sphere: consistency of partial distance assignments, dividing (= forking)
independence, intervals of indiscernible two-types, n-cyclicity of sequence
templates, nonforking extension by a new point, and stationarity.  Every
closed-form predicate has a brute-force witness-construction oracle in
:mod:`urysphere.oracle`.

All values are ``fractions.Fraction``; all types are immutable and all
operations pure, so everything is safe to share across threads.
"""

from .extension import (
    ExtensionOutcome,
    ExtensionProblem,
    InvalidGammaError,
)
from .independence import (
    DependenceError,
    GammaWitness,
    IndependenceCertificate,
    IndependenceVerdict,
    Interval,
    build_gamma_witness,
    d_max,
    d_min,
    divides_pair,
    gamma_interval,
    independent,
    independent_pairwise,
)
from .indiscernibles import (
    SequenceTemplate,
    TemplateCheck,
    amalgam_space,
    cyclicity_oracle,
    find_violating_cycle,
    is_n_cyclic,
    min_plus_power,
    min_plus_product,
    sopn_witness,
    tp2_array,
    validate_template,
)
from .metric import (
    ConsistencyCheck,
    FiniteMetricSpace,
    Label,
    PartialSemimetric,
    TriangleViolation,
    UnknownLabelError,
    as_dist,
    check_m_transitive,
    dotminus,
    fresh_label,
    is_consistent,
    path_completion,
    quotient_by_zero_distances,
    truncated_add,
    truncated_sum,
)
from .oracle import divides_oracle, extension_oracle, interval_oracle
from .stationarity import (
    dstar_min,
    has_unique_extension,
    is_stationary,
    unique_extension_to,
)

__version__ = "0.1.0"

__all__ = [
    "ConsistencyCheck",
    "DependenceError",
    "ExtensionOutcome",
    "ExtensionProblem",
    "FiniteMetricSpace",
    "GammaWitness",
    "IndependenceCertificate",
    "IndependenceVerdict",
    "Interval",
    "InvalidGammaError",
    "Label",
    "PartialSemimetric",
    "SequenceTemplate",
    "TemplateCheck",
    "TriangleViolation",
    "UnknownLabelError",
    "amalgam_space",
    "as_dist",
    "build_gamma_witness",
    "check_m_transitive",
    "cyclicity_oracle",
    "d_max",
    "d_min",
    "divides_oracle",
    "divides_pair",
    "dotminus",
    "dstar_min",
    "extension_oracle",
    "find_violating_cycle",
    "fresh_label",
    "gamma_interval",
    "has_unique_extension",
    "independent",
    "independent_pairwise",
    "interval_oracle",
    "is_consistent",
    "is_n_cyclic",
    "is_stationary",
    "min_plus_power",
    "min_plus_product",
    "path_completion",
    "quotient_by_zero_distances",
    "sopn_witness",
    "tp2_array",
    "truncated_add",
    "truncated_sum",
    "unique_extension_to",
    "validate_template",
]
