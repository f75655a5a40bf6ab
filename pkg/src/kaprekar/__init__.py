"""Exact analysis of Kaprekar's routine as a finite deterministic dynamical system."""

__version__ = "0.1.0"

from .core import Params, desc_asc, digits_of, is_trivial, kaprekar_step
from .dynamics import AttractorInfo, DynamicsIndex, build_index, distance_histogram, global_summary
from .entropy import EntropyFunnel, entropy_funnel, shannon_entropy
from .errors import (
    ClosureError,
    ConfigurationError,
    DegenerateFeatureError,
    DegenerateFitError,
    DomainError,
    KaprekarError,
    NumericalError,
    SingularFitError,
)
from .gaps import GapChain, GapState, build_chain, drift_summary, gap_of, stationary
from .multiset import (
    MultisetClass,
    basin_composition,
    class_distance_distribution,
    class_size_distribution,
    enumerate_classes,
)
from .stats import (
    FeatureRow,
    RegressionResult,
    easy_hard_comparison,
    extract_features,
    fit_ols,
    regress,
    standardize,
)
