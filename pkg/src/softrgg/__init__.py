"""Simulation and verification lab for the longest edge of a soft random
geometric graph on the interval [-n, n].

Vertices follow a unit-intensity Poisson process; each pair is an edge
independently with probability g(distance) for a polynomially decaying
connection function g.  The package samples such graphs reproducibly,
evaluates the analytic threshold/transform/mean machinery per decay
regime, and runs the Monte Carlo suites that compare the two.
"""

__version__ = "0.1.0"

from .connection import (
    ConnectionFunction,
    always_one,
    always_zero,
    capped_power,
    exp_form,
    hard_threshold,
)
from .errors import DomainError, InfeasibleThresholdError, SizeError
from .graph_sampler import (
    ExceedanceCount,
    LongestEdgeResult,
    count_exceedances,
    longest_edge,
    longest_edge_lazy,
    longest_edge_naive,
)
from .mc_engine import (
    ExperimentConfig,
    ReplicationResult,
    VerdictReport,
    ks_distance,
    run_experiment,
    tv_to_poisson,
    verdict,
    wilson_interval,
)
from .points import (
    PointConfiguration,
    SeedSpec,
    WindowParams,
    pair_uniform,
    sample_point_configuration,
)
from .regimes import (
    LimitLaw,
    Regime,
    RegimeSpec,
    classify,
    h_eval,
    h_inverse,
    regime_limit_law,
    scaled_statistic,
    threshold_r_n,
    transform_f_n,
)
from .analytics import (
    MeanExceedanceReport,
    TvBoundReport,
    max_tail_integral,
    mean_exceedance_report,
    mean_exceedances_closed_form,
    mean_exceedances_quadrature,
    tv_bound_report,
)

__all__ = [
    "ConnectionFunction",
    "DomainError",
    "ExceedanceCount",
    "ExperimentConfig",
    "InfeasibleThresholdError",
    "LimitLaw",
    "LongestEdgeResult",
    "MeanExceedanceReport",
    "PointConfiguration",
    "Regime",
    "RegimeSpec",
    "ReplicationResult",
    "SeedSpec",
    "SizeError",
    "TvBoundReport",
    "VerdictReport",
    "WindowParams",
    "always_one",
    "always_zero",
    "capped_power",
    "classify",
    "count_exceedances",
    "exp_form",
    "hard_threshold",
    "h_eval",
    "h_inverse",
    "ks_distance",
    "longest_edge",
    "longest_edge_lazy",
    "longest_edge_naive",
    "max_tail_integral",
    "mean_exceedance_report",
    "mean_exceedances_closed_form",
    "mean_exceedances_quadrature",
    "pair_uniform",
    "regime_limit_law",
    "run_experiment",
    "sample_point_configuration",
    "scaled_statistic",
    "threshold_r_n",
    "transform_f_n",
    "tv_bound_report",
    "tv_to_poisson",
    "verdict",
    "wilson_interval",
]
