"""Tail bounds for P(S <= 1) where S sums independent [0,1]-valued variables.

The package evaluates the two-branch finite-n bound, its n-free limit, the
classical Hoeffding and Bentkus comparators, and the solved exponential
form; exhibits the extremal (shifted) binomial distributions that make the
finite-n bound tight; and ships brute-force, grid, and Monte Carlo oracles
that verify the supporting inequalities numerically.
"""

from lefttail.bounds import (
    BoundQuery,
    BoundResult,
    DecayConstants,
    FixedPointError,
    bentkus_bound,
    binomial_branch,
    exponential_bound,
    finite_n_bound,
    hoeffding_bound,
    hoeffding_exponential,
    limit_bound,
    shifted_branch,
    solve_decay_rate,
)
from lefttail.extremal import (
    BinomialSpec,
    TightnessReport,
    binomial_pmf,
    extremal_for_branch,
    poisson_limit_gap,
    poisson_tail_at_most_one,
    tail_at_most_one,
    verify_tightness,
)
from lefttail.inequalities import (
    CLAIMS,
    SLOPE_THRESHOLD,
    GridCheckResult,
    crossover_threshold,
    log_binomial_branch,
    run_all_checks,
    run_grid_check,
    scaled_slope,
    slope_gradient,
    slope_quadratic,
)
from lefttail.oracles import (
    Discrete,
    DistSpec,
    McEstimate,
    SearchReport,
    SearchSpaceError,
    SimplexPoint,
    TwoPoint,
    Uniform,
    bernoulli_tail,
    maximize_bernoulli_tail,
    maximize_two_point,
    monte_carlo_tail,
    parse_dist_specs,
    spec_mean,
    two_point_mean,
    two_point_tail,
)

__version__ = "0.1.0"

__all__ = [
    "BoundQuery",
    "BoundResult",
    "DecayConstants",
    "FixedPointError",
    "bentkus_bound",
    "binomial_branch",
    "exponential_bound",
    "finite_n_bound",
    "hoeffding_bound",
    "hoeffding_exponential",
    "limit_bound",
    "shifted_branch",
    "solve_decay_rate",
    "BinomialSpec",
    "TightnessReport",
    "binomial_pmf",
    "extremal_for_branch",
    "poisson_limit_gap",
    "poisson_tail_at_most_one",
    "tail_at_most_one",
    "verify_tightness",
    "CLAIMS",
    "SLOPE_THRESHOLD",
    "GridCheckResult",
    "crossover_threshold",
    "log_binomial_branch",
    "run_all_checks",
    "run_grid_check",
    "scaled_slope",
    "slope_gradient",
    "slope_quadratic",
    "Discrete",
    "DistSpec",
    "McEstimate",
    "SearchReport",
    "SearchSpaceError",
    "SimplexPoint",
    "TwoPoint",
    "Uniform",
    "bernoulli_tail",
    "maximize_bernoulli_tail",
    "maximize_two_point",
    "monte_carlo_tail",
    "parse_dist_specs",
    "spec_mean",
    "two_point_mean",
    "two_point_tail",
]
