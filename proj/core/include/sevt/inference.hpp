#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "sevt/gev.hpp"
#include "sevt/scaling.hpp"
#include "sevt/sweep.hpp"

namespace sevt {

/// Level exceeded on average once per `return_period_blocks` blocks:
/// the (1 - 1/T) quantile of the model at covariate t.
double return_level(const GevModel& model, double return_period_blocks, double t);

/// Level whose expected number of block exceedances over the covariate
/// horizon equals one; one term per block at its covariate midpoint, solved
/// by bisection to 1e-9 relative.
double horizon_return_level(const GevModel& model, std::pair<double, double> covariate_range,
                            double blocks_per_unit);

/// GEV quantiles at covariate t for sorted probabilities in (0,1).
std::vector<double> quantile_table(const GevModel& model, double t,
                                   const std::vector<double>& probs);

struct ParamCi {
    double lo = 0.0;
    double hi = 0.0;
};

/// Per-parameter 95% intervals for {mu_k0, mu_k1, sigma_k0, sigma_k1, xi}.
/// Constant forms carry zero-width intervals at zero for the unused slope.
struct ParamCis {
    ParamCi mu0, mu1, sigma0, sigma1, xi;
};

struct PermutationCiResult {
    double lo = 0.0;
    double hi = 0.0;
    double point = 0.0;          ///< evaluation at the interval midpoints
    std::size_t n_evaluated = 0;  ///< feasible grid combinations
    std::size_t n_skipped = 0;    ///< combinations with nonpositive scale
};

/// Evaluates `target` over every combination of an equally spaced grid
/// (endpoints included, samples_per_param values per parameter, hence
/// samples_per_param^5 combinations) and returns the min/max envelope.
/// Combinations whose scale model is nonpositive anywhere on
/// `feasibility_range` are skipped and counted; if every combination is
/// infeasible an infeasible-grid error is thrown.
PermutationCiResult permutation_ci(const ParamCis& cis, int samples_per_param,
                                   ParamForm location_form, ParamForm scale_form,
                                   std::pair<double, double> feasibility_range,
                                   const std::function<double(const GevModel&)>& target);

struct ReturnLevelRow {
    int k = 1;
    double horizon_span = 0.0;    ///< covariate units
    double horizon_events = 0.0;  ///< blocks in the horizon
    double level = 0.0;           ///< per-event level
    double level_total = 0.0;     ///< k * level
    double ci_low = 0.0;
    double ci_high = 0.0;
};

struct ReturnLevelTable {
    std::vector<ReturnLevelRow> rows;
    std::string method_tag;
    double anchor_t = 0.0;
};

/// Methods compared by the short-run/long-run harness.
enum class CompareMethod { full_proposed = 0, fixed_shape_mle = 1, plain_mle = 2 };

const char* compare_method_name(CompareMethod m);

struct MethodCell {
    bool ok = false;
    std::string note;  ///< failure marker when !ok
    double mu_anchor = 0.0;
    double sigma_anchor = 0.0;
    double xi = 0.0;
    double err_mu = 0.0;
    double err_sigma = 0.0;
    double err_xi = 0.0;
    /// Empirical Gumbel-normalized return-level points (T_i, z_i).
    std::vector<std::pair<double, double>> normalized_curve;
};

struct CompareConfig {
    SweepConfig sweep;
    double anchor_t = 1.0;
    /// Reference fits per window: free shape when true, otherwise fixed at
    /// the long run's k=1 shape estimate.
    bool reference_free_shape = false;
    std::string gtk_form = "auto";
    int poly_degree = 2;
    /// Paper-literal regression of log(mu_k0) without the theta adjustment.
    bool gtk_paper_literal = false;
    /// Inverse-variance weights for the scaling regression, from the
    /// per-window location-intercept standard errors.
    bool gtk_weighted = false;
    ThetaExtrapolation theta_extrapolation = ThetaExtrapolation::flat;
};

struct MethodComparison {
    std::vector<int> k_list;
    std::vector<MethodCell> reference;              ///< per k
    std::array<std::vector<MethodCell>, 3> methods;  ///< [CompareMethod][k index]
    int k_f_short = 0;
    bool law_ok = false;
    ScalingLaw law;
    double anchor_t = 0.0;
};

/// The three-way harness: fits the long run as the reference distribution,
/// then estimates each window size on the short run with (1) the full
/// proposed method (fixed shape, scaling inference beyond the estimation
/// horizon), (2) fixed-shape MLE, and (3) plain MLE. Per-method failures are
/// recorded as markers instead of aborting.
MethodComparison compare_methods(const TimeSeries& short_run, const TimeSeries& long_run,
                                 const std::vector<int>& k_list, const CompareConfig& config);

}  // namespace sevt
