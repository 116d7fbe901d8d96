#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sevt/extremal_index.hpp"
#include "sevt/gev.hpp"
#include "sevt/gof.hpp"
#include "sevt/scaling.hpp"
#include "sevt/series.hpp"

namespace sevt {

enum class ThetaExtrapolation { flat, linear };

/// Configuration for the per-window fitting sweep (workflow Steps B1-B5
/// inputs).
struct SweepConfig {
    std::size_t block_length = 30;
    int k_max = 10;
    ParamForm location_form = ParamForm::linear;
    ParamForm scale_form = ParamForm::exponential;
    double threshold_q = 0.95;
    double threshold_window_span = 1.0;
    /// Estimation-horizon rule: a window k stays usable for the scaling
    /// regression while its fixed-shape fit converged, KS and AD p-values
    /// exceed gof_alpha, and the free-shape estimate lies within +-shape_ci_z
    /// standard errors of the k=1 shape.
    double gof_alpha = 0.05;
    double shape_ci_z = 1.96;
};

struct KFitRow {
    int k = 1;
    std::size_t n_maxima = 0;
    BlockMaxSeries maxima;  ///< block maxima of the k-window moving minimum
    std::optional<FitResult> fixed_fit;
    std::optional<FitResult> free_fit;
    std::optional<GofReport> gof;  ///< fixed fit, Gumbel-normalized
    bool usable_for_scaling = false;
    std::string note;
};

struct SweepResult {
    /// Offset subtracted from all covariates before fitting so that the
    /// first block's covariate is 0.
    double t_offset = 0.0;
    FitResult base_fit;  ///< k = 1, free shape
    double xi1 = 0.0;
    double xi1_se = 0.0;
    bool xi1_se_available = false;
    std::vector<KFitRow> rows;  ///< row i is window size i+1
    ThetaByWindow thetas;
    int k_f = 0;  ///< largest usable window size (estimation horizon)
    ScalingInputs scaling_inputs;  ///< usable windows with theta estimates
    ScaleLink scale_link = ScaleLink::identity;
    std::vector<std::string> notices;
};

/// Runs workflow Steps B1-B4 plus the estimation-horizon bookkeeping: for
/// each k the moving minimum, its block maxima, the fixed-shape fit (shape
/// from the k=1 free fit), the free-shape diagnostic fit, normalized
/// goodness-of-fit, and the Ferro-Segers sweep.
SweepResult run_successive_sweep(const TimeSeries& series, const SweepConfig& config);

/// Theta at window k: the sweep estimate when available, otherwise the
/// configured extrapolation (flat carry-forward of the last reliable value,
/// or a clamped linear-in-k trend).
double extrapolate_theta(const ThetaByWindow& thetas, int k, ThetaExtrapolation mode);

/// Full nonstationary model for window size k from the scaling relation:
/// every location/scale coefficient follows the k=1 model scaled by
/// g(k) (theta_k/theta_1)^xi_1 according to its form (multiplicative for
/// identity-link components, additive in log space for exponential ones).
/// The shape is fixed at xi_1.
GevModel build_inferred_model(const GevModel& base, double xi1, const ScalingLaw& law, int k,
                              double theta_k, double theta_1);

}  // namespace sevt
