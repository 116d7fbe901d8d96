#include "sevt/error.hpp"

namespace sevt {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::invalid_window: return "invalid-window";
        case Errc::window_too_large: return "window-too-large";
        case Errc::block_too_large: return "block-too-large";
        case Errc::invalid_quantile: return "invalid-quantile";
        case Errc::invalid_span: return "invalid-span";
        case Errc::invalid_lag: return "invalid-lag";
        case Errc::empty_series: return "empty-series";
        case Errc::invalid_scale: return "invalid-scale";
        case Errc::invalid_probability: return "invalid-probability";
        case Errc::invalid_shape: return "invalid-shape";
        case Errc::scale_collapse: return "scale-collapse";
        case Errc::insufficient_data: return "insufficient-data";
        case Errc::fit_infeasible: return "fit-infeasible";
        case Errc::invalid_comparison: return "invalid-comparison";
        case Errc::fit_inconsistency: return "fit-inconsistency";
        case Errc::normalization_domain: return "normalization-domain";
        case Errc::insufficient_exceedances: return "insufficient-exceedances";
        case Errc::misaligned: return "misaligned";
        case Errc::log_domain: return "log-domain";
        case Errc::degenerate_design: return "degenerate-design";
        case Errc::invalid_period: return "invalid-period";
        case Errc::invalid_horizon: return "invalid-horizon";
        case Errc::infeasible_grid: return "infeasible-grid";
        case Errc::parse_error: return "parse-error";
        case Errc::io_error: return "io-error";
        case Errc::config_error: return "config-error";
        case Errc::workflow_precondition: return "workflow-precondition";
        case Errc::invalid_spec: return "invalid-spec";
    }
    return "unknown";
}

}  // namespace sevt
