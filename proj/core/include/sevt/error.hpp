#pragma once

#include <stdexcept>
#include <string>

namespace sevt {

/// Typed error kinds used across the library. The CLI maps these to exit
/// codes; library users can branch on them without parsing messages.
enum class Errc {
    invalid_window,
    window_too_large,
    block_too_large,
    invalid_quantile,
    invalid_span,
    invalid_lag,
    empty_series,
    invalid_scale,
    invalid_probability,
    invalid_shape,
    scale_collapse,
    insufficient_data,
    fit_infeasible,
    invalid_comparison,
    fit_inconsistency,
    normalization_domain,
    insufficient_exceedances,
    misaligned,
    log_domain,
    degenerate_design,
    invalid_period,
    invalid_horizon,
    infeasible_grid,
    parse_error,
    io_error,
    config_error,
    workflow_precondition,
    invalid_spec,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace sevt
