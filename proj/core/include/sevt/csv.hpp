#pragma once

#include <string>
#include <vector>

#include "sevt/series.hpp"

namespace sevt {

struct IngestResult {
    TimeSeries series;
    std::vector<std::string> notices;  ///< e.g. input was re-sorted by covariate
};

/// Reads a `t,value` CSV (UTF-8, '.' decimal separator, LF or CRLF) into a
/// covariate-sorted TimeSeries. Zero-valued rows are retained; duplicate
/// covariates are allowed. Malformed rows raise a parse error naming the
/// line; unsorted input is stably sorted with a notice.
IngestResult ingest_csv(const std::string& path);

/// Writes a series in the same `t,value` format.
void write_series_csv(const TimeSeries& series, const std::string& path);

namespace detail {
/// Fixed-precision text for doubles used in all emitted tables ("%.10g"),
/// so identical runs produce byte-identical files.
std::string format_double(double v);
void write_text_file(const std::string& path, const std::string& content);
}  // namespace detail

}  // namespace sevt
