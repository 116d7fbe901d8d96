#include "sevt/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sevt/error.hpp"

namespace sevt {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool parse_double(const std::string& text, double* out) {
    const std::string t = trim(text);
    if (t.empty()) return false;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size()) return false;
    if (!std::isfinite(v)) return false;
    *out = v;
    return true;
}

}  // namespace

IngestResult ingest_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::io_error, "cannot open '" + path + "'");

    IngestResult res;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::vector<std::pair<double, double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        if (!header_seen) {
            std::string h = stripped;
            h.erase(std::remove(h.begin(), h.end(), ' '), h.end());
            if (h != "t,value")
                fail(Errc::parse_error,
                     path + ":" + std::to_string(line_no) + ": expected header 't,value'");
            header_seen = true;
            continue;
        }
        const std::size_t comma = stripped.find(',');
        if (comma == std::string::npos)
            fail(Errc::parse_error,
                 path + ":" + std::to_string(line_no) + ": expected two comma-separated fields");
        double t, v;
        if (!parse_double(stripped.substr(0, comma), &t) ||
            !parse_double(stripped.substr(comma + 1), &v))
            fail(Errc::parse_error,
                 path + ":" + std::to_string(line_no) + ": fields must be finite numbers");
        rows.emplace_back(t, v);
    }
    if (!header_seen) fail(Errc::parse_error, path + ": missing 't,value' header");
    if (rows.empty()) fail(Errc::empty_series, path + ": no data rows");

    const bool sorted = std::is_sorted(rows.begin(), rows.end(),
                                       [](const auto& a, const auto& b) { return a.first < b.first; });
    if (!sorted) {
        std::stable_sort(rows.begin(), rows.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        res.notices.push_back("input was not sorted by t; rows were stably sorted");
    }
    res.series.covariates.reserve(rows.size());
    res.series.values.reserve(rows.size());
    for (const auto& [t, v] : rows) {
        res.series.covariates.push_back(t);
        res.series.values.push_back(v);
    }
    res.series.validate();
    return res;
}

void write_series_csv(const TimeSeries& series, const std::string& path) {
    std::string out = "t,value\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out += detail::format_double(series.covariates[i]);
        out += ',';
        out += detail::format_double(series.values[i]);
        out += '\n';
    }
    detail::write_text_file(path, out);
}

namespace detail {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::io_error, "cannot write '" + path + "'");
    out << content;
    if (!out) fail(Errc::io_error, "write failed for '" + path + "'");
}

}  // namespace detail

}  // namespace sevt
