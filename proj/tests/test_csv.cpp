#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "sevt/csv.hpp"
#include "sevt/error.hpp"

using namespace sevt;

namespace {

std::string temp_csv(const std::string& name, const std::string& content) {
    const std::string path =
        (std::filesystem::temp_directory_path() / ("sevt_test_" + name)).string();
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("ingest_csv happy path with CRLF and blank lines") {
    const std::string path = temp_csv("ok.csv", "t,value\r\n2025.0,3.5\r\n\r\n2026.0,4.0\r\n");
    const IngestResult res = ingest_csv(path);
    REQUIRE(res.series.size() == 2);
    CHECK(res.series.covariates[0] == 2025.0);
    CHECK(res.series.values[1] == 4.0);
    CHECK(res.notices.empty());
    std::remove(path.c_str());
}

TEST_CASE("ingest_csv errors carry the line number") {
    const std::string path = temp_csv("bad.csv", "t,value\n2025.5,abc\n");
    try {
        ingest_csv(path);
        FAIL("expected parse error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::parse_error);
        CHECK(std::string(e.what()).find(":2") != std::string::npos);
    }
    std::remove(path.c_str());

    const std::string no_header = temp_csv("nh.csv", "time,demand\n1,2\n");
    CHECK_THROWS_AS(ingest_csv(no_header), Error);
    std::remove(no_header.c_str());

    CHECK_THROWS_AS(ingest_csv("/nonexistent/sevt.csv"), Error);
}

TEST_CASE("ingest_csv sorts unsorted input with a notice, keeps zeros and duplicates") {
    const std::string path =
        temp_csv("unsorted.csv", "t,value\n3,30\n1,0\n2,20\n1,11\n");
    const IngestResult res = ingest_csv(path);
    REQUIRE(res.series.size() == 4);
    CHECK(res.series.covariates == std::vector<double>{1, 1, 2, 3});
    CHECK(res.series.values[0] == 0.0);   // zeros retained
    CHECK(res.series.values[1] == 11.0);  // stable order for the duplicate t
    REQUIRE(res.notices.size() == 1);
    std::remove(path.c_str());
}

TEST_CASE("series csv round trip") {
    TimeSeries s;
    s.covariates = {0.0, 0.5, 1.25};
    s.values = {1.5, -2.25, 1e-3};
    const std::string path =
        (std::filesystem::temp_directory_path() / "sevt_test_rt.csv").string();
    write_series_csv(s, path);
    const IngestResult res = ingest_csv(path);
    CHECK(res.series.covariates == s.covariates);
    CHECK(res.series.values == s.values);
    std::remove(path.c_str());
}
