#pragma once

#include <string>
#include <vector>

#include "hyperbounds/bounds.hpp"
#include "hyperbounds/cache.hpp"
#include "hyperbounds/circle.hpp"
#include "hyperbounds/report.hpp"

namespace hyperbounds {

struct RunConfig {
    int n_lo = 2;
    int n_hi = 5;
    std::vector<long long> r_values = {9, 12, 20};
    unsigned trunc = 12;
    unsigned precision_bits = 128;
    int samples = 100000;
    double rho = 0.25;
    std::string mode = "auto";  // auto | exact | certified
    std::string cache_dir;
    std::string out_path;  // empty: stdout
    std::string csv_dir = ".";
    int workers = 1;
    int exact_cutoff = 6;
    std::size_t coefficient_budget = 2'000'000;

    nlohmann::ordered_json echo() const;
    CAOptions ca_options(SeriesCache* cache) const;
};

SuiteReport run_verify_conjecture(const RunConfig& cfg, SeriesCache* cache = nullptr);
SuiteReport run_degree_bounds(const RunConfig& cfg);
SuiteReport run_estimates(const RunConfig& cfg, SeriesCache* cache = nullptr);
SuiteReport run_circle(const RunConfig& cfg);
SuiteReport run_all(const RunConfig& cfg, SeriesCache* cache = nullptr);

int cli_main(int argc, char** argv);

}  // namespace hyperbounds
