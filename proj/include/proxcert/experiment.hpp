#ifndef PROXCERT_EXPERIMENT_HPP
#define PROXCERT_EXPERIMENT_HPP

#include "proxcert/pipeline.hpp"

namespace proxcert {

struct GridCell {
    std::string form = "standard";  // standard | mip | general
    int m = 1, n = 2;
    int t = 0, d = 0;               // general only
    long entry_bound = 5;
    int count = 1;
};

struct ExperimentConfig {
    uint64_t seed = 1;
    std::vector<GridCell> grid;
    SolveLimits limits;
    int jobs = 1;
    std::string csv_path;      // empty: stdout only
    std::string summary_path;  // empty: skip
};

ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig parse_experiment_config_file(const std::string& path);

struct ExperimentRow {
    std::string id;
    uint64_t seed = 0;
    std::string form;
    int m = 0, n = 0, t = 0, d = 0;
    std::string delta, entry_norm;
    long s = -1;
    std::string distance_exact, distance_decimal;
    // name -> (bound value, passed); order fixed per form for the CSV.
    std::vector<std::tuple<std::string, double, bool>> bounds;
    double solve_ms = 0, certify_ms = 0;
    std::string error;
};

struct ExperimentResult {
    std::vector<ExperimentRow> rows;
    std::string csv;
    std::string summary_md;
    int violations = 0;  // gated-bound failures across all rows
    int errors = 0;      // rows that failed to certify at all
};

// Deterministic per (config); instances are distributed over `jobs`
// worker threads and merged back in input order.
ExperimentResult run_experiment(const ExperimentConfig& config);

} // namespace proxcert

#endif
