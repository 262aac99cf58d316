#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qaoabench/experiment.hpp"

namespace qaoabench {

// One file drives the whole pipeline; every field has a desk-scale default.
struct RunConfig {
    // Paths.
    std::string manifest_path = "manifest.json";
    std::string journal_path = "journal.jsonl";
    std::string out_dir = "out";

    // Benchmark construction.
    int n = 10;
    std::vector<double> e_p_values{0.3, 0.4, 0.5, 0.6, 0.7};
    int per_class = 10;

    // Run protocol.
    std::vector<int> depths{1, 2, 4, 6, 8};
    std::map<int, std::uint64_t> budgets;  // per depth; default_budget(p) if absent
    double ftol = 1e-3;
    double xtol = 1e-2;
    std::uint64_t master_seed = 12345;
    int workers = 1;
    bool padded_starts = true;

    // Analysis.
    double threshold = 0.01;     // near-optimal collection/filter fraction
    int concentration_step = 2;  // preferred step k for concentration clouds
};

// Throws ConfigError naming the offending field.
void validate(const RunConfig& config);

// Parses the JSON config file and validates. Unknown keys are rejected so
// typos fail loudly.
RunConfig load_config(const std::string& path);

std::string config_to_json(const RunConfig& config);

RunSettings to_run_settings(const RunConfig& config);

}  // namespace qaoabench
