#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "doctest.h"

#include "qaoabench/config.hpp"
#include "qaoabench/errors.hpp"

using namespace qaoabench;

namespace {

namespace fs = std::filesystem;

std::string write_temp_config(const std::string& body) {
    static int counter = 0;
    const std::string path =
        (fs::temp_directory_path() /
         ("qaoabench_config_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) +
          ".json"))
            .string();
    std::ofstream out(path);
    out << body;
    return path;
}

}  // namespace

TEST_SUITE_BEGIN("config");

TEST_CASE("defaults are valid") {
    const RunConfig config;
    CHECK_NOTHROW(validate(config));
    CHECK(config.depths == std::vector<int>{1, 2, 4, 6, 8});
    CHECK(config.e_p_values.size() == 5);
    CHECK(config.per_class == 10);
}

TEST_CASE("validation names the offending field") {
    RunConfig config;

    config.depths = {2, 1};
    CHECK_THROWS_WITH_AS(validate(config), doctest::Contains("depths"), ConfigError);
    config = RunConfig{};

    config.threshold = 0.6;
    CHECK_THROWS_WITH_AS(validate(config), doctest::Contains("threshold"), ConfigError);
    config = RunConfig{};

    config.budgets[2] = 0;
    CHECK_THROWS_WITH_AS(validate(config), doctest::Contains("budgets"), ConfigError);
    config = RunConfig{};

    config.e_p_values = {0.3, 1.2};
    CHECK_THROWS_WITH_AS(validate(config), doctest::Contains("e_p_values"), ConfigError);
    config = RunConfig{};

    config.workers = 0;
    CHECK_THROWS_WITH_AS(validate(config), doctest::Contains("workers"), ConfigError);
}

TEST_CASE("load_config parses overrides and rejects junk") {
    const std::string path = write_temp_config(R"({
        "n": 8,
        "depths": [1, 2],
        "budgets": {"1": 5000, "2": 7000},
        "padded_starts": false,
        "master_seed": 321
    })");
    const RunConfig config = load_config(path);
    CHECK(config.n == 8);
    CHECK(config.depths == std::vector<int>{1, 2});
    CHECK(config.budgets.at(1) == 5000);
    CHECK(config.budgets.at(2) == 7000);
    CHECK(config.padded_starts == false);
    CHECK(config.master_seed == 321);
    CHECK(config.per_class == 10);  // untouched default
    fs::remove(path);

    const std::string bad = write_temp_config(R"({"no_such_key": 1})");
    CHECK_THROWS_AS(load_config(bad), ConfigError);
    fs::remove(bad);

    const std::string invalid = write_temp_config("{");
    CHECK_THROWS_AS(load_config(invalid), ConfigError);
    fs::remove(invalid);

    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), IoError);
}

TEST_CASE("config round trips through JSON") {
    RunConfig config;
    config.n = 9;
    config.budgets = {{1, 111}, {4, 444}};
    config.padded_starts = false;
    const std::string path = write_temp_config(config_to_json(config));
    const RunConfig back = load_config(path);
    CHECK(back.n == config.n);
    CHECK(back.budgets == config.budgets);
    CHECK(back.padded_starts == config.padded_starts);
    fs::remove(path);
}

TEST_CASE("to_run_settings carries the protocol fields") {
    RunConfig config;
    config.depths = {1, 4};
    config.budgets = {{4, 9000}};
    config.ftol = 2e-3;
    config.xtol = 3e-2;
    config.master_seed = 77;
    config.workers = 3;
    config.padded_starts = false;
    config.threshold = 0.02;
    const RunSettings settings = to_run_settings(config);
    CHECK(settings.depths == config.depths);
    CHECK(settings.budget_for(4) == 9000);
    CHECK(settings.budget_for(1) == 100'000);
    CHECK(settings.ftol == 2e-3);
    CHECK(settings.xtol == 3e-2);
    CHECK(settings.seed == 77);
    CHECK(settings.workers == 3);
    CHECK(settings.padded_starts == false);
    CHECK(settings.near_optimal_threshold == 0.02);
}

TEST_SUITE_END();
